//! Super-node augmentation and the two-measurement pipelines that turn an
//! Inter-QLAN into its complement.
//!
//! Both pipelines measure Pauli-X on `s2` and then on `s1`, using the same
//! special neighbor `k0` for both steps. At graph level an X-measurement on
//! `a` with special neighbor `k0` is `τ_k0(τ_a(τ_k0(G)) − a)`; outcome
//! dependent local byproducts live in [`crate::oracle`].

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, InterQlanGraph, Qlan, Role, Vertex};

/// Where the super-nodes attach.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    /// Each super-node is linked to every client of the *other* QLAN.
    #[default]
    #[serde(rename = "I")]
    I,
    /// Each super-node is linked to every client of its *own* QLAN.
    #[serde(rename = "II")]
    II,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::I => "I",
            Case::II => "II",
        })
    }
}

impl std::str::FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" | "1" | "i" => Ok(Case::I),
            "II" | "2" | "ii" => Ok(Case::II),
            other => Err(Error::Parse(format!("unknown case {other:?}; expected I or II"))),
        }
    }
}

impl Case {
    /// QLAN whose clients the super-node of `qlan` links to.
    fn attach_side(self, qlan: Qlan) -> Qlan {
        match self {
            Case::I => qlan.other(),
            Case::II => qlan,
        }
    }

    /// QLAN from which `k0` is drawn: it must neighbor `s2` initially.
    pub fn k0_qlan(self) -> Qlan {
        self.attach_side(Qlan::Q2)
    }
}

/// Inter-QLAN plus one super-node per QLAN, ready for the pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedGraph {
    graph: InterQlanGraph,
    case: Case,
    retained: BTreeSet<Vertex>,
    s1: Vertex,
    s2: Vertex,
}

impl AugmentedGraph {
    pub fn graph(&self) -> &InterQlanGraph {
        &self.graph
    }

    pub fn case(&self) -> Case {
        self.case
    }

    pub fn retained(&self) -> &BTreeSet<Vertex> {
        &self.retained
    }

    pub fn super_nodes(&self) -> (Vertex, Vertex) {
        (self.s1, self.s2)
    }

    /// The underlying client-only Inter-QLAN.
    pub fn clients_graph(&self) -> InterQlanGraph {
        self.graph
            .delete_vertex(self.s1)
            .and_then(|g| g.delete_vertex(self.s2))
            .expect("supers present")
    }

    /// Clients that may serve as `k0`, lowest index first.
    pub fn eligible_k0(&self) -> Vec<Vertex> {
        self.graph
            .clients(self.case.k0_qlan())
            .filter(|v| !self.retained.contains(v) && self.graph.has_edge(*v, self.s2))
            .collect()
    }

    pub fn default_k0(&self) -> Result<Vertex> {
        self.eligible_k0().first().copied().ok_or(Error::NoEligibleK0)
    }

    /// Re-checks the structural conditions of the augmentation.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidAugmentation(msg));
        if !self.graph.has_edge(self.s1, self.s2) {
            return bad("super-nodes are not linked".into());
        }
        for s in [self.s1, self.s2] {
            for c in self.graph.vertices().filter(Vertex::is_client) {
                let linked = self.graph.has_edge(s, c);
                let should = c.qlan == self.case.attach_side(s.qlan) && !self.retained.contains(&c);
                if linked != should {
                    if self.retained.contains(&c) {
                        return Err(Error::RetainedAdjacentToSuper(c));
                    }
                    return bad(format!(
                        "{s} {} client {c} in Case {}",
                        if linked { "must not link" } else { "must link" },
                        self.case
                    ));
                }
            }
        }
        let rest = self.clients_graph();
        rest.validate_inter_links()
    }
}

fn require_pipeline_input(g: &InterQlanGraph) -> Result<()> {
    if let Some(s) = g.supers().next() {
        return Err(Error::SuperPresent(s));
    }
    for qlan in [Qlan::Q1, Qlan::Q2] {
        if g.client_count(qlan) == 0 {
            return Err(Error::EmptyQlan(qlan));
        }
    }
    g.validate_inter_links()
}

/// Adds `s1`, `s2` and their links, leaving `retained` clients detached from
/// both supers.
pub fn augment(g: &InterQlanGraph, case: Case, retained: &BTreeSet<Vertex>) -> Result<AugmentedGraph> {
    require_pipeline_input(g)?;
    for &r in retained {
        if !g.contains(r) {
            return Err(Error::UnknownVertex(r));
        }
    }
    let s1 = Vertex::super_node(Qlan::Q1);
    let s2 = Vertex::super_node(Qlan::Q2);
    let mut out = g.clone();
    out.add_vertex(s1)?;
    out.add_vertex(s2)?;
    out.add_edge(s1, s2)?;
    for s in [s1, s2] {
        let side = case.attach_side(s.qlan);
        let targets: Vec<Vertex> = g.clients(side).filter(|c| !retained.contains(c)).collect();
        for c in targets {
            out.add_edge(s, c)?;
        }
    }
    Ok(AugmentedGraph {
        graph: out,
        case,
        retained: retained.clone(),
        s1,
        s2,
    })
}

/// Supers linked to the opposite QLAN's clients.
pub fn augment_case1(g: &InterQlanGraph) -> Result<AugmentedGraph> {
    augment(g, Case::I, &BTreeSet::new())
}

/// Supers linked to their own QLAN's clients.
pub fn augment_case2(g: &InterQlanGraph) -> Result<AugmentedGraph> {
    augment(g, Case::II, &BTreeSet::new())
}

/// Uses existing clients `v1` (QLAN 1) and `v2` (QLAN 2) as super-nodes when
/// each is already linked to every client of the other QLAN.
pub fn promote_super(g: &InterQlanGraph, v1: Vertex, v2: Vertex) -> Result<AugmentedGraph> {
    require_pipeline_input(g)?;
    for (v, qlan) in [(v1, Qlan::Q1), (v2, Qlan::Q2)] {
        if !g.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        if v.qlan != qlan || !v.is_client() {
            return Err(Error::InvalidAugmentation(format!(
                "{v} cannot be promoted for QLAN {qlan}"
            )));
        }
        if g.clients(qlan.other()).any(|c| !g.has_edge(v, c)) {
            return Err(Error::NotFullyConnected(v));
        }
    }
    let s1 = Vertex {
        role: Role::Super,
        ..v1
    };
    let s2 = Vertex {
        role: Role::Super,
        ..v2
    };
    let graph = g.relabel(v1, s1)?.relabel(v2, s2)?;
    let aug = AugmentedGraph {
        graph,
        case: Case::I,
        retained: BTreeSet::new(),
        s1,
        s2,
    };
    aug.validate()?;
    Ok(aug)
}

/// One X-measurement step of a pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurementRecord {
    pub step_index: usize,
    pub measured_vertex: Vertex,
    pub special_neighbor: Vertex,
    pub pre_graph: InterQlanGraph,
    pub post_graph: InterQlanGraph,
}

/// Graph rule for a Pauli-X measurement of `a` with special neighbor `k0`:
/// `τ_k0(τ_a(τ_k0(g)) − a)`.
pub fn measure_x(g: &InterQlanGraph, a: Vertex, k0: Vertex) -> Result<(InterQlanGraph, MeasurementRecord)> {
    let n = g.neighbors(a)?;
    if n.is_empty() {
        return Err(Error::IsolatedMeasurement(a));
    }
    if !n.contains(&k0) {
        return Err(Error::NotAdjacent { vertex: a, k0 });
    }
    let post = g
        .local_complement(k0)?
        .local_complement(a)?
        .delete_vertex(a)?
        .local_complement(k0)?;
    let record = MeasurementRecord {
        step_index: 0,
        measured_vertex: a,
        special_neighbor: k0,
        pre_graph: g.clone(),
        post_graph: post.clone(),
    };
    Ok((post, record))
}

/// Final graph of a pipeline together with its measurement trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineRun {
    pub graph: InterQlanGraph,
    pub records: Vec<MeasurementRecord>,
}

impl PipelineRun {
    pub fn measurement_count(&self) -> usize {
        self.records.len()
    }

    /// Local complementations applied (three per measurement).
    pub fn tau_count(&self) -> usize {
        3 * self.records.len()
    }
}

fn check_k0(aug: &AugmentedGraph, k0: Vertex) -> Result<()> {
    if !aug.graph.contains(k0) {
        return Err(Error::UnknownVertex(k0));
    }
    if aug.retained.contains(&k0) {
        return Err(Error::RetainedK0(k0));
    }
    if !k0.is_client() || k0.qlan != aug.case.k0_qlan() {
        return Err(Error::InvalidK0(k0));
    }
    if !aug.graph.has_edge(k0, aug.s2) {
        return Err(Error::NotAdjacent { vertex: aug.s2, k0 });
    }
    Ok(())
}

fn run_checked(aug: &AugmentedGraph, k0: Vertex) -> Result<PipelineRun> {
    aug.validate()?;
    check_k0(aug, k0)?;
    let (mid, mut first) = measure_x(&aug.graph, aug.s2, k0)?;
    if !mid.has_edge(k0, aug.s1) {
        return Err(Error::Internal(format!(
            "{k0} is not adjacent to {} after measuring {}",
            aug.s1, aug.s2
        )));
    }
    let (out, mut second) = measure_x(&mid, aug.s1, k0)?;
    first.step_index = 0;
    second.step_index = 1;
    if !out.is_plain_inter_qlan() {
        return Err(Error::Internal(format!(
            "pipeline output is not a plain Inter-QLAN: {out}"
        )));
    }
    Ok(PipelineRun {
        graph: out,
        records: vec![first, second],
    })
}

/// Lemma pipeline for a Case I augmentation: measure `s2` then `s1`.
pub fn run_lemma1(aug: &AugmentedGraph, k0: Vertex) -> Result<PipelineRun> {
    if aug.case != Case::I {
        return Err(Error::WrongCase {
            expected: Case::I,
            found: aug.case,
        });
    }
    run_checked(aug, k0)
}

/// Lemma pipeline for a Case II augmentation; `k0` is a QLAN 2 client.
pub fn run_lemma2(aug: &AugmentedGraph, k0: Vertex) -> Result<PipelineRun> {
    if aug.case != Case::II {
        return Err(Error::WrongCase {
            expected: Case::II,
            found: aug.case,
        });
    }
    run_checked(aug, k0)
}

/// Partial complement: some clients are detached from the supers and keep
/// their original inter-links.
pub fn run_partial(aug: &AugmentedGraph, k0: Vertex) -> Result<PipelineRun> {
    if aug.retained.is_empty() {
        return Err(Error::NothingRetained);
    }
    run_checked(aug, k0)
}

/// Dispatches on the augmentation case.
pub fn run_pipeline(aug: &AugmentedGraph, k0: Vertex) -> Result<PipelineRun> {
    match aug.case {
        Case::I => run_lemma1(aug, k0),
        Case::II => run_lemma2(aug, k0),
    }
}

/// Experimental: run arbitrary `(measured, k0)` steps with no contract on the
/// result. Used to compare alternative orders and per-step `k0` choices.
pub fn run_steps(start: &InterQlanGraph, steps: &[(Vertex, Vertex)]) -> Result<PipelineRun> {
    let mut graph = start.clone();
    let mut records = Vec::with_capacity(steps.len());
    for (step_index, &(a, k0)) in steps.iter().enumerate() {
        let (next, mut record) = measure_x(&graph, a, k0)?;
        record.step_index = step_index;
        records.push(record);
        graph = next;
    }
    Ok(PipelineRun { graph, records })
}

/// Re-applies every record to its `pre_graph` and checks the chain.
pub fn replay(records: &[MeasurementRecord]) -> Result<()> {
    for (k, r) in records.iter().enumerate() {
        if r.step_index != k {
            return Err(Error::InconsistentRecords(format!(
                "step {k} carries index {}",
                r.step_index
            )));
        }
        if k > 0 && records[k - 1].post_graph != r.pre_graph {
            return Err(Error::InconsistentRecords(format!(
                "step {k} does not start where step {} ended",
                k - 1
            )));
        }
        let (post, _) = measure_x(&r.pre_graph, r.measured_vertex, r.special_neighbor)?;
        if post != r.post_graph {
            return Err(Error::InconsistentRecords(format!(
                "step {k}: measuring {} does not reproduce the recorded graph",
                r.measured_vertex
            )));
        }
    }
    Ok(())
}

/// What a partial complement did to edges touching retained clients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RetainedEdgeFate {
    Kept,
    Removed,
    Added,
    Absent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialComplementReport {
    /// Every cross pair of non-retained clients flipped adjacency.
    pub non_retained_complemented: bool,
    /// Fate of each cross pair with at least one retained endpoint.
    pub retained_pairs: Vec<(Edge, RetainedEdgeFate)>,
    /// Edges of the result joining two clients of the same QLAN.
    pub intra_qlan_edges: Vec<Edge>,
}

impl PartialComplementReport {
    /// True when every retained-incident pair ended as it started.
    pub fn retained_pairs_unchanged(&self) -> bool {
        self.retained_pairs
            .iter()
            .all(|(_, f)| matches!(f, RetainedEdgeFate::Kept | RetainedEdgeFate::Absent))
    }
}

/// Compares a pipeline result against the original client graph.
pub fn analyze_partial(
    original: &InterQlanGraph,
    retained: &BTreeSet<Vertex>,
    result: &InterQlanGraph,
) -> Result<PartialComplementReport> {
    let mut non_retained_complemented = true;
    let mut retained_pairs = Vec::new();
    let q2: Vec<Vertex> = original.clients(Qlan::Q2).collect();
    for a in original.clients(Qlan::Q1) {
        for &b in &q2 {
            let before = original.has_edge(a, b);
            let after = result.has_edge(a, b);
            if retained.contains(&a) || retained.contains(&b) {
                let fate = match (before, after) {
                    (true, true) => RetainedEdgeFate::Kept,
                    (true, false) => RetainedEdgeFate::Removed,
                    (false, true) => RetainedEdgeFate::Added,
                    (false, false) => RetainedEdgeFate::Absent,
                };
                retained_pairs.push((Edge::new(a, b)?, fate));
            } else if before == after {
                non_retained_complemented = false;
            }
        }
    }
    let intra_qlan_edges = result.edges().into_iter().filter(|e| !e.is_cross_qlan()).collect();
    Ok(PartialComplementReport {
        non_retained_complemented,
        retained_pairs,
        intra_qlan_edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    fn edge_set(g: &InterQlanGraph) -> BTreeSet<(String, String)> {
        g.edges()
            .iter()
            .map(|e| {
                let (a, b) = e.endpoints();
                (a.to_string(), b.to_string())
            })
            .collect()
    }

    fn pairs(list: &[(&str, &str)]) -> BTreeSet<(String, String)> {
        list.iter()
            .map(|&(a, b)| {
                let e = Edge::new(v(a), v(b)).unwrap();
                let (a, b) = e.endpoints();
                (a.to_string(), b.to_string())
            })
            .collect()
    }

    #[test]
    fn case1_single_link_augmentation() {
        let g = InterQlanGraph::from_inter_links(1, 1, &[(1, 1)]).unwrap();
        let aug = augment_case1(&g).unwrap();
        assert_eq!(
            edge_set(aug.graph()),
            pairs(&[("1.1", "2.1"), ("s1", "s2"), ("1.1", "s2"), ("2.1", "s1")])
        );
        aug.validate().unwrap();
    }

    #[test]
    fn case2_single_link_augmentation() {
        let g = InterQlanGraph::from_inter_links(1, 1, &[(1, 1)]).unwrap();
        let aug = augment_case2(&g).unwrap();
        assert_eq!(
            edge_set(aug.graph()),
            pairs(&[("1.1", "2.1"), ("s1", "s2"), ("1.1", "s1"), ("2.1", "s2")])
        );
        assert!(aug.graph().edges().iter().any(|e| !e.is_cross_qlan()));
        aug.validate().unwrap();
    }

    #[test]
    fn edgeless_augmentations_have_five_edges() {
        let g = InterQlanGraph::with_clients(2, 2);
        assert_eq!(augment_case1(&g).unwrap().graph().edge_count(), 5);
        let aug2 = augment_case2(&g).unwrap();
        assert_eq!(aug2.graph().edge_count(), 5);
        assert!(aug2.graph().edges().iter().all(Edge::touches_super));
    }

    #[test]
    fn empty_qlan_rejected() {
        let g = InterQlanGraph::with_clients(0, 2);
        assert_eq!(augment_case1(&g), Err(Error::EmptyQlan(Qlan::Q1)));
        let g = InterQlanGraph::with_clients(3, 0);
        assert_eq!(augment_case2(&g), Err(Error::EmptyQlan(Qlan::Q2)));
    }

    #[test]
    fn measure_single_edge_leaves_isolated_vertex() {
        let g = InterQlanGraph::from_inter_links(1, 1, &[(1, 1)]).unwrap();
        let (out, rec) = measure_x(&g, v("1.1"), v("2.1")).unwrap();
        assert_eq!(out, InterQlanGraph::with_clients(0, 1));
        assert_eq!(rec.pre_graph, g);
    }

    #[test]
    fn measure_star_hub() {
        let g = InterQlanGraph::from_inter_links(1, 3, &[(1, 1), (1, 2), (1, 3)]).unwrap();
        let (out, _) = measure_x(&g, v("1.1"), v("2.1")).unwrap();
        assert!(out.has_edge(v("2.1"), v("2.2")));
        assert!(out.has_edge(v("2.1"), v("2.3")));
        assert!(!out.has_edge(v("2.2"), v("2.3")));
        assert_eq!(out.edge_count(), 2);
    }

    #[test]
    fn measure_errors() {
        let g = InterQlanGraph::from_inter_links(2, 1, &[(1, 1)]).unwrap();
        assert_eq!(
            measure_x(&g, v("1.2"), v("2.1")).unwrap_err(),
            Error::IsolatedMeasurement(v("1.2"))
        );
        assert_eq!(
            measure_x(&g, v("2.1"), v("1.2")).unwrap_err(),
            Error::NotAdjacent {
                vertex: v("2.1"),
                k0: v("1.2")
            }
        );
    }

    #[test]
    fn lemma1_single_link_and_complete() {
        let g = InterQlanGraph::from_inter_links(1, 1, &[(1, 1)]).unwrap();
        let run = run_lemma1(&augment_case1(&g).unwrap(), v("1.1")).unwrap();
        assert_eq!(run.graph, InterQlanGraph::with_clients(1, 1));
        assert_eq!(run.measurement_count(), 2);
        assert_eq!(run.tau_count(), 6);

        let full = InterQlanGraph::complete_bipartite(2, 2);
        let run = run_lemma1(&augment_case1(&full).unwrap(), v("1.2")).unwrap();
        assert_eq!(run.graph, InterQlanGraph::with_clients(2, 2));
    }

    #[test]
    fn lemma2_single_link_and_edgeless() {
        let g = InterQlanGraph::from_inter_links(1, 1, &[(1, 1)]).unwrap();
        let run = run_lemma2(&augment_case2(&g).unwrap(), v("2.1")).unwrap();
        assert_eq!(run.graph, InterQlanGraph::with_clients(1, 1));

        let empty = InterQlanGraph::with_clients(2, 2);
        let run = run_lemma2(&augment_case2(&empty).unwrap(), v("2.1")).unwrap();
        assert_eq!(run.graph, InterQlanGraph::complete_bipartite(2, 2));
    }

    #[test]
    fn pipeline_rejects_bad_inputs() {
        let g = InterQlanGraph::from_inter_links(2, 2, &[(1, 1)]).unwrap();
        let aug1 = augment_case1(&g).unwrap();
        let aug2 = augment_case2(&g).unwrap();
        assert!(matches!(run_lemma1(&aug2, v("2.1")), Err(Error::WrongCase { .. })));
        assert!(matches!(run_lemma2(&aug1, v("1.1")), Err(Error::WrongCase { .. })));
        assert_eq!(run_lemma1(&aug1, v("2.1")), Err(Error::InvalidK0(v("2.1"))));
        assert_eq!(run_lemma2(&aug2, v("1.1")), Err(Error::InvalidK0(v("1.1"))));
        assert_eq!(run_partial(&aug1, v("1.1")), Err(Error::NothingRetained));
    }

    #[test]
    fn default_k0_is_lowest_index() {
        let g = InterQlanGraph::with_clients(3, 2);
        let aug = augment(&g, Case::I, &BTreeSet::from([v("1.1")])).unwrap();
        assert_eq!(aug.default_k0().unwrap(), v("1.2"));
        assert_eq!(run_partial(&aug, v("1.1")), Err(Error::RetainedK0(v("1.1"))));
        let aug2 = augment_case2(&g).unwrap();
        assert_eq!(aug2.default_k0().unwrap(), v("2.1"));
    }

    #[test]
    fn retaining_all_k0_candidates_leaves_no_k0() {
        let g = InterQlanGraph::from_inter_links(2, 2, &[(1, 1)]).unwrap();
        let aug = augment(&g, Case::I, &BTreeSet::from([v("1.1"), v("1.2")])).unwrap();
        assert_eq!(aug.default_k0(), Err(Error::NoEligibleK0));
    }

    #[test]
    fn partial_keeps_retained_edges() {
        // Original edges only touch 1.2, which is retained.
        let g = InterQlanGraph::from_inter_links(2, 2, &[(2, 1), (2, 2)]).unwrap();
        let retained = BTreeSet::from([v("1.2")]);
        let aug = augment(&g, Case::I, &retained).unwrap();
        let run = run_partial(&aug, v("1.1")).unwrap();
        let report = analyze_partial(&g, &retained, &run.graph).unwrap();
        assert!(report.non_retained_complemented);
        assert!(report.retained_pairs_unchanged());
        assert!(report.intra_qlan_edges.is_empty());
        assert!(run.graph.has_edge(v("1.1"), v("2.1")));
        assert!(run.graph.has_edge(v("1.1"), v("2.2")));
    }

    #[test]
    fn validate_catches_retained_super_link() {
        let g = InterQlanGraph::with_clients(2, 1);
        let mut aug = augment_case1(&g).unwrap();
        aug.retained.insert(v("1.1"));
        assert_eq!(aug.validate(), Err(Error::RetainedAdjacentToSuper(v("1.1"))));
    }

    #[test]
    fn promote_super_requires_full_connectivity() {
        // 1.1 links to every QLAN 2 client and 2.1 to every QLAN 1 client.
        let g = InterQlanGraph::from_inter_links(3, 3, &[(1, 1), (1, 2), (1, 3), (2, 1), (3, 1), (2, 3)]).unwrap();
        let aug = promote_super(&g, v("1.1"), v("2.1")).unwrap();
        assert_eq!(aug.case(), Case::I);
        let rest = aug.clients_graph();
        let k0 = aug.default_k0().unwrap();
        assert_eq!(k0, v("1.2"));
        let run = run_lemma1(&aug, k0).unwrap();
        assert_eq!(run.graph, rest.complement_graph().unwrap());

        assert_eq!(
            promote_super(&g, v("1.2"), v("2.1")),
            Err(Error::NotFullyConnected(v("1.2")))
        );
        assert_eq!(
            promote_super(&g, v("1.1"), v("2.2")),
            Err(Error::NotFullyConnected(v("2.2")))
        );
    }

    #[test]
    fn replay_detects_tampering() {
        let g = InterQlanGraph::from_inter_links(2, 2, &[(1, 2)]).unwrap();
        let run = run_lemma1(&augment_case1(&g).unwrap(), v("1.1")).unwrap();
        replay(&run.records).unwrap();
        let mut bad = run.records.clone();
        bad[1].post_graph = bad[1].post_graph.with_edge_toggled(v("1.1"), v("2.1")).unwrap();
        assert!(matches!(replay(&bad), Err(Error::InconsistentRecords(_))));
    }
}
