//! Traditional path-based routing versus the graph-complement strategy.
//!
//! The path-based baseline is reactive: a request first gets a shortest path,
//! then waits until every node on it has spare communication qubits. A transit
//! repeater needs two qubits (one per adjacent link), an endpoint needs one.
//! A node with fewer qubits than a path asks of it generates its links one at
//! a time, holding everything it has for `ceil(demand / capacity)` rounds.
//!
//! The complement strategy is proactive: the augmented graph state is assumed
//! to be distributed already and one lemma pipeline serves every request whose
//! pair ends up adjacent.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{InterQlanGraph, Vertex};
use crate::lemma::{augment, run_pipeline, Case};

pub type NodeId = String;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PhysicalTopology {
    nodes: BTreeSet<NodeId>,
    links: BTreeSet<(NodeId, NodeId)>,
    comm_qubits: BTreeMap<NodeId, u32>,
}

impl PhysicalTopology {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, id: impl Into<NodeId>, comm_qubits: u32) -> Result<()> {
        let id = id.into();
        if comm_qubits == 0 {
            return Err(Error::NoCommQubits(id));
        }
        self.nodes.insert(id.clone());
        self.comm_qubits.insert(id, comm_qubits);
        Ok(())
    }

    pub fn add_link(&mut self, a: &str, b: &str) -> Result<()> {
        for n in [a, b] {
            if !self.nodes.contains(n) {
                return Err(Error::UnknownNode(n.to_string()));
            }
        }
        if a == b {
            return Err(Error::InvalidRequest(format!("physical self-link at {a}")));
        }
        let key = if a < b { (a, b) } else { (b, a) };
        self.links.insert((key.0.to_string(), key.1.to_string()));
        Ok(())
    }

    pub fn set_comm_qubits(&mut self, id: &str, comm_qubits: u32) -> Result<()> {
        if !self.nodes.contains(id) {
            return Err(Error::UnknownNode(id.to_string()));
        }
        if comm_qubits == 0 {
            return Err(Error::NoCommQubits(id.to_string()));
        }
        self.comm_qubits.insert(id.to_string(), comm_qubits);
        Ok(())
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    pub fn links(&self) -> &BTreeSet<(NodeId, NodeId)> {
        &self.links
    }

    pub fn comm_qubits(&self, id: &str) -> Option<u32> {
        self.comm_qubits.get(id).copied()
    }

    pub fn neighbors<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.links.iter().filter_map(move |(a, b)| {
            if a == id {
                Some(b.as_str())
            } else if b == id {
                Some(a.as_str())
            } else {
                None
            }
        })
    }

    /// Shortest path by hop count; ties go to the lexicographically smallest
    /// node sequence. Empty when `dst` is unreachable.
    pub fn find_path(&self, src: &str, dst: &str) -> Result<Vec<NodeId>> {
        for n in [src, dst] {
            if !self.nodes.contains(n) {
                return Err(Error::UnknownNode(n.to_string()));
            }
        }
        // Distances to dst, then a greedy walk from src picking the smallest
        // neighbor one hop closer.
        let mut dist: BTreeMap<&str, usize> = BTreeMap::from([(dst, 0)]);
        let mut queue = VecDeque::from([dst]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u];
            for w in self.neighbors(u) {
                if !dist.contains_key(w) {
                    dist.insert(w, d + 1);
                    queue.push_back(w);
                }
            }
        }
        let Some(&total) = dist.get(src) else {
            return Ok(Vec::new());
        };
        let mut path = vec![src.to_string()];
        let mut cur = src;
        for remaining in (0..total).rev() {
            cur = self
                .neighbors(cur)
                .filter(|w| dist.get(w) == Some(&remaining))
                .min()
                .expect("BFS layer has a predecessor");
            path.push(cur.to_string());
        }
        Ok(path)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Request {
    pub id: usize,
    pub source: NodeId,
    pub destination: NodeId,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RequestSet {
    requests: Vec<Request>,
}

impl RequestSet {
    /// Ids follow input order starting at 0.
    pub fn new<I, S, D>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, D)>,
        S: Into<NodeId>,
        D: Into<NodeId>,
    {
        let mut requests = Vec::new();
        for (id, (s, d)) in pairs.into_iter().enumerate() {
            let (source, destination) = (s.into(), d.into());
            if source == destination {
                return Err(Error::InvalidRequest(format!(
                    "request {id} has source = destination = {source}"
                )));
            }
            requests.push(Request {
                id,
                source,
                destination,
            });
        }
        Ok(RequestSet { requests })
    }

    pub fn requests(&self) -> &[Request] {
        &self.requests
    }

    pub fn len(&self) -> usize {
        self.requests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.requests.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    #[serde(rename = "TQR")]
    Tqr,
    #[serde(rename = "complement")]
    Complement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailedRequest {
    pub id: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoutingReport {
    pub strategy: Strategy,
    pub rounds: usize,
    pub swap_count: usize,
    pub measurement_count: usize,
    /// Link-level entangled pairs generated (path hops, TQR only).
    pub epr_pairs: usize,
    pub served: Vec<usize>,
    /// Subset of `served` already adjacent before any operation.
    pub preexisting: Vec<usize>,
    pub failed: Vec<FailedRequest>,
    pub comm_qubit_peak: BTreeMap<NodeId, u32>,
}

impl RoutingReport {
    fn empty(strategy: Strategy) -> Self {
        RoutingReport {
            strategy,
            rounds: 0,
            swap_count: 0,
            measurement_count: 0,
            epr_pairs: 0,
            served: Vec::new(),
            preexisting: Vec::new(),
            failed: Vec::new(),
            comm_qubit_peak: BTreeMap::new(),
        }
    }

    fn fail(&mut self, id: usize, reason: &str) {
        self.failed.push(FailedRequest {
            id,
            reason: reason.to_string(),
        });
    }
}

struct Admission {
    id: usize,
    hold: Vec<(NodeId, u32)>,
    remaining: usize,
    swaps: usize,
    hops: usize,
}

/// Reactive baseline: greedy per-round admission in input order.
pub fn run_tqr(topo: &PhysicalTopology, reqs: &RequestSet) -> RoutingReport {
    let mut report = RoutingReport::empty(Strategy::Tqr);
    let mut pending: Vec<Admission> = Vec::new();
    for r in reqs.requests() {
        let path = match topo.find_path(&r.source, &r.destination) {
            Ok(p) => p,
            Err(_) => {
                report.fail(r.id, "unknown node");
                continue;
            }
        };
        if path.is_empty() {
            report.fail(r.id, "disconnected");
            continue;
        }
        let last = path.len() - 1;
        let mut hold = Vec::with_capacity(path.len());
        let mut duration = 1;
        for (k, node) in path.iter().enumerate() {
            let demand = if k == 0 || k == last { 1 } else { 2 };
            let cap = topo.comm_qubits(node).expect("path nodes exist");
            hold.push((node.clone(), demand.min(cap)));
            duration = duration.max(demand.div_ceil(cap) as usize);
        }
        pending.push(Admission {
            id: r.id,
            hold,
            remaining: duration,
            swaps: path.len().saturating_sub(2),
            hops: path.len() - 1,
        });
    }

    let mut used: BTreeMap<NodeId, u32> = BTreeMap::new();
    let mut active: Vec<Admission> = Vec::new();
    while !pending.is_empty() || !active.is_empty() {
        report.rounds += 1;
        let mut waiting = Vec::new();
        for adm in pending.drain(..) {
            let fits = adm
                .hold
                .iter()
                .all(|(n, q)| used.get(n).copied().unwrap_or(0) + q <= topo.comm_qubits(n).expect("node exists"));
            if fits {
                for (n, q) in &adm.hold {
                    let u = used.entry(n.clone()).or_insert(0);
                    *u += q;
                    let peak = report.comm_qubit_peak.entry(n.clone()).or_insert(0);
                    *peak = (*peak).max(*u);
                }
                active.push(adm);
            } else {
                waiting.push(adm);
            }
        }
        pending = waiting;
        let mut still = Vec::new();
        for mut adm in active.drain(..) {
            adm.remaining -= 1;
            if adm.remaining == 0 {
                for (n, q) in &adm.hold {
                    *used.get_mut(n).expect("held") -= q;
                }
                report.served.push(adm.id);
                report.swap_count += adm.swaps;
                report.epr_pairs += adm.hops;
            } else {
                still.push(adm);
            }
        }
        active = still;
    }
    report.served.sort_unstable();
    report.failed.sort_by_key(|f| f.id);
    report
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComplementOptions {
    pub case: Case,
    pub retained: BTreeSet<Vertex>,
    pub k0: Option<Vertex>,
    /// Skip the pipeline when there is nothing to serve.
    pub skip_if_empty: bool,
}

fn resolve_request(g: &InterQlanGraph, r: &Request) -> Option<(Vertex, Vertex)> {
    let a: Vertex = r.source.parse().ok()?;
    let b: Vertex = r.destination.parse().ok()?;
    (a.is_client() && b.is_client() && g.contains(a) && g.contains(b)).then_some((a, b))
}

/// Proactive strategy: one pipeline run, every complement pair served at once.
pub fn run_complement(g: &InterQlanGraph, reqs: &RequestSet, options: &ComplementOptions) -> Result<RoutingReport> {
    let mut report = RoutingReport::empty(Strategy::Complement);
    if reqs.is_empty() && options.skip_if_empty {
        return Ok(report);
    }
    let aug = augment(g, options.case, &options.retained)?;
    let k0 = match options.k0 {
        Some(k) => k,
        None => aug.default_k0()?,
    };
    let run = run_pipeline(&aug, k0)?;
    report.rounds = 1;
    report.measurement_count = run.measurement_count();
    for v in aug.graph().vertices() {
        report.comm_qubit_peak.insert(v.to_string(), 1);
    }
    for r in reqs.requests() {
        match resolve_request(g, r) {
            None => report.fail(r.id, "unknown node"),
            Some((a, b)) if g.has_edge(a, b) => {
                report.served.push(r.id);
                report.preexisting.push(r.id);
            }
            Some((a, b)) if run.graph.has_edge(a, b) => report.served.push(r.id),
            Some(_) => report.fail(r.id, "not a complement pair"),
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisRow {
    pub axis: String,
    pub tqr: String,
    pub complement: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub requests: usize,
    pub tqr: RoutingReport,
    pub complement: RoutingReport,
    /// TQR rounds over complement rounds (0 when the complement ran none).
    pub rounds_ratio: f64,
    pub axes: Vec<AxisRow>,
}

fn axes(tqr: &RoutingReport, comp: &RoutingReport, graph_qubits: usize) -> Vec<AxisRow> {
    let row = |axis: &str, tqr: String, complement: String| AxisRow {
        axis: axis.to_string(),
        tqr,
        complement,
    };
    vec![
        row(
            "Key Operation",
            format!("path selection ({} paths)", tqr.served.len()),
            format!(
                "graph manipulation ({} local complementations)",
                3 * comp.measurement_count
            ),
        ),
        row(
            "Entanglement Resource",
            format!("EPR pairs ({})", tqr.epr_pairs),
            format!("graph state ({graph_qubits} qubits)"),
        ),
        row(
            "Entanglement Distribution",
            format!("reactive ({} rounds)", tqr.rounds),
            format!("proactive ({} rounds)", comp.rounds),
        ),
        row(
            "Key Tool",
            format!("entanglement swapping ({} swaps)", tqr.swap_count),
            format!("Pauli measurement ({} X-measurements)", comp.measurement_count),
        ),
    ]
}

/// Runs both strategies on one scenario. `topo` must hold exactly the client
/// nodes of `g`.
pub fn compare(
    topo: &PhysicalTopology,
    g: &InterQlanGraph,
    reqs: &RequestSet,
    options: &ComplementOptions,
) -> Result<ComparisonReport> {
    let clients: BTreeSet<NodeId> = g.vertices().filter(Vertex::is_client).map(|v| v.to_string()).collect();
    if &clients != topo.nodes() {
        let only_topo: Vec<&NodeId> = topo.nodes().difference(&clients).collect();
        let only_graph: Vec<&NodeId> = clients.difference(topo.nodes()).collect();
        return Err(Error::ScenarioMismatch(format!(
            "node sets differ (physical only: {only_topo:?}, Inter-QLAN only: {only_graph:?})"
        )));
    }
    let tqr = run_tqr(topo, reqs);
    let complement = run_complement(g, reqs, options)?;
    let rounds_ratio = if complement.rounds == 0 {
        0.0
    } else {
        tqr.rounds as f64 / complement.rounds as f64
    };
    let graph_qubits = g.vertex_count() + 2;
    Ok(ComparisonReport {
        requests: reqs.len(),
        axes: axes(&tqr, &complement, graph_qubits),
        tqr,
        complement,
        rounds_ratio,
    })
}
