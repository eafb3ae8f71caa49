//! Acceptance suite. One line per criterion; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use qlan_core::lemma::{analyze_partial, augment_case1, augment_case2, run_lemma1, run_lemma2};
use qlan_core::oracle::{
    apply_corrections, project_x, verify_pipeline, x_corrections, Outcome, QuantumState, VerifyOptions,
};
use qlan_core::routing::{run_complement, run_tqr, ComplementOptions, PhysicalTopology, RequestSet};
use qlan_core::scenario::Scenario;
use qlan_core::sweep::compare_scenario;
use qlan_core::{augment, run_pipeline, Case, InterQlanGraph, Qlan, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIDELITY_TOL: f64 = 1e-9;
const NEGATIVE_CONTROL_MAX: f64 = 0.5 + 1e-9;
const STABILIZER_TOL: f64 = 1e-9;

const BUDGET_LEMMA: Duration = Duration::from_secs(10);
const BUDGET_ORACLE: Duration = Duration::from_secs(120);
const BUDGET_INVOLUTION: Duration = Duration::from_secs(5);

/// `⟨ψ| X_v ∏_{u ∈ N(v)} Z_u |ψ⟩`, computed directly from amplitudes.
fn stabilizer_value(amps: &[(f64, f64)], x_bit: usize, z_mask: usize) -> f64 {
    let mut re = 0.0;
    for (x, &(ar, ai)) in amps.iter().enumerate() {
        let (br, bi) = amps[x ^ x_bit];
        let sign = if (x & z_mask).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        re += sign * (ar * br + ai * bi);
    }
    re
}

struct Verdict {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn all_bipartite(n1: usize, n2: usize) -> Vec<InterQlanGraph> {
    let pairs: Vec<(usize, usize)> = (1..=n1).flat_map(|i| (1..=n2).map(move |j| (i, j))).collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            let links: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            InterQlanGraph::from_inter_links(n1, n2, &links).unwrap()
        })
        .collect()
}

fn random_bipartite(rng: &mut ChaCha8Rng, n1: usize, n2: usize) -> InterQlanGraph {
    let mut links = Vec::new();
    for i in 1..=n1 {
        for j in 1..=n2 {
            if rng.random_bool(0.5) {
                links.push((i, j));
            }
        }
    }
    InterQlanGraph::from_inter_links(n1, n2, &links).unwrap()
}

/// Cross pairs absent from `g`, by direct enumeration.
fn expected_complement_edges(g: &InterQlanGraph, n1: usize, n2: usize) -> BTreeSet<(Vertex, Vertex)> {
    let mut out = BTreeSet::new();
    for i in 1..=n1 {
        for j in 1..=n2 {
            if !g.has_edge(Vertex::q1(i), Vertex::q2(j)) {
                out.insert((Vertex::q1(i), Vertex::q2(j)));
            }
        }
    }
    out
}

fn edge_pairs(g: &InterQlanGraph) -> BTreeSet<(Vertex, Vertex)> {
    g.edges().iter().map(|e| e.endpoints()).collect()
}

fn lemma_exhaustive(case: Case) -> Verdict {
    let mut graphs = 0;
    let mut runs = 0;
    let mut failures = Vec::new();
    for n1 in 1..=3 {
        for n2 in 1..=3 {
            for g in all_bipartite(n1, n2) {
                graphs += 1;
                let aug = match case {
                    Case::I => augment_case1(&g).unwrap(),
                    Case::II => augment_case2(&g).unwrap(),
                };
                let expected = expected_complement_edges(&g, n1, n2);
                let reference = g.complement_graph().unwrap();
                for k0 in aug.eligible_k0() {
                    runs += 1;
                    let run = match case {
                        Case::I => run_lemma1(&aug, k0),
                        Case::II => run_lemma2(&aug, k0),
                    };
                    match run {
                        Ok(r) if edge_pairs(&r.graph) == expected && r.graph == reference => {}
                        Ok(_) => failures.push(format!("{g} k0={k0}: wrong edge set")),
                        Err(e) => failures.push(format!("{g} k0={k0}: {e}")),
                    }
                }
            }
        }
    }
    check(
        failures.is_empty(),
        format!(
            "{graphs} graphs, {runs} (graph, k0) runs, {} mismatches{}",
            failures.len(),
            failures.first().map(|f| format!(" (first: {f})")).unwrap_or_default()
        ),
    )
}

/// Replays one outcome branch and checks every generator of the output graph on the
/// final state.
fn stabilizers_hold(aug: &InterQlanGraph, run: &qlan_core::PipelineRun, branch: &[Outcome]) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut state: QuantumState = qlan_core::oracle::prepare_graph_state(aug).unwrap();
    for (r, &o) in run.records.iter().zip(branch) {
        let (projected, _) = project_x(&state, r.measured_vertex, Some(o), &mut rng).unwrap();
        let ops = x_corrections(&r.pre_graph, r.measured_vertex, r.special_neighbor, o).unwrap();
        state = apply_corrections(&projected, &ops).unwrap();
    }
    let order = state.qubit_order().to_vec();
    let amps: Vec<(f64, f64)> = state.amplitudes().iter().map(|a| (a.re, a.im)).collect();
    let bit = |v: Vertex| 1usize << order.iter().position(|&u| u == v).unwrap();
    order.iter().all(|&v| {
        let z_mask = run
            .graph
            .neighbors(v)
            .unwrap()
            .members
            .iter()
            .fold(0, |m, &u| m | bit(u));
        (stabilizer_value(&amps, bit(v), z_mask) - 1.0).abs() <= STABILIZER_TOL
    })
}

const BRANCHES: [[Outcome; 2]; 4] = [
    [Outcome::Plus, Outcome::Plus],
    [Outcome::Plus, Outcome::Minus],
    [Outcome::Minus, Outcome::Plus],
    [Outcome::Minus, Outcome::Minus],
];

fn oracle_certification() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut instances = 0;
    let mut worst = 1.0f64;
    let mut failures = Vec::new();
    let mut negative_max = 0.0f64;
    let mut negative_ok = true;
    while instances < 200 {
        let n1 = rng.random_range(1..=4);
        let n2 = rng.random_range(1..=(8 - n1).min(4));
        let g = random_bipartite(&mut rng, n1, n2);
        let case = if rng.random_bool(0.5) { Case::I } else { Case::II };
        let aug = augment(&g, case, &BTreeSet::new()).unwrap();
        let candidates = aug.eligible_k0();
        let k0 = candidates[rng.random_range(0..candidates.len())];
        let run = run_pipeline(&aug, k0).unwrap();
        let opts = VerifyOptions {
            branches: None,
            normalize_time: true,
        };
        let report = verify_pipeline(aug.graph(), &run.records, &run.graph, &opts).unwrap();
        let all_one = report.branches.len() == 4 && report.branches.iter().all(|b| 1.0 - b.fidelity <= FIDELITY_TOL);
        let stabilized = BRANCHES.iter().all(|b| stabilizers_hold(aug.graph(), &run, b));
        worst = worst.min(report.min_fidelity);
        if !(all_one && stabilized && report.qubits <= 10) {
            failures.push(format!("{g} case {case} k0 {k0}"));
        }
        if instances % 10 == 0 {
            let i = rng.random_range(1..=n1);
            let j = rng.random_range(1..=n2);
            let bad = run.graph.with_edge_toggled(Vertex::q1(i), Vertex::q2(j)).unwrap();
            let neg = verify_pipeline(aug.graph(), &run.records, &bad, &opts).unwrap();
            let lowest = neg.branches.iter().map(|b| b.fidelity).fold(1.0, f64::min);
            negative_max = negative_max.max(lowest);
            negative_ok &= lowest <= NEGATIVE_CONTROL_MAX && !neg.passed;
        }
        instances += 1;
    }
    check(
        failures.is_empty() && negative_ok,
        format!(
            "{instances} instances x 4 branches, min fidelity {worst:.12}, stabilizer cross-check ok = {}; \
             negative control: 20 toggled claims, worst lowest-branch fidelity {negative_max:.3} (limit {NEGATIVE_CONTROL_MAX})",
            failures.is_empty()
        ),
    )
}

fn constant_cost() -> Verdict {
    let mut ok = true;
    let mut notes = Vec::new();

    // Complement cost is flat in the request count.
    let mut checked = 0;
    for seed in 0..20 {
        let s = Scenario::random(3, 4, 12, seed);
        let g = s.inter_qlan_graph().unwrap();
        let all: Vec<(Vertex, Vertex)> = expected_complement_edges(&g, 3, 4).into_iter().collect();
        for k in 1..=all.len() {
            let reqs = RequestSet::new(all[..k].iter().map(|(a, b)| (a.to_string(), b.to_string()))).unwrap();
            let r = run_complement(&g, &reqs, &s.complement_options().unwrap()).unwrap();
            ok &= r.rounds == 1 && r.measurement_count == 2 && r.served.len() == k;
            checked += 1;
        }
    }
    notes.push(format!(
        "{checked} request sets on 20 random 3+4 graphs: rounds = 1, measurements = 2"
    ));

    // k disjoint requests through one repeater with one communication qubit.
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut shared_cases = 0;
    while shared_cases < 20 {
        let g = random_bipartite(&mut rng, 3, 4);
        let pairs: Vec<(Vertex, Vertex)> = (1..=3).map(|i| (Vertex::q1(i), Vertex::q2(i))).collect();
        if pairs.iter().any(|&(a, b)| g.has_edge(a, b)) {
            continue;
        }
        let mut topo = PhysicalTopology::new();
        for v in g.vertices() {
            topo.add_node(v.to_string(), 1).unwrap();
        }
        let hub = Vertex::q2(4).to_string();
        for v in g.vertices().filter(|v| v.to_string() != hub) {
            topo.add_link(&v.to_string(), &hub).unwrap();
        }
        for k in 2..=3 {
            let reqs = RequestSet::new(pairs[..k].iter().map(|(a, b)| (a.to_string(), b.to_string()))).unwrap();
            let tqr = run_tqr(&topo, &reqs);
            let comp = run_complement(&g, &reqs, &ComplementOptions::default()).unwrap();
            ok &= tqr.rounds >= k && tqr.served.len() == k && comp.rounds == 1 && comp.served.len() == k;
        }
        shared_cases += 1;
    }
    notes.push("TQR rounds >= k for k = 2, 3 hub-sharing requests on 20 graphs".into());

    let fig1 = Scenario::bundled("fig1").unwrap();
    let r = compare_scenario(&fig1).unwrap();
    let mut single = fig1.clone();
    single.comm_qubits.clear();
    let r1 = compare_scenario(&single).unwrap();
    ok &= r.complement.rounds == 1 && r.tqr.rounds >= 2 && r1.complement.rounds == 1 && r1.tqr.rounds >= 2;
    notes.push(format!(
        "fig1: complement {} vs TQR {} rounds ({} with one qubit per node)",
        r.complement.rounds, r.tqr.rounds, r1.tqr.rounds
    ));
    check(ok, notes.join("; "))
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> InterQlanGraph {
    let n1 = rng.random_range(0..=n);
    let mut g = InterQlanGraph::with_clients(n1, n - n1);
    let vs: Vec<Vertex> = g.vertices().collect();
    for (k, &a) in vs.iter().enumerate() {
        for &b in &vs[k + 1..] {
            if rng.random_bool(0.5) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

fn involutions() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut tau_ok = 0;
    for _ in 0..500 {
        let n = rng.random_range(1..=10);
        let g = random_graph(&mut rng, n);
        let v = g.vertices().nth(rng.random_range(0..n)).unwrap();
        if g.local_complement(v).unwrap().local_complement(v).unwrap() == g {
            tau_ok += 1;
        }
    }
    let mut comp_ok = 0;
    let mut count_ok = 0;
    let graphs = all_bipartite(3, 3);
    for g in &graphs {
        let c = g.complement_graph().unwrap();
        if &c.complement_graph().unwrap() == g {
            comp_ok += 1;
        }
        let present = (1..=3)
            .flat_map(|i| (1..=3).map(move |j| (i, j)))
            .filter(|&(i, j)| g.has_edge(Vertex::q1(i), Vertex::q2(j)))
            .count();
        if present + c.edge_count() == 9 && c.edge_count() == expected_complement_edges(g, 3, 3).len() {
            count_ok += 1;
        }
    }
    let n = graphs.len();
    check(
        tau_ok == 500 && comp_ok == n && count_ok == n,
        format!("tau involution {tau_ok}/500; complement involution {comp_ok}/{n}; |E| + |E'| = 9 on {count_ok}/{n}"),
    )
}

fn partial_complement() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut scenarios = 0;
    let mut failures = Vec::new();
    let mut kept = 0;
    let mut absent = 0;
    let mut changed = 0;
    let mut unchanged_scenarios = 0;
    while scenarios < 60 {
        let n1 = rng.random_range(1..=4);
        let n2 = rng.random_range(1..=(8 - n1).min(4));
        let g = random_bipartite(&mut rng, n1, n2);
        let case = if rng.random_bool(0.5) { Case::I } else { Case::II };
        let qlan = if rng.random_bool(0.5) { Qlan::Q1 } else { Qlan::Q2 };
        let size = if qlan == Qlan::Q1 { n1 } else { n2 };
        let r = Vertex::client(qlan, rng.random_range(1..=size));
        if r.qlan == case.k0_qlan() && size == 1 {
            continue;
        }
        let retained = BTreeSet::from([r]);
        let aug = augment(&g, case, &retained).unwrap();
        let run = run_pipeline(&aug, aug.default_k0().unwrap()).unwrap();

        let mut non_retained_ok = true;
        let mut scenario_unchanged = true;
        for i in 1..=n1 {
            for j in 1..=n2 {
                let (a, b) = (Vertex::q1(i), Vertex::q2(j));
                let before = g.has_edge(a, b);
                let after = run.graph.has_edge(a, b);
                if a == r || b == r {
                    match (before, after) {
                        (true, true) => kept += 1,
                        (false, false) => absent += 1,
                        _ => {
                            changed += 1;
                            scenario_unchanged = false;
                        }
                    }
                } else if before == after {
                    non_retained_ok = false;
                }
            }
        }
        let intra = run.graph.edges().iter().filter(|e| !e.is_cross_qlan()).count();
        let lib = analyze_partial(&g, &retained, &run.graph).unwrap();
        let lib_agrees =
            lib.non_retained_complemented == non_retained_ok && lib.retained_pairs_unchanged() == scenario_unchanged;
        let opts = VerifyOptions {
            branches: None,
            normalize_time: true,
        };
        let report = verify_pipeline(aug.graph(), &run.records, &run.graph, &opts).unwrap();
        let oracle_ok = report.branches.iter().all(|b| 1.0 - b.fidelity <= FIDELITY_TOL)
            && BRANCHES.iter().all(|b| stabilizers_hold(aug.graph(), &run, b));
        if !(non_retained_ok && intra == 0 && lib_agrees && oracle_ok) {
            failures.push(format!("{g} case {case} retain {r}"));
        }
        if scenario_unchanged {
            unchanged_scenarios += 1;
        }
        scenarios += 1;
    }
    let consistent = unchanged_scenarios == scenarios || unchanged_scenarios == 0;
    let behavior = if unchanged_scenarios == scenarios {
        "retained-incident pairs unchanged in every scenario"
    } else {
        "retained-incident pairs changed in some scenarios"
    };
    check(
        failures.is_empty() && consistent,
        format!(
            "{scenarios} scenarios, {} failures; {behavior} (kept {kept}, absent {absent}, changed {changed})",
            failures.len()
        ),
    )
}

fn run_cli(args: &[&str], out: &Path) -> bool {
    Command::new(env!("CARGO_BIN_EXE_qlan"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .map(|o| o.status.success())
        .unwrap_or(false)
}

fn determinism() -> Verdict {
    let base = std::env::temp_dir().join(format!("qlan-acceptance-{}", std::process::id()));
    let runs = [base.join("a"), base.join("b")];
    let mut ok = true;
    for dir in &runs {
        ok &= run_cli(&["sweep", "--count", "100", "--seed", "42", "--format", "csv"], dir);
        ok &= run_cli(&["sweep", "--count", "100", "--seed", "42", "--format", "json"], dir);
        ok &= run_cli(&["compare", "--scenario", "fig2", "--seed", "42"], dir);
        ok &= run_cli(&["verify", "--scenario", "fig1", "--normalize"], dir);
    }
    let mut identical = Vec::new();
    for f in ["sweep.csv", "sweep.json", "comparison.json", "verification.json"] {
        let a = std::fs::read(runs[0].join(f)).unwrap_or_default();
        let b = std::fs::read(runs[1].join(f)).unwrap_or_else(|_| vec![0]);
        if a == b && !a.is_empty() {
            identical.push(f);
        } else {
            ok = false;
        }
    }
    let rows = std::fs::read_to_string(runs[0].join("sweep.csv"))
        .map(|s| s.lines().count())
        .unwrap_or(0);
    ok &= rows == 101;
    std::fs::remove_dir_all(&base).ok();
    check(
        ok,
        format!(
            "byte-identical across two runs: {}; sweep rows {}",
            identical.join(", "),
            rows.saturating_sub(1)
        ),
    )
}

type Criterion = (&'static str, fn() -> Verdict, Option<Duration>);

fn main() {
    let criteria: [Criterion; 7] = [
        (
            "Case I exhaustive equality",
            || lemma_exhaustive(Case::I),
            Some(BUDGET_LEMMA),
        ),
        (
            "Case II exhaustive equality",
            || lemma_exhaustive(Case::II),
            Some(BUDGET_LEMMA),
        ),
        (
            "quantum oracle certification",
            oracle_certification,
            Some(BUDGET_ORACLE),
        ),
        ("constant-cost property", constant_cost, None),
        ("involution property suite", involutions, Some(BUDGET_INVOLUTION)),
        ("partial complement", partial_complement, None),
        ("determinism", determinism, None),
    ];
    let mut failed = 0;
    for (k, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = f();
        let elapsed = start.elapsed();
        if let Some(b) = budget {
            if elapsed > *b {
                outcome.pass = false;
                outcome.detail.push_str(&format!("; over time budget {b:?}"));
            }
        }
        if !outcome.pass {
            failed += 1;
        }
        println!(
            "[{}] {}. {}: {} ({:.2} s)",
            if outcome.pass { "PASS" } else { "FAIL" },
            k + 1,
            name,
            outcome.detail,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
