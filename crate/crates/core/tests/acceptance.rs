//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//!
//! Tolerances are pinned here. Geometry is exact, so every numeric check is an
//! exact equality or integer bound; only the wall-clock limits have slack.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hamtet::ccplab::{
    dedicated_cycles, find_ham_cycle, gadget38, k4_counterexample, matching_partition, pulling_tetrahedralization,
    HamSearch, Pulling,
};
use hamtet::corpus::{ball_points, forced_instance, sphere_points};
use hamtet::graph::{is_three_connected, parse_graph_text, trace_faces, write_graph_text, Graph};
use hamtet::matching::perfect_matching;
use hamtet::pipeline::{hamiltonian_tetrahedralization, hamiltonian_tetrahedralization_with};
use hamtet::verify::{verify_certificate, verify_mesh, verify_mesh_with_oracle};
use hamtet::{Error, Point3};

const CORPUS_SIZES: [usize; 4] = [10, 50, 200, 1000];
const SEEDS_PER_CELL: u64 = 25;
const CORPUS_LIMIT: Duration = Duration::from_secs(300);
const ORACLE_MAX_TETS: usize = 200;
const FORCED_INSTANCES: u64 = 50;
const GADGET_LIMIT: Duration = Duration::from_secs(60);
const GADGET_BUDGET: u64 = 500_000_000;
const PULLING_HULLS: u64 = 30;
const PULLING_MAX_M: usize = 18;
const PULLING_BUDGET: u64 = 50_000_000;
const END_TO_END_N: usize = 1000;
const END_TO_END_LIMIT: Duration = Duration::from_secs(10);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

#[derive(Default)]
struct CorpusTally {
    runs: usize,
    steiner_violations: Vec<String>,
    cycle_violations: Vec<String>,
    short_cycle_findings: Vec<String>,
    invalid: Vec<String>,
    oracle_runs: usize,
    oracle_disagreements: Vec<String>,
    elapsed: Duration,
}

fn run_corpus() -> CorpusTally {
    let mut tally = CorpusTally::default();
    let start = Instant::now();
    for &n in &CORPUS_SIZES {
        for seed in 0..SEEDS_PER_CELL {
            for (kind, pts) in [("ball", ball_points(n, seed)), ("sphere", sphere_points(n, seed))] {
                let name = format!("{kind} n={n} seed={seed}");
                tally.runs += 1;
                let t = match hamiltonian_tetrahedralization(&pts) {
                    Ok(t) => t,
                    Err(e) => {
                        tally.invalid.push(format!("{name}: {e}"));
                        continue;
                    }
                };
                let s = &t.stats;
                if s.steiner_count > s.steiner_bound() {
                    tally.steiner_violations.push(format!(
                        "{name}: {} Steiner points, bound {}",
                        s.steiner_count,
                        s.steiner_bound()
                    ));
                }
                if s.initial_cycles > s.cycle_bound() {
                    tally.cycle_violations.push(format!(
                        "{name}: {} initial cycles, bound {}",
                        s.initial_cycles,
                        s.cycle_bound()
                    ));
                }
                if s.short_cycles > 0 {
                    tally
                        .short_cycle_findings
                        .push(format!("{name}: {} initial cycle(s) shorter than 4", s.short_cycles));
                }
                let report = if t.mesh.num_live() <= ORACLE_MAX_TETS {
                    tally.oracle_runs += 1;
                    let r = verify_mesh_with_oracle(&pts, &t.mesh);
                    let fast = r.orientation_ok && r.face_consistency_ok && r.volume_ok && r.containment_ok;
                    if r.pairwise_ok != Some(fast) {
                        tally
                            .oracle_disagreements
                            .push(format!("{name}: fast checks {fast}, pairwise {:?}", r.pairwise_ok));
                    }
                    r
                } else {
                    verify_mesh(&pts, &t.mesh)
                };
                let report = report.with_certificate(&verify_certificate(&t.mesh, &t.certificate));
                if !report.all_ok() {
                    tally.invalid.push(format!("{name}: {:?}", report.first_failure));
                }
            }
        }
    }
    tally.elapsed = start.elapsed();
    tally
}

fn first(v: &[String]) -> String {
    v.first().cloned().unwrap_or_default()
}

fn criterion_1(t: &CorpusTally) -> Outcome {
    let pass = t.steiner_violations.is_empty() && t.invalid.is_empty() && t.elapsed < CORPUS_LIMIT && t.runs == 200;
    outcome(
        pass,
        format!(
            "{} runs, {} over the Steiner bound, {} failed runs, {:.1}s (limit {}s) {}",
            t.runs,
            t.steiner_violations.len(),
            t.invalid.len(),
            t.elapsed.as_secs_f64(),
            CORPUS_LIMIT.as_secs(),
            first(&t.steiner_violations)
        ),
    )
}

fn criterion_2(t: &CorpusTally) -> Outcome {
    for f in &t.short_cycle_findings {
        println!("  finding: {f}");
    }
    outcome(
        t.cycle_violations.is_empty() && t.invalid.is_empty(),
        format!(
            "{} over the cycle bound, {} runs with cycles shorter than 4 (reported as findings) {}",
            t.cycle_violations.len(),
            t.short_cycle_findings.len(),
            first(&t.cycle_violations)
        ),
    )
}

fn criterion_3(t: &CorpusTally) -> Outcome {
    outcome(
        t.invalid.is_empty() && t.oracle_disagreements.is_empty() && t.oracle_runs > 0,
        format!(
            "{} invalid, pairwise oracle on {} meshes with <= {ORACLE_MAX_TETS} tets, {} disagreements {}{}",
            t.invalid.len(),
            t.oracle_runs,
            t.oracle_disagreements.len(),
            first(&t.invalid),
            first(&t.oracle_disagreements)
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut steps = 0;
    let mut failures = vec![];
    let mut peels = 0;
    let mut interior = 0;
    for seed in 0..FORCED_INSTANCES {
        let pts = match forced_instance(seed, 1 + (seed as usize % 4), 2 + (seed as usize % 5)) {
            Ok(p) => p,
            Err(e) => {
                failures.push(format!("seed {seed}: generator {e}"));
                continue;
            }
        };
        let run = hamiltonian_tetrahedralization_with(&pts, |step, mesh, cert| {
            steps += 1;
            let r = verify_mesh(&pts_prefix(&pts, mesh), mesh).with_certificate(&verify_certificate(mesh, cert));
            if r.all_ok() {
                Ok(())
            } else {
                Err(Error::Internal(format!("after {step:?}: {:?}", r.first_failure)))
            }
        });
        match run {
            Ok(t) if t.stats.peels > 0 && t.stats.m_prime > 0 => {
                peels += t.stats.peels;
                interior += t.stats.m_prime;
                let r = verify_mesh(&pts, &t.mesh);
                if !r.all_ok() {
                    failures.push(format!("seed {seed}: final mesh {:?}", r.first_failure));
                }
            }
            Ok(_) => failures.push(format!("seed {seed}: instance has no peel or no interior point")),
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{FORCED_INSTANCES} instances, {peels} peels, {interior} interior points, {steps} stepwise checks, {} failures {}",
            failures.len(),
            first(&failures)
        ),
    )
}

/// The input points present in the mesh at an intermediate step: the hull
/// check during replay must only see points that are already inserted.
fn pts_prefix(pts: &[Point3], mesh: &hamtet::TetMesh) -> Vec<Point3> {
    let mut used = vec![false; pts.len()];
    for (_, t) in mesh.live() {
        for &v in &t.0 {
            if v < pts.len() {
                used[v] = true;
            }
        }
    }
    pts.iter()
        .zip(used)
        .filter(|(_, u)| *u)
        .map(|(p, _)| p.clone())
        .collect()
}

fn cycle_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n).map(|i| (i, (i + 1) % n)).collect()
}

fn prism(k: usize) -> Graph {
    let mut e = cycle_edges(k);
    e.extend(cycle_edges(k).into_iter().map(|(a, b)| (a + k, b + k)));
    e.extend((0..k).map(|i| (i, i + k)));
    Graph::from_edges(2 * k, &e).unwrap()
}

fn mobius_ladder(n: usize) -> Graph {
    let mut e = cycle_edges(n);
    e.extend((0..n / 2).map(|i| (i, i + n / 2)));
    Graph::from_edges(n, &e).unwrap()
}

fn petersen() -> Graph {
    let mut e = vec![];
    for i in 0..5 {
        e.extend([(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)]);
    }
    Graph::from_edges(10, &e).unwrap()
}

fn mobius_kantor() -> Graph {
    // Generalized Petersen graph GP(8, 3).
    let mut e = vec![];
    for i in 0..8 {
        e.extend([(i, (i + 1) % 8), (i, i + 8), (8 + i, 8 + (i + 3) % 8)]);
    }
    Graph::from_edges(16, &e).unwrap()
}

fn cube() -> Graph {
    let mut e = vec![];
    for a in 0..8usize {
        for bit in [1, 2, 4] {
            if a & bit == 0 {
                e.push((a, a | bit));
            }
        }
    }
    Graph::from_edges(8, &e).unwrap()
}

fn bridgeless(g: &Graph) -> bool {
    let edges = g.edges();
    (0..edges.len()).all(|i| {
        let rest: Vec<_> = edges
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(g.num_vertices(), &rest).unwrap().is_connected()
    })
}

fn exhaustive_perfect(g: &Graph, used: &mut Vec<bool>) -> bool {
    let Some(v) = used.iter().position(|u| !u) else {
        return true;
    };
    used[v] = true;
    for &w in g.neighbors(v) {
        if !used[w] {
            used[w] = true;
            if exhaustive_perfect(g, used) {
                return true;
            }
            used[w] = false;
        }
    }
    used[v] = false;
    false
}

fn criterion_5() -> Outcome {
    let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let mut corpus = vec![
        ("K4".to_string(), k4),
        ("Q3".into(), cube()),
        ("Petersen".into(), petersen()),
    ];
    for k in 3..=6 {
        corpus.push((format!("prism{k}"), prism(k)));
    }
    for n in [6, 8, 10, 12] {
        corpus.push((format!("mobius{n}"), mobius_ladder(n)));
    }
    corpus.push(("Mobius-Kantor".into(), mobius_kantor()));
    let mut failures = vec![];
    for (name, g) in &corpus {
        if !g.is_cubic() || !bridgeless(g) {
            failures.push(format!("{name} is not cubic and bridgeless"));
            continue;
        }
        let exists = exhaustive_perfect(g, &mut vec![false; g.num_vertices()]);
        match perfect_matching(g) {
            Ok(m) if m.is_perfect_for(g) && exists => {}
            other => failures.push(format!(
                "{name}: blossom {:?}, exhaustive {exists}",
                other.map(|m| m.len())
            )),
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} graphs, {} disagreements {}",
            corpus.len(),
            failures.len(),
            first(&failures)
        ),
    )
}

fn criterion_6() -> Outcome {
    let g = match k4_counterexample(&gadget38()) {
        Ok(g) => g,
        Err(e) => return outcome(false, e.to_string()),
    };
    // Check the emitted text, not the in-memory value.
    let text = write_graph_text(&g.rot, g.copy_labels().as_deref());
    let file = parse_graph_text(&text).unwrap();
    let rot = file.graph;
    let (v, e) = (rot.graph().num_vertices(), rot.graph().num_edges());
    let f = trace_faces(&rot).map(|f| f.len()).unwrap_or(0);
    let labels = file.copies.unwrap_or_default();
    let sizes: Vec<usize> = (0..4).map(|c| labels.iter().filter(|&&l| l == c).count()).collect();
    let pass = v == 164
        && e == 246
        && f == 84
        && v as i64 - e as i64 + f as i64 == 2
        && rot.graph().is_cubic()
        && is_three_connected(rot.graph())
        && labels.len() == 164
        && sizes == [41; 4]
        && text.starts_with("164 246\n");
    outcome(
        pass,
        format!(
            "V={v} E={e} F={f} V-E+F={} copies {sizes:?}",
            v as i64 - e as i64 + f as i64
        ),
    )
}

fn criterion_7() -> Outcome {
    let g = gadget38();
    let structure = g.graph().is_cubic()
        && is_three_connected(g.graph())
        && g.rot.euler_characteristic().ok() == Some(2)
        && g.num_vertices() == 38;
    let start = Instant::now();
    let result = find_ham_cycle(g.graph(), GADGET_BUDGET);
    let took = start.elapsed();
    let verdict = match &result {
        HamSearch::Found(_) => "cycle found",
        HamSearch::Absent => "none (exhaustive)",
        HamSearch::BudgetExhausted => "budget-exhausted",
    };
    outcome(
        structure && result == HamSearch::Absent && took < GADGET_LIMIT,
        format!(
            "38 vertices, cubic+3-connected+Euler {structure}, search {verdict} in {:.2}s (limit {}s)",
            took.as_secs_f64(),
            GADGET_LIMIT.as_secs()
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut failures = vec![];
    for seed in 0..PULLING_HULLS {
        let m = 5 + (seed as usize % (PULLING_MAX_M - 4));
        let pts = sphere_points(m, 1000 + seed);
        match pulling_tetrahedralization(&pts, PULLING_BUDGET) {
            Ok(Pulling::Success { mesh, certificate, .. }) => {
                let r = verify_mesh(&pts, &mesh).with_certificate(&verify_certificate(&mesh, &certificate));
                if !r.all_ok() {
                    failures.push(format!("m={m} seed={seed}: {:?}", r.first_failure));
                }
            }
            Ok(Pulling::NoCycle(s)) => failures.push(format!("m={m} seed={seed}: {s:?}")),
            Err(e) => failures.push(format!("m={m} seed={seed}: {e}")),
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{PULLING_HULLS} hulls with 5 <= m <= {PULLING_MAX_M}, {} failures {}",
            failures.len(),
            first(&failures)
        ),
    )
}

fn criterion_9() -> Outcome {
    let g = match k4_counterexample(&gadget38()) {
        Ok(g) => g,
        Err(e) => return outcome(false, e.to_string()),
    };
    let cycles = match matching_partition(g.graph()) {
        Ok(c) => c,
        Err(e) => return outcome(false, e.to_string()),
    };
    let per_copy = dedicated_cycles(&cycles, &g.copy_labels().unwrap());
    let pass = cycles.len() >= 4 && per_copy.len() == 4 && per_copy.values().all(|&k| k >= 1);
    outcome(
        pass,
        format!(
            "{} cycles, dedicated cycles per copy {:?}",
            cycles.len(),
            per_copy.values().collect::<Vec<_>>()
        ),
    )
}

fn criterion_10() -> Outcome {
    let mut parts = vec![];
    let mut pass = true;
    for (kind, pts) in [
        ("ball", ball_points(END_TO_END_N, 7)),
        ("sphere", sphere_points(END_TO_END_N, 7)),
    ] {
        let start = Instant::now();
        let ok = match hamiltonian_tetrahedralization(&pts) {
            Ok(t) => verify_mesh(&pts, &t.mesh)
                .with_certificate(&verify_certificate(&t.mesh, &t.certificate))
                .all_ok(),
            Err(_) => false,
        };
        let took = start.elapsed();
        pass &= ok && took < END_TO_END_LIMIT;
        parts.push(format!("{kind} {:.2}s valid {ok}", took.as_secs_f64()));
    }
    outcome(
        pass,
        format!(
            "n={END_TO_END_N} tetrahedralize+verify: {} (limit {}s)",
            parts.join(", "),
            END_TO_END_LIMIT.as_secs()
        ),
    )
}

fn main() -> ExitCode {
    let corpus = run_corpus();
    let results: Vec<(usize, &str, Outcome)> = vec![
        (1, "steiner bound", criterion_1(&corpus)),
        (2, "initial partition bound", criterion_2(&corpus)),
        (3, "validity", criterion_3(&corpus)),
        (4, "stepwise reinsertion replay", criterion_4()),
        (5, "matching oracle", criterion_5()),
        (6, "counterexample arithmetic", criterion_6()),
        (7, "38-vertex gadget", criterion_7()),
        (8, "pulling tetrahedralizations", criterion_8()),
        (9, "lower-bound family", criterion_9()),
        (10, "end-to-end time", criterion_10()),
    ];
    let mut all = true;
    for (i, name, o) in &results {
        all &= o.pass;
        println!(
            "{} criterion {i:>2} ({name}): {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
