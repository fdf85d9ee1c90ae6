//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::time::{Duration, Instant};

use hamiltonica::checks::{
    check_component_counts, check_no_factor_products, check_paired_ends, check_positive_side, check_suffix_ends,
    check_toughness_corpus, check_tree_family, check_tree_family_on, check_tree_times_cycle, t_delta_census,
    DEFAULT_NODE_BUDGET,
};
use hamiltonica::report::{CheckReport, Evidence, Verdict};
use hamiltonica::verify::verify_report;
use hamiltonica::GraphSpec;
use hamiltonica_core::constructions::{
    build_t_delta, cartesian_product, connected_graphs, fixture_paths, random_connected_graph, t_delta_path_factor,
    FixtureName,
};
use hamiltonica_core::factors::{akiyama_witness, find_path_factor, FactorOutcome, PathSystem, DEFAULT_FACTOR_BUDGET};
use hamiltonica_core::graph::degree_census;
use hamiltonica_core::hamiltonicity::{find_hamiltonian_cycle, find_hamiltonian_cycle_with, SolverOptions};
use hamiltonica_core::io::to_graph6;
use hamiltonica_core::Graph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Reports must pass and re-verify offline.
fn require_pass(reports: &[CheckReport]) -> Result<(), String> {
    for r in reports {
        if !r.passed() {
            return Err(format!("{}: {:?}", r.stem(), r.verdict));
        }
        let v = verify_report(r, false);
        if !v.ok() {
            return Err(format!("{}: {:?}", r.stem(), v.rejected));
        }
    }
    Ok(())
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    if took > limit {
        return Err(format!("took {:.1} s, limit {} s", took.as_secs_f64(), limit.as_secs()));
    }
    Ok(())
}

fn suffix_ends() -> Outcome {
    let start = Instant::now();
    let mut reports = Vec::new();
    for n in [3, 5, 7] {
        for k in (1..=n).step_by(2) {
            reports.push(check_suffix_ends(n, k).map_err(|e| e.to_string())?);
        }
    }
    require_pass(&reports)?;
    within(start, Duration::from_secs(60))?;
    let required = reports.len();
    for k in (1..=9).step_by(2) {
        reports.push(check_suffix_ends(9, k).map_err(|e| e.to_string())?);
    }
    require_pass(&reports)?;
    Ok(format!("{required} required and 5 extended instances have zero covers in both engines"))
}

fn paired_ends() -> Outcome {
    let start = Instant::now();
    let reports: Vec<CheckReport> = [3, 5, 7]
        .into_iter()
        .map(check_paired_ends)
        .collect::<anyhow::Result<_>>()
        .map_err(|e| e.to_string())?;
    require_pass(&reports)?;
    within(start, Duration::from_secs(300))?;
    let patterns: usize = reports
        .iter()
        .flat_map(|r| &r.evidence)
        .filter(|e| matches!(e, Evidence::CoverCount { .. }))
        .count();
    Ok(format!("{patterns} endpoint patterns on n in {{3,5,7}}, all with zero covers"))
}

fn tree_family() -> Outcome {
    let start = Instant::now();
    let required = check_tree_family(3, &[2, 3, 4, 5, 6], DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?;
    require_pass(std::slice::from_ref(&required))?;
    within(start, Duration::from_secs(1800))?;
    let extended = check_tree_family(3, &[7, 8, 9], DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?;
    let extended_note = match &extended.verdict {
        Verdict::Pass => "m in {7,8,9} exhausted too".to_string(),
        Verdict::Skipped { reason } => format!("extended range skipped: {reason}"),
        Verdict::Fail { reason, .. } => return Err(reason.clone()),
    };
    // negative control: T_3 without the edge from a_1 to its first leaf
    let t = build_t_delta(3).unwrap();
    let tampered = Graph::from_edges(t.n(), t.edges().filter(|&(x, y)| (x.min(y), x.max(y)) != (3, 7))).unwrap();
    let control = check_tree_family_on(&GraphSpec::graph6(&tampered), 3, &[2], DEFAULT_NODE_BUDGET)
        .map_err(|e| e.to_string())?;
    match control.verdict {
        Verdict::Fail { reason, .. } if reason.starts_with("hypothesis") => {}
        other => return Err(format!("tampered tree not flagged: {other:?}")),
    }
    Ok(format!("T_3 x P_m exhausted for m in 2..=6; {extended_note}; tampered tree flagged"))
}

fn positive_side() -> Outcome {
    let start = Instant::now();
    let reports = [
        check_positive_side(&GraphSpec::DoubleStar { left: 2, right: 2 }, 10, DEFAULT_NODE_BUDGET),
        check_positive_side(&GraphSpec::Path { n: 4 }, 6, DEFAULT_NODE_BUDGET),
    ]
    .into_iter()
    .collect::<anyhow::Result<Vec<_>>>()
    .map_err(|e| e.to_string())?;
    require_pass(&reports)?;
    within(start, Duration::from_secs(300))?;
    Ok("cycles found and verified in S_2,2 x P_10 and P_4 x P_6".into())
}

fn no_factor_products() -> Outcome {
    let start = Instant::now();
    let factors = [GraphSpec::Path { n: 2 }, GraphSpec::Path { n: 3 }];
    let r = check_no_factor_products(6, &factors, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?;
    require_pass(std::slice::from_ref(&r))?;
    within(start, Duration::from_secs(600))?;
    let products = r.evidence.iter().filter(|e| matches!(e, Evidence::Exhausted { .. })).count();
    Ok(format!("{products} products exhausted, zero exceptions"))
}

fn tree_times_cycle() -> Outcome {
    let start = Instant::now();
    let r = check_tree_times_cycle(7, &[3, 4, 5], DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?;
    require_pass(std::slice::from_ref(&r))?;
    within(start, Duration::from_secs(900))?;
    Ok(format!("{} tree and cycle pairs agree with the degree criterion", r.evidence.len()))
}

/// Plain depth-first search over vertex orders starting at 0, no pruning.
fn oracle_hamiltonian(g: &Graph) -> bool {
    fn extend(g: &Graph, v: usize, seen: u64, depth: usize) -> bool {
        if depth == g.n() {
            return g.has_edge(v, 0);
        }
        g.neighbors(v)
            .iter()
            .any(|&w| seen >> w & 1 == 0 && extend(g, w, seen | 1 << w, depth + 1))
    }
    g.n() >= 3 && extend(g, 0, 1, 1)
}

fn solver_agrees(g: &Graph) -> Result<(), String> {
    let expected = oracle_hamiltonian(g);
    let pruned = find_hamiltonian_cycle(g, u64::MAX).map_err(|e| e.to_string())?;
    let unpruned = find_hamiltonian_cycle_with(g, u64::MAX, SolverOptions::NONE).map_err(|e| e.to_string())?;
    for (name, v) in [("pruned", &pruned), ("unpruned", &unpruned)] {
        if v.is_found() != expected || (!expected && !v.is_exhausted()) {
            return Err(format!("{name} solver disagrees with the oracle on {}", to_graph6(g)));
        }
    }
    Ok(())
}

fn oracle_equivalences() -> Outcome {
    let mut factor_graphs = 0;
    for n in 1..=9 {
        for g in connected_graphs(n).map_err(|e| e.to_string())? {
            let found = matches!(find_path_factor(&g, DEFAULT_FACTOR_BUDGET), FactorOutcome::Found(_));
            let witness = akiyama_witness(&g).map_err(|e| e.to_string())?;
            if found == witness.is_some() {
                return Err(format!("path factor and witness disagree on {}", to_graph6(&g)));
            }
            if n >= 3 && n <= 8 {
                solver_agrees(&g)?;
            }
            factor_graphs += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..1000 {
        let g = random_connected_graph(9 + i % 2, 0.35, &mut rng);
        solver_agrees(&g)?;
    }
    Ok(format!(
        "path factors match witnesses on {factor_graphs} graphs; both solvers match the oracle on every graph up to 8 vertices and 1000 random ones on 9 and 10"
    ))
}

fn structural_facts() -> Outcome {
    for delta in 3..=8 {
        let t = build_t_delta(delta).map_err(|e| e.to_string())?;
        if degree_census(&t) != t_delta_census(delta) || t.n() != 6 * delta - 3 || !t.is_tree() {
            return Err(format!("T_{delta} has the wrong shape"));
        }
        let paths = t_delta_path_factor(delta).map_err(|e| e.to_string())?;
        if !PathSystem::new(&t, paths).is_ok_and(|ps| ps.is_factor_of(&t)) {
            return Err(format!("the path factor of T_{delta} does not validate"));
        }
    }
    let mut fixtures = 0;
    for delta in [3, 4] {
        let t = build_t_delta(delta).unwrap();
        for m in 4..=9 {
            let g = cartesian_product(&t, &hamiltonica_core::constructions::path_graph(m).unwrap()).unwrap();
            let all = fixture_paths(delta, m).map_err(|e| e.to_string())?;
            for name in FixtureName::ALL {
                if !all.iter().any(|f| f.name == name) {
                    return Err(format!("fixture {name:?} missing for delta={delta} m={m}"));
                }
            }
            for f in &all {
                f.validate(&g, delta, m).map_err(|e| format!("{f} in T_{delta} x P_{m}: {e}"))?;
            }
            fixtures += all.len();
        }
    }
    let mut counts = Vec::new();
    for delta in 3..=5 {
        for m in 2..=9 {
            counts.push(check_component_counts(delta, m).map_err(|e| e.to_string())?);
        }
    }
    require_pass(&counts)?;
    Ok(format!(
        "census and path factor for delta 3..=8, {fixtures} fixture paths, {} component counts",
        counts.len()
    ))
}

fn toughness() -> Outcome {
    let r = check_toughness_corpus(8, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?;
    require_pass(std::slice::from_ref(&r))?;
    let petersen = r.evidence.iter().any(|e| {
        matches!(e, Evidence::Toughness { graph: GraphSpec::Petersen, hamiltonian: Some(false), witness: None })
    });
    if !petersen {
        return Err("Petersen graph missing or misreported".into());
    }
    let graphs = r.evidence.iter().filter(|e| matches!(e, Evidence::Toughness { .. })).count();
    Ok(format!("implication holds on {graphs} graphs; Petersen 1-tough and not Hamiltonian"))
}

fn main() {
    // `cargo test` passes harness flags such as --list; only a plain run executes
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("middle-row suffix constraints admit no strip cover", suffix_ends),
        ("paired endpoint patterns admit no strip cover", paired_ends),
        ("T_3 x P_m is not Hamiltonian, with negative control", tree_family),
        ("long even paths give Hamiltonian products", positive_side),
        ("no path factor times a pendant graph is not Hamiltonian", no_factor_products),
        ("tree times cycle follows the degree criterion", tree_times_cycle),
        ("oracles agree with the fast deciders", oracle_equivalences),
        ("structure of T_delta, its fixtures and separators", structural_facts),
        ("Hamiltonian graphs are 1-tough", toughness),
    ];
    let mut failures = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} PASS ({secs:.1} s) {title}: {detail}", i + 1),
            Err(reason) => {
                failures += 1;
                println!("criterion {} FAIL ({secs:.1} s) {title}: {reason}", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
