//! Named checks. Each verifies finitely many instances of a statement and
//! returns a report whose evidence can be re-checked offline.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, ensure, Result};
use hamiltonica_core::constructions::{all_trees, connected_graphs};
use hamiltonica_core::factors::{
    akiyama_witness, count_strip_covers, enumerate_path_covers, find_path_factor, first_lemma_constraint,
    lemma_grid, second_lemma_patterns, BoundaryReading, ConstraintDocument, EndpointPattern, FactorOutcome,
    DEFAULT_FACTOR_BUDGET,
};
use hamiltonica_core::graph::{bipartition, components_avoiding, degree_census, Bipartition};
use hamiltonica_core::hamiltonicity::{find_hamiltonian_cycle, verify_cycle, HamOutcome};
use hamiltonica_core::toughness::{hamiltonian_implies_tough_check, OneToughness, ToughnessReport};
use hamiltonica_core::{Graph, VertexSet};
use rayon::prelude::*;

use crate::graph_spec::GraphSpec;
use crate::report::{CheckReport, Evidence};

pub use hamiltonica_core::hamiltonicity::DEFAULT_NODE_BUDGET;

/// Largest lemma strip width checked exhaustively.
pub const COVER_MAX_COLUMNS: usize = 9;
/// Budget misses at or below this `m` are failures; above it, skips.
pub const REQUIRED_MAX_M: usize = 6;

const INSTANCES: &str = "verifies the listed finite instances only, not the general statement";

fn timed(f: impl FnOnce() -> Result<CheckReport>) -> Result<CheckReport> {
    let start = Instant::now();
    let mut r = f()?;
    r.wall_time = start.elapsed();
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Solved {
    Found,
    Exhausted,
    Unknown,
}

fn solve(spec: &GraphSpec, g: &Graph, budget: u64) -> Result<(Solved, Evidence)> {
    let graph = spec.clone();
    Ok(match find_hamiltonian_cycle(g, budget)?.outcome {
        HamOutcome::Found(cycle) => (Solved::Found, Evidence::Cycle { graph, cycle }),
        HamOutcome::NotHamiltonian { nodes_explored } => (Solved::Exhausted, Evidence::Exhausted { graph, nodes_explored }),
        HamOutcome::Unknown { budget } => (Solved::Unknown, Evidence::Unresolved { graph, budget }),
    })
}

fn cover_count(case: String, n: usize, doc: &ConstraintDocument) -> Result<Evidence> {
    let g = lemma_grid(n)?;
    let c = doc.resolve(&g)?;
    Ok(Evidence::CoverCount {
        case,
        columns: n,
        constraint: doc.clone(),
        backtracking: enumerate_path_covers(&g, &c)?,
        strip: count_strip_covers(3, n, &c)?,
    })
}

/// Records a zero-cover count, failing on disagreement or a nonzero count.
fn expect_zero(r: &mut CheckReport, ev: Evidence) {
    if let Evidence::CoverCount { backtracking, strip, ref case, .. } = ev {
        if backtracking != strip {
            let reason = format!("{case}: engines disagree ({backtracking} vs {strip})");
            r.fail(reason, ev);
        } else if backtracking != 0 {
            let reason = format!("{case}: {backtracking} path covers exist");
            r.fail(reason, ev);
        } else {
            r.evidence.push(ev);
        }
    }
}

fn check_columns(n: usize) -> Result<()> {
    ensure!(
        (1..=COVER_MAX_COLUMNS).contains(&n),
        "n={n} outside the exhaustive range [1, {COVER_MAX_COLUMNS}]"
    );
    Ok(())
}

/// No path cover of `P_3 □ P_n` has all ends in the middle row at columns
/// `k..=n` with `(2, k)` among them.
pub fn check_suffix_ends(n: usize, k: usize) -> Result<CheckReport> {
    check_columns(n)?;
    let c = first_lemma_constraint(n, k)?;
    let doc = ConstraintDocument::describe(&c, &lemma_grid(n)?);
    check_zero_covers("suffix-ends", n, &format!("k={k}"), &doc).map(|r| r.param("k", k))
}

/// Counts covers of `P_3 □ P_n` under an arbitrary constraint document and
/// passes iff there are none. The lemma checks are special cases.
pub fn check_zero_covers(check_id: &str, n: usize, case: &str, doc: &ConstraintDocument) -> Result<CheckReport> {
    check_columns(n)?;
    timed(|| {
        let mut r = CheckReport::new(check_id, format!("path covers of P_3 x P_{n} under one constraint ({case}); {INSTANCES}"))
            .param("n", n);
        expect_zero(&mut r, cover_count(case.to_string(), n, doc)?);
        Ok(r)
    })
}

fn pattern_case(p: &EndpointPattern) -> String {
    format!("k={} ends_below={:?}", p.k, p.ends_below)
}

/// Every endpoint pattern allowed by the pairing clause admits no cover.
/// The vacuous boundary reading decides the verdict; the literal reading's
/// counts are recorded alongside.
pub fn check_paired_ends(n: usize) -> Result<CheckReport> {
    check_columns(n)?;
    timed(|| {
        let mut r = CheckReport::new(
            "paired-ends",
            format!("every admissible endpoint pattern on P_3 x P_{n}; {INSTANCES}"),
        )
        .param("n", n)
        .param("reading", BoundaryReading::Vacuous);
        let g = lemma_grid(n)?;
        let mut tallies = Vec::new();
        for reading in BoundaryReading::BOTH {
            let patterns = second_lemma_patterns(n, reading);
            let mut covers = 0;
            for p in &patterns {
                let doc = ConstraintDocument::describe(&p.constraint(n)?, &g);
                let ev = cover_count(pattern_case(p), n, &doc)?;
                if let Evidence::CoverCount { backtracking, .. } = ev {
                    covers += backtracking;
                }
                if reading == BoundaryReading::Vacuous {
                    expect_zero(&mut r, ev);
                }
            }
            let name = format!("{reading:?}").to_lowercase();
            tallies.push(Evidence::Tally { name: format!("{name}_patterns"), value: patterns.len() as u64 });
            tallies.push(Evidence::Tally { name: format!("{name}_covers"), value: covers });
        }
        r.evidence.extend(tallies);
        Ok(r)
    })
}

/// One endpoint pattern, validated against the pairing clause first.
pub fn check_paired_end_pattern(n: usize, pattern: &EndpointPattern, reading: BoundaryReading) -> Result<CheckReport> {
    check_columns(n)?;
    pattern.validate(n, reading)?;
    let doc = ConstraintDocument::describe(&pattern.constraint(n)?, &lemma_grid(n)?);
    check_zero_covers("paired-ends", n, &pattern_case(pattern), &doc)
        .map(|r| r.param("k", pattern.k).param("ends_below", &pattern.ends_below).param("reading", reading))
}

/// `G □ H` is not Hamiltonian when `G` has no path factor and `H` has a
/// vertex of degree one, over all connected `G` on `2..=max_n` vertices.
pub fn check_no_factor_products(max_n: usize, factors: &[GraphSpec], budget: u64) -> Result<CheckReport> {
    ensure!(max_n <= 7, "max_n={max_n} exceeds 7");
    let mut graphs = Vec::new();
    for n in 2..=max_n {
        graphs.extend(connected_graphs(n)?.iter().map(GraphSpec::graph6));
    }
    check_no_factor_products_on(&graphs, factors, budget).map(|r| r.param("max_n", max_n))
}

/// The same statement over explicit graphs. A factor `H` without a vertex
/// of degree one fails the hypothesis check.
pub fn check_no_factor_products_on(graphs: &[GraphSpec], factors: &[GraphSpec], budget: u64) -> Result<CheckReport> {
    timed(|| {
        let names: Vec<String> = factors.iter().map(ToString::to_string).collect();
        let mut r = CheckReport::new(
            "no-factor-pendant-product",
            format!("products of {} graphs lacking a path factor with {}; {INSTANCES}", graphs.len(), names.join(", ")),
        )
        .param("factors", &names);
        let built: Vec<Graph> = factors.iter().map(GraphSpec::build).collect::<Result<_, _>>()?;
        for (spec, h) in factors.iter().zip(&built) {
            if !(0..h.n()).any(|v| h.degree(v) == 1) {
                let census = degree_census(h);
                r.fail(
                    format!("hypothesis: {spec} has no vertex of degree one"),
                    Evidence::TreeHypotheses {
                        graph: spec.clone(),
                        is_tree: h.is_tree(),
                        max_degree: h.max_degree(),
                        degree_census: census,
                        path_factor: None,
                    },
                );
                return Ok(r);
            }
        }
        let mut unmet = 0;
        for spec in graphs {
            let g = spec.build()?;
            let Some(w) = akiyama_witness(&g)? else {
                unmet += 1;
                continue;
            };
            r.evidence.push(Evidence::NoPathFactor {
                graph: spec.clone(),
                s: w.s.to_vec(),
                isolated_after: w.isolated_after,
            });
            for h in factors {
                let product = GraphSpec::product(spec.clone(), h.clone());
                let (solved, ev) = solve(&product, &product.build()?, budget)?;
                match solved {
                    Solved::Exhausted => r.evidence.push(ev),
                    Solved::Found => r.fail(format!("{product} is Hamiltonian"), ev),
                    Solved::Unknown => {
                        r.skip(format!("{product}: budget {budget} exhausted"));
                        r.evidence.push(ev);
                    }
                }
            }
        }
        r.evidence.push(Evidence::Tally { name: "graphs_with_path_factor".into(), value: unmet });
        Ok(r)
    })
}

/// Degree census of `T_Δ`.
pub fn t_delta_census(delta: usize) -> BTreeMap<usize, usize> {
    let mut census = BTreeMap::new();
    for (degree, count) in [(1, 4 * delta - 4), (2, 1), (3, 2 * delta - 2), (delta, 2)] {
        *census.entry(degree).or_insert(0) += count;
    }
    census
}

fn tree_hypotheses(spec: &GraphSpec, g: &Graph) -> Evidence {
    let path_factor = match find_path_factor(g, DEFAULT_FACTOR_BUDGET) {
        FactorOutcome::Found(ps) => Some(ps.paths().to_vec()),
        _ => None,
    };
    Evidence::TreeHypotheses {
        graph: spec.clone(),
        is_tree: g.is_tree(),
        max_degree: g.max_degree(),
        degree_census: degree_census(g),
        path_factor,
    }
}

/// `T_Δ □ P_m` is not Hamiltonian for each listed `m`.
pub fn check_tree_family(delta: usize, ms: &[usize], budget: u64) -> Result<CheckReport> {
    check_tree_family_on(&GraphSpec::TDelta { delta }, delta, ms, budget)
}

/// The same statement for a supplied tree, which must match `T_Δ`'s
/// hypotheses: a tree with a path factor, maximum degree Δ and the
/// expected degree census.
pub fn check_tree_family_on(tree: &GraphSpec, delta: usize, ms: &[usize], budget: u64) -> Result<CheckReport> {
    ensure!(delta >= 3, "delta={delta} must be at least 3");
    let top = 4 * delta - 3;
    if let Some(m) = ms.iter().find(|&&m| !(2..=top).contains(&m)) {
        bail!("m={m} outside [2, {top}]");
    }
    timed(|| {
        let mut r = CheckReport::new(
            "tree-family-not-hamiltonian",
            format!("{tree} x P_m for m in {ms:?}; m=1 is a tree and degenerate; {INSTANCES}"),
        )
        .param("tree", tree.to_string())
        .param("delta", delta)
        .param("m", ms);
        let g = tree.build()?;
        let hyp = tree_hypotheses(tree, &g);
        if let Evidence::TreeHypotheses { is_tree, max_degree, ref degree_census, ref path_factor, .. } = hyp {
            let problem = if !is_tree {
                Some("not a tree".to_string())
            } else if max_degree != delta {
                Some(format!("maximum degree {max_degree}, expected {delta}"))
            } else if *degree_census != t_delta_census(delta) {
                Some(format!("degree census {degree_census:?} differs from the expected {:?}", t_delta_census(delta)))
            } else if path_factor.is_none() {
                Some("no path factor".to_string())
            } else {
                None
            };
            if let Some(p) = problem {
                r.fail(format!("hypothesis: {tree} {p}"), hyp);
                return Ok(r);
            }
        }
        r.evidence.push(hyp);
        for &m in ms {
            let product = GraphSpec::product(tree.clone(), GraphSpec::Path { n: m });
            let (solved, ev) = solve(&product, &product.build()?, budget)?;
            match solved {
                Solved::Exhausted => r.evidence.push(ev),
                Solved::Found => r.fail(format!("{product} is Hamiltonian"), ev),
                Solved::Unknown if m <= REQUIRED_MAX_M => {
                    r.fail(format!("{product}: budget {budget} exhausted inside the required range"), ev)
                }
                Solved::Unknown => {
                    r.skip(format!("{product}: budget {budget} exhausted"));
                    r.evidence.push(ev);
                }
            }
        }
        Ok(r)
    })
}

/// `T □ P_n` is Hamiltonian for a tree `T` with a path factor, `n` even and
/// `n >= 4Δ(T) - 2`. Unmet hypotheses are input errors.
pub fn check_positive_side(tree: &GraphSpec, n: usize, budget: u64) -> Result<CheckReport> {
    let g = tree.build()?;
    let hyp = tree_hypotheses(tree, &g);
    let Evidence::TreeHypotheses { is_tree, max_degree, ref path_factor, .. } = hyp else { unreachable!() };
    ensure!(is_tree, "{tree} is not a tree");
    ensure!(path_factor.is_some(), "{tree} has no path factor");
    ensure!(n % 2 == 0, "n={n} must be even");
    let least = (4 * max_degree).saturating_sub(2);
    ensure!(n >= least, "n={n} below 4*{max_degree}-2={least}");
    timed(|| {
        let mut r = CheckReport::new("long-path-positive-side", format!("{tree} x P_{n}; {INSTANCES}"))
            .param("tree", tree.to_string())
            .param("n", n);
        r.evidence.push(hyp.clone());
        let product = GraphSpec::product(tree.clone(), GraphSpec::Path { n });
        let pg = product.build()?;
        let (solved, ev) = solve(&product, &pg, budget)?;
        match (solved, &ev) {
            (Solved::Found, Evidence::Cycle { cycle, .. }) if verify_cycle(&pg, cycle) => r.evidence.push(ev),
            (Solved::Found, _) => r.fail(format!("{product}: cycle failed verification"), ev),
            (Solved::Exhausted, _) => r.fail(format!("{product} is not Hamiltonian"), ev),
            (Solved::Unknown, _) => {
                r.skip(format!("{product}: budget {budget} exhausted"));
                r.evidence.push(ev);
            }
        }
        Ok(r)
    })
}

/// `T □ C_n` is Hamiltonian iff `Δ(T) <= n`, over all trees on
/// `1..=max_tree_n` vertices.
pub fn check_tree_times_cycle(max_tree_n: usize, ns: &[usize], budget: u64) -> Result<CheckReport> {
    ensure!(max_tree_n <= 8, "max_tree_n={max_tree_n} exceeds 8");
    let mut trees = Vec::new();
    for n in 1..=max_tree_n {
        trees.extend(all_trees(n)?.iter().map(GraphSpec::graph6));
    }
    check_tree_times_cycle_on(&trees, ns, budget).map(|r| r.param("max_tree_n", max_tree_n))
}

/// The same criterion over explicit graphs; a non-tree fails the
/// hypothesis check.
pub fn check_tree_times_cycle_on(trees: &[GraphSpec], ns: &[usize], budget: u64) -> Result<CheckReport> {
    if let Some(n) = ns.iter().find(|&&n| !(3..=6).contains(&n)) {
        bail!("n={n} outside [3, 6]");
    }
    timed(|| {
        let mut r = CheckReport::new(
            "tree-times-cycle",
            format!("{} trees times C_n for n in {ns:?}; {INSTANCES}", trees.len()),
        )
        .param("n", ns);
        for tree in trees {
            let g = tree.build()?;
            if !g.is_tree() {
                r.fail(format!("hypothesis: {tree} is not a tree"), tree_hypotheses(tree, &g));
                return Ok(r);
            }
            for &n in ns {
                let product = GraphSpec::product(tree.clone(), GraphSpec::Cycle { n });
                let expected = g.max_degree() <= n;
                let (solved, ev) = solve(&product, &product.build()?, budget)?;
                match solved {
                    Solved::Unknown => {
                        r.skip(format!("{product}: budget {budget} exhausted"));
                        r.evidence.push(ev);
                    }
                    s if (s == Solved::Found) == expected => r.evidence.push(ev),
                    _ => r.fail(
                        format!("{product}: Hamiltonian={} but maximum degree {} vs n={n}", !expected, g.max_degree()),
                        ev,
                    ),
                }
            }
        }
        Ok(r)
    })
}

/// Deleting the copies of the spine `a, b, c` from `T_Δ □ P_m` leaves
/// `2Δ - 2` components of `3m` vertices each.
pub fn check_component_counts(delta: usize, m: usize) -> Result<CheckReport> {
    check_component_counts_on(&GraphSpec::TDelta { delta }, delta, m)
}

/// The same count on a supplied tree, deleting its vertices 0, 1, 2.
pub fn check_component_counts_on(tree: &GraphSpec, delta: usize, m: usize) -> Result<CheckReport> {
    ensure!(delta >= 3, "delta={delta} must be at least 3");
    ensure!(m >= 2, "m={m} must be at least 2");
    timed(|| {
        let mut r = CheckReport::new("separator-components", format!("{tree} x P_{m} minus the spine copies; {INSTANCES}"))
            .param("tree", tree.to_string())
            .param("delta", delta)
            .param("m", m);
        let product = GraphSpec::product(tree.clone(), GraphSpec::Path { n: m });
        let g = product.build()?;
        let removed: Vec<usize> = (0..3).flat_map(|x| (0..m).map(move |j| x * m + j)).collect();
        let mut sizes: Vec<usize> = components_avoiding(&g, &VertexSet::from_vertices(g.n(), removed.iter().copied()))
            .iter()
            .map(VertexSet::len)
            .collect();
        sizes.sort_unstable();
        let ok = sizes.len() == 2 * delta - 2 && sizes.iter().all(|&s| s == 3 * m);
        let ev = Evidence::Components { graph: product, removed, sizes };
        if ok {
            r.evidence.push(ev);
        } else {
            r.fail(format!("expected {} components of {} vertices", 2 * delta - 2, 3 * m), ev);
        }
        Ok(r)
    })
}

/// Graphs the toughness check runs over: every connected graph on
/// `2..=max_n` vertices, the Petersen graph, `T_3` and the claw prism.
/// `K_1` is left out: it has no separating set, so it is 1-tough while
/// counting as unbalanced bipartite.
pub fn toughness_corpus(max_n: usize) -> Result<Vec<GraphSpec>> {
    let mut corpus = Vec::new();
    for n in 2..=max_n {
        corpus.extend(connected_graphs(n)?.iter().map(GraphSpec::graph6));
    }
    corpus.push(GraphSpec::Petersen);
    corpus.push(GraphSpec::TDelta { delta: 3 });
    corpus.push(GraphSpec::product(GraphSpec::Star { leaves: 3 }, GraphSpec::Path { n: 2 }));
    Ok(corpus)
}

/// Why a toughness report contradicts known facts, if it does: a
/// Hamiltonian graph must be 1-tough, an unbalanced connected bipartite
/// graph must not be, and the Petersen graph is 1-tough and not Hamiltonian.
pub fn toughness_problem(spec: &GraphSpec, g: &Graph, report: &ToughnessReport) -> Option<String> {
    if !report.implication_holds() {
        return Some(format!("{spec} is Hamiltonian but not 1-tough"));
    }
    let unbalanced = matches!(bipartition(g), Bipartition::Unbalanced(..));
    if unbalanced && g.is_connected() && report.one_tough.is_confirmed() {
        return Some(format!("{spec} is unbalanced bipartite but reported 1-tough"));
    }
    if *spec == GraphSpec::Petersen && (report.hamiltonian != Some(false) || !report.one_tough.is_confirmed()) {
        return Some("Petersen graph not reported 1-tough and non-Hamiltonian".into());
    }
    None
}

fn toughness_evidence(spec: &GraphSpec, report: &ToughnessReport) -> Evidence {
    Evidence::Toughness {
        graph: spec.clone(),
        hamiltonian: report.hamiltonian,
        witness: match &report.one_tough {
            OneToughness::Confirmed => None,
            OneToughness::NotOneTough(w) => Some(w.clone()),
        },
    }
}

/// Hamiltonian implies 1-tough over [`toughness_corpus`].
pub fn check_toughness_corpus(max_n: usize, budget: u64) -> Result<CheckReport> {
    ensure!(max_n <= 8, "max_n={max_n} exceeds 8");
    check_toughness_on(&toughness_corpus(max_n)?, budget).map(|r| r.param("max_n", max_n))
}

pub fn check_toughness_on(graphs: &[GraphSpec], budget: u64) -> Result<CheckReport> {
    timed(|| {
        let mut r = CheckReport::new("hamiltonian-implies-one-tough", format!("{} graphs; {INSTANCES}", graphs.len()));
        let mut converse = 0;
        for spec in graphs {
            let g = spec.build()?;
            let report = hamiltonian_implies_tough_check(&g, budget)?;
            let ev = toughness_evidence(spec, &report);
            if let Some(problem) = toughness_problem(spec, &g, &report) {
                r.fail(problem, ev);
                continue;
            }
            if report.hamiltonian.is_none() {
                r.skip(format!("{spec}: budget {budget} exhausted"));
            }
            converse += report.converse_fails() as u64;
            r.evidence.push(ev);
        }
        r.evidence.push(Evidence::Tally { name: "one_tough_not_hamiltonian".into(), value: converse });
        Ok(r)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            other => Err(format!("unknown profile {other:?}; expected quick or full")),
        }
    }
}

type Run = Box<dyn Fn() -> Result<CheckReport> + Send + Sync>;

/// A check waiting to run, with a label used if it errors.
pub struct Job {
    pub check_id: &'static str,
    pub label: String,
    run: Run,
}

impl Job {
    fn new(check_id: &'static str, label: String, run: impl Fn() -> Result<CheckReport> + Send + Sync + 'static) -> Self {
        Job { check_id, label, run: Box::new(run) }
    }

    /// Runs the check. An error becomes a failed report, since every job
    /// in a profile is built from valid parameters.
    pub fn run(&self) -> CheckReport {
        (self.run)().unwrap_or_else(|e| {
            let mut r = CheckReport::new(self.check_id, "check raised an error").param("job", &self.label);
            r.fail(format!("error: {e:#}"), Evidence::Tally { name: "errors".into(), value: 1 });
            r
        })
    }
}

fn path(n: usize) -> GraphSpec {
    GraphSpec::Path { n }
}

/// The checks of a profile, in report order.
pub fn profile_jobs(profile: Profile, budget: u64) -> Vec<Job> {
    let full = profile == Profile::Full;
    let mut jobs = Vec::new();
    let widths: &[usize] = if full { &[3, 5, 7, 9] } else { &[3, 5, 7] };
    for &n in widths {
        for k in (1..=n).step_by(2) {
            jobs.push(Job::new("suffix-ends", format!("n={n} k={k}"), move || check_suffix_ends(n, k)));
        }
    }
    for &n in widths {
        jobs.push(Job::new("paired-ends", format!("n={n}"), move || check_paired_ends(n)));
    }
    let (max_n, factors) = if full {
        (7, vec![path(2), path(3), GraphSpec::Star { leaves: 3 }])
    } else {
        (6, vec![path(2), path(3)])
    };
    jobs.push(Job::new("no-factor-pendant-product", format!("max_n={max_n}"), move || {
        check_no_factor_products(max_n, &factors, budget)
    }));
    let families: Vec<(usize, Vec<usize>)> = if full {
        vec![(3, (2..=9).collect()), (4, (2..=8).collect())]
    } else {
        vec![(3, (2..=6).collect())]
    };
    for (delta, ms) in families {
        for m in ms {
            jobs.push(Job::new("tree-family-not-hamiltonian", format!("delta={delta} m={m}"), move || {
                check_tree_family(delta, &[m], budget)
            }));
        }
    }
    let positive = [
        (GraphSpec::DoubleStar { left: 2, right: 2 }, 10),
        (path(4), 6),
        (GraphSpec::TDelta { delta: 3 }, 10),
    ];
    for (tree, n) in positive {
        jobs.push(Job::new("long-path-positive-side", format!("{tree} n={n}"), move || {
            check_positive_side(&tree, n, budget)
        }));
    }
    let (max_tree_n, ns) = if full { (8, vec![3, 4, 5, 6]) } else { (7, vec![3, 4, 5]) };
    jobs.push(Job::new("tree-times-cycle", format!("max_tree_n={max_tree_n}"), move || {
        check_tree_times_cycle(max_tree_n, &ns, budget)
    }));
    for delta in 3..=5 {
        for m in 2..=9 {
            jobs.push(Job::new("separator-components", format!("delta={delta} m={m}"), move || {
                check_component_counts(delta, m)
            }));
        }
    }
    let tough_n = if full { 8 } else { 7 };
    jobs.push(Job::new("hamiltonian-implies-one-tough", format!("max_n={tough_n}"), move || {
        check_toughness_corpus(tough_n, budget)
    }));
    jobs
}

/// Worker count from `HAMILTONICA_THREADS`, if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var("HAMILTONICA_THREADS").ok()?.parse().ok().filter(|&t| t > 0)
}

/// Runs jobs in parallel; reports come back in job order whatever the
/// thread count.
pub fn run_jobs(jobs: &[Job], threads: Option<usize>) -> Vec<CheckReport> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    match builder.build() {
        Ok(pool) => pool.install(|| jobs.par_iter().map(Job::run).collect()),
        Err(_) => jobs.iter().map(Job::run).collect(),
    }
}

pub fn run_all(profile: Profile, budget: u64) -> Vec<CheckReport> {
    run_jobs(&profile_jobs(profile, budget), threads_from_env())
}
