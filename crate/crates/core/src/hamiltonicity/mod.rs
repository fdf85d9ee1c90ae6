//! Hamiltonian cycles: an exact solver with certificates, an independent
//! certificate checker, and cut statistics of a given cycle.

mod search;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use search::{SearchStats, SolverOptions};

use crate::error::{invalid, Error, Result};
use crate::graph::{bipartition, components_avoiding, Bipartition, Graph, Vertex, VertexSet};
use crate::label::VertexLabel;
use search::{Engine, Flow};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HamOutcome {
    Found(Vec<Vertex>),
    NotHamiltonian { nodes_explored: u64 },
    Unknown { budget: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamVerdict {
    pub outcome: HamOutcome,
    pub stats: SearchStats,
}

impl HamVerdict {
    pub fn is_found(&self) -> bool {
        matches!(self.outcome, HamOutcome::Found(_))
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self.outcome, HamOutcome::NotHamiltonian { .. })
    }

    pub fn cycle(&self) -> Option<&[Vertex]> {
        match &self.outcome {
            HamOutcome::Found(c) => Some(c),
            _ => None,
        }
    }

    pub fn certificate(&self, budget: u64) -> Certificate {
        let (verdict, cycle) = match &self.outcome {
            HamOutcome::Found(c) => ("found", Some(c.clone())),
            HamOutcome::NotHamiltonian { .. } => ("not_hamiltonian", None),
            HamOutcome::Unknown { .. } => ("unknown", None),
        };
        Certificate {
            verdict: verdict.to_string(),
            cycle,
            nodes_explored: self.stats.nodes,
            budget,
        }
    }
}

/// Serialized solver result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle: Option<Vec<Vertex>>,
    pub nodes_explored: u64,
    pub budget: u64,
}

pub fn find_hamiltonian_cycle(g: &Graph, budget: u64) -> Result<HamVerdict> {
    find_hamiltonian_cycle_with(g, budget, SolverOptions::ALL)
}

pub fn find_hamiltonian_cycle_with(g: &Graph, budget: u64, opts: SolverOptions) -> Result<HamVerdict> {
    if g.n() < 3 {
        return Err(invalid(format!("a Hamiltonian cycle needs at least 3 vertices, got {}", g.n())));
    }
    let settled = |stats: SearchStats| HamVerdict {
        outcome: HamOutcome::NotHamiltonian { nodes_explored: stats.nodes },
        stats,
    };
    if opts.bipartite_precheck && matches!(bipartition(g), Bipartition::Unbalanced(..)) {
        return Ok(settled(SearchStats::default()));
    }
    let mut spent = SearchStats::default();
    if opts.warm_start {
        if let Some(order) = warm_start_order(g) {
            let (cycle, stats) = warm_start(g, &order, opts, (budget / 10).min(WARM_START_BUDGET));
            if let Some(cycle) = cycle {
                return Ok(HamVerdict {
                    outcome: HamOutcome::Found(cycle),
                    stats,
                });
            }
            spent = stats;
        }
    }
    let mut engine = Engine::new(g, opts, budget.saturating_sub(spent.nodes));
    let flow = if engine.initialise() { engine.search(0) } else { Flow::Exhausted };
    engine.stats.nodes += spent.nodes;
    let outcome = match flow {
        Flow::Found => {
            let cycle = engine.cycle();
            if !verify_cycle(g, &cycle) {
                return Err(Error::InvalidCertificate(format!("solver produced a non-cycle {cycle:?}")));
            }
            HamOutcome::Found(cycle)
        }
        Flow::Exhausted => return Ok(settled(engine.stats)),
        Flow::OutOfBudget => HamOutcome::Unknown { budget },
    };
    Ok(HamVerdict {
        outcome,
        stats: engine.stats,
    })
}

const WARM_START_BUDGET: u64 = 1_000_000;

/// For a product `G □ H` with pair labels, the order that runs along the
/// `H` coordinate first. `None` for graphs without product structure.
fn warm_start_order(g: &Graph) -> Option<Vec<Vertex>> {
    let mut right: Vec<&VertexLabel> = Vec::new();
    for v in 0..g.n() {
        match g.label(v)? {
            VertexLabel::Pair(_, r) => {
                if !right.contains(&r.as_ref()) {
                    right.push(r);
                }
            }
            _ => return None,
        }
    }
    let h = right.len();
    if h < 2 || g.n() % h != 0 || g.n() == h {
        return None;
    }
    let width = g.n() / h;
    Some((0..g.n()).map(|new| (new % width) * h + new / width).collect())
}

/// Searches the copy of `g` whose vertex `k` is `order[k]`.
fn warm_start(g: &Graph, order: &[Vertex], opts: SolverOptions, budget: u64) -> (Option<Vec<Vertex>>, SearchStats) {
    let mut position = vec![0; g.n()];
    for (k, &v) in order.iter().enumerate() {
        position[v] = k;
    }
    let Ok(copy) = Graph::from_edges(g.n(), g.edges().map(|(u, v)| (position[u], position[v]))) else {
        return (None, SearchStats::default());
    };
    let mut engine = Engine::new(&copy, opts, budget);
    let found = engine.initialise() && matches!(engine.search(0), Flow::Found);
    let cycle = found.then(|| normalise_cycle(engine.cycle().iter().map(|&k| order[k]).collect()));
    (cycle.filter(|c| verify_cycle(g, c)), engine.stats)
}

/// Rotates a cycle to start at its smallest vertex and orients it towards
/// the smaller of that vertex's two cycle neighbours.
pub fn normalise_cycle(mut cycle: Vec<Vertex>) -> Vec<Vertex> {
    if let Some(start) = cycle.iter().enumerate().min_by_key(|&(_, &v)| v).map(|(i, _)| i) {
        cycle.rotate_left(start);
        if cycle.len() > 2 && cycle[cycle.len() - 1] < cycle[1] {
            cycle[1..].reverse();
        }
    }
    cycle
}

/// Whether `cycle` lists every vertex of `g` exactly once with consecutive
/// vertices (and last and first) adjacent.
pub fn verify_cycle(g: &Graph, cycle: &[Vertex]) -> bool {
    let n = g.n();
    if n < 3 || cycle.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

/// How a Hamiltonian cycle meets a vertex cut.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutProfile {
    pub cut_set: VertexSet,
    /// Cycle edges with exactly one end in the cut.
    pub crossing_edges: usize,
    /// Components of `g - cut`.
    pub components_outside: usize,
    /// Components of `g - cut` containing an end of a crossing edge.
    pub components_touched: usize,
}

pub fn cut_profile(g: &Graph, cycle: &[Vertex], cut: &VertexSet) -> Result<CutProfile> {
    if !verify_cycle(g, cycle) {
        return Err(Error::InvalidCertificate("not a Hamiltonian cycle of the graph".into()));
    }
    g.check_set(cut)?;
    let n = cycle.len();
    let components = components_avoiding(g, cut);
    let mut component_of = vec![usize::MAX; g.n()];
    for (k, part) in components.iter().enumerate() {
        for v in part.iter() {
            component_of[v] = k;
        }
    }
    let mut touched = vec![false; components.len()];
    let mut crossing_edges = 0;
    for i in 0..n {
        let (u, v) = (cycle[i], cycle[(i + 1) % n]);
        if cut.contains(u) != cut.contains(v) {
            crossing_edges += 1;
            let outside = if cut.contains(u) { v } else { u };
            touched[component_of[outside]] = true;
        }
    }
    Ok(CutProfile {
        cut_set: cut.clone(),
        crossing_edges,
        components_outside: components.len(),
        components_touched: touched.iter().filter(|&&t| t).count(),
    })
}

/// Edges decided by degree-two forcing alone, before any branching.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcedEdges {
    pub required: Vec<(Vertex, Vertex)>,
    pub excluded: Vec<(Vertex, Vertex)>,
    /// Forcing reached a contradiction, so `g` has no Hamiltonian cycle.
    pub infeasible: bool,
}

/// Closes the degree-two rule under saturation and short-cycle exclusion.
///
/// Every edge at a vertex of degree two is required from the start, so the
/// result lists them even when the closure then runs into a contradiction.
/// This is computed independently of the search engine.
pub fn forced_edges(g: &Graph) -> ForcedEdges {
    let n = g.n();
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut required = BTreeSet::new();
    let mut excluded = BTreeSet::new();
    for v in 0..n {
        if g.degree(v) == 2 {
            for &w in g.neighbors(v) {
                required.insert((v.min(w), v.max(w)));
            }
        }
    }
    let mut infeasible = n < 3;
    loop {
        let before = (required.len(), excluded.len());
        let mut req_deg = vec![0usize; n];
        let mut usable = (0..n).map(|v| g.degree(v)).collect::<Vec<_>>();
        for &(u, v) in &required {
            req_deg[u] += 1;
            req_deg[v] += 1;
        }
        for &(u, v) in &excluded {
            usable[u] -= 1;
            usable[v] -= 1;
        }
        if (0..n).any(|v| req_deg[v] > 2 || usable[v] < 2) {
            infeasible = true;
            break;
        }
        // walk the required paths; a closed walk shorter than n is fatal
        let mut next: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        for &(u, v) in &required {
            next[u].push(v);
            next[v].push(u);
        }
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] || req_deg[start] == 2 {
                continue;
            }
            let (mut prev, mut cur, mut len) = (usize::MAX, start, 1);
            seen[start] = true;
            while let Some(&w) = next[cur].iter().find(|&&w| w != prev) {
                prev = cur;
                cur = w;
                seen[cur] = true;
                len += 1;
            }
            if cur != start && len < n {
                let chord = (start.min(cur), start.max(cur));
                if g.has_edge(start, cur) && !required.contains(&chord) {
                    excluded.insert(chord);
                }
            }
        }
        if let Some(start) = (0..n).find(|&v| !seen[v]) {
            let (mut prev, mut cur, mut len) = (next[start][1], start, 0);
            loop {
                let w = if next[cur][0] == prev { next[cur][1] } else { next[cur][0] };
                prev = cur;
                cur = w;
                len += 1;
                if cur == start {
                    break;
                }
            }
            if len < n {
                infeasible = true;
                break;
            }
        }
        for v in 0..n {
            for &w in g.neighbors(v) {
                let e = (v.min(w), v.max(w));
                if req_deg[v] == 2 && !required.contains(&e) {
                    excluded.insert(e);
                } else if usable[v] == 2 && !excluded.contains(&e) {
                    required.insert(e);
                }
            }
        }
        if !required.is_disjoint(&excluded) {
            infeasible = true;
            break;
        }
        if (required.len(), excluded.len()) == before {
            break;
        }
    }
    let keep = |set: &BTreeSet<(Vertex, Vertex)>| edges.iter().copied().filter(|e| set.contains(e)).collect();
    ForcedEdges {
        required: keep(&required),
        excluded: keep(&excluded),
        infeasible,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_t_delta, cartesian_product, complete_graph, cycle_graph, path_graph, star, TDeltaIndex};
    use crate::label::TDeltaRole;

    fn solve(g: &Graph) -> HamVerdict {
        find_hamiltonian_cycle(g, DEFAULT_NODE_BUDGET).unwrap()
    }

    #[test]
    fn small_examples() {
        assert!(solve(&cycle_graph(5).unwrap()).is_found());
        let claw_prism = cartesian_product(&star(3).unwrap(), &path_graph(2).unwrap()).unwrap();
        assert!(solve(&claw_prism).is_exhausted());
        let ladder = cartesian_product(&path_graph(2).unwrap(), &path_graph(5).unwrap()).unwrap();
        let v = solve(&ladder);
        assert!(verify_cycle(&ladder, v.cycle().unwrap()));
        assert!(find_hamiltonian_cycle(&path_graph(2).unwrap(), 10).is_err());
    }

    #[test]
    fn t3_times_p4_not_hamiltonian() {
        let g = cartesian_product(&build_t_delta(3).unwrap(), &path_graph(4).unwrap()).unwrap();
        let v = solve(&g);
        assert!(v.is_exhausted(), "{v:?}");
        // without the colour precheck the search itself must exhaust
        let opts = SolverOptions {
            bipartite_precheck: false,
            ..SolverOptions::ALL
        };
        let v = find_hamiltonian_cycle_with(&g, DEFAULT_NODE_BUDGET, opts).unwrap();
        assert!(v.is_exhausted());
    }

    #[test]
    fn budget_yields_unknown() {
        let g = complete_graph(7);
        let opts = SolverOptions::NONE;
        let v = find_hamiltonian_cycle_with(&g, 3, opts).unwrap();
        assert_eq!(v.outcome, HamOutcome::Unknown { budget: 3 });
    }

    /// Fixes vertex 0 and tries every ordering of the rest.
    fn permutation_oracle(g: &Graph) -> bool {
        use itertools::Itertools;
        let n = g.n();
        (1..n).permutations(n - 1).any(|rest| {
            let mut cycle = vec![0];
            cycle.extend(rest);
            verify_cycle(g, &cycle)
        })
    }

    #[test]
    fn matches_permutation_oracle_up_to_seven() {
        use crate::constructions::connected_graphs;
        for n in 3..=7 {
            for g in connected_graphs(n).unwrap() {
                let expected = permutation_oracle(&g);
                for opts in [SolverOptions::ALL, SolverOptions::NONE] {
                    let v = find_hamiltonian_cycle_with(&g, DEFAULT_NODE_BUDGET, opts).unwrap();
                    assert_eq!(v.is_found(), expected, "{:?} {opts:?}", g.edges().collect::<Vec<_>>());
                    assert!(v.is_found() || v.is_exhausted());
                }
            }
        }
    }

    #[test]
    fn pruning_agrees_on_small_strips() {
        for n in 1..=4 {
            let g = cartesian_product(&path_graph(3).unwrap(), &path_graph(n).unwrap()).unwrap();
            let a = find_hamiltonian_cycle_with(&g, DEFAULT_NODE_BUDGET, SolverOptions::ALL).unwrap();
            let b = find_hamiltonian_cycle_with(&g, DEFAULT_NODE_BUDGET, SolverOptions::NONE).unwrap();
            assert_eq!(a.is_found(), b.is_found(), "n={n}");
            assert_eq!(a.is_found(), n % 2 == 0);
        }
    }

    #[test]
    fn verify_cycle_examples() {
        let c4 = cycle_graph(4).unwrap();
        assert!(verify_cycle(&c4, &[0, 1, 2, 3]));
        assert!(!verify_cycle(&c4, &[0, 1, 3, 2]));
        assert!(!verify_cycle(&c4, &[0, 1, 2]));
        assert!(!verify_cycle(&c4, &[0, 1, 2, 2]));
        assert!(!verify_cycle(&c4, &[0, 1, 2, 7]));
    }

    #[test]
    fn cut_profile_parity() {
        let g = cartesian_product(&path_graph(3).unwrap(), &path_graph(4).unwrap()).unwrap();
        let cycle = solve(&g).cycle().unwrap().to_vec();
        let all = g.vertex_set();
        assert_eq!(cut_profile(&g, &cycle, &all).unwrap().crossing_edges, 0);
        for mask in 0u32..(1 << g.n()) {
            let cut = VertexSet::from_vertices(g.n(), (0..g.n()).filter(|&v| mask >> v & 1 == 1));
            let p = cut_profile(&g, &cycle, &cut).unwrap();
            assert_eq!(p.crossing_edges % 2, 0);
            assert!(2 * p.components_touched <= p.crossing_edges);
        }
        assert!(cut_profile(&g, &cycle[1..], &all).is_err());
    }

    #[test]
    fn forced_edge_examples() {
        let c6 = forced_edges(&cycle_graph(6).unwrap());
        assert_eq!(c6.required.len(), 6);
        assert!(!c6.infeasible);
        let k4 = forced_edges(&complete_graph(4));
        assert!(k4.required.is_empty() && k4.excluded.is_empty());

        let idx = TDeltaIndex::new(3).unwrap();
        let g = cartesian_product(&build_t_delta(3).unwrap(), &path_graph(2).unwrap()).unwrap();
        let f = forced_edges(&g);
        for i in 1..=2 {
            for role in [TDeltaRole::U(i), TDeltaRole::V(i), TDeltaRole::Y(i), TDeltaRole::Z(i)] {
                let leaf = idx.vertex(role).unwrap();
                for col in 0..2 {
                    let x = leaf * 2 + col;
                    for &w in g.neighbors(x) {
                        let e = (x.min(w), x.max(w));
                        assert!(f.required.contains(&e), "{e:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn forcing_detects_short_cycles() {
        // two triangles sharing a vertex: the shared vertex saturates
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert!(forced_edges(&g).infeasible);
        assert!(solve(&g).is_exhausted());
    }
}
