//! Path factors and constrained path covers.
//!
//! Two independent engines count path covers: a general backtracking
//! search ([`enumerate_covers`]) and a column-profile dynamic program for
//! grid strips `P_h □ P_n` ([`count_strip_covers`]). The isolated-vertex
//! criterion in [`akiyama_witness`] is the independent oracle for
//! [`find_path_factor`].

mod backtrack;
mod constraint;
mod lemmas;
mod strip;

use serde::{Deserialize, Serialize};

pub use backtrack::{enumerate_covers, CoverSearch, SearchOptions, SearchOutcome};
pub use constraint::{ConstraintDocument, EndpointConstraint};
pub use lemmas::{
    first_lemma_constraint, grid_vertex, lemma_grid, second_lemma_constraint, second_lemma_patterns,
    BoundaryReading, EndpointPattern,
};
pub use strip::{count_strip_covers, STRIP_HEIGHT_LIMIT, STRIP_WIDTH_LIMIT};

use crate::error::{invalid, Error, Result};
use crate::graph::{components_avoiding, Graph, Vertex, VertexSet};

/// Vertex limit for exhaustive path-cover counting by backtracking.
pub const COVER_VERTEX_LIMIT: usize = 30;
/// Vertex limit for the exhaustive subset search in [`akiyama_witness`].
pub const WITNESS_VERTEX_LIMIT: usize = 20;
pub const DEFAULT_FACTOR_BUDGET: u64 = 100_000_000;

/// A set of vertex-disjoint paths, each with at least two vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSystem {
    paths: Vec<Vec<Vertex>>,
    covered: VertexSet,
    endpoints: VertexSet,
}

impl PathSystem {
    pub fn new(g: &Graph, paths: Vec<Vec<Vertex>>) -> Result<Self> {
        let mut covered = VertexSet::new(g.n());
        let mut endpoints = VertexSet::new(g.n());
        for path in &paths {
            if path.len() < 2 {
                return Err(Error::InvalidCertificate(format!("path {path:?} has fewer than two vertices")));
            }
            for &v in path {
                g.check_vertex(v)?;
                if !covered.insert(v) {
                    return Err(Error::InvalidCertificate(format!("vertex {v} lies on two paths")));
                }
            }
            if let Some(w) = path.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
                return Err(Error::InvalidCertificate(format!("{}-{} is not an edge", w[0], w[1])));
            }
            endpoints.insert(path[0]);
            endpoints.insert(*path.last().unwrap());
        }
        Ok(PathSystem { paths, covered, endpoints })
    }

    pub fn paths(&self) -> &[Vec<Vertex>] {
        &self.paths
    }

    pub fn covered(&self) -> &VertexSet {
        &self.covered
    }

    /// The set of path end vertices.
    pub fn endpoints(&self) -> &VertexSet {
        &self.endpoints
    }

    pub fn is_factor_of(&self, g: &Graph) -> bool {
        self.covered.len() == g.n()
    }
}

/// A set `S` with `i(G - S) > 2|S|`, certifying that no path factor exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoPathFactorWitness {
    pub s: VertexSet,
    pub isolated_after: usize,
}

impl NoPathFactorWitness {
    /// Recomputes `i(G - S)` and checks the inequality.
    pub fn verify(&self, g: &Graph) -> bool {
        g.check_set(&self.s).is_ok()
            && isolated_after_removal(g, &self.s) == self.isolated_after
            && self.isolated_after > 2 * self.s.len()
    }
}

fn isolated_after_removal(g: &Graph, s: &VertexSet) -> usize {
    (0..g.n())
        .filter(|&v| !s.contains(v) && g.neighbors(v).iter().all(|&w| s.contains(w)))
        .count()
}

/// Lexicographic `k`-subsets of `0..n`.
pub(crate) fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return true;
        }
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Exhaustive search for `S` with `i(G - S) > 2|S|`, smallest `|S|` first
/// and lexicographically least within a size.
pub fn akiyama_witness(g: &Graph) -> Result<Option<NoPathFactorWitness>> {
    let n = g.n();
    if n > WITNESS_VERTEX_LIMIT {
        return Err(Error::TooLarge {
            what: "path-factor witness search",
            size: n,
            limit: WITNESS_VERTEX_LIMIT,
        });
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let mut found = None;
    // i(G - S) <= n - |S|, so only |S| < n / 3 can violate the bound
    for k in 0..=n / 3 {
        let hit = for_each_combination(n, k, |subset| {
            let s = subset.iter().fold(0u32, |m, &v| m | 1 << v);
            let isolated = (0..n)
                .filter(|&v| s >> v & 1 == 0 && adj[v] & !s == 0)
                .count();
            if isolated > 2 * k {
                found = Some(NoPathFactorWitness {
                    s: VertexSet::from_vertices(n, subset.iter().copied()),
                    isolated_after: isolated,
                });
                true
            } else {
                false
            }
        });
        if hit {
            break;
        }
    }
    Ok(found)
}

/// Witness-only search for graphs above the exhaustive bound. Tries every
/// single vertex and the set of all leaf neighbours; `None` proves nothing.
pub fn akiyama_witness_heuristic(g: &Graph) -> Option<NoPathFactorWitness> {
    let n = g.n();
    let mut candidates: Vec<VertexSet> = vec![VertexSet::new(n)];
    candidates.extend((0..n).map(|v| VertexSet::from_vertices(n, [v])));
    let supports = (0..n).filter(|&v| g.neighbors(v).iter().any(|&w| g.degree(w) == 1));
    candidates.push(VertexSet::from_vertices(n, supports));
    candidates.into_iter().find_map(|s| {
        let isolated = isolated_after_removal(g, &s);
        (isolated > 2 * s.len()).then_some(NoPathFactorWitness { s, isolated_after: isolated })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorOutcome {
    Found(PathSystem),
    /// The search space was exhausted without a factor.
    Absent,
    /// The node budget ran out first.
    Unknown { nodes: u64 },
}

/// First path factor in the backtracking engine's order.
pub fn find_path_factor(g: &Graph, budget: u64) -> FactorOutcome {
    let c = EndpointConstraint::unconstrained(g.n());
    let mut first = None;
    let outcome = enumerate_covers(
        g,
        &c,
        SearchOptions { prune: true, budget: Some(budget) },
        |ps| {
            first = Some(ps.clone());
            std::ops::ControlFlow::Break(())
        },
    )
    .expect("unconstrained search on a valid graph");
    match (first, outcome.exhausted) {
        (Some(ps), _) => FactorOutcome::Found(ps),
        (None, true) => FactorOutcome::Absent,
        (None, false) => FactorOutcome::Unknown { nodes: outcome.nodes },
    }
}

/// Number of path covers of `g` satisfying `c`, by exhaustive backtracking.
pub fn enumerate_path_covers(g: &Graph, c: &EndpointConstraint) -> Result<u64> {
    if g.n() > COVER_VERTEX_LIMIT {
        return Err(Error::TooLarge {
            what: "path-cover enumeration",
            size: g.n(),
            limit: COVER_VERTEX_LIMIT,
        });
    }
    let outcome = enumerate_covers(g, c, SearchOptions::default(), |_| std::ops::ControlFlow::Continue(()))?;
    Ok(outcome.count)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObservationViolation {
    /// A degree-1 vertex of the remainder that is not a path end.
    StrandedVertex(Vertex),
    /// A component of the remainder with an odd or zero number of path ends.
    OddComponent { component: Vec<Vertex>, endpoints: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObservationReport {
    pub removed_paths: Vec<usize>,
    pub degree_one_ok: bool,
    pub parity_ok: bool,
    pub violations: Vec<ObservationViolation>,
}

impl ObservationReport {
    pub fn passed(&self) -> bool {
        self.degree_one_ok && self.parity_ok
    }
}

/// Evaluates both remainder observations for the path factor `ps` after
/// deleting the vertices of the paths indexed by `removed`: every degree-1
/// vertex of the remainder is a path end, and every component of the
/// remainder holds a positive even number of path ends.
pub fn observation_checks(g: &Graph, ps: &PathSystem, removed: &[usize]) -> Result<ObservationReport> {
    let ps = PathSystem::new(g, ps.paths().to_vec())?;
    if !ps.is_factor_of(g) {
        return Err(invalid("path system is not a factor of the graph"));
    }
    let mut gone = VertexSet::new(g.n());
    for &k in removed {
        let path = ps.paths().get(k).ok_or_else(|| invalid(format!("no path with index {k}")))?;
        for &v in path {
            gone.insert(v);
        }
    }
    let mut violations = Vec::new();
    let mut degree_one_ok = true;
    for v in (0..g.n()).filter(|&v| !gone.contains(v)) {
        let rdeg = g.neighbors(v).iter().filter(|&&w| !gone.contains(w)).count();
        if rdeg == 1 && !ps.endpoints().contains(v) {
            degree_one_ok = false;
            violations.push(ObservationViolation::StrandedVertex(v));
        }
    }
    let mut parity_ok = true;
    for comp in components_avoiding(g, &gone) {
        let ends = comp.iter().filter(|&v| ps.endpoints().contains(v)).count();
        if ends == 0 || ends % 2 == 1 {
            parity_ok = false;
            violations.push(ObservationViolation::OddComponent { component: comp.to_vec(), endpoints: ends });
        }
    }
    Ok(ObservationReport {
        removed_paths: removed.to_vec(),
        degree_one_ok,
        parity_ok,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_t_delta, path_graph, star, t_delta_path_factor};

    #[test]
    fn combinations_in_lex_order() {
        let mut seen = Vec::new();
        for_each_combination(4, 2, |c| {
            seen.push(c.to_vec());
            false
        });
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        let mut empty = 0;
        for_each_combination(3, 0, |_| {
            empty += 1;
            false
        });
        assert_eq!(empty, 1);
        let mut full = 0;
        for_each_combination(3, 3, |_| {
            full += 1;
            false
        });
        assert_eq!(full, 1);
    }

    #[test]
    fn path_system_validation() {
        let g = path_graph(4).unwrap();
        assert!(PathSystem::new(&g, vec![vec![0, 1], vec![2, 3]]).is_ok());
        assert!(PathSystem::new(&g, vec![vec![0]]).is_err());
        assert!(PathSystem::new(&g, vec![vec![0, 2]]).is_err());
        assert!(PathSystem::new(&g, vec![vec![0, 1], vec![1, 2]]).is_err());
        let ps = PathSystem::new(&g, vec![vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(ps.endpoints().to_vec(), vec![0, 3]);
    }

    #[test]
    fn p2_factor() {
        let g = path_graph(2).unwrap();
        match find_path_factor(&g, DEFAULT_FACTOR_BUDGET) {
            FactorOutcome::Found(ps) => assert_eq!(ps.paths(), &[vec![0, 1]]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn star_has_no_factor() {
        let g = star(3).unwrap();
        assert_eq!(find_path_factor(&g, DEFAULT_FACTOR_BUDGET), FactorOutcome::Absent);
        let w = akiyama_witness(&g).unwrap().unwrap();
        assert_eq!((w.s.to_vec(), w.isolated_after), (vec![0], 3));
        assert!(w.verify(&g));
        let w5 = akiyama_witness(&star(5).unwrap()).unwrap().unwrap();
        assert_eq!((w5.s.to_vec(), w5.isolated_after), (vec![0], 5));
    }

    #[test]
    fn path_six_has_no_witness() {
        assert_eq!(akiyama_witness(&path_graph(6).unwrap()).unwrap(), None);
    }

    #[test]
    fn witness_size_limit() {
        let g = path_graph(21).unwrap();
        assert!(matches!(akiyama_witness(&g), Err(Error::TooLarge { .. })));
        assert!(akiyama_witness_heuristic(&star(30).unwrap()).is_some());
        assert!(akiyama_witness_heuristic(&path_graph(30).unwrap()).is_none());
    }

    #[test]
    fn t_delta_factor_found() {
        for d in 3..6 {
            let t = build_t_delta(d).unwrap();
            let fig = PathSystem::new(&t, t_delta_path_factor(d).unwrap()).unwrap();
            assert!(fig.is_factor_of(&t));
            assert!(matches!(find_path_factor(&t, DEFAULT_FACTOR_BUDGET), FactorOutcome::Found(_)));
        }
    }

    #[test]
    fn observations_on_t_delta() {
        let t = build_t_delta(3).unwrap();
        let ps = PathSystem::new(&t, t_delta_path_factor(3).unwrap()).unwrap();
        let report = observation_checks(&t, &ps, &[0]).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(observation_checks(&t, &ps, &[]).unwrap().passed());
        let t4 = build_t_delta(4).unwrap();
        let ps4 = PathSystem::new(&t4, t_delta_path_factor(4).unwrap()).unwrap();
        assert!(observation_checks(&t4, &ps4, &[1]).unwrap().passed());
        for k in 0..ps4.paths().len() {
            assert!(observation_checks(&t4, &ps4, &[k]).unwrap().passed());
        }
    }

    #[test]
    fn observations_reject_non_factor() {
        let t = build_t_delta(3).unwrap();
        let partial = PathSystem::new(&t, vec![vec![0, 1, 2]]).unwrap();
        assert!(observation_checks(&t, &partial, &[]).is_err());
        let ps = PathSystem::new(&t, t_delta_path_factor(3).unwrap()).unwrap();
        assert!(observation_checks(&t, &ps, &[99]).is_err());
    }
}
