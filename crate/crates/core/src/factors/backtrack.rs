//! Backtracking enumeration of constrained path covers.
//!
//! Paths are grown from the lowest-indexed uncovered vertex `v`: first
//! forward from `v` to one end, then backward from `v` to the other. When
//! `v` is interior, the backward side must start at a neighbour larger than
//! the forward one, so every cover is produced exactly once.

use std::ops::ControlFlow;

use super::{EndpointConstraint, PathSystem};
use crate::error::Result;
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Enables the remainder-based cuts (stranded degree-1 vertices and
    /// component end parity). Counts never depend on this flag.
    pub prune: bool,
    /// Node budget; `None` is unlimited.
    pub budget: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { prune: true, budget: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOutcome {
    pub count: u64,
    pub nodes: u64,
    /// True when the whole space was searched (no early stop, no budget hit).
    pub exhausted: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Open,
    End,
    Interior,
}

enum Halt {
    Visitor,
    Budget,
}

pub struct CoverSearch<'a, F> {
    g: &'a Graph,
    c: &'a EndpointConstraint,
    opts: SearchOptions,
    covered: Vec<bool>,
    status: Vec<Status>,
    done: Vec<Vec<Vertex>>,
    forward: Vec<Vertex>,
    backward: Vec<Vertex>,
    count: u64,
    nodes: u64,
    visit: F,
    // scratch for remainder checks
    comp: Vec<usize>,
    stack: Vec<Vertex>,
}

/// Enumerates all path covers of `g` admitted by `c`, calling `visit` for
/// each in a deterministic order until it breaks.
pub fn enumerate_covers<F>(g: &Graph, c: &EndpointConstraint, opts: SearchOptions, visit: F) -> Result<SearchOutcome>
where
    F: FnMut(&PathSystem) -> ControlFlow<()>,
{
    c.validate(g)?;
    let mut search = CoverSearch {
        g,
        c,
        opts,
        covered: vec![false; g.n()],
        status: vec![Status::Open; g.n()],
        done: Vec::new(),
        forward: Vec::new(),
        backward: Vec::new(),
        count: 0,
        nodes: 0,
        visit,
        comp: vec![usize::MAX; g.n()],
        stack: Vec::new(),
    };
    let halted = search.next_path().is_break();
    Ok(SearchOutcome {
        count: search.count,
        nodes: search.nodes,
        exhausted: !halted,
    })
}

impl<F> CoverSearch<'_, F>
where
    F: FnMut(&PathSystem) -> ControlFlow<()>,
{
    fn tick(&mut self) -> ControlFlow<Halt> {
        self.nodes += 1;
        match self.opts.budget {
            Some(b) if self.nodes > b => ControlFlow::Break(Halt::Budget),
            _ => ControlFlow::Continue(()),
        }
    }

    fn next_path(&mut self) -> ControlFlow<Halt> {
        self.tick()?;
        let Some(v) = (0..self.g.n()).find(|&v| !self.covered[v]) else {
            return self.emit();
        };
        self.covered[v] = true;
        self.forward.push(v);
        let flow = self.grow_forward();
        self.forward.pop();
        self.covered[v] = false;
        flow
    }

    fn emit(&mut self) -> ControlFlow<Halt> {
        let status = &self.status;
        let pairing_ok = self
            .c
            .pairing
            .iter()
            .all(|&(u, w)| (status[u] == Status::End) == (status[w] == Status::End));
        if !pairing_ok {
            return ControlFlow::Continue(());
        }
        self.count += 1;
        let ps = PathSystem::new(self.g, self.done.clone()).expect("search emits valid path systems");
        debug_assert!(self.c.admits(ps.endpoints()));
        match (self.visit)(&ps) {
            ControlFlow::Continue(()) => ControlFlow::Continue(()),
            ControlFlow::Break(()) => ControlFlow::Break(Halt::Visitor),
        }
    }

    /// Vertices that can still receive a path edge besides uncovered ones.
    fn is_open_end(&self, x: Vertex) -> bool {
        let tail = *self.forward.last().unwrap();
        if self.backward.is_empty() {
            // forward phase or backward not yet started: both tail and the start are live
            x == tail || x == self.forward[0]
        } else {
            x == *self.backward.last().unwrap()
        }
    }

    /// After `t` stops being an open end, each uncovered neighbour needs a
    /// remaining way in.
    fn neighbours_still_reachable(&self, t: Vertex) -> bool {
        self.g.neighbors(t).iter().all(|&x| {
            self.covered[x]
                || self.g.neighbors(x).iter().any(|&y| !self.covered[y] || self.is_open_end(y))
        })
    }

    fn grow_forward(&mut self) -> ControlFlow<Halt> {
        self.tick()?;
        let tail = *self.forward.last().unwrap();
        let start = self.forward[0];
        if self.forward.len() >= 2 && self.c.eligible(tail) {
            self.grow_backward()?;
        }
        if tail != start && self.c.is_required(tail) {
            return ControlFlow::Continue(());
        }
        for k in 0..self.g.degree(tail) {
            let w = self.g.neighbors(tail)[k];
            if self.covered[w] {
                continue;
            }
            self.covered[w] = true;
            self.forward.push(w);
            let ok = !self.opts.prune || tail == start || self.neighbours_still_reachable(tail);
            let flow = if ok { self.grow_forward() } else { ControlFlow::Continue(()) };
            self.forward.pop();
            self.covered[w] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn grow_backward(&mut self) -> ControlFlow<Halt> {
        self.tick()?;
        let start = self.forward[0];
        let front = self.backward.last().copied().unwrap_or(start);
        if self.c.eligible(front) {
            self.close_path()?;
        }
        if self.c.is_required(front) {
            return ControlFlow::Continue(());
        }
        let min_next = if self.backward.is_empty() { self.forward[1] } else { 0 };
        for k in 0..self.g.degree(front) {
            let w = self.g.neighbors(front)[k];
            if self.covered[w] || w < min_next {
                continue;
            }
            self.covered[w] = true;
            self.backward.push(w);
            let ok = !self.opts.prune || self.neighbours_still_reachable(front);
            let flow = if ok { self.grow_backward() } else { ControlFlow::Continue(()) };
            self.backward.pop();
            self.covered[w] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn close_path(&mut self) -> ControlFlow<Halt> {
        let mut path: Vec<Vertex> = self.backward.iter().rev().copied().collect();
        path.extend_from_slice(&self.forward);
        let last = path.len() - 1;
        for (i, &v) in path.iter().enumerate() {
            self.status[v] = if i == 0 || i == last { Status::End } else { Status::Interior };
        }
        let flow = if self.pairing_consistent(&path) && (!self.opts.prune || self.remainder_feasible()) {
            let saved_forward = std::mem::take(&mut self.forward);
            let saved_backward = std::mem::take(&mut self.backward);
            self.done.push(path.clone());
            let flow = self.next_path();
            self.done.pop();
            self.forward = saved_forward;
            self.backward = saved_backward;
            flow
        } else {
            ControlFlow::Continue(())
        };
        for &v in &path {
            self.status[v] = Status::Open;
        }
        flow
    }

    fn pairing_consistent(&self, path: &[Vertex]) -> bool {
        let status = &self.status;
        self.c.pairing.iter().all(|&(u, w)| {
            if !path.contains(&u) && !path.contains(&w) {
                return true;
            }
            match (status[u], status[w]) {
                (Status::Open, Status::Open) => true,
                (Status::Open, s) | (s, Status::Open) => {
                    let other = if status[u] == Status::Open { u } else { w };
                    match s {
                        Status::End => self.c.eligible(other),
                        _ => !self.c.is_required(other),
                    }
                }
                (a, b) => (a == Status::End) == (b == Status::End),
            }
        })
    }

    /// Cuts on `G - V(completed paths)`: every remaining vertex needs a
    /// remaining neighbour, a remaining degree-1 vertex must be able to be
    /// an end, and each remaining component needs at least two possible
    /// ends, with an even count when all of its ends are forced.
    fn remainder_feasible(&mut self) -> bool {
        let g = self.g;
        let n = g.n();
        for v in 0..n {
            if self.covered[v] {
                continue;
            }
            let rdeg = g.neighbors(v).iter().filter(|&&w| !self.covered[w]).count();
            if rdeg == 0 || (rdeg == 1 && !self.c.eligible(v)) {
                return false;
            }
        }
        self.comp.iter_mut().for_each(|c| *c = usize::MAX);
        let mut label = 0;
        for root in 0..n {
            if self.covered[root] || self.comp[root] != usize::MAX {
                continue;
            }
            let (mut size, mut eligible, mut forced) = (0usize, 0usize, 0usize);
            self.comp[root] = label;
            self.stack.push(root);
            while let Some(v) = self.stack.pop() {
                size += 1;
                let mut rdeg = 0;
                for &w in g.neighbors(v) {
                    if self.covered[w] {
                        continue;
                    }
                    rdeg += 1;
                    if self.comp[w] == usize::MAX {
                        self.comp[w] = label;
                        self.stack.push(w);
                    }
                }
                if self.c.eligible(v) {
                    eligible += 1;
                    if rdeg == 1 || self.c.is_required(v) {
                        forced += 1;
                    }
                }
            }
            if size < 2 || eligible < 2 || (forced == eligible && eligible % 2 == 1) {
                return false;
            }
            label += 1;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cartesian_product, complete_graph, cycle_graph, path_graph, star};
    use crate::factors::lemmas::{first_lemma_constraint, lemma_grid};
    use crate::graph::VertexSet;

    fn count(g: &Graph, c: &EndpointConstraint, prune: bool) -> u64 {
        enumerate_covers(g, c, SearchOptions { prune, budget: None }, |_| ControlFlow::Continue(()))
            .unwrap()
            .count
    }

    /// Brute-force oracle: every subset of edges whose graph has all
    /// degrees in {1, 2} and no cycle is a path cover.
    fn subset_oracle(g: &Graph, c: &EndpointConstraint) -> u64 {
        let edges: Vec<_> = g.edges().collect();
        let mut total = 0;
        for mask in 0u64..(1 << edges.len()) {
            let mut deg = vec![0; g.n()];
            let mut parent: Vec<usize> = (0..g.n()).collect();
            fn find(p: &mut Vec<usize>, x: usize) -> usize {
                if p[x] != x {
                    let r = find(p, p[x]);
                    p[x] = r;
                }
                p[x]
            }
            let mut acyclic = true;
            for (k, &(u, v)) in edges.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    deg[u] += 1;
                    deg[v] += 1;
                    let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                    if a == b {
                        acyclic = false;
                    }
                    parent[a] = b;
                }
            }
            if !acyclic || deg.iter().any(|&d| d == 0 || d > 2) {
                continue;
            }
            let ends = VertexSet::from_vertices(g.n(), (0..g.n()).filter(|&v| deg[v] == 1));
            if c.admits(&ends) {
                total += 1;
            }
        }
        total
    }

    #[test]
    fn tiny_counts() {
        let p3 = path_graph(3).unwrap();
        assert_eq!(count(&p3, &EndpointConstraint::unconstrained(3), true), 1);
        let p4 = path_graph(4).unwrap();
        // whole path, or two P_2
        assert_eq!(count(&p4, &EndpointConstraint::unconstrained(4), true), 2);
        let k13 = star(3).unwrap();
        assert_eq!(count(&k13, &EndpointConstraint::unconstrained(4), true), 0);
    }

    #[test]
    fn agrees_with_edge_subset_oracle() {
        let graphs = [
            cycle_graph(5).unwrap(),
            complete_graph(5),
            cartesian_product(&path_graph(2).unwrap(), &path_graph(4).unwrap()).unwrap(),
            lemma_grid(3).unwrap(),
            cartesian_product(&star(3).unwrap(), &path_graph(2).unwrap()).unwrap(),
        ];
        for g in &graphs {
            let n = g.n();
            let constraints = [
                EndpointConstraint::unconstrained(n),
                EndpointConstraint::within(n, (0..n).filter(|v| v % 2 == 0)),
                EndpointConstraint::unconstrained(n).require(0).forbid(n - 1),
                EndpointConstraint::unconstrained(n).pair(0, n - 1),
            ];
            for c in &constraints {
                let oracle = subset_oracle(g, c);
                assert_eq!(count(g, c, true), oracle, "{g:?} {c:?}");
                assert_eq!(count(g, c, false), oracle, "{g:?} {c:?}");
            }
        }
    }

    #[test]
    fn streamed_covers_are_valid_and_distinct() {
        let g = lemma_grid(4).unwrap();
        let c = EndpointConstraint::unconstrained(g.n());
        let mut seen = std::collections::BTreeSet::new();
        let outcome = enumerate_covers(&g, &c, SearchOptions::default(), |ps| {
            assert!(ps.is_factor_of(&g));
            let mut key: Vec<Vec<Vertex>> = ps
                .paths()
                .iter()
                .map(|p| if p[0] < p[p.len() - 1] { p.clone() } else { p.iter().rev().copied().collect() })
                .collect();
            key.sort();
            assert!(seen.insert(key), "duplicate cover");
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(outcome.count as usize, seen.len());
        assert!(outcome.exhausted);
    }

    #[test]
    fn budget_stops_search() {
        let g = lemma_grid(6).unwrap();
        let c = EndpointConstraint::unconstrained(g.n());
        let out = enumerate_covers(&g, &c, SearchOptions { prune: true, budget: Some(50) }, |_| ControlFlow::Continue(())).unwrap();
        assert!(!out.exhausted);
    }

    #[test]
    fn first_lemma_small_instance() {
        let g = lemma_grid(5).unwrap();
        let c = first_lemma_constraint(5, 3).unwrap();
        assert_eq!(count(&g, &c, true), 0);
        assert_eq!(count(&g, &c, false), 0);
    }
}
