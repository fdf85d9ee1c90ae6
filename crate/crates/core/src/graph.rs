//! Simple undirected graphs on dense vertex indices.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::label::VertexLabel;

pub type Vertex = usize;

/// Membership bitset over `0..universe`.
#[derive(Clone, Default)]
pub struct VertexSet {
    universe: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::new(universe);
        for v in 0..universe {
            s.insert(v);
        }
        s
    }

    /// Builds a set, growing the universe to fit the largest element if needed.
    pub fn from_vertices(universe: usize, vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let vertices: Vec<Vertex> = vertices.into_iter().collect();
        let universe = vertices
            .iter()
            .map(|&v| v + 1)
            .max()
            .unwrap_or(0)
            .max(universe);
        let mut s = Self::new(universe);
        for v in vertices {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Panics if `v` is outside the universe.
    pub fn insert(&mut self, v: Vertex) -> bool {
        assert!(v < self.universe, "vertex {v} outside universe {}", self.universe);
        let (w, b) = (v / 64, v % 64);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !was
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        if v >= self.universe {
            return false;
        }
        let (w, b) = (v / 64, v % 64);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        was
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        v < self.universe && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn min(&self) -> Option<Vertex> {
        self.iter().next()
    }

    pub fn max(&self) -> Option<Vertex> {
        self.iter().last()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.universe.max(other.universe));
        for v in self.iter().chain(other.iter()) {
            out.insert(v);
        }
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.universe);
        for v in self.iter().filter(|&v| !other.contains(v)) {
            out.insert(v);
        }
        out
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        self.iter().eq(other.iter())
    }
}

impl Eq for VertexSet {}

impl std::hash::Hash for VertexSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for v in self.iter() {
            v.hash(state);
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<Vertex>::deserialize(d)?;
        Ok(VertexSet::from_vertices(0, v))
    }
}

/// Simple undirected graph on vertices `0..n`.
///
/// Immutable once built; every operation that changes structure returns a
/// new graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edge_count: usize,
    labels: BTreeMap<Vertex, VertexLabel>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
            labels: BTreeMap::new(),
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            edge_count += 1;
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph {
            adjacency,
            edge_count,
            labels: BTreeMap::new(),
        })
    }

    pub fn with_labels(mut self, labels: BTreeMap<Vertex, VertexLabel>) -> Result<Self> {
        if let Some((&v, _)) = labels.iter().find(|(&v, _)| v >= self.n()) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels.clear();
        self
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn labels(&self) -> &BTreeMap<Vertex, VertexLabel> {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> Option<&VertexLabel> {
        self.labels.get(&v)
    }

    /// Display name of a vertex: its label if present, else its index.
    pub fn vertex_name(&self, v: Vertex) -> String {
        self.label(v).map_or_else(|| v.to_string(), |l| l.to_string())
    }

    pub fn find_label(&self, label: &VertexLabel) -> Option<Vertex> {
        self.labels.iter().find(|(_, l)| *l == label).map(|(&v, _)| v)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub(crate) fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.max() {
            Some(v) if v >= self.n() => Err(Error::VertexOutOfRange { vertex: v, n: self.n() }),
            _ => Ok(()),
        }
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || connected_components(self).len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.edge_count + 1 == self.n() && self.is_connected()
    }

    pub fn is_complete(&self) -> bool {
        (0..self.n()).all(|v| self.degree(v) + 1 == self.n())
    }
}

/// Result of [`delete_vertices`]: the induced subgraph plus the index maps
/// needed to lift certificates back to the original graph.
#[derive(Debug, Clone)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub old_to_new: Vec<Option<Vertex>>,
    pub new_to_old: Vec<Vertex>,
}

impl InducedSubgraph {
    pub fn lift(&self, v: Vertex) -> Vertex {
        self.new_to_old[v]
    }
}

/// `G - S`: the subgraph induced on `V(G) \ S`, keeping labels.
pub fn delete_vertices(g: &Graph, s: &VertexSet) -> Result<InducedSubgraph> {
    g.check_set(s)?;
    let new_to_old: Vec<Vertex> = (0..g.n()).filter(|&v| !s.contains(v)).collect();
    let mut old_to_new = vec![None; g.n()];
    for (i, &v) in new_to_old.iter().enumerate() {
        old_to_new[v] = Some(i);
    }
    let edges = g
        .edges()
        .filter_map(|(u, v)| Some((old_to_new[u]?, old_to_new[v]?)))
        .collect::<Vec<_>>();
    let labels = g
        .labels()
        .iter()
        .filter_map(|(&v, l)| Some((old_to_new[v]?, l.clone())))
        .collect();
    let graph = Graph::from_edges(new_to_old.len(), edges)?.with_labels(labels)?;
    Ok(InducedSubgraph {
        graph,
        old_to_new,
        new_to_old,
    })
}

/// Components, ordered by smallest vertex.
pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..g.n() {
        if seen[start] {
            continue;
        }
        let mut comp = VertexSet::new(g.n());
        seen[start] = true;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            comp.insert(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// Components of `G - S` without materialising the subgraph. Sets are over
/// the original vertex indices.
pub fn components_avoiding(g: &Graph, removed: &VertexSet) -> Vec<VertexSet> {
    let mut seen: Vec<bool> = (0..g.n()).map(|v| removed.contains(v)).collect();
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for start in 0..g.n() {
        if seen[start] {
            continue;
        }
        let mut comp = VertexSet::new(g.n());
        seen[start] = true;
        stack.push(start);
        while let Some(v) = stack.pop() {
            comp.insert(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// `i(G)`, the number of degree-0 vertices.
pub fn isolated_count(g: &Graph) -> usize {
    (0..g.n()).filter(|&v| g.degree(v) == 0).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bipartition {
    /// Part sizes, smaller first.
    Balanced(usize, usize),
    Unbalanced(usize, usize),
    NotBipartite,
}

impl Bipartition {
    pub fn is_bipartite(&self) -> bool {
        !matches!(self, Bipartition::NotBipartite)
    }
}

/// A proper two-colouring (each component's lowest vertex gets `false`),
/// or `None` when the graph has an odd cycle.
pub fn two_colouring(g: &Graph) -> Option<Vec<bool>> {
    let mut colour: Vec<Option<bool>> = vec![None; g.n()];
    for start in 0..g.n() {
        if colour[start].is_some() {
            continue;
        }
        colour[start] = Some(false);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let c = colour[v].unwrap();
            for &w in g.neighbors(v) {
                match colour[w] {
                    None => {
                        colour[w] = Some(!c);
                        stack.push(w);
                    }
                    Some(cw) if cw == c => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(colour.into_iter().map(|c| c.unwrap()).collect())
}

/// Two-colours each component and reports part sizes, smaller first.
///
/// For disconnected graphs each component's colouring may be flipped; the
/// orientation minimising the size difference is reported.
pub fn bipartition(g: &Graph) -> Bipartition {
    let Some(colour) = two_colouring(g) else {
        return Bipartition::NotBipartite;
    };
    let parts: Vec<(usize, usize)> = connected_components(g)
        .iter()
        .map(|part| {
            let ones = part.iter().filter(|&v| colour[v]).count();
            (part.len() - ones, ones)
        })
        .collect();
    // subset-sum over per-component orientations
    let n = g.n();
    let mut reachable = vec![false; n + 1];
    reachable[0] = true;
    for &(x, y) in &parts {
        let mut next = vec![false; n + 1];
        for (s, _) in reachable.iter().enumerate().filter(|(_, &r)| r) {
            next[s + x] = true;
            next[s + y] = true;
        }
        reachable = next;
    }
    let small = (0..=n / 2).rev().find(|&s| reachable[s]).unwrap_or(0);
    let large = n - small;
    if small == large {
        Bipartition::Balanced(small, large)
    } else {
        Bipartition::Unbalanced(small, large)
    }
}

/// Degrees in non-increasing order.
pub fn degree_sequence(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

/// Census `degree -> number of vertices` of that degree.
pub fn degree_census(g: &Graph) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for v in 0..g.n() {
        *m.entry(g.degree(v)).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star3() -> Graph {
        Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, [(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn delete_star_center() {
        let g = star3();
        let sub = delete_vertices(&g, &VertexSet::from_vertices(4, [0])).unwrap();
        assert_eq!(sub.graph.n(), 3);
        assert_eq!(sub.graph.edge_count(), 0);
        assert_eq!(isolated_count(&sub.graph), 3);
        assert_eq!(sub.new_to_old, vec![1, 2, 3]);
        assert_eq!(sub.old_to_new[0], None);
    }

    #[test]
    fn delete_nothing_is_identity() {
        let g = cycle(5);
        let sub = delete_vertices(&g, &VertexSet::new(5)).unwrap();
        assert_eq!(sub.graph, g);
    }

    #[test]
    fn delete_out_of_range() {
        let g = cycle(4);
        let s = VertexSet::from_vertices(0, [7]);
        assert!(matches!(
            delete_vertices(&g, &s),
            Err(Error::VertexOutOfRange { vertex: 7, .. })
        ));
    }

    #[test]
    fn components_basic() {
        assert_eq!(connected_components(&cycle(6)).len(), 1);
        let comps = connected_components(&Graph::empty(4));
        assert_eq!(comps.len(), 4);
        assert_eq!(comps[2].to_vec(), vec![2]);
    }

    #[test]
    fn isolated_path() {
        let p4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(isolated_count(&p4), 0);
    }

    #[test]
    fn bipartition_examples() {
        assert_eq!(bipartition(&cycle(4)), Bipartition::Balanced(2, 2));
        assert_eq!(bipartition(&star3()), Bipartition::Unbalanced(1, 3));
        assert_eq!(bipartition(&cycle(5)), Bipartition::NotBipartite);
        // two stars K_{1,3}: orientations can balance them
        let g = Graph::from_edges(8, [(0, 1), (0, 2), (0, 3), (4, 5), (4, 6), (4, 7)]).unwrap();
        assert_eq!(bipartition(&g), Bipartition::Balanced(4, 4));
    }

    #[test]
    fn degree_sequence_path() {
        let p5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(degree_sequence(&p5), vec![2, 2, 2, 1, 1]);
    }

    #[test]
    fn vertex_set_ops() {
        let mut s = VertexSet::new(130);
        assert!(s.insert(129));
        assert!(!s.insert(129));
        s.insert(3);
        assert_eq!(s.to_vec(), vec![3, 129]);
        assert_eq!(s.len(), 2);
        assert!(s.remove(3));
        assert_eq!(s.min(), Some(129));
    }
}
