//! Graph generators: paths, cycles, stars, `T_Δ`, Cartesian products,
//! exhaustive tree and connected-graph corpora, and the named subpath
//! fixtures of `T_Δ □ P_m`.

mod corpus;
mod fixtures;
mod tdelta;
mod trees;

use std::collections::BTreeMap;

use rand::Rng;

pub use corpus::{connected_graphs, random_connected_graph, CONNECTED_GRAPH_LIMIT};
pub use fixtures::{fixture_paths, FixtureName, PathFixture};
pub use tdelta::{build_t_delta, t_delta_path_factor, TDeltaIndex};
pub use trees::{all_trees, prufer_decode, tree_canonical_form, TREE_LIMIT};

use crate::error::{invalid, Result};
use crate::graph::{Graph, Vertex};
use crate::label::VertexLabel;

fn position_labels(n: usize) -> BTreeMap<Vertex, VertexLabel> {
    (0..n).map(|v| (v, VertexLabel::position(v + 1))).collect()
}

/// `P_n`; vertex `v` carries the position label `v + 1`.
pub fn path_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("path needs at least one vertex"));
    }
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))?.with_labels(position_labels(n))
}

/// `C_n` for `n >= 3`.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid(format!("cycle needs at least 3 vertices, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))?.with_labels(position_labels(n))
}

/// `K_{1,k}` with the centre at vertex 0.
pub fn star(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(invalid("star needs at least one leaf"));
    }
    Graph::from_edges(k + 1, (1..=k).map(|v| (0, v)))
}

/// Two adjacent centres `0` and `1`, carrying `left` and `right` leaves.
pub fn double_star(left: usize, right: usize) -> Result<Graph> {
    let mut edges = vec![(0, 1)];
    let mut next = 2;
    for (centre, count) in [(0, left), (1, right)] {
        for _ in 0..count {
            edges.push((centre, next));
            next += 1;
        }
    }
    Graph::from_edges(next, edges)
}

pub fn complete_graph(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
        .expect("complete graph edges are simple")
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner).collect::<Vec<_>>())
        .expect("petersen edges are simple")
}

/// Index of the product vertex `(x, y)` in `G □ H` where `H` has `h_n` vertices.
#[inline]
pub fn product_vertex(x: Vertex, y: Vertex, h_n: usize) -> Vertex {
    x * h_n + y
}

/// `G □ H` with vertex `(x, y)` at index `x * |V(H)| + y`.
///
/// Every product vertex is labelled with the pair of factor labels; an
/// unlabelled factor vertex contributes its index as a plain label.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph> {
    if g.n() == 0 || h.n() == 0 {
        return Err(invalid("product factors must be nonempty"));
    }
    let hn = h.n();
    let mut edges = Vec::with_capacity(g.edge_count() * hn + g.n() * h.edge_count());
    for x in 0..g.n() {
        for (y1, y2) in h.edges() {
            edges.push((product_vertex(x, y1, hn), product_vertex(x, y2, hn)));
        }
    }
    for (x1, x2) in g.edges() {
        for y in 0..hn {
            edges.push((product_vertex(x1, y, hn), product_vertex(x2, y, hn)));
        }
    }
    let name = |graph: &Graph, v: Vertex| {
        graph
            .label(v)
            .cloned()
            .unwrap_or_else(|| VertexLabel::plain(v))
    };
    let labels = (0..g.n())
        .flat_map(|x| (0..hn).map(move |y| (x, y)))
        .map(|(x, y)| (product_vertex(x, y, hn), VertexLabel::pair(name(g, x), name(h, y))))
        .collect();
    Graph::from_edges(g.n() * hn, edges)?.with_labels(labels)
}

/// `G(n, p)` conditioned on containing a uniformly random spanning tree.
pub(crate) fn random_tree_edges<R: Rng>(n: usize, rng: &mut R) -> Vec<(Vertex, Vertex)> {
    if n <= 1 {
        return Vec::new();
    }
    if n == 2 {
        return vec![(0, 1)];
    }
    let seq: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(n, &seq).expect("valid prufer sequence")
}
