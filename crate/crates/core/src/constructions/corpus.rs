use std::collections::HashMap;

use rand::Rng;

use super::random_tree_edges;
use crate::error::{invalid, Result};
use crate::graph::Graph;

/// Largest order for which [`connected_graphs`] enumerates every class.
pub const CONNECTED_GRAPH_LIMIT: usize = 9;

#[derive(Clone)]
struct Small {
    adj: Vec<u16>,
    colors: Vec<u64>,
}

fn mix(mut x: u64) -> u64 {
    x ^= x >> 30;
    x = x.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x ^= x >> 27;
    x = x.wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

impl Small {
    fn new(adj: Vec<u16>) -> Self {
        let n = adj.len();
        let mut colors: Vec<u64> = adj.iter().map(|m| m.count_ones() as u64).collect();
        let mut classes = 0;
        loop {
            let next: Vec<u64> = (0..n)
                .map(|v| {
                    let mut nb: Vec<u64> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| colors[w]).collect();
                    nb.sort_unstable();
                    nb.iter().fold(mix(colors[v] ^ 0x9e37_79b9), |h, &c| mix(h ^ c))
                })
                .collect();
            let mut distinct = next.clone();
            distinct.sort_unstable();
            distinct.dedup();
            colors = next;
            if distinct.len() == classes {
                break;
            }
            classes = distinct.len();
        }
        Small { adj, colors }
    }

    fn invariant(&self) -> u64 {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.iter().fold(mix(self.adj.len() as u64), |h, &x| mix(h ^ x))
    }

    fn edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    fn isomorphic(&self, other: &Small) -> bool {
        let n = self.adj.len();
        let mut order: Vec<usize> = (0..n).collect();
        let class_size = |c: u64| self.colors.iter().filter(|&&x| x == c).count();
        order.sort_by_key(|&v| (class_size(self.colors[v]), v));
        let mut map = vec![usize::MAX; n];
        let mut used = 0u16;
        self.extend(other, &order, 0, &mut map, &mut used)
    }

    fn extend(&self, other: &Small, order: &[usize], depth: usize, map: &mut [usize], used: &mut u16) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for w in 0..order.len() {
            if *used >> w & 1 == 1 || other.colors[w] != self.colors[v] {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&u| self.edge(u, v) == other.edge(map[u], w));
            if consistent {
                map[v] = w;
                *used |= 1 << w;
                if self.extend(other, order, depth + 1, map, used) {
                    return true;
                }
                *used &= !(1 << w);
            }
        }
        false
    }

    fn to_graph(&self) -> Graph {
        let n = self.adj.len();
        let edges = (0..n).flat_map(|u| (u + 1..n).filter(move |&v| self.adj[u] >> v & 1 == 1).map(move |v| (u, v)));
        Graph::from_edges(n, edges.collect::<Vec<_>>()).expect("simple by construction")
    }
}

/// One representative of every isomorphism class of connected graphs on
/// `n` vertices, `1 <= n <= 9`.
///
/// Every connected graph has a non-cut vertex, so each class on `n`
/// vertices arises from a class on `n - 1` plus a vertex joined to a
/// nonempty neighbour set. Candidates are bucketed by a colour-refinement
/// invariant and deduplicated by explicit isomorphism search.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > CONNECTED_GRAPH_LIMIT {
        return Err(invalid(format!(
            "connected graph enumeration supports 1..={CONNECTED_GRAPH_LIMIT} vertices, got {n}"
        )));
    }
    let mut level = vec![Small::new(vec![0])];
    for size in 2..=n {
        let mut buckets: HashMap<u64, Vec<usize>> = HashMap::new();
        let mut next: Vec<Small> = Vec::new();
        for g in &level {
            for mask in 1u16..(1 << (size - 1)) {
                let mut adj = g.adj.clone();
                for (v, row) in adj.iter_mut().enumerate() {
                    if mask >> v & 1 == 1 {
                        *row |= 1 << (size - 1);
                    }
                }
                adj.push(mask);
                let cand = Small::new(adj);
                let bucket = buckets.entry(cand.invariant()).or_default();
                if bucket.iter().any(|&k| next[k].isomorphic(&cand)) {
                    continue;
                }
                bucket.push(next.len());
                next.push(cand);
            }
        }
        level = next;
    }
    Ok(level.iter().map(Small::to_graph).collect())
}

/// A random connected graph: a uniform random spanning tree plus each
/// remaining pair independently with probability `p`.
pub fn random_connected_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = random_tree_edges(n, rng);
    let mut present = vec![vec![false; n]; n];
    for &(u, v) in &edges {
        present[u][v] = true;
        present[v][u] = true;
    }
    for u in 0..n {
        for v in u + 1..n {
            if !present[u][v] && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("simple by construction")
}
