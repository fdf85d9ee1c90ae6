use std::collections::BTreeSet;

use crate::error::{invalid, Result};
use crate::graph::{Graph, Vertex};

pub const TREE_LIMIT: usize = 10;

/// Decodes a Prüfer sequence over `0..n` (length `n - 2`) into tree edges.
pub fn prufer_decode(n: usize, seq: &[Vertex]) -> Result<Vec<(Vertex, Vertex)>> {
    if n < 2 || seq.len() != n - 2 {
        return Err(invalid(format!("prufer sequence of length {} for n={n}", seq.len())));
    }
    if let Some(&v) = seq.iter().find(|&&v| v >= n) {
        return Err(invalid(format!("prufer entry {v} out of range")));
    }
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut leaves: BTreeSet<Vertex> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = leaves.pop_first().expect("a leaf always exists");
        edges.push((leaf.min(v), leaf.max(v)));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.insert(v);
        }
    }
    let u = leaves.pop_first().expect("two leaves remain");
    let w = leaves.pop_first().expect("two leaves remain");
    edges.push((u, w));
    Ok(edges)
}

fn centers(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut layer: Vec<Vertex> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            degree[leaf] = 0;
            for &w in g.neighbors(leaf) {
                if degree[w] > 1 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn ahu(g: &Graph, v: Vertex, parent: Option<Vertex>) -> String {
    let mut children: Vec<String> = g
        .neighbors(v)
        .iter()
        .filter(|&&w| Some(w) != parent)
        .map(|&w| ahu(g, w, Some(v)))
        .collect();
    children.sort_unstable();
    format!("({})", children.concat())
}

/// AHU encoding rooted at the centre; the lexicographic minimum over both
/// centres for bicentral trees.
pub fn tree_canonical_form(g: &Graph) -> Result<String> {
    if !g.is_tree() {
        return Err(invalid("canonical form needs a tree"));
    }
    Ok(centers(g)
        .into_iter()
        .map(|c| ahu(g, c, None))
        .min()
        .expect("a tree has a centre"))
}

/// One representative per isomorphism class of trees on `n` vertices.
///
/// Classes on `n` vertices are grown from those on `n - 1` by attaching a
/// leaf everywhere and deduplicating by canonical form.
pub fn all_trees(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > TREE_LIMIT {
        return Err(invalid(format!("tree enumeration supports 1..={TREE_LIMIT} vertices, got {n}")));
    }
    let mut level = vec![Graph::empty(1)];
    for size in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for attach in 0..t.n() {
                let edges = t.edges().chain(std::iter::once((attach, size - 1)));
                let grown = Graph::from_edges(size, edges)?;
                if seen.insert(tree_canonical_form(&grown)?) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    #[test]
    fn prufer_small() {
        // sequence [3,3] on 4 vertices is the star centred at 3
        let edges = prufer_decode(4, &[3, 3]).unwrap();
        let g = Graph::from_edges(4, edges).unwrap();
        assert_eq!(g.degree(3), 3);
        assert!(prufer_decode(4, &[4, 0]).is_err());
    }

    /// Independent oracle: every labelled tree from its Prüfer sequence,
    /// deduplicated by canonical form.
    fn prufer_classes(n: usize) -> BTreeSet<String> {
        if n <= 2 {
            let g = Graph::from_edges(n, (1..n).map(|v| (0, v))).unwrap();
            return [tree_canonical_form(&g).unwrap()].into();
        }
        (0..n - 2)
            .map(|_| 0..n)
            .multi_cartesian_product()
            .map(|seq| {
                let g = Graph::from_edges(n, prufer_decode(n, &seq).unwrap()).unwrap();
                tree_canonical_form(&g).unwrap()
            })
            .collect()
    }

    #[test]
    fn counts_match_prufer_oracle() {
        for n in 1..=8 {
            let ours: BTreeSet<String> = all_trees(n)
                .unwrap()
                .iter()
                .map(|t| tree_canonical_form(t).unwrap())
                .collect();
            assert_eq!(ours, prufer_classes(n), "n={n}");
        }
    }

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (1..=10).map(|n| all_trees(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106]);
        assert!(all_trees(0).is_err());
        assert!(all_trees(11).is_err());
    }

    #[test]
    fn canonical_form_ignores_labelling() {
        let a = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let b = Graph::from_edges(5, [(3, 0), (0, 4), (4, 1), (1, 2)]).unwrap();
        assert_eq!(tree_canonical_form(&a).unwrap(), tree_canonical_form(&b).unwrap());
        let star = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_ne!(tree_canonical_form(&a).unwrap(), tree_canonical_form(&star).unwrap());
    }
}
