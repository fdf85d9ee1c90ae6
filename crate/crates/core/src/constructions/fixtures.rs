use std::fmt;

use serde::{Deserialize, Serialize};

use super::{product_vertex, TDeltaIndex};
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, Vertex};
use crate::label::{TDeltaRole, VertexLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FixtureName {
    M,
    N,
    Q,
    R,
    S,
    T,
    U,
    V,
    X,
    Z,
}

impl FixtureName {
    pub const ALL: [FixtureName; 10] = [
        FixtureName::M,
        FixtureName::N,
        FixtureName::Q,
        FixtureName::R,
        FixtureName::S,
        FixtureName::T,
        FixtureName::U,
        FixtureName::V,
        FixtureName::X,
        FixtureName::Z,
    ];

    pub fn has_branch_index(&self) -> bool {
        matches!(self, FixtureName::Q | FixtureName::R | FixtureName::U | FixtureName::V)
    }
}

/// A named subpath of `T_Δ □ P_m`, layer `i` and (for `Q, R, U, V`) branch `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathFixture {
    pub name: FixtureName,
    pub i: usize,
    pub j: Option<usize>,
    pub vertices: Vec<VertexLabel>,
}

impl fmt::Display for PathFixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.j {
            Some(j) => write!(f, "{:?}_{{{},{}}}", self.name, self.i, j)?,
            None => write!(f, "{:?}_{}", self.name, self.i)?,
        }
        let seq: Vec<String> = self.vertices.iter().map(|l| l.to_string()).collect();
        write!(f, " = {}", seq.join(","))
    }
}

fn coords(name: FixtureName, i: usize, j: usize) -> Vec<(TDeltaRole, usize)> {
    use TDeltaRole::{ABranch, CBranch, A, B, C};
    match name {
        FixtureName::M => vec![(A, i), (A, i + 1), (B, i + 1), (B, i + 2), (A, i + 2), (A, i + 3)],
        FixtureName::N => vec![(C, i), (C, i + 1), (C, i + 2), (C, i + 3)],
        FixtureName::Q => vec![(C, i), (C, i + 1), (CBranch(j), i + 1)],
        FixtureName::R => vec![(CBranch(j), i + 2), (C, i + 2), (C, i + 3)],
        FixtureName::S => vec![(C, i), (C, i + 1), (B, i + 1), (B, i + 2), (C, i + 2), (C, i + 3)],
        FixtureName::T => vec![(A, i), (A, i + 1), (A, i + 2), (A, i + 3)],
        FixtureName::U => vec![(A, i), (A, i + 1), (ABranch(j), i + 1)],
        FixtureName::V => vec![(ABranch(j), i + 2), (A, i + 2), (A, i + 3)],
        FixtureName::X => vec![(A, i), (A, i + 1), (B, i + 1), (C, i + 1), (C, i)],
        FixtureName::Z => vec![(A, i + 3), (A, i + 2), (B, i + 2), (C, i + 2), (C, i + 3)],
    }
}

/// All ten fixture families for every `i in [m-3]` and `j in [Δ-1]`.
pub fn fixture_paths(delta: usize, m: usize) -> Result<Vec<PathFixture>> {
    TDeltaIndex::new(delta)?;
    if m < 4 {
        return Err(invalid(format!("fixtures need m >= 4, got {m}")));
    }
    let mut out = Vec::new();
    for name in FixtureName::ALL {
        for i in 1..=m - 3 {
            let branches: Vec<Option<usize>> = if name.has_branch_index() {
                (1..delta).map(Some).collect()
            } else {
                vec![None]
            };
            for j in branches {
                let vertices = coords(name, i, j.unwrap_or(0))
                    .into_iter()
                    .map(|(r, p)| VertexLabel::pair(VertexLabel::Tdelta(r), VertexLabel::position(p)))
                    .collect();
                out.push(PathFixture { name, i, j, vertices });
            }
        }
    }
    Ok(out)
}

impl PathFixture {
    /// Vertex indices in `T_Δ □ P_m` as built by `cartesian_product`.
    pub fn resolve(&self, delta: usize, m: usize) -> Result<Vec<Vertex>> {
        let idx = TDeltaIndex::new(delta)?;
        self.vertices
            .iter()
            .map(|l| match l {
                VertexLabel::Pair(left, right) => {
                    let role = match left.as_ref() {
                        VertexLabel::Tdelta(r) => *r,
                        other => return Err(invalid(format!("not a T_delta role: {other}"))),
                    };
                    let pos: usize = match right.as_ref() {
                        VertexLabel::Plain(p) => p.parse().map_err(|_| invalid(format!("bad position {p}")))?,
                        other => return Err(invalid(format!("not a position: {other}"))),
                    };
                    let x = idx.vertex(role).ok_or_else(|| invalid(format!("role {role} out of range")))?;
                    if pos == 0 || pos > m {
                        return Err(invalid(format!("position {pos} outside [1, {m}]")));
                    }
                    Ok(product_vertex(x, pos - 1, m))
                }
                other => Err(invalid(format!("fixture vertex {other} is not a pair"))),
            })
            .collect()
    }

    /// Checks that the fixture is a path (distinct vertices, consecutive
    /// adjacency) in `g`, which must be `T_Δ □ P_m`.
    pub fn validate(&self, g: &Graph, delta: usize, m: usize) -> Result<Vec<Vertex>> {
        let seq = self.resolve(delta, m)?;
        for (k, &v) in seq.iter().enumerate() {
            g.check_vertex(v)?;
            if g.label(v) != Some(&self.vertices[k]) {
                return Err(Error::InvalidCertificate(format!(
                    "{self}: vertex {v} is labelled {}",
                    g.vertex_name(v)
                )));
            }
        }
        let mut sorted = seq.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != seq.len() {
            return Err(Error::InvalidCertificate(format!("{self}: repeated vertex")));
        }
        if let Some(w) = seq.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
            return Err(Error::InvalidCertificate(format!(
                "{self}: {} and {} are not adjacent",
                g.vertex_name(w[0]),
                g.vertex_name(w[1])
            )));
        }
        Ok(seq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_t_delta, cartesian_product, path_graph};

    fn product(delta: usize, m: usize) -> Graph {
        cartesian_product(&build_t_delta(delta).unwrap(), &path_graph(m).unwrap()).unwrap()
    }

    #[test]
    fn m1_and_x1_sequences() {
        let fx = fixture_paths(3, 5).unwrap();
        let m1 = fx.iter().find(|f| f.name == FixtureName::M && f.i == 1).unwrap();
        let names: Vec<String> = m1.vertices.iter().map(|l| l.to_string()).collect();
        assert_eq!(names, ["(a,1)", "(a,2)", "(b,2)", "(b,3)", "(a,3)", "(a,4)"]);
        let x1 = fx.iter().find(|f| f.name == FixtureName::X && f.i == 1).unwrap();
        let names: Vec<String> = x1.vertices.iter().map(|l| l.to_string()).collect();
        assert_eq!(names, ["(a,1)", "(a,2)", "(b,2)", "(c,2)", "(c,1)"]);
    }

    #[test]
    fn fixture_counts() {
        // 6 unindexed families + 4 indexed families with delta-1 branches, m-3 layers
        for (d, m) in [(3, 4), (4, 7)] {
            let expected = (m - 3) * (6 + 4 * (d - 1));
            assert_eq!(fixture_paths(d, m).unwrap().len(), expected);
        }
    }

    #[test]
    fn fixtures_are_paths() {
        for d in [3, 4] {
            for m in 4..=9 {
                let g = product(d, m);
                for f in fixture_paths(d, m).unwrap() {
                    f.validate(&g, d, m).unwrap();
                }
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(fixture_paths(2, 5).is_err());
        assert!(fixture_paths(3, 3).is_err());
    }

    #[test]
    fn tampered_fixture_fails() {
        let g = product(3, 5);
        let mut f = fixture_paths(3, 5).unwrap().remove(0);
        f.vertices.swap(1, 2);
        assert!(f.validate(&g, 3, 5).is_err());
    }
}
