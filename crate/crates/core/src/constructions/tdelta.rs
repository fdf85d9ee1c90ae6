use crate::error::{invalid, Result};
use crate::graph::{Graph, Vertex};
use crate::label::{TDeltaRole, VertexLabel};

/// Fixed vertex numbering of `T_Δ`: `a = 0, b = 1, c = 2`, then
/// `a_1..a_{Δ-1}`, `c_1..c_{Δ-1}`, then per branch index the leaves
/// `u_i, v_i, y_i, z_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TDeltaIndex {
    delta: usize,
}

impl TDeltaIndex {
    pub fn new(delta: usize) -> Result<Self> {
        if delta < 3 {
            return Err(invalid(format!("T_delta needs delta >= 3, got {delta}")));
        }
        Ok(TDeltaIndex { delta })
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn vertex_count(&self) -> usize {
        6 * self.delta - 3
    }

    fn leaf_base(&self, i: usize) -> Vertex {
        3 + 2 * (self.delta - 1) + 4 * (i - 1)
    }

    /// Vertex index of a role; `None` when the branch index is out of range.
    pub fn vertex(&self, role: TDeltaRole) -> Option<Vertex> {
        if !role.is_valid_for(self.delta) {
            return None;
        }
        let d = self.delta;
        Some(match role {
            TDeltaRole::A => 0,
            TDeltaRole::B => 1,
            TDeltaRole::C => 2,
            TDeltaRole::ABranch(i) => 2 + i,
            TDeltaRole::CBranch(i) => 2 + (d - 1) + i,
            TDeltaRole::U(i) => self.leaf_base(i),
            TDeltaRole::V(i) => self.leaf_base(i) + 1,
            TDeltaRole::Y(i) => self.leaf_base(i) + 2,
            TDeltaRole::Z(i) => self.leaf_base(i) + 3,
        })
    }

    pub fn role(&self, v: Vertex) -> Option<TDeltaRole> {
        let d = self.delta;
        Some(match v {
            0 => TDeltaRole::A,
            1 => TDeltaRole::B,
            2 => TDeltaRole::C,
            v if v < 2 + d => TDeltaRole::ABranch(v - 2),
            v if v < 3 + 2 * (d - 1) => TDeltaRole::CBranch(v - 2 - (d - 1)),
            v if v < self.vertex_count() => {
                let off = v - (3 + 2 * (d - 1));
                let i = off / 4 + 1;
                match off % 4 {
                    0 => TDeltaRole::U(i),
                    1 => TDeltaRole::V(i),
                    2 => TDeltaRole::Y(i),
                    _ => TDeltaRole::Z(i),
                }
            }
            _ => return None,
        })
    }

    pub fn roles(&self) -> impl Iterator<Item = TDeltaRole> + '_ {
        (0..self.vertex_count()).map(|v| self.role(v).expect("in range"))
    }
}

/// The tree `T_Δ`: spine `a - b - c`, `Δ - 1` branch vertices on each of
/// `a` and `c`, two leaves on every branch vertex.
pub fn build_t_delta(delta: usize) -> Result<Graph> {
    let idx = TDeltaIndex::new(delta)?;
    let at = |r| idx.vertex(r).expect("role in range");
    let mut edges = vec![(at(TDeltaRole::A), at(TDeltaRole::B)), (at(TDeltaRole::B), at(TDeltaRole::C))];
    for i in 1..delta {
        let (ai, ci) = (at(TDeltaRole::ABranch(i)), at(TDeltaRole::CBranch(i)));
        edges.push((at(TDeltaRole::A), ai));
        edges.push((at(TDeltaRole::C), ci));
        edges.push((ai, at(TDeltaRole::U(i))));
        edges.push((ai, at(TDeltaRole::V(i))));
        edges.push((ci, at(TDeltaRole::Y(i))));
        edges.push((ci, at(TDeltaRole::Z(i))));
    }
    let labels = idx
        .roles()
        .enumerate()
        .map(|(v, r)| (v, VertexLabel::Tdelta(r)))
        .collect();
    Graph::from_edges(idx.vertex_count(), edges)?.with_labels(labels)
}

/// The path factor `{B, A_1.., C_1..}` with `B = a,b,c`, `A_i = u_i,a_i,v_i`
/// and `C_i = y_i,c_i,z_i`.
pub fn t_delta_path_factor(delta: usize) -> Result<Vec<Vec<Vertex>>> {
    let idx = TDeltaIndex::new(delta)?;
    let at = |r| idx.vertex(r).expect("role in range");
    let mut paths = vec![vec![at(TDeltaRole::A), at(TDeltaRole::B), at(TDeltaRole::C)]];
    for i in 1..delta {
        paths.push(vec![at(TDeltaRole::U(i)), at(TDeltaRole::ABranch(i)), at(TDeltaRole::V(i))]);
    }
    for i in 1..delta {
        paths.push(vec![at(TDeltaRole::Y(i)), at(TDeltaRole::CBranch(i)), at(TDeltaRole::Z(i))]);
    }
    Ok(paths)
}
