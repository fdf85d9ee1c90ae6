//! Structured vertex labels.
//!
//! Labels live in a sidecar map on [`Graph`](crate::Graph); no structural
//! algorithm reads them. They exist so certificates can be printed and
//! matched against the coordinate notation `(x, i)` used for products.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Role of a vertex in the tree `T_Δ`.
///
/// The spine is `a - b - c`; `a` carries the branch vertices `a_1..a_{Δ-1}`,
/// each with leaves `u_i, v_i`, and `c` carries `c_1..c_{Δ-1}` with leaves
/// `y_i, z_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TDeltaRole {
    A,
    B,
    C,
    ABranch(usize),
    CBranch(usize),
    U(usize),
    V(usize),
    Y(usize),
    Z(usize),
}

impl TDeltaRole {
    pub fn index(&self) -> Option<usize> {
        match *self {
            TDeltaRole::A | TDeltaRole::B | TDeltaRole::C => None,
            TDeltaRole::ABranch(i)
            | TDeltaRole::CBranch(i)
            | TDeltaRole::U(i)
            | TDeltaRole::V(i)
            | TDeltaRole::Y(i)
            | TDeltaRole::Z(i) => Some(i),
        }
    }

    /// Whether the role is well formed for the given maximum degree.
    pub fn is_valid_for(&self, delta: usize) -> bool {
        match self.index() {
            None => true,
            Some(i) => i >= 1 && i < delta,
        }
    }
}

impl fmt::Display for TDeltaRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TDeltaRole::A => write!(f, "a"),
            TDeltaRole::B => write!(f, "b"),
            TDeltaRole::C => write!(f, "c"),
            TDeltaRole::ABranch(i) => write!(f, "a_{i}"),
            TDeltaRole::CBranch(i) => write!(f, "c_{i}"),
            TDeltaRole::U(i) => write!(f, "u_{i}"),
            TDeltaRole::V(i) => write!(f, "v_{i}"),
            TDeltaRole::Y(i) => write!(f, "y_{i}"),
            TDeltaRole::Z(i) => write!(f, "z_{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexLabel {
    Plain(String),
    Tdelta(TDeltaRole),
    Pair(Box<VertexLabel>, Box<VertexLabel>),
}

impl VertexLabel {
    pub fn plain(name: impl ToString) -> Self {
        VertexLabel::Plain(name.to_string())
    }

    /// Path position label; positions follow the 1-based `[n]` convention.
    pub fn position(p: usize) -> Self {
        VertexLabel::Plain(p.to_string())
    }

    pub fn pair(left: VertexLabel, right: VertexLabel) -> Self {
        VertexLabel::Pair(Box::new(left), Box::new(right))
    }

    /// Depth of `Pair` nesting; 0 for atomic labels.
    pub fn nesting(&self) -> usize {
        match self {
            VertexLabel::Pair(l, r) => 1 + l.nesting().max(r.nesting()),
            _ => 0,
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Plain(s) => write!(f, "{s}"),
            VertexLabel::Tdelta(r) => write!(f, "{r}"),
            VertexLabel::Pair(l, r) => write!(f, "({l},{r})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_matches_coordinate_notation() {
        let l = VertexLabel::pair(
            VertexLabel::Tdelta(TDeltaRole::ABranch(2)),
            VertexLabel::position(3),
        );
        assert_eq!(l.to_string(), "(a_2,3)");
        assert_eq!(l.nesting(), 1);
    }

    #[test]
    fn role_index_bounds() {
        assert!(TDeltaRole::A.is_valid_for(3));
        assert!(TDeltaRole::U(2).is_valid_for(3));
        assert!(!TDeltaRole::U(3).is_valid_for(3));
        assert!(!TDeltaRole::Z(0).is_valid_for(5));
    }

    #[test]
    fn json_shape() {
        let l = VertexLabel::pair(VertexLabel::Tdelta(TDeltaRole::B), VertexLabel::position(1));
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"pair":[{"tdelta":"b"},{"plain":"1"}]}"#);
        let back: VertexLabel = serde_json::from_str(&s).unwrap();
        assert_eq!(back, l);
    }
}
