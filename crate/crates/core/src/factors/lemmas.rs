//! Endpoint constraints on the strip `P_3 □ P_n` under which no path cover
//! exists. Coordinates are 1-based `(row, column)` with `row in [3]` and
//! `column in [n]`; the middle row is row 2.

use serde::{Deserialize, Serialize};

use super::EndpointConstraint;
use crate::constructions::{cartesian_product, path_graph};
use crate::error::{invalid, Result};
use crate::graph::{Graph, Vertex};

/// `P_3 □ P_n`, vertex `(row, column)` at index `(row-1)*n + column-1`.
pub fn lemma_grid(n: usize) -> Result<Graph> {
    cartesian_product(&path_graph(3)?, &path_graph(n)?)
}

#[inline]
pub fn grid_vertex(row: usize, column: usize, n: usize) -> Vertex {
    debug_assert!((1..=3).contains(&row) && (1..=n).contains(&column));
    (row - 1) * n + (column - 1)
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(invalid(format!("k={k} outside [1, {n}]")));
    }
    if k % 2 == 0 {
        return Err(invalid(format!("k={k} must be odd")));
    }
    Ok(())
}

/// Ends confined to the middle row at columns `k..=n`, with `(2, k)` an end.
pub fn first_lemma_constraint(n: usize, k: usize) -> Result<EndpointConstraint> {
    check_k(n, k)?;
    Ok(EndpointConstraint::within(3 * n, (k..=n).map(|col| grid_vertex(2, col, n))).require(grid_vertex(2, k, n)))
}

/// How the pairing clause treats column 1, whose partner column 0 does not
/// exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryReading {
    /// Column 1 is unconstrained by the pairing clause.
    Vacuous,
    /// The missing partner is never an end, so `(2, 1)` may not be one
    /// whenever `1 < k`.
    Literal,
}

impl BoundaryReading {
    pub const BOTH: [BoundaryReading; 2] = [BoundaryReading::Vacuous, BoundaryReading::Literal];
}

/// Ends confined to the middle row, `(2, k)` an end, `(2, k-1)` not, and for
/// odd `i < k`, `(2, i)` an end exactly when `(2, i-1)` is.
pub fn second_lemma_constraint(n: usize, k: usize, reading: BoundaryReading) -> Result<EndpointConstraint> {
    check_k(n, k)?;
    let mut c = EndpointConstraint::within(3 * n, (1..=n).map(|col| grid_vertex(2, col, n))).require(grid_vertex(2, k, n));
    if k >= 2 {
        c = c.forbid(grid_vertex(2, k - 1, n));
    }
    for i in (1..k).step_by(2) {
        if i == 1 {
            if reading == BoundaryReading::Literal {
                c = c.forbid(grid_vertex(2, 1, n));
            }
        } else {
            c = c.pair(grid_vertex(2, i, n), grid_vertex(2, i - 1, n));
        }
    }
    Ok(c)
}

/// An explicit choice of `k` and of the middle-row columns below `k - 1`
/// that are path ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndpointPattern {
    pub k: usize,
    pub ends_below: Vec<usize>,
}

impl EndpointPattern {
    pub fn validate(&self, n: usize, reading: BoundaryReading) -> Result<()> {
        check_k(n, self.k)?;
        let k = self.k;
        if let Some(&col) = self.ends_below.iter().find(|&&c| c == 0 || c + 1 >= k) {
            return Err(invalid(format!("column {col} is not below k-1={}", k.saturating_sub(1))));
        }
        let is_end = |c: usize| self.ends_below.contains(&c);
        for i in (3..k).step_by(2) {
            if is_end(i) != is_end(i - 1) {
                return Err(invalid(format!("columns {} and {i} must agree", i - 1)));
            }
        }
        if reading == BoundaryReading::Literal && k > 1 && is_end(1) {
            return Err(invalid("column 1 cannot be an end under the literal reading"));
        }
        Ok(())
    }

    pub fn constraint(&self, n: usize) -> Result<EndpointConstraint> {
        check_k(n, self.k)?;
        let mut c = EndpointConstraint::within(3 * n, (1..=n).map(|col| grid_vertex(2, col, n))).require(grid_vertex(2, self.k, n));
        for col in 1..self.k {
            if self.ends_below.contains(&col) {
                c = c.require(grid_vertex(2, col, n));
            } else {
                c = c.forbid(grid_vertex(2, col, n));
            }
        }
        Ok(c)
    }
}

/// Every valid `(k, pattern)` pair on `P_3 □ P_n` for the given reading.
pub fn second_lemma_patterns(n: usize, reading: BoundaryReading) -> Vec<EndpointPattern> {
    let mut out = Vec::new();
    for k in (1..=n).step_by(2) {
        // free choices: column 1 (vacuous reading only), and pairs {i-1, i} for odd 3 <= i < k
        let pairs: Vec<usize> = (3..k).step_by(2).collect();
        let column_one_free = k > 1 && reading == BoundaryReading::Vacuous;
        let choices = pairs.len() + column_one_free as usize;
        for mask in 0u64..(1 << choices) {
            let mut ends = Vec::new();
            if column_one_free && mask & 1 == 1 {
                ends.push(1);
            }
            let shift = column_one_free as usize;
            for (b, &i) in pairs.iter().enumerate() {
                if mask >> (b + shift) & 1 == 1 {
                    ends.extend([i - 1, i]);
                }
            }
            ends.sort_unstable();
            out.push(EndpointPattern { k, ends_below: ends });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_constraint_shape() {
        let c = first_lemma_constraint(5, 3).unwrap();
        assert_eq!(c.allowed.to_vec(), vec![7, 8, 9]);
        assert_eq!(c.required.to_vec(), vec![7]);
        assert!(first_lemma_constraint(5, 2).is_err());
        assert!(first_lemma_constraint(5, 7).is_err());
    }

    #[test]
    fn second_constraint_readings() {
        let v = second_lemma_constraint(7, 5, BoundaryReading::Vacuous).unwrap();
        assert_eq!(v.forbidden.to_vec(), vec![grid_vertex(2, 4, 7)]);
        assert_eq!(v.pairing, vec![(grid_vertex(2, 3, 7), grid_vertex(2, 2, 7))]);
        let l = second_lemma_constraint(7, 5, BoundaryReading::Literal).unwrap();
        assert_eq!(l.forbidden.to_vec(), vec![grid_vertex(2, 1, 7), grid_vertex(2, 4, 7)]);
        let k1 = second_lemma_constraint(3, 1, BoundaryReading::Literal).unwrap();
        assert!(k1.forbidden.is_empty() && k1.pairing.is_empty());
    }

    #[test]
    fn pattern_enumeration() {
        // n=7: k=1 -> 1, k=3 -> 2, k=5 -> 4, k=7 -> 8 under the vacuous reading
        assert_eq!(second_lemma_patterns(7, BoundaryReading::Vacuous).len(), 15);
        // literal: column 1 fixed, so k=3 -> 1, k=5 -> 2, k=7 -> 4
        assert_eq!(second_lemma_patterns(7, BoundaryReading::Literal).len(), 8);
        for reading in BoundaryReading::BOTH {
            for p in second_lemma_patterns(7, reading) {
                p.validate(7, reading).unwrap();
            }
        }
    }

    #[test]
    fn pattern_syntax_errors() {
        let bad_pair = EndpointPattern { k: 5, ends_below: vec![2] };
        assert!(bad_pair.validate(7, BoundaryReading::Vacuous).is_err());
        let too_high = EndpointPattern { k: 5, ends_below: vec![4] };
        assert!(too_high.validate(7, BoundaryReading::Vacuous).is_err());
        let even = EndpointPattern { k: 4, ends_below: vec![] };
        assert!(even.validate(7, BoundaryReading::Vacuous).is_err());
        let one = EndpointPattern { k: 3, ends_below: vec![1] };
        assert!(one.validate(5, BoundaryReading::Vacuous).is_ok());
        assert!(one.validate(5, BoundaryReading::Literal).is_err());
    }
}
