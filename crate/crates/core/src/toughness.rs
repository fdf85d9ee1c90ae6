//! 1-toughness and exact toughness by exhaustive separator search.
//!
//! Only separating sets count: `S` qualifies when `G - S` has at least two
//! components. A complete graph has none, so its toughness is undefined here.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factors::for_each_combination;
use crate::graph::{components_avoiding, Graph, VertexSet};
use crate::hamiltonicity::{find_hamiltonian_cycle, HamOutcome};

/// Vertex limit for [`is_one_tough`].
pub const ONE_TOUGH_VERTEX_LIMIT: usize = 24;
/// Vertex limit for [`toughness`].
pub const TOUGHNESS_VERTEX_LIMIT: usize = 18;

/// A separating set `S` with more components in `G - S` than vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "WitnessDocument", try_from = "WitnessDocument")]
pub struct NotOneToughWitness {
    pub s: VertexSet,
    pub components_after: usize,
}

#[derive(Serialize, Deserialize)]
struct WitnessDocument {
    s: Vec<usize>,
    omega: usize,
    cardinality: usize,
}

impl From<NotOneToughWitness> for WitnessDocument {
    fn from(w: NotOneToughWitness) -> Self {
        WitnessDocument {
            cardinality: w.s.len(),
            s: w.s.to_vec(),
            omega: w.components_after,
        }
    }
}

impl TryFrom<WitnessDocument> for NotOneToughWitness {
    type Error = Error;

    fn try_from(d: WitnessDocument) -> Result<Self> {
        let s = VertexSet::from_vertices(0, d.s);
        if s.len() != d.cardinality {
            return Err(Error::Parse(format!("cardinality {} but {} vertices listed", d.cardinality, s.len())));
        }
        Ok(NotOneToughWitness {
            s,
            components_after: d.omega,
        })
    }
}

impl NotOneToughWitness {
    /// Recomputes `ω(G - S)` and checks it exceeds `|S|` and is at least 2.
    pub fn verify(&self, g: &Graph) -> bool {
        if self.s.iter().any(|v| v >= g.n()) {
            return false;
        }
        let omega = components_avoiding(g, &self.s).len();
        omega == self.components_after && omega >= 2 && omega > self.s.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OneToughness {
    Confirmed,
    NotOneTough(NotOneToughWitness),
}

impl OneToughness {
    pub fn is_confirmed(&self) -> bool {
        matches!(self, OneToughness::Confirmed)
    }
}

fn full(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn masks(g: &Graph) -> Vec<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect()
}

/// Components of the subgraph induced by `alive`.
fn components(adj: &[u64], mut alive: u64) -> usize {
    let mut count = 0;
    while alive != 0 {
        count += 1;
        let mut frontier = alive & alive.wrapping_neg();
        let mut comp = frontier;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = adj[v] & alive & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        alive &= !comp;
    }
    count
}

fn check_size(g: &Graph, limit: usize, what: &'static str) -> Result<()> {
    if g.n() > limit {
        return Err(Error::TooLarge { what, size: g.n(), limit });
    }
    Ok(())
}

/// Exhaustive 1-toughness test. A failure comes with the lexicographically
/// least witness among those of minimum cardinality.
pub fn is_one_tough(g: &Graph) -> Result<OneToughness> {
    check_size(g, ONE_TOUGH_VERTEX_LIMIT, "1-toughness subset search")?;
    let n = g.n();
    let adj = masks(g);
    let all = full(n);
    // a violation needs ω(G - S) > |S|, and ω(G - S) <= n - |S|
    for k in 0..n.div_ceil(2) {
        let mut witness = None;
        for_each_combination(n, k, |subset| {
            let removed = subset.iter().fold(0u64, |m, &v| m | 1 << v);
            let omega = components(&adj, all & !removed);
            if omega >= 2 && omega > k {
                witness = Some(NotOneToughWitness {
                    s: VertexSet::from_vertices(n, subset.iter().copied()),
                    components_after: omega,
                });
                return true;
            }
            false
        });
        if let Some(w) = witness {
            return Ok(OneToughness::NotOneTough(w));
        }
    }
    Ok(OneToughness::Confirmed)
}

/// `min |S| / ω(G - S)` over separating sets, exactly.
pub fn toughness(g: &Graph) -> Result<Ratio<usize>> {
    check_size(g, TOUGHNESS_VERTEX_LIMIT, "toughness subset search")?;
    if g.is_complete() {
        return Err(Error::Undefined("a complete graph has no separating set".into()));
    }
    if !g.is_connected() {
        return Err(Error::Undefined("toughness is only computed for connected graphs".into()));
    }
    let n = g.n();
    let adj = masks(g);
    let all = full(n);
    let mut best: Option<Ratio<usize>> = None;
    for removed in 1..all {
        let size = removed.count_ones() as usize;
        if let Some(b) = best {
            // ω(G - S) <= n - |S| bounds the ratio from below
            if Ratio::new(size, n - size) >= b {
                continue;
            }
        }
        let omega = components(&adj, all & !removed);
        if omega >= 2 {
            let r = Ratio::new(size, omega);
            if best.map_or(true, |b| r < b) {
                best = Some(r);
            }
        }
    }
    best.ok_or_else(|| Error::Undefined("no separating set".into()))
}

/// Both deciders on one graph: a Hamiltonian graph must be 1-tough.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToughnessReport {
    /// `None` when the Hamiltonicity search ran out of budget.
    pub hamiltonian: Option<bool>,
    pub one_tough: OneToughness,
    /// Exact toughness when the graph is small enough and it is defined.
    pub toughness: Option<(usize, usize)>,
}

impl ToughnessReport {
    /// Hamiltonian implies 1-tough.
    pub fn implication_holds(&self) -> bool {
        self.hamiltonian != Some(true) || self.one_tough.is_confirmed()
    }

    /// 1-tough but not Hamiltonian: allowed, and worth counting.
    pub fn converse_fails(&self) -> bool {
        self.hamiltonian == Some(false) && self.one_tough.is_confirmed()
    }
}

pub fn hamiltonian_implies_tough_check(g: &Graph, budget: u64) -> Result<ToughnessReport> {
    let hamiltonian = if g.n() < 3 {
        Some(false)
    } else {
        match find_hamiltonian_cycle(g, budget)?.outcome {
            HamOutcome::Found(_) => Some(true),
            HamOutcome::NotHamiltonian { .. } => Some(false),
            HamOutcome::Unknown { .. } => None,
        }
    };
    let one_tough = is_one_tough(g)?;
    let toughness = if g.n() <= TOUGHNESS_VERTEX_LIMIT {
        toughness(g).ok().map(|r| (*r.numer(), *r.denom()))
    } else {
        None
    };
    Ok(ToughnessReport {
        hamiltonian,
        one_tough,
        toughness,
    })
}
