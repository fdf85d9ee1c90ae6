//! Offline re-verification of report evidence.

use hamiltonica_core::factors::{
    count_strip_covers, enumerate_path_covers, lemma_grid, NoPathFactorWitness, PathSystem,
};
use hamiltonica_core::graph::{components_avoiding, degree_census};
use hamiltonica_core::hamiltonicity::{find_hamiltonian_cycle, verify_cycle, DEFAULT_NODE_BUDGET};
use hamiltonica_core::toughness::is_one_tough;
use hamiltonica_core::VertexSet;
use serde::Serialize;

use crate::report::{CheckReport, Evidence, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    Verified,
    /// Nothing to check, or the check needs a search that was not requested.
    Unchecked,
    Rejected { reason: String },
}

fn rejected(reason: impl Into<String>) -> Outcome {
    Outcome::Rejected { reason: reason.into() }
}

fn check(ok: bool, reason: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Verified
    } else {
        rejected(reason())
    }
}

/// Re-checks one piece of evidence. Certificates (cycles, witness sets,
/// counts, factors, components) are always re-checked. Exhaustion claims
/// are re-searched only with `rerun`.
pub fn verify_evidence(ev: &Evidence, rerun: bool) -> Outcome {
    match try_verify(ev, rerun) {
        Ok(o) => o,
        Err(e) => rejected(format!("{e}")),
    }
}

fn try_verify(ev: &Evidence, rerun: bool) -> hamiltonica_core::Result<Outcome> {
    Ok(match ev {
        Evidence::CoverCount { columns, constraint, backtracking, strip, .. } => {
            let g = lemma_grid(*columns)?;
            let c = constraint.resolve(&g)?;
            let b = enumerate_path_covers(&g, &c)?;
            let s = count_strip_covers(3, *columns, &c)?;
            check(b == *backtracking && s == *strip, || {
                format!("recounted {b} and {s}, recorded {backtracking} and {strip}")
            })
        }
        Evidence::Cycle { graph, cycle } => {
            let g = graph.build()?;
            check(verify_cycle(&g, cycle), || format!("not a Hamiltonian cycle of {graph}"))
        }
        Evidence::Exhausted { graph, .. } if rerun => {
            let g = graph.build()?;
            let v = find_hamiltonian_cycle(&g, DEFAULT_NODE_BUDGET)?;
            check(v.is_exhausted(), || format!("{graph} re-search did not exhaust"))
        }
        Evidence::Exhausted { .. } | Evidence::Unresolved { .. } | Evidence::Tally { .. } => Outcome::Unchecked,
        Evidence::NoPathFactor { graph, s, isolated_after } => {
            let g = graph.build()?;
            let w = NoPathFactorWitness {
                s: VertexSet::from_vertices(g.n(), s.iter().copied().filter(|&v| v < g.n())),
                isolated_after: *isolated_after,
            };
            check(w.s.len() == s.len() && w.verify(&g), || format!("witness does not certify {graph}"))
        }
        Evidence::PathFactor { graph, paths } => {
            let g = graph.build()?;
            let ok = PathSystem::new(&g, paths.clone()).is_ok_and(|ps| ps.is_factor_of(&g));
            check(ok, || format!("not a path factor of {graph}"))
        }
        Evidence::TreeHypotheses { graph, is_tree, max_degree, degree_census: census, path_factor } => {
            let g = graph.build()?;
            if g.is_tree() != *is_tree || g.max_degree() != *max_degree || degree_census(&g) != *census {
                return Ok(rejected(format!("recorded structure of {graph} is wrong")));
            }
            match path_factor {
                Some(paths) => {
                    let ok = PathSystem::new(&g, paths.clone()).is_ok_and(|ps| ps.is_factor_of(&g));
                    check(ok, || format!("recorded path factor of {graph} is invalid"))
                }
                None => Outcome::Verified,
            }
        }
        Evidence::Components { graph, removed, sizes } => {
            let g = graph.build()?;
            let s = VertexSet::from_vertices(g.n(), removed.iter().copied().filter(|&v| v < g.n()));
            let mut got: Vec<usize> = components_avoiding(&g, &s).iter().map(VertexSet::len).collect();
            got.sort_unstable();
            check(s.len() == removed.len() && got == *sizes, || format!("recomputed sizes {got:?}"))
        }
        Evidence::Toughness { graph, hamiltonian, witness } => {
            let g = graph.build()?;
            match witness {
                Some(w) => check(w.verify(&g), || format!("separator does not certify {graph}")),
                None if rerun => {
                    let confirmed = is_one_tough(&g)?.is_confirmed();
                    let ham = if g.n() < 3 {
                        Some(false)
                    } else {
                        let v = find_hamiltonian_cycle(&g, DEFAULT_NODE_BUDGET)?;
                        v.is_found().then_some(true).or(v.is_exhausted().then_some(false))
                    };
                    check(confirmed && (hamiltonian.is_none() || ham == *hamiltonian), || {
                        format!("{graph}: 1-tough={confirmed}, Hamiltonian={ham:?}")
                    })
                }
                None => Outcome::Unchecked,
            }
        }
    })
}

/// Per-report re-verification summary.
#[derive(Debug, Clone, Serialize)]
pub struct ReportCheck {
    pub stem: String,
    pub verified: usize,
    pub unchecked: usize,
    pub rejected: Vec<String>,
}

impl ReportCheck {
    pub fn ok(&self) -> bool {
        self.rejected.is_empty()
    }
}

/// Statements whose passing evidence must not contain a Hamiltonian cycle.
const NEGATIVE_CHECKS: [&str; 2] = ["tree-family-not-hamiltonian", "no-factor-pendant-product"];

pub fn verify_report(r: &CheckReport, rerun: bool) -> ReportCheck {
    let mut out = ReportCheck { stem: r.stem(), verified: 0, unchecked: 0, rejected: Vec::new() };
    match (&r.verdict, &r.counterexample) {
        (Verdict::Fail { .. }, None) => out.rejected.push("failure without a counterexample".into()),
        (Verdict::Pass, Some(_)) => out.rejected.push("pass with a counterexample".into()),
        _ => {}
    }
    if r.verdict == Verdict::Pass {
        if NEGATIVE_CHECKS.contains(&r.check_id.as_str()) && r.evidence.iter().any(|e| matches!(e, Evidence::Cycle { .. })) {
            out.rejected.push("a pass of a non-Hamiltonicity check lists a cycle".into());
        }
        if r.check_id == "long-path-positive-side" && !r.evidence.iter().any(|e| matches!(e, Evidence::Cycle { .. })) {
            out.rejected.push("a positive-side pass lists no cycle".into());
        }
    }
    let items = r.evidence.iter().enumerate().map(|(i, e)| (format!("evidence {i}"), e));
    for (place, ev) in items.chain(r.counterexample.iter().map(|e| ("counterexample".to_string(), e))) {
        match verify_evidence(ev, rerun) {
            Outcome::Verified => out.verified += 1,
            Outcome::Unchecked => out.unchecked += 1,
            Outcome::Rejected { reason } => out.rejected.push(format!("{place}: {reason}")),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::{check_positive_side, check_suffix_ends, DEFAULT_NODE_BUDGET};
    use crate::graph_spec::GraphSpec;

    #[test]
    fn passing_reports_reverify() {
        let r = check_suffix_ends(5, 3).unwrap();
        let v = verify_report(&r, true);
        assert!(v.ok() && v.verified == 1, "{v:?}");
        let r = check_positive_side(&GraphSpec::Path { n: 4 }, 6, DEFAULT_NODE_BUDGET).unwrap();
        assert!(verify_report(&r, false).ok());
    }

    #[test]
    fn tampered_cycle_is_rejected() {
        let mut r = check_positive_side(&GraphSpec::Path { n: 4 }, 6, DEFAULT_NODE_BUDGET).unwrap();
        for ev in &mut r.evidence {
            if let Evidence::Cycle { cycle, .. } = ev {
                cycle.swap(0, 1);
            }
        }
        assert!(!verify_report(&r, false).ok());
    }

    #[test]
    fn wrong_count_is_rejected() {
        let mut r = check_suffix_ends(3, 1).unwrap();
        if let Evidence::CoverCount { backtracking, .. } = &mut r.evidence[0] {
            *backtracking = 1;
        }
        assert!(!verify_report(&r, false).ok());
    }

    #[test]
    fn false_exhaustion_is_rejected_on_rerun() {
        let ev = Evidence::Exhausted { graph: GraphSpec::Cycle { n: 5 }, nodes_explored: 0 };
        assert_eq!(verify_evidence(&ev, false), Outcome::Unchecked);
        assert!(matches!(verify_evidence(&ev, true), Outcome::Rejected { .. }));
    }

    #[test]
    fn forged_witnesses_are_rejected() {
        let ev = Evidence::NoPathFactor { graph: GraphSpec::Path { n: 4 }, s: vec![1], isolated_after: 1 };
        assert!(matches!(verify_evidence(&ev, false), Outcome::Rejected { .. }));
        let ev = Evidence::Components { graph: GraphSpec::Path { n: 4 }, removed: vec![1], sizes: vec![1, 1] };
        assert!(matches!(verify_evidence(&ev, false), Outcome::Rejected { .. }));
        let ev = Evidence::Components { graph: GraphSpec::Path { n: 4 }, removed: vec![1], sizes: vec![1, 2] };
        assert_eq!(verify_evidence(&ev, false), Outcome::Verified);
    }
}
