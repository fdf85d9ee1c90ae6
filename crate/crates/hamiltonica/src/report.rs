//! Check reports, the evidence they carry, and report bundles on disk.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;
use std::time::Duration;

use anyhow::Context;
use hamiltonica_core::factors::ConstraintDocument;
use hamiltonica_core::toughness::NotOneToughWitness;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::graph_spec::GraphSpec;

/// Where a checked statement comes from, quoted verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub location: String,
    pub quote: String,
}

fn registry() -> &'static BTreeMap<String, Claim> {
    static CLAIMS: OnceLock<BTreeMap<String, Claim>> = OnceLock::new();
    CLAIMS.get_or_init(|| serde_json::from_str(include_str!("../data/claims.json")).expect("claim registry is valid JSON"))
}

pub fn claim(check_id: &str) -> Option<Claim> {
    registry().get(check_id).cloned()
}

pub fn check_ids() -> impl Iterator<Item = &'static str> {
    registry().keys().map(String::as_str)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    /// `artifact` is the bundle-relative path of the counterexample file.
    Fail { reason: String, artifact: String },
    Skipped { reason: String },
}

/// One re-checkable piece of support for a verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Path covers of `P_3 □ P_columns` admitted by `constraint`, counted by
    /// both engines.
    CoverCount {
        case: String,
        columns: usize,
        constraint: ConstraintDocument,
        backtracking: u64,
        strip: u64,
    },
    Cycle { graph: GraphSpec, cycle: Vec<usize> },
    /// The search finished without a cycle.
    Exhausted { graph: GraphSpec, nodes_explored: u64 },
    Unresolved { graph: GraphSpec, budget: u64 },
    NoPathFactor { graph: GraphSpec, s: Vec<usize>, isolated_after: usize },
    PathFactor { graph: GraphSpec, paths: Vec<Vec<usize>> },
    TreeHypotheses {
        graph: GraphSpec,
        is_tree: bool,
        max_degree: usize,
        #[serde(with = "census_pairs")]
        degree_census: BTreeMap<usize, usize>,
        path_factor: Option<Vec<Vec<usize>>>,
    },
    Components { graph: GraphSpec, removed: Vec<usize>, sizes: Vec<usize> },
    Toughness {
        graph: GraphSpec,
        hamiltonian: Option<bool>,
        witness: Option<NotOneToughWitness>,
    },
    /// A statistic that is reported but not independently re-checked.
    Tally { name: String, value: u64 },
}

/// Degree census as `[degree, count]` pairs; JSON object keys would be
/// strings, which tagged enums cannot read back as integers.
mod census_pairs {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(census: &BTreeMap<usize, usize>, s: S) -> Result<S::Ok, S::Error> {
        census.iter().map(|(&d, &c)| [d, c]).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, usize>, D::Error> {
        Ok(Vec::<[usize; 2]>::deserialize(d)?.into_iter().map(|[d, c]| (d, c)).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub claim: Option<Claim>,
    /// What was actually verified: always finitely many instances.
    pub scope: String,
    pub parameters: BTreeMap<String, Value>,
    pub verdict: Verdict,
    pub evidence: Vec<Evidence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Evidence>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl CheckReport {
    pub fn new(check_id: &str, scope: impl Into<String>) -> Self {
        CheckReport {
            check_id: check_id.to_string(),
            claim: claim(check_id),
            scope: scope.into(),
            parameters: BTreeMap::new(),
            verdict: Verdict::Pass,
            evidence: Vec::new(),
            counterexample: None,
            wall_time: Duration::ZERO,
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters
            .insert(key.to_string(), serde_json::to_value(value).expect("parameters serialize"));
        let stem = self.stem();
        if let Verdict::Fail { artifact, .. } = &mut self.verdict {
            *artifact = format!("artifacts/{stem}.json");
        }
        self
    }

    /// File stem built from the id and parameters, stable across runs.
    pub fn stem(&self) -> String {
        let mut stem = self.check_id.clone();
        for (k, v) in &self.parameters {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let v: String = v
                .chars()
                .map(|c| if c.is_ascii_alphanumeric() { c } else { '-' })
                .collect();
            let _ = write!(stem, "_{k}{}", v.trim_matches('-'));
        }
        stem
    }

    /// Records a failure; the first counterexample is kept.
    pub fn fail(&mut self, reason: impl Into<String>, counterexample: Evidence) {
        if matches!(self.verdict, Verdict::Fail { .. }) {
            return;
        }
        self.verdict = Verdict::Fail {
            reason: reason.into(),
            artifact: format!("artifacts/{}.json", self.stem()),
        };
        self.counterexample = Some(counterexample);
    }

    /// Downgrades a pass to skipped; failures stay failures.
    pub fn skip(&mut self, reason: impl Into<String>) {
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::Skipped { reason: reason.into() };
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// 0 when everything passed, 1 on any failure, 2 when something was
/// skipped but nothing failed.
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    if reports.iter().any(|r| matches!(r.verdict, Verdict::Fail { .. })) {
        1
    } else if reports.iter().any(|r| matches!(r.verdict, Verdict::Skipped { .. })) {
        2
    } else {
        0
    }
}

pub fn summary_table(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    let width = reports.iter().map(|r| r.stem().len()).max().unwrap_or(10).max(10);
    let _ = writeln!(out, "{:<width$}  {:<8}  {:>10}  detail", "check", "verdict", "seconds");
    for r in reports {
        let (status, detail) = match &r.verdict {
            Verdict::Pass => ("pass", String::new()),
            Verdict::Fail { reason, .. } => ("FAIL", reason.clone()),
            Verdict::Skipped { reason } => ("skipped", reason.clone()),
        };
        let _ = writeln!(
            out,
            "{:<width$}  {:<8}  {:>10.3}  {}",
            r.stem(),
            status,
            r.wall_time.as_secs_f64(),
            detail
        );
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    let _ = writeln!(out, "{passed}/{} passed", reports.len());
    out
}

/// Writes one JSON file per report, counterexample artifacts, and a
/// summary listing. Returns the report paths.
pub fn write_bundle(dir: &Path, reports: &[CheckReport]) -> anyhow::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir.join("artifacts")).with_context(|| format!("creating {}", dir.display()))?;
    let mut paths = Vec::new();
    for r in reports {
        let path = dir.join(format!("{}.json", r.stem()));
        std::fs::write(&path, r.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
        if let (Verdict::Fail { artifact, .. }, Some(cx)) = (&r.verdict, &r.counterexample) {
            let text = serde_json::to_string_pretty(cx)? + "\n";
            std::fs::write(dir.join(artifact), text)?;
        }
        paths.push(path);
    }
    std::fs::write(dir.join("summary.txt"), summary_table(reports))?;
    Ok(paths)
}

/// Reads a single report file, or every report in a bundle directory.
pub fn read_reports(path: &Path) -> anyhow::Result<Vec<CheckReport>> {
    let files = if path.is_dir() {
        let mut files: Vec<PathBuf> = std::fs::read_dir(path)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        files
    } else {
        vec![path.to_path_buf()]
    };
    files
        .iter()
        .map(|f| {
            let text = std::fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?;
            serde_json::from_str(&text).with_context(|| format!("parsing {}", f.display()))
        })
        .collect()
}
