//! Verification harness: named checks over finite instances, report
//! bundles, and offline re-verification.

pub mod checks;
pub mod graph_spec;
pub mod report;
pub mod verify;

pub use checks::{run_all, Profile};
pub use graph_spec::GraphSpec;
pub use report::{CheckReport, Evidence, Verdict};
