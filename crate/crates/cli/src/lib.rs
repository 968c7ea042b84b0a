//! Scenario runner, report emission and the `conevanish` command-line front end.

pub mod cli;
pub mod commands;
pub mod report;
pub mod scenario;

pub use commands::{execute, Env, Invocation, Outcome, OutcomeStatus};
pub use report::{canonical_json, Format, Report};
pub use scenario::{Scenario, ScenarioError};

/// Directory holding the bundled scenario files.
pub fn bundled_scenario_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios")
}
