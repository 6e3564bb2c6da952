//! Verification harness: named suites of numerical checks over the
//! `superharmonic` library, reported as JSON lines.

pub mod config;
pub mod record;
pub mod suites;

pub use config::{ConfigError, GridSize, SuiteConfig};
pub use record::{summary_table, to_json_lines, CheckKind, CheckRecord};
pub use suites::{
    all_check_ids, run_selection, run_suite, Selection, Suite, UnknownSuite, THREADS_ENV,
};

/// Reject tolerance overrides that name no check.
pub fn validate_overrides(config: &SuiteConfig) -> Result<(), ConfigError> {
    let ids = all_check_ids();
    match config
        .tolerances
        .keys()
        .find(|k| !ids.contains(&k.as_str()))
    {
        Some(k) => Err(ConfigError::UnknownCheck(k.clone())),
        None => Ok(()),
    }
}
