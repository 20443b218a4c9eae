//! Batch harness around `contraction-core`: every verifier as a suite with
//! seeded corpora, persisted JSON reports and CSV summaries.

pub mod config;
pub mod error;
pub mod plot;
pub mod report;
pub mod suites;

pub use config::{RunConfig, Suite};
pub use error::{CliError, Result};
pub use plot::emit_plotdata;
pub use report::{CaseRecord, PlotKind, Series, SuiteReport, Summary};

/// Validates `config`, runs its suite and assembles the report. Nothing is written.
pub fn run_suite(config: &RunConfig) -> Result<SuiteReport> {
    config.validate()?;
    let out = suites::run(config)?;
    let mut report = SuiteReport::new(config.clone(), out.cases, out.series);
    report.timings = out.timings;
    Ok(report)
}

/// Default report location for a suite.
pub fn default_out(suite: Suite) -> std::path::PathBuf {
    std::path::PathBuf::from(format!("reports/{}.json", suite.name()))
}
