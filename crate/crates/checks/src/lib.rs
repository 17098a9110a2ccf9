//! Named checks over the numerical and symbolic engines, each producing metrics compared
//! against declared tolerances, plus the suite runner and report formats.

pub mod checks;
pub mod config;
pub mod error;
pub mod result;
pub mod suite;

pub use config::{OutputFormat, SuiteConfig};
pub use error::CheckError;
pub use result::{CheckReport, CheckResult, Recorder, Status, Summary};
pub use checks::relativistic::{leakage_table, LeakageRow};
pub use suite::{check_names, run_check, run_suite, run_suite_with_threads, selected_checks, CHECKS, THREADS_ENV};
