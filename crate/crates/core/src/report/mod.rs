//! Configuration, suite orchestration and verification reports.

pub mod config;
pub mod suite;

pub use config::{ConfigError, SuiteConfig};
pub use suite::{run_filtered, run_limits, run_suite, CheckRecord, Status, Suite, VerificationReport};
