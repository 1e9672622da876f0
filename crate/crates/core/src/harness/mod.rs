//! Verification harness: random inputs, JSON reports and named suites.

pub mod random;
pub mod report;
pub mod suite;

pub use report::{write_report, RunReport};
pub use suite::{run_verification_suite, SuiteFailure, SuiteName, SuiteOptions, SuiteResult};
