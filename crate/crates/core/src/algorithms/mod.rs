//! Complete networks for four algorithms, plus the classical arithmetic
//! around order finding.

pub mod classical;
pub mod deutsch;
pub mod grover;
pub mod qft;
pub mod shor;

pub use deutsch::{run_deutsch, Classification, DeutschFunction, DeutschRun};
pub use grover::{run_grover, GroverConfig, GroverRun};
pub use qft::QftConfig;
pub use shor::{run_shor, ShorConfig, ShorOutcome, ShorRun};
