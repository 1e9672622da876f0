//! Universal auxiliary-qubit quantum networks and the complete networks
//! for Deutsch's algorithm, the quantum Fourier transform, Shor's order
//! finding and Grover's search.
//!
//! - [`linalg`]: dense complex matrices, states and elementary gates.
//! - [`qcpu`]: the nilpotent factor networks and their sum/product rules.
//! - [`algorithms`]: the four algorithm networks with classical helpers.
//! - [`harness`]: seeded sampling, JSON reports and verification suites.

pub mod algorithms;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod qcpu;
pub mod sampling;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, RegisterShape, StateVector, C64};
