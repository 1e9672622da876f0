//! Deutsch's problem on one input bit.
//!
//! The whole two-qubit protocol collapses to a 4x4 matrix, and further to a
//! single-qubit matrix `V(f)` whose network acts on `|1> ⊗ |0>_A`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{hadamard, pauli_x, tensor, ComplexMatrix, StateVector, C64, ONE, ZERO};
use crate::qcpu::{postselect_aux, qcpu_of, QcpuNetwork};

/// A function `{0,1} -> {0,1}` given by its two values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DeutschFunction {
    pub f0: bool,
    pub f1: bool,
}

impl DeutschFunction {
    pub const F1: Self = Self {
        f0: false,
        f1: false,
    };
    pub const F2: Self = Self { f0: true, f1: true };
    pub const F3: Self = Self {
        f0: false,
        f1: true,
    };
    pub const F4: Self = Self {
        f0: true,
        f1: false,
    };

    pub const ALL: [Self; 4] = [Self::F1, Self::F2, Self::F3, Self::F4];

    pub fn eval(&self, x: usize) -> bool {
        if x == 0 {
            self.f0
        } else {
            self.f1
        }
    }

    pub fn is_constant(&self) -> bool {
        self.f0 == self.f1
    }

    pub fn name(&self) -> &'static str {
        match (self.f0, self.f1) {
            (false, false) => "f1",
            (true, true) => "f2",
            (false, true) => "f3",
            (true, false) => "f4",
        }
    }

    /// `δ_{f(0)f(1)}`
    fn delta(&self) -> f64 {
        if self.f0 == self.f1 {
            1.0
        } else {
            0.0
        }
    }

    /// `ε_{f(0)f(1)}` with `ε_01 = 1`, `ε_10 = -1`.
    fn epsilon(&self) -> f64 {
        match (self.f0, self.f1) {
            (false, true) => 1.0,
            (true, false) => -1.0,
            _ => 0.0,
        }
    }

    /// `(-1)^{f(0)} δ`
    fn diagonal(&self) -> f64 {
        let sign = if self.f0 { -1.0 } else { 1.0 };
        sign * self.delta()
    }
}

impl FromStr for DeutschFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f1" => Ok(Self::F1),
            "f2" => Ok(Self::F2),
            "f3" => Ok(Self::F3),
            "f4" => Ok(Self::F4),
            other => Err(Error::InvalidConfig(format!(
                "unknown Deutsch function `{other}` (expected f1, f2, f3 or f4)"
            ))),
        }
    }
}

impl fmt::Display for DeutschFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Constant,
    Balanced,
}

impl Classification {
    pub fn output_bit(&self) -> u8 {
        match self {
            Classification::Constant => 0,
            Classification::Balanced => 1,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Constant => f.write_str("constant (output 0)"),
            Classification::Balanced => f.write_str("balanced (output 1)"),
        }
    }
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// The 4x4 matrix of the complete protocol, written entry by entry.
pub fn deutsch_u(f: DeutschFunction) -> ComplexMatrix {
    let d = f.diagonal();
    let e = f.epsilon();
    ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, d, 0.0, e],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, e, 0.0, d],
    ])
}

/// The same matrix as a sum of two tensor products,
/// `I ⊗ diag(1, (-1)^{f0} δ) + σ1 ⊗ diag(0, ε)`.
pub fn deutsch_u_tensor_sum(f: DeutschFunction) -> ComplexMatrix {
    let left = tensor(
        &ComplexMatrix::identity(2),
        &ComplexMatrix::diagonal(&[ONE, real(f.diagonal())]),
    );
    let right = tensor(
        &pauli_x(),
        &ComplexMatrix::diagonal(&[ZERO, real(f.epsilon())]),
    );
    left.add(&right).expect("4x4")
}

/// Single-qubit reduction `[[(-1)^{f0} δ, ε], [ε, (-1)^{f0} δ]]`.
pub fn deutsch_v(f: DeutschFunction) -> ComplexMatrix {
    let d = f.diagonal();
    let e = f.epsilon();
    ComplexMatrix::from_real_rows(&[&[d, e], &[e, d]])
}

/// The oracle `|i, j> -> |i, j ⊕ f(i)>`.
pub fn oracle(f: DeutschFunction) -> ComplexMatrix {
    let mut u = ComplexMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            let target = j ^ usize::from(f.eval(i));
            u[(2 * i + target, 2 * i + j)] = ONE;
        }
    }
    u
}

pub fn deutsch_network(f: DeutschFunction) -> Result<QcpuNetwork> {
    Ok(qcpu_of(&deutsch_v(f))?.with_label(format!("V({f})")))
}

#[derive(Clone, Debug)]
pub struct DeutschRun {
    pub function: DeutschFunction,
    pub classification: Classification,
    /// Probability of the register outcome the classification is read from.
    pub probability: f64,
    /// Register state on the aux-1 branch, renormalised.
    pub register_state: StateVector,
    pub aux_weight: f64,
    pub textbook_classification: Classification,
    pub textbook_probability: f64,
    /// `max |(H⊗H) U_f (H⊗H) - U|` against the entrywise matrix.
    pub textbook_matrix_residual: f64,
    /// `max |tensor sum - U|`.
    pub tensor_sum_residual: f64,
}

impl DeutschRun {
    pub fn routes_agree(&self) -> bool {
        self.classification == self.textbook_classification
    }
}

/// Runs both the network route and the four-step textbook route.
///
/// The network acts on `|1> ⊗ |0>_A`; after keeping the aux-1 branch the
/// register is `V|1>`, which is `±|1>` for constant and `±|0>` for balanced
/// functions. The textbook route prepares `|01>`, applies `H⊗H`, the
/// oracle and `H⊗H`, then reads the first qubit.
pub fn run_deutsch(f: DeutschFunction) -> Result<DeutschRun> {
    let network = deutsch_network(f)?;
    let prepared = StateVector::basis(1, 2)?.tensor(&StateVector::basis(0, 2)?);
    let after = network.closed_form()?.apply(&prepared)?;
    let (register_state, aux_weight) = postselect_aux(&after, 1)?;
    let probs = register_state.probabilities();
    let (classification, probability) = if probs[1] >= probs[0] {
        (Classification::Constant, probs[1])
    } else {
        (Classification::Balanced, probs[0])
    };

    let hh = tensor(&hadamard(), &hadamard());
    let textbook = hh.matmul(&oracle(f))?.matmul(&hh)?;
    let final_state = textbook.apply(&StateVector::basis(1, 4)?)?;
    let p = final_state.probabilities();
    let first_one = p[2] + p[3];
    let (textbook_classification, textbook_probability) = if first_one > 0.5 {
        (Classification::Balanced, first_one)
    } else {
        (Classification::Constant, p[0] + p[1])
    };

    let u = deutsch_u(f);
    Ok(DeutschRun {
        function: f,
        classification,
        probability,
        register_state,
        aux_weight,
        textbook_classification,
        textbook_probability,
        textbook_matrix_residual: textbook.max_abs_diff(&u)?,
        tensor_sum_residual: deutsch_u_tensor_sum(f).max_abs_diff(&u)?,
    })
}
