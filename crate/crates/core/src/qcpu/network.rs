use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{
    check_dense, outer, tensor, ComplexMatrix, RegisterShape, StateVector, C64, ZERO,
};
use crate::qcpu::auxiliary::AuxiliaryAlgebra;

/// One rank-one factor `exp{(coeff |m><n| ⊗ I_A) · C†}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QcpuFactor {
    pub m: usize,
    pub n: usize,
    pub coeff: C64,
}

impl QcpuFactor {
    pub fn new(m: usize, n: usize, coeff: C64) -> Self {
        Self { m, n, coeff }
    }

    /// Dense `I + coeff (|m><n| ⊗ c_dag)`.
    ///
    /// The exponent squares to zero, so the exponential series stops after
    /// the linear term and this is exact.
    pub fn matrix(&self, shape: RegisterShape) -> Result<ComplexMatrix> {
        let dim = shape.dim();
        check_dense(2 * dim)?;
        let generator = outer(self.m, self.n, dim)?.scale(self.coeff);
        Ok(nilpotent_exp(&generator))
    }
}

/// `exp{X ⊗ c_dag} = I + X ⊗ c_dag` for a register operator `X`.
pub fn nilpotent_exp(register_op: &ComplexMatrix) -> ComplexMatrix {
    let aux = AuxiliaryAlgebra::new();
    let dim = 2 * register_op.rows();
    ComplexMatrix::identity(dim)
        .add(&tensor(register_op, &aux.c_dag))
        .expect("square register operator")
}

/// The universal network `Q(U)`: an ordered list of commuting rank-one
/// factors over a register of dimension `N`, acting on `register ⊗ aux`.
#[derive(Clone, Debug, PartialEq)]
pub struct QcpuNetwork {
    shape: RegisterShape,
    factors: Vec<QcpuFactor>,
    pub label: String,
}

impl QcpuNetwork {
    /// Builds a network from raw factors, merging repeated `(m, n)` pairs
    /// (their exponents add) and dropping zero coefficients. Factors are
    /// stored row-major.
    pub fn from_factors(
        shape: RegisterShape,
        factors: impl IntoIterator<Item = QcpuFactor>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let dim = shape.dim();
        let mut merged: BTreeMap<(usize, usize), C64> = BTreeMap::new();
        for f in factors {
            for index in [f.m, f.n] {
                if index >= dim {
                    return Err(Error::IndexOutOfRange { index, dim });
                }
            }
            if !(f.coeff.re.is_finite() && f.coeff.im.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "non-finite coefficient at ({}, {})",
                    f.m, f.n
                )));
            }
            *merged.entry((f.m, f.n)).or_insert(ZERO) += f.coeff;
        }
        let factors = merged
            .into_iter()
            .filter(|(_, c)| *c != ZERO)
            .map(|((m, n), coeff)| QcpuFactor { m, n, coeff })
            .collect();
        Ok(Self {
            shape,
            factors,
            label: label.into(),
        })
    }

    pub fn shape(&self) -> RegisterShape {
        self.shape
    }

    pub fn factors(&self) -> &[QcpuFactor] {
        &self.factors
    }

    /// Mutable access, used by the harness to inject faults.
    pub fn factors_mut(&mut self) -> &mut [QcpuFactor] {
        &mut self.factors
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// The register operator `U` reassembled from the factor coefficients.
    pub fn matrix(&self) -> ComplexMatrix {
        let dim = self.shape.dim();
        let mut u = ComplexMatrix::zeros(dim, dim);
        for f in &self.factors {
            u[(f.m, f.n)] += f.coeff;
        }
        u
    }

    /// `I_R ⊗ I_A + U ⊗ c_dag`, the collapsed value of the factor product.
    pub fn closed_form(&self) -> Result<ComplexMatrix> {
        check_dense(2 * self.shape.dim())?;
        Ok(nilpotent_exp(&self.matrix()))
    }

    /// Literal ordered product of the factor matrices. `order` lists factor
    /// positions, leftmost first; `None` uses the stored order.
    pub fn factor_product(&self, order: Option<&[usize]>) -> Result<ComplexMatrix> {
        let dim = 2 * self.shape.dim();
        check_dense(dim)?;
        let default: Vec<usize> = (0..self.factors.len()).collect();
        let order = order.unwrap_or(&default);
        let mut acc = ComplexMatrix::identity(dim);
        for &i in order {
            let f = self.factors.get(i).ok_or(Error::IndexOutOfRange {
                index: i,
                dim: self.factors.len(),
            })?;
            acc = acc.matmul(&f.matrix(self.shape)?)?;
        }
        Ok(acc)
    }

    /// Applies the network to a `register ⊗ aux` state factor by factor,
    /// without materialising any operator.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        let dim = 2 * self.shape.dim();
        if state.dim() != dim {
            return Err(Error::DimensionMismatch {
                op: "QcpuNetwork::apply",
                left: (dim, dim),
                right: (state.dim(), 1),
            });
        }
        let mut out = state.amplitudes().to_vec();
        // Factors commute and each only reads the aux-0 branch, which no
        // factor writes, so a single pass over the input suffices.
        for f in &self.factors {
            out[2 * f.m + 1] += f.coeff * state.amplitudes()[2 * f.n];
        }
        Ok(StateVector::from_amplitudes(out))
    }
}

/// `Q(U)`: one factor for every nonzero entry of `u`, row-major.
///
/// `u` need not be unitary.
pub fn qcpu_of(u: &ComplexMatrix) -> Result<QcpuNetwork> {
    if !u.is_square() {
        return Err(Error::NotSquare {
            rows: u.rows(),
            cols: u.cols(),
        });
    }
    let shape = RegisterShape::from_dim(u.rows())?;
    let factors = u
        .nonzero_entries()
        .map(|(m, n, coeff)| QcpuFactor { m, n, coeff });
    QcpuNetwork::from_factors(shape, factors, "U")
}
