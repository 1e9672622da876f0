//! Dense complex linear algebra over small Hilbert spaces.
//!
//! Basis index `n` of a k-qubit register is read as a binary number with
//! qubit 1 as the most significant bit. When two spaces are tensored, the
//! left factor supplies the high-order part of the combined index.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Default absolute elementwise tolerance for complex comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// Largest dimension for which a single dense operator is materialised.
pub const DENSE_DIM_CAP: usize = 1 << 12;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// A k-qubit register; `dim() == 2^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RegisterShape {
    qubits: u32,
}

impl RegisterShape {
    pub fn new(qubits: u32) -> Result<Self> {
        if qubits >= usize::BITS - 1 {
            return Err(Error::InvalidConfig(format!("{qubits} qubits is too many")));
        }
        Ok(Self { qubits })
    }

    pub fn from_dim(dim: usize) -> Result<Self> {
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(dim));
        }
        Ok(Self {
            qubits: dim.trailing_zeros(),
        })
    }

    pub fn qubits(&self) -> u32 {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        1usize << self.qubits
    }
}

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "from_vec",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from real row slices. Panics on ragged input.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let cols = rows[0].len();
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|&x| C64::new(x, 0.0))
            })
            .collect();
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = e;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Option<C64> {
        (row < self.rows && col < self.cols).then(|| self.data[row * self.cols + col])
    }

    /// Iterator over `(row, col, value)` for entries that are exactly nonzero.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        let cols = self.cols;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != ZERO)
            .map(move |(i, &v)| (i / cols, i % cols, v))
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                left: self.dims(),
                right: other.dims(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        // Network operators are mostly structural zeros; skipping them keeps
        // connector chains cheap.
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == ZERO {
                    continue;
                }
                let b_row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &ComplexMatrix,
        op: &'static str,
        f: impl Fn(C64, C64) -> C64,
    ) -> Result<ComplexMatrix> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.dims(),
                right: other.dims(),
            });
        }
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, factor: C64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| a * factor).collect(),
        }
    }

    pub fn conj(&self) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.conj()).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].conj();
            }
        }
        out
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if self.cols != state.dim() {
            return Err(Error::DimensionMismatch {
                op: "apply",
                left: self.dims(),
                right: (state.dim(), 1),
            });
        }
        let amps = state.amplitudes();
        let out = self
            .data
            .chunks_exact(self.cols)
            .map(|row| row.iter().zip(amps).map(|(&a, &x)| a * x).sum())
            .collect();
        Ok(StateVector::from_amplitudes(out))
    }

    pub fn frobenius_distance(&self, other: &ComplexMatrix) -> Result<f64> {
        Ok(self
            .sub(other)?
            .data
            .iter()
            .map(|d| d.norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> Result<f64> {
        Ok(self
            .sub(other)?
            .data
            .iter()
            .map(|d| d.norm())
            .fold(0.0, f64::max))
    }

    pub fn approx_eq(&self, other: &ComplexMatrix, tol: f64) -> bool {
        self.max_abs_diff(other).is_ok_and(|d| d <= tol)
    }

    /// `max |U†U - I|`, or an error for non-square input.
    pub fn unitarity_residual(&self) -> Result<f64> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        self.dagger()
            .matmul(self)?
            .max_abs_diff(&ComplexMatrix::identity(self.rows))
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;

    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r}, {c}) out of bounds"
        );
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.data.chunks_exact(self.cols) {
            write!(f, " ")?;
            for v in row {
                write!(f, " {:+.4}{:+.4}i", v.re, v.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.data.chunks_exact(self.cols) {
            let cells: Vec<String> = row
                .iter()
                .map(|v| format!("{:+.4}{:+.4}i", v.re, v.im))
                .collect();
            writeln!(f, "{}", cells.join("  "))?;
        }
        Ok(())
    }
}

/// Kronecker product; block `(i, j)` of the result is `a[i][j] * b`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = ComplexMatrix::zeros(rows, cols);
    for (ai, aj, av) in a.nonzero_entries() {
        for bi in 0..b.rows {
            for bj in 0..b.cols {
                out.data[(ai * b.rows + bi) * cols + aj * b.cols + bj] =
                    av * b.data[bi * b.cols + bj];
            }
        }
    }
    out
}

/// Kronecker product of a sequence, left to right. Panics on an empty slice.
pub fn tensor_all(factors: &[ComplexMatrix]) -> ComplexMatrix {
    let (first, rest) = factors.split_first().expect("tensor_all needs a factor");
    rest.iter().fold(first.clone(), |acc, m| tensor(&acc, m))
}

/// `|m><n|` on a space of dimension `dim`.
pub fn outer(m: usize, n: usize, dim: usize) -> Result<ComplexMatrix> {
    for index in [m, n] {
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
    }
    let mut out = ComplexMatrix::zeros(dim, dim);
    out[(m, n)] = ONE;
    Ok(out)
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]])
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]])
}

/// `(σ1 + σ3) / √2`.
pub fn hadamard() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[FRAC_1_SQRT_2, FRAC_1_SQRT_2],
        &[FRAC_1_SQRT_2, -FRAC_1_SQRT_2],
    ])
}

/// `diag(1, e^{iθ})`.
pub fn phase_gate(theta: f64) -> ComplexMatrix {
    ComplexMatrix::diagonal(&[ONE, C64::from_polar(1.0, theta)])
}

/// `e^{2πi t/n}` with the exponent reduced modulo `n` first.
pub(crate) fn root_of_unity(t: usize, n: usize) -> C64 {
    let t = t % n;
    if t == 0 {
        return ONE;
    }
    C64::from_polar(1.0, 2.0 * PI * t as f64 / n as f64)
}

/// Discrete Fourier matrix with entry `(m, n) = e^{2πi mn/N} / √N`.
pub fn fourier_matrix(shape: RegisterShape) -> Result<ComplexMatrix> {
    let n = shape.dim();
    check_dense(n)?;
    let norm = 1.0 / (n as f64).sqrt();
    let mut out = ComplexMatrix::zeros(n, n);
    for row in 0..n {
        for col in 0..n {
            out[(row, col)] = root_of_unity(row * col, n) * norm;
        }
    }
    Ok(out)
}

/// Inverse of [`fourier_matrix`], obtained by conjugating its entries.
pub fn inverse_fourier_matrix(shape: RegisterShape) -> Result<ComplexMatrix> {
    Ok(fourier_matrix(shape)?.conj())
}

/// `gate` acting on `qubit` (1-based, most significant first) of a
/// `qubits`-qubit register, identity elsewhere.
pub fn embed_single(gate: &ComplexMatrix, qubit: u32, qubits: u32) -> Result<ComplexMatrix> {
    if qubit == 0 || qubit > qubits {
        return Err(Error::IndexOutOfRange {
            index: qubit as usize,
            dim: qubits as usize + 1,
        });
    }
    let before = ComplexMatrix::identity(1 << (qubit - 1));
    let after = ComplexMatrix::identity(1 << (qubits - qubit));
    Ok(tensor(&tensor(&before, gate), &after))
}

/// Hadamard on every qubit of the register.
pub fn hadamard_layer(shape: RegisterShape) -> Result<ComplexMatrix> {
    check_dense(shape.dim())?;
    let h = hadamard();
    Ok((0..shape.qubits()).fold(ComplexMatrix::identity(1), |acc, _| tensor(&acc, &h)))
}

pub(crate) fn check_dense(dim: usize) -> Result<()> {
    if dim > DENSE_DIM_CAP {
        return Err(Error::DenseCapExceeded {
            dim,
            cap: DENSE_DIM_CAP,
        });
    }
    Ok(())
}

/// Complex amplitude vector.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Self {
        assert!(
            !amplitudes.is_empty(),
            "state vector must have positive dimension"
        );
        Self { amplitudes }
    }

    pub fn basis(index: usize, dim: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(Self { amplitudes })
    }

    pub fn uniform(dim: usize) -> Self {
        let a = C64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Self::from_amplitudes(vec![a; dim])
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    /// Rescaled copy with unit norm; errors on the zero vector.
    pub fn normalized(&self) -> Result<StateVector> {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroProbability);
        }
        Ok(Self::from_amplitudes(
            self.amplitudes.iter().map(|a| a / norm).collect(),
        ))
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let amplitudes = self
            .amplitudes
            .iter()
            .flat_map(|&a| other.amplitudes.iter().map(move |&b| a * b))
            .collect();
        Self::from_amplitudes(amplitudes)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                op: "inner",
                left: (self.dim(), 1),
                right: (other.dim(), 1),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                op: "max_abs_diff",
                left: (self.dim(), 1),
                right: (other.dim(), 1),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}
