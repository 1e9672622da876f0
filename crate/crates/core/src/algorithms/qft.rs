//! Quantum Fourier transform as a sum of rank-one product-state terms.
//!
//! Column `n` of the Fourier matrix is the product state
//! `⊗_w (|0> + e^{iφ_w}|1>)/√2` with `φ_w = 2π n 2^w / N` for the qubit of
//! binary weight `2^w`. Each column therefore equals `B(n) H^{⊗k} |0><n|`,
//! where `B(n)` is a layer of phase gates. Summing the columns gives `F`,
//! and the sum rule turns that sum into a product of networks.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{
    check_dense, hadamard, outer, phase_gate, tensor_all, ComplexMatrix, RegisterShape,
};
use crate::qcpu::{qcpu_of, sum_compose, QcpuNetwork};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QftConfig {
    pub shape: RegisterShape,
}

impl QftConfig {
    pub fn new(qubits: u32) -> Result<Self> {
        if qubits == 0 {
            return Err(Error::InvalidConfig(
                "the Fourier register needs k >= 1".into(),
            ));
        }
        let shape = RegisterShape::new(qubits)?;
        check_dense(shape.dim())?;
        Ok(Self { shape })
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }
}

/// Denominator used in the per-qubit phase angles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhaseConvention {
    /// `2π n 2^w / 2^k`; reproduces the Fourier matrix.
    PowerOfTwo,
    /// `2π n 2^w / (2^k - 1)`. Does not reproduce it; kept so the
    /// mismatch can be shown.
    PowerOfTwoMinusOne,
}

/// Phase angle of the qubit with binary weight `2^weight` in column `n`.
pub fn phase_angle(n: usize, weight: u32, k: u32, convention: PhaseConvention) -> f64 {
    let dim = 1usize << k;
    match convention {
        // Reducing n·2^w mod 2^k first keeps the angle small and exact.
        PhaseConvention::PowerOfTwo => 2.0 * PI * ((n << weight) % dim) as f64 / dim as f64,
        PhaseConvention::PowerOfTwoMinusOne => {
            2.0 * PI * (n as f64) * f64::from(1u32 << weight) / (dim - 1) as f64
        }
    }
}

/// `B(n) H^{⊗k}`: Hadamard then a phase gate on every qubit, tensored with
/// the most significant qubit first.
pub fn phased_hadamard_layer(n: usize, k: u32, convention: PhaseConvention) -> ComplexMatrix {
    let h = hadamard();
    let gates: Vec<ComplexMatrix> = (0..k)
        .rev()
        .map(|weight| {
            phase_gate(phase_angle(n, weight, k, convention))
                .matmul(&h)
                .expect("2x2")
        })
        .collect();
    tensor_all(&gates)
}

/// The rank-one terms `(n, B(n) H |0><n|)` for `n = 0..N`.
pub fn qft_factorization(cfg: QftConfig) -> Vec<(usize, ComplexMatrix)> {
    qft_factorization_with(cfg, PhaseConvention::PowerOfTwo)
}

pub fn qft_factorization_with(
    cfg: QftConfig,
    convention: PhaseConvention,
) -> Vec<(usize, ComplexMatrix)> {
    let k = cfg.shape.qubits();
    let dim = cfg.dim();
    (0..dim)
        .map(|n| {
            let select = outer(0, n, dim).expect("n < dim");
            let term = phased_hadamard_layer(n, k, convention)
                .matmul(&select)
                .expect("square");
            (n, term)
        })
        .collect()
}

/// Sum of the factorization terms.
pub fn factorization_sum(terms: &[(usize, ComplexMatrix)]) -> Result<ComplexMatrix> {
    let (_, first) = terms.first().ok_or(Error::EmptyProduct)?;
    terms
        .iter()
        .skip(1)
        .try_fold(first.clone(), |acc, (_, t)| acc.add(t))
}

/// `Q(F) = ∏_n Q[B(n) H M_0n]`, assembled with the sum rule.
pub fn qft_network(cfg: QftConfig) -> Result<QcpuNetwork> {
    let parts = qft_factorization(cfg)
        .into_iter()
        .map(|(n, term)| Ok(qcpu_of(&term)?.with_label(format!("B({n})H M0{n}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(sum_compose(&parts)?.with_label(format!("F{}", cfg.dim())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{fourier_matrix, StateVector, C64};
    use crate::qcpu::nilpotent_exp;

    #[test]
    fn one_qubit_terms_sum_to_hadamard() {
        let cfg = QftConfig::new(1).unwrap();
        let terms = qft_factorization(cfg);
        assert_eq!(terms.len(), 2);
        assert!(factorization_sum(&terms)
            .unwrap()
            .approx_eq(&hadamard(), 1e-15));
    }

    #[test]
    fn two_qubit_column_one() {
        let cfg = QftConfig::new(2).unwrap();
        let (_, term) = &qft_factorization(cfg)[1];
        let col = term.apply(&StateVector::basis(1, 4).unwrap()).unwrap();
        let want = StateVector::from_amplitudes(vec![
            C64::new(0.5, 0.0),
            C64::new(0.0, 0.5),
            C64::new(-0.5, 0.0),
            C64::new(0.0, -0.5),
        ]);
        assert!(col.max_abs_diff(&want).unwrap() < 1e-15);
    }

    #[test]
    fn terms_sum_to_fourier_matrix() {
        for k in 1..=4 {
            let cfg = QftConfig::new(k).unwrap();
            let sum = factorization_sum(&qft_factorization(cfg)).unwrap();
            let f = fourier_matrix(cfg.shape).unwrap();
            assert!(sum.max_abs_diff(&f).unwrap() <= 1e-12, "k={k}");
        }
    }

    #[test]
    fn minus_one_denominator_fails() {
        for k in 1..=4 {
            let cfg = QftConfig::new(k).unwrap();
            let sum = factorization_sum(&qft_factorization_with(
                cfg,
                PhaseConvention::PowerOfTwoMinusOne,
            ))
            .unwrap();
            let f = fourier_matrix(cfg.shape).unwrap();
            assert!(sum.max_abs_diff(&f).unwrap() > 1e-3, "k={k}");
        }
    }

    #[test]
    fn network_closed_forms() {
        let h = qft_network(QftConfig::new(1).unwrap()).unwrap();
        assert!(h
            .closed_form()
            .unwrap()
            .approx_eq(&nilpotent_exp(&hadamard()), 1e-15));

        let cfg = QftConfig::new(3).unwrap();
        let direct = qcpu_of(&fourier_matrix(cfg.shape).unwrap()).unwrap();
        let composed = qft_network(cfg).unwrap();
        assert!(composed
            .closed_form()
            .unwrap()
            .approx_eq(&direct.closed_form().unwrap(), 1e-12));
        assert!(composed.matrix().unitarity_residual().unwrap() <= 1e-12);
    }

    #[test]
    fn rejects_empty_register() {
        assert!(QftConfig::new(0).is_err());
    }
}
