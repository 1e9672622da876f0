//! Grover search as one connector-chained network.
//!
//! One iteration is `R1 R2` with the oracle reflection `R2 = I - 2|j><j|`
//! and the diffusion `R1 = F⁻¹ R0 F`, `R0 = 2|0><0| - I`. The network
//! chains `[F⁻¹, R0, F, R2] × t` followed by the uniform preparation.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{
    fourier_matrix, hadamard_layer, inverse_fourier_matrix, outer, ComplexMatrix, RegisterShape,
    StateVector, C64, ONE,
};
use crate::qcpu::{
    nilpotent_exp, postselect_aux, product_compose_labeled, qcpu_of, ComposedNetwork,
    COMPOSE_DIM_CAP,
};
use crate::sampling::SeededRng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroverConfig {
    pub shape: RegisterShape,
    pub target: usize,
    pub iterations: usize,
}

/// `⌊(π/4) √N⌋`.
pub fn default_iterations(shape: RegisterShape) -> usize {
    (PI / 4.0 * (shape.dim() as f64).sqrt()).floor() as usize
}

impl GroverConfig {
    pub fn new(qubits: u32, target: usize) -> Result<Self> {
        if qubits == 0 {
            return Err(Error::InvalidConfig(
                "the search register needs k >= 1".into(),
            ));
        }
        let shape = RegisterShape::new(qubits)?;
        if target >= shape.dim() {
            return Err(Error::IndexOutOfRange {
                index: target,
                dim: shape.dim(),
            });
        }
        Ok(Self {
            shape,
            target,
            iterations: default_iterations(shape),
        })
    }

    pub fn with_iterations(mut self, iterations: usize) -> Self {
        self.iterations = iterations;
        self
    }
}

/// `R0 = 2|0><0| - I`.
pub fn grover_r0(shape: RegisterShape) -> ComplexMatrix {
    let mut diag = vec![-ONE; shape.dim()];
    diag[0] = ONE;
    ComplexMatrix::diagonal(&diag)
}

/// `R2 = I - 2|j><j|`.
pub fn grover_r2(shape: RegisterShape, target: usize) -> Result<ComplexMatrix> {
    if target >= shape.dim() {
        return Err(Error::IndexOutOfRange {
            index: target,
            dim: shape.dim(),
        });
    }
    let mut diag = vec![ONE; shape.dim()];
    diag[target] = -ONE;
    Ok(ComplexMatrix::diagonal(&diag))
}

/// `exp{2|0><0| ⊗ c_dag} · exp{-I ⊗ c_dag}`, which equals `Q(R0)`.
pub fn grover_qcpu_r0(shape: RegisterShape) -> Result<ComplexMatrix> {
    let dim = shape.dim();
    let first = nilpotent_exp(&outer(0, 0, dim)?.scale(C64::new(2.0, 0.0)));
    let second = nilpotent_exp(&ComplexMatrix::identity(dim).scale(-ONE));
    first.matmul(&second)
}

/// `exp{-2|j><j| ⊗ c_dag} · exp{I ⊗ c_dag}`, which equals `Q(R2)`.
pub fn grover_qcpu_r2(shape: RegisterShape, target: usize) -> Result<ComplexMatrix> {
    let dim = shape.dim();
    let first = nilpotent_exp(&outer(target, target, dim)?.scale(C64::new(-2.0, 0.0)));
    let second = nilpotent_exp(&ComplexMatrix::identity(dim));
    first.matmul(&second)
}

/// The same chain with an extra leading `Q(I_R)`. By the sum rule this is
/// `Q(2I - 2|j><j|)`, i.e. the register block is shifted by `+I`.
pub fn grover_qcpu_r2_with_leading_identity(
    shape: RegisterShape,
    target: usize,
) -> Result<ComplexMatrix> {
    let q_identity = qcpu_of(&ComplexMatrix::identity(shape.dim()))?.closed_form()?;
    q_identity.matmul(&grover_qcpu_r2(shape, target)?)
}

/// Operands in written order: `t` copies of `[F⁻¹, R0, F, R2]`, then `H`.
pub fn grover_operands(cfg: &GroverConfig) -> Result<Vec<(String, ComplexMatrix)>> {
    let f = fourier_matrix(cfg.shape)?;
    let f_inv = inverse_fourier_matrix(cfg.shape)?;
    let r0 = grover_r0(cfg.shape);
    let r2 = grover_r2(cfg.shape, cfg.target)?;
    let mut operands = Vec::with_capacity(4 * cfg.iterations + 1);
    for _ in 0..cfg.iterations {
        operands.push(("F⁻¹".to_string(), f_inv.clone()));
        operands.push(("R0".to_string(), r0.clone()));
        operands.push(("F".to_string(), f.clone()));
        operands.push(("R2".to_string(), r2.clone()));
    }
    operands.push(("H".to_string(), hadamard_layer(cfg.shape)?));
    Ok(operands)
}

pub fn grover_network(cfg: &GroverConfig) -> Result<ComposedNetwork> {
    let dim = 2 * cfg.shape.dim();
    if dim > COMPOSE_DIM_CAP {
        return Err(Error::DenseCapExceeded {
            dim,
            cap: COMPOSE_DIM_CAP,
        });
    }
    product_compose_labeled(&grover_operands(cfg)?)
}

#[derive(Clone, Debug)]
pub struct GroverRun {
    pub config: GroverConfig,
    pub seed: u64,
    pub register_state: StateVector,
    pub aux_weight: f64,
    pub distribution: Vec<f64>,
    pub sampled: usize,
}

impl GroverRun {
    pub fn success_probability(&self) -> f64 {
        self.distribution[self.config.target]
    }
}

/// Builds the network, runs it on `|0> ⊗ |0>_A`, keeps the aux-1 branch
/// and samples one register measurement.
pub fn run_grover(cfg: &GroverConfig, seed: u64) -> Result<GroverRun> {
    let network = grover_network(cfg)?;
    let prepared = StateVector::basis(0, 2 * cfg.shape.dim())?;
    let after = network.operator.apply(&prepared)?;
    let (register_state, aux_weight) = postselect_aux(&after, 1)?;
    let distribution = register_state.probabilities();
    let sampled = SeededRng::new(seed).sample_index(&distribution);
    Ok(GroverRun {
        config: *cfg,
        seed,
        register_state,
        aux_weight,
        distribution,
        sampled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(k: u32) -> RegisterShape {
        RegisterShape::new(k).unwrap()
    }

    #[test]
    fn reflections() {
        assert_eq!(grover_r0(shape(1)), ComplexMatrix::diagonal(&[ONE, -ONE]));
        assert_eq!(
            grover_r2(shape(2), 3).unwrap(),
            ComplexMatrix::diagonal(&[ONE, ONE, ONE, -ONE])
        );
        let id = ComplexMatrix::identity(8);
        let r0 = grover_r0(shape(3));
        let r2 = grover_r2(shape(3), 5).unwrap();
        assert_eq!(r0.matmul(&r0).unwrap(), id);
        assert_eq!(r2.matmul(&r2).unwrap(), id);
        assert!(grover_r2(shape(2), 4).is_err());
    }

    #[test]
    fn exponential_chains() {
        let s = shape(1);
        assert_eq!(
            grover_qcpu_r0(s).unwrap(),
            qcpu_of(&ComplexMatrix::diagonal(&[ONE, -ONE]))
                .unwrap()
                .closed_form()
                .unwrap()
        );
        let s = shape(2);
        let q_r2 = qcpu_of(&grover_r2(s, 1).unwrap())
            .unwrap()
            .closed_form()
            .unwrap();
        assert_eq!(grover_qcpu_r2(s, 1).unwrap(), q_r2);

        let shifted = grover_r2(s, 1)
            .unwrap()
            .add(&ComplexMatrix::identity(4))
            .unwrap();
        let literal = grover_qcpu_r2_with_leading_identity(s, 1).unwrap();
        assert_eq!(literal, nilpotent_exp(&shifted));
    }

    #[test]
    fn two_qubit_search_is_exact() {
        for target in 0..4 {
            let cfg = GroverConfig::new(2, target).unwrap();
            assert_eq!(cfg.iterations, 1);
            let run = run_grover(&cfg, 9).unwrap();
            assert!((run.success_probability() - 1.0).abs() <= 1e-12);
            assert_eq!(run.sampled, target);
        }
    }

    #[test]
    fn zero_iterations_is_uniform() {
        let cfg = GroverConfig::new(3, 5).unwrap().with_iterations(0);
        let run = run_grover(&cfg, 1).unwrap();
        for p in &run.distribution {
            assert!((p - 0.125).abs() <= 1e-12);
        }
    }

    #[test]
    fn network_trace_shape() {
        let cfg = GroverConfig::new(2, 2).unwrap().with_iterations(2);
        let net = grover_network(&cfg).unwrap();
        assert_eq!(net.block_count(), 9);
    }

    #[test]
    fn large_register_hits_cap() {
        let cfg = GroverConfig::new(10, 3).unwrap();
        assert!(matches!(
            grover_network(&cfg),
            Err(Error::DenseCapExceeded { .. })
        ));
    }
}
