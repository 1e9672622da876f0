//! Order finding for Shor's factoring algorithm.
//!
//! Two routes share the same conventions. The dense route builds
//! `U = (F ⊗ I) M(u) G H` and its connector network on small registers.
//! The structured route evolves the state vector directly (uniform
//! preparation, the map `G` as a permutation of amplitudes, projection of
//! the second register, a DFT on the first) and scales to `k = 9`.
//!
//! Basis index of `|n>|s>` is `n · 2^k2 + s`.

use std::collections::BTreeMap;
use std::fmt;

use crate::algorithms::classical::{continued_fraction_period, gcd, mod_pow, PeriodFailure};
use crate::error::{Error, Result};
use crate::linalg::{
    check_dense, embed_single, fourier_matrix, hadamard, hadamard_layer, root_of_unity, tensor,
    ComplexMatrix, RegisterShape, StateVector, C64, ONE, ZERO,
};
use crate::qcpu::{
    product_compose_labeled, scalable_product_labeled, ComposedNetwork, ScalableNetwork,
};
use crate::sampling::SeededRng;

/// Probabilities below this are treated as exact zeros when enumerating
/// measurement branches.
pub const BRANCH_CUTOFF: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShorConfig {
    /// The number to factor.
    pub composite: u64,
    /// The base `a` whose order is found.
    pub base: u64,
    /// First-register qubits.
    pub k: u32,
    /// Second-register qubits.
    pub k2: u32,
}

fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

impl ShorConfig {
    /// Validates `(N_c, a)` and sizes the registers. `k` defaults to the
    /// smallest register with `2^k >= N_c²`; the second register is the
    /// smallest with `2^k2 >= N_c`.
    pub fn new(composite: u64, base: u64, k: Option<u32>) -> Result<Self> {
        if composite < 4 {
            return Err(Error::InvalidConfig(format!(
                "N = {composite} is too small to factor"
            )));
        }
        if composite > u32::MAX as u64 {
            return Err(Error::InvalidConfig(format!(
                "N = {composite} is too large"
            )));
        }
        if base <= 1 || base >= composite {
            return Err(Error::InvalidConfig(format!(
                "need 1 < a < N, got a = {base}"
            )));
        }
        let shared = gcd(base, composite);
        if shared != 1 {
            return Err(Error::InvalidConfig(format!(
                "gcd(a, N) = {shared}; {composite} = {shared} x {} without any quantum step",
                composite / shared
            )));
        }
        let k = k.unwrap_or_else(|| ceil_log2(composite * composite));
        if k == 0 || k > 20 {
            return Err(Error::InvalidConfig(format!(
                "first register of {k} qubits is out of range"
            )));
        }
        Ok(Self {
            composite,
            base,
            k,
            k2: ceil_log2(composite),
        })
    }

    pub fn with_second_register(mut self, k2: u32) -> Result<Self> {
        if k2 >= 32 || (1u64 << k2) < self.composite {
            return Err(Error::InvalidConfig(format!(
                "second register of {k2} qubits cannot hold residues mod {}",
                self.composite
            )));
        }
        self.k2 = k2;
        Ok(self)
    }

    pub fn first_dim(&self) -> usize {
        1 << self.k
    }

    pub fn second_dim(&self) -> usize {
        1 << self.k2
    }

    pub fn total_dim(&self) -> usize {
        self.first_dim() * self.second_dim()
    }

    /// `a^n mod N_c`.
    pub fn residue(&self, n: u64) -> u64 {
        mod_pow(self.base, n, self.composite)
    }

    fn index(&self, n: usize, s: usize) -> usize {
        n * self.second_dim() + s
    }

    fn dense_guard(&self) -> Result<()> {
        check_dense(self.total_dim())
    }
}

/// `G = Σ_n |n>|a^n mod N><n|<0|`; annihilates `|n>|s>` for `s ≠ 0`.
pub fn shor_g(cfg: &ShorConfig) -> Result<ComplexMatrix> {
    cfg.dense_guard()?;
    let dim = cfg.total_dim();
    let mut g = ComplexMatrix::zeros(dim, dim);
    for n in 0..cfg.first_dim() {
        let s = cfg.residue(n as u64) as usize;
        g[(cfg.index(n, s), cfg.index(n, 0))] = ONE;
    }
    Ok(g)
}

/// `H^{⊗k} ⊗ I_2`: normalised uniform preparation of the first register.
pub fn hadamard_prep(cfg: &ShorConfig) -> Result<ComplexMatrix> {
    cfg.dense_guard()?;
    let first = hadamard_layer(RegisterShape::new(cfg.k)?)?;
    Ok(tensor(&first, &ComplexMatrix::identity(cfg.second_dim())))
}

/// `M(u) = I_1 ⊗ |u><u|`.
pub fn measurement_projector(cfg: &ShorConfig, residue: u64) -> Result<ComplexMatrix> {
    cfg.dense_guard()?;
    let u = residue as usize;
    if u >= cfg.second_dim() {
        return Err(Error::IndexOutOfRange {
            index: u,
            dim: cfg.second_dim(),
        });
    }
    let mut p = ComplexMatrix::zeros(cfg.second_dim(), cfg.second_dim());
    p[(u, u)] = ONE;
    Ok(tensor(&ComplexMatrix::identity(cfg.first_dim()), &p))
}

/// `F ⊗ I_2`.
pub fn fourier_on_first(cfg: &ShorConfig) -> Result<ComplexMatrix> {
    cfg.dense_guard()?;
    let f = fourier_matrix(RegisterShape::new(cfg.k)?)?;
    Ok(tensor(&f, &ComplexMatrix::identity(cfg.second_dim())))
}

/// The literal product `(F ⊗ I_2) M(u) G H`.
pub fn shor_u(cfg: &ShorConfig, residue: u64) -> Result<ComplexMatrix> {
    fourier_on_first(cfg)?
        .matmul(&measurement_projector(cfg, residue)?)?
        .matmul(&shor_g(cfg)?)?
        .matmul(&hadamard_prep(cfg)?)
}

/// The preparation network as a connector chain over single-qubit
/// Hadamards `H_j ⊗ I_2` on the first register.
pub fn shor_hadamard_chain(cfg: &ShorConfig) -> Result<ComposedNetwork> {
    cfg.dense_guard()?;
    let id2 = ComplexMatrix::identity(cfg.second_dim());
    let operands = (1..=cfg.k)
        .map(|j| {
            let hj = embed_single(&hadamard(), j, cfg.k)?;
            Ok((format!("H{j}⊗I2"), tensor(&hj, &id2)))
        })
        .collect::<Result<Vec<_>>>()?;
    product_compose_labeled(&operands)
}

/// The whole network in fully multiplicative form, with the preparation
/// block taken from [`shor_hadamard_chain`].
pub fn shor_network(cfg: &ShorConfig, residue: u64) -> Result<ScalableNetwork> {
    let prep = shor_hadamard_chain(cfg)?.register_block();
    let operands = vec![
        ("F⊗I2".to_string(), fourier_on_first(cfg)?),
        (
            format!("M({residue})"),
            measurement_projector(cfg, residue)?,
        ),
        ("G".to_string(), shor_g(cfg)?),
        ("H".to_string(), prep),
    ];
    scalable_product_labeled(&operands)
}

// ---------------------------------------------------------------------------
// Structured route
// ---------------------------------------------------------------------------

/// `G H |0>|0>` = `Σ_n |n>|a^n mod N> / √2^k` without any dense operator.
pub fn prepare_and_map(cfg: &ShorConfig) -> StateVector {
    let mut amps = vec![ZERO; cfg.total_dim()];
    let a = C64::new(1.0 / (cfg.first_dim() as f64).sqrt(), 0.0);
    for n in 0..cfg.first_dim() {
        amps[cfg.index(n, cfg.residue(n as u64) as usize)] = a;
    }
    StateVector::from_amplitudes(amps)
}

/// Marginal distribution of the second register.
pub fn second_register_distribution(cfg: &ShorConfig, state: &StateVector) -> Vec<f64> {
    let mut probs = vec![0.0; cfg.second_dim()];
    for (i, a) in state.amplitudes().iter().enumerate() {
        probs[i % cfg.second_dim()] += a.norm_sqr();
    }
    probs
}

/// Marginal distribution of the first register.
pub fn first_register_distribution(cfg: &ShorConfig, state: &StateVector) -> Vec<f64> {
    let mut probs = vec![0.0; cfg.first_dim()];
    for (i, a) in state.amplitudes().iter().enumerate() {
        probs[i / cfg.second_dim()] += a.norm_sqr();
    }
    probs
}

/// `(I ⊗ |u><u|) state`, not renormalised.
pub fn project_second_register(
    cfg: &ShorConfig,
    state: &StateVector,
    residue: u64,
) -> Result<StateVector> {
    let u = residue as usize;
    if u >= cfg.second_dim() {
        return Err(Error::IndexOutOfRange {
            index: u,
            dim: cfg.second_dim(),
        });
    }
    if state.dim() != cfg.total_dim() {
        return Err(Error::DimensionMismatch {
            op: "project_second_register",
            left: (cfg.total_dim(), 1),
            right: (state.dim(), 1),
        });
    }
    let amps = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, &a)| if i % cfg.second_dim() == u { a } else { ZERO })
        .collect();
    Ok(StateVector::from_amplitudes(amps))
}

/// Projects the second register onto `residue` and renormalises.
/// Returns the post-measurement state and the outcome probability.
pub fn shor_measure_second(
    cfg: &ShorConfig,
    state: &StateVector,
    residue: u64,
) -> Result<(StateVector, f64)> {
    let projected = project_second_register(cfg, state, residue)?;
    let p = projected.norm_sqr();
    if p == 0.0 {
        return Err(Error::ZeroProbability);
    }
    Ok((projected.normalized()?, p))
}

/// `(F ⊗ I) state`, as one DFT of length `2^k` per occupied second-register
/// value.
pub fn apply_first_register_qft(cfg: &ShorConfig, state: &StateVector) -> StateVector {
    let q = cfg.first_dim();
    let sd = cfg.second_dim();
    let norm = 1.0 / (q as f64).sqrt();
    let twiddles: Vec<C64> = (0..q).map(|t| root_of_unity(t, q)).collect();
    let amps = state.amplitudes();
    let mut out = vec![ZERO; state.dim()];
    for s in 0..sd {
        let support: Vec<(usize, C64)> = (0..q)
            .map(|n| (n, amps[n * sd + s]))
            .filter(|(_, a)| *a != ZERO)
            .collect();
        if support.is_empty() {
            continue;
        }
        for y in 0..q {
            let acc: C64 = support
                .iter()
                .map(|&(n, a)| twiddles[(y * n) % q] * a)
                .sum();
            out[y * sd + s] = acc * norm;
        }
    }
    StateVector::from_amplitudes(out)
}

/// `U |0>|0>` computed along the structured route; the dense counterpart is
/// column 0 of [`shor_u`].
pub fn structured_shor_column(cfg: &ShorConfig, residue: u64) -> Result<StateVector> {
    let projected = project_second_register(cfg, &prepare_and_map(cfg), residue)?;
    Ok(apply_first_register_qft(cfg, &projected))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShorFailure {
    Period(PeriodFailure),
    OddPeriod(u64),
    /// `a^{r/2} ≡ -1 (mod N_c)`.
    HalfPowerIsMinusOne(u64),
    TrivialGcd(u64),
}

impl fmt::Display for ShorFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShorFailure::Period(p) => write!(f, "period not found: {p}"),
            ShorFailure::OddPeriod(r) => write!(f, "odd period r={r}"),
            ShorFailure::HalfPowerIsMinusOne(_) => f.write_str("a^{r/2}≡−1"),
            ShorFailure::TrivialGcd(r) => write!(f, "trivial gcd for r={r}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShorOutcome {
    /// Two nontrivial factors, smaller first; their product is `N_c`.
    Factors(u64, u64),
    Failure(ShorFailure),
}

impl ShorOutcome {
    pub fn factors(&self) -> Option<(u64, u64)> {
        match self {
            ShorOutcome::Factors(p, q) => Some((*p, *q)),
            ShorOutcome::Failure(_) => None,
        }
    }

    pub fn is_success(&self) -> bool {
        matches!(self, ShorOutcome::Factors(..))
    }
}

/// Classical tail: from a period `r`, `gcd(a^{r/2} ± 1, N_c)`.
pub fn factors_from_period(base: u64, r: u64, composite: u64) -> ShorOutcome {
    if r % 2 == 1 {
        return ShorOutcome::Failure(ShorFailure::OddPeriod(r));
    }
    let half = mod_pow(base, r / 2, composite);
    if half == composite - 1 {
        return ShorOutcome::Failure(ShorFailure::HalfPowerIsMinusOne(r));
    }
    for candidate in [
        gcd(half + composite - 1, composite),
        gcd(half + 1, composite),
    ] {
        if candidate != 1 && candidate != composite {
            let other = composite / candidate;
            return ShorOutcome::Factors(candidate.min(other), candidate.max(other));
        }
    }
    ShorOutcome::Failure(ShorFailure::TrivialGcd(r))
}

/// Period recovery and factor extraction for one sampled peak.
pub fn outcome_for_peak(
    cfg: &ShorConfig,
    y: u64,
) -> (std::result::Result<u64, PeriodFailure>, ShorOutcome) {
    let period = continued_fraction_period(y, cfg.first_dim() as u64, cfg.composite, cfg.base);
    let outcome = match &period {
        Ok(r) => factors_from_period(cfg.base, *r, cfg.composite),
        Err(e) => ShorOutcome::Failure(ShorFailure::Period(e.clone())),
    };
    (period, outcome)
}

#[derive(Clone, Debug)]
pub struct ShorRun {
    pub config: ShorConfig,
    pub seed: u64,
    /// Distribution of the second-register measurement, by residue.
    pub residue_distribution: BTreeMap<u64, f64>,
    pub measured_residue: u64,
    pub residue_probability: f64,
    pub post_measure_state: StateVector,
    /// Distribution of the first register after the Fourier step.
    pub dft_distribution: Vec<f64>,
    pub sampled_y: u64,
    pub period: std::result::Result<u64, PeriodFailure>,
    pub outcome: ShorOutcome,
}

impl ShorRun {
    /// First-register values carrying amplitude after the residue
    /// measurement.
    pub fn post_measure_support(&self) -> Vec<u64> {
        support_of(&self.config, &self.post_measure_state)
    }
}

fn support_of(cfg: &ShorConfig, state: &StateVector) -> Vec<u64> {
    first_register_distribution(cfg, state)
        .iter()
        .enumerate()
        .filter(|(_, p)| **p > 0.0)
        .map(|(n, _)| n as u64)
        .collect()
}

fn nonzero_residues(probs: &[f64]) -> BTreeMap<u64, f64> {
    probs
        .iter()
        .enumerate()
        .filter(|(_, p)| **p > 0.0)
        .map(|(u, p)| (u as u64, *p))
        .collect()
}

/// One full sampled run along the structured route.
pub fn run_shor(cfg: &ShorConfig, seed: u64) -> Result<ShorRun> {
    let mut rng = SeededRng::new(seed);
    let mapped = prepare_and_map(cfg);
    let residue_probs = second_register_distribution(cfg, &mapped);
    let measured_residue = rng.sample_index(&residue_probs) as u64;
    let (post_measure_state, residue_probability) =
        shor_measure_second(cfg, &mapped, measured_residue)?;
    let transformed = apply_first_register_qft(cfg, &post_measure_state);
    let dft_distribution = first_register_distribution(cfg, &transformed);
    let sampled_y = rng.sample_index(&dft_distribution) as u64;
    let (period, outcome) = outcome_for_peak(cfg, sampled_y);
    Ok(ShorRun {
        config: *cfg,
        seed,
        residue_distribution: nonzero_residues(&residue_probs),
        measured_residue,
        residue_probability,
        post_measure_state,
        dft_distribution,
        sampled_y,
        period,
        outcome,
    })
}

#[derive(Clone, Debug)]
pub struct ShorBranch {
    pub residue: u64,
    pub y: u64,
    /// Joint probability of `(residue, y)`.
    pub probability: f64,
    pub outcome: ShorOutcome,
}

#[derive(Clone, Debug)]
pub struct ShorBranchAnalysis {
    pub branches: Vec<ShorBranch>,
    /// For each residue: its probability, its first-register support, and
    /// the conditional distribution of `y`.
    pub residues: Vec<(u64, f64, Vec<u64>, Vec<f64>)>,
    pub success_probability: f64,
    pub total_probability: f64,
}

/// Enumerates every measurement branch `(u, y)` with probability above
/// [`BRANCH_CUTOFF`] and the classical outcome of each.
pub fn shor_branches(cfg: &ShorConfig) -> Result<ShorBranchAnalysis> {
    let mapped = prepare_and_map(cfg);
    let residue_probs = second_register_distribution(cfg, &mapped);
    let mut branches = Vec::new();
    let mut residues = Vec::new();
    for (u, p_u) in nonzero_residues(&residue_probs) {
        let (post, _) = shor_measure_second(cfg, &mapped, u)?;
        let dist = first_register_distribution(cfg, &apply_first_register_qft(cfg, &post));
        for (y, p_y) in dist.iter().enumerate() {
            if *p_y <= BRANCH_CUTOFF {
                continue;
            }
            let (_, outcome) = outcome_for_peak(cfg, y as u64);
            branches.push(ShorBranch {
                residue: u,
                y: y as u64,
                probability: p_u * p_y,
                outcome,
            });
        }
        residues.push((u, p_u, support_of(cfg, &post), dist));
    }
    let success_probability = branches
        .iter()
        .filter(|b| b.outcome.is_success())
        .map(|b| b.probability)
        .sum();
    let total_probability = branches.iter().map(|b| b.probability).sum();
    Ok(ShorBranchAnalysis {
        branches,
        residues,
        success_probability,
        total_probability,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: u64, a: u64, k: u32) -> ShorConfig {
        ShorConfig::new(n, a, Some(k)).unwrap()
    }

    #[test]
    fn config_validation() {
        let c = ShorConfig::new(15, 7, None).unwrap();
        assert_eq!((c.k, c.k2), (8, 4));
        assert_eq!(ShorConfig::new(21, 2, None).unwrap().k, 9);
        assert!(ShorConfig::new(15, 5, None).is_err());
        assert!(ShorConfig::new(15, 1, None).is_err());
        assert!(ShorConfig::new(3, 2, None).is_err());
        assert!(c.with_second_register(3).is_err());
    }

    #[test]
    fn g_maps_zero_slice() {
        let c = cfg(15, 7, 2);
        let g = shor_g(&c).unwrap();
        for (n, s) in [(0, 1), (1, 7), (2, 4), (3, 13)] {
            let out = g.apply(&StateVector::basis(n * 16, 64).unwrap()).unwrap();
            assert_eq!(out, StateVector::basis(n * 16 + s, 64).unwrap());
        }
        for n in 0..4 {
            let out = g
                .apply(&StateVector::basis(n * 16 + 5, 64).unwrap())
                .unwrap();
            assert_eq!(out.norm_sqr(), 0.0);
        }
    }

    #[test]
    fn measurement_support_is_progression() {
        let c = cfg(15, 7, 8);
        let mapped = prepare_and_map(&c);
        let (post, p) = shor_measure_second(&c, &mapped, 7).unwrap();
        assert!((p - 0.25).abs() < 1e-12);
        assert!(post.is_normalized(1e-12));
        let support = support_of(&c, &post);
        assert_eq!(support, (0..64).map(|j| 1 + 4 * j).collect::<Vec<u64>>());
        assert!(matches!(
            shor_measure_second(&c, &mapped, 6),
            Err(Error::ZeroProbability)
        ));
    }

    #[test]
    fn factors_from_known_periods() {
        assert_eq!(factors_from_period(7, 4, 15), ShorOutcome::Factors(3, 5));
        assert_eq!(factors_from_period(2, 6, 21), ShorOutcome::Factors(3, 7));
        assert_eq!(
            factors_from_period(14, 2, 15),
            ShorOutcome::Failure(ShorFailure::HalfPowerIsMinusOne(2))
        );
        assert_eq!(
            factors_from_period(7, 3, 15),
            ShorOutcome::Failure(ShorFailure::OddPeriod(3))
        );
        assert_eq!(
            ShorFailure::HalfPowerIsMinusOne(2).to_string(),
            "a^{r/2}≡−1"
        );
    }

    #[test]
    fn run_is_reproducible() {
        let c = cfg(15, 7, 8);
        let a = run_shor(&c, 42).unwrap();
        let b = run_shor(&c, 42).unwrap();
        assert_eq!(
            (a.measured_residue, a.sampled_y),
            (b.measured_residue, b.sampled_y)
        );
        assert!((a.dft_distribution.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn base_fourteen_always_fails() {
        let c = cfg(15, 14, 8);
        let analysis = shor_branches(&c).unwrap();
        assert_eq!(analysis.success_probability, 0.0);
        assert!(analysis
            .branches
            .iter()
            .any(|b| b.outcome == ShorOutcome::Failure(ShorFailure::HalfPowerIsMinusOne(2))));
    }

    #[test]
    fn small_network_matches_literal_product() {
        let c = cfg(15, 7, 2);
        let net = shor_network(&c, 4).unwrap();
        let u = shor_u(&c, 4).unwrap();
        assert!(net.register_block().max_abs_diff(&u).unwrap() <= 1e-12);
        assert_eq!(net.block_count(), 4);
    }

    #[test]
    fn hadamard_chain_block() {
        let c = cfg(15, 7, 2);
        let chain = shor_hadamard_chain(&c).unwrap();
        let want = hadamard_prep(&c).unwrap();
        assert!(chain.register_block().max_abs_diff(&want).unwrap() <= 1e-12);
        let id = ComplexMatrix::identity(chain.operator.rows());
        let expected = id
            .add(&tensor(&want, &crate::qcpu::AuxiliaryAlgebra::new().c_dag))
            .unwrap();
        assert!(chain.operator.max_abs_diff(&expected).unwrap() <= 1e-12);
    }
}
