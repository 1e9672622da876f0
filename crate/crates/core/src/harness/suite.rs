//! Named verification suites over the network identities and algorithms.
//!
//! Every check compares a residual with a declared tolerance, written as a
//! multiple of the suite's base `tolerance` (default `1e-12`), so changing
//! the base rescales all of them proportionally.
//! Exact checks (tolerance zero) and expected-failure checks are never
//! rescaled. Each random case draws from its own stream,
//! `SeededRng::for_case(seed, case_index)`.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use crate::algorithms::deutsch::{
    deutsch_u, deutsch_u_tensor_sum, deutsch_v, run_deutsch, DeutschFunction,
};
use crate::algorithms::grover::{
    grover_network, grover_qcpu_r0, grover_qcpu_r2, grover_qcpu_r2_with_leading_identity,
    grover_r0, grover_r2, run_grover, GroverConfig,
};
use crate::algorithms::qft::{
    factorization_sum, qft_factorization, qft_factorization_with, qft_network, PhaseConvention,
    QftConfig,
};
use crate::algorithms::shor::{
    hadamard_prep, run_shor, shor_branches, shor_hadamard_chain, shor_network, shor_u,
    structured_shor_column, ShorConfig, ShorOutcome,
};
use crate::error::{Error, Result};
use crate::harness::random::{on_aux_branch, random_matrix, random_state, random_unitary};
use crate::harness::report::amplification_formula;
use crate::linalg::{
    fourier_matrix, hadamard_layer, inverse_fourier_matrix, ComplexMatrix, RegisterShape,
    StateVector, DEFAULT_TOLERANCE,
};
use crate::qcpu::{
    aux_block, nilpotent_exp, product_compose, qcpu_of, scalable_product, sum_compose,
    AuxiliaryAlgebra,
};
use crate::sampling::SeededRng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteName {
    QcpuCore,
    Deutsch,
    Qft,
    Shor,
    Grover,
    All,
}

impl SuiteName {
    pub const EACH: [SuiteName; 5] = [
        SuiteName::QcpuCore,
        SuiteName::Deutsch,
        SuiteName::Qft,
        SuiteName::Shor,
        SuiteName::Grover,
    ];
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qcpu-core" => Ok(SuiteName::QcpuCore),
            "deutsch" => Ok(SuiteName::Deutsch),
            "qft" => Ok(SuiteName::Qft),
            "shor" => Ok(SuiteName::Shor),
            "grover" => Ok(SuiteName::Grover),
            "all" => Ok(SuiteName::All),
            other => Err(Error::UnknownSuite(other.to_string())),
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuiteName::QcpuCore => "qcpu-core",
            SuiteName::Deutsch => "deutsch",
            SuiteName::Qft => "qft",
            SuiteName::Shor => "shor",
            SuiteName::Grover => "grover",
            SuiteName::All => "all",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOptions {
    pub trials: usize,
    pub seed: u64,
    /// Absolute base tolerance; `1e-12` leaves declared tolerances as is.
    pub tolerance: f64,
    /// Overrides the default register sizes of the qcpu-core, qft and
    /// grover suites.
    pub k_range: Option<RangeInclusive<u32>>,
    /// Flips one factor coefficient in the qcpu-core suite so the harness
    /// can show that it catches a broken network.
    pub inject_fault: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            trials: 10,
            seed: 0,
            tolerance: DEFAULT_TOLERANCE,
            k_range: None,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteFailure {
    pub case_id: String,
    pub residual: f64,
    pub tolerance: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteResult {
    pub suite: String,
    pub cases_run: usize,
    pub failures: Vec<SuiteFailure>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Collects check outcomes for one suite run.
struct Recorder {
    /// Absolute tolerance that a declared multiplier of 1 stands for.
    base: f64,
    cases_run: usize,
    failures: Vec<SuiteFailure>,
}

impl Recorder {
    fn new(opts: &SuiteOptions) -> Self {
        Self {
            base: opts.tolerance,
            cases_run: 0,
            failures: Vec::new(),
        }
    }

    /// Passes when `residual <= declared · base`.
    fn within(&mut self, case_id: impl Into<String>, residual: f64, declared: f64) {
        let tolerance = declared * self.base;
        self.cases_run += 1;
        if residual.is_nan() || residual > tolerance {
            self.failures.push(SuiteFailure {
                case_id: case_id.into(),
                residual,
                tolerance,
            });
        }
    }

    /// Passes when the residual is exactly zero.
    fn exact(&mut self, case_id: impl Into<String>, residual: f64) {
        self.cases_run += 1;
        if residual != 0.0 {
            self.failures.push(SuiteFailure {
                case_id: case_id.into(),
                residual,
                tolerance: 0.0,
            });
        }
    }

    /// Passes when the residual is strictly above `threshold`.
    fn exceeds(&mut self, case_id: impl Into<String>, residual: f64, threshold: f64) {
        self.cases_run += 1;
        if residual.is_nan() || residual <= threshold {
            self.failures.push(SuiteFailure {
                case_id: case_id.into(),
                residual,
                tolerance: threshold,
            });
        }
    }

    /// Runs a fallible check; an error counts as a failure with an
    /// infinite residual.
    fn attempt(&mut self, case_id: &str, f: impl FnOnce(&mut Self) -> Result<()>) {
        if f(self).is_err() {
            self.cases_run += 1;
            self.failures.push(SuiteFailure {
                case_id: format!("{case_id}/error"),
                residual: f64::INFINITY,
                tolerance: 0.0,
            });
        }
    }
}

fn shape(k: u32) -> RegisterShape {
    RegisterShape::new(k).expect("small register")
}

fn matrix_product(us: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let (first, rest) = us.split_first().ok_or(Error::EmptyProduct)?;
    rest.iter().try_fold(first.clone(), |acc, u| acc.matmul(u))
}

fn product_of_all(ms: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    matrix_product(ms)
}

pub fn run_verification_suite(name: SuiteName, opts: &SuiteOptions) -> Result<SuiteResult> {
    if let Some(range) = &opts.k_range {
        if range.is_empty() || *range.start() == 0 {
            return Err(Error::InvalidConfig(format!("bad k range {range:?}")));
        }
    }
    let mut rec = Recorder::new(opts);
    match name {
        SuiteName::All => {
            for each in SuiteName::EACH {
                run_one(each, opts, &mut rec)?;
            }
        }
        one => run_one(one, opts, &mut rec)?,
    }
    Ok(SuiteResult {
        suite: name.to_string(),
        cases_run: rec.cases_run,
        failures: rec.failures,
    })
}

fn run_one(name: SuiteName, opts: &SuiteOptions, rec: &mut Recorder) -> Result<()> {
    match name {
        SuiteName::QcpuCore => qcpu_core(opts, rec),
        SuiteName::Deutsch => deutsch(rec),
        SuiteName::Qft => qft(opts, rec),
        SuiteName::Shor => shor(opts, rec),
        SuiteName::Grover => grover(opts, rec),
        SuiteName::All => unreachable!("expanded by the caller"),
    }
}

fn k_range(
    opts: &SuiteOptions,
    default: RangeInclusive<u32>,
    max: u32,
) -> Result<RangeInclusive<u32>> {
    let range = opts.k_range.clone().unwrap_or(default);
    if *range.end() > max {
        return Err(Error::InvalidConfig(format!(
            "k up to {} is beyond this suite's limit of {max}",
            range.end()
        )));
    }
    Ok(range)
}

fn qcpu_core(opts: &SuiteOptions, rec: &mut Recorder) -> Result<()> {
    let aux = AuxiliaryAlgebra::new();
    let zero = ComplexMatrix::zeros(2, 2);
    rec.exact(
        "qcpu-core/c_squared",
        aux.c.matmul(&aux.c)?.max_abs_diff(&zero)?,
    );
    rec.exact(
        "qcpu-core/c_dag_squared",
        aux.c_dag.matmul(&aux.c_dag)?.max_abs_diff(&zero)?,
    );
    rec.exact(
        "qcpu-core/anticommutator",
        aux.anticommutator()
            .max_abs_diff(&ComplexMatrix::identity(2))?,
    );

    let q_identity = qcpu_of(&ComplexMatrix::identity(2))?.closed_form()?;
    rec.exceeds(
        "qcpu-core/q_identity_not_unitary",
        q_identity.unitarity_residual()?,
        0.5,
    );

    let ks = k_range(opts, 1..=3, 5)?;
    let mut case = 0u64;
    for k in ks.clone() {
        let dim = shape(k).dim();
        for trial in 0..opts.trials {
            case += 1;
            let mut rng = SeededRng::for_case(opts.seed, case);

            // Factor product in a random order against I + U ⊗ c_dag.
            let u = random_matrix(&mut rng, dim);
            let mut net = qcpu_of(&u)?;
            if opts.inject_fault && trial == 0 && k == *ks.start() {
                let f = &mut net.factors_mut()[0];
                f.coeff = -f.coeff;
            }
            let order = rng.permutation(net.factors().len());
            let id = format!("qcpu-core/closed_form/k{k}/t{trial}");
            rec.attempt(&id.clone(), |rec| {
                let product = net.factor_product(Some(&order))?;
                rec.within(id, product.max_abs_diff(&nilpotent_exp(&u))?, 0.1);
                Ok(())
            });

            // Sum rule under three operand orderings.
            let us: Vec<ComplexMatrix> = (0..3).map(|_| random_matrix(&mut rng, dim)).collect();
            let nets = us.iter().map(qcpu_of).collect::<Result<Vec<_>>>()?;
            let sum = us[0].add(&us[1])?.add(&us[2])?;
            let target = qcpu_of(&sum)?.closed_form()?;
            for ordering in 0..3 {
                let perm = rng.permutation(3);
                let closed = perm
                    .iter()
                    .map(|&i| nets[i].closed_form())
                    .collect::<Result<Vec<_>>>()?;
                let product = product_of_all(&closed)?;
                rec.within(
                    format!("qcpu-core/sum_rule/k{k}/t{trial}/o{ordering}"),
                    product.max_abs_diff(&target)?,
                    1.0,
                );
            }
            let composed = sum_compose(&nets)?.closed_form()?;
            rec.within(
                format!("qcpu-core/sum_compose/k{k}/t{trial}"),
                composed.max_abs_diff(&target)?,
                1.0,
            );

            // Action on |ψ> ⊗ |0>_A for a random unitary.
            let unitary = random_unitary(&mut rng, dim);
            let psi = random_state(&mut rng, dim);
            let applied = qcpu_of(&unitary)?
                .closed_form()?
                .apply(&on_aux_branch(&psi, 0))?;
            let expected_amps: Vec<_> = on_aux_branch(&psi, 0)
                .amplitudes()
                .iter()
                .zip(on_aux_branch(&unitary.apply(&psi)?, 1).amplitudes())
                .map(|(a, b)| a + b)
                .collect();
            rec.within(
                format!("qcpu-core/action/k{k}/t{trial}"),
                applied.max_abs_diff(&StateVector::from_amplitudes(expected_amps))?,
                0.1,
            );
        }
    }

    // Product rule, r = 1..4 on k = 1..2 (clamped to the chosen range).
    let product_ks = (*ks.start()).min(2)..=(*ks.end()).min(2);
    for k in product_ks {
        let dim = shape(k).dim();
        for r in 1..=4 {
            for trial in 0..opts.trials {
                case += 1;
                let mut rng = SeededRng::for_case(opts.seed, case);
                let us: Vec<ComplexMatrix> = (0..r).map(|_| random_matrix(&mut rng, dim)).collect();
                let product = matrix_product(&us)?;
                let composed = product_compose(&us)?;
                rec.within(
                    format!("qcpu-core/product_rule/k{k}/r{r}/t{trial}"),
                    composed.operator.max_abs_diff(&nilpotent_exp(&product))?,
                    1.0,
                );

                let scalable = scalable_product(&us)?;
                let psi = random_state(&mut rng, dim);
                let (input, out) = scalable.apply_prepared(&psi)?;
                let want = on_aux_branch(&product.apply(&psi)?, 1);
                rec.within(
                    format!("qcpu-core/scalable/k{k}/r{r}/t{trial}"),
                    out.max_abs_diff(&want)?.max(input.max_abs_diff(&psi)?),
                    1.0,
                );
                rec.exact(
                    format!("qcpu-core/scalable_annihilates_aux1/k{k}/r{r}/t{trial}"),
                    aux_block(&scalable.out_operator, 1, 1)
                        .max_abs_diff(&ComplexMatrix::zeros(dim, dim))?,
                );
            }
        }
    }
    Ok(())
}

fn deutsch(rec: &mut Recorder) -> Result<()> {
    for f in DeutschFunction::ALL {
        let name = f.name();
        let run = run_deutsch(f)?;
        let expected_constant = f.is_constant();
        let got_constant = run.classification == crate::algorithms::Classification::Constant;
        rec.exact(
            format!("deutsch/{name}/classification"),
            if expected_constant == got_constant {
                0.0
            } else {
                1.0
            },
        );
        rec.exact(
            format!("deutsch/{name}/routes_agree"),
            if run.routes_agree() { 0.0 } else { 1.0 },
        );
        rec.within(
            format!("deutsch/{name}/probability"),
            (run.probability - 1.0).abs(),
            1.0,
        );
        rec.within(
            format!("deutsch/{name}/textbook_probability"),
            (run.textbook_probability - 1.0).abs(),
            1.0,
        );
        rec.within(
            format!("deutsch/{name}/textbook_matrix"),
            run.textbook_matrix_residual,
            1.0,
        );
        rec.exact(
            format!("deutsch/{name}/tensor_sum"),
            deutsch_u_tensor_sum(f).max_abs_diff(&deutsch_u(f))?,
        );
        rec.within(
            format!("deutsch/{name}/v_unitary"),
            deutsch_v(f).unitarity_residual()?,
            1.0,
        );
    }
    Ok(())
}

fn qft(opts: &SuiteOptions, rec: &mut Recorder) -> Result<()> {
    for k in k_range(opts, 1..=4, 6)? {
        let cfg = QftConfig::new(k)?;
        let f = fourier_matrix(cfg.shape)?;
        let sum = factorization_sum(&qft_factorization(cfg))?;
        rec.within(
            format!("qft/k{k}/factorization_sum"),
            sum.max_abs_diff(&f)?,
            1.0,
        );
        rec.within(format!("qft/k{k}/unitary"), f.unitarity_residual()?, 1.0);
        let network = qft_network(cfg)?.closed_form()?;
        let direct = qcpu_of(&f)?.closed_form()?;
        rec.within(
            format!("qft/k{k}/network_vs_direct"),
            network.max_abs_diff(&direct)?,
            1.0,
        );
        let literal = factorization_sum(&qft_factorization_with(
            cfg,
            PhaseConvention::PowerOfTwoMinusOne,
        ))?;
        rec.exceeds(
            format!("qft/k{k}/literal_denominator_deviates"),
            literal.max_abs_diff(&f)?,
            1e-6,
        );
    }
    Ok(())
}

/// Peaks `m · 2^k / r` when `r | 2^k`.
fn exact_peaks(q: u64, r: u64) -> Vec<u64> {
    (0..r).map(|m| m * q / r).collect()
}

fn brute_force_order(a: u64, n: u64) -> u64 {
    let mut x = a % n;
    let mut r = 1;
    while x != 1 {
        x = x * a % n;
        r += 1;
    }
    r
}

fn shor(opts: &SuiteOptions, rec: &mut Recorder) -> Result<()> {
    let cases: [(u64, u64, u32, (u64, u64)); 5] = [
        (15, 2, 8, (3, 5)),
        (15, 7, 8, (3, 5)),
        (15, 8, 8, (3, 5)),
        (15, 13, 8, (3, 5)),
        (21, 2, 9, (3, 7)),
    ];
    for (n, a, k, want) in cases {
        let id = format!("shor/N{n}/a{a}/k{k}");
        let cfg = ShorConfig::new(n, a, Some(k))?;
        let analysis = shor_branches(&cfg)?;
        let r = brute_force_order(a, n);
        let q = cfg.first_dim() as u64;

        let wrong = analysis
            .branches
            .iter()
            .filter_map(|b| b.outcome.factors())
            .filter(|f| *f != want)
            .count();
        rec.exact(format!("{id}/successful_branches_factor"), wrong as f64);
        rec.within(
            format!("{id}/branch_total"),
            (analysis.total_probability - 1.0).abs(),
            100.0,
        );
        if q.is_multiple_of(r) {
            rec.exact(
                format!("{id}/success_at_least_half"),
                (0.5 - analysis.success_probability).max(0.0),
            );
        } else {
            rec.exceeds(
                format!("{id}/success_positive"),
                analysis.success_probability,
                0.0,
            );
        }

        for (u, _, support, dist) in &analysis.residues {
            let l = support[0];
            let progression = support
                .iter()
                .enumerate()
                .filter(|(j, n)| **n != l + *j as u64 * r)
                .count();
            let expected_len = (q - l).div_ceil(r) as usize;
            rec.exact(
                format!("{id}/u{u}/support_progression"),
                (progression + support.len().abs_diff(expected_len)) as f64,
            );
            if q.is_multiple_of(r) {
                let peaks = exact_peaks(q, r);
                let deviation = dist
                    .iter()
                    .enumerate()
                    .map(|(y, p)| {
                        let want = if peaks.contains(&(y as u64)) {
                            1.0 / r as f64
                        } else {
                            0.0
                        };
                        (p - want).abs()
                    })
                    .fold(0.0, f64::max);
                rec.within(format!("{id}/u{u}/uniform_peaks"), deviation, 100.0);
            }
        }

        for trial in 0..opts.trials.min(3) {
            let seed = opts.seed.wrapping_add(trial as u64);
            let first = run_shor(&cfg, seed)?;
            let second = run_shor(&cfg, seed)?;
            let same = first.measured_residue == second.measured_residue
                && first.sampled_y == second.sampled_y
                && first.outcome == second.outcome;
            rec.exact(
                format!("{id}/deterministic/s{seed}"),
                if same { 0.0 } else { 1.0 },
            );
            if let ShorOutcome::Factors(p, q) = first.outcome {
                rec.exact(
                    format!("{id}/factors_multiply/s{seed}"),
                    (p * q).abs_diff(n) as f64,
                );
            }
        }
    }

    // Dense literal product against the structured route.
    for k in 2..=4 {
        let cfg = ShorConfig::new(15, 7, Some(k))?.with_second_register(4)?;
        let mapped = crate::algorithms::shor::prepare_and_map(&cfg);
        let probs = crate::algorithms::shor::second_register_distribution(&cfg, &mapped);
        for (u, p) in probs.iter().enumerate().filter(|(_, p)| **p > 0.0) {
            let id = format!("shor/dense/k{k}/u{u}");
            rec.attempt(&id.clone(), |rec| {
                let dense = shor_u(&cfg, u as u64)?;
                let column = dense.apply(&StateVector::basis(0, cfg.total_dim())?)?;
                let structured = structured_shor_column(&cfg, u as u64)?;
                rec.within(
                    format!("{id}/structured"),
                    column.max_abs_diff(&structured)?,
                    1.0,
                );
                rec.within(format!("{id}/norm"), (column.norm_sqr() - p).abs(), 1.0);
                Ok(())
            });
        }
    }

    // Network register block against the literal product, k = 3, k2 = 4.
    let cfg = ShorConfig::new(15, 7, Some(3))?.with_second_register(4)?;
    let chain = shor_hadamard_chain(&cfg)?;
    rec.within(
        "shor/network/hadamard_chain",
        chain.register_block().max_abs_diff(&hadamard_prep(&cfg)?)?,
        1.0,
    );
    for u in [1u64, 4, 7, 13] {
        let id = format!("shor/network/k3/u{u}");
        rec.attempt(&id.clone(), |rec| {
            let net = shor_network(&cfg, u)?;
            rec.within(
                format!("{id}/block"),
                net.register_block().max_abs_diff(&shor_u(&cfg, u)?)?,
                1.0,
            );
            rec.exact(
                format!("{id}/block_count"),
                net.block_count().abs_diff(4) as f64,
            );
            Ok(())
        });
    }
    Ok(())
}

fn grover(opts: &SuiteOptions, rec: &mut Recorder) -> Result<()> {
    let ks = k_range(opts, 2..=6, 7)?;
    for k in ks {
        let s = shape(k);
        let dim = s.dim();
        let mut rng = SeededRng::for_case(opts.seed, 10_000 + k as u64);
        let target = rng.index(dim);
        let id = format!("grover/k{k}/j{target}");
        let cfg = GroverConfig::new(k, target)?;
        let run = run_grover(&cfg, opts.seed)?;
        rec.within(
            format!("{id}/amplification_formula"),
            (run.success_probability() - amplification_formula(dim, cfg.iterations)).abs(),
            1000.0,
        );
        rec.within(
            format!("{id}/normalization"),
            (run.distribution.iter().sum::<f64>() - 1.0).abs(),
            100.0,
        );

        // Register block against the dense iteration (F⁻¹ R0 F R2)^t H.
        let f = fourier_matrix(s)?;
        let r1 = inverse_fourier_matrix(s)?
            .matmul(&grover_r0(s))?
            .matmul(&f)?;
        let step = r1.matmul(&grover_r2(s, target)?)?;
        let mut want = hadamard_layer(s)?;
        for _ in 0..cfg.iterations {
            want = step.matmul(&want)?;
        }
        let block = grover_network(&cfg)?.register_block();
        rec.within(
            format!("{id}/register_block"),
            block.max_abs_diff(&want)?,
            1.0,
        );

        rec.exact(
            format!("{id}/q_r0_chain"),
            grover_qcpu_r0(s)?.max_abs_diff(&qcpu_of(&grover_r0(s))?.closed_form()?)?,
        );
        let q_r2 = qcpu_of(&grover_r2(s, target)?)?.closed_form()?;
        rec.exact(
            format!("{id}/q_r2_chain"),
            grover_qcpu_r2(s, target)?.max_abs_diff(&q_r2)?,
        );
        let literal = grover_qcpu_r2_with_leading_identity(s, target)?;
        let shift = aux_block(&literal.sub(&q_r2)?, 1, 0);
        rec.exact(
            format!("{id}/leading_identity_shift"),
            shift.max_abs_diff(&ComplexMatrix::identity(dim))?,
        );

        let uniform = run_grover(&cfg.with_iterations(0), opts.seed)?;
        let deviation = uniform
            .distribution
            .iter()
            .map(|p| (p - 1.0 / dim as f64).abs())
            .fold(0.0, f64::max);
        rec.within(format!("{id}/zero_iterations_uniform"), deviation, 1.0);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in SuiteName::EACH {
            assert_eq!(s.to_string().parse::<SuiteName>().unwrap(), s);
        }
        assert!(matches!(
            "nope".parse::<SuiteName>(),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn deutsch_suite_passes() {
        let result = run_verification_suite(SuiteName::Deutsch, &SuiteOptions::default()).unwrap();
        assert!(result.passed(), "{:?}", result.failures);
        assert_eq!(result.cases_run, 28);
    }

    #[test]
    fn qcpu_core_passes_and_catches_fault() {
        let opts = SuiteOptions {
            trials: 3,
            seed: 1,
            ..SuiteOptions::default()
        };
        let clean = run_verification_suite(SuiteName::QcpuCore, &opts).unwrap();
        assert!(clean.passed(), "{:?}", clean.failures);

        let faulty = run_verification_suite(
            SuiteName::QcpuCore,
            &SuiteOptions {
                inject_fault: true,
                ..opts
            },
        )
        .unwrap();
        assert!(!faulty.failures.is_empty());
        assert!(faulty.failures[0]
            .case_id
            .starts_with("qcpu-core/closed_form/k1/t0"));
    }

    #[test]
    fn qft_suite_with_range() {
        let opts = SuiteOptions {
            k_range: Some(1..=3),
            ..SuiteOptions::default()
        };
        let result = run_verification_suite(SuiteName::Qft, &opts).unwrap();
        assert!(result.passed(), "{:?}", result.failures);
        assert_eq!(result.cases_run, 12);
        assert!(run_verification_suite(
            SuiteName::Qft,
            &SuiteOptions {
                k_range: Some(1..=9),
                ..SuiteOptions::default()
            }
        )
        .is_err());
    }

    #[test]
    fn tight_tolerance_fails() {
        let opts = SuiteOptions {
            tolerance: 1e-30,
            k_range: Some(3..=3),
            ..SuiteOptions::default()
        };
        let result = run_verification_suite(SuiteName::Qft, &opts).unwrap();
        assert!(!result.passed());
    }
}
