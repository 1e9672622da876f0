//! Rank-one factorisation of the Fourier matrix and its network.
//!
//! cargo run --example qft -- 3

use qcpu::algorithms::qft::{
    factorization_sum, qft_factorization, qft_factorization_with, qft_network, PhaseConvention,
    QftConfig,
};
use qcpu::linalg::fourier_matrix;
use qcpu::qcpu::qcpu_of;

fn main() -> qcpu::Result<()> {
    let k: u32 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let cfg = QftConfig::new(k)?;
    let f = fourier_matrix(cfg.shape)?;

    let terms = qft_factorization(cfg);
    let sum = factorization_sum(&terms)?;
    println!(
        "k = {k}: {} rank-one terms, |Σ - F| = {:.1e}",
        terms.len(),
        sum.max_abs_diff(&f)?
    );
    println!("F unitary to {:.1e}", f.unitarity_residual()?);

    let network = qft_network(cfg)?;
    let direct = qcpu_of(&f)?;
    println!(
        "network {} with {} factors matches Q(F) to {:.1e}",
        network.label,
        network.factors().len(),
        network
            .closed_form()?
            .max_abs_diff(&direct.closed_form()?)?
    );

    // Using 2^k - 1 in the phase denominator breaks the factorisation.
    let off = factorization_sum(&qft_factorization_with(
        cfg,
        PhaseConvention::PowerOfTwoMinusOne,
    ))?;
    println!(
        "2^k - 1 denominator: |Σ - F| = {:.3}",
        off.max_abs_diff(&f)?
    );
    Ok(())
}
