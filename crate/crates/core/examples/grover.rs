//! Amplitude amplification through the connector network, compared with
//! the closed-form success probability.
//!
//! cargo run --example grover

use qcpu::algorithms::grover::{grover_network, run_grover, GroverConfig};
use qcpu::harness::report::amplification_formula;

fn main() -> qcpu::Result<()> {
    println!(" k  target  t  P(target)        sin^2((2t+1)θ)   blocks");
    for k in 2..=7 {
        let target = (1 << k) / 3;
        let cfg = GroverConfig::new(k, target)?;
        let run = run_grover(&cfg, 1)?;
        let blocks = grover_network(&cfg)?.block_count();
        println!(
            "{k:>2}  {target:>6} {:>2}  {:.12}  {:.12}  {blocks:>3}",
            cfg.iterations,
            run.success_probability(),
            amplification_formula(cfg.shape.dim(), cfg.iterations)
        );
    }

    // Over-rotating past the optimum lowers the success probability.
    let cfg = GroverConfig::new(4, 5)?;
    for t in 0..=6 {
        let p = run_grover(&cfg.with_iterations(t), 0)?.success_probability();
        println!("k=4 t={t}: {p:.4}");
    }
    Ok(())
}
