//! Order finding and factoring, one seeded run plus the exact branch
//! distribution.
//!
//! cargo run --example shor -- 21 2

use qcpu::algorithms::shor::{run_shor, shor_branches, ShorConfig, ShorOutcome};

fn main() -> qcpu::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().ok());
    let n = args.next().flatten().unwrap_or(15);
    let a = args.next().flatten().unwrap_or(7);
    let cfg = ShorConfig::new(n, a, None)?;
    println!("N = {n}, a = {a}, k = {}, k2 = {}", cfg.k, cfg.k2);

    for seed in 0..4 {
        let run = run_shor(&cfg, seed)?;
        let result = match &run.outcome {
            ShorOutcome::Factors(p, q) => format!("{p} x {q}"),
            ShorOutcome::Failure(why) => format!("no factors ({why})"),
        };
        let period = run.period.map_or("-".to_string(), |r| r.to_string());
        println!(
            "seed {seed}: residue {:>2}, y = {:>3}, period {period} -> {result}",
            run.measured_residue, run.sampled_y
        );
    }

    let analysis = shor_branches(&cfg)?;
    println!(
        "{} branches, success probability {:.4}",
        analysis.branches.len(),
        analysis.success_probability
    );
    let (u, p_u, support, dist) = &analysis.residues[0];
    let peaks: Vec<usize> = dist
        .iter()
        .enumerate()
        .filter(|(_, p)| **p > 2e-2)
        .map(|(y, _)| y)
        .collect();
    println!(
        "residue {u}: P = {p_u:.4}, support starts {:?}, y peaks near {peaks:?}",
        &support[..support.len().min(4)]
    );
    Ok(())
}
