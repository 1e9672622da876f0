//! Runs every verification suite and the fault-injection self-test.
//!
//! cargo run --release --example verify

use qcpu::harness::{run_verification_suite, SuiteName, SuiteOptions};

fn main() -> qcpu::Result<()> {
    let opts = SuiteOptions {
        trials: 20,
        seed: 1,
        ..SuiteOptions::default()
    };
    for suite in SuiteName::EACH {
        let result = run_verification_suite(suite, &opts)?;
        println!(
            "{:<10} {:>5} cases  {} failures",
            result.suite,
            result.cases_run,
            result.failures.len()
        );
    }

    let broken = run_verification_suite(
        SuiteName::QcpuCore,
        &SuiteOptions {
            inject_fault: true,
            ..opts
        },
    )?;
    for f in &broken.failures {
        println!(
            "fault caught: {} residual {:.3e} > {:.0e}",
            f.case_id, f.residual, f.tolerance
        );
    }
    Ok(())
}
