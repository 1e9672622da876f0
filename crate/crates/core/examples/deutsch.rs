//! Classifies all four one-bit functions with a single network query.
//!
//! cargo run --example deutsch

use qcpu::algorithms::deutsch::{deutsch_u, deutsch_v, run_deutsch, DeutschFunction};

fn main() -> qcpu::Result<()> {
    for f in DeutschFunction::ALL {
        let run = run_deutsch(f)?;
        println!(
            "{f}: f(0)={} f(1)={}  ->  {}   P = {:.12}  textbook agrees: {}",
            u8::from(f.eval(0)),
            u8::from(f.eval(1)),
            run.classification,
            run.probability,
            run.routes_agree()
        );
    }
    let f = DeutschFunction::F3;
    println!("\nprotocol matrix for {f}:\n{}", deutsch_u(f));
    println!("single-qubit V for {f}:\n{}", deutsch_v(f));
    Ok(())
}
