//! Prints network listings and DOT graphs.
//!
//! cargo run --example export_networks | dot -Tsvg > grover.svg

use qcpu::algorithms::deutsch::{deutsch_network, DeutschFunction};
use qcpu::algorithms::grover::{grover_network, GroverConfig};
use qcpu::algorithms::shor::{shor_network, ShorConfig};
use qcpu::qcpu::{export_network, ExportFormat};

fn main() -> qcpu::Result<()> {
    let deutsch = deutsch_network(DeutschFunction::F4)?;
    eprintln!("{}", export_network(&deutsch, ExportFormat::Text));

    let shor = shor_network(&ShorConfig::new(15, 7, Some(3))?, 4)?;
    eprintln!("{}", export_network(&shor, ExportFormat::Text));

    // DOT goes to stdout so it can be piped into graphviz.
    let grover = grover_network(&GroverConfig::new(2, 3)?)?;
    print!("{}", export_network(&grover, ExportFormat::Dot));
    Ok(())
}
