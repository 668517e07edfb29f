//! The hyperspherical ansatz: which published-angle convention reproduces
//! the H_4 landscape table, and the exact energy along each scanned angle.
//!
//!     cargo run --release --example ansatz_landscape

use deuteron_vqe::ansatz::{
    amplitudes, energy_expectation_exact, optimal_parameters, resolve_convention, AngleConvention, HypersphericalParams,
};
use deuteron_vqe::hamiltonian::{build_oscillator_hamiltonian, EftConfig};
use deuteron_vqe::reference::TABLE_ONE;

fn main() -> deuteron_vqe::Result<()> {
    let h3 = build_oscillator_hamiltonian(&EftConfig::new(3))?;
    let h4 = build_oscillator_hamiltonian(&EftConfig::new(4))?;

    let report = resolve_convention(&h4, &h3, 5e-3)?;
    println!("convention candidates (worst error against the table):");
    for (conv, err) in &report.candidates {
        println!("  {:?} reversed={} -> {err:.4} MeV", conv.map, conv.reversed);
    }
    println!("selected: {:?}\n", report.selected);

    let conv = report.selected.unwrap_or(AngleConvention::RESOLVED);
    println!("  lambda0  lambda1  lambda2   table    computed");
    for row in &TABLE_ONE {
        let p = HypersphericalParams::new(row.lambdas.to_vec())?;
        let e = energy_expectation_exact(&p, conv, &h4)?;
        println!(
            "  {:7.3}  {:7.3}  {:7.3}  {:7.3}  {:9.5}",
            row.lambdas[0], row.lambdas[1], row.lambdas[2], row.theory, e
        );
    }

    for (n, h) in [(3, &h3), (4, &h4)] {
        let (p, e) = optimal_parameters(h, conv)?;
        println!("\nN = {n} optimum {:?}: {e:.5} MeV", p.lambdas());
        println!("  amplitudes {:?}", amplitudes(&p, conv));
    }
    Ok(())
}
