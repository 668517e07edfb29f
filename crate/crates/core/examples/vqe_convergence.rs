//! Exact VQE for N = 2, 3, 4, a short noisy VQE for N = 2, and the
//! energy-versus-N report as CSV.
//!
//!     cargo run --release --example vqe_convergence

use std::collections::BTreeMap;

use deuteron_vqe::driver::{convergence_report, vqe_run, RunConfig};
use deuteron_vqe::hamiltonian::EftConfig;
use deuteron_vqe::io::{convergence_csv, convergence_points};

fn main() -> deuteron_vqe::Result<()> {
    let mut results = BTreeMap::new();
    for n in 2..=4 {
        let out = vqe_run(&RunConfig::exact(n))?;
        println!(
            "N = {n}: {:.5} MeV after {} evaluations, angles {:?}",
            out.result.energy, out.evaluations, out.params
        );
        results.insert(n, (out.result.energy, out.result.sigma));
    }

    let noisy = RunConfig {
        shots: 2000,
        max_evals: 40,
        seed: 5,
        ..RunConfig::new(2)
    };
    let out = vqe_run(&noisy)?;
    println!(
        "\nnoisy N = 2 ({} evaluations): {:.4} +- {:.4} MeV at {:?}, exact energy there {:.4}",
        out.evaluations, out.result.energy, out.result.sigma, out.params, out.theory
    );

    let report = convergence_report(&results, &EftConfig::default())?;
    println!("\nmonotone: {}", report.monotone);
    print!("{}", convergence_csv(&convergence_points(&report))?);
    Ok(())
}
