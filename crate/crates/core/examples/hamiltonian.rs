//! Oscillator-basis Hamiltonians for N = 1..4, their Jordan-Wigner qubit
//! form, and exact ground-state energies.
//!
//!     cargo run --example hamiltonian

use deuteron_vqe::hamiltonian::{build_oscillator_hamiltonian, exact_ground_energy, EftConfig, EXACT_DEUTERON_ENERGY};
use deuteron_vqe::pauli::jordan_wigner;

fn main() -> deuteron_vqe::Result<()> {
    for n in 1..=4 {
        let h = build_oscillator_hamiltonian(&EftConfig::new(n))?;
        println!("H_{n} (MeV):");
        for row in h.rows() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:9.4}")).collect();
            println!("  [{}]", cells.join(" "));
        }
        let q = jordan_wigner(&h)?;
        println!("  {} Pauli terms:", q.len());
        for t in q.terms() {
            println!("  {:>10.5}  {}", t.coeff, t.word);
        }
        println!("  ground state: {:.5} MeV\n", exact_ground_energy(&h)?);
    }
    println!("infinite-basis limit: {EXACT_DEUTERON_ENERGY} MeV");
    Ok(())
}
