//! Readout error and its inversion on a sampled three-qubit state.
//!
//!     cargo run --release --example spam_correction

use deuteron_vqe::compiler::NativeCircuit;
use deuteron_vqe::estimator::{spam_correct, QuasiDistribution};
use deuteron_vqe::pauli::PauliWord;
use deuteron_vqe::simulator::{bitstring, sample_counts, ReadoutConfusion, Statevector};

fn main() -> deuteron_vqe::Result<()> {
    let state = Statevector::one_hot(&[0.8, 0.6, 0.0])?;
    let readout = [
        ReadoutConfusion::new(0.02, 0.05),
        ReadoutConfusion::symmetric(0.03),
        ReadoutConfusion::new(0.01, 0.08),
    ];
    let shots = 200_000;
    let raw = sample_counts(&state, &NativeCircuit::empty(3), shots, &readout, 7)?;
    let corrected = spam_correct(&raw, &readout)?;
    let raw_dist = QuasiDistribution::from_histogram(&raw)?;
    let exact = QuasiDistribution::from_state(&state, shots as u64);

    println!("outcome    exact      raw        corrected");
    for index in 0..8 {
        let bits = bitstring(index, 3);
        println!(
            "{bits}      {:.5}    {:.5}    {:+.5}",
            exact.get(&bits)?,
            raw_dist.get(&bits)?,
            corrected.get(&bits)?
        );
    }
    for w in ["ZII", "IZI", "ZZI"] {
        let word: PauliWord = w.parse()?;
        let (e, _) = exact.parity_expectation(&word);
        let (r, s) = raw_dist.parity_expectation(&word);
        let (c, _) = corrected.parity_expectation(&word);
        println!("<{w}>: exact {e:+.4}, raw {r:+.4} +- {s:.4}, corrected {c:+.4}");
    }
    Ok(())
}
