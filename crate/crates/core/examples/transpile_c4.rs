//! Compiling the four-qubit ansatz circuit to XX, RX, RY and RZ gates,
//! checking equivalence, and folding it for noise amplification.
//!
//!     cargo run --example transpile_c4

use deuteron_vqe::ansatz::{build_ansatz_circuit, AngleConvention, HypersphericalParams};
use deuteron_vqe::compiler::{
    compile_ansatz, conventions_report, logical_unitary, native_unitary, phase_distance, propagate_known_input,
    transpile,
};
use deuteron_vqe::reference::H4_QUOTED_OPTIMUM;
use deuteron_vqe::simulator::{fold_circuit, FoldSpec};

fn main() -> deuteron_vqe::Result<()> {
    let report = conventions_report()?;
    println!("{}\n{}", report.rotation, report.entangler);
    for id in &report.identities {
        println!("  {:<10} {} XX, max phase distance {:.1e}", id.name, id.xx_count, id.max_phase_distance);
    }

    let params = HypersphericalParams::new(H4_QUOTED_OPTIMUM.to_vec())?;
    let logical = build_ansatz_circuit(4, &params, AngleConvention::RESOLVED)?;
    println!("\nlogical C4: {}", serde_json::to_string(&logical)?);

    let direct = transpile(&logical)?;
    println!("\ndirect transpilation:\n{}", direct.counts());

    let native = compile_ansatz(&logical)?;
    println!("\nspecialized and optimized:\n{}", native.counts());
    println!("nearest neighbour: {}", native.is_nearest_neighbor());
    let reference = logical_unitary(&propagate_known_input(&logical)?)?;
    println!("phase distance: {:.2e}", phase_distance(&reference, &native_unitary(&native)?));
    println!("{}", serde_json::to_string_pretty(&native)?);

    for m in 0..=3 {
        println!("M = {m}: {} XX", fold_circuit(&native, FoldSpec::new(m)).xx_count());
    }
    Ok(())
}
