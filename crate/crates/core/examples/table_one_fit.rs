//! Quadratic fits to the published hardware landscape of <H_4>: one fit per
//! scanned angle, and the mean of the three minima.
//!
//!     cargo run --example table_one_fit

use deuteron_vqe::driver::fit_quadratic_minimum;
use deuteron_vqe::reference::{table_one_rows_varying, TABLE_ONE, TABLE_ONE_FIT_MEAN, TABLE_ONE_FIT_MINIMA};

fn main() -> deuteron_vqe::Result<()> {
    let mut minima = Vec::new();
    for param in 0..3 {
        let pts: Vec<(f64, f64, f64)> = table_one_rows_varying(param)
            .iter()
            .map(|&i| {
                let r = &TABLE_ONE[i];
                (r.lambdas[param], r.experiment, r.experiment_sigma)
            })
            .collect();
        for weighted in [true, false] {
            let q = fit_quadratic_minimum(&pts, weighted)?;
            println!(
                "lambda{param} ({}): min {:+.3} +- {:.3} MeV at {:.3}  (quoted {:+.3})",
                if weighted { "weighted" } else { "unweighted" },
                q.energy,
                q.sigma,
                q.location,
                TABLE_ONE_FIT_MINIMA[param]
            );
            if weighted {
                minima.push(q.energy);
            }
        }
    }
    let mean = minima.iter().sum::<f64>() / minima.len() as f64;
    println!("mean of weighted minima: {mean:+.3} MeV (quoted {TABLE_ONE_FIT_MEAN:+.3})");
    Ok(())
}
