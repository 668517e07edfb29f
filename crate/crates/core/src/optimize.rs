//! Nelder-Mead simplex minimization.
//!
//! Used twice: on the exact energy landscape (smooth, cheap) and inside the
//! VQE loop where every evaluation carries shot noise. For the noisy case the
//! best vertex is re-measured whenever the simplex shrinks, so a single lucky
//! draw cannot pin the search.

#[derive(Debug, Clone)]
pub struct NelderMead {
    pub max_evals: usize,
    /// Stop when `f_worst - f_best` drops below this.
    pub f_tol: f64,
    /// Stop when the simplex diameter (max-norm) drops below this.
    pub x_tol: f64,
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: f64,
    /// Re-evaluate the best vertex on every shrink and keep the running mean.
    pub resample_on_shrink: bool,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            max_evals: 4000,
            f_tol: 1e-8,
            x_tol: 1e-10,
            initial_step: 0.2,
            resample_on_shrink: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

struct Vertex {
    x: Vec<f64>,
    value: f64,
    samples: usize,
}

impl NelderMead {
    pub fn minimize<F>(&self, mut f: F, x0: &[f64]) -> Minimum
    where
        F: FnMut(&[f64]) -> f64,
    {
        let n = x0.len();
        let mut evals = 0usize;
        let mut eval = |x: &[f64], evals: &mut usize| {
            *evals += 1;
            f(x)
        };

        if n == 0 {
            let value = eval(x0, &mut evals);
            return Minimum {
                x: Vec::new(),
                value,
                evaluations: evals,
                converged: true,
            };
        }

        let mut simplex: Vec<Vertex> = Vec::with_capacity(n + 1);
        simplex.push(Vertex {
            x: x0.to_vec(),
            value: eval(x0, &mut evals),
            samples: 1,
        });
        for i in 0..n {
            let mut x = x0.to_vec();
            x[i] += self.initial_step;
            let value = eval(&x, &mut evals);
            simplex.push(Vertex { x, value, samples: 1 });
        }

        let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
        let mut converged = false;

        while evals < self.max_evals {
            simplex.sort_by(|a, b| a.value.total_cmp(&b.value));
            let spread = simplex[n].value - simplex[0].value;
            let diameter = simplex[1..]
                .iter()
                .flat_map(|v| v.x.iter().zip(&simplex[0].x).map(|(a, b)| (a - b).abs()))
                .fold(0.0, f64::max);
            if spread.abs() <= self.f_tol || diameter <= self.x_tol {
                converged = true;
                break;
            }

            let mut centroid = vec![0.0; n];
            for v in &simplex[..n] {
                for (c, xi) in centroid.iter_mut().zip(&v.x) {
                    *c += xi / n as f64;
                }
            }
            let along = |t: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(&simplex[n].x)
                    .map(|(c, w)| c + t * (w - c))
                    .collect()
            };

            let xr = along(-alpha);
            let fr = eval(&xr, &mut evals);
            if fr < simplex[0].value {
                let xe = along(-alpha * gamma);
                let fe = eval(&xe, &mut evals);
                simplex[n] = if fe < fr {
                    Vertex { x: xe, value: fe, samples: 1 }
                } else {
                    Vertex { x: xr, value: fr, samples: 1 }
                };
                continue;
            }
            if fr < simplex[n - 1].value {
                simplex[n] = Vertex { x: xr, value: fr, samples: 1 };
                continue;
            }
            let outside = fr < simplex[n].value;
            let xc = if outside { along(-alpha * rho) } else { along(rho) };
            let fc = eval(&xc, &mut evals);
            let accept = if outside { fc <= fr } else { fc < simplex[n].value };
            if accept {
                simplex[n] = Vertex { x: xc, value: fc, samples: 1 };
                continue;
            }

            // shrink towards the best vertex
            if self.resample_on_shrink {
                let best = &mut simplex[0];
                let again = eval(&best.x, &mut evals);
                best.value = (best.value * best.samples as f64 + again) / (best.samples + 1) as f64;
                best.samples += 1;
            }
            let best_x = simplex[0].x.clone();
            for v in simplex.iter_mut().skip(1) {
                for (xi, bi) in v.x.iter_mut().zip(&best_x) {
                    *xi = bi + sigma * (*xi - bi);
                }
                v.value = eval(&v.x, &mut evals);
                v.samples = 1;
            }
        }

        // Among vertices within noise of each other prefer the most-sampled.
        simplex.sort_by(|a, b| {
            a.value
                .total_cmp(&b.value)
                .then_with(|| b.samples.cmp(&a.samples))
        });
        let best = simplex.swap_remove(0);
        Minimum {
            x: best.x,
            value: best.value,
            evaluations: evals,
            converged,
        }
    }
}
