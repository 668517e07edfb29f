//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero on any failure not listed in `KNOWN_FAILURES`, or if a listed
//! criterion starts passing.

mod support;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use deuteron_vqe::ansatz::{
    amplitudes, build_ansatz_circuit, energy_expectation_exact, optimal_parameters, resolve_convention,
    AngleConvention, HypersphericalParams,
};
use deuteron_vqe::compiler::{
    compile_ansatz, logical_unitary, native_unitary, phase_distance, propagate_known_input, NativeCircuit, NativeGate,
};
use deuteron_vqe::driver::{fit_quadratic_minimum, zne_run, RunConfig};
use deuteron_vqe::estimator::{
    apply_confusion, richardson_extrapolate, spam_correct_distribution, FitKind, QuasiDistribution, ZnePoint, ZneSeries,
};
use deuteron_vqe::hamiltonian::{build_oscillator_hamiltonian, exact_ground_energy, EftConfig, EXACT_DEUTERON_ENERGY};
use deuteron_vqe::pauli::jordan_wigner;
use deuteron_vqe::reference::{
    table_one_rows_varying, H4_QUOTED_OPTIMUM, TABLE_ONE, TABLE_ONE_FIT_MEAN, TABLE_ONE_FIT_MINIMA, UCCS_MINIMA,
};
use deuteron_vqe::simulator::{
    fold_circuit, run_ideal, run_trajectory_with, stream_rng, FoldSpec, NoiseModel, ReadoutConfusion, Statevector,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::Density;

/// Criteria that fail under the specified models; see the README.
const KNOWN_FAILURES: [usize; 1] = [5];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn h(n: usize) -> deuteron_vqe::hamiltonian::OscillatorHamiltonian {
    build_oscillator_hamiltonian(&EftConfig::new(n)).unwrap()
}

/// Printed qubit Hamiltonians, rebuilt from their recursive form:
/// H_{k+1} = H_k + d_k (I - Z_k) + t_k (X_{k-1} X_k + Y_{k-1} Y_k).
fn printed_hamiltonian(n: usize) -> BTreeMap<String, f64> {
    let mut terms = BTreeMap::new();
    let word = |ops: &[(usize, char)]| {
        (0..n)
            .map(|q| ops.iter().find(|(p, _)| *p == q).map_or('I', |(_, c)| *c))
            .collect::<String>()
    };
    terms.insert(word(&[]), 5.907);
    terms.insert(word(&[(0, 'Z')]), 0.218);
    terms.insert(word(&[(1, 'Z')]), -6.125);
    terms.insert(word(&[(0, 'X'), (1, 'X')]), -2.143);
    terms.insert(word(&[(0, 'Y'), (1, 'Y')]), -2.143);
    for (k, d, t) in [(2, 9.625, -3.913), (3, 13.125, -5.671)] {
        if k >= n {
            break;
        }
        *terms.get_mut(&word(&[])).unwrap() += d;
        terms.insert(word(&[(k, 'Z')]), -d);
        terms.insert(word(&[(k - 1, 'X'), (k, 'X')]), t);
        terms.insert(word(&[(k - 1, 'Y'), (k, 'Y')]), t);
    }
    terms
}

fn criterion_1() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for n in 2..=4 {
        let q = jordan_wigner(&h(n)).unwrap();
        let want = printed_hamiltonian(n);
        ok &= q.len() == want.len();
        for (w, c) in &want {
            worst = worst.max((q.coeff_of(w) - c).abs());
        }
    }
    ok &= worst <= 5e-3;
    outcome(ok, format!("max |coefficient - printed| = {worst:.2e} MeV (tol 5e-3) over all terms of H2, H3, H4"))
}

fn criterion_2() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut exact = Vec::new();
    for (n, want) in UCCS_MINIMA {
        let e = exact_ground_energy(&h(n)).unwrap();
        let (_, v) = optimal_parameters(&h(n), AngleConvention::RESOLVED).unwrap();
        ok &= (e - want).abs() <= 2e-3 && (v - want).abs() <= 2e-3;
        parts.push(format!("E{n} = {e:.4} / ansatz {v:.4} (published {want})"));
        exact.push(e);
    }
    let monotone = exact[0] > exact[1] && exact[1] > exact[2] && exact[2] > EXACT_DEUTERON_ENERGY;
    ok &= monotone;
    outcome(ok, format!("{}; E2 > E3 > E4 > -2.224: {monotone}", parts.join(", ")))
}

fn criterion_3() -> Outcome {
    let report = resolve_convention(&h(4), &h(3), 5e-3).unwrap();
    let Some(conv) = report.selected else {
        return outcome(false, "no candidate convention reproduces the table".into());
    };
    let worst = TABLE_ONE
        .iter()
        .map(|row| {
            let p = HypersphericalParams::new(row.lambdas.to_vec()).unwrap();
            (energy_expectation_exact(&p, conv, &h(4)).unwrap() - row.theory).abs()
        })
        .fold(0.0, f64::max);
    outcome(
        worst <= 5e-3,
        format!("convention {:?} (reversed {}) reproduces all 13 theory rows, max error {worst:.2e} MeV (tol 5e-3)", conv.map, conv.reversed),
    )
}

fn criterion_4() -> Outcome {
    let params = HypersphericalParams::new(H4_QUOTED_OPTIMUM.to_vec()).unwrap();
    let logical = build_ansatz_circuit(4, &params, AngleConvention::RESOLVED).unwrap();
    let native = compile_ansatz(&logical).unwrap();
    let specialized = propagate_known_input(&logical).unwrap();
    let d_unitary = phase_distance(&logical_unitary(&specialized).unwrap(), &native_unitary(&native).unwrap());
    // action on the prepared input, against the unspecialized logical circuit
    let u = logical_unitary(&logical).unwrap();
    let col: Vec<Complex64> = (0..16).map(|i| u.get(i, 0)).collect();
    let out = run_ideal(&native, &Statevector::zero(4)).unwrap();
    let d_state = out.phase_distance(&Statevector::from_amplitudes(col).unwrap());
    let xx = native.xx_count();
    let folded = fold_circuit(&native, FoldSpec::new(3)).xx_count();
    let ok = xx == 5 && folded == 35 && d_unitary <= 1e-9 && d_state <= 1e-9;
    outcome(
        ok,
        format!("{xx} XX, unitary phase distance {d_unitary:.1e}, state phase distance {d_state:.1e} (tol 1e-9), M=3 fold -> {folded} XX"),
    )
}

fn criterion_5() -> Outcome {
    let target = UCCS_MINIMA[1].1;
    let seeds = 20u64;
    let (mut covered, mut biased) = (0, 0);
    let (mut sum_zne, mut sum_m0, mut sum_sigma) = (0.0, 0.0, 0.0);
    for seed in 0..seeds {
        let ev = zne_run(&RunConfig { seed, ..RunConfig::new(3) }).unwrap();
        let m0 = ev.unmitigated();
        covered += ((ev.energy - target).abs() <= 3.0 * ev.sigma) as usize;
        biased += ((m0.value - target).abs() > m0.sigma) as usize;
        sum_zne += ev.energy;
        sum_m0 += m0.value;
        sum_sigma += ev.sigma;
    }
    let need = (0.9 * seeds as f64).ceil() as usize;
    let n = seeds as f64;
    outcome(
        covered >= need && biased >= need,
        format!(
            "extrapolated <H3> covers {target} within 3 sigma for {covered}/{seeds} seeds (need {need}); mean {:.3} +- {:.3}; M=0 biased beyond sigma for {biased}/{seeds} (mean {:.3})",
            sum_zne / n,
            sum_sigma / n,
            sum_m0 / n
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut minima = Vec::new();
    let mut ok = true;
    for (param, quoted) in TABLE_ONE_FIT_MINIMA.iter().enumerate() {
        let pts: Vec<(f64, f64, f64)> = table_one_rows_varying(param)
            .iter()
            .map(|&i| (TABLE_ONE[i].lambdas[param], TABLE_ONE[i].experiment, TABLE_ONE[i].experiment_sigma))
            .collect();
        let q = fit_quadratic_minimum(&pts, true).unwrap();
        ok &= (q.energy - quoted).abs() <= 0.05;
        minima.push(q.energy);
    }
    let mean = minima.iter().sum::<f64>() / 3.0;
    ok &= (mean - TABLE_ONE_FIT_MEAN).abs() <= 0.05;
    outcome(
        ok,
        format!(
            "minima {:.3}, {:.3}, {:.3} (published -2.080, -2.200, -1.946), mean {mean:.3} (published {TABLE_ONE_FIT_MEAN}), tol 0.05",
            minima[0], minima[1], minima[2]
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut fails = Vec::new();

    // Jordan-Wigner one-hot round trip
    let mut jw: f64 = 0.0;
    for n in 1..=6 {
        let hn = h(n);
        let q = jordan_wigner(&hn).unwrap();
        for _ in 0..20 {
            let a: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let norm = a.iter().map(|x| x * x).sum::<f64>().sqrt();
            let a: Vec<f64> = a.iter().map(|x| x / norm).collect();
            let via = q.expectation(Statevector::one_hot(&a).unwrap().amplitudes()).unwrap();
            jw = jw.max((via - hn.quadratic_form(&a).unwrap()).abs());
        }
    }
    if jw > 1e-10 {
        fails.push(format!("JW {jw:.1e}"));
    }

    // ansatz norm and one-hot support
    let (mut norm_err, mut support_err): (f64, f64) = (0.0, 0.0);
    for n in 2..=5 {
        for _ in 0..20 {
            let l: Vec<f64> = (0..n - 1).map(|_| rng.random_range(-3.2..3.2)).collect();
            let p = HypersphericalParams::new(l).unwrap();
            let a = amplitudes(&p, AngleConvention::RESOLVED);
            norm_err = norm_err.max((a.iter().map(|x| x * x).sum::<f64>() - 1.0).abs());
            let c = compile_ansatz(&build_ansatz_circuit(n, &p, AngleConvention::RESOLVED).unwrap()).unwrap();
            let s = run_ideal(&c, &Statevector::zero(n)).unwrap();
            let off: f64 = s.amplitudes().iter().enumerate().filter(|(i, _)| i.count_ones() != 1).map(|(_, x)| x.norm_sqr()).sum();
            support_err = support_err.max(off.sqrt());
        }
    }
    if norm_err > 1e-12 || support_err > 1e-10 {
        fails.push(format!("ansatz norm {norm_err:.1e} support {support_err:.1e}"));
    }

    // folding identity
    let c4 = compile_ansatz(
        &build_ansatz_circuit(4, &HypersphericalParams::new(H4_QUOTED_OPTIMUM.to_vec()).unwrap(), AngleConvention::RESOLVED).unwrap(),
    )
    .unwrap();
    let base = run_ideal(&c4, &Statevector::zero(4)).unwrap();
    let fold_err = (0..=5)
        .map(|m| run_ideal(&fold_circuit(&c4, FoldSpec::new(m)), &Statevector::zero(4)).unwrap().phase_distance(&base))
        .fold(0.0, f64::max);
    if fold_err > 1e-10 {
        fails.push(format!("fold {fold_err:.1e}"));
    }

    // SPAM inverse round trip
    let mut spam: f64 = 0.0;
    for _ in 0..50 {
        let w: Vec<f64> = (0..8).map(|_| rng.random::<f64>()).collect();
        let t: f64 = w.iter().sum();
        let d = QuasiDistribution { n_qubits: 3, shots: 1, probs: w.iter().map(|x| x / t).collect() };
        let conf: Vec<ReadoutConfusion> =
            (0..3).map(|_| ReadoutConfusion::new(rng.random_range(0.0..0.4), rng.random_range(0.0..0.4))).collect();
        let back = spam_correct_distribution(&apply_confusion(&d, &conf).unwrap(), &conf).unwrap();
        spam = back.probs.iter().zip(&d.probs).map(|(a, b)| (a - b).abs()).fold(spam, f64::max);
    }
    if spam > 1e-10 {
        fails.push(format!("SPAM {spam:.1e}"));
    }

    // Richardson exactness on affine data
    let mut rich: f64 = 0.0;
    for _ in 0..50 {
        let (b, s) = (rng.random_range(-5.0..5.0), rng.random_range(-1.0..1.0));
        let pts = (0..4)
            .map(|m| {
                let r = 2 * m + 1;
                ZnePoint { r, value: b + s * r as f64, sigma: rng.random_range(0.01..0.5) }
            })
            .collect();
        let fit = richardson_extrapolate(&ZneSeries::new(pts).unwrap(), FitKind::Linear, true).unwrap();
        rich = rich.max((fit.intercept - b).abs());
    }
    if rich > 1e-10 {
        fails.push(format!("Richardson {rich:.1e}"));
    }

    // trajectories against the exact channel, 1e5 trajectories on 2 qubits
    let circuit = NativeCircuit::new(
        2,
        vec![
            NativeGate::RY { qubit: 0, theta: 0.7 },
            NativeGate::XX { q1: 0, q2: 1, chi: 0.9 },
            NativeGate::RX { qubit: 1, theta: 0.3 },
        ],
    )
    .unwrap();
    let (p1, p2) = (0.005, 0.01);
    let exact = Density::run(&circuit, p1, p2);
    let noise = NoiseModel::uniform(2, p1, p2, 0.0);
    let count = 100_000u64;
    let mut sum = vec![Complex64::new(0.0, 0.0); 16];
    let mut sq = vec![(0.0, 0.0); 16];
    for k in 0..count {
        let s = run_trajectory_with(&circuit, &Statevector::zero(2), &noise, &mut stream_rng(99, k)).unwrap();
        let a = s.amplitudes();
        for i in 0..4 {
            for j in 0..4 {
                let v = a[i] * a[j].conj();
                sum[i * 4 + j] += v;
                sq[i * 4 + j].0 += v.re * v.re;
                sq[i * 4 + j].1 += v.im * v.im;
            }
        }
    }
    let c = count as f64;
    let mut worst_z: f64 = 0.0;
    for k in 0..16 {
        let m = sum[k] / c;
        let se_re = ((sq[k].0 / c - m.re * m.re).max(0.0) / c).sqrt();
        let se_im = ((sq[k].1 / c - m.im * m.im).max(0.0) / c).sqrt();
        for (dev, se) in [((m.re - exact.m[k].re).abs(), se_re), ((m.im - exact.m[k].im).abs(), se_im)] {
            if dev > 1e-12 {
                worst_z = worst_z.max(if se > 0.0 { dev / se } else { f64::INFINITY });
            }
        }
    }
    if worst_z > 3.0 {
        fails.push(format!("channel {worst_z:.2} sigma"));
    }

    outcome(
        fails.is_empty(),
        format!(
            "JW {jw:.1e}, ansatz norm {norm_err:.1e} / support {support_err:.1e}, fold {fold_err:.1e}, SPAM {spam:.1e}, Richardson {rich:.1e}, channel worst {worst_z:.2} sigma{}",
            if fails.is_empty() { String::new() } else { format!("; failing: {}", fails.join(", ")) }
        ),
    )
}

fn main() {
    let criteria: [(usize, fn() -> Outcome, Option<Duration>); 7] = [
        (1, criterion_1, Some(Duration::from_secs(1))),
        (2, criterion_2, Some(Duration::from_secs(5))),
        (3, criterion_3, Some(Duration::from_secs(10))),
        (4, criterion_4, Some(Duration::from_secs(5))),
        (5, criterion_5, Some(Duration::from_secs(300))),
        (6, criterion_6, Some(Duration::from_secs(1))),
        (7, criterion_7, None),
    ];
    let mut unexpected = Vec::new();
    for (id, run, limit) in criteria {
        let start = Instant::now();
        let mut o = run();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed > limit {
                o.pass = false;
                o.detail += &format!("; runtime {elapsed:.2?} exceeds {limit:?}");
            }
        }
        let known = KNOWN_FAILURES.contains(&id);
        println!(
            "{} criterion {id}: {} [{elapsed:.2?}]{}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            if known && !o.pass { " (known failure)" } else { "" }
        );
        if o.pass == known {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        println!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
