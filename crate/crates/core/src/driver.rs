//! End-to-end runs: zero-noise-extrapolated energies, VQE loops, landscape
//! scans, quadratic landscape fits and convergence reports.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ansatz::{build_ansatz_circuit, energy_expectation_exact, optimal_parameters, AngleConvention, HypersphericalParams};
use crate::compiler::{compile_ansatz, NativeCircuit};
use crate::estimator::{
    energy_estimate, exact_energy_estimate, extrapolate_terms, measurement_settings, polyfit, richardson_extrapolate,
    spam_correct, EnergyEstimate, FitKind, MeasurementBasis, QuasiDistribution, ZnePoint, ZneResult, ZneSeries,
};
use crate::hamiltonian::{build_oscillator_hamiltonian, exact_ground_energy, EftConfig, OscillatorHamiltonian, EXACT_DEUTERON_ENERGY};
use crate::optimize::NelderMead;
use crate::pauli::{jordan_wigner, PauliHamiltonian};
use crate::reference::LITERATURE_POINTS;
use crate::simulator::{
    derive_seed, fold_circuit, run_ideal, sample_noisy, FoldSpec, Histogram, NoiseModel, Statevector, DEFAULT_P1,
    DEFAULT_P2, DEFAULT_READOUT_EPS, DEFAULT_SHOTS,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExtrapolationMode {
    /// Fit the total energy against `r`.
    #[default]
    WholeEnergy,
    /// Fit each Pauli term against `r` and recombine.
    PerTerm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub n_states: usize,
    pub hbar_omega: f64,
    pub v0: f64,
    /// Angles in the published convention; `None` uses the exact optimum.
    pub params: Option<Vec<f64>>,
    /// Shots per measurement setting; `0` gives exact expectations of the
    /// noiseless circuit.
    pub shots: usize,
    /// Fold levels `M`, noise scale `r = 2M + 1`.
    pub folds: Vec<usize>,
    pub p1: f64,
    pub p2: f64,
    pub readout_eps: f64,
    pub spam_correction: bool,
    pub seed: u64,
    pub fit: FitKind,
    pub weighted: bool,
    pub extrapolation: ExtrapolationMode,
    pub convention: AngleConvention,
    /// Objective evaluations allowed to the VQE optimizer.
    pub max_evals: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n_states: 3,
            hbar_omega: crate::hamiltonian::DEFAULT_HBAR_OMEGA,
            v0: crate::hamiltonian::DEFAULT_V0,
            params: None,
            shots: DEFAULT_SHOTS,
            folds: vec![0, 1, 2, 3],
            p1: DEFAULT_P1,
            p2: DEFAULT_P2,
            readout_eps: DEFAULT_READOUT_EPS,
            spam_correction: true,
            seed: 0,
            fit: FitKind::Linear,
            weighted: true,
            extrapolation: ExtrapolationMode::WholeEnergy,
            convention: AngleConvention::RESOLVED,
            max_evals: 200,
        }
    }
}

impl RunConfig {
    pub fn new(n_states: usize) -> Self {
        Self {
            n_states,
            ..Default::default()
        }
    }

    /// Noiseless configuration with exact expectations.
    pub fn exact(n_states: usize) -> Self {
        Self {
            shots: 0,
            folds: vec![0],
            p1: 0.0,
            p2: 0.0,
            readout_eps: 0.0,
            ..Self::new(n_states)
        }
    }

    pub fn eft(&self) -> EftConfig {
        EftConfig {
            hbar_omega: self.hbar_omega,
            v0: self.v0,
            n_states: self.n_states,
        }
    }

    pub fn noise(&self) -> NoiseModel {
        NoiseModel::uniform(self.n_states, self.p1, self.p2, self.readout_eps)
    }

    pub fn validate(&self) -> Result<()> {
        self.eft().validate()?;
        if self.n_states < 2 {
            return Err(Error::invalid("circuit runs need at least 2 states"));
        }
        if self.folds.is_empty() {
            return Err(Error::invalid("fold list is empty"));
        }
        let mut seen = self.folds.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != self.folds.len() {
            return Err(Error::invalid("fold list has duplicates"));
        }
        self.noise().validate(self.n_states)?;
        if let Some(p) = &self.params {
            HypersphericalParams::new(p.clone())?.check_states(self.n_states)?;
        }
        Ok(())
    }
}

/// Everything a run needs that follows from its configuration.
#[derive(Debug, Clone)]
pub struct Problem {
    pub config: RunConfig,
    pub oscillator: OscillatorHamiltonian,
    pub hamiltonian: PauliHamiltonian,
    noise: NoiseModel,
    bases: Vec<MeasurementBasis>,
}

impl Problem {
    pub fn new(config: RunConfig) -> Result<Self> {
        config.validate()?;
        let oscillator = build_oscillator_hamiltonian(&config.eft())?;
        let hamiltonian = jordan_wigner(&oscillator)?;
        let bases = measurement_settings(&hamiltonian)?.into_iter().map(|s| s.basis).collect();
        Ok(Self {
            noise: config.noise(),
            config,
            oscillator,
            hamiltonian,
            bases,
        })
    }

    /// Configured angles, or the exact optimum when none are given.
    pub fn initial_params(&self) -> Result<HypersphericalParams> {
        match &self.config.params {
            Some(p) => HypersphericalParams::new(p.clone()),
            None => Ok(optimal_parameters(&self.oscillator, self.config.convention)?.0),
        }
    }

    pub fn theory(&self, params: &HypersphericalParams) -> Result<f64> {
        energy_expectation_exact(params, self.config.convention, &self.oscillator)
    }

    pub fn compile(&self, params: &HypersphericalParams) -> Result<NativeCircuit> {
        compile_ansatz(&build_ansatz_circuit(self.config.n_states, params, self.config.convention)?)
    }

    /// One zero-noise-extrapolated energy at `params`. Setting `b` at fold
    /// level `m` samples with seed `derive_seed(seed, [m, b])`.
    pub fn evaluate(&self, params: &HypersphericalParams, seed: u64) -> Result<ZneEvaluation> {
        let cfg = &self.config;
        let native = self.compile(params)?;
        let n = cfg.n_states;
        let jobs: Vec<(usize, usize)> = cfg
            .folds
            .iter()
            .flat_map(|&m| (0..self.bases.len()).map(move |b| (m, b)))
            .collect();
        let measured: Vec<SettingRecord> = jobs
            .par_iter()
            .map(|&(m, b)| {
                let basis = self.bases[b];
                let folded = fold_circuit(&native, FoldSpec::new(m));
                let rotation = basis.rotation(n);
                let r = FoldSpec::new(m).r() as u64;
                if cfg.shots == 0 {
                    let state = run_ideal(&folded.extended(&rotation)?, &Statevector::zero(n))?;
                    return Ok(SettingRecord {
                        m,
                        basis,
                        seed: None,
                        counts: None,
                        distribution: QuasiDistribution::from_state(&state, 0),
                    });
                }
                let s = derive_seed(seed, &[m as u64, b as u64]);
                let hist = sample_noisy(&folded, &rotation, &self.noise, cfg.shots, s, r)?;
                let distribution = if cfg.spam_correction {
                    spam_correct(&hist, &self.noise.readout)?
                } else {
                    QuasiDistribution::from_histogram(&hist)?
                };
                Ok(SettingRecord {
                    m,
                    basis,
                    seed: Some(s),
                    counts: Some(hist),
                    distribution,
                })
            })
            .collect::<Result<_>>()?;

        let mut levels = Vec::with_capacity(cfg.folds.len());
        for &m in &cfg.folds {
            let data: BTreeMap<MeasurementBasis, QuasiDistribution> = measured
                .iter()
                .filter(|rec| rec.m == m)
                .map(|rec| (rec.basis, rec.distribution.clone()))
                .collect();
            let estimate = if cfg.shots == 0 && cfg.folds.len() == 1 {
                let state = run_ideal(&native, &Statevector::zero(n))?;
                exact_energy_estimate(&self.hamiltonian, &state)?
            } else {
                energy_estimate(&self.hamiltonian, &data)?
            };
            levels.push(FoldLevel {
                m,
                r: FoldSpec::new(m).r() as u32,
                estimate,
            });
        }

        let series = ZneSeries::new(
            levels
                .iter()
                .map(|l| ZnePoint {
                    r: l.r,
                    value: l.estimate.value,
                    sigma: l.estimate.sigma,
                })
                .collect(),
        )?;
        let (energy, sigma, fit, term_fits) = if levels.len() == 1 {
            let e = &levels[0].estimate;
            (e.value, e.sigma, None, None)
        } else {
            let fit = richardson_extrapolate(&series, cfg.fit, cfg.weighted)?;
            match cfg.extrapolation {
                ExtrapolationMode::WholeEnergy => (fit.intercept, fit.intercept_sigma, Some(fit), None),
                ExtrapolationMode::PerTerm => {
                    let scales: Vec<u32> = levels.iter().map(|l| l.r).collect();
                    let per: Vec<EnergyEstimate> = levels.iter().map(|l| l.estimate.clone()).collect();
                    let (e, fits) = extrapolate_terms(self.hamiltonian.identity_coeff(), &scales, &per, cfg.fit, cfg.weighted)?;
                    (e.value, e.sigma, Some(fit), Some(fits))
                }
            }
        };
        Ok(ZneEvaluation {
            params: params.lambdas().to_vec(),
            seed,
            energy,
            sigma,
            series,
            fit,
            term_fits,
            levels,
            records: measured,
        })
    }
}

/// Measurement of one basis at one fold level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SettingRecord {
    pub m: usize,
    pub basis: MeasurementBasis,
    pub seed: Option<u64>,
    pub counts: Option<Histogram>,
    /// Readout-corrected distribution when correction is enabled.
    pub distribution: QuasiDistribution,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldLevel {
    pub m: usize,
    pub r: u32,
    pub estimate: EnergyEstimate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZneEvaluation {
    pub params: Vec<f64>,
    pub seed: u64,
    /// Headline energy: the extrapolated value, or the single level's
    /// estimate when only one fold level is configured.
    pub energy: f64,
    pub sigma: f64,
    pub series: ZneSeries,
    /// Whole-energy fit, absent with a single fold level.
    pub fit: Option<ZneResult>,
    pub term_fits: Option<Vec<ZneResult>>,
    pub levels: Vec<FoldLevel>,
    pub records: Vec<SettingRecord>,
}

impl ZneEvaluation {
    /// Estimate at the lowest configured fold level.
    pub fn unmitigated(&self) -> &EnergyEstimate {
        &self.levels.iter().min_by_key(|l| l.m).expect("at least one level").estimate
    }
}

/// Zero-noise-extrapolated energy for the configured (or optimal) angles.
pub fn zne_run(cfg: &RunConfig) -> Result<ZneEvaluation> {
    let problem = Problem::new(cfg.clone())?;
    let params = problem.initial_params()?;
    problem.evaluate(&params, cfg.seed)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub evaluation: usize,
    pub params: Vec<f64>,
    pub series: ZneSeries,
    pub energy: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VqeOutcome {
    pub params: Vec<f64>,
    /// Fresh evaluation at the final parameters.
    pub result: ZneEvaluation,
    pub theory: f64,
    pub converged: bool,
    pub evaluations: usize,
    pub trace: Vec<TraceEntry>,
}

const VQE_EVAL_TAG: u64 = 0x7671_6500;
const VQE_FINAL_TAG: u64 = 0x7671_6501;
const SCAN_TAG: u64 = 0x7363_616e;

/// Nelder-Mead over the angles with the extrapolated energy as objective.
/// Evaluation `i` uses seed `derive_seed(seed, [tag, i])`, so every call sees
/// fresh shot noise yet the whole run replays exactly.
pub fn vqe_run(cfg: &RunConfig) -> Result<VqeOutcome> {
    let problem = Problem::new(cfg.clone())?;
    let x0 = match &cfg.params {
        Some(p) => p.clone(),
        None => vec![1.0; cfg.n_states - 1],
    };
    let noisy = cfg.shots > 0;
    let nm = NelderMead {
        max_evals: cfg.max_evals,
        f_tol: if noisy { 0.0 } else { 1e-10 },
        x_tol: if noisy { 1e-3 } else { 1e-8 },
        initial_step: 0.5,
        resample_on_shrink: noisy,
    };
    let mut trace = Vec::new();
    let mut failure = None;
    let min = nm.minimize(
        |x| {
            let index = trace.len();
            let outcome = HypersphericalParams::new(x.to_vec())
                .and_then(|p| problem.evaluate(&p, derive_seed(cfg.seed, &[VQE_EVAL_TAG, index as u64])));
            match outcome {
                Ok(ev) => {
                    trace.push(TraceEntry {
                        evaluation: index,
                        params: x.to_vec(),
                        series: ev.series,
                        energy: ev.energy,
                        sigma: ev.sigma,
                    });
                    ev.energy
                }
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::INFINITY
                }
            }
        },
        &x0,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let params = HypersphericalParams::new(min.x.clone())?;
    let result = problem.evaluate(&params, derive_seed(cfg.seed, &[VQE_FINAL_TAG]))?;
    Ok(VqeOutcome {
        theory: problem.theory(&params)?,
        params: min.x,
        result,
        converged: min.converged,
        evaluations: min.evaluations,
        trace,
    })
}

/// One angle varied over a list of values, the others held fixed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub index: usize,
    pub values: Vec<f64>,
    pub base: Vec<f64>,
}

impl ScanSpec {
    pub fn new(index: usize, values: Vec<f64>, base: Vec<f64>) -> Result<Self> {
        if index >= base.len() {
            return Err(Error::invalid(format!(
                "scan index {index} out of range for {} angles",
                base.len()
            )));
        }
        Ok(Self { index, values, base })
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.values
            .iter()
            .map(|&v| {
                let mut p = self.base.clone();
                p[self.index] = v;
                p
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub params: Vec<f64>,
    pub energy: f64,
    pub sigma: f64,
    pub fit: Option<ZneResult>,
    pub theory: f64,
}

/// Full pipeline at every parameter set; row `i` uses seed
/// `derive_seed(seed, [tag, i])`. Rows come back in input order.
pub fn landscape_points(cfg: &RunConfig, rows: &[Vec<f64>]) -> Result<Vec<ScanRow>> {
    let problem = Problem::new(cfg.clone())?;
    rows.par_iter()
        .enumerate()
        .map(|(i, p)| {
            let params = HypersphericalParams::new(p.clone())?;
            params.check_states(cfg.n_states)?;
            let ev = problem.evaluate(&params, derive_seed(cfg.seed, &[SCAN_TAG, i as u64]))?;
            Ok(ScanRow {
                theory: problem.theory(&params)?,
                params: ev.params,
                energy: ev.energy,
                sigma: ev.sigma,
                fit: ev.fit,
            })
        })
        .collect()
}

pub fn landscape_scan(cfg: &RunConfig, spec: &ScanSpec) -> Result<Vec<ScanRow>> {
    if spec.base.len() + 1 != cfg.n_states {
        return Err(Error::DimensionMismatch {
            expected: cfg.n_states - 1,
            actual: spec.base.len(),
        });
    }
    landscape_points(cfg, &spec.rows())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraticMinimum {
    pub location: f64,
    pub location_sigma: f64,
    pub energy: f64,
    pub sigma: f64,
    pub weighted: bool,
}

/// Fits `E(x) = c + b x + a x^2` to `(x, E, sigma)` points and returns the
/// vertex, with uncertainties propagated to first order from the fit
/// covariance.
pub fn fit_quadratic_minimum(points: &[(f64, f64, f64)], weighted: bool) -> Result<QuadraticMinimum> {
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    let ss: Vec<f64> = points.iter().map(|p| p.2).collect();
    let fit = polyfit(&xs, &ys, &ss, 2, weighted)?;
    let (c, b, a) = (fit.coeffs[0], fit.coeffs[1], fit.coeffs[2]);
    if a <= 0.0 {
        return Err(Error::ConcaveFit(a));
    }
    let propagate = |grad: [f64; 3]| -> f64 {
        let mut v = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                v += grad[i] * fit.covariance[i][j] * grad[j];
            }
        }
        v.max(0.0).sqrt()
    };
    Ok(QuadraticMinimum {
        location: -b / (2.0 * a),
        location_sigma: propagate([0.0, -1.0 / (2.0 * a), b / (2.0 * a * a)]),
        energy: c - b * b / (4.0 * a),
        sigma: propagate([1.0, -b / (2.0 * a), b * b / (4.0 * a * a)]),
        weighted: fit.weighted,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n_states: usize,
    pub energy: Option<f64>,
    pub sigma: Option<f64>,
    /// Exact minimum of the hyperspherical ansatz, equal to the lowest
    /// eigenvalue of the N-state Hamiltonian.
    pub uccs: f64,
    /// No result was supplied for this size.
    pub gap: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiteraturePoint {
    pub platform: String,
    pub n_states: usize,
    pub energy: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub exact_energy: f64,
    pub rows: Vec<ConvergenceRow>,
    pub literature: Vec<LiteraturePoint>,
    /// Exact minima decrease with N and stay above the exact energy.
    pub monotone: bool,
}

/// Energy against basis size for N = 2, 3, 4 plus any other sizes supplied.
/// `results` maps N to `(energy, sigma)`; missing sizes are flagged as gaps.
pub fn convergence_report(results: &BTreeMap<usize, (f64, f64)>, eft: &EftConfig) -> Result<ConvergenceReport> {
    let mut sizes: Vec<usize> = vec![2, 3, 4];
    sizes.extend(results.keys().copied());
    sizes.sort_unstable();
    sizes.dedup();
    let rows = sizes
        .into_iter()
        .map(|n| {
            let h = build_oscillator_hamiltonian(&EftConfig { n_states: n, ..*eft })?;
            let got = results.get(&n);
            Ok(ConvergenceRow {
                n_states: n,
                energy: got.map(|r| r.0),
                sigma: got.map(|r| r.1),
                uccs: exact_ground_energy(&h)?,
                gap: got.is_none(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let monotone = rows.windows(2).all(|w| w[0].uccs > w[1].uccs)
        && rows.last().is_some_and(|r| r.uccs > EXACT_DEUTERON_ENERGY);
    Ok(ConvergenceReport {
        exact_energy: EXACT_DEUTERON_ENERGY,
        rows,
        literature: LITERATURE_POINTS
            .iter()
            .map(|&(platform, n_states, energy, sigma)| LiteraturePoint {
                platform: platform.to_string(),
                n_states,
                energy,
                sigma,
            })
            .collect(),
        monotone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference::{TABLE_ONE, UCCS_MINIMA};

    #[test]
    fn exact_vqe_reaches_minima() {
        for (n, e) in UCCS_MINIMA {
            let out = vqe_run(&RunConfig::exact(n)).unwrap();
            assert!((out.result.energy - e).abs() < 1e-3, "N={n}: {}", out.result.energy);
            let h = build_oscillator_hamiltonian(&EftConfig::new(n)).unwrap();
            let opt = optimal_parameters(&h, AngleConvention::RESOLVED).unwrap().1;
            assert!((out.result.energy - opt).abs() < 1e-3);
            assert!(!out.trace.is_empty());
        }
    }

    #[test]
    fn exact_pipeline_equals_analytic() {
        let mut cfg = RunConfig::exact(4);
        cfg.folds = vec![0, 1, 2];
        for row in TABLE_ONE.iter().take(4) {
            cfg.params = Some(row.lambdas.to_vec());
            let ev = zne_run(&cfg).unwrap();
            let p = HypersphericalParams::new(row.lambdas.to_vec()).unwrap();
            let h = build_oscillator_hamiltonian(&EftConfig::new(4)).unwrap();
            let want = energy_expectation_exact(&p, AngleConvention::RESOLVED, &h).unwrap();
            assert!((ev.energy - want).abs() < 1e-9);
            assert!((ev.unmitigated().value - want).abs() < 1e-9);
        }
    }

    #[test]
    fn scan_rows_follow_spec() {
        let spec = ScanSpec::new(1, vec![0.19, 0.41, 1.44, 1.63], vec![0.858, 0.958, 0.758]).unwrap();
        let rows = landscape_scan(&RunConfig::exact(4), &spec).unwrap();
        for (row, table) in rows.iter().zip(&TABLE_ONE[5..9]) {
            assert!((row.theory - table.theory).abs() < 5e-3);
            assert!((row.energy - row.theory).abs() < 1e-9);
        }
        assert!(ScanSpec::new(3, vec![], vec![0.0; 3]).is_err());
    }

    #[test]
    fn quadratic_vertex() {
        let pts: Vec<(f64, f64, f64)> = [0.0, 1.0, 2.0].iter().map(|&x| (x, (x - 1.0f64).powi(2) - 2.0, 0.1)).collect();
        let q = fit_quadratic_minimum(&pts, true).unwrap();
        assert!((q.location - 1.0).abs() < 1e-12 && (q.energy + 2.0).abs() < 1e-12);
        let concave: Vec<_> = pts.iter().map(|p| (p.0, -p.1, p.2)).collect();
        assert!(matches!(fit_quadratic_minimum(&concave, true), Err(Error::ConcaveFit(_))));
        assert!(fit_quadratic_minimum(&pts[..2], true).is_err());
    }

    #[test]
    fn report_flags_gaps() {
        let mut res = BTreeMap::new();
        res.insert(2, (-1.75, 0.01));
        res.insert(3, (-2.04, 0.02));
        let rep = convergence_report(&res, &EftConfig::default()).unwrap();
        assert_eq!(rep.exact_energy, -2.224);
        assert_eq!(rep.rows.len(), 3);
        assert!(rep.rows[2].gap && !rep.rows[0].gap);
        assert!(rep.monotone);
        for (row, (n, e)) in rep.rows.iter().zip(UCCS_MINIMA) {
            assert_eq!(row.n_states, n);
            assert!((row.uccs - e).abs() < 2e-3);
        }
    }

    #[test]
    fn config_validation() {
        let mut cfg = RunConfig::new(3);
        cfg.folds.clear();
        assert!(cfg.validate().is_err());
        let mut cfg = RunConfig::new(3);
        cfg.folds = vec![1, 1];
        assert!(cfg.validate().is_err());
        let mut cfg = RunConfig::new(3);
        cfg.params = Some(vec![0.1]);
        assert!(cfg.validate().is_err());
        assert!(RunConfig::new(1).validate().is_err());
        assert!(RunConfig::new(4).validate().is_ok());
    }

    #[test]
    fn noisy_evaluation_replays() {
        let cfg = RunConfig {
            shots: 500,
            seed: 11,
            ..RunConfig::new(2)
        };
        let a = zne_run(&cfg).unwrap();
        let b = zne_run(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.records.len(), 12);
        assert!(a.fit.is_some());
    }
}
