//! Energies from measurement histograms, readout-error inversion and
//! Richardson zero-noise extrapolation.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::compiler::{NativeCircuit, NativeGate};
use crate::pauli::{Pauli, PauliHamiltonian, PauliTerm, PauliWord};
use crate::simulator::{bitstring, parse_bitstring, Histogram, ReadoutConfusion, Statevector};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum MeasurementBasis {
    Z,
    X,
    Y,
}

impl MeasurementBasis {
    pub const ALL: [MeasurementBasis; 3] = [MeasurementBasis::Z, MeasurementBasis::X, MeasurementBasis::Y];

    pub fn pauli(self) -> Pauli {
        match self {
            MeasurementBasis::Z => Pauli::Z,
            MeasurementBasis::X => Pauli::X,
            MeasurementBasis::Y => Pauli::Y,
        }
    }

    /// Native gates mapping this basis onto the computational one.
    pub fn rotation(self, n_qubits: usize) -> NativeCircuit {
        let half = std::f64::consts::FRAC_PI_2;
        let gates = (0..n_qubits)
            .filter_map(|q| match self {
                MeasurementBasis::Z => None,
                MeasurementBasis::X => Some(NativeGate::RY { qubit: q, theta: -half }),
                MeasurementBasis::Y => Some(NativeGate::RX { qubit: q, theta: half }),
            })
            .collect();
        NativeCircuit::new(n_qubits, gates).expect("valid qubit indices")
    }
}

impl fmt::Display for MeasurementBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pauli().as_char())
    }
}

/// One basis and the Hamiltonian terms it measures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementSetting {
    pub basis: MeasurementBasis,
    pub terms: Vec<PauliTerm>,
}

/// Groups the non-identity terms into all-Z, all-X and all-Y settings.
/// Settings without terms are omitted.
pub fn measurement_settings(h: &PauliHamiltonian) -> Result<Vec<MeasurementSetting>> {
    let mut groups: BTreeMap<MeasurementBasis, Vec<PauliTerm>> = BTreeMap::new();
    for term in h.terms().iter().filter(|t| !t.word.is_identity()) {
        let basis = MeasurementBasis::ALL
            .into_iter()
            .find(|b| term.word.letters().iter().all(|&p| p == Pauli::I || p == b.pauli()))
            .ok_or_else(|| Error::UncoverableTerm(term.word.to_string()))?;
        groups.entry(basis).or_default().push(term.clone());
    }
    Ok(groups
        .into_iter()
        .map(|(basis, terms)| MeasurementSetting { basis, terms })
        .collect())
}

/// Normalized (quasi-)probabilities over bitstrings with the number of shots
/// they came from. Entries may be negative after readout inversion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasiDistribution {
    pub n_qubits: usize,
    pub shots: u64,
    pub probs: Vec<f64>,
}

impl QuasiDistribution {
    pub fn from_histogram(hist: &Histogram) -> Result<Self> {
        let n_qubits = hist.n_qubits().ok_or(Error::EmptyHistogram)?;
        if hist.shots == 0 {
            return Err(Error::EmptyHistogram);
        }
        let mut probs = vec![0.0; 1 << n_qubits];
        for (bits, &c) in &hist.counts {
            if bits.len() != n_qubits {
                return Err(Error::DimensionMismatch {
                    expected: n_qubits,
                    actual: bits.len(),
                });
            }
            probs[parse_bitstring(bits)?] += c as f64 / hist.shots as f64;
        }
        Ok(Self {
            n_qubits,
            shots: hist.shots,
            probs,
        })
    }

    /// Exact outcome distribution of a state (no sampling).
    pub fn from_state(state: &Statevector, shots: u64) -> Self {
        Self {
            n_qubits: state.n_qubits(),
            shots,
            probs: state.probabilities(),
        }
    }

    pub fn get(&self, bits: &str) -> Result<f64> {
        Ok(self.probs[parse_bitstring(bits)?])
    }

    pub fn to_map(&self) -> BTreeMap<String, f64> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, p)| **p != 0.0)
            .map(|(i, p)| (bitstring(i, self.n_qubits), *p))
            .collect()
    }

    /// Mean of the parity over `word`'s support, read in the computational
    /// basis, with binomial sigma `sqrt((1 - mean^2)/shots)`.
    pub fn parity_expectation(&self, word: &PauliWord) -> (f64, f64) {
        if word.is_identity() {
            return (1.0, 0.0);
        }
        let mask: usize = word.support().iter().map(|q| 1usize << q).sum();
        let mean: f64 = self
            .probs
            .iter()
            .enumerate()
            .map(|(i, p)| if (i & mask).count_ones() % 2 == 1 { -p } else { *p })
            .sum();
        let sigma = if self.shots == 0 {
            0.0
        } else {
            ((1.0 - mean * mean).max(0.0) / self.shots as f64).sqrt()
        };
        (mean, sigma)
    }
}

pub fn term_expectation(counts: &Histogram, word: &PauliWord) -> Result<(f64, f64)> {
    Ok(QuasiDistribution::from_histogram(counts)?.parity_expectation(word))
}

fn map_qubits(dist: &QuasiDistribution, confusion: &[ReadoutConfusion], mut m: impl FnMut(&ReadoutConfusion) -> Result<[[f64; 2]; 2]>) -> Result<QuasiDistribution> {
    if confusion.len() < dist.n_qubits {
        return Err(Error::DimensionMismatch {
            expected: dist.n_qubits,
            actual: confusion.len(),
        });
    }
    let mut probs = dist.probs.clone();
    for (q, conf) in confusion.iter().enumerate().take(dist.n_qubits) {
        let a = m(conf)?;
        let bit = 1usize << q;
        for i in 0..probs.len() {
            if i & bit == 0 {
                let (p0, p1) = (probs[i], probs[i | bit]);
                probs[i] = a[0][0] * p0 + a[0][1] * p1;
                probs[i | bit] = a[1][0] * p0 + a[1][1] * p1;
            }
        }
    }
    Ok(QuasiDistribution {
        n_qubits: dist.n_qubits,
        shots: dist.shots,
        probs,
    })
}

/// Distribution as seen through readout error.
pub fn apply_confusion(dist: &QuasiDistribution, confusion: &[ReadoutConfusion]) -> Result<QuasiDistribution> {
    // observed_o = sum_t true_t * probs[t][o]
    map_qubits(dist, confusion, |c| {
        let p = c.probs;
        Ok([[p[0][0], p[1][0]], [p[0][1], p[1][1]]])
    })
}

/// Applies the tensor-product inverse of the per-qubit confusion matrices.
pub fn spam_correct_distribution(dist: &QuasiDistribution, confusion: &[ReadoutConfusion]) -> Result<QuasiDistribution> {
    let mut qubit = 0;
    map_qubits(dist, confusion, |c| {
        let p = c.probs;
        let det = p[0][0] * p[1][1] - p[1][0] * p[0][1];
        let q = qubit;
        qubit += 1;
        if det.abs() < 1e-12 {
            return Err(Error::SingularConfusion(q));
        }
        // inverse of the transposed matrix
        Ok([[p[1][1] / det, -p[1][0] / det], [-p[0][1] / det, p[0][0] / det]])
    })
}

pub fn spam_correct(counts: &Histogram, confusion: &[ReadoutConfusion]) -> Result<QuasiDistribution> {
    spam_correct_distribution(&QuasiDistribution::from_histogram(counts)?, confusion)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermEstimate {
    pub word: PauliWord,
    pub coeff: f64,
    pub mean: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyEstimate {
    pub value: f64,
    pub sigma: f64,
    pub terms: Vec<TermEstimate>,
}

impl EnergyEstimate {
    fn from_terms(identity: f64, terms: Vec<TermEstimate>) -> Self {
        let value = identity + terms.iter().map(|t| t.coeff * t.mean).sum::<f64>();
        let sigma = terms.iter().map(|t| (t.coeff * t.sigma).powi(2)).sum::<f64>().sqrt();
        Self { value, sigma, terms }
    }
}

/// `identity + sum_k c_k <P_k>` with `sigma = sqrt(sum_k c_k^2 sigma_k^2)`.
pub fn energy_estimate(
    h: &PauliHamiltonian,
    data: &BTreeMap<MeasurementBasis, QuasiDistribution>,
) -> Result<EnergyEstimate> {
    let mut terms = Vec::new();
    for setting in measurement_settings(h)? {
        let dist = data
            .get(&setting.basis)
            .ok_or_else(|| Error::MissingSetting(setting.basis.to_string()))?;
        if dist.n_qubits != h.n_qubits() {
            return Err(Error::DimensionMismatch {
                expected: h.n_qubits(),
                actual: dist.n_qubits,
            });
        }
        for t in setting.terms {
            let (mean, sigma) = dist.parity_expectation(&t.word);
            terms.push(TermEstimate {
                word: t.word,
                coeff: t.coeff,
                mean,
                sigma,
            });
        }
    }
    Ok(EnergyEstimate::from_terms(h.identity_coeff(), terms))
}

/// Exact per-term expectations of a state; all sigmas are zero.
pub fn exact_energy_estimate(h: &PauliHamiltonian, state: &Statevector) -> Result<EnergyEstimate> {
    if state.n_qubits() != h.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: h.n_qubits(),
            actual: state.n_qubits(),
        });
    }
    let terms = h
        .terms()
        .iter()
        .filter(|t| !t.word.is_identity())
        .map(|t| TermEstimate {
            word: t.word.clone(),
            coeff: t.coeff,
            mean: t.word.expectation(state.amplitudes()),
            sigma: 0.0,
        })
        .collect();
    Ok(EnergyEstimate::from_terms(h.identity_coeff(), terms))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZnePoint {
    pub r: u32,
    pub value: f64,
    pub sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<ZnePoint>", into = "Vec<ZnePoint>")]
pub struct ZneSeries {
    points: Vec<ZnePoint>,
}

impl ZneSeries {
    /// Requires distinct odd `r`, finite values and non-negative sigmas.
    /// Zero sigmas are accepted; fits over them fall back to unweighted.
    pub fn new(points: Vec<ZnePoint>) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            if p.r % 2 == 0 {
                return Err(Error::invalid(format!("noise scale r = {} is not odd", p.r)));
            }
            if !p.value.is_finite() || !p.sigma.is_finite() || p.sigma < 0.0 {
                return Err(Error::invalid(format!("bad point at r = {}: {} +- {}", p.r, p.value, p.sigma)));
            }
            if points[..i].iter().any(|q| q.r == p.r) {
                return Err(Error::invalid(format!("duplicate noise scale r = {}", p.r)));
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[ZnePoint] {
        &self.points
    }
}

impl TryFrom<Vec<ZnePoint>> for ZneSeries {
    type Error = Error;
    fn try_from(points: Vec<ZnePoint>) -> Result<Self> {
        Self::new(points)
    }
}

impl From<ZneSeries> for Vec<ZnePoint> {
    fn from(s: ZneSeries) -> Self {
        s.points
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FitKind {
    #[default]
    Linear,
    Quadratic,
}

impl FitKind {
    pub fn n_params(self) -> usize {
        match self {
            FitKind::Linear => 2,
            FitKind::Quadratic => 3,
        }
    }
}

impl std::str::FromStr for FitKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(FitKind::Linear),
            "quadratic" => Ok(FitKind::Quadratic),
            other => Err(Error::invalid(format!("unknown fit kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZneResult {
    pub intercept: f64,
    pub intercept_sigma: f64,
    pub slope: f64,
    /// Second-order coefficient for quadratic fits.
    pub curvature: Option<f64>,
    pub kind: FitKind,
    /// False when some sigma was zero and the fit fell back to equal weights.
    pub weighted: bool,
}

/// Polynomial least-squares fit result: coefficients in ascending order and
/// their covariance.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyFit {
    pub coeffs: Vec<f64>,
    pub covariance: Vec<Vec<f64>>,
    pub weighted: bool,
}

/// Fits `y = sum_j c_j x^j` for `j < degree + 1`. With `weighted` and all
/// sigmas positive, weights are `1/sigma^2` and the covariance is
/// `(X^T W X)^-1`. Otherwise weights are equal and the covariance is scaled
/// by the residual variance (zero when the fit is exactly determined).
pub fn polyfit(xs: &[f64], ys: &[f64], sigmas: &[f64], degree: usize, weighted: bool) -> Result<PolyFit> {
    let n = xs.len();
    let p = degree + 1;
    if ys.len() != n || sigmas.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: ys.len().min(sigmas.len()),
        });
    }
    if n < p {
        return Err(Error::Underdetermined { points: n, params: p });
    }
    let use_weights = weighted && sigmas.iter().all(|s| *s > 0.0);
    let w: Vec<f64> = if use_weights {
        sigmas.iter().map(|s| 1.0 / (s * s)).collect()
    } else {
        vec![1.0; n]
    };
    let mut ata = vec![vec![0.0; p]; p];
    let mut aty = vec![0.0; p];
    for k in 0..n {
        let pows: Vec<f64> = (0..p).map(|j| xs[k].powi(j as i32)).collect();
        for i in 0..p {
            aty[i] += w[k] * pows[i] * ys[k];
            for j in 0..p {
                ata[i][j] += w[k] * pows[i] * pows[j];
            }
        }
    }
    let inv = invert(&ata).ok_or(Error::Underdetermined { points: n, params: p })?;
    let coeffs: Vec<f64> = (0..p).map(|i| (0..p).map(|j| inv[i][j] * aty[j]).sum()).collect();
    let mut covariance = inv;
    if !use_weights {
        let rss: f64 = (0..n)
            .map(|k| {
                let fit: f64 = (0..p).map(|j| coeffs[j] * xs[k].powi(j as i32)).sum();
                (ys[k] - fit).powi(2)
            })
            .sum();
        let s2 = if n > p { rss / (n - p) as f64 } else { 0.0 };
        covariance.iter_mut().flatten().for_each(|c| *c *= s2);
    }
    Ok(PolyFit {
        coeffs,
        covariance,
        weighted: use_weights,
    })
}

/// Gauss-Jordan inverse with partial pivoting; `None` when singular.
fn invert(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| m[x][col].abs().total_cmp(&m[y][col].abs()))?;
        if m[piv][col].abs() <= 1e-14 * scale {
            return None;
        }
        m.swap(col, piv);
        let d = m[col][col];
        m[col].iter_mut().for_each(|v| *v /= d);
        for row in 0..n {
            if row != col {
                let f = m[row][col];
                if f != 0.0 {
                    for k in 0..2 * n {
                        m[row][k] -= f * m[col][k];
                    }
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Fits value against `r` and evaluates the fit at `r = 0`.
pub fn richardson_extrapolate(series: &ZneSeries, kind: FitKind, weighted: bool) -> Result<ZneResult> {
    let pts = series.points();
    let xs: Vec<f64> = pts.iter().map(|p| p.r as f64).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.value).collect();
    let ss: Vec<f64> = pts.iter().map(|p| p.sigma).collect();
    let fit = polyfit(&xs, &ys, &ss, kind.n_params() - 1, weighted)?;
    Ok(ZneResult {
        intercept: fit.coeffs[0],
        intercept_sigma: fit.covariance[0][0].max(0.0).sqrt(),
        slope: fit.coeffs[1],
        curvature: fit.coeffs.get(2).copied(),
        kind,
        weighted: fit.weighted,
    })
}

/// Extrapolates every term separately and recombines them into an energy.
/// `per_scale[i]` holds the term estimates at `scales[i]`, in a common order.
pub fn extrapolate_terms(
    identity_coeff: f64,
    scales: &[u32],
    per_scale: &[EnergyEstimate],
    kind: FitKind,
    weighted: bool,
) -> Result<(EnergyEstimate, Vec<ZneResult>)> {
    if scales.len() != per_scale.len() || per_scale.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: scales.len(),
            actual: per_scale.len(),
        });
    }
    let template = &per_scale[0].terms;
    let mut terms = Vec::with_capacity(template.len());
    let mut fits = Vec::with_capacity(template.len());
    for (k, t) in template.iter().enumerate() {
        let points = scales
            .iter()
            .zip(per_scale)
            .map(|(&r, e)| {
                let tk = e.terms.get(k).filter(|x| x.word == t.word).ok_or_else(|| {
                    Error::invalid(format!("term {} missing at r = {r}", t.word))
                })?;
                Ok(ZnePoint {
                    r,
                    value: tk.mean,
                    sigma: tk.sigma,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let fit = richardson_extrapolate(&ZneSeries::new(points)?, kind, weighted)?;
        terms.push(TermEstimate {
            word: t.word.clone(),
            coeff: t.coeff,
            mean: fit.intercept,
            sigma: fit.intercept_sigma,
        });
        fits.push(fit);
    }
    Ok((EnergyEstimate::from_terms(identity_coeff, terms), fits))
}
