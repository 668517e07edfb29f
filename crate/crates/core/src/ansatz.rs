//! Hyperspherical UCCS ansatz.
//!
//! With single excitations only, the UCCS state is an arbitrary real unit
//! vector over the one-hot states `|1_k>`. Writing it in hyperspherical
//! angles gives
//!
//! ```text
//! a_0 = cos g(l_0)
//! a_k = sin g(l_0) ... sin g(l_{k-1}) cos g(l_k)
//! a_{N-1} = sin g(l_0) ... sin g(l_{N-2})
//! ```
//!
//! and the state is prepared by a ladder of amplitude-shifting blocks
//! `U_{i,i+1}(l_i) = CX(i+1 -> i) . CRY(i -> i+1)`.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::hamiltonian::OscillatorHamiltonian;
use crate::optimize::NelderMead;
use crate::reference::TABLE_ONE;
use crate::{Error, Result};

/// Map from a published angle `l` to the hyperspherical angle `g(l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleMap {
    Identity,
    Half,
    Double,
    Complement,
    ComplementHalf,
    Negated,
    NegatedHalf,
}

impl AngleMap {
    pub const ALL: [AngleMap; 7] = [
        AngleMap::Identity,
        AngleMap::Half,
        AngleMap::Double,
        AngleMap::Complement,
        AngleMap::ComplementHalf,
        AngleMap::Negated,
        AngleMap::NegatedHalf,
    ];

    pub fn apply(self, l: f64) -> f64 {
        match self {
            AngleMap::Identity => l,
            AngleMap::Half => 0.5 * l,
            AngleMap::Double => 2.0 * l,
            AngleMap::Complement => FRAC_PI_2 - l,
            AngleMap::ComplementHalf => FRAC_PI_2 - 0.5 * l,
            AngleMap::Negated => -l,
            AngleMap::NegatedHalf => -0.5 * l,
        }
    }
}

/// How a list of published angles is turned into hyperspherical angles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AngleConvention {
    pub map: AngleMap,
    /// Read the angle list back to front.
    pub reversed: bool,
}

impl AngleConvention {
    /// `g(l) = l / 2`: `l` is the full `RY` rotation angle of each
    /// controlled rotation, `RY(l) = exp(-i l Y / 2)`. This is the convention
    /// under which the four-state landscape table reproduces.
    pub const RESOLVED: AngleConvention = AngleConvention {
        map: AngleMap::Half,
        reversed: false,
    };

    /// The literal reading `g(l) = l`.
    pub const LITERAL: AngleConvention = AngleConvention {
        map: AngleMap::Identity,
        reversed: false,
    };

    pub fn candidates() -> impl Iterator<Item = AngleConvention> {
        AngleMap::ALL.into_iter().flat_map(|map| {
            [false, true]
                .into_iter()
                .map(move |reversed| AngleConvention { map, reversed })
        })
    }

    fn angles(&self, lambdas: &[f64]) -> Vec<f64> {
        let mut g: Vec<f64> = lambdas.iter().map(|&l| self.map.apply(l)).collect();
        if self.reversed {
            g.reverse();
        }
        g
    }
}

impl Default for AngleConvention {
    fn default() -> Self {
        Self::RESOLVED
    }
}

/// The N-1 variational angles of an N-state ansatz.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HypersphericalParams {
    lambdas: Vec<f64>,
}

impl HypersphericalParams {
    pub fn new(lambdas: Vec<f64>) -> Result<Self> {
        if let Some(bad) = lambdas.iter().find(|l| !l.is_finite()) {
            return Err(Error::invalid(format!("angle {bad} is not finite")));
        }
        Ok(Self { lambdas })
    }

    pub fn zeros(n_states: usize) -> Self {
        Self {
            lambdas: vec![0.0; n_states.saturating_sub(1)],
        }
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn n_states(&self) -> usize {
        self.lambdas.len() + 1
    }

    pub fn check_states(&self, n_states: usize) -> Result<()> {
        if self.n_states() != n_states {
            return Err(Error::DimensionMismatch {
                expected: n_states.saturating_sub(1),
                actual: self.lambdas.len(),
            });
        }
        Ok(())
    }
}

/// Real amplitudes over the one-hot states, unit norm.
pub fn amplitudes(params: &HypersphericalParams, conv: AngleConvention) -> Vec<f64> {
    let g = conv.angles(params.lambdas());
    let mut out = Vec::with_capacity(g.len() + 1);
    let mut tail = 1.0;
    for angle in g {
        out.push(tail * angle.cos());
        tail *= angle.sin();
    }
    out.push(tail);
    out
}

/// `a^T H a` with `a = amplitudes(params)`.
pub fn energy_expectation_exact(
    params: &HypersphericalParams,
    conv: AngleConvention,
    h: &OscillatorHamiltonian,
) -> Result<f64> {
    params.check_states(h.dim())?;
    h.quadratic_form(&amplitudes(params, conv))
}

pub const OPTIMIZER_RESTARTS: usize = 8;
const RESTART_SEED: u64 = 0x5eed_0001;

/// Minimizes the exact energy with multi-start Nelder-Mead. Restart `k`
/// draws its start point from its own ChaCha stream, so the result does not
/// depend on thread scheduling.
pub fn optimal_parameters(
    h: &OscillatorHamiltonian,
    conv: AngleConvention,
) -> Result<(HypersphericalParams, f64)> {
    let n_params = h.dim() - 1;
    if n_params == 0 {
        return Ok((HypersphericalParams::zeros(1), h.get(0, 0)));
    }
    let nm = NelderMead {
        f_tol: 1e-8,
        x_tol: 1e-9,
        ..Default::default()
    };
    let objective = |x: &[f64]| {
        let p = HypersphericalParams { lambdas: x.to_vec() };
        h.quadratic_form(&amplitudes(&p, conv)).unwrap_or(f64::INFINITY)
    };
    let best = (0..OPTIMIZER_RESTARTS)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(RESTART_SEED);
            rng.set_stream(k as u64);
            let x0: Vec<f64> = (0..n_params).map(|_| rng.random_range(0.0..PI)).collect();
            nm.minimize(objective, &x0)
        })
        .min_by(|a, b| a.value.total_cmp(&b.value))
        .expect("at least one restart");
    Ok((HypersphericalParams::new(best.x)?, best.value))
}

/// Logical gate set of the ansatz circuits. Rotation angles are full `RY`
/// angles: `RY(t) = exp(-i t Y / 2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LogicalGate {
    /// `X` on a qubit; prepares the occupied reference state.
    PrepExcite { qubit: usize },
    ControlledRY { control: usize, target: usize, angle: f64 },
    ControlledX { control: usize, target: usize },
    /// Uncontrolled `RY`; produced by known-input simplification.
    RY { qubit: usize, angle: f64 },
}

impl LogicalGate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            LogicalGate::PrepExcite { qubit } | LogicalGate::RY { qubit, .. } => vec![qubit],
            LogicalGate::ControlledRY { control, target, .. }
            | LogicalGate::ControlledX { control, target } => vec![control, target],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogicalCircuit {
    n_qubits: usize,
    gates: Vec<LogicalGate>,
}

impl LogicalCircuit {
    pub fn new(n_qubits: usize, gates: Vec<LogicalGate>) -> Result<Self> {
        for g in &gates {
            let qs = g.qubits();
            if let Some(q) = qs.iter().find(|&&q| q >= n_qubits) {
                return Err(Error::invalid(format!("qubit {q} out of range for {n_qubits} qubits")));
            }
            if qs.len() == 2 && qs[0] == qs[1] {
                return Err(Error::invalid(format!("control and target coincide on qubit {}", qs[0])));
            }
            if let LogicalGate::ControlledRY { angle, .. } | LogicalGate::RY { angle, .. } = g {
                if !angle.is_finite() {
                    return Err(Error::invalid("rotation angle is not finite"));
                }
            }
        }
        Ok(Self { n_qubits, gates })
    }

    pub fn empty(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            gates: Vec::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[LogicalGate] {
        &self.gates
    }
}

/// Builds `C_N`: `X` on qubit 0, then `U_{i,i+1}(l_i)` for `i = 0..N-2`.
/// `U(l)(a|00> + b|10>) = a|00> + b(cos g(l)|10> + sin g(l)|01>)`.
pub fn build_ansatz_circuit(
    n_states: usize,
    params: &HypersphericalParams,
    conv: AngleConvention,
) -> Result<LogicalCircuit> {
    if n_states < 2 {
        return Err(Error::invalid(format!("ansatz circuit needs at least 2 states, got {n_states}")));
    }
    params.check_states(n_states)?;
    let g = conv.angles(params.lambdas());
    let mut gates = vec![LogicalGate::PrepExcite { qubit: 0 }];
    for (i, angle) in g.into_iter().enumerate() {
        gates.push(LogicalGate::ControlledRY {
            control: i,
            target: i + 1,
            angle: 2.0 * angle,
        });
        gates.push(LogicalGate::ControlledX {
            control: i + 1,
            target: i,
        });
    }
    LogicalCircuit::new(n_states, gates)
}

/// Outcome of the brute-force search for the angle convention behind the
/// published landscape table.
#[derive(Debug, Clone, Serialize)]
pub struct ConventionReport {
    pub tolerance: f64,
    /// Every candidate with its worst deviation over the table, best first.
    pub candidates: Vec<(AngleConvention, f64)>,
    /// The unique best candidate, if it meets the tolerance.
    pub selected: Option<AngleConvention>,
    /// Energies of the three-state quoted optimum under each candidate.
    pub h3_quoted_optimum: Vec<(AngleConvention, f64)>,
}

/// Tries every candidate convention against the theory column of the
/// four-state landscape table.
pub fn resolve_convention(h4: &OscillatorHamiltonian, h3: &OscillatorHamiltonian, tolerance: f64) -> Result<ConventionReport> {
    let mut candidates = Vec::new();
    let mut h3_quoted_optimum = Vec::new();
    let h3_params = HypersphericalParams::new(crate::reference::H3_QUOTED_OPTIMUM.to_vec())?;
    for conv in AngleConvention::candidates() {
        let mut worst: f64 = 0.0;
        for row in &TABLE_ONE {
            let p = HypersphericalParams::new(row.lambdas.to_vec())?;
            let e = energy_expectation_exact(&p, conv, h4)?;
            worst = worst.max((e - row.theory).abs());
        }
        candidates.push((conv, worst));
        h3_quoted_optimum.push((conv, energy_expectation_exact(&h3_params, conv, h3)?));
    }
    candidates.sort_by(|a, b| a.1.total_cmp(&b.1));
    let selected = candidates
        .first()
        .filter(|(_, err)| *err <= tolerance)
        .map(|(c, _)| *c);
    Ok(ConventionReport {
        tolerance,
        candidates,
        selected,
        h3_quoted_optimum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{build_oscillator_hamiltonian, EftConfig, DEFAULT_V0};

    fn h(n: usize) -> OscillatorHamiltonian {
        build_oscillator_hamiltonian(&EftConfig::new(n)).unwrap()
    }

    fn p(v: &[f64]) -> HypersphericalParams {
        HypersphericalParams::new(v.to_vec()).unwrap()
    }

    #[test]
    fn amplitude_examples() {
        assert_eq!(amplitudes(&p(&[0.0]), AngleConvention::LITERAL), vec![1.0, 0.0]);
        let a = amplitudes(&p(&[FRAC_PI_2, FRAC_PI_2]), AngleConvention::LITERAL);
        assert!(a[0].abs() < 1e-15 && a[1].abs() < 1e-15 && (a[2] - 1.0).abs() < 1e-15);
        let a = amplitudes(&p(&[0.25, 0.83]), AngleConvention::LITERAL);
        for (got, want) in a.iter().zip([0.968912, 0.166967, 0.182567]) {
            assert!((got - want).abs() < 1e-5);
        }
    }

    #[test]
    fn reference_state_energy() {
        for n in 2..=5 {
            let e = energy_expectation_exact(&HypersphericalParams::zeros(n), AngleConvention::RESOLVED, &h(n)).unwrap();
            assert!((e - (5.25 + DEFAULT_V0)).abs() < 1e-12);
        }
    }

    #[test]
    fn table_row_one_under_resolved_convention() {
        let e = energy_expectation_exact(&p(&[0.858, 0.958, 0.758]), AngleConvention::RESOLVED, &h(4)).unwrap();
        assert!((e + 2.143).abs() < 2e-3, "{e}");
    }

    #[test]
    fn optimum_matches_eigenvalue() {
        for (n, want) in [(2, -1.749), (3, -2.046), (4, -2.143)] {
            let hn = h(n);
            let (params, e) = optimal_parameters(&hn, AngleConvention::RESOLVED).unwrap();
            assert_eq!(params.n_states(), n);
            assert!((e - want).abs() < 1e-3);
            let exact = crate::hamiltonian::exact_ground_energy(&hn).unwrap();
            assert!((e - exact).abs() < 1e-4);
        }
    }

    #[test]
    fn circuit_shape() {
        let c2 = build_ansatz_circuit(2, &p(&[0.3]), AngleConvention::RESOLVED).unwrap();
        assert_eq!(
            c2.gates(),
            &[
                LogicalGate::PrepExcite { qubit: 0 },
                LogicalGate::ControlledRY { control: 0, target: 1, angle: 0.3 },
                LogicalGate::ControlledX { control: 1, target: 0 },
            ]
        );
        let c4 = build_ansatz_circuit(4, &p(&[0.1, 0.2, 0.3]), AngleConvention::RESOLVED).unwrap();
        assert_eq!(c4.gates().len(), 7);
        assert!(build_ansatz_circuit(1, &HypersphericalParams::zeros(1), AngleConvention::RESOLVED).is_err());
        assert!(build_ansatz_circuit(3, &p(&[0.1]), AngleConvention::RESOLVED).is_err());
    }

    #[test]
    fn convention_search_selects_half_angle() {
        let report = resolve_convention(&h(4), &h(3), 5e-3).unwrap();
        assert_eq!(report.selected, Some(AngleConvention::RESOLVED));
        assert!(report.candidates[0].1 < 5e-3);
        assert!(report.candidates[1].1 > 5e-3);
    }

    #[test]
    fn rejects_non_finite() {
        assert!(HypersphericalParams::new(vec![f64::NAN]).is_err());
    }
}
