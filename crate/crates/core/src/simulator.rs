//! Statevector simulation with stochastic Pauli noise.
//!
//! Noise is sampled per trajectory: after each `XX` gate one of the 15
//! non-identity two-qubit Paulis is inserted with probability `p2`, after
//! each single-qubit rotation one of `X`, `Y`, `Z` with probability `p1`.
//! Averaging trajectories reproduces the depolarizing channel.
//!
//! Random streams: every trajectory (or shot) `k` under master seed `s` uses
//! `ChaCha8Rng::seed_from_u64(s)` with stream `k`. Results therefore depend
//! only on `(s, k)`, never on how work is split across threads.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compiler::{GateMatrix, NativeCircuit, NativeGate};
use crate::pauli::Pauli;
use crate::{Error, Result};

/// Two-qubit depolarizing rate per `XX` gate.
pub const DEFAULT_P2: f64 = 0.0075;
/// Single-qubit depolarizing rate per rotation.
pub const DEFAULT_P1: f64 = 0.005;
/// Per-qubit symmetric readout flip probability, `1 - 0.978^(1/3)`.
pub const DEFAULT_READOUT_EPS: f64 = 0.0074;
/// Shots per measurement setting.
pub const DEFAULT_SHOTS: usize = 10_000;

/// RNG for trajectory or shot `index` under `master_seed`.
pub fn stream_rng(master_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// Mixes labels into a seed (splitmix64 finalizer), for deriving independent
/// sub-seeds such as one per (fold level, measurement setting).
pub fn derive_seed(master_seed: u64, labels: &[u64]) -> u64 {
    let mut z = master_seed;
    for &l in labels {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(l.wrapping_mul(0xbf58_476d_1ce4_e5b9));
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
    }
    z
}

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl Statevector {
    /// `|0...0>`.
    pub fn zero(n_qubits: usize) -> Self {
        Self::basis(n_qubits, 0)
    }

    /// Computational basis state; bit `q` of `index` is qubit `q`.
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { n_qubits, amps }
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::invalid(format!("amplitude count {len} is not a power of two")));
        }
        let s = Self {
            n_qubits: len.trailing_zeros() as usize,
            amps,
        };
        if (s.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::invalid(format!("state norm {} is not 1", s.norm())));
        }
        Ok(s)
    }

    /// `sum_k a_k |1_k>` over the one-hot states.
    pub fn one_hot(amplitudes: &[f64]) -> Result<Self> {
        let n = amplitudes.len();
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        for (k, a) in amplitudes.iter().enumerate() {
            amps[1 << k] = Complex64::new(*a, 0.0);
        }
        Self::from_amplitudes(amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `1 - |<self|other>|`; zero iff the states agree up to global phase.
    pub fn phase_distance(&self, other: &Statevector) -> f64 {
        let overlap: Complex64 = self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum();
        (1.0 - overlap.norm()).max(0.0)
    }

    pub fn apply<G: GateMatrix>(&mut self, gate: &G) {
        let qs = gate.qubits();
        let m = gate.matrix();
        match qs.as_slice() {
            [q] => self.apply_1q(*q, &m),
            [a, b] => self.apply_2q(*a, *b, &m),
            _ => unreachable!("gates act on one or two qubits"),
        }
    }

    fn apply_1q(&mut self, q: usize, m: &[Complex64]) {
        let bit = 1usize << q;
        for i in 0..self.amps.len() {
            if i & bit != 0 {
                continue;
            }
            let (a0, a1) = (self.amps[i], self.amps[i | bit]);
            self.amps[i] = m[0] * a0 + m[1] * a1;
            self.amps[i | bit] = m[2] * a0 + m[3] * a1;
        }
    }

    fn apply_2q(&mut self, qa: usize, qb: usize, m: &[Complex64]) {
        let (ba, bb) = (1usize << qa, 1usize << qb);
        for i in 0..self.amps.len() {
            if i & (ba | bb) != 0 {
                continue;
            }
            // local index: bit 0 = qa, bit 1 = qb
            let idx = [i, i | ba, i | bb, i | ba | bb];
            let v = idx.map(|k| self.amps[k]);
            for (r, &k) in idx.iter().enumerate() {
                self.amps[k] = (0..4).map(|c| m[r * 4 + c] * v[c]).sum();
            }
        }
    }

    pub fn apply_pauli(&mut self, q: usize, p: Pauli) {
        let bit = 1usize << q;
        match p {
            Pauli::I => {}
            Pauli::X => {
                for i in 0..self.amps.len() {
                    if i & bit == 0 {
                        self.amps.swap(i, i | bit);
                    }
                }
            }
            Pauli::Y => {
                let i_unit = Complex64::new(0.0, 1.0);
                for i in 0..self.amps.len() {
                    if i & bit == 0 {
                        let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                        self.amps[i] = -i_unit * a1;
                        self.amps[i | bit] = i_unit * a0;
                    }
                }
            }
            Pauli::Z => {
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i & bit != 0 {
                        *a = -*a;
                    }
                }
            }
        }
    }

    /// Draws a basis index from `|amp|^2`.
    pub fn sample_index<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for (i, a) in self.amps.iter().enumerate() {
            acc += a.norm_sqr();
            if u < acc {
                return i;
            }
        }
        // u landed in the rounding slack above the cumulative sum
        self.amps.iter().rposition(|a| a.norm_sqr() > 0.0).unwrap_or(0)
    }
}

/// Bitstring with qubit 0 first.
pub fn bitstring(index: usize, n_qubits: usize) -> String {
    (0..n_qubits)
        .map(|q| if (index >> q) & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub fn parse_bitstring(s: &str) -> Result<usize> {
    s.chars().enumerate().try_fold(0usize, |acc, (q, ch)| match ch {
        '0' => Ok(acc),
        '1' => Ok(acc | (1 << q)),
        other => Err(Error::Parse {
            context: "bitstring".into(),
            message: format!("invalid character {other:?} in {s:?}"),
        }),
    })
}

/// Readout confusion of one qubit: `probs[t][o]` is the probability of
/// reporting `o` when the qubit is in `t`. Rows sum to one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReadoutConfusion {
    pub probs: [[f64; 2]; 2],
}

impl ReadoutConfusion {
    pub fn perfect() -> Self {
        Self::symmetric(0.0)
    }

    pub fn symmetric(flip: f64) -> Self {
        Self::new(flip, flip)
    }

    /// `p01`: P(read 1 | 0); `p10`: P(read 0 | 1).
    pub fn new(p01: f64, p10: f64) -> Self {
        Self {
            probs: [[1.0 - p01, p01], [p10, 1.0 - p10]],
        }
    }

    pub fn validate(&self) -> Result<()> {
        for row in &self.probs {
            if row.iter().any(|p| !(0.0..=1.0).contains(p)) || (row[0] + row[1] - 1.0).abs() > 1e-12 {
                return Err(Error::invalid(format!("confusion row {row:?} is not a probability vector")));
            }
        }
        Ok(())
    }

    pub fn flip_probability(&self, true_bit: usize) -> f64 {
        self.probs[true_bit][1 - true_bit]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub p1: f64,
    pub p2: f64,
    pub readout: Vec<ReadoutConfusion>,
}

impl NoiseModel {
    pub fn ideal(n_qubits: usize) -> Self {
        Self {
            p1: 0.0,
            p2: 0.0,
            readout: vec![ReadoutConfusion::perfect(); n_qubits],
        }
    }

    pub fn uniform(n_qubits: usize, p1: f64, p2: f64, readout_eps: f64) -> Self {
        Self {
            p1,
            p2,
            readout: vec![ReadoutConfusion::symmetric(readout_eps); n_qubits],
        }
    }

    /// Hardware-informed defaults.
    pub fn defaults(n_qubits: usize) -> Self {
        Self::uniform(n_qubits, DEFAULT_P1, DEFAULT_P2, DEFAULT_READOUT_EPS)
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        for (name, p) in [("p1", self.p1), ("p2", self.p2)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::invalid(format!("{name} = {p} is outside [0, 1]")));
            }
        }
        if self.readout.len() < n_qubits {
            return Err(Error::DimensionMismatch {
                expected: n_qubits,
                actual: self.readout.len(),
            });
        }
        self.readout.iter().try_for_each(ReadoutConfusion::validate)
    }

    pub fn is_gate_noiseless(&self) -> bool {
        self.p1 == 0.0 && self.p2 == 0.0
    }
}

/// Noise amplification by `XX` folding: `XX(c) -> XX(c) [XX(-c) XX(c)]^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldSpec {
    pub m: usize,
}

impl FoldSpec {
    pub fn new(m: usize) -> Self {
        Self { m }
    }

    /// Noise scale `r = 2m + 1`.
    pub fn r(&self) -> usize {
        2 * self.m + 1
    }
}

fn check_register(circuit: &NativeCircuit, state: &Statevector) -> Result<()> {
    if circuit.n_qubits() != state.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: state.n_qubits(),
            actual: circuit.n_qubits(),
        });
    }
    Ok(())
}

pub fn run_ideal(circuit: &NativeCircuit, initial: &Statevector) -> Result<Statevector> {
    check_register(circuit, initial)?;
    let mut s = initial.clone();
    for g in circuit.gates() {
        s.apply(g);
    }
    Ok(s)
}

pub fn fold_circuit(circuit: &NativeCircuit, spec: FoldSpec) -> NativeCircuit {
    let mut gates = Vec::with_capacity(circuit.gates().len() + 2 * spec.m * circuit.xx_count());
    for g in circuit.gates() {
        gates.push(*g);
        if let NativeGate::XX { q1, q2, chi } = *g {
            for _ in 0..spec.m {
                gates.push(NativeGate::XX { q1, q2, chi: -chi });
                gates.push(NativeGate::XX { q1, q2, chi });
            }
        }
    }
    NativeCircuit::new(circuit.n_qubits(), gates).expect("folding keeps gates valid")
}

const PAULIS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

/// One noisy trajectory drawing from `rng`.
pub fn run_trajectory_with<R: Rng + ?Sized>(
    circuit: &NativeCircuit,
    initial: &Statevector,
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<Statevector> {
    check_register(circuit, initial)?;
    let mut s = initial.clone();
    for g in circuit.gates() {
        s.apply(g);
        match *g {
            NativeGate::XX { q1, q2, .. } => {
                if noise.p2 > 0.0 && rng.random::<f64>() < noise.p2 {
                    // uniform over the 15 non-identity pairs
                    let k = rng.random_range(1..16);
                    s.apply_pauli(q1, PAULIS[k & 3]);
                    s.apply_pauli(q2, PAULIS[k >> 2]);
                }
            }
            NativeGate::RX { qubit, .. } | NativeGate::RY { qubit, .. } | NativeGate::RZ { qubit, .. } => {
                if noise.p1 > 0.0 && rng.random::<f64>() < noise.p1 {
                    s.apply_pauli(qubit, PAULIS[rng.random_range(1..4)]);
                }
            }
        }
    }
    Ok(s)
}

pub fn run_trajectory(
    circuit: &NativeCircuit,
    initial: &Statevector,
    noise: &NoiseModel,
    seed: u64,
) -> Result<Statevector> {
    run_trajectory_with(circuit, initial, noise, &mut stream_rng(seed, 0))
}

/// Measurement histogram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Histogram {
    pub shots: u64,
    pub counts: BTreeMap<String, u64>,
    pub seed: u64,
    pub r: u64,
}

impl Histogram {
    pub fn new(counts: BTreeMap<String, u64>, seed: u64, r: u64) -> Self {
        Self {
            shots: counts.values().sum(),
            counts,
            seed,
            r,
        }
    }

    pub fn n_qubits(&self) -> Option<usize> {
        self.counts.keys().next().map(String::len)
    }

    pub fn frequency(&self, bits: &str) -> f64 {
        if self.shots == 0 {
            return 0.0;
        }
        self.counts.get(bits).copied().unwrap_or(0) as f64 / self.shots as f64
    }
}

fn flip_readout<R: Rng + ?Sized>(index: usize, n_qubits: usize, readout: &[ReadoutConfusion], rng: &mut R) -> usize {
    let mut out = index;
    for (q, conf) in readout.iter().enumerate().take(n_qubits) {
        let bit = (index >> q) & 1;
        let p = conf.flip_probability(bit);
        if p > 0.0 && rng.random::<f64>() < p {
            out ^= 1 << q;
        }
    }
    out
}

fn check_readout(n_qubits: usize, readout: &[ReadoutConfusion]) -> Result<()> {
    if readout.len() < n_qubits {
        return Err(Error::DimensionMismatch {
            expected: n_qubits,
            actual: readout.len(),
        });
    }
    readout.iter().try_for_each(ReadoutConfusion::validate)
}

/// Rotates `state` into the measurement basis (ideal gates), samples `shots`
/// outcomes and passes each bit through its confusion matrix. Shot `k` uses
/// stream `k` of `seed`.
pub fn sample_counts(
    state: &Statevector,
    basis_rotations: &NativeCircuit,
    shots: usize,
    readout: &[ReadoutConfusion],
    seed: u64,
) -> Result<Histogram> {
    if shots == 0 {
        return Err(Error::invalid("shots must be at least 1"));
    }
    check_readout(state.n_qubits(), readout)?;
    let rotated = run_ideal(basis_rotations, state)?;
    let n = state.n_qubits();
    let outcomes: Vec<usize> = (0..shots as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream_rng(seed, k);
            let idx = rotated.sample_index(&mut rng);
            flip_readout(idx, n, readout, &mut rng)
        })
        .collect();
    Ok(tally(outcomes, n, seed, 1))
}

/// Full noisy measurement: shot `k` runs its own trajectory of `circuit`
/// from `|0...0>`, applies the (noiseless) basis rotations, samples one
/// outcome and applies readout error. Shot `k` uses stream `k` of `seed`.
pub fn sample_noisy(
    circuit: &NativeCircuit,
    basis_rotations: &NativeCircuit,
    noise: &NoiseModel,
    shots: usize,
    seed: u64,
    r: u64,
) -> Result<Histogram> {
    if shots == 0 {
        return Err(Error::invalid("shots must be at least 1"));
    }
    let n = circuit.n_qubits();
    noise.validate(n)?;
    let initial = Statevector::zero(n);
    check_register(basis_rotations, &initial)?;
    let ideal = if noise.is_gate_noiseless() {
        Some(run_ideal(&circuit.extended(basis_rotations)?, &initial)?)
    } else {
        None
    };
    let outcomes: Vec<usize> = (0..shots as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream_rng(seed, k);
            let idx = match &ideal {
                Some(s) => s.sample_index(&mut rng),
                None => {
                    let mut s = run_trajectory_with(circuit, &initial, noise, &mut rng).expect("register checked");
                    for g in basis_rotations.gates() {
                        s.apply(g);
                    }
                    s.sample_index(&mut rng)
                }
            };
            flip_readout(idx, n, &noise.readout, &mut rng)
        })
        .collect();
    Ok(tally(outcomes, n, seed, r))
}

fn tally(outcomes: Vec<usize>, n_qubits: usize, seed: u64, r: u64) -> Histogram {
    let mut counts = BTreeMap::new();
    for idx in outcomes {
        *counts.entry(bitstring(idx, n_qubits)).or_insert(0) += 1;
    }
    Histogram::new(counts, seed, r)
}
