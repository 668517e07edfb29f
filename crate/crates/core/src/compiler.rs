//! Trapped-ion compilation.
//!
//! Native gates use `RP(t) = exp(-i t P / 2)` for `P` in `{X, Y, Z}` and
//! `XX(chi) = exp(-i chi X(x)X / 2)`, so `XX(pi/2)` is the maximally
//! entangling Molmer-Sorensen interaction.
//!
//! Logical gates are rewritten with three identities:
//!
//! ```text
//! CX(c,t)          = Y_c(pi/2) XX(pi/2) X_c(-pi/2) X_t(-pi/2) Y_c(-pi/2)
//! CRY(c,t; t)      = Y_t(t/2) CX Y_t(-t/2) CX
//! CX Y_t(t) CX     = X_c(-pi/2) Z_c(-pi/2) Z_t(-pi/2) XX(t) Z_c(pi/2) Z_t(pi/2) X_c(pi/2)
//! ```
//!
//! (gates listed in time order). A controlled `RY` therefore costs a single
//! `XX`: `CRY(t) = Y_t(t/2) . [CX Y_t(-t/2) CX]`.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ansatz::{LogicalCircuit, LogicalGate};
use crate::{Error, Result};

/// Dense unitaries are refused above this many qubits.
pub const MAX_UNITARY_QUBITS: usize = 10;

/// Two unitaries are treated as equal up to phase when
/// `1 - |tr(U^dag V)| / 2^n` is below this.
pub const EQUIVALENCE_TOL: f64 = 1e-9;

const ANGLE_EPS: f64 = 1e-12;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A gate with a small dense matrix on the qubits it touches.
///
/// `matrix()` is row-major of size `2^k x 2^k` for `k = qubits().len()`, and
/// bit `j` of a local basis index is the state of `qubits()[j]`.
pub trait GateMatrix {
    fn qubits(&self) -> Vec<usize>;
    fn matrix(&self) -> Vec<Complex64>;
}

fn rotation(axis: char, theta: f64) -> Vec<Complex64> {
    let (cs, sn) = ((0.5 * theta).cos(), (0.5 * theta).sin());
    match axis {
        'x' => vec![c(cs, 0.0), c(0.0, -sn), c(0.0, -sn), c(cs, 0.0)],
        'y' => vec![c(cs, 0.0), c(-sn, 0.0), c(sn, 0.0), c(cs, 0.0)],
        _ => vec![c(cs, -sn), c(0.0, 0.0), c(0.0, 0.0), c(cs, sn)],
    }
}

fn xx_matrix(chi: f64) -> Vec<Complex64> {
    let (cs, sn) = ((0.5 * chi).cos(), (0.5 * chi).sin());
    let z = c(0.0, 0.0);
    let d = c(cs, 0.0);
    let o = c(0.0, -sn);
    // basis |00>,|01>,|10>,|11>; X(x)X maps i -> 3 - i
    vec![d, z, z, o, z, d, o, z, z, o, d, z, o, z, z, d]
}

/// Controlled single-qubit gate, control on local bit 0, target on bit 1.
fn controlled(u: &[Complex64]) -> Vec<Complex64> {
    let mut m = vec![c(0.0, 0.0); 16];
    // local index = control + 2 * target
    m[0] = c(1.0, 0.0); // |c=0,t=0>
    m[2 * 4 + 2] = c(1.0, 0.0); // |c=0,t=1>
    for (ti, row) in [1usize, 3].iter().enumerate() {
        for (tj, col) in [1usize, 3].iter().enumerate() {
            m[row * 4 + col] = u[ti * 2 + tj];
        }
    }
    m
}

impl GateMatrix for LogicalGate {
    fn qubits(&self) -> Vec<usize> {
        LogicalGate::qubits(self)
    }

    fn matrix(&self) -> Vec<Complex64> {
        match *self {
            LogicalGate::PrepExcite { .. } => vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            LogicalGate::RY { angle, .. } => rotation('y', angle),
            LogicalGate::ControlledRY { angle, .. } => controlled(&rotation('y', angle)),
            LogicalGate::ControlledX { .. } => {
                controlled(&[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NativeGate {
    RX { qubit: usize, theta: f64 },
    RY { qubit: usize, theta: f64 },
    RZ { qubit: usize, theta: f64 },
    XX { q1: usize, q2: usize, chi: f64 },
}

impl NativeGate {
    pub fn angle(&self) -> f64 {
        match *self {
            NativeGate::RX { theta, .. } | NativeGate::RY { theta, .. } | NativeGate::RZ { theta, .. } => theta,
            NativeGate::XX { chi, .. } => chi,
        }
    }

    fn with_angle(self, a: f64) -> Self {
        match self {
            NativeGate::RX { qubit, .. } => NativeGate::RX { qubit, theta: a },
            NativeGate::RY { qubit, .. } => NativeGate::RY { qubit, theta: a },
            NativeGate::RZ { qubit, .. } => NativeGate::RZ { qubit, theta: a },
            NativeGate::XX { q1, q2, .. } => NativeGate::XX { q1, q2, chi: a },
        }
    }

    pub fn is_xx(&self) -> bool {
        matches!(self, NativeGate::XX { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            NativeGate::RX { .. } => "rx",
            NativeGate::RY { .. } => "ry",
            NativeGate::RZ { .. } => "rz",
            NativeGate::XX { .. } => "xx",
        }
    }

    /// Same gate kind on the same qubit set, so the two combine into one.
    fn merges_with(&self, other: &NativeGate) -> bool {
        match (*self, *other) {
            (NativeGate::XX { q1: a, q2: b, .. }, NativeGate::XX { q1: c, q2: d, .. }) => {
                (a, b) == (c, d) || (a, b) == (d, c)
            }
            _ => self.name() == other.name() && self.qubits() == other.qubits(),
        }
    }

    /// Sufficient (not necessary) commutation test.
    fn commutes_with(&self, other: &NativeGate) -> bool {
        let (qa, qb) = (self.qubits(), other.qubits());
        if qa.iter().all(|q| !qb.contains(q)) {
            return true;
        }
        use NativeGate::*;
        match (self, other) {
            // every XX term commutes with every other XX term and with X_q
            (XX { .. }, XX { .. }) | (RX { .. }, XX { .. }) | (XX { .. }, RX { .. }) => true,
            _ => self.merges_with(other),
        }
    }
}

impl GateMatrix for NativeGate {
    fn qubits(&self) -> Vec<usize> {
        match *self {
            NativeGate::RX { qubit, .. } | NativeGate::RY { qubit, .. } | NativeGate::RZ { qubit, .. } => vec![qubit],
            NativeGate::XX { q1, q2, .. } => vec![q1, q2],
        }
    }

    fn matrix(&self) -> Vec<Complex64> {
        match *self {
            NativeGate::RX { theta, .. } => rotation('x', theta),
            NativeGate::RY { theta, .. } => rotation('y', theta),
            NativeGate::RZ { theta, .. } => rotation('z', theta),
            NativeGate::XX { chi, .. } => xx_matrix(chi),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NativeCircuit {
    n_qubits: usize,
    gates: Vec<NativeGate>,
}

impl NativeCircuit {
    pub fn new(n_qubits: usize, gates: Vec<NativeGate>) -> Result<Self> {
        for g in &gates {
            let qs = g.qubits();
            if let Some(q) = qs.iter().find(|&&q| q >= n_qubits) {
                return Err(Error::invalid(format!("qubit {q} out of range for {n_qubits} qubits")));
            }
            if qs.len() == 2 && qs[0] == qs[1] {
                return Err(Error::invalid(format!("XX acts twice on qubit {}", qs[0])));
            }
            if !g.angle().is_finite() {
                return Err(Error::invalid(format!("{} angle is not finite", g.name())));
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

    pub fn gates(&self) -> &[NativeGate] {
        &self.gates
    }

    pub fn into_gates(self) -> Vec<NativeGate> {
        self.gates
    }

    /// Appends another circuit on the same register.
    pub fn extended(&self, tail: &NativeCircuit) -> Result<NativeCircuit> {
        if tail.n_qubits > self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                actual: tail.n_qubits,
            });
        }
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&tail.gates);
        Ok(NativeCircuit {
            n_qubits: self.n_qubits,
            gates,
        })
    }

    pub fn counts(&self) -> GateCounts {
        let mut counts = GateCounts::default();
        for g in &self.gates {
            match g {
                NativeGate::RX { .. } => counts.rx += 1,
                NativeGate::RY { .. } => counts.ry += 1,
                NativeGate::RZ { .. } => counts.rz += 1,
                NativeGate::XX { .. } => counts.xx += 1,
            }
        }
        counts
    }

    pub fn xx_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_xx()).count()
    }

    /// Every `XX` acts on qubits `q` and `q + 1`.
    pub fn is_nearest_neighbor(&self) -> bool {
        self.gates.iter().all(|g| match *g {
            NativeGate::XX { q1, q2, .. } => q1.abs_diff(q2) == 1,
            _ => true,
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub xx: usize,
    pub rx: usize,
    pub ry: usize,
    pub rz: usize,
}

impl fmt::Display for GateCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "xx_count: {}\nrx_count: {}\nry_count: {}\nrz_count: {}",
            self.xx, self.rx, self.ry, self.rz
        )
    }
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![c(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = c(1.0, 0.0);
        }
        Self { dim, data }
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Self {
            dim,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        let n = self.dim;
        let mut out = vec![c(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == c(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        CMatrix { dim: n, data: out }
    }

    /// `tr(self^dag rhs)`.
    pub fn inner(&self, rhs: &CMatrix) -> Complex64 {
        self.data.iter().zip(&rhs.data).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn max_abs_diff(&self, rhs: &CMatrix) -> f64 {
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Embeds a local gate matrix into the full `2^n` space.
fn embed(n_qubits: usize, qubits: &[usize], local: &[Complex64]) -> CMatrix {
    let dim = 1usize << n_qubits;
    let k = qubits.len();
    let ldim = 1usize << k;
    let mask: usize = qubits.iter().map(|q| 1usize << q).sum();
    let local_index = |b: usize| -> usize {
        qubits
            .iter()
            .enumerate()
            .map(|(j, &q)| ((b >> q) & 1) << j)
            .sum()
    };
    let mut data = vec![c(0.0, 0.0); dim * dim];
    for row in 0..dim {
        for col in 0..dim {
            if row & !mask != col & !mask {
                continue;
            }
            data[row * dim + col] = local[local_index(row) * ldim + local_index(col)];
        }
    }
    CMatrix { dim, data }
}

/// Full circuit unitary; the first gate acts first.
pub fn unitary_of<G: GateMatrix>(n_qubits: usize, gates: &[G]) -> Result<CMatrix> {
    if n_qubits > MAX_UNITARY_QUBITS {
        return Err(Error::TooManyQubits(n_qubits));
    }
    let mut u = CMatrix::identity(1 << n_qubits);
    for g in gates {
        u = embed(n_qubits, &g.qubits(), &g.matrix()).mul(&u);
    }
    Ok(u)
}

pub fn logical_unitary(circuit: &LogicalCircuit) -> Result<CMatrix> {
    unitary_of(circuit.n_qubits(), circuit.gates())
}

pub fn native_unitary(circuit: &NativeCircuit) -> Result<CMatrix> {
    unitary_of(circuit.n_qubits(), circuit.gates())
}

/// `1 - |tr(A^dag B)| / d`: zero iff `B = e^{i phi} A` for unitaries.
pub fn phase_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.dim(), b.dim(), "dimension mismatch");
    (1.0 - a.inner(b).norm() / a.dim() as f64).max(0.0)
}

pub fn equivalent_up_to_phase(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    a.dim() == b.dim() && phase_distance(a, b) <= tol
}

fn cnot_gates(control: usize, target: usize) -> Vec<NativeGate> {
    use NativeGate::*;
    vec![
        RY { qubit: control, theta: FRAC_PI_2 },
        XX { q1: control, q2: target, chi: FRAC_PI_2 },
        RX { qubit: control, theta: -FRAC_PI_2 },
        RX { qubit: target, theta: -FRAC_PI_2 },
        RY { qubit: control, theta: -FRAC_PI_2 },
    ]
}

/// `CX Y_t(theta) CX`, one `XX(theta)`.
fn cx_ry_cx_gates(control: usize, target: usize, theta: f64) -> Vec<NativeGate> {
    use NativeGate::*;
    vec![
        RX { qubit: control, theta: -FRAC_PI_2 },
        RZ { qubit: control, theta: -FRAC_PI_2 },
        RZ { qubit: target, theta: -FRAC_PI_2 },
        XX { q1: control, q2: target, chi: theta },
        RZ { qubit: control, theta: FRAC_PI_2 },
        RZ { qubit: target, theta: FRAC_PI_2 },
        RX { qubit: control, theta: FRAC_PI_2 },
    ]
}

/// `CX` with control 0 and target 1.
pub fn decompose_cnot() -> NativeCircuit {
    NativeCircuit {
        n_qubits: 2,
        gates: cnot_gates(0, 1),
    }
}

/// Controlled `RY(theta)` (control 0, target 1) from two `CX`.
pub fn decompose_cry(theta: f64) -> NativeCircuit {
    let mut gates = vec![NativeGate::RY { qubit: 1, theta: 0.5 * theta }];
    gates.extend(cnot_gates(0, 1));
    gates.push(NativeGate::RY { qubit: 1, theta: -0.5 * theta });
    gates.extend(cnot_gates(0, 1));
    NativeCircuit { n_qubits: 2, gates }
}

/// `CX RY_1(theta) CX` (control 0) as a single `XX(theta)` with local frames.
pub fn decompose_cx_ry_cx(theta: f64) -> NativeCircuit {
    NativeCircuit {
        n_qubits: 2,
        gates: cx_ry_cx_gates(0, 1, theta),
    }
}

fn cry_gates(control: usize, target: usize, theta: f64) -> Vec<NativeGate> {
    let mut gates = vec![NativeGate::RY { qubit: target, theta: 0.5 * theta }];
    gates.extend(cx_ry_cx_gates(control, target, -0.5 * theta));
    gates
}

/// Rewrites a logical circuit into native gates, gate by gate.
pub fn transpile(circuit: &LogicalCircuit) -> Result<NativeCircuit> {
    let mut gates = Vec::new();
    for g in circuit.gates() {
        match *g {
            // RX(pi) = -iX
            LogicalGate::PrepExcite { qubit } => gates.push(NativeGate::RX { qubit, theta: PI }),
            LogicalGate::RY { qubit, angle } => gates.push(NativeGate::RY { qubit, theta: angle }),
            LogicalGate::ControlledX { control, target } => gates.extend(cnot_gates(control, target)),
            LogicalGate::ControlledRY { control, target, angle } => {
                gates.extend(cry_gates(control, target, angle))
            }
        }
    }
    NativeCircuit::new(circuit.n_qubits(), gates)
}

/// Reduces an angle to `(-2pi, 2pi]`; rotations by multiples of `2pi` are
/// `+-I`.
fn wrap_angle(a: f64) -> f64 {
    let r = a % (2.0 * TAU);
    if r > TAU {
        r - 2.0 * TAU
    } else if r <= -TAU {
        r + 2.0 * TAU
    } else {
        r
    }
}

fn is_trivial(angle: f64) -> bool {
    let r = angle.rem_euclid(TAU);
    r < ANGLE_EPS || TAU - r < ANGLE_EPS
}

/// Peephole optimization.
///
/// Rules, applied to a fixed point:
/// - drop rotations and `XX` by a multiple of `2pi` (identity up to sign);
/// - merge two gates of the same kind on the same qubits, looking back past
///   gates they commute with (disjoint support, `XX` with `XX`, `RX` with
///   `XX`); inverse pairs merge to zero and are then dropped.
///
/// No rule adds gates, so `XX` and `RX` counts never increase.
pub fn optimize_native(circuit: &NativeCircuit) -> NativeCircuit {
    let mut gates: Vec<NativeGate> = circuit.gates.clone();
    loop {
        let mut changed = false;
        let mut out: Vec<NativeGate> = Vec::with_capacity(gates.len());
        for g in gates {
            if is_trivial(g.angle()) {
                changed = true;
                continue;
            }
            let mut merged = false;
            for j in (0..out.len()).rev() {
                if out[j].merges_with(&g) {
                    let sum = wrap_angle(out[j].angle() + g.angle());
                    if is_trivial(sum) {
                        out.remove(j);
                    } else {
                        out[j] = out[j].with_angle(sum);
                    }
                    merged = true;
                    break;
                }
                if !out[j].commutes_with(&g) {
                    break;
                }
            }
            if merged {
                changed = true;
            } else {
                out.push(g);
            }
        }
        gates = out;
        if !changed {
            break;
        }
    }
    NativeCircuit {
        n_qubits: circuit.n_qubits,
        gates,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Known {
    Zero,
    One,
    Unknown,
}

/// Specializes a logical circuit to the all-zero input by tracking qubits
/// that are still in a computational basis state. Controlled gates with a
/// known control are dropped (control `|0>`) or made unconditional
/// (control `|1>`). The output state on `|0...0>` is unchanged, including
/// phase; the unitary in general is not.
pub fn propagate_known_input(circuit: &LogicalCircuit) -> Result<LogicalCircuit> {
    let mut state = vec![Known::Zero; circuit.n_qubits()];
    let mut gates = Vec::with_capacity(circuit.gates().len());
    for g in circuit.gates() {
        match *g {
            LogicalGate::PrepExcite { qubit } => {
                state[qubit] = match state[qubit] {
                    Known::Zero => Known::One,
                    Known::One => Known::Zero,
                    Known::Unknown => Known::Unknown,
                };
                gates.push(*g);
            }
            LogicalGate::RY { qubit, angle } => {
                if !is_trivial(angle) || state[qubit] == Known::Unknown {
                    state[qubit] = Known::Unknown;
                }
                gates.push(*g);
            }
            LogicalGate::ControlledX { control, target } => match state[control] {
                Known::Zero => {}
                Known::One => {
                    gates.push(LogicalGate::PrepExcite { qubit: target });
                    state[target] = match state[target] {
                        Known::Zero => Known::One,
                        Known::One => Known::Zero,
                        Known::Unknown => Known::Unknown,
                    };
                }
                Known::Unknown => {
                    state[target] = Known::Unknown;
                    gates.push(*g);
                }
            },
            LogicalGate::ControlledRY { control, target, angle } => match state[control] {
                Known::Zero => {}
                Known::One => {
                    gates.push(LogicalGate::RY { qubit: target, angle });
                    state[target] = Known::Unknown;
                }
                Known::Unknown => {
                    state[target] = Known::Unknown;
                    gates.push(*g);
                }
            },
        }
    }
    LogicalCircuit::new(circuit.n_qubits(), gates)
}

/// State-preparation compile of an ansatz circuit: known-input
/// specialization, then gate-wise transpilation, then peephole optimization.
pub fn compile_ansatz(circuit: &LogicalCircuit) -> Result<NativeCircuit> {
    let specialized = propagate_known_input(circuit)?;
    Ok(optimize_native(&transpile(&specialized)?))
}

/// Matrix-checked record of the native identities under the fixed rotation
/// conventions.
#[derive(Debug, Clone, Serialize)]
pub struct ConventionsReport {
    pub rotation: &'static str,
    pub entangler: &'static str,
    pub identities: Vec<IdentityCheck>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub native_sequence: String,
    pub xx_count: usize,
    pub max_phase_distance: f64,
    pub holds: bool,
}

fn describe(c: &NativeCircuit) -> String {
    c.gates()
        .iter()
        .map(|g| match *g {
            NativeGate::XX { q1, q2, chi } => format!("xx({q1},{q2};{chi:+.4})"),
            other => format!("{}({};{:+.4})", other.name(), other.qubits()[0], other.angle()),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn conventions_report() -> Result<ConventionsReport> {
    let cx = LogicalCircuit::new(2, vec![LogicalGate::ControlledX { control: 0, target: 1 }])?;
    let probe_angles = [0.0, 0.37, FRAC_PI_2, 2.1, -1.3];
    let mut identities = Vec::new();

    let frag = decompose_cnot();
    let d = phase_distance(&logical_unitary(&cx)?, &native_unitary(&frag)?);
    identities.push(IdentityCheck {
        name: "cx",
        native_sequence: describe(&frag),
        xx_count: frag.xx_count(),
        max_phase_distance: d,
        holds: d <= EQUIVALENCE_TOL,
    });

    let mut worst_cry: f64 = 0.0;
    let mut worst_cxrycx: f64 = 0.0;
    for &theta in &probe_angles {
        let cry = LogicalCircuit::new(2, vec![LogicalGate::ControlledRY { control: 0, target: 1, angle: theta }])?;
        worst_cry = worst_cry.max(phase_distance(&logical_unitary(&cry)?, &native_unitary(&decompose_cry(theta))?));
        let target = LogicalCircuit::new(
            2,
            vec![
                LogicalGate::ControlledX { control: 0, target: 1 },
                LogicalGate::RY { qubit: 1, angle: theta },
                LogicalGate::ControlledX { control: 0, target: 1 },
            ],
        )?;
        worst_cxrycx = worst_cxrycx.max(phase_distance(
            &logical_unitary(&target)?,
            &native_unitary(&decompose_cx_ry_cx(theta))?,
        ));
    }
    let frag = decompose_cry(1.0);
    identities.push(IdentityCheck {
        name: "cry",
        native_sequence: describe(&frag).replace("+0.5000", "+theta/2").replace("-0.5000", "-theta/2"),
        xx_count: frag.xx_count(),
        max_phase_distance: worst_cry,
        holds: worst_cry <= EQUIVALENCE_TOL,
    });
    let frag = decompose_cx_ry_cx(1.0);
    identities.push(IdentityCheck {
        name: "cx_ry_cx",
        native_sequence: describe(&frag).replace("+1.0000", "+theta"),
        xx_count: frag.xx_count(),
        max_phase_distance: worst_cxrycx,
        holds: worst_cxrycx <= EQUIVALENCE_TOL,
    });

    Ok(ConventionsReport {
        rotation: "RP(theta) = exp(-i theta P / 2)",
        entangler: "XX(chi) = exp(-i chi X(x)X / 2)",
        identities,
    })
}

/// Flat JSON form shared by logical and native gates:
/// `{"gate": "xx", "q": [1, 2], "angle": -0.479}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateRecord {
    pub gate: String,
    pub q: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<f64>,
}

impl GateRecord {
    fn angle_or_err(&self) -> Result<f64> {
        self.angle.ok_or_else(|| Error::Parse {
            context: "gate record".into(),
            message: format!("gate {:?} needs an angle", self.gate),
        })
    }

    fn arity(&self, n: usize) -> Result<()> {
        if self.q.len() != n {
            return Err(Error::Parse {
                context: "gate record".into(),
                message: format!("gate {:?} takes {n} qubit(s), got {}", self.gate, self.q.len()),
            });
        }
        Ok(())
    }
}

impl From<&LogicalGate> for GateRecord {
    fn from(g: &LogicalGate) -> Self {
        let (gate, angle) = match *g {
            LogicalGate::PrepExcite { .. } => ("x", None),
            LogicalGate::RY { angle, .. } => ("ry", Some(angle)),
            LogicalGate::ControlledRY { angle, .. } => ("cry", Some(angle)),
            LogicalGate::ControlledX { .. } => ("cx", None),
        };
        GateRecord {
            gate: gate.into(),
            q: g.qubits(),
            angle,
        }
    }
}

impl TryFrom<&GateRecord> for LogicalGate {
    type Error = Error;

    fn try_from(r: &GateRecord) -> Result<Self> {
        Ok(match r.gate.to_ascii_lowercase().as_str() {
            "x" | "prep" => {
                r.arity(1)?;
                LogicalGate::PrepExcite { qubit: r.q[0] }
            }
            "ry" => {
                r.arity(1)?;
                LogicalGate::RY { qubit: r.q[0], angle: r.angle_or_err()? }
            }
            "cry" => {
                r.arity(2)?;
                LogicalGate::ControlledRY { control: r.q[0], target: r.q[1], angle: r.angle_or_err()? }
            }
            "cx" | "cnot" => {
                r.arity(2)?;
                LogicalGate::ControlledX { control: r.q[0], target: r.q[1] }
            }
            other => return Err(Error::UnsupportedGate(other.to_string())),
        })
    }
}

impl From<&NativeGate> for GateRecord {
    fn from(g: &NativeGate) -> Self {
        GateRecord {
            gate: g.name().into(),
            q: g.qubits(),
            angle: Some(g.angle()),
        }
    }
}

impl TryFrom<&GateRecord> for NativeGate {
    type Error = Error;

    fn try_from(r: &GateRecord) -> Result<Self> {
        let theta = r.angle_or_err()?;
        Ok(match r.gate.to_ascii_lowercase().as_str() {
            "rx" => {
                r.arity(1)?;
                NativeGate::RX { qubit: r.q[0], theta }
            }
            "ry" => {
                r.arity(1)?;
                NativeGate::RY { qubit: r.q[0], theta }
            }
            "rz" => {
                r.arity(1)?;
                NativeGate::RZ { qubit: r.q[0], theta }
            }
            "xx" => {
                r.arity(2)?;
                NativeGate::XX { q1: r.q[0], q2: r.q[1], chi: theta }
            }
            other => return Err(Error::UnsupportedGate(other.to_string())),
        })
    }
}

fn register_size(records: &[GateRecord]) -> usize {
    records.iter().flat_map(|r| r.q.iter()).max().map_or(0, |m| m + 1)
}

impl Serialize for LogicalCircuit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.gates().iter().map(GateRecord::from))
    }
}

impl<'de> Deserialize<'de> for LogicalCircuit {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<GateRecord>::deserialize(d)?;
        let gates = records
            .iter()
            .map(LogicalGate::try_from)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        LogicalCircuit::new(register_size(&records), gates).map_err(serde::de::Error::custom)
    }
}

impl Serialize for NativeCircuit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.gates.iter().map(GateRecord::from))
    }
}

impl<'de> Deserialize<'de> for NativeCircuit {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<GateRecord>::deserialize(d)?;
        let gates = records
            .iter()
            .map(NativeGate::try_from)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        NativeCircuit::new(register_size(&records), gates).map_err(serde::de::Error::custom)
    }
}

/// Gate-name histogram.
pub fn histogram(circuit: &NativeCircuit) -> BTreeMap<&'static str, usize> {
    let mut h = BTreeMap::new();
    for g in circuit.gates() {
        *h.entry(g.name()).or_insert(0) += 1;
    }
    h
}
