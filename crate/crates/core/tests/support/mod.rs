//! Shared test oracles.

#![allow(dead_code)]

use deuteron_vqe::compiler::{unitary_of, CMatrix, NativeCircuit, NativeGate};
use deuteron_vqe::pauli::{Pauli, PauliHamiltonian, PauliWord};
use num_complex::Complex64;

pub const PAULIS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

/// Dense density matrix, row-major, basis bit q = qubit q.
#[derive(Clone, Debug)]
pub struct Density {
    pub n: usize,
    pub m: Vec<Complex64>,
}

fn dense(mat: &CMatrix) -> Vec<Complex64> {
    let d = mat.dim();
    (0..d * d).map(|k| mat.get(k / d, k % d)).collect()
}

fn pauli_matrix(word: &PauliWord) -> Vec<Complex64> {
    let d = 1usize << word.n_qubits();
    let mut out = vec![Complex64::new(0.0, 0.0); d * d];
    for col in 0..d {
        let (phase, row) = word.apply_to_basis(col);
        out[row * d + col] = phase;
    }
    out
}

fn matmul(a: &[Complex64], b: &[Complex64], d: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        for k in 0..d {
            let aik = a[i * d + k];
            if aik == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..d {
                out[i * d + j] += aik * b[k * d + j];
            }
        }
    }
    out
}

fn dagger(a: &[Complex64], d: usize) -> Vec<Complex64> {
    (0..d * d).map(|k| a[(k % d) * d + k / d].conj()).collect()
}

impl Density {
    pub fn zero(n: usize) -> Self {
        let d = 1 << n;
        let mut m = vec![Complex64::new(0.0, 0.0); d * d];
        m[0] = Complex64::new(1.0, 0.0);
        Self { n, m }
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    fn conjugate(&self, u: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim();
        matmul(&matmul(u, &self.m, d), &dagger(u, d), d)
    }

    /// `(1 - p) rho + p / (4^k - 1) sum_{P != I} P rho P` over `qubits`.
    pub fn depolarize(&mut self, qubits: &[usize], p: f64) {
        if p == 0.0 {
            return;
        }
        let k = qubits.len() as u32;
        let count = 4usize.pow(k) - 1;
        let mut acc: Vec<Complex64> = self.m.iter().map(|x| x * (1.0 - p)).collect();
        for code in 1..=count {
            let mut ops = Vec::new();
            for (j, &q) in qubits.iter().enumerate() {
                ops.push((q, PAULIS[(code >> (2 * j)) & 3]));
            }
            let word = PauliWord::from_sparse(self.n, &ops).unwrap();
            let term = self.conjugate(&pauli_matrix(&word));
            for (a, t) in acc.iter_mut().zip(term) {
                *a += t * (p / count as f64);
            }
        }
        self.m = acc;
    }

    pub fn apply_gate(&mut self, g: &NativeGate) {
        let u = dense(&unitary_of(self.n, std::slice::from_ref(g)).unwrap());
        self.m = self.conjugate(&u);
    }

    /// Exact channel of the stochastic noise model: ideal gate, then
    /// depolarizing on its support.
    pub fn run(circuit: &NativeCircuit, p1: f64, p2: f64) -> Self {
        let mut rho = Self::zero(circuit.n_qubits());
        for g in circuit.gates() {
            rho.apply_gate(g);
            match *g {
                NativeGate::XX { q1, q2, .. } => rho.depolarize(&[q1, q2], p2),
                NativeGate::RX { qubit, .. } | NativeGate::RY { qubit, .. } | NativeGate::RZ { qubit, .. } => {
                    rho.depolarize(&[qubit], p1)
                }
            }
        }
        rho
    }

    pub fn expectation(&self, word: &PauliWord) -> f64 {
        let d = self.dim();
        let pm = matmul(&pauli_matrix(word), &self.m, d);
        (0..d).map(|i| pm[i * d + i].re).sum()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.m[i * self.dim() + i]).sum()
    }
}

/// Dense matrix of a Pauli Hamiltonian built term by term.
pub fn hamiltonian_matrix(h: &PauliHamiltonian) -> Vec<Complex64> {
    let d = 1usize << h.n_qubits();
    let mut out = vec![Complex64::new(0.0, 0.0); d * d];
    for t in h.terms() {
        for (o, p) in out.iter_mut().zip(pauli_matrix(&t.word)) {
            *o += p * t.coeff;
        }
    }
    out
}

/// `<psi|A|psi>` for a dense matrix.
pub fn quadratic(a: &[Complex64], psi: &[Complex64]) -> Complex64 {
    let d = psi.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..d {
        for j in 0..d {
            acc += psi[i].conj() * a[i * d + j] * psi[j];
        }
    }
    acc
}
