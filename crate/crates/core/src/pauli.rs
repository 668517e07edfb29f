//! Pauli words, qubit Hamiltonians and the Jordan-Wigner map.
//!
//! Words print qubit 0 first: `Z0` on two qubits is `"ZI"`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::hamiltonian::OscillatorHamiltonian;
use crate::{Error, Result};

/// Terms whose merged coefficient falls below this are dropped (MeV).
pub const MERGE_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c.to_ascii_uppercase() {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliWord(Vec<Pauli>);

impl PauliWord {
    pub fn identity(n_qubits: usize) -> Self {
        Self(vec![Pauli::I; n_qubits])
    }

    pub fn new(letters: Vec<Pauli>) -> Self {
        Self(letters)
    }

    /// Word with the given letters placed on the listed qubits.
    pub fn from_sparse(n_qubits: usize, ops: &[(usize, Pauli)]) -> Result<Self> {
        let mut w = Self::identity(n_qubits);
        for &(q, p) in ops {
            if q >= n_qubits {
                return Err(Error::invalid(format!("qubit {q} out of range for {n_qubits} qubits")));
            }
            w.0[q] = p;
        }
        Ok(w)
    }

    pub fn n_qubits(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.0
    }

    pub fn get(&self, q: usize) -> Pauli {
        self.0[q]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == Pauli::I)
    }

    /// Qubits carrying a non-identity letter.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &p)| p != Pauli::I)
            .map(|(q, _)| q)
            .collect()
    }

    /// `P|b> = phase |b'>` for a computational basis index `b` (bit q is qubit q).
    pub fn apply_to_basis(&self, basis: usize) -> (Complex64, usize) {
        let mut phase = Complex64::new(1.0, 0.0);
        let mut out = basis;
        for (q, &p) in self.0.iter().enumerate() {
            let bit = (basis >> q) & 1;
            match p {
                Pauli::I => {}
                Pauli::X => out ^= 1 << q,
                Pauli::Y => {
                    out ^= 1 << q;
                    // Y|0> = i|1>, Y|1> = -i|0>
                    phase *= if bit == 0 {
                        Complex64::new(0.0, 1.0)
                    } else {
                        Complex64::new(0.0, -1.0)
                    };
                }
                Pauli::Z => {
                    if bit == 1 {
                        phase = -phase;
                    }
                }
            }
        }
        (phase, out)
    }

    /// `<psi|P|psi>` for a normalized statevector over `n_qubits` qubits.
    pub fn expectation(&self, amps: &[Complex64]) -> f64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (b, a) in amps.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            let (phase, out) = self.apply_to_basis(b);
            acc += amps[out].conj() * phase * a;
        }
        acc.re
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                Pauli::from_char(c).ok_or_else(|| Error::Parse {
                    context: "Pauli word".into(),
                    message: format!("invalid letter {c:?} in {s:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(PauliWord)
    }
}

impl Serialize for PauliWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PauliTerm {
    pub coeff: f64,
    pub word: PauliWord,
}

/// Real linear combination of Pauli words. Duplicate words are merged on
/// construction and near-zero terms dropped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPauliHamiltonian")]
pub struct PauliHamiltonian {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
}

#[derive(Deserialize)]
struct RawPauliHamiltonian {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
}

impl TryFrom<RawPauliHamiltonian> for PauliHamiltonian {
    type Error = Error;

    fn try_from(raw: RawPauliHamiltonian) -> Result<Self> {
        Self::new(raw.n_qubits, raw.terms.into_iter().map(|t| (t.coeff, t.word)))
    }
}

impl PauliHamiltonian {
    pub fn new(n_qubits: usize, terms: impl IntoIterator<Item = (f64, PauliWord)>) -> Result<Self> {
        let mut merged: Vec<PauliTerm> = Vec::new();
        for (coeff, word) in terms {
            if word.n_qubits() != n_qubits {
                return Err(Error::DimensionMismatch {
                    expected: n_qubits,
                    actual: word.n_qubits(),
                });
            }
            if !coeff.is_finite() {
                return Err(Error::invalid(format!("coefficient of {word} is not finite")));
            }
            match merged.iter_mut().find(|t| t.word == word) {
                Some(t) => t.coeff += coeff,
                None => merged.push(PauliTerm { coeff, word }),
            }
        }
        merged.retain(|t| t.coeff.abs() >= MERGE_THRESHOLD);
        Ok(Self {
            n_qubits,
            terms: merged,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `word`, zero if absent.
    pub fn coeff(&self, word: &PauliWord) -> f64 {
        self.terms
            .iter()
            .find(|t| &t.word == word)
            .map_or(0.0, |t| t.coeff)
    }

    /// Coefficient of the word given as a string such as `"ZII"`.
    pub fn coeff_of(&self, word: &str) -> f64 {
        word.parse().map_or(0.0, |w| self.coeff(&w))
    }

    pub fn identity_coeff(&self) -> f64 {
        self.coeff(&PauliWord::identity(self.n_qubits))
    }

    /// `<psi|H|psi>` on a statevector.
    pub fn expectation(&self, amps: &[Complex64]) -> Result<f64> {
        if amps.len() != 1 << self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: 1 << self.n_qubits,
                actual: amps.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|t| t.coeff * t.word.expectation(amps))
            .sum())
    }
}

/// Maps the one-particle Hamiltonian onto qubits, one qubit per oscillator
/// state. Only adjacent hopping is supported, so no Jordan-Wigner Z strings
/// appear.
pub fn jordan_wigner(h: &OscillatorHamiltonian) -> Result<PauliHamiltonian> {
    h.check_tridiagonal()?;
    let n = h.dim();
    let mut terms = Vec::with_capacity(4 * n);
    for q in 0..n {
        let c = h.get(q, q);
        // c a†a = c (I - Z)/2
        terms.push((0.5 * c, PauliWord::identity(n)));
        terms.push((-0.5 * c, PauliWord::from_sparse(n, &[(q, Pauli::Z)])?));
    }
    for q in 0..n.saturating_sub(1) {
        let t = h.get(q, q + 1);
        // t (a†_q a_{q+1} + h.c.) = (t/2)(XX + YY)
        terms.push((0.5 * t, PauliWord::from_sparse(n, &[(q, Pauli::X), (q + 1, Pauli::X)])?));
        terms.push((0.5 * t, PauliWord::from_sparse(n, &[(q, Pauli::Y), (q + 1, Pauli::Y)])?));
    }
    PauliHamiltonian::new(n, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{build_oscillator_hamiltonian, EftConfig};

    fn hn(n: usize) -> PauliHamiltonian {
        jordan_wigner(&build_oscillator_hamiltonian(&EftConfig::new(n)).unwrap()).unwrap()
    }

    #[test]
    fn h2_coefficients() {
        let h = hn(2);
        assert!((h.coeff_of("II") - 5.907).abs() < 5e-3);
        assert!((h.coeff_of("ZI") - 0.218).abs() < 5e-3);
        assert!((h.coeff_of("IZ") + 6.125).abs() < 5e-3);
        assert!((h.coeff_of("XX") + 2.143).abs() < 5e-3);
        assert!((h.coeff_of("YY") + 2.143).abs() < 5e-3);
        assert_eq!(h.len(), 5);
    }

    #[test]
    fn single_mode() {
        let osc = OscillatorHamiltonian::from_rows(vec![vec![3.0]]).unwrap();
        let h = jordan_wigner(&osc).unwrap();
        assert_eq!(h.coeff_of("I"), 1.5);
        assert_eq!(h.coeff_of("Z"), -1.5);
    }

    #[test]
    fn term_count_is_3n_minus_1() {
        for n in 1..=8 {
            assert_eq!(hn(n).len(), 3 * n - 1, "n={n}");
        }
    }

    #[test]
    fn vacuum_energy_vanishes() {
        // number-conserving H annihilates |0...0>
        for n in 1..=5 {
            let h = hn(n);
            let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
            amps[0] = Complex64::new(1.0, 0.0);
            assert!(h.expectation(&amps).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn merging_and_threshold() {
        let w: PauliWord = "XZ".parse().unwrap();
        let h = PauliHamiltonian::new(2, [(1.0, w.clone()), (-1.0, w.clone()), (2.0, "II".parse().unwrap())]).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h.coeff(&w), 0.0);
        assert!(PauliHamiltonian::new(3, [(1.0, w)]).is_err());
    }

    #[test]
    fn word_parsing() {
        let w: PauliWord = "IzXy".parse().unwrap();
        assert_eq!(w.to_string(), "IZXY");
        assert_eq!(w.support(), vec![1, 2, 3]);
        assert!("IQ".parse::<PauliWord>().is_err());
    }

    #[test]
    fn y_action() {
        let y: PauliWord = "Y".parse().unwrap();
        assert_eq!(y.apply_to_basis(0), (Complex64::new(0.0, 1.0), 1));
        assert_eq!(y.apply_to_basis(1), (Complex64::new(0.0, -1.0), 0));
    }

    #[test]
    fn rejects_dense_input() {
        let osc = OscillatorHamiltonian::from_rows(vec![
            vec![1.0, 0.0, 0.5],
            vec![0.0, 1.0, 0.0],
            vec![0.5, 0.0, 1.0],
        ])
        .unwrap();
        assert!(matches!(jordan_wigner(&osc), Err(Error::NotTridiagonal { .. })));
    }
}
