//! Oscillator-basis deuteron Hamiltonian.
//!
//! The one-particle matrix `<n'|T + V|n>` lives on s-wave oscillator states
//! `|0>, ..., |N-1>`. The kinetic term is tridiagonal; the contact potential
//! only acts on `|0>`.

use serde::{Deserialize, Serialize};

use crate::eigen::{self, TridiagonalEigen};
use crate::{Error, Result};

/// Oscillator spacing used throughout, in MeV.
pub const DEFAULT_HBAR_OMEGA: f64 = 7.0;

/// Contact strength in MeV, calibrated so the Jordan-Wigner coefficients of
/// H2..H4 round to the published three-decimal values. The rounded
/// `-5.68` shifts the `Z0` coefficient to 0.215.
pub const DEFAULT_V0: f64 = -5.68658;

/// Deuteron binding energy in the infinite-basis limit, MeV. Reference only.
pub const EXACT_DEUTERON_ENERGY: f64 = -2.224;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EftConfig {
    pub hbar_omega: f64,
    pub v0: f64,
    pub n_states: usize,
}

impl EftConfig {
    pub fn new(n_states: usize) -> Self {
        Self {
            hbar_omega: DEFAULT_HBAR_OMEGA,
            v0: DEFAULT_V0,
            n_states,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_states == 0 {
            return Err(Error::invalid("n_states must be at least 1"));
        }
        if !(self.hbar_omega > 0.0 && self.hbar_omega.is_finite()) {
            return Err(Error::invalid(format!(
                "hbar_omega must be positive, got {}",
                self.hbar_omega
            )));
        }
        if !self.v0.is_finite() {
            return Err(Error::invalid("v0 must be finite"));
        }
        Ok(())
    }
}

impl Default for EftConfig {
    fn default() -> Self {
        Self::new(2)
    }
}

/// `<n'|T|n>` in MeV.
pub fn kinetic_element(n_prime: usize, n: usize, hbar_omega: f64) -> f64 {
    let nf = n as f64;
    let half = 0.5 * hbar_omega;
    if n == n_prime {
        half * (2.0 * nf + 1.5)
    } else if n == n_prime + 1 {
        -half * (nf * (nf + 0.5)).sqrt()
    } else if n + 1 == n_prime {
        -half * ((nf + 1.0) * (nf + 1.5)).sqrt()
    } else {
        0.0
    }
}

/// `<n'|V|n>` in MeV: the contact term only couples `|0>` to itself.
pub fn potential_element(n_prime: usize, n: usize, v0: f64) -> f64 {
    if n == 0 && n_prime == 0 {
        v0
    } else {
        0.0
    }
}

/// Dense symmetric tridiagonal `N x N` Hamiltonian in MeV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawOscillator")]
pub struct OscillatorHamiltonian {
    dim: usize,
    rows: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct RawOscillator {
    dim: usize,
    rows: Vec<Vec<f64>>,
}

impl TryFrom<RawOscillator> for OscillatorHamiltonian {
    type Error = Error;

    fn try_from(raw: RawOscillator) -> Result<Self> {
        if raw.rows.len() != raw.dim {
            return Err(Error::DimensionMismatch {
                expected: raw.dim,
                actual: raw.rows.len(),
            });
        }
        Self::from_rows(raw.rows)
    }
}

impl OscillatorHamiltonian {
    /// Wraps an arbitrary real symmetric matrix. Tridiagonality is checked
    /// lazily by the operations that need it.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::invalid("empty matrix"));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: row.len(),
                });
            }
            for (j, v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::invalid(format!("entry ({i}, {j}) is not finite")));
                }
                if (v - rows[j][i]).abs() > 1e-12 {
                    return Err(Error::invalid(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self { dim, rows })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.rows[i][i]).collect()
    }

    pub fn off_diagonal(&self) -> Vec<f64> {
        (1..self.dim).map(|i| self.rows[i - 1][i]).collect()
    }

    /// Errors with the first entry found outside the tridiagonal band.
    pub fn check_tridiagonal(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i.abs_diff(j) > 1 && self.rows[i][j] != 0.0 {
                    return Err(Error::NotTridiagonal {
                        row: i,
                        col: j,
                        value: self.rows[i][j],
                    });
                }
            }
        }
        Ok(())
    }

    /// `v^T H v` for a real vector.
    pub fn quadratic_form(&self, v: &[f64]) -> Result<f64> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: v.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .zip(v)
            .map(|(row, vi)| vi * row.iter().zip(v).map(|(h, vj)| h * vj).sum::<f64>())
            .sum())
    }

    pub fn eigen(&self) -> Result<TridiagonalEigen> {
        self.check_tridiagonal()?;
        eigen::symmetric_tridiagonal(&self.diagonal(), &self.off_diagonal())
    }
}

pub fn build_oscillator_hamiltonian(cfg: &EftConfig) -> Result<OscillatorHamiltonian> {
    cfg.validate()?;
    let n = cfg.n_states;
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| kinetic_element(i, j, cfg.hbar_omega) + potential_element(i, j, cfg.v0))
                .collect()
        })
        .collect();
    Ok(OscillatorHamiltonian { dim: n, rows })
}

/// Lowest eigenvalue in MeV.
pub fn exact_ground_energy(h: &OscillatorHamiltonian) -> Result<f64> {
    Ok(h.eigen()?.values[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinetic_examples() {
        assert!((kinetic_element(0, 0, 7.0) - 5.25).abs() < 1e-12);
        assert!((kinetic_element(0, 1, 7.0) - (-3.5 * 1.5f64.sqrt())).abs() < 1e-12);
        assert!((kinetic_element(0, 1, 7.0) + 4.28661).abs() < 1e-5);
        assert_eq!(kinetic_element(0, 2, 7.0), 0.0);
        assert_eq!(kinetic_element(0, 1, 7.0), kinetic_element(1, 0, 7.0));
    }

    #[test]
    fn potential_examples() {
        assert_eq!(potential_element(0, 0, -5.68658), -5.68658);
        assert_eq!(potential_element(1, 1, -5.68658), 0.0);
        assert_eq!(potential_element(0, 1, -5.68658), 0.0);
    }

    #[test]
    fn small_matrices() {
        let h1 = build_oscillator_hamiltonian(&EftConfig::new(1)).unwrap();
        assert_eq!(h1.dim(), 1);
        assert!((h1.get(0, 0) + 0.43658).abs() < 1e-12);

        let h2 = build_oscillator_hamiltonian(&EftConfig::new(2)).unwrap();
        assert!((h2.get(0, 1) + 4.28661).abs() < 1e-5);
        assert!((h2.get(1, 1) - 12.25).abs() < 1e-12);

        let h3 = build_oscillator_hamiltonian(&EftConfig::new(3)).unwrap();
        assert_eq!(h3.diagonal()[2], 19.25);
        assert!((h3.off_diagonal()[1] + 7.82624).abs() < 1e-5);
        assert_eq!(h3.get(0, 2), 0.0);
    }

    #[test]
    fn diagonal_formula_and_band_structure() {
        for n in 1..=16 {
            let h = build_oscillator_hamiltonian(&EftConfig::new(n)).unwrap();
            h.check_tridiagonal().unwrap();
            for i in 0..n {
                let want = 3.5 * (2.0 * i as f64 + 1.5) + if i == 0 { DEFAULT_V0 } else { 0.0 };
                assert_eq!(h.get(i, i), want);
                for j in 0..n {
                    assert_eq!(h.get(i, j), h.get(j, i));
                }
            }
        }
    }

    #[test]
    fn rejects_empty_basis() {
        assert!(build_oscillator_hamiltonian(&EftConfig::new(0)).is_err());
        let bad = EftConfig {
            hbar_omega: -1.0,
            ..EftConfig::new(2)
        };
        assert!(build_oscillator_hamiltonian(&bad).is_err());
    }

    #[test]
    fn ground_energies() {
        let e: Vec<f64> = (2..=4)
            .map(|n| exact_ground_energy(&build_oscillator_hamiltonian(&EftConfig::new(n)).unwrap()).unwrap())
            .collect();
        for (got, want) in e.iter().zip([-1.749, -2.046, -2.143]) {
            assert!((got - want).abs() < 1e-3, "{got} vs {want}");
        }
        assert!(e[0] > e[1] && e[1] > e[2] && e[2] > EXACT_DEUTERON_ENERGY);
    }

    #[test]
    fn dense_matrix_rejected_for_eigen() {
        let h = OscillatorHamiltonian::from_rows(vec![
            vec![1.0, 0.0, 0.5],
            vec![0.0, 1.0, 0.0],
            vec![0.5, 0.0, 1.0],
        ])
        .unwrap();
        assert!(matches!(h.eigen(), Err(Error::NotTridiagonal { row: 0, col: 2, .. })));
    }
}
