//! Variational eigensolver workbench for the pionless-EFT deuteron in a
//! harmonic-oscillator basis.
//!
//! The pipeline runs end to end on a laptop:
//!
//! 1. [`hamiltonian`] builds the N-state oscillator Hamiltonian and its
//!    Jordan-Wigner qubit form ([`pauli`]).
//! 2. [`ansatz`] holds the hyperspherical UCCS state, both analytically and
//!    as a logical circuit of controlled rotations.
//! 3. [`compiler`] rewrites logical circuits into the trapped-ion native gate
//!    set (`XX`, `RX`, `RY`, `RZ`) and peephole-optimizes them.
//! 4. [`simulator`] runs native circuits on a statevector with stochastic
//!    Pauli noise, readout confusion and `XX` gate folding.
//! 5. [`estimator`] turns histograms into energies, undoes readout error and
//!    extrapolates to zero noise.
//! 6. [`driver`] orchestrates VQE runs, landscape scans and convergence
//!    reports; [`io`] persists them.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! stage.

pub mod ansatz;
pub mod compiler;
pub mod driver;
pub mod eigen;
pub mod error;
pub mod estimator;
pub mod hamiltonian;
pub mod io;
pub mod optimize;
pub mod pauli;
pub mod reference;
pub mod simulator;

pub use error::{Error, Result};
