//! Schrieffer-Wolff transformations of qubit-mapped fermionic Hamiltonians.
//!
//! The pipeline maps a second-quantized model to Pauli sums with the
//! Jordan-Wigner encoding, splits it into diagonal and off-diagonal parts,
//! seeds a generator ansatz from `η = [H0, Hv]`, fixes the coefficients from
//! `[S, H0] = −Hv`, and assembles `H_eff = H0 + ½[S, Hv]`. A dense-matrix
//! oracle checks every step independently.

pub mod cli;
pub mod error;
pub mod fermion;
pub mod models;
pub mod oracle;
pub mod pauli;
pub mod swt;

pub use error::{Result, SwtError};
