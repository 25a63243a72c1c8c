use serde::{Deserialize, Serialize};

use super::dense::to_matrix;
use crate::error::{Result, SwtError};
use crate::pauli::PauliSum;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    pub exact: Vec<f64>,
    pub effective: Vec<f64>,
    /// `|exact_k − effective_k|` level by level.
    pub deltas: Vec<f64>,
    /// Largest delta among the lowest `lowest` levels.
    pub max_delta_lowest: f64,
}

/// Sorted spectra of `h` and `h_eff`, optionally within the `sector`-particle subspace.
pub fn spectral_compare(
    h: &PauliSum,
    h_eff: &PauliSum,
    sector: Option<usize>,
    lowest: usize,
) -> Result<SpectralReport> {
    if h.n_qubits() != h_eff.n_qubits() {
        return Err(SwtError::QubitMismatch {
            left: h.n_qubits(),
            right: h_eff.n_qubits(),
        });
    }
    let exact = to_matrix(h)?.eigenvalues(sector);
    let effective = to_matrix(h_eff)?.eigenvalues(sector);
    let deltas: Vec<f64> = exact.iter().zip(&effective).map(|(a, b)| (a - b).abs()).collect();
    let max_delta_lowest = deltas.iter().take(lowest).copied().fold(0.0, f64::max);
    Ok(SpectralReport {
        exact,
        effective,
        deltas,
        max_delta_lowest,
    })
}
