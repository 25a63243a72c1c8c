use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::dense::{to_matrix, DenseOperator};
use crate::error::Result;
use crate::swt::SplitHamiltonian;

/// Relative factor applied to the spectral range of `h0` when no degeneracy tolerance is given.
pub const DEFAULT_DEGENERACY_REL: f64 = 1e-9;

/// A coupled pair of basis states with (nearly) equal unperturbed energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegeneratePair {
    pub i: usize,
    pub j: usize,
    pub energy: f64,
    /// `(Hv)_ij` as `[re, im]`.
    pub hv: [f64; 2],
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DegeneracyReport {
    pub pairs: Vec<DegeneratePair>,
}

impl DegeneracyReport {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

pub fn default_degeneracy_tol(energies: &[f64]) -> f64 {
    let (lo, hi) = energies
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &e| (lo.min(e), hi.max(e)));
    let range = if energies.is_empty() { 0.0 } else { hi - lo };
    (DEFAULT_DEGENERACY_REL * range).max(f64::MIN_POSITIVE)
}

/// Closed-form generator `S_ij = (Hv)_ij / (E_i − E_j)` with `E` the diagonal of `h0`.
///
/// Pairs closer than `degeneracy_tol` (default: [`DEFAULT_DEGENERACY_REL`] times the
/// spectral range of `h0`) get `S_ij = 0`; those that `Hv` actually couples are reported.
pub fn exact_generator_dense(
    split: &SplitHamiltonian,
    degeneracy_tol: Option<f64>,
) -> Result<(DenseOperator, DegeneracyReport)> {
    let h0 = to_matrix(&split.h0)?;
    let hv = to_matrix(&split.hv)?;
    let energies: Vec<f64> = h0.diagonal().iter().map(|e| e.re).collect();
    let tol = degeneracy_tol.unwrap_or_else(|| default_degeneracy_tol(&energies));
    let hv_scale = hv.matrix().iter().map(|c| c.norm()).fold(0.0, f64::max);
    let coupling_tol = 1e-12 * hv_scale;

    let dim = h0.dim();
    let mut report = DegeneracyReport::default();
    let mut entries = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for j in 0..dim {
        for i in 0..dim {
            let v = hv.get(i, j);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let gap = energies[i] - energies[j];
            if gap.abs() >= tol {
                entries[(i, j)] = v / gap;
            } else if i < j && v.norm() > coupling_tol {
                report.pairs.push(DegeneratePair {
                    i,
                    j,
                    energy: energies[i],
                    hv: [v.re, v.im],
                });
            }
        }
    }
    report.pairs.sort_by_key(|p| (p.i, p.j));
    Ok((DenseOperator::from_matrix(entries)?, report))
}
