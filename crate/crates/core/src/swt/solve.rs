use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::ansatz::AnsatzBasis;
use super::SplitHamiltonian;
use crate::error::{Result, SwtError};
use crate::pauli::{PauliString, PauliSum, PauliTerm};

/// Singular values below this fraction of the largest are treated as zero.
const RANK_REL_TOL: f64 = 1e-12;

/// Least-squares generator fit, returned whether or not it eliminates `Hv`.
#[derive(Debug, Clone)]
pub struct GeneratorFit {
    pub generator: PauliSum,
    /// `‖[S, h0] + Hv‖₂` over Pauli coefficients.
    pub residual: f64,
    /// `[S, h0] + Hv` itself.
    pub residual_operator: PauliSum,
    /// Numerical rank of the constraint matrix.
    pub rank: usize,
}

/// Minimum-norm least-squares solution of `[S, h0] = −Hv` over `S = Σ_k i·a_k·P_k`.
///
/// Each column is the coefficient vector of `[i·P_k, h0]`; rows run over every string
/// those columns or `Hv` touch, real and imaginary parts stacked.
pub fn fit_generator(basis: &AnsatzBasis, split: &SplitHamiltonian) -> Result<GeneratorFit> {
    let n = split.n_qubits();
    let i = Complex64::new(0.0, 1.0);
    let columns: Vec<PauliSum> = basis
        .directions()
        .iter()
        .map(|p| {
            PauliSum::from_terms(n, [PauliTerm::new(p.clone(), i)])
                .and_then(|dir| dir.commutator(&split.h0))
        })
        .collect::<Result<_>>()?;

    let mut rows: BTreeMap<&PauliString, usize> = BTreeMap::new();
    for s in columns.iter().flat_map(|c| c.strings()).chain(split.hv.strings()) {
        let next = rows.len();
        rows.entry(s).or_insert(next);
    }

    let (m, k) = (rows.len(), columns.len());
    let (generator, rank) = if k == 0 || m == 0 {
        (PauliSum::zero(n), 0)
    } else {
        let mut a = DMatrix::<f64>::zeros(2 * m, k);
        for (col, c) in columns.iter().enumerate() {
            for t in c.terms() {
                let r = rows[&t.string];
                a[(r, col)] = t.coeff.re;
                a[(m + r, col)] = t.coeff.im;
            }
        }
        let mut b = DVector::<f64>::zeros(2 * m);
        for t in split.hv.terms() {
            let r = rows[&t.string];
            b[r] = -t.coeff.re;
            b[m + r] = -t.coeff.im;
        }
        let svd = a.svd(true, true);
        let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
        let eps = RANK_REL_TOL * sigma_max;
        let rank = svd.singular_values.iter().filter(|&&s| s > eps).count();
        let x = svd
            .solve(&b, eps)
            .map_err(|e| SwtError::InvalidParams(format!("least-squares solve failed: {e}")))?;
        let terms = basis
            .directions()
            .iter()
            .zip(x.iter())
            .map(|(p, &a)| PauliTerm::new(p.clone(), Complex64::new(0.0, a)));
        (PauliSum::from_terms(n, terms)?, rank)
    };

    let residual_operator = generator.commutator(&split.h0)?.add(&split.hv)?;
    Ok(GeneratorFit {
        generator,
        residual: residual_operator.norm(),
        residual_operator,
        rank,
    })
}

/// Fits the generator and insists that the first-order constraint holds to `tol`.
///
/// On failure the error carries the part of `[S, h0] + Hv` above `tol` and the
/// input off-diagonal strings that survive in it.
pub fn solve_generator(
    basis: &AnsatzBasis,
    split: &SplitHamiltonian,
    tol: f64,
) -> Result<(PauliSum, f64)> {
    let fit = fit_generator(basis, split)?;
    if fit.residual <= tol {
        return Ok((fit.generator, fit.residual));
    }
    let unmatched = fit.residual_operator.canonicalize(tol);
    let unreachable = split
        .hv
        .strings()
        .filter(|s| unmatched.coeff(s).norm() > 0.0)
        .cloned()
        .collect();
    Err(SwtError::EliminationInfeasible {
        residual: fit.residual,
        unmatched,
        unreachable,
    })
}
