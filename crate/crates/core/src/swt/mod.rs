//! Schrieffer-Wolff transformation on Pauli-sum Hamiltonians.
//!
//! Sign convention throughout: the generator solves `[S, H0] = −Hv`, the
//! transformed Hamiltonian is `exp(S) H exp(−S)`, and the second-order
//! effective Hamiltonian is `H0 + ½[S, Hv]`.

mod ansatz;
mod solve;

use serde::{Deserialize, Serialize};

pub use ansatz::{build_ansatz, AnsatzBasis};
pub use solve::{fit_generator, solve_generator, GeneratorFit};

use crate::error::Result;
use crate::oracle::DegeneratePair;
use crate::pauli::PauliSum;

/// Default absolute tolerance on the constraint residual.
pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_DEPTH: usize = 4;

/// Diagonal (I/Z only) and off-diagonal parts of a Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitHamiltonian {
    pub h0: PauliSum,
    pub hv: PauliSum,
}

impl SplitHamiltonian {
    pub fn n_qubits(&self) -> usize {
        self.h0.n_qubits()
    }

    /// `h0 + hv`
    pub fn total(&self) -> PauliSum {
        self.h0.add(&self.hv).expect("parts share a register")
    }

    /// Same `h0` with `hv` scaled by `lambda`.
    pub fn with_scaled_hv(&self, lambda: f64) -> SplitHamiltonian {
        SplitHamiltonian {
            h0: self.h0.clone(),
            hv: self.hv.scale_real(lambda),
        }
    }
}

pub fn split(h: &PauliSum) -> SplitHamiltonian {
    let (h0, hv) = h.partition(|s| s.is_diagonal());
    SplitHamiltonian { h0, hv }
}

/// `η = [h0, hv]`
pub fn compute_eta(s: &SplitHamiltonian) -> PauliSum {
    s.h0.commutator(&s.hv).expect("parts share a register")
}

/// `h0 + ½[gen, hv]`
pub fn effective_hamiltonian(s: &SplitHamiltonian, generator: &PauliSum) -> Result<PauliSum> {
    let second = generator.commutator(&s.hv)?.scale_real(0.5);
    s.h0.add(&second)
}

/// `Σ_{k=0}^{order} ad_gen^k(h) / k!`, the truncated expansion of `exp(gen) h exp(−gen)`.
pub fn bch_conjugate(h: &PauliSum, generator: &PauliSum, order: usize) -> Result<PauliSum> {
    let mut acc = h.clone();
    let mut term = h.clone();
    for k in 1..=order {
        term = generator.commutator(&term)?.scale_real(1.0 / k as f64);
        if term.is_empty() {
            break;
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwtOptions {
    pub tol: f64,
    pub max_depth: usize,
}

impl Default for SwtOptions {
    fn default() -> Self {
        SwtOptions {
            tol: DEFAULT_TOL,
            max_depth: DEFAULT_MAX_DEPTH,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwtReport {
    pub eta: PauliSum,
    pub generator: PauliSum,
    pub h_eff: PauliSum,
    #[serde(rename = "residual")]
    pub constraint_residual: f64,
    pub closure_depth: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub degenerate_pairs: Vec<DegeneratePair>,
}

impl SwtReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Split, η, ansatz, generator, effective Hamiltonian.
pub fn run_swt(h: &PauliSum, opts: &SwtOptions) -> Result<SwtReport> {
    let parts = split(h);
    let eta = compute_eta(&parts);
    if parts.hv.is_empty() {
        return Ok(SwtReport {
            eta,
            generator: PauliSum::zero(h.n_qubits()),
            h_eff: parts.h0.clone(),
            constraint_residual: 0.0,
            closure_depth: 0,
            degenerate_pairs: Vec::new(),
        });
    }
    let basis = build_ansatz(&eta, &parts.h0, opts.max_depth)?;
    let (generator, residual) = solve_generator(&basis, &parts, opts.tol)?;
    let h_eff = effective_hamiltonian(&parts, &generator)?;
    Ok(SwtReport {
        eta,
        generator,
        h_eff,
        constraint_residual: residual,
        closure_depth: basis.closure_depth(),
        degenerate_pairs: Vec::new(),
    })
}
