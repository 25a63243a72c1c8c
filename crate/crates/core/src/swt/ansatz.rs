use std::collections::BTreeSet;

use crate::error::{Result, SwtError};
use crate::pauli::{PauliString, PauliSum};

/// Candidate generator directions. Each direction `P` enters the generator as `i·a·P`
/// with a real unknown `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzBasis {
    directions: Vec<PauliString>,
    seed_count: usize,
    closure_depth: usize,
}

impl AnsatzBasis {
    pub fn directions(&self) -> &[PauliString] {
        &self.directions
    }

    /// How many leading directions came straight from η.
    pub fn seed_count(&self) -> usize {
        self.seed_count
    }

    /// Number of levels (η itself is level 1) before the set stopped growing; 0 when empty.
    pub fn closure_depth(&self) -> usize {
        self.closure_depth
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }
}

/// Strings reachable from `s` by two successive commutators with `h0`.
///
/// `[[P, Q₁], Q₂]` is nonzero only when `Q₁` anticommutes with `P` and `Q₂` with
/// `P·Q₁`; the result is then proportional to `P·Q₁·Q₂`.
fn second_neighbours(s: &PauliString, h0: &[PauliString]) -> Vec<PauliString> {
    let mut out = Vec::new();
    for q1 in h0.iter().filter(|q| !s.commutes_with(q)) {
        let t = s.mul_unchecked(q1).1;
        for q2 in h0.iter().filter(|q| !t.commutes_with(q)) {
            out.push(t.mul_unchecked(q2).1);
        }
    }
    out
}

/// Seeds the basis with the strings of η and closes it under `ad²_{h0}`.
///
/// The exact generator is an odd function of `ad_{h0}` applied to `Hv`, so it lies
/// in the span of `η = ad_{h0}(Hv)` and its images under even powers of `ad_{h0}`.
/// Z-dressed partners of the η strings enter here when η alone does not contain them.
pub fn build_ansatz(eta: &PauliSum, h0: &PauliSum, max_depth: usize) -> Result<AnsatzBasis> {
    if max_depth == 0 {
        return Err(SwtError::InvalidParams("max closure depth must be at least 1".into()));
    }
    if eta.n_qubits() != h0.n_qubits() {
        return Err(SwtError::QubitMismatch {
            left: eta.n_qubits(),
            right: h0.n_qubits(),
        });
    }
    let h0_strings: Vec<PauliString> = h0.strings().filter(|s| !s.is_identity()).cloned().collect();
    let mut directions: Vec<PauliString> = eta.strings().filter(|s| !s.is_diagonal()).cloned().collect();
    let seed_count = directions.len();
    if directions.is_empty() {
        return Ok(AnsatzBasis {
            directions,
            seed_count,
            closure_depth: 0,
        });
    }

    let mut seen: BTreeSet<PauliString> = directions.iter().cloned().collect();
    let mut frontier = directions.clone();
    let mut depth = 1;
    loop {
        let mut fresh = BTreeSet::new();
        for s in &frontier {
            for t in second_neighbours(s, &h0_strings) {
                if !seen.contains(&t) {
                    fresh.insert(t);
                }
            }
        }
        if fresh.is_empty() {
            break;
        }
        if depth == max_depth {
            return Err(SwtError::ClosureNotReached {
                depth: max_depth,
                frontier: fresh.len(),
            });
        }
        depth += 1;
        seen.extend(fresh.iter().cloned());
        frontier = fresh.into_iter().collect();
        directions.extend(frontier.iter().cloned());
    }
    Ok(AnsatzBasis {
        directions,
        seed_count,
        closure_depth: depth,
    })
}
