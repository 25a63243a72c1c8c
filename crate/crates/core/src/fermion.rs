//! Second-quantized operators and the Jordan-Wigner mapping.
//!
//! `c_j ↦ Z_0 ⋯ Z_{j-1} (X_j + iY_j)/2`, so an occupied mode is the qubit
//! state `|1⟩` and `n_j ↦ (I − Z_j)/2`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SwtError};
use crate::pauli::{Pauli, PauliString, PauliSum, PauliTerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LadderOp {
    pub mode: usize,
    pub dagger: bool,
}

impl LadderOp {
    pub fn create(mode: usize) -> Self {
        LadderOp { mode, dagger: true }
    }

    pub fn annihilate(mode: usize) -> Self {
        LadderOp { mode, dagger: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FermionTerm {
    pub coeff: Complex64,
    pub factors: Vec<LadderOp>,
}

/// Sum of products of ladder operators. Terms keep the order they were added
/// in and are never normal-ordered.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionOperator {
    n_modes: usize,
    terms: Vec<FermionTerm>,
}

impl FermionOperator {
    pub fn new(n_modes: usize) -> Self {
        FermionOperator {
            n_modes,
            terms: Vec::new(),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn terms(&self) -> &[FermionTerm] {
        &self.terms
    }

    pub fn push(&mut self, coeff: Complex64, factors: Vec<LadderOp>) -> Result<()> {
        if let Some(op) = factors.iter().find(|op| op.mode >= self.n_modes) {
            return Err(SwtError::ModeOutOfRange {
                mode: op.mode,
                n_modes: self.n_modes,
            });
        }
        self.terms.push(FermionTerm { coeff, factors });
        Ok(())
    }

    /// `coeff · c†_j c_j`
    pub fn add_number(&mut self, coeff: f64, mode: usize) -> Result<()> {
        self.push(
            coeff.into(),
            vec![LadderOp::create(mode), LadderOp::annihilate(mode)],
        )
    }

    /// `coeff · (c†_i c_j + c†_j c_i)`
    pub fn add_hopping(&mut self, coeff: f64, i: usize, j: usize) -> Result<()> {
        self.push(coeff.into(), vec![LadderOp::create(i), LadderOp::annihilate(j)])?;
        self.push(coeff.into(), vec![LadderOp::create(j), LadderOp::annihilate(i)])
    }

    /// `coeff · n_i n_j`, written as `c†_i c_i c†_j c_j`.
    pub fn add_density_density(&mut self, coeff: f64, i: usize, j: usize) -> Result<()> {
        self.push(
            coeff.into(),
            vec![
                LadderOp::create(i),
                LadderOp::annihilate(i),
                LadderOp::create(j),
                LadderOp::annihilate(j),
            ],
        )
    }

    pub fn scale(&self, lambda: Complex64) -> FermionOperator {
        FermionOperator {
            n_modes: self.n_modes,
            terms: self
                .terms
                .iter()
                .map(|t| FermionTerm {
                    coeff: t.coeff * lambda,
                    factors: t.factors.clone(),
                })
                .collect(),
        }
    }

    /// Concatenates term lists.
    pub fn add(&self, other: &FermionOperator) -> Result<FermionOperator> {
        if self.n_modes != other.n_modes {
            return Err(SwtError::QubitMismatch {
                left: self.n_modes,
                right: other.n_modes,
            });
        }
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        Ok(out)
    }

    /// Hermitian conjugate: reverse each product, flip daggers, conjugate coefficients.
    pub fn dagger(&self) -> FermionOperator {
        FermionOperator {
            n_modes: self.n_modes,
            terms: self
                .terms
                .iter()
                .map(|t| FermionTerm {
                    coeff: t.coeff.conj(),
                    factors: t
                        .factors
                        .iter()
                        .rev()
                        .map(|op| LadderOp {
                            mode: op.mode,
                            dagger: !op.dagger,
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Qubit image of a single ladder operator on `n_modes` qubits.
pub fn jw_ladder(op: LadderOp, n_modes: usize) -> Result<PauliSum> {
    if op.mode >= n_modes {
        return Err(SwtError::ModeOutOfRange {
            mode: op.mode,
            n_modes,
        });
    }
    let mut x = PauliString::identity(n_modes);
    for q in 0..op.mode {
        x.set(q, Pauli::Z);
    }
    let mut y = x.clone();
    x.set(op.mode, Pauli::X);
    y.set(op.mode, Pauli::Y);
    let y_coeff = if op.dagger { -0.5 } else { 0.5 };
    PauliSum::from_terms(
        n_modes,
        [
            PauliTerm::new(x, Complex64::new(0.5, 0.0)),
            PauliTerm::new(y, Complex64::new(0.0, y_coeff)),
        ],
    )
}

/// Jordan-Wigner image of `f`, expanded factor by factor and canonicalized.
pub fn jw_map(f: &FermionOperator) -> Result<PauliSum> {
    let n = f.n_modes;
    let ladders: Vec<[PauliSum; 2]> = (0..n)
        .map(|m| Ok([jw_ladder(LadderOp::annihilate(m), n)?, jw_ladder(LadderOp::create(m), n)?]))
        .collect::<Result<_>>()?;
    let mut acc = PauliSum::zero(n);
    for t in &f.terms {
        let mut prod = PauliSum::identity(n, t.coeff);
        for op in &t.factors {
            prod = prod.mul(&ladders[op.mode][op.dagger as usize])?;
        }
        acc = acc.add(&prod)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum OpKind {
    C,
    Cdag,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct FermionTermRecord {
    coeff: [f64; 2],
    ops: Vec<(usize, OpKind)>,
}

/// Wire form: `{"n_modes": m, "terms": [{"coeff": [re, im], "ops": [[mode, "c"|"cdag"], ...]}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FermionRecord {
    n_modes: usize,
    terms: Vec<FermionTermRecord>,
}

impl From<&FermionOperator> for FermionRecord {
    fn from(f: &FermionOperator) -> Self {
        FermionRecord {
            n_modes: f.n_modes,
            terms: f
                .terms
                .iter()
                .map(|t| FermionTermRecord {
                    coeff: [t.coeff.re, t.coeff.im],
                    ops: t
                        .factors
                        .iter()
                        .map(|op| (op.mode, if op.dagger { OpKind::Cdag } else { OpKind::C }))
                        .collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<FermionRecord> for FermionOperator {
    type Error = SwtError;

    fn try_from(r: FermionRecord) -> Result<Self> {
        let mut f = FermionOperator::new(r.n_modes);
        for t in r.terms {
            let factors = t
                .ops
                .into_iter()
                .map(|(mode, kind)| LadderOp {
                    mode,
                    dagger: matches!(kind, OpKind::Cdag),
                })
                .collect();
            f.push(Complex64::new(t.coeff[0], t.coeff[1]), factors)?;
        }
        Ok(f)
    }
}

impl FermionOperator {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&FermionRecord::from(self)).expect("serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: FermionRecord = serde_json::from_str(text)?;
        r.try_into()
    }
}
