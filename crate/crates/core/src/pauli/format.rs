use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::string::PauliString;
use super::sum::{PauliSum, PauliTerm};
use crate::error::{Result, SwtError};

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TermRecord {
    pauli: String,
    re: f64,
    im: f64,
}

/// Wire form: `{"n_qubits": n, "terms": [{"pauli": "IXYZ", "re": r, "im": m}, ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PauliSumRecord {
    n_qubits: usize,
    terms: Vec<TermRecord>,
}

impl From<&PauliSum> for PauliSumRecord {
    fn from(s: &PauliSum) -> Self {
        PauliSumRecord {
            n_qubits: s.n_qubits(),
            terms: s
                .terms()
                .iter()
                .map(|t| TermRecord {
                    pauli: t.string.to_string(),
                    re: t.coeff.re,
                    im: t.coeff.im,
                })
                .collect(),
        }
    }
}

impl TryFrom<PauliSumRecord> for PauliSum {
    type Error = SwtError;

    fn try_from(r: PauliSumRecord) -> Result<Self> {
        if r.n_qubits == 0 {
            return Err(SwtError::InvalidPauli {
                text: String::new(),
                reason: "n_qubits must be positive".into(),
            });
        }
        let terms = r
            .terms
            .into_iter()
            .map(|t| {
                Ok(PauliTerm::new(
                    PauliString::parse_with_len(&t.pauli, r.n_qubits)?,
                    Complex64::new(t.re, t.im),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        PauliSum::from_terms(r.n_qubits, terms)
    }
}

impl Serialize for PauliSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PauliSumRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PauliSum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PauliSumRecord::deserialize(d)?;
        PauliSum::try_from(r).map_err(serde::de::Error::custom)
    }
}

impl PauliSum {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("PauliSum serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// One `(re,im) * STRING` line per term, shortest round-trip floats, canonical order.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in self.terms() {
            writeln!(f, "({:e},{:e}) * {}", t.coeff.re, t.coeff.im, t.string)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let s = PauliSum::from_labels(
            3,
            [("ZIZ", Complex64::new(1.0, 0.0)), ("XYI", Complex64::new(0.1, -0.25))],
        )
        .unwrap();
        let text = s.to_json();
        assert!(text.contains("\"pauli\": \"XYI\""));
        assert_eq!(PauliSum::from_json(&text).unwrap(), s);
    }

    #[test]
    fn json_rejects_bad_input() {
        let bad_char = r#"{"n_qubits": 2, "terms": [{"pauli": "XA", "re": 1.0, "im": 0.0}]}"#;
        assert!(PauliSum::from_json(bad_char).is_err());
        let bad_len = r#"{"n_qubits": 3, "terms": [{"pauli": "XX", "re": 1.0, "im": 0.0}]}"#;
        assert!(PauliSum::from_json(bad_len).is_err());
    }

    #[test]
    fn text_lines() {
        let s = PauliSum::from_labels(2, [("ZZ", Complex64::new(0.5, 0.0))]).unwrap();
        assert_eq!(s.to_text(), "(5e-1,0e0) * ZZ\n");
    }
}
