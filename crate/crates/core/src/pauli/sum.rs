use std::cmp::Ordering;

use num_complex::Complex64;

use super::string::PauliString;
use crate::error::{Result, SwtError};

/// Default pruning threshold, relative to the largest coefficient magnitude.
pub const DEFAULT_RELATIVE_DROP: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    pub string: PauliString,
    pub coeff: Complex64,
}

impl PauliTerm {
    pub fn new(string: PauliString, coeff: Complex64) -> Self {
        PauliTerm { string, coeff }
    }

    pub fn n_qubits(&self) -> usize {
        self.string.n_qubits()
    }
}

/// `a · b` as a single term, with the string phase folded into the coefficient.
pub fn multiply(a: &PauliTerm, b: &PauliTerm) -> Result<PauliTerm> {
    let (phase, string) = a.string.mul(&b.string)?;
    Ok(PauliTerm::new(string, phase.apply(a.coeff * b.coeff)))
}

/// A complex-weighted sum of Pauli strings on a fixed number of qubits.
///
/// Always canonical: strings strictly increasing, no duplicates, no zero
/// coefficients. Constructors prune with [`DEFAULT_RELATIVE_DROP`] times the
/// largest coefficient magnitude; [`PauliSum::canonicalize`] prunes with an
/// absolute threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<PauliTerm>,
}

fn merge_sorted(mut raw: Vec<PauliTerm>) -> Vec<PauliTerm> {
    // stable, so equal strings are summed in generation order
    raw.sort_by(|a, b| a.string.cmp(&b.string));
    let mut out: Vec<PauliTerm> = Vec::with_capacity(raw.len());
    for t in raw {
        match out.last_mut() {
            Some(last) if last.string == t.string => last.coeff += t.coeff,
            _ => out.push(t),
        }
    }
    out
}

fn prune(terms: Vec<PauliTerm>, threshold: f64) -> Vec<PauliTerm> {
    terms
        .into_iter()
        .filter(|t| t.coeff.norm() > threshold && t.coeff != Complex64::new(0.0, 0.0))
        .map(|t| PauliTerm::new(t.string, unsigned_zero(t.coeff)))
        .collect()
}

/// Replaces `-0.0` components with `+0.0` so printed output never shows a signed zero.
fn unsigned_zero(c: Complex64) -> Complex64 {
    c + Complex64::new(0.0, 0.0)
}

impl PauliSum {
    pub fn zero(n_qubits: usize) -> Self {
        PauliSum {
            n_qubits,
            terms: Vec::new(),
        }
    }

    pub fn identity(n_qubits: usize, coeff: Complex64) -> Self {
        Self::from_raw(n_qubits, vec![PauliTerm::new(PauliString::identity(n_qubits), coeff)])
    }

    pub fn from_terms(n_qubits: usize, terms: impl IntoIterator<Item = PauliTerm>) -> Result<Self> {
        let terms: Vec<PauliTerm> = terms.into_iter().collect();
        if let Some(t) = terms.iter().find(|t| t.n_qubits() != n_qubits) {
            return Err(SwtError::QubitMismatch {
                left: n_qubits,
                right: t.n_qubits(),
            });
        }
        Ok(Self::from_raw(n_qubits, terms))
    }

    /// Convenience constructor from textual strings, e.g. `[("ZZ", 1.0.into())]`.
    pub fn from_labels<'a>(
        n_qubits: usize,
        labels: impl IntoIterator<Item = (&'a str, Complex64)>,
    ) -> Result<Self> {
        let terms = labels
            .into_iter()
            .map(|(s, c)| Ok(PauliTerm::new(PauliString::parse_with_len(s, n_qubits)?, c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_raw(n_qubits, terms))
    }

    /// Canonicalizes with the default relative threshold. All strings must already have `n_qubits`.
    pub(crate) fn from_raw(n_qubits: usize, raw: Vec<PauliTerm>) -> Self {
        let merged = merge_sorted(raw);
        let max = merged.iter().map(|t| t.coeff.norm()).fold(0.0, f64::max);
        PauliSum {
            n_qubits,
            terms: prune(merged, DEFAULT_RELATIVE_DROP * max),
        }
    }

    /// Sort, merge, and drop every term with `|coeff| <= drop_tolerance`.
    pub fn canonicalize(&self, drop_tolerance: f64) -> PauliSum {
        assert!(drop_tolerance >= 0.0, "drop tolerance must be non-negative");
        PauliSum {
            n_qubits: self.n_qubits,
            terms: prune(merge_sorted(self.terms.clone()), drop_tolerance),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn strings(&self) -> impl Iterator<Item = &PauliString> {
        self.terms.iter().map(|t| &t.string)
    }

    /// Coefficient of `s`, zero if absent.
    pub fn coeff(&self, s: &PauliString) -> Complex64 {
        self.terms
            .binary_search_by(|t| t.string.cmp(s))
            .map(|i| self.terms[i].coeff)
            .unwrap_or_default()
    }

    pub fn coeff_of(&self, label: &str) -> Complex64 {
        PauliString::parse_with_len(label, self.n_qubits)
            .map(|s| self.coeff(&s))
            .unwrap_or_default()
    }

    /// 2-norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff.norm()).fold(0.0, f64::max)
    }

    fn check(&self, other: &PauliSum) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(SwtError::QubitMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check(other)?;
        let raw = self.terms.iter().chain(&other.terms).cloned().collect();
        Ok(Self::from_raw(self.n_qubits, raw))
    }

    pub fn sub(&self, other: &PauliSum) -> Result<PauliSum> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, lambda: Complex64) -> PauliSum {
        let raw = self
            .terms
            .iter()
            .map(|t| PauliTerm::new(t.string.clone(), t.coeff * lambda))
            .collect();
        Self::from_raw(self.n_qubits, raw)
    }

    pub fn scale_real(&self, lambda: f64) -> PauliSum {
        self.scale(Complex64::new(lambda, 0.0))
    }

    /// Operator product `self · other`.
    pub fn mul(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check(other)?;
        let mut raw = Vec::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                let (phase, s) = a.string.mul_unchecked(&b.string);
                raw.push(PauliTerm::new(s, phase.apply(a.coeff * b.coeff)));
            }
        }
        Ok(Self::from_raw(self.n_qubits, raw))
    }

    /// `[self, other] = self·other − other·self`.
    ///
    /// Commuting string pairs drop out; anticommuting pairs contribute twice their
    /// product. Pairs are always visited in the order fixed by [`cmp_sums`], so
    /// `[a, b]` and `[b, a]` agree bit-for-bit up to sign.
    pub fn commutator(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check(other)?;
        Ok(match cmp_sums(self, other) {
            Ordering::Equal => PauliSum::zero(self.n_qubits),
            Ordering::Less => self.commutator_raw(other),
            Ordering::Greater => other.commutator_raw(self).negate(),
        })
    }

    fn commutator_raw(&self, other: &PauliSum) -> PauliSum {
        let mut raw = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                if a.string.commutes_with(&b.string) {
                    continue;
                }
                let (phase, s) = a.string.mul_unchecked(&b.string);
                raw.push(PauliTerm::new(s, phase.apply(2.0 * a.coeff * b.coeff)));
            }
        }
        Self::from_raw(self.n_qubits, raw)
    }

    fn negate(mut self) -> PauliSum {
        for t in &mut self.terms {
            t.coeff = unsigned_zero(-t.coeff);
        }
        self
    }

    /// Hermitian conjugate: every Pauli string is Hermitian, so coefficients are conjugated.
    pub fn dagger(&self) -> PauliSum {
        PauliSum {
            n_qubits: self.n_qubits,
            terms: self
                .terms
                .iter()
                .map(|t| PauliTerm::new(t.string.clone(), unsigned_zero(t.coeff.conj())))
                .collect(),
        }
    }

    /// All coefficients real to within `tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.terms.iter().all(|t| t.coeff.im.abs() <= tol)
    }

    /// All coefficients purely imaginary to within `tol`.
    pub fn is_anti_hermitian(&self, tol: f64) -> bool {
        self.terms.iter().all(|t| t.coeff.re.abs() <= tol)
    }

    /// Splits into `(matching, rest)`; both halves stay canonical.
    pub fn partition(&self, pred: impl Fn(&PauliString) -> bool) -> (PauliSum, PauliSum) {
        let (yes, no): (Vec<_>, Vec<_>) = self.terms.iter().cloned().partition(|t| pred(&t.string));
        (
            PauliSum {
                n_qubits: self.n_qubits,
                terms: yes,
            },
            PauliSum {
                n_qubits: self.n_qubits,
                terms: no,
            },
        )
    }

    /// Coefficient of the identity string (the trace part divided by `2^n`).
    pub fn identity_coeff(&self) -> Complex64 {
        self.coeff(&PauliString::identity(self.n_qubits))
    }

    pub fn without_identity(&self) -> PauliSum {
        self.partition(|s| !s.is_identity()).0
    }

    /// Largest coefficient-wise difference `max_s |self_s − other_s|`.
    pub fn max_diff(&self, other: &PauliSum) -> Result<f64> {
        self.check(other)?;
        let mut raw: Vec<PauliTerm> = self.terms.clone();
        raw.extend(
            other
                .terms
                .iter()
                .map(|t| PauliTerm::new(t.string.clone(), -t.coeff)),
        );
        Ok(merge_sorted(raw).iter().map(|t| t.coeff.norm()).fold(0.0, f64::max))
    }
}

/// Total order on sums: length, then strings, then coefficient bit patterns.
pub fn cmp_sums(a: &PauliSum, b: &PauliSum) -> Ordering {
    a.n_qubits
        .cmp(&b.n_qubits)
        .then(a.terms.len().cmp(&b.terms.len()))
        .then_with(|| {
            for (s, t) in a.terms.iter().zip(&b.terms) {
                let o = s
                    .string
                    .cmp(&t.string)
                    .then(s.coeff.re.total_cmp(&t.coeff.re))
                    .then(s.coeff.im.total_cmp(&t.coeff.im));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sum(n: usize, labels: &[(&str, Complex64)]) -> PauliSum {
        PauliSum::from_labels(n, labels.iter().copied()).unwrap()
    }

    #[test]
    fn term_products() {
        let t = |s: &str| PauliTerm::new(s.parse().unwrap(), c(1.0, 0.0));
        let xy = multiply(&t("X"), &t("Y")).unwrap();
        assert_eq!((xy.string.to_string(), xy.coeff), ("Z".into(), c(0.0, 1.0)));
        let xx = multiply(&t("X"), &t("X")).unwrap();
        assert_eq!((xx.string.to_string(), xx.coeff), ("I".into(), c(1.0, 0.0)));
        // Y⊗X · X⊗X = (YX)⊗(XX) = -iZ ⊗ I
        let r = multiply(&t("YX"), &t("XX")).unwrap();
        assert_eq!((r.string.to_string(), r.coeff), ("ZI".into(), c(0.0, -1.0)));
        assert!(multiply(&t("X"), &t("XX")).is_err());
    }

    #[test]
    fn add_and_scale() {
        let a = sum(1, &[("Z", c(0.5, 0.0))]);
        assert_eq!(a.add(&a).unwrap(), sum(1, &[("Z", c(1.0, 0.0))]));
        let x = sum(1, &[("X", c(1.0, 0.0))]);
        assert!(x.add(&x.scale_real(-1.0)).unwrap().is_empty());
        let zz = sum(4, &[("ZIZI", c(0.5, 0.0))]);
        assert_eq!(zz.scale_real(4.0), sum(4, &[("ZIZI", c(2.0, 0.0))]));
        assert!(a.add(&zz).is_err());
    }

    #[test]
    fn commutator_examples() {
        let z = sum(1, &[("Z", c(1.0, 0.0))]);
        let x = sum(1, &[("X", c(1.0, 0.0))]);
        assert_eq!(z.commutator(&x).unwrap(), sum(1, &[("Y", c(0.0, 2.0))]));
        let zi = sum(2, &[("ZI", c(1.0, 0.0))]);
        let iz = sum(2, &[("IZ", c(1.0, 0.0))]);
        assert!(zi.commutator(&iz).unwrap().is_empty());
        // dense 4x4 oracle gives -4i ZI + 4i IZ
        let a = sum(2, &[("YX", c(1.0, 0.0)), ("XY", c(-1.0, 0.0))]);
        let b = sum(2, &[("XX", c(1.0, 0.0)), ("YY", c(1.0, 0.0))]);
        let expect = sum(2, &[("ZI", c(0.0, -4.0)), ("IZ", c(0.0, 4.0))]);
        assert_eq!(a.commutator(&b).unwrap(), expect);
        assert_eq!(b.commutator(&a).unwrap(), expect.scale_real(-1.0));
    }

    #[test]
    fn canonicalize_merges_prunes_and_is_idempotent() {
        let raw = PauliSum {
            n_qubits: 1,
            terms: vec![
                PauliTerm::new("X".parse().unwrap(), c(0.3, 0.0)),
                PauliTerm::new("X".parse().unwrap(), c(0.7, 0.0)),
            ],
        };
        let once = raw.canonicalize(1e-12);
        assert_eq!(once.terms().len(), 1);
        assert!((once.coeff_of("X") - c(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(once.canonicalize(1e-12), once);

        let tiny = sum(1, &[("Z", c(1e-15, 0.0))]);
        assert!(tiny.canonicalize(1e-12).is_empty());
        // relative pruning keeps a lone small term
        assert_eq!(tiny.len(), 1);
    }

    #[test]
    fn relative_pruning_tracks_scale() {
        let s = sum(2, &[("ZZ", c(1.0, 0.0)), ("XX", c(1e-13, 0.0))]);
        assert_eq!(s.len(), 1);
        let s = sum(2, &[("ZZ", c(1e-6, 0.0)), ("XX", c(1e-13, 0.0))]);
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn partition_and_identity() {
        let h = sum(2, &[("II", c(0.5, 0.0)), ("ZZ", c(1.0, 0.0)), ("XX", c(0.1, 0.0))]);
        let (d, o) = h.partition(|s| s.is_diagonal());
        assert_eq!(d.len(), 2);
        assert_eq!(o.len(), 1);
        assert_eq!(h.identity_coeff(), c(0.5, 0.0));
        assert_eq!(h.without_identity().len(), 2);
    }

    #[test]
    fn self_commutator_vanishes() {
        let h = sum(2, &[("ZZ", c(1.0, 0.3)), ("XY", c(0.1, 0.0))]);
        assert!(h.commutator(&h).unwrap().is_empty());
    }
}
