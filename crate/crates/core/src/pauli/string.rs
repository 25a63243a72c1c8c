use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Result, SwtError};

/// Single-qubit Pauli label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// `(x, z)` symplectic bits.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// A power of `i`, kept as an integer mod 4 until it is folded into a coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: u32) -> Self {
        Phase((k % 4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn mul(self, other: Phase) -> Phase {
        Phase((self.0 + other.0) % 4)
    }

    /// Multiplies `c` by `i^k` by swapping and negating components, so no rounding occurs.
    pub fn apply(self, c: Complex64) -> Complex64 {
        match self.0 {
            0 => c,
            1 => Complex64::new(-c.im, c.re),
            2 => Complex64::new(-c.re, -c.im),
            _ => Complex64::new(c.im, -c.re),
        }
    }
}

/// An `n`-qubit tensor product of I/X/Y/Z in symplectic form.
///
/// Qubit `q` lives in bit `q % 64` of word `q / 64`. No phase is stored here;
/// `Y` is the Hermitian Pauli `Y`, not `XZ`.
///
/// The derived ordering compares `n_qubits`, then the z-words, then the x-words,
/// which puts the identity first and all Z-only strings before anything with X/Y
/// on the same z-pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n_qubits: usize,
    z: Vec<u64>,
    x: Vec<u64>,
}

fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

fn dot(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(p, q)| (p & q).count_ones()).sum()
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        let w = words_for(n_qubits);
        PauliString {
            n_qubits,
            z: vec![0; w],
            x: vec![0; w],
        }
    }

    /// Builds a string from `(qubit, pauli)` pairs; later pairs overwrite earlier ones.
    pub fn from_sparse(n_qubits: usize, ops: &[(usize, Pauli)]) -> Result<Self> {
        let mut s = Self::identity(n_qubits);
        for &(q, p) in ops {
            if q >= n_qubits {
                return Err(SwtError::InvalidPauli {
                    text: format!("{p:?}{q}"),
                    reason: format!("qubit {q} out of range for {n_qubits} qubits"),
                });
            }
            s.set(q, p);
        }
        Ok(s)
    }

    pub fn single(n_qubits: usize, qubit: usize, p: Pauli) -> Self {
        let mut s = Self::identity(n_qubits);
        s.set(qubit, p);
        s
    }

    /// Parses `text` and checks that it spans exactly `n_qubits` characters.
    pub fn parse_with_len(text: &str, n_qubits: usize) -> Result<Self> {
        let s: PauliString = text.parse()?;
        if s.n_qubits != n_qubits {
            return Err(SwtError::InvalidPauli {
                text: text.to_string(),
                reason: format!("length {} does not match n_qubits {}", s.n_qubits, n_qubits),
            });
        }
        Ok(s)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn get(&self, q: usize) -> Pauli {
        assert!(q < self.n_qubits, "qubit {q} out of range");
        let (w, b) = (q / 64, q % 64);
        Pauli::from_bits(self.x[w] >> b & 1 == 1, self.z[w] >> b & 1 == 1)
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        assert!(q < self.n_qubits, "qubit {q} out of range");
        let (w, b) = (q / 64, q % 64);
        let (xb, zb) = p.bits();
        self.x[w] = (self.x[w] & !(1 << b)) | ((xb as u64) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | ((zb as u64) << b);
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// True iff the string is a product of I and Z only.
    pub fn is_diagonal(&self) -> bool {
        self.x.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    pub fn y_count(&self) -> u32 {
        dot(&self.x, &self.z)
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        (dot(&self.x, &other.z) + dot(&self.z, &other.x)).is_multiple_of(2)
    }

    /// Product `self · other = phase · result`.
    pub fn mul(&self, other: &PauliString) -> Result<(Phase, PauliString)> {
        if self.n_qubits != other.n_qubits {
            return Err(SwtError::QubitMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &PauliString) -> (Phase, PauliString) {
        // With P(x,z) = i^{x·z} X^x Z^z, moving Z^z1 past X^x2 costs (-1)^{z1·x2}.
        let x: Vec<u64> = self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect();
        let z: Vec<u64> = self.z.iter().zip(&other.z).map(|(a, b)| a ^ b).collect();
        let k = (self.y_count() + other.y_count() + 2 * dot(&self.z, &other.x)) as i64
            - dot(&x, &z) as i64;
        (
            Phase::from_exponent(k.rem_euclid(4) as u32),
            PauliString {
                n_qubits: self.n_qubits,
                z,
                x,
            },
        )
    }

    pub fn iter(&self) -> impl Iterator<Item = Pauli> + '_ {
        (0..self.n_qubits).map(|q| self.get(q))
    }

    /// Qubits carrying a non-identity factor.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_qubits).filter(|&q| self.get(q) != Pauli::I)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.iter() {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = SwtError;

    fn from_str(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        if chars.is_empty() {
            return Err(SwtError::InvalidPauli {
                text: text.to_string(),
                reason: "empty string".into(),
            });
        }
        let mut s = PauliString::identity(chars.len());
        for (q, c) in chars.into_iter().enumerate() {
            let p = Pauli::from_char(c).ok_or_else(|| SwtError::InvalidPauli {
                text: text.to_string(),
                reason: format!("character {c:?} is not one of I, X, Y, Z"),
            })?;
            s.set(q, p);
        }
        Ok(s)
    }
}
