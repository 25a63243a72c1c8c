use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Result, SwtError};
use crate::pauli::{Pauli, PauliString, PauliSum, PauliTerm, Phase};

/// Largest register the dense oracle will materialize.
pub const MAX_DENSE_QUBITS: usize = 14;

/// A `2^n × 2^n` complex matrix in the computational basis.
///
/// Basis index bit `n − 1 − q` holds qubit `q`, so qubit 0 is the outermost
/// tensor factor and `|1⟩` (an occupied mode) sets the bit.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    n_qubits: usize,
    matrix: DMatrix<Complex64>,
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

/// `(x_mask, z_mask)` of `s` in basis-index bit order.
fn index_masks(s: &PauliString) -> (usize, usize) {
    let n = s.n_qubits();
    let (mut xm, mut zm) = (0usize, 0usize);
    for q in 0..n {
        let (x, z) = s.get(q).bits();
        let bit = 1usize << (n - 1 - q);
        if x {
            xm |= bit;
        }
        if z {
            zm |= bit;
        }
    }
    (xm, zm)
}

fn string_from_masks(n: usize, xm: usize, zm: usize) -> PauliString {
    let mut s = PauliString::identity(n);
    for q in 0..n {
        let bit = 1usize << (n - 1 - q);
        s.set(q, Pauli::from_bits(xm & bit != 0, zm & bit != 0));
    }
    s
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_DENSE_QUBITS {
        return Err(SwtError::TooLarge {
            n,
            max: MAX_DENSE_QUBITS,
        });
    }
    Ok(())
}

/// In-place Walsh-Hadamard transform: `v[z] ← Σ_c (−1)^{popcount(c & z)} v[c]`.
fn walsh_hadamard(v: &mut [Complex64]) {
    let mut h = 1;
    while h < v.len() {
        for block in v.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (s, d) = (*a + *b, *a - *b);
                *a = s;
                *b = d;
            }
        }
        h *= 2;
    }
}

/// Dense matrix of `a` under the crate's tensor convention.
pub fn to_matrix(a: &PauliSum) -> Result<DenseOperator> {
    let n = a.n_qubits();
    check_size(n)?;
    let dim = 1usize << n;
    let mut m = DMatrix::from_element(dim, dim, zero());
    for t in a.terms() {
        let (xm, zm) = index_masks(&t.string);
        // ⟨c ⊕ x| P |c⟩ = i^{#Y} (−1)^{popcount(c & z)}
        let base = Phase::from_exponent(t.string.y_count()).apply(t.coeff);
        for c in 0..dim {
            let v = if (c & zm).count_ones() % 2 == 1 { -base } else { base };
            m[(c ^ xm, c)] += v;
        }
    }
    Ok(DenseOperator {
        n_qubits: n,
        matrix: m,
    })
}

/// Pauli coefficients `tr(P† m) / 2^n` for every string, via one Walsh-Hadamard
/// transform per x-pattern.
pub fn pauli_decompose(m: &DenseOperator) -> PauliSum {
    let n = m.n_qubits;
    let dim = 1usize << n;
    let mut terms = Vec::new();
    let mut buf = vec![zero(); dim];
    for xm in 0..dim {
        for (c, slot) in buf.iter_mut().enumerate() {
            *slot = m.matrix[(c ^ xm, c)];
        }
        walsh_hadamard(&mut buf);
        for (zm, &f) in buf.iter().enumerate() {
            if f == zero() {
                continue;
            }
            let ny = (xm & zm).count_ones();
            // conj(i^{ny}) = i^{-ny}
            let coeff = Phase::from_exponent(4 - ny % 4).apply(f / dim as f64);
            terms.push(PauliTerm::new(string_from_masks(n, xm, zm), coeff));
        }
    }
    PauliSum::from_terms(n, terms).expect("strings built with matching width")
}

impl DenseOperator {
    pub fn from_matrix(matrix: DMatrix<Complex64>) -> Result<Self> {
        let dim = matrix.nrows();
        if dim != matrix.ncols() || !dim.is_power_of_two() {
            return Err(SwtError::NotPowerOfTwo(dim));
        }
        let n = dim.trailing_zeros() as usize;
        check_size(n)?;
        Ok(DenseOperator { n_qubits: n, matrix })
    }

    pub fn zeros(n_qubits: usize) -> Result<Self> {
        check_size(n_qubits)?;
        let dim = 1usize << n_qubits;
        Ok(DenseOperator {
            n_qubits,
            matrix: DMatrix::from_element(dim, dim, zero()),
        })
    }

    pub fn identity(n_qubits: usize) -> Result<Self> {
        check_size(n_qubits)?;
        let dim = 1usize << n_qubits;
        Ok(DenseOperator {
            n_qubits,
            matrix: DMatrix::identity(dim, dim),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    fn wrap(&self, matrix: DMatrix<Complex64>) -> DenseOperator {
        DenseOperator {
            n_qubits: self.n_qubits,
            matrix,
        }
    }

    pub fn mul(&self, other: &DenseOperator) -> DenseOperator {
        self.wrap(&self.matrix * &other.matrix)
    }

    pub fn add(&self, other: &DenseOperator) -> DenseOperator {
        self.wrap(&self.matrix + &other.matrix)
    }

    pub fn sub(&self, other: &DenseOperator) -> DenseOperator {
        self.wrap(&self.matrix - &other.matrix)
    }

    pub fn scale(&self, lambda: Complex64) -> DenseOperator {
        self.wrap(&self.matrix * lambda)
    }

    pub fn commutator(&self, other: &DenseOperator) -> DenseOperator {
        self.wrap(&self.matrix * &other.matrix - &other.matrix * &self.matrix)
    }

    pub fn adjoint(&self) -> DenseOperator {
        self.wrap(self.matrix.adjoint())
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        self.matrix
            .iter()
            .zip(other.matrix.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        self.matrix.diagonal().iter().copied().collect()
    }

    /// Frobenius norm of the entries with row ≠ column.
    pub fn off_diagonal_norm(&self) -> f64 {
        let dim = self.dim();
        let mut acc = 0.0;
        for c in 0..dim {
            for r in 0..dim {
                if r != c {
                    acc += self.matrix[(r, c)].norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    /// Basis indices with exactly `k` occupied modes (set bits).
    pub fn sector_indices(&self, k: usize) -> Vec<usize> {
        (0..self.dim()).filter(|i| i.count_ones() as usize == k).collect()
    }

    /// Principal submatrix on `indices`.
    pub fn restrict(&self, indices: &[usize]) -> DMatrix<Complex64> {
        DMatrix::from_fn(indices.len(), indices.len(), |r, c| self.matrix[(indices[r], indices[c])])
    }

    /// Ascending eigenvalues of the Hermitian part, optionally within one particle-number sector.
    pub fn eigenvalues(&self, sector: Option<usize>) -> Vec<f64> {
        let m = match sector {
            Some(k) => self.restrict(&self.sector_indices(k)),
            None => self.matrix.clone(),
        };
        if m.nrows() == 0 {
            return Vec::new();
        }
        let herm = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        let mut ev: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// `exp(self)` by scaling and squaring a truncated Taylor series.
    pub fn exp(&self) -> DenseOperator {
        let norm = self.frobenius_norm();
        let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
        let a = &self.matrix / Complex64::new(2f64.powi(squarings as i32), 0.0);
        let dim = self.dim();
        let mut result = DMatrix::<Complex64>::identity(dim, dim);
        let mut term = DMatrix::<Complex64>::identity(dim, dim);
        // ‖A‖ ≤ 0.5, so 0.5^k / k! < 1e-18 well before k = 24
        for k in 1..=24 {
            term = &term * &a / Complex64::new(k as f64, 0.0);
            result += &term;
            if term.iter().map(|c| c.norm()).fold(0.0, f64::max) < 1e-18 {
                break;
            }
        }
        for _ in 0..squarings {
            result = &result * &result;
        }
        self.wrap(result)
    }
}

/// `exp(s) · h · exp(−s)`.
pub fn conjugate(h: &DenseOperator, s: &DenseOperator) -> DenseOperator {
    let u = s.exp();
    let u_inv = s.scale(Complex64::new(-1.0, 0.0)).exp();
    u.mul(h).mul(&u_inv)
}
