#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use swt_core::fermion::FermionOperator;
use swt_core::models::SiamParams;
use swt_core::oracle::{exact_generator_dense, DenseOperator};
use swt_core::pauli::{Pauli, PauliString, PauliSum, PauliTerm};
use swt_core::swt::SplitHamiltonian;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Matrix of `f` built straight from occupation-number states, with no Pauli algebra.
///
/// Mode `j` occupies basis-index bit `n − 1 − j`; `c_j` picks up `(−1)` per occupied
/// mode `k < j`.
pub fn occupation_matrix(f: &FermionOperator) -> DMatrix<Complex64> {
    let n = f.n_modes();
    let dim = 1usize << n;
    let bit = |j: usize| 1usize << (n - 1 - j);
    let mut m = DMatrix::from_element(dim, dim, c(0.0, 0.0));
    for col in 0..dim {
        for t in f.terms() {
            let mut state = Some((col, 1.0f64));
            for op in t.factors.iter().rev() {
                state = state.and_then(|(s, sign)| {
                    let occupied = s & bit(op.mode) != 0;
                    if occupied == op.dagger {
                        return None;
                    }
                    let below = (0..op.mode).filter(|&k| s & bit(k) != 0).count();
                    let sign = if below % 2 == 1 { -sign } else { sign };
                    Some((s ^ bit(op.mode), sign))
                });
            }
            if let Some((row, sign)) = state {
                m[(row, col)] += t.coeff * sign;
            }
        }
    }
    m
}

pub fn random_string(rng: &mut ChaCha8Rng, n: usize) -> PauliString {
    let mut s = PauliString::identity(n);
    for q in 0..n {
        let p = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][rng.gen_range(0..4)];
        s.set(q, p);
    }
    s
}

pub fn random_sum(rng: &mut ChaCha8Rng, n: usize, max_terms: usize, hermitian: bool) -> PauliSum {
    let k = rng.gen_range(1..=max_terms);
    let terms = (0..k).map(|_| {
        let re = rng.gen_range(-1.0..1.0);
        let im = if hermitian { 0.0 } else { rng.gen_range(-1.0..1.0) };
        PauliTerm::new(random_string(rng, n), c(re, im))
    });
    PauliSum::from_terms(n, terms).unwrap()
}

/// Two-site parameters whose hopping gaps all stay at least `margin` away from zero.
pub fn random_two_site(rng: &mut ChaCha8Rng, margin: f64) -> SiamParams {
    loop {
        let u: f64 = rng.gen_range(2.0..6.0);
        let mu: f64 = rng.gen_range(0.2..3.0);
        let eps2: f64 = rng.gen_range(-1.5..1.5);
        let v = rng.gen_range(0.05..0.3);
        // impurity-bath gaps: −μ − ε₂ and U − μ − ε₂
        if (mu + eps2).abs() > margin && (u - mu - eps2).abs() > margin {
            return SiamParams::two_site(u, mu, eps2, v);
        }
    }
}

/// Three-bath chain parameters with every hopping gap at least `margin` from zero.
pub fn random_chain3(rng: &mut ChaCha8Rng, margin: f64) -> SiamParams {
    loop {
        let u: f64 = rng.gen_range(2.0..6.0);
        let mu = rng.gen_range(-1.0..1.0);
        let eps: Vec<f64> = (0..4).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let v: Vec<f64> = (0..3).map(|_| rng.gen_range(0.05..0.3)).collect();
        let ok = (1..4).all(|i| (eps[0] - eps[i]).abs() > margin && (eps[0] + u - eps[i]).abs() > margin);
        if ok {
            return SiamParams::chain(u, mu, eps, v);
        }
    }
}

pub fn exact_generator(split: &SplitHamiltonian) -> DenseOperator {
    let (s, report) = exact_generator_dense(split, None).unwrap();
    assert!(report.is_empty(), "unexpected degeneracy: {report:?}");
    s
}

pub fn max_entry_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
