mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use swt_core::fermion::{jw_ladder, jw_map, FermionOperator, LadderOp};
use swt_core::models::{siam_chain, siam_two_site, SiamParams};
use swt_core::oracle::{to_matrix, DenseOperator};
use swt_core::pauli::PauliSum;

fn dense(op: LadderOp, n: usize) -> DenseOperator {
    to_matrix(&jw_ladder(op, n).unwrap()).unwrap()
}

#[test]
fn ladder_operators_satisfy_canonical_anticommutation() {
    for n in 1..=4 {
        let id = DenseOperator::identity(n).unwrap();
        let zero = DenseOperator::zeros(n).unwrap();
        for i in 0..n {
            for j in 0..n {
                let (ci, cj) = (dense(LadderOp::annihilate(i), n), dense(LadderOp::annihilate(j), n));
                let cdj = dense(LadderOp::create(j), n);
                let anti = |a: &DenseOperator, b: &DenseOperator| a.mul(b).add(&b.mul(a));
                let expect = if i == j { &id } else { &zero };
                assert!(anti(&ci, &cdj).max_abs_diff(expect) < 1e-14, "n={n} i={i} j={j}");
                assert!(anti(&ci, &cj).max_abs_diff(&zero) < 1e-14);
            }
        }
    }
}

#[test]
fn ladder_matches_occupation_basis() {
    for n in 1..=4 {
        for j in 0..n {
            for op in [LadderOp::create(j), LadderOp::annihilate(j)] {
                let mut f = FermionOperator::new(n);
                f.push(c(1.0, 0.0), vec![op]).unwrap();
                let got = dense(op, n);
                assert!(max_entry_diff(got.matrix(), &occupation_matrix(&f)) < 1e-15);
            }
        }
    }
}

fn random_fermion(rng: &mut ChaCha8Rng, n: usize) -> FermionOperator {
    let mut f = FermionOperator::new(n);
    for _ in 0..rng.gen_range(1..6) {
        let len = rng.gen_range(1..=4);
        let ops = (0..len)
            .map(|_| {
                let m = rng.gen_range(0..n);
                if rng.gen_bool(0.5) {
                    LadderOp::create(m)
                } else {
                    LadderOp::annihilate(m)
                }
            })
            .collect();
        f.push(c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)), ops)
            .unwrap();
    }
    f
}

#[test]
fn mapping_agrees_with_occupation_basis_on_random_operators() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let n = rng.gen_range(1..=5);
        let f = random_fermion(&mut rng, n);
        let got = to_matrix(&jw_map(&f).unwrap()).unwrap();
        assert!(max_entry_diff(got.matrix(), &occupation_matrix(&f)) < 1e-13);
    }
}

#[test]
fn mapping_is_linear_and_respects_adjoint() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let a = random_fermion(&mut rng, 4);
        let b = random_fermion(&mut rng, 4);
        let lam = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let lhs = jw_map(&a.scale(lam).add(&b).unwrap()).unwrap();
        let rhs = jw_map(&a).unwrap().scale(lam).add(&jw_map(&b).unwrap()).unwrap();
        assert!(lhs.max_diff(&rhs).unwrap() < 1e-13);
        let dag = jw_map(&a.dagger()).unwrap();
        assert!(dag.max_diff(&jw_map(&a).unwrap().dagger()).unwrap() < 1e-13);
    }
}

#[test]
fn models_are_hermitian_and_match_occupation_basis() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..5 {
        for p in [random_two_site(&mut rng, 0.0), random_chain3(&mut rng, 0.0)] {
            let f = if p.n_bath == 1 && p.eps.len() == 1 {
                siam_two_site(&p).unwrap()
            } else {
                siam_chain(&p).unwrap()
            };
            let h = jw_map(&f).unwrap();
            assert!(h.is_hermitian(0.0));
            let got = to_matrix(&h).unwrap();
            assert!(max_entry_diff(got.matrix(), &occupation_matrix(&f)) < 1e-13);
        }
    }
}

fn number_operator(n_qubits: usize, modes: impl Iterator<Item = usize>) -> PauliSum {
    let mut f = FermionOperator::new(n_qubits);
    for m in modes {
        f.add_number(1.0, m).unwrap();
    }
    jw_map(&f).unwrap()
}

#[test]
fn models_conserve_particle_number_per_spin() {
    let p = SiamParams::chain(4.0, 0.5, vec![-1.0, 0.3, 0.8, -0.4], vec![0.2, 0.15, 0.1]);
    let h = jw_map(&siam_chain(&p).unwrap()).unwrap();
    let n = p.n_modes();
    let up = number_operator(n, 0..=p.n_bath);
    let down = number_operator(n, (0..=p.n_bath).map(|i| p.down(i)));
    assert!(h.commutator(&up).unwrap().canonicalize(1e-14).is_empty());
    assert!(h.commutator(&down).unwrap().canonicalize(1e-14).is_empty());

    let h2 = jw_map(&siam_two_site(&SiamParams::two_site(4.0, 1.0, 0.5, 0.2)).unwrap()).unwrap();
    let total = number_operator(4, 0..4);
    assert!(h2.commutator(&total).unwrap().canonicalize(1e-14).is_empty());
}
