mod common;

use common::*;
use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;
use schurkit::chernweil::{
    chern_form, chern_form_by, griffiths_min, random_hermitian_tensor, random_nakano_positive, schur_form,
    ChernRoute, CurvatureTensor,
};
use schurkit::forms::{is_positive, Arithmetic, ConstForm, Mode, PositivityOptions, C64};
use schurkit::ring::Partition;

/// Newton's identities: `k c_k = Σ_{i=1}^k (-1)^{i-1} c_{k-i} p_i` with `p_i = tr(Ω^i)`.
fn newton_chern_forms(theta: &CurvatureTensor) -> Vec<ConstForm> {
    let r = theta.r();
    let n = theta.n();
    let omega: Vec<Vec<ConstForm>> = (0..r).map(|l| (0..r).map(|m| theta.entry_form(l, m)).collect()).collect();
    let matmul = |a: &Vec<Vec<ConstForm>>, b: &Vec<Vec<ConstForm>>| -> Vec<Vec<ConstForm>> {
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| (0..r).fold(ConstForm::zero(n, 0, 0), |acc, k| acc.add(&a[i][k].wedge(&b[k][j]))))
                    .collect()
            })
            .collect()
    };
    let top = n.min(r);
    let mut power = omega.clone();
    let mut traces = vec![ConstForm::one(n)];
    for _ in 1..=top {
        traces.push((0..r).fold(ConstForm::zero(n, 0, 0), |acc, i| acc.add(&power[i][i])));
        power = matmul(&power, &omega);
    }
    let mut c = vec![ConstForm::one(n)];
    for k in 1..=top {
        let mut acc = ConstForm::zero(n, k, k);
        for i in 1..=k {
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            acc = acc.add(&c[k - i].wedge(&traces[i]).scale(C64::new(sign, 0.0)));
        }
        c.push(acc.scale(C64::new(1.0 / k as f64, 0.0)));
    }
    c
}

#[test]
fn chern_forms_agree_with_newton_identities() {
    for seed in 0..12u64 {
        let n = 1 + (seed as usize % 4);
        let r = 1 + (seed as usize / 4 % 4);
        let theta = random_hermitian_tensor(n, r, seed);
        let newton = newton_chern_forms(&theta);
        for (k, want) in newton.iter().enumerate() {
            for route in [ChernRoute::Determinant, ChernRoute::TraceOfWedge] {
                assert!(chern_form_by(&theta, k, route).sub(want).max_modulus() < 1e-10, "n={n}, r={r}, k={k}");
            }
        }
    }
}

#[test]
fn chern_forms_are_real() {
    for seed in 0..20u64 {
        let theta = random_hermitian_tensor(3, 3, 100 + seed);
        for k in 0..=3 {
            let f = chern_form(&theta, k);
            assert!(f.reality_defect() < 1e-12);
        }
    }
}

#[test]
fn first_chern_form_is_the_trace() {
    let theta = random_hermitian_tensor(2, 3, 7);
    let trace = (0..3).fold(ConstForm::zero(2, 1, 1), |acc, l| acc.add(&theta.entry_form(l, l)));
    assert!(chern_form(&theta, 1).sub(&trace).max_modulus() < 1e-15);
}

#[test]
fn gauge_invariance() {
    let mut rng = rng(51);
    for seed in 0..10u64 {
        let n = rng.gen_range(1..=3);
        let r = rng.gen_range(1..=4);
        let theta = random_hermitian_tensor(n, r, seed);
        let u = random_unitary(&mut rng, r);
        let gauged = theta.gauge_transform(&u).unwrap();
        assert!(gauged.hermitian_defect() < 1e-12);
        for k in 0..=n.min(r) {
            assert!(chern_form(&theta, k).sub(&chern_form(&gauged, k)).max_modulus() < 1e-10);
        }
    }
}

#[test]
fn griffiths_minimum_is_bounded_by_the_nakano_eigenvalue() {
    for seed in 0..10u64 {
        let theta = random_nakano_positive(2, 3, seed);
        let lmin = SymmetricEigen::new(theta.nakano_matrix()).eigenvalues.min();
        let g = griffiths_min(&theta, 1e-10, seed);
        assert!(g.value >= lmin - 1e-10);
        assert!(g.griffiths_positive);
        let witness = DMatrix::from_fn(2, 3, |j, l| g.xi[j] * g.s[l]);
        assert!((theta.theta_eval(&witness).unwrap() - g.value).abs() < 1e-9);
    }
}

#[test]
fn rank_two_second_chern_forms_of_nakano_samples_are_positive() {
    let opts = PositivityOptions { mode: Mode::Semi, arithmetic: Arithmetic::Float { tolerance: 1e-10 }, ..Default::default() };
    for seed in 0..100u64 {
        let theta = random_nakano_positive(2, 2, seed);
        assert!(is_positive(&chern_form(&theta, 2), &opts).unwrap().passes(), "seed {seed}");
        let s2 = schur_form(&theta, &Partition::new(vec![2]).unwrap()).unwrap();
        assert!(is_positive(&s2, &opts).unwrap().passes(), "seed {seed}");
    }
}
