mod common;

use common::*;
use num_traits::{One, Signed};
use proptest::prelude::*;
use schurkit::ring::{ChernPoly, Partition, Rational};
use schurkit::schur::{
    derived_schur, is_numerically_positive, schur_decompose, schur_poly, segre_poly, twisted_schur,
};

fn arb_partition(max_weight: u32, max_part: u32) -> impl Strategy<Value = Partition> {
    (0..=max_weight).prop_flat_map(move |k| {
        let all = Partition::enumerate(k, max_part);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

#[test]
fn schur_polynomials_match_tableaux_at_rational_roots() {
    let mut rng = rng(21);
    for r in 1..=3usize {
        for k in 0..=5u32 {
            for lambda in Partition::enumerate(k, r as u32) {
                let p = schur_poly(&lambda, r).unwrap();
                for _ in 0..5 {
                    let roots = random_roots(&mut rng, r);
                    assert_eq!(
                        p.evaluate(&Rational::one(), &chern_values(&roots)),
                        ssyt_schur(&lambda.conjugate(), &roots),
                        "λ = {lambda}, r = {r}"
                    );
                }
            }
        }
    }
}

#[test]
fn derived_classes_match_the_chern_root_shift() {
    let mut rng = rng(22);
    for r in 1..=3usize {
        for k in 0..=4u32 {
            for lambda in Partition::enumerate(k, r as u32) {
                let roots = random_roots(&mut rng, r);
                let oracle = shifted_schur_coefficients(&lambda.conjugate(), &roots);
                for (i, want) in oracle.iter().enumerate() {
                    let got = derived_schur(&lambda, i as u32, r)
                        .unwrap()
                        .evaluate(&Rational::one(), &chern_values(&roots));
                    assert_eq!(&got, want, "λ = {lambda}, i = {i}");
                }
            }
        }
    }
}

#[test]
fn segre_is_complete_homogeneous_in_roots() {
    let mut rng = rng(23);
    for r in 1..=4usize {
        for k in 0..=6u32 {
            let roots = random_roots(&mut rng, r);
            assert_eq!(
                segre_poly(k, r).evaluate(&Rational::one(), &chern_values(&roots)),
                complete(&roots, k as usize)
            );
        }
    }
}

#[test]
fn first_chern_power_decomposes_by_hook_lengths() {
    for r in 1..=5usize {
        for k in 1..=6u32 {
            let dec = schur_decompose(&ChernPoly::chern(r, 1).pow(k)).unwrap();
            for lambda in Partition::enumerate(k, r as u32) {
                assert_eq!(dec[&lambda], hook_length_count(&lambda), "λ = {lambda}, r = {r}");
            }
            assert!(is_numerically_positive(&ChernPoly::chern(r, 1).pow(k)).unwrap());
        }
    }
}

#[test]
fn derived_first_class_experiment_has_no_fixed_sign_pattern() {
    // only checks the decomposition is exact; the sign pattern is left open
    for r in 1..=3usize {
        for k in 1..=4u32 {
            for lambda in Partition::enumerate(k, r as u32) {
                let d = derived_schur(&lambda, 1, r).unwrap();
                let dec = schur_decompose(&d).unwrap();
                let rebuilt = dec.iter().fold(ChernPoly::zero(r), |acc, (mu, a)| {
                    &acc + &schur_poly(mu, r).unwrap().scale(a)
                });
                assert_eq!(rebuilt, d);
            }
        }
    }
}

proptest! {
    #[test]
    fn schur_polys_are_homogeneous(lambda in arb_partition(6, 4)) {
        let p = schur_poly(&lambda, 4).unwrap();
        prop_assert_eq!(p.homogeneous_degree(), Some(lambda.weight()));
    }

    #[test]
    fn decomposition_of_a_schur_poly_is_a_single_term(lambda in arb_partition(6, 3)) {
        let p = schur_poly(&lambda, 3).unwrap();
        let dec = schur_decompose(&p).unwrap();
        prop_assert_eq!(dec.len(), 1);
        prop_assert!(dec[&lambda] == Rational::one());
    }

    #[test]
    fn twisted_schur_at_zero_is_the_schur_poly(lambda in arb_partition(5, 3)) {
        let t = twisted_schur(&lambda, 3).unwrap();
        prop_assert_eq!(t.at_zero_twist(), schur_poly(&lambda, 3).unwrap());
        prop_assert!(derived_schur(&lambda, lambda.weight() + 1, 3).unwrap().is_zero());
    }

    #[test]
    fn top_derived_class_is_a_count(lambda in arb_partition(5, 3)) {
        // s_λ^{(|λ|)} is the constant s_λ'(1, ..., 1)
        let top = derived_schur(&lambda, lambda.weight(), 3).unwrap();
        let ones = vec![Rational::one(); 3];
        let want = ssyt_schur(&lambda.conjugate(), &ones);
        prop_assert_eq!(top, ChernPoly::constant(3, want.clone()));
        prop_assert!(!want.is_negative());
    }
}
