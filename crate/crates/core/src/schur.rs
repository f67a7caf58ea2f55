//! Schur polynomials in Chern classes and their twisted variants.
//!
//! `s_λ = det[c_{λ_j - j + k}]` over the `ℓ(λ) × ℓ(λ)` Jacobi–Trudi matrix,
//! with `c_0 = 1` and `c_i = 0` outside `[0, r]`. Padding λ with zero parts
//! only adds a unitriangular block, so the determinant is unchanged.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};

use crate::ring::{binomial, ChernPoly, CommutativeAlgebra, Partition, Rational, TwistSeries};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchurError {
    #[error("invalid partition {partition}: part {part} exceeds rank {rank}")]
    PartExceedsRank {
        partition: Partition,
        part: u32,
        rank: usize,
    },
    #[error("polynomial is not weighted-homogeneous")]
    NotHomogeneous,
}

fn check_partition(lambda: &Partition, rank: usize) -> Result<(), SchurError> {
    if lambda.fits_rank(rank) {
        Ok(())
    } else {
        Err(SchurError::PartExceedsRank {
            partition: lambda.clone(),
            part: lambda.largest_part(),
            rank,
        })
    }
}

/// Jacobi–Trudi determinant `det[entry(λ_j - j + k)]` in any commutative algebra.
///
/// Laplace expansion along rows, memoized on the set of columns still free.
pub(crate) fn jacobi_trudi<A, F>(lambda: &Partition, one: &A, entry: F) -> A
where
    A: CommutativeAlgebra,
    F: Fn(i64) -> A,
{
    let len = lambda.length();
    if len == 0 {
        return one.clone();
    }
    assert!(len < 64, "partition too long for the column bitmask");
    let matrix: Vec<Vec<A>> = (0..len)
        .map(|j| {
            (0..len)
                .map(|k| entry(lambda.part(j) as i64 - j as i64 + k as i64))
                .collect()
        })
        .collect();
    let mut memo = HashMap::new();
    minor(&matrix, 0, (1u64 << len) - 1, one, &mut memo)
}

fn minor<A: CommutativeAlgebra>(
    m: &[Vec<A>],
    row: usize,
    cols: u64,
    one: &A,
    memo: &mut HashMap<u64, A>,
) -> A {
    if row == m.len() {
        return one.clone();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let zero = one.scaled(&Rational::zero());
    let mut acc = zero;
    let mut sign_negative = false;
    for k in 0..m.len() {
        if cols & (1 << k) == 0 {
            continue;
        }
        let e = &m[row][k];
        if !e.vanishes() {
            let sub = minor(m, row + 1, cols & !(1 << k), one, memo);
            if !sub.vanishes() {
                let mut term = e.times(&sub);
                if sign_negative {
                    term = term.scaled(&-Rational::one());
                }
                acc = acc.plus(&term);
            }
        }
        sign_negative = !sign_negative;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Schur polynomial `s_λ(c_1, ..., c_r)`.
pub fn schur_poly(lambda: &Partition, rank: usize) -> Result<ChernPoly, SchurError> {
    check_partition(lambda, rank)?;
    Ok(jacobi_trudi(lambda, &ChernPoly::one(rank), |i| {
        ChernPoly::chern(rank, i)
    }))
}

/// Partition indexing the monomial `c_1^{e_1} ... c_r^{e_r}` (`e_i` copies of `i`).
fn monomial_partition(exponents: &[u32]) -> Partition {
    Partition::from_multiplicities(exponents)
}

/// Coefficients `a_λ(P)` with `P = Σ a_λ s_λ`.
///
/// `s_μ` equals `c_μ` plus monomials `c_ν` with `ν` lexicographically larger
/// than `μ`, so peeling off the lexicographically smallest monomial each step
/// is exact unitriangular elimination.
pub fn schur_decompose(p: &ChernPoly) -> Result<BTreeMap<Partition, Rational>, SchurError> {
    let mut out = BTreeMap::new();
    if p.is_zero() {
        return Ok(out);
    }
    p.homogeneous_degree().ok_or(SchurError::NotHomogeneous)?;
    let rank = p.rank();
    let mut rest = p.clone();
    while !rest.is_zero() {
        let (mu, coeff) = rest
            .terms()
            .map(|(m, c)| (monomial_partition(m.exponents()), c.clone()))
            .min_by(|a, b| a.0.cmp(&b.0))
            .expect("nonzero polynomial has a term");
        let basis = schur_poly(&mu, rank)?;
        rest = &rest - &basis.scale(&coeff);
        out.insert(mu, coeff);
    }
    Ok(out)
}

/// Fulton–Lazarsfeld test: `P ≠ 0` and every Schur coefficient is nonnegative.
pub fn is_numerically_positive(p: &ChernPoly) -> Result<bool, SchurError> {
    if p.is_zero() {
        return Ok(false);
    }
    Ok(schur_decompose(p)?.values().all(|a| !a.is_negative()))
}

/// `c_k(E⟨δ⟩) = Σ_{i=0}^{k} C(r-i, k-i) c_i δ^{k-i}`; zero for `k ∉ [0, r]`.
pub fn twisted_chern(k: i64, rank: usize) -> TwistSeries {
    let mut s = TwistSeries::zero(rank);
    if k < 0 || k as usize > rank {
        return s;
    }
    let r = rank as i64;
    for i in 0..=k {
        let b = Rational::from_integer(binomial(r - i, k - i));
        s.add_coefficient((k - i) as u32, &ChernPoly::chern(rank, i).scale(&b));
    }
    s
}

/// `s_λ(E⟨δ⟩)` as a polynomial in `δ`, by Jacobi–Trudi over twisted Chern classes.
pub fn twisted_schur(lambda: &Partition, rank: usize) -> Result<TwistSeries, SchurError> {
    check_partition(lambda, rank)?;
    Ok(jacobi_trudi(
        lambda,
        &TwistSeries::constant(ChernPoly::one(rank)),
        |i| twisted_chern(i, rank),
    ))
}

/// Derived Schur polynomial `s_λ^{(i)}`, the `δ^i` coefficient of `s_λ(E⟨δ⟩)`.
pub fn derived_schur(lambda: &Partition, i: u32, rank: usize) -> Result<ChernPoly, SchurError> {
    Ok(twisted_schur(lambda, rank)?.coefficient(i))
}

/// Checks `s_λ^{(i)}(E⟨ε⟩) = Σ_{k ≥ i} C(k, i) s_λ^{(k)}(E) ε^{k-i}` as an exact identity.
///
/// The left side substitutes the twisted Chern classes into `s_λ^{(i)}`.
pub fn derived_twist_identity_check(
    lambda: &Partition,
    rank: usize,
    i: u32,
) -> Result<bool, SchurError> {
    let series = twisted_schur(lambda, rank)?;
    let derived = series.coefficient(i);
    let twisted_chern_classes: Vec<TwistSeries> =
        (1..=rank as i64).map(|k| twisted_chern(k, rank)).collect();
    let lhs = derived.evaluate(
        &TwistSeries::constant(ChernPoly::one(rank)),
        &twisted_chern_classes,
    );
    let mut rhs = TwistSeries::zero(rank);
    for k in i..=lambda.weight() {
        let b = Rational::from_integer(binomial(k as i64, i as i64));
        rhs.add_coefficient(k - i, &series.coefficient(k).scale(&b));
    }
    Ok(lhs == rhs)
}

/// Degree-`k` part of `(1 - c_1 + c_2 - ... + (-1)^r c_r)^{-1}`.
pub fn segre_poly(k: u32, rank: usize) -> ChernPoly {
    let mut s = vec![ChernPoly::one(rank)];
    for d in 1..=k as usize {
        let mut next = ChernPoly::zero(rank);
        for i in 1..=d.min(rank) {
            let term = &ChernPoly::chern(rank, i as i64) * &s[d - i];
            next = if i % 2 == 1 { &next + &term } else { &next - &term };
        }
        s.push(next);
    }
    s.pop().unwrap()
}
