use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{parse_rational, rat, CommutativeAlgebra, Rational};

/// Monomial `c_1^{e_1} ... c_r^{e_r}`.
///
/// Ordered by weighted degree, then lexicographically on the exponent vector.
/// Canonical output lists terms from the largest monomial down.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChernMonomial(Vec<u32>);

impl ChernMonomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        ChernMonomial(exponents)
    }

    pub fn one(rank: usize) -> Self {
        ChernMonomial(vec![0; rank])
    }

    /// The monomial `c_i` (1-based `i`).
    pub fn var(rank: usize, i: usize) -> Self {
        let mut e = vec![0; rank];
        e[i - 1] = 1;
        ChernMonomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn weighted_degree(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, e)| (i as u32 + 1) * e)
            .sum()
    }

    fn mul(&self, other: &Self) -> Self {
        ChernMonomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for ChernMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weighted_degree()
            .cmp(&other.weighted_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ChernMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in the Chern variables `c_1..c_r` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernPoly {
    rank: usize,
    terms: BTreeMap<ChernMonomial, Rational>,
}

impl ChernPoly {
    pub fn zero(rank: usize) -> Self {
        ChernPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, Rational::one())
    }

    pub fn constant(rank: usize, c: Rational) -> Self {
        let mut p = Self::zero(rank);
        p.add_term(ChernMonomial::one(rank), c);
        p
    }

    /// `c_i` with the conventions `c_0 = 1` and `c_i = 0` for `i ∉ [0, r]`.
    pub fn chern(rank: usize, i: i64) -> Self {
        if i == 0 {
            Self::one(rank)
        } else if i < 0 || i as usize > rank {
            Self::zero(rank)
        } else {
            let mut p = Self::zero(rank);
            p.add_term(ChernMonomial::var(rank, i as usize), Rational::one());
            p
        }
    }

    pub fn monomial(monomial: ChernMonomial, c: Rational) -> Self {
        let mut p = Self::zero(monomial.0.len());
        p.add_term(monomial, c);
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated monomials are summed.
    pub fn from_terms<I>(rank: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(rank);
        for (e, c) in terms {
            assert_eq!(e.len(), rank, "exponent vector length must equal the rank");
            p.add_term(ChernMonomial(e), c);
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ChernMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &ChernMonomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: ChernMonomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Weighted-degree-`k` homogeneous component.
    pub fn degree_part(&self, k: u32) -> Self {
        ChernPoly {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weighted_degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// `Some(k)` when every term has weighted degree `k`; `None` for the zero
    /// polynomial or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(ChernMonomial::weighted_degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(ChernMonomial::weighted_degree).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        ChernPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.rank);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `values[i - 1]` for `c_i` and evaluates in `A`.
    pub fn evaluate<A: CommutativeAlgebra>(&self, one: &A, values: &[A]) -> A {
        assert_eq!(values.len(), self.rank, "one value per Chern variable");
        let mut powers: Vec<Vec<A>> = values.iter().map(|v| vec![one.clone(), v.clone()]).collect();
        let mut acc = one.scaled(&Rational::zero());
        for (m, c) in &self.terms {
            let mut term = one.scaled(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().times(&values[i]);
                    powers[i].push(next);
                }
                term = term.times(&powers[i][e as usize]);
                if term.vanishes() {
                    break;
                }
            }
            acc = acc.plus(&term);
        }
        acc
    }

    fn check_rank(&self, other: &Self) {
        assert_eq!(
            self.rank, other.rank,
            "Chern polynomials of different rank cannot be combined"
        );
    }
}

impl Add<&ChernPoly> for &ChernPoly {
    type Output = ChernPoly;
    fn add(self, rhs: &ChernPoly) -> ChernPoly {
        self.check_rank(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&ChernPoly> for &ChernPoly {
    type Output = ChernPoly;
    fn sub(self, rhs: &ChernPoly) -> ChernPoly {
        self.check_rank(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul<&ChernPoly> for &ChernPoly {
    type Output = ChernPoly;
    fn mul(self, rhs: &ChernPoly) -> ChernPoly {
        self.check_rank(rhs);
        let mut out = ChernPoly::zero(self.rank);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &ChernPoly {
    type Output = ChernPoly;
    fn neg(self) -> ChernPoly {
        self.scale(&rat(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<ChernPoly> for ChernPoly {
            type Output = ChernPoly;
            fn $method(self, rhs: ChernPoly) -> ChernPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl CommutativeAlgebra for ChernPoly {
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for ChernPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("c{}", i + 1)
                    } else {
                        format!("c{}^{}", i + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ChernPolyJson {
    rank: usize,
    terms: Vec<(Vec<u32>, String)>,
}

impl Serialize for ChernPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ChernPolyJson {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| (m.0.clone(), c.to_string()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChernPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = ChernPolyJson::deserialize(d)?;
        let mut p = ChernPoly::zero(raw.rank);
        for (e, c) in raw.terms {
            if e.len() != raw.rank {
                return Err(D::Error::custom(format!(
                    "exponent vector {e:?} does not have {} entries",
                    raw.rank
                )));
            }
            let c = parse_rational(&c).map_err(D::Error::custom)?;
            p.add_term(ChernMonomial(e), c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(r: usize, i: i64) -> ChernPoly {
        ChernPoly::chern(r, i)
    }

    #[test]
    fn basic_products() {
        let r = 2;
        assert_eq!(&c(r, 1) * &c(r, 1), c(r, 1).pow(2));
        let lhs = &(&c(r, 1) + &c(r, 2)) * &(&c(r, 1) - &c(r, 2));
        let rhs = &c(r, 1).pow(2) - &c(r, 2).pow(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn degree_part_extracts_component() {
        let r = 2;
        let p = &(&c(r, 1).pow(2) + &c(r, 2)) + &c(r, 1);
        assert_eq!(p.degree_part(2), &c(r, 1).pow(2) + &c(r, 2));
        assert_eq!(p.homogeneous_degree(), None);
        assert_eq!(p.degree_part(2).homogeneous_degree(), Some(2));
    }

    #[test]
    fn out_of_range_chern_variables_vanish() {
        assert!(c(3, 4).is_zero());
        assert!(c(3, -1).is_zero());
        assert_eq!(c(3, 0), ChernPoly::one(3));
    }

    #[test]
    fn display_and_json_are_canonical() {
        let p = &c(2, 1).pow(2) - &c(2, 2);
        assert_eq!(p.to_string(), "c1^2 - c2");
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"rank":2,"terms":[[[2,0],"1"],[[0,1],"-1"]]}"#);
        let back: ChernPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        let half = p.scale(&super::super::frac(-1, 2));
        assert_eq!(half.to_string(), "-1/2*c1^2 + 1/2*c2");
    }

    #[test]
    #[should_panic(expected = "different rank")]
    fn rank_mismatch_is_rejected() {
        let _ = &c(2, 1) + &c(3, 1);
    }

    fn small_poly(rank: usize) -> impl Strategy<Value = ChernPoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, rank), -4i64..5), 0..5)
            .prop_map(move |terms| {
                ChernPoly::from_terms(rank, terms.into_iter().map(|(e, k)| (e, rat(k))))
            })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(3), b in small_poly(3), d in small_poly(3)) {
            prop_assert_eq!(&(&a * &b) * &d, &a * &(&b * &d));
            prop_assert_eq!(&a * &(&b + &d), &(&a * &b) + &(&a * &d));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn json_roundtrip(a in small_poly(3)) {
            let json = serde_json::to_string(&a).unwrap();
            let back: ChernPoly = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
