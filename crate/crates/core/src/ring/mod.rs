//! Exact arithmetic in the weighted-graded ring `Q[c_1, ..., c_r]`.
//!
//! The Chern variable `c_i` carries weight `i`. A second formal variable
//! (the twist `δ`, of weight one) is handled by [`TwistSeries`], a polynomial
//! in `δ` whose coefficients are [`ChernPoly`] values.

mod partition;
mod poly;
mod twist;

pub use partition::Partition;
pub use poly::{ChernMonomial, ChernPoly};
pub use twist::TwistSeries;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Exact rational number, always normalized with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Operations needed to substitute values into a polynomial.
///
/// Implemented by everything a Chern polynomial gets evaluated in: plain
/// rationals, cohomology classes, constant-coefficient forms and twist series.
/// Multiplication must be commutative on the values that are substituted.
pub trait CommutativeAlgebra: Clone {
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn scaled(&self, c: &Rational) -> Self;
    fn vanishes(&self) -> bool;
}

impl CommutativeAlgebra for Rational {
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scaled(&self, c: &Rational) -> Self {
        self * c
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Binomial coefficient `C(n, k)`, zero when `k < 0` or `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational `{0}`")]
pub struct ParseRationalError(pub String);

/// Parses `"p"` or `"p/q"` (surrounding whitespace allowed, `q != 0`).
/// The unicode minus sign is accepted as well as `-`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let cleaned = s.trim().replace('\u{2212}', "-");
    let err = || ParseRationalError(s.to_string());
    let (num, den) = match cleaned.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (cleaned.as_str(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Exact conversion of a finite `f64` into a rational (every finite double is dyadic).
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter writing a rational as the string `"p/q"` (or `"p"`).
pub mod rational_string {
    use super::{parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(q)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 0), BigInt::from(1));
        assert_eq!(binomial(2, 3), BigInt::zero());
        assert_eq!(binomial(4, -1), BigInt::zero());
        assert_eq!(binomial(30, 15), BigInt::from(155_117_520u64));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-1/2").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational(" 4/8 ").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("\u{2212}3").unwrap(), rat(-3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn dyadic_conversion_is_exact() {
        assert_eq!(rational_from_f64(0.375).unwrap(), frac(3, 8));
        assert!(rational_from_f64(f64::NAN).is_none());
    }
}
