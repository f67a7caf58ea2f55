use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ChernPoly, CommutativeAlgebra, Rational};

/// Polynomial in a formal degree-one twist variable `δ` with [`ChernPoly`] coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistSeries {
    rank: usize,
    #[serde(with = "coeff_list")]
    coefficients: BTreeMap<u32, ChernPoly>,
}

impl TwistSeries {
    pub fn zero(rank: usize) -> Self {
        TwistSeries {
            rank,
            coefficients: BTreeMap::new(),
        }
    }

    /// The series with only a `δ^0` term.
    pub fn constant(p: ChernPoly) -> Self {
        let mut s = Self::zero(p.rank());
        s.add_coefficient(0, &p);
        s
    }

    /// `c · δ^power` for a rational `c`.
    pub fn delta_power(rank: usize, power: u32, c: Rational) -> Self {
        let mut s = Self::zero(rank);
        s.add_coefficient(power, &ChernPoly::constant(rank, c));
        s
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Coefficient of `δ^i`.
    pub fn coefficient(&self, i: u32) -> ChernPoly {
        self.coefficients
            .get(&i)
            .cloned()
            .unwrap_or_else(|| ChernPoly::zero(self.rank))
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (u32, &ChernPoly)> {
        self.coefficients.iter().map(|(&i, p)| (i, p))
    }

    pub fn max_delta_power(&self) -> Option<u32> {
        self.coefficients.keys().next_back().copied()
    }

    pub fn add_coefficient(&mut self, i: u32, p: &ChernPoly) {
        assert_eq!(p.rank(), self.rank, "twist series rank mismatch");
        let updated = &self.coefficient(i) + p;
        if updated.is_zero() {
            self.coefficients.remove(&i);
        } else {
            self.coefficients.insert(i, updated);
        }
    }

    /// Sets `δ = 0`.
    pub fn at_zero_twist(&self) -> ChernPoly {
        self.coefficient(0)
    }

    /// Substitutes a rational value for `δ`.
    pub fn at_delta(&self, delta: &Rational) -> ChernPoly {
        let mut acc = ChernPoly::zero(self.rank);
        let mut power = Rational::from_integer(1.into());
        let mut last = 0;
        for (&i, p) in &self.coefficients {
            while last < i {
                power *= delta;
                last += 1;
            }
            acc = &acc + &p.scale(&power);
        }
        acc
    }

    /// Evaluates in `A`, with `chern[i - 1]` for `c_i` and `delta` for `δ`.
    pub fn evaluate<A: CommutativeAlgebra>(&self, one: &A, chern: &[A], delta: &A) -> A {
        let mut acc = one.scaled(&Rational::from_integer(0.into()));
        let mut power = one.clone();
        let mut last = 0;
        for (&i, p) in &self.coefficients {
            while last < i {
                power = power.times(delta);
                last += 1;
            }
            acc = acc.plus(&p.evaluate(one, chern).times(&power));
        }
        acc
    }
}

impl CommutativeAlgebra for TwistSeries {
    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&i, p) in &rhs.coefficients {
            out.add_coefficient(i, p);
        }
        out
    }

    fn times(&self, rhs: &Self) -> Self {
        let mut out = TwistSeries::zero(self.rank);
        for (&i, a) in &self.coefficients {
            for (&j, b) in &rhs.coefficients {
                out.add_coefficient(i + j, &(a * b));
            }
        }
        out
    }

    fn scaled(&self, c: &Rational) -> Self {
        let mut out = TwistSeries::zero(self.rank);
        for (&i, p) in &self.coefficients {
            out.add_coefficient(i, &p.scale(c));
        }
        out
    }

    fn vanishes(&self) -> bool {
        self.coefficients.is_empty()
    }
}

impl fmt::Display for TwistSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coefficients
            .iter()
            .map(|(&i, p)| match i {
                0 => format!("({p})"),
                1 => format!("({p})*d"),
                _ => format!("({p})*d^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

mod coeff_list {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::ring::ChernPoly;

    pub fn serialize<S: Serializer>(m: &BTreeMap<u32, ChernPoly>, s: S) -> Result<S::Ok, S::Error> {
        m.iter().collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<u32, ChernPoly>, D::Error> {
        let v: Vec<(u32, ChernPoly)> = Vec::deserialize(d)?;
        Ok(v.into_iter().filter(|(_, p)| !p.is_zero()).collect())
    }
}
