use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{monomial_label, VarietyModel};
use crate::ring::{CommutativeAlgebra, Rational};

/// Element of a model cohomology ring, stored degree by degree.
///
/// Homogeneous classes remember their degree even when they vanish, so that
/// degree bookkeeping (e.g. for integration) survives zero factors.
#[derive(Clone)]
pub struct CohomClass<'a> {
    variety: &'a VarietyModel,
    degree: Option<usize>,
    components: Vec<Vec<Rational>>,
}

impl<'a> CohomClass<'a> {
    pub fn zero(variety: &'a VarietyModel, degree: usize) -> Self {
        CohomClass {
            variety,
            degree: Some(degree),
            components: empty_components(variety),
        }
    }

    pub fn unit(variety: &'a VarietyModel) -> Self {
        Self::homogeneous(variety, 0, vec![Rational::one()])
    }

    /// Class with the given coordinates on `basis(degree)`; zero past the top degree.
    pub fn homogeneous(variety: &'a VarietyModel, degree: usize, coords: Vec<Rational>) -> Self {
        let mut c = Self::zero(variety, degree);
        if degree <= variety.dim() {
            assert_eq!(
                coords.len(),
                variety.basis_size(degree),
                "coordinate length must match the basis in degree {degree}"
            );
            c.components[degree] = coords;
        }
        c
    }

    pub fn variety(&self) -> &'a VarietyModel {
        self.variety
    }

    /// Coordinates in degree `d` (empty past the top degree).
    pub fn coords(&self, d: usize) -> &[Rational] {
        self.components.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().flatten().all(Zero::is_zero)
    }

    /// Degree of a homogeneous class; `None` for classes mixing degrees.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        if self.degree.is_some() {
            return self.degree;
        }
        let mut nonzero = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, v)| v.iter().any(|q| !q.is_zero()))
            .map(|(d, _)| d);
        let first = nonzero.next()?;
        nonzero.next().is_none().then_some(first)
    }

    /// Degree-`d` component as a homogeneous class.
    pub fn component(&self, d: usize) -> CohomClass<'a> {
        match self.components.get(d) {
            Some(v) => Self::homogeneous(self.variety, d, v.clone()),
            None => Self::zero(self.variety, d),
        }
    }

    fn check_same(&self, other: &Self) {
        assert!(
            std::ptr::eq(self.variety, other.variety),
            "classes must live on the same variety"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        let degree = if self.degree == other.degree {
            self.degree
        } else if self.is_zero() {
            other.degree
        } else if other.is_zero() {
            self.degree
        } else {
            None
        };
        CohomClass {
            variety: self.variety,
            degree,
            components,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CohomClass {
            variety: self.variety,
            degree: self.degree,
            components: self
                .components
                .iter()
                .map(|v| v.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let v = self.variety;
        let mut components = empty_components(v);
        for (da, a) in self.components.iter().enumerate() {
            if a.iter().all(Zero::is_zero) {
                continue;
            }
            for (db, b) in other.components.iter().enumerate() {
                if da + db > v.dim() || b.iter().all(Zero::is_zero) {
                    continue;
                }
                let target = &mut components[da + db];
                for (ia, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (ib, y) in b.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        let xy = x * y;
                        let structure = v.basis_product(da, ia, db, ib).expect("in range");
                        for (t, s) in target.iter_mut().zip(structure) {
                            if !s.is_zero() {
                                *t += &xy * s;
                            }
                        }
                    }
                }
            }
        }
        let degree = match (self.degree, other.degree) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        CohomClass {
            variety: v,
            degree,
            components,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::unit(self.variety);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Integral over the variety: the integration functional applied to the top-degree part.
    pub fn integrate(&self) -> Rational {
        let n = self.variety.dim();
        self.components[n]
            .iter()
            .zip(self.variety.integration_vector())
            .map(|(a, b)| a * b)
            .sum()
    }
}

fn empty_components(v: &VarietyModel) -> Vec<Vec<Rational>> {
    (0..=v.dim())
        .map(|d| vec![Rational::zero(); v.basis_size(d)])
        .collect()
}

impl PartialEq for CohomClass<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.variety, other.variety) && self.components == other.components
    }
}

impl CommutativeAlgebra for CohomClass<'_> {
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

impl fmt::Display for CohomClass<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, v) in self.components.iter().enumerate() {
            for (i, q) in v.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                let label = monomial_label(self.variety.generators(), &self.variety.basis(d)[i]);
                let abs = q.abs();
                if first {
                    if q.is_negative() {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, " {} ", if q.is_negative() { '-' } else { '+' })?;
                }
                first = false;
                match (abs.is_one(), label.as_str()) {
                    (_, "1") => write!(f, "{abs}")?,
                    (true, l) => write!(f, "{l}")?,
                    (false, l) => write!(f, "{abs}*{l}")?,
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CohomClass<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CohomClass[{}]({})", self.variety.name(), self)
    }
}
