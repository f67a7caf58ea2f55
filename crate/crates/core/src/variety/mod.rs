//! Finite models of cohomology rings `H^{*,*}(X, Q)` for small projective varieties.
//!
//! A model stores a monomial basis in every degree `0..=n`, exact structure
//! constants for products of basis elements, the integration functional on the
//! top degree and, when known, the extremal rays of the pseudo-effective and
//! nef cones of divisor classes.

mod bundle;
mod catalogue;
mod class;
mod dsl;

pub use bundle::{BundleKind, BundleModel};
pub use catalogue::{parse_variety_name, product, proj_bundle, projective_space};
pub use class::CohomClass;
pub use dsl::{parse_bundle, parse_class_expr};

use std::collections::HashMap;

use num_traits::Zero;

use crate::ring::Rational;
use crate::schur::SchurError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VarietyError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unknown generator `{name}` at position {position}")]
    UnknownGenerator { name: String, position: usize },
    #[error("tangent bundle is only modelled on projective spaces, not on {0}")]
    TangentOffProjectiveSpace(String),
    #[error("line bundle O({given}) needs {expected} degrees on {variety}")]
    MultidegreeLength {
        given: String,
        expected: usize,
        variety: String,
    },
    #[error("unknown variety `{0}` (expected names like P3, P2xP1, P1xP1xP1)")]
    UnknownVariety(String),
    #[error("total degree {got} does not match the dimension {dim}")]
    DegreeMismatch { got: usize, dim: usize },
    #[error("class is not homogeneous")]
    NotHomogeneous,
    #[error("expected a class of degree {expected}, got degree {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("projectivization needs an untwisted bundle")]
    TwistedProjectivization,
    #[error("projectivization needs rank at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("classes live on different varieties")]
    VarietyMismatch,
    #[error(transparent)]
    Schur(#[from] SchurError),
}

/// Geometric origin of a model; decides which bundle constructions make sense.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarietyKind {
    /// `P^n`.
    Projective(usize),
    /// Product of projective spaces with the given dimensions.
    ProductOfProjective(Vec<usize>),
    /// Projectivization of a bundle over a base model.
    ProjectiveBundle { base: String, rank: usize },
    /// Any other tensor product of models.
    Product,
}

/// Extremal ray of a cone of divisor classes, as coordinates on the degree-1 basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ray {
    pub label: String,
    pub coords: Vec<Rational>,
}

#[derive(Debug, Clone)]
pub struct VarietyModel {
    name: String,
    dim: usize,
    kind: VarietyKind,
    generators: Vec<String>,
    /// `basis[d]` lists exponent vectors over the generators.
    basis: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, usize>>,
    /// `table[da][db][ia * basis[db].len() + ib]`, for `da <= db` and `da + db <= dim`.
    table: Vec<Vec<Vec<Vec<Rational>>>>,
    integral: Vec<Rational>,
    pseff_rays: Vec<Ray>,
    nef_rays: Vec<Ray>,
    h11: usize,
}

pub(crate) struct ModelParts {
    pub name: String,
    pub dim: usize,
    pub kind: VarietyKind,
    pub generators: Vec<String>,
    pub basis: Vec<Vec<Vec<u32>>>,
    pub integral: Vec<Rational>,
    pub pseff_rays: Vec<Ray>,
    pub nef_rays: Vec<Ray>,
}

impl VarietyModel {
    /// Assembles a model, filling the multiplication table from `mul`, which
    /// returns coordinates of `basis[da][ia] * basis[db][ib]` in degree `da + db`.
    pub(crate) fn assemble<F>(parts: ModelParts, mul: F) -> Self
    where
        F: Fn(usize, usize, usize, usize) -> Vec<Rational>,
    {
        let ModelParts {
            name,
            dim,
            kind,
            generators,
            basis,
            integral,
            pseff_rays,
            nef_rays,
        } = parts;
        assert_eq!(basis.len(), dim + 1);
        assert_eq!(basis[0].len(), 1, "degree 0 is spanned by the unit");
        assert_eq!(basis[1].len(), generators.len(), "degree 1 is spanned by the generators");
        assert_eq!(integral.len(), basis[dim].len());
        let index = basis
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect())
            .collect();
        let mut table = vec![vec![Vec::new(); dim + 1]; dim + 1];
        for da in 0..=dim {
            for db in da..=dim - da {
                let mut entries = Vec::with_capacity(basis[da].len() * basis[db].len());
                for ia in 0..basis[da].len() {
                    for ib in 0..basis[db].len() {
                        let v = mul(da, ia, db, ib);
                        debug_assert_eq!(v.len(), basis[da + db].len());
                        entries.push(v);
                    }
                }
                table[da][db] = entries;
            }
        }
        let h11 = basis[1].len();
        VarietyModel {
            name,
            dim,
            kind,
            generators,
            basis,
            index,
            table,
            integral,
            pseff_rays,
            nef_rays,
            h11,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &VarietyKind {
        &self.kind
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn basis(&self, degree: usize) -> &[Vec<u32>] {
        self.basis.get(degree).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn basis_size(&self, degree: usize) -> usize {
        self.basis(degree).len()
    }

    pub fn basis_index(&self, degree: usize, exponents: &[u32]) -> Option<usize> {
        self.index.get(degree)?.get(exponents).copied()
    }

    /// Human-readable monomial label, e.g. `f1*f2^2`.
    pub fn basis_label(&self, degree: usize, i: usize) -> String {
        monomial_label(&self.generators, &self.basis[degree][i])
    }

    pub fn integration_vector(&self) -> &[Rational] {
        &self.integral
    }

    pub fn pseff_rays(&self) -> &[Ray] {
        &self.pseff_rays
    }

    pub fn nef_rays(&self) -> &[Ray] {
        &self.nef_rays
    }

    pub fn has_cone_data(&self) -> bool {
        !self.pseff_rays.is_empty()
    }

    pub fn h11(&self) -> usize {
        self.h11
    }

    /// Structure constants of `basis[da][ia] * basis[db][ib]`; `None` past the top degree.
    pub fn basis_product(&self, da: usize, ia: usize, db: usize, ib: usize) -> Option<&[Rational]> {
        if da + db > self.dim {
            return None;
        }
        let (da, ia, db, ib) = if da <= db { (da, ia, db, ib) } else { (db, ib, da, ia) };
        Some(&self.table[da][db][ia * self.basis[db].len() + ib])
    }

    pub fn unit(&self) -> CohomClass<'_> {
        CohomClass::unit(self)
    }

    pub fn generator(&self, i: usize) -> CohomClass<'_> {
        let mut coords = vec![Rational::zero(); self.h11];
        coords[i] = Rational::from_integer(1.into());
        CohomClass::homogeneous(self, 1, coords)
    }

    pub fn ray_class(&self, ray: &Ray) -> CohomClass<'_> {
        CohomClass::homogeneous(self, 1, ray.coords.clone())
    }

    /// Product of generator powers `Π g_i^{e_i}` evaluated through the ring.
    pub fn monomial(&self, exponents: &[u32]) -> CohomClass<'_> {
        let mut acc = self.unit();
        for (i, &e) in exponents.iter().enumerate() {
            for _ in 0..e {
                acc = acc.mul(&self.generator(i));
            }
        }
        acc
    }

    /// Intersection number of a product of homogeneous classes of total degree `n`.
    pub fn evaluate(&self, classes: &[CohomClass<'_>]) -> Result<Rational, VarietyError> {
        let mut total = 0;
        for c in classes {
            if !std::ptr::eq(c.variety(), self) {
                return Err(VarietyError::VarietyMismatch);
            }
            match c.homogeneous_degree() {
                Some(d) => total += d,
                None if c.is_zero() => {}
                None => return Err(VarietyError::NotHomogeneous),
            }
        }
        if total != self.dim {
            return Err(VarietyError::DegreeMismatch {
                got: total,
                dim: self.dim,
            });
        }
        let mut acc = self.unit();
        for c in classes {
            acc = acc.mul(c);
        }
        Ok(acc.integrate())
    }
}

pub(crate) fn monomial_label(generators: &[String], exponents: &[u32]) -> String {
    let parts: Vec<String> = exponents
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                generators[i].clone()
            } else {
                format!("{}^{}", generators[i], e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}
