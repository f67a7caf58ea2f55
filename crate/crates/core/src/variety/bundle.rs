use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{CohomClass, VarietyError, VarietyKind, VarietyModel};
use crate::ring::{Partition, Rational};
use crate::schur::{derived_schur, schur_poly, twisted_chern, twisted_schur};

/// Direct summand of a bundle built from the DSL.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BundleKind {
    /// Line bundle `O(a_1, ..., a_m)`, one degree per generator.
    Line(Vec<i64>),
    /// Tangent bundle of `P^n`.
    Tangent,
}

/// Possibly twisted bundle `E⟨δ⟩` on a model variety.
///
/// The untwisted Chern classes are stored; the twist is folded in only when
/// Chern or Schur classes are requested.
#[derive(Debug, Clone)]
pub struct BundleModel<'a> {
    variety: &'a VarietyModel,
    spec: String,
    rank: usize,
    chern: Vec<CohomClass<'a>>,
    twist: CohomClass<'a>,
    summands: Option<Vec<BundleKind>>,
}

impl<'a> BundleModel<'a> {
    /// Bundle given only by rank and total Chern class `[c_0 = 1, c_1, ..., c_r]`.
    pub fn from_chern_classes(
        variety: &'a VarietyModel,
        spec: impl Into<String>,
        chern: Vec<CohomClass<'a>>,
    ) -> Result<Self, VarietyError> {
        let rank = chern.len().saturating_sub(1);
        for (k, c) in chern.iter().enumerate() {
            if !c.is_zero() && c.homogeneous_degree() != Some(k) {
                return Err(VarietyError::WrongDegree {
                    expected: k,
                    got: c.homogeneous_degree().unwrap_or(usize::MAX),
                });
            }
        }
        if chern.first().map(|c| *c != variety.unit()).unwrap_or(true) {
            return Err(VarietyError::WrongDegree { expected: 0, got: usize::MAX });
        }
        Ok(BundleModel {
            variety,
            spec: spec.into(),
            rank,
            chern,
            twist: CohomClass::zero(variety, 1),
            summands: None,
        })
    }

    /// Direct sum of the given summands, via the Whitney product formula.
    pub fn from_summands(
        variety: &'a VarietyModel,
        spec: impl Into<String>,
        summands: Vec<BundleKind>,
    ) -> Result<Self, VarietyError> {
        let n = variety.dim();
        let mut total = vec![variety.unit()];
        for s in &summands {
            let factor: Vec<CohomClass<'a>> = match s {
                BundleKind::Line(degrees) => {
                    if degrees.len() != variety.generators().len() {
                        return Err(VarietyError::MultidegreeLength {
                            given: degrees.iter().map(i64::to_string).collect::<Vec<_>>().join(","),
                            expected: variety.generators().len(),
                            variety: variety.name().to_string(),
                        });
                    }
                    let coords = degrees.iter().map(|&a| Rational::from_integer(a.into())).collect();
                    vec![variety.unit(), CohomClass::homogeneous(variety, 1, coords)]
                }
                BundleKind::Tangent => {
                    if !matches!(variety.kind(), VarietyKind::Projective(_)) {
                        return Err(VarietyError::TangentOffProjectiveSpace(
                            variety.name().to_string(),
                        ));
                    }
                    // c(T_{P^n}) = (1 + H)^{n+1} truncated at degree n
                    let h = variety.generator(0);
                    (0..=n)
                        .map(|k| {
                            let b = crate::ring::binomial(n as i64 + 1, k as i64);
                            h.pow(k as u32).scale(&Rational::from_integer(b))
                        })
                        .collect()
                }
            };
            total = whitney_product(variety, &total, &factor);
        }
        let rank = total.len() - 1;
        Ok(BundleModel {
            variety,
            spec: spec.into(),
            rank,
            chern: total,
            twist: CohomClass::zero(variety, 1),
            summands: Some(summands),
        })
    }

    /// Same bundle with its twist replaced by `delta` (a degree-1 class).
    pub fn with_twist(&self, delta: CohomClass<'a>) -> Result<Self, VarietyError> {
        if !delta.is_zero() && delta.homogeneous_degree() != Some(1) {
            return Err(VarietyError::WrongDegree {
                expected: 1,
                got: delta.homogeneous_degree().unwrap_or(usize::MAX),
            });
        }
        let mut out = self.clone();
        out.twist = delta;
        Ok(out)
    }

    /// `E⟨δ⟩⟨ε⟩ = E⟨δ + ε⟩`.
    pub fn twisted_by(&self, epsilon: &CohomClass<'a>) -> Result<Self, VarietyError> {
        self.with_twist(self.twist.add(epsilon))
    }

    pub fn variety(&self) -> &'a VarietyModel {
        self.variety
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn twist(&self) -> &CohomClass<'a> {
        &self.twist
    }

    pub fn summands(&self) -> Option<&[BundleKind]> {
        self.summands.as_deref()
    }

    /// `c_k(E)` ignoring the twist; zero outside `[0, r]`.
    pub fn untwisted_chern(&self, k: usize) -> CohomClass<'a> {
        self.chern
            .get(k)
            .cloned()
            .unwrap_or_else(|| CohomClass::zero(self.variety, k))
    }

    /// `c_k(E⟨δ⟩)`, zero for `k` outside `[0, r]`.
    pub fn chern_class(&self, k: i64) -> CohomClass<'a> {
        if k < 0 || k as usize > self.rank {
            return CohomClass::zero(self.variety, k.max(0) as usize);
        }
        if self.twist.is_zero() {
            return self.chern[k as usize].clone();
        }
        let base: Vec<CohomClass<'a>> = self.chern[1..].to_vec();
        let c = twisted_chern(k, self.rank).evaluate(&self.variety.unit(), &base, &self.twist);
        c.component(k as usize)
    }

    /// `[c_1, ..., c_r]` of the twisted bundle.
    pub fn chern_classes(&self) -> Vec<CohomClass<'a>> {
        (1..=self.rank as i64).map(|k| self.chern_class(k)).collect()
    }

    pub fn schur_class(&self, lambda: &Partition) -> Result<CohomClass<'a>, VarietyError> {
        let p = schur_poly(lambda, self.rank)?;
        let c = p.evaluate(&self.variety.unit(), &self.chern_classes());
        Ok(c.component(lambda.weight() as usize))
    }

    pub fn derived_schur_class(
        &self,
        lambda: &Partition,
        i: u32,
    ) -> Result<CohomClass<'a>, VarietyError> {
        if i > lambda.weight() {
            return Ok(CohomClass::zero(self.variety, 0));
        }
        let p = derived_schur(lambda, i, self.rank)?;
        let c = p.evaluate(&self.variety.unit(), &self.chern_classes());
        Ok(c.component((lambda.weight() - i) as usize))
    }

    /// `[s_λ^{(0)}(E), ..., s_λ^{(|λ|)}(E)]`, sharing one twisted Jacobi–Trudi expansion.
    pub fn derived_schur_classes(&self, lambda: &Partition) -> Result<Vec<CohomClass<'a>>, VarietyError> {
        let series = twisted_schur(lambda, self.rank)?;
        let chern = self.chern_classes();
        let unit = self.variety.unit();
        Ok((0..=lambda.weight())
            .map(|i| {
                series
                    .coefficient(i)
                    .evaluate(&unit, &chern)
                    .component((lambda.weight() - i) as usize)
            })
            .collect())
    }

    /// Ampleness test for bundles assembled from line bundles and `T_{P^n}`.
    ///
    /// On products of projective spaces, `O(a)⟨δ⟩` is ample iff every entry of
    /// `a + δ` is positive; `T_{P^n}⟨qH⟩ = T(-1)⟨(q+1)H⟩` is ample iff `q > -1`.
    /// A direct sum is ample iff every summand is. `None` when undecidable here.
    pub fn is_ample(&self) -> Option<bool> {
        self.summand_test(|x| x.is_positive())
    }

    /// Nef analogue of [`BundleModel::is_ample`] (nonnegative instead of positive).
    pub fn is_nef(&self) -> Option<bool> {
        self.summand_test(|x| !x.is_negative())
    }

    fn summand_test(&self, ok: impl Fn(&Rational) -> bool) -> Option<bool> {
        if !matches!(
            self.variety.kind(),
            VarietyKind::Projective(_) | VarietyKind::ProductOfProjective(_)
        ) {
            return None;
        }
        let summands = self.summands.as_ref()?;
        let q = self.twist.coords(1);
        Some(summands.iter().all(|s| match s {
            BundleKind::Line(a) => a
                .iter()
                .zip(q)
                .all(|(&ai, qi)| ok(&(Rational::from_integer(BigInt::from(ai)) + qi))),
            BundleKind::Tangent => ok(&(&q[0] + Rational::one())),
        }))
    }
}

fn whitney_product<'a>(
    v: &'a VarietyModel,
    a: &[CohomClass<'a>],
    b: &[CohomClass<'a>],
) -> Vec<CohomClass<'a>> {
    let len = a.len() + b.len() - 1;
    let mut out: Vec<CohomClass<'a>> = (0..len).map(|k| CohomClass::zero(v, k)).collect();
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    // keep nominal degrees even for classes that vanish past the top degree
    out.into_iter()
        .enumerate()
        .map(|(k, c)| if c.is_zero() { CohomClass::zero(v, k) } else { c })
        .collect()
}

impl PartialEq for BundleModel<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.variety, other.variety)
            && self.rank == other.rank
            && self.chern == other.chern
            && self.twist == other.twist
    }
}

