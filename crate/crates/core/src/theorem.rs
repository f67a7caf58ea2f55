//! Ray-by-ray positivity checks for Schur classes of ample bundles on
//! catalogue varieties, the first-order twist expansion, the Hodge-index
//! form `Q(β, β') = ∫ s_λ^{(1)}(E)·β·β'` and movable/restriction checks.
//!
//! Certification is only as good as the cone data: on the catalogue varieties
//! the pseudo-effective cone is simplicial and rational, so checking its
//! extremal rays is complete. Models without cone data get `not-applicable`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{interpolate, symmetric_signature, Signature};
use crate::ring::{parse_rational, Partition, Rational};
use crate::variety::{BundleModel, CohomClass, Ray, VarietyError, VarietyModel};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("partition {lambda} has weight {weight}, expected {expected}")]
    WrongWeight {
        lambda: Partition,
        weight: u32,
        expected: usize,
    },
    #[error("{what} must be a class of degree 1")]
    NotADivisor { what: &'static str },
    #[error("variety {0} carries no cone data")]
    MissingConeData(String),
    #[error("bundle lives on a different variety")]
    VarietyMismatch,
    #[error(transparent)]
    Variety(#[from] VarietyError),
}

/// Outcome of the extremal-ray criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    StrictlyPositive,
    Fails { ray: String },
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::StrictlyPositive => f.write_str("strictly-positive"),
            Verdict::Fails { ray } => write!(f, "fails({ray})"),
            Verdict::NotApplicable => f.write_str("not-applicable"),
        }
    }
}

impl std::str::FromStr for Verdict {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strictly-positive" => Ok(Verdict::StrictlyPositive),
            "not-applicable" => Ok(Verdict::NotApplicable),
            _ => s
                .strip_prefix("fails(")
                .and_then(|rest| rest.strip_suffix(')'))
                .map(|ray| Verdict::Fails { ray: ray.to_string() })
                .ok_or_else(|| format!("unknown verdict `{s}`")),
        }
    }
}

/// Intersection numbers against labelled rays, in ray order.
pub type Pairings = Vec<(String, Rational)>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ReportJson", try_from = "ReportJson")]
pub struct PositivityReport {
    pub variety: String,
    pub bundle: String,
    pub lambda: Partition,
    pub pairings: Pairings,
    pub verdict: Verdict,
    pub signature: Option<Signature>,
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    variety: String,
    bundle: String,
    lambda: Partition,
    pairings: serde_json::Map<String, serde_json::Value>,
    verdict: String,
    signature: Option<[usize; 3]>,
}

fn pairings_to_json(p: &Pairings) -> serde_json::Map<String, serde_json::Value> {
    p.iter()
        .map(|(k, v)| (k.clone(), serde_json::Value::String(v.to_string())))
        .collect()
}

fn pairings_from_json(m: serde_json::Map<String, serde_json::Value>) -> Result<Pairings, String> {
    m.into_iter()
        .map(|(k, v)| {
            let text = v.as_str().ok_or_else(|| format!("pairing for {k} is not a string"))?;
            let q = parse_rational(text).map_err(|e| e.to_string())?;
            Ok((k, q))
        })
        .collect()
}

impl From<PositivityReport> for ReportJson {
    fn from(r: PositivityReport) -> Self {
        ReportJson {
            variety: r.variety,
            bundle: r.bundle,
            lambda: r.lambda,
            pairings: pairings_to_json(&r.pairings),
            verdict: r.verdict.to_string(),
            signature: r.signature.map(|(a, b, c)| [a, b, c]),
        }
    }
}

impl TryFrom<ReportJson> for PositivityReport {
    type Error = String;

    fn try_from(j: ReportJson) -> Result<Self, String> {
        Ok(PositivityReport {
            variety: j.variety,
            bundle: j.bundle,
            lambda: j.lambda,
            pairings: pairings_from_json(j.pairings)?,
            verdict: j.verdict.parse()?,
            signature: j.signature.map(|[a, b, c]| (a, b, c)),
        })
    }
}

/// Gram matrix of the derived-Schur pairing on a basis of degree-1 classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "HodgeJson", try_from = "HodgeJson")]
pub struct HodgeIndexReport {
    pub basis: Vec<String>,
    pub q: Vec<Vec<Rational>>,
    pub signature: Signature,
}

#[derive(Serialize, Deserialize)]
struct HodgeJson {
    basis: Vec<String>,
    q: Vec<Vec<String>>,
    signature: [usize; 3],
}

impl From<HodgeIndexReport> for HodgeJson {
    fn from(r: HodgeIndexReport) -> Self {
        HodgeJson {
            basis: r.basis,
            q: r
                .q
                .iter()
                .map(|row| row.iter().map(ToString::to_string).collect())
                .collect(),
            signature: [r.signature.0, r.signature.1, r.signature.2],
        }
    }
}

impl TryFrom<HodgeJson> for HodgeIndexReport {
    type Error = String;

    fn try_from(j: HodgeJson) -> Result<Self, String> {
        let q = j
            .q
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| parse_rational(x).map_err(|e| e.to_string()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let [a, b, c] = j.signature;
        Ok(HodgeIndexReport { basis: j.basis, q, signature: (a, b, c) })
    }
}

/// `∫ s_λ(E⟨-tω⟩)·L` as a polynomial in `t`, next to its derived-class prediction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbationReport {
    /// Coefficients of `t^0, t^1, ...` from evaluating the twisted bundle directly.
    pub coefficients: Vec<Rational>,
    /// `(-1)^i ∫ s_λ^{(i)}(E)·ω^i·L` for `i = 0..=|λ|`.
    pub expansion: Vec<Rational>,
    /// `∫ s_λ(E)·L`.
    pub constant: Rational,
    /// `-∫ s_λ^{(1)}(E)·ω·L`.
    pub linear: Rational,
    pub holds: bool,
}

impl PerturbationReport {
    pub fn to_json(&self) -> serde_json::Value {
        let list = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        serde_json::json!({
            "coefficients": list(&self.coefficients),
            "expansion": list(&self.expansion),
            "constant": self.constant.to_string(),
            "linear": self.linear.to_string(),
            "holds": self.holds,
        })
    }
}

/// Pairings of a class with nef or pseudo-effective rays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayCheckReport {
    pub pairings: Pairings,
    pub passes: bool,
}

impl RayCheckReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "pairings": pairings_to_json(&self.pairings),
            "passes": self.passes,
        })
    }
}

fn require_weight(lambda: &Partition, expected: usize) -> Result<(), EngineError> {
    if lambda.weight() as usize != expected {
        return Err(EngineError::WrongWeight {
            lambda: lambda.clone(),
            weight: lambda.weight(),
            expected,
        });
    }
    Ok(())
}

fn require_same_variety(v: &VarietyModel, e: &BundleModel<'_>) -> Result<(), EngineError> {
    if std::ptr::eq(v, e.variety()) {
        Ok(())
    } else {
        Err(EngineError::VarietyMismatch)
    }
}

fn require_divisor(c: &CohomClass<'_>, what: &'static str) -> Result<(), EngineError> {
    if c.is_zero() || c.homogeneous_degree() == Some(1) {
        Ok(())
    } else {
        Err(EngineError::NotADivisor { what })
    }
}

fn pair_with_rays<'a>(class: &CohomClass<'a>, rays: &[Ray]) -> Pairings {
    let v = class.variety();
    rays.iter()
        .map(|ray| (ray.label.clone(), class.mul(&v.ray_class(ray)).integrate()))
        .collect()
}

/// Extremal-ray criterion for `s_λ(E)` with `|λ| = n - 1`.
///
/// The verdict is strictly positive iff the class is nonzero and every
/// pseudo-effective ray pairs positively with it. The Hodge-index signature
/// of the same instance is attached when cone data exists.
pub fn check_theorem_a(
    v: &VarietyModel,
    e: &BundleModel<'_>,
    lambda: &Partition,
) -> Result<PositivityReport, EngineError> {
    require_same_variety(v, e)?;
    require_weight(lambda, v.dim().saturating_sub(1))?;
    let class = e.schur_class(lambda)?;
    let mut report = PositivityReport {
        variety: v.name().to_string(),
        bundle: e.spec().to_string(),
        lambda: lambda.clone(),
        pairings: Vec::new(),
        verdict: Verdict::NotApplicable,
        signature: None,
    };
    if !v.has_cone_data() || class.is_zero() {
        return Ok(report);
    }
    report.pairings = pair_with_rays(&class, v.pseff_rays());
    report.verdict = match report.pairings.iter().find(|(_, x)| !x.is_positive()) {
        Some((ray, _)) => Verdict::Fails { ray: ray.clone() },
        None => Verdict::StrictlyPositive,
    };
    report.signature = Some(hodge_index_matrix(v, e, lambda)?.signature);
    Ok(report)
}

/// `∫ s_λ(E⟨δ + tω⟩)·L` as exact polynomial coefficients in `t`,
/// recovered by interpolation at `t = 0, ..., |λ|`.
pub fn twist_polynomial(
    e: &BundleModel<'_>,
    lambda: &Partition,
    omega: &CohomClass<'_>,
    l: &CohomClass<'_>,
) -> Result<Vec<Rational>, EngineError> {
    let points: Vec<Rational> = (0..=lambda.weight() as i64)
        .map(|t| Rational::from_integer(t.into()))
        .collect();
    let values = points
        .iter()
        .map(|t| {
            let shifted = e.twisted_by(&omega.scale(t))?;
            Ok(shifted.schur_class(lambda)?.mul(l).integrate())
        })
        .collect::<Result<Vec<_>, EngineError>>()?;
    Ok(interpolate(&points, &values))
}

/// Exact check of `s_λ(E⟨-tω⟩)·L = s_λ(E)·L - t s_λ^{(1)}(E)·ω·L + O(t²)`,
/// plus the full higher-order table.
pub fn perturbation_check(
    v: &VarietyModel,
    e: &BundleModel<'_>,
    lambda: &Partition,
    omega: &CohomClass<'_>,
    l: &CohomClass<'_>,
) -> Result<PerturbationReport, EngineError> {
    require_same_variety(v, e)?;
    require_weight(lambda, v.dim().saturating_sub(1))?;
    require_divisor(omega, "omega")?;
    require_divisor(l, "L")?;
    let minus_omega = omega.scale(&-Rational::one());
    let mut coefficients = twist_polynomial(e, lambda, &minus_omega, l)?;
    let derived = e.derived_schur_classes(lambda)?;
    let mut omega_power = v.unit();
    let mut expansion = Vec::with_capacity(derived.len());
    for (i, d) in derived.iter().enumerate() {
        let x = d.mul(&omega_power).mul(l).integrate();
        expansion.push(if i % 2 == 0 { x } else { -x });
        omega_power = omega_power.mul(omega);
    }
    coefficients.resize(expansion.len(), Rational::zero());
    let constant = e.schur_class(lambda)?.mul(l).integrate();
    let linear = match derived.get(1) {
        Some(d) => -d.mul(omega).mul(l).integrate(),
        None => Rational::zero(),
    };
    let holds = coefficients == expansion
        && coefficients[0] == constant
        && coefficients.get(1).cloned().unwrap_or_else(Rational::zero) == linear;
    Ok(PerturbationReport {
        coefficients,
        expansion,
        constant,
        linear,
        holds,
    })
}

/// Degree-1 basis used for the Hodge-index form: pseudo-effective rays when
/// known, the generators otherwise.
fn divisor_basis(v: &VarietyModel) -> Vec<(String, CohomClass<'_>)> {
    if v.has_cone_data() {
        v.pseff_rays()
            .iter()
            .map(|r| (r.label.clone(), v.ray_class(r)))
            .collect()
    } else {
        (0..v.basis_size(1))
            .map(|i| (v.basis_label(1, i), v.generator(i)))
            .collect()
    }
}

/// `Q_ij = ∫ s_λ^{(1)}(E)·ρ_i·ρ_j` with its exact signature.
pub fn hodge_index_matrix(
    v: &VarietyModel,
    e: &BundleModel<'_>,
    lambda: &Partition,
) -> Result<HodgeIndexReport, EngineError> {
    require_same_variety(v, e)?;
    require_weight(lambda, v.dim().saturating_sub(1))?;
    let derived = e.derived_schur_class(lambda, 1)?;
    let basis = divisor_basis(v);
    let q: Vec<Vec<Rational>> = basis
        .iter()
        .map(|(_, a)| {
            let da = derived.mul(a);
            basis.iter().map(|(_, b)| da.mul(b).integrate()).collect()
        })
        .collect();
    let signature = symmetric_signature(&q);
    Ok(HodgeIndexReport {
        basis: basis.into_iter().map(|(label, _)| label).collect(),
        q,
        signature,
    })
}

/// `∫ s_λ(E)·L ≥ 0` for every nef ray `L` (movable = nef on the catalogue).
pub fn movable_nonnegativity_check(
    v: &VarietyModel,
    e: &BundleModel<'_>,
    lambda: &Partition,
) -> Result<RayCheckReport, EngineError> {
    require_same_variety(v, e)?;
    require_weight(lambda, v.dim().saturating_sub(1))?;
    if !v.has_cone_data() {
        return Err(EngineError::MissingConeData(v.name().to_string()));
    }
    let pairings = pair_with_rays(&e.schur_class(lambda)?, v.nef_rays());
    let passes = pairings.iter().all(|(_, x)| !x.is_negative());
    Ok(RayCheckReport { pairings, passes })
}

/// Sum of the nef rays: an ample class on every catalogue variety.
pub fn ample_class(v: &VarietyModel) -> Result<CohomClass<'_>, EngineError> {
    if !v.has_cone_data() {
        return Err(EngineError::MissingConeData(v.name().to_string()));
    }
    Ok(v
        .nef_rays()
        .iter()
        .fold(CohomClass::zero(v, 1), |acc, r| acc.add(&v.ray_class(r))))
}

/// Pairs `s_λ(E)·ω^m` with every pseudo-effective ray, `|λ| + m + 1 = n`.
/// `ω` defaults to [`ample_class`].
pub fn corollary_restriction_check(
    v: &VarietyModel,
    e: &BundleModel<'_>,
    lambda: &Partition,
    m: usize,
    omega: Option<&CohomClass<'_>>,
) -> Result<RayCheckReport, EngineError> {
    require_same_variety(v, e)?;
    if v.dim() < m + 1 {
        return Err(VarietyError::DegreeMismatch { got: lambda.weight() as usize + m + 1, dim: v.dim() }.into());
    }
    require_weight(lambda, v.dim() - m - 1)?;
    if !v.has_cone_data() {
        return Err(EngineError::MissingConeData(v.name().to_string()));
    }
    let omega = match omega {
        Some(w) => {
            require_divisor(w, "omega")?;
            w.clone()
        }
        None => ample_class(v)?,
    };
    let class = e.schur_class(lambda)?.mul(&omega.pow(m as u32));
    let pairings = pair_with_rays(&class, v.pseff_rays());
    let passes = pairings.iter().all(|(_, x)| x.is_positive());
    Ok(RayCheckReport { pairings, passes })
}

/// An `ε₀ > 0` such that `E⟨δ + εω⟩` keeps every ray pairing of `s_λ` positive
/// for `0 < ε < ε₀`.
///
/// With `p_ρ(t) = ∫ s_λ(E⟨δ + tω⟩)·ρ`, the margin is `p_ρ(0)` and the
/// sensitivity is `Σ_{i ≥ 1} |[t^i] p_ρ|`; for `t ≤ 1` the pairing moves by at
/// most `t` times the sensitivity. `None` unless the verdict is strictly positive.
pub fn stable_twist_bound(
    v: &VarietyModel,
    e: &BundleModel<'_>,
    lambda: &Partition,
    omega: &CohomClass<'_>,
) -> Result<Option<Rational>, EngineError> {
    require_divisor(omega, "omega")?;
    if check_theorem_a(v, e, lambda)?.verdict != Verdict::StrictlyPositive {
        return Ok(None);
    }
    let mut bound = Rational::one();
    for ray in v.pseff_rays() {
        let p = twist_polynomial(e, lambda, omega, &v.ray_class(ray))?;
        let sensitivity: Rational = p.iter().skip(1).map(|c| c.abs()).sum();
        if sensitivity.is_positive() {
            let candidate = &p[0] / &sensitivity;
            if candidate < bound {
                bound = candidate;
            }
        }
    }
    Ok(Some(bound))
}

/// DSL specs of all split bundles of rank `1..=max_rank` whose summands have
/// every multidegree entry in `degrees`, one spec per multiset of summands.
pub fn split_bundle_specs(v: &VarietyModel, max_rank: usize, degrees: &[i64]) -> Vec<String> {
    let m = v.generators().len();
    let mut line_bundles: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..m {
        line_bundles = line_bundles
            .into_iter()
            .flat_map(|prefix| {
                degrees.iter().map(move |&d| {
                    let mut next = prefix.clone();
                    next.push(d);
                    next
                })
            })
            .collect();
    }
    let labels: Vec<String> = line_bundles
        .iter()
        .map(|a| {
            let inner: Vec<String> = a.iter().map(i64::to_string).collect();
            format!("O({})", inner.join(","))
        })
        .collect();
    let mut out = Vec::new();
    let mut choice: Vec<usize> = Vec::new();
    fn extend(labels: &[String], max_rank: usize, start: usize, choice: &mut Vec<usize>, out: &mut Vec<String>) {
        if !choice.is_empty() {
            out.push(choice.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join("+"));
        }
        if choice.len() == max_rank {
            return;
        }
        for i in start..labels.len() {
            choice.push(i);
            extend(labels, max_rank, i, choice, out);
            choice.pop();
        }
    }
    extend(&labels, max_rank, 0, &mut choice, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{frac, rat};
    use crate::variety::{parse_bundle, parse_variety_name, projective_space};

    fn part(p: &[u32]) -> Partition {
        Partition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn ample_examples_are_strictly_positive() {
        let p3 = projective_space(3);
        let e = parse_bundle("O(1)+O(1)+O(1)", &p3).unwrap();
        let r = check_theorem_a(&p3, &e, &part(&[1, 1])).unwrap();
        assert_eq!(r.pairings, vec![("H".to_string(), rat(6))]);
        assert_eq!(r.verdict, Verdict::StrictlyPositive);
        assert_eq!(r.signature, Some((1, 0, 0)));

        let cube = parse_variety_name("P1xP1xP1").unwrap();
        let e = parse_bundle("O(1,1,1)+O(1,1,1)", &cube).unwrap();
        let r = check_theorem_a(&cube, &e, &part(&[1, 1])).unwrap();
        assert!(r.pairings.iter().all(|(_, x)| *x == rat(6)));
        assert_eq!(r.pairings.len(), 3);
        assert_eq!(r.verdict, Verdict::StrictlyPositive);
    }

    #[test]
    fn non_ample_bundle_fails() {
        let p3 = projective_space(3);
        let e = parse_bundle("O(1)+O(-1)", &p3).unwrap();
        let r = check_theorem_a(&p3, &e, &part(&[2])).unwrap();
        assert_eq!(r.pairings, vec![("H".to_string(), rat(-1))]);
        assert_eq!(r.verdict, Verdict::Fails { ray: "H".into() });
        assert_eq!(r.verdict.to_string(), "fails(H)");
    }

    #[test]
    fn zero_class_and_wrong_weight() {
        let p3 = projective_space(3);
        let e = parse_bundle("O(1)+O(0)", &p3).unwrap();
        let r = check_theorem_a(&p3, &e, &part(&[2])).unwrap();
        assert_eq!(r.verdict, Verdict::NotApplicable);
        assert!(matches!(
            check_theorem_a(&p3, &e, &part(&[1])),
            Err(EngineError::WrongWeight { .. })
        ));
    }

    #[test]
    fn models_without_cone_data_are_not_applicable() {
        let p1 = projective_space(1);
        let e = parse_bundle("O(0)+O(1)", &p1).unwrap();
        let x = crate::variety::proj_bundle(&p1, &e).unwrap();
        let triv = crate::variety::BundleModel::from_summands(
            &x,
            "O+O",
            vec![crate::variety::BundleKind::Line(vec![1, 0]); 2],
        )
        .unwrap();
        let r = check_theorem_a(&x, &triv, &part(&[1])).unwrap();
        assert_eq!(r.verdict, Verdict::NotApplicable);
        assert!(movable_nonnegativity_check(&x, &triv, &part(&[1])).is_err());
    }

    #[test]
    fn report_json_roundtrip() {
        let p3 = projective_space(3);
        let e = parse_bundle("O(1)+O(-1)", &p3).unwrap();
        let r = check_theorem_a(&p3, &e, &part(&[2])).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"variety":"P3","bundle":"O(1)+O(-1)","lambda":[2],"pairings":{"H":"-1"},"verdict":"fails(H)","signature":[0,1,0]}"#
        );
        let back: PositivityReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn perturbation_examples() {
        let p3 = projective_space(3);
        let h = p3.generator(0);
        let e = parse_bundle("O(1)+O(1)+O(1)", &p3).unwrap();
        let r = perturbation_check(&p3, &e, &part(&[1, 1]), &h, &h).unwrap();
        assert!(r.holds);
        assert_eq!(r.constant, rat(6));
        assert_eq!(r.linear, rat(-12));
        assert_eq!(r.coefficients[0], rat(6));
        assert_eq!(r.coefficients[1], rat(-12));

        let e = parse_bundle("O(2)+T<1/3*H>", &p3).unwrap();
        let r = perturbation_check(&p3, &e, &part(&[2]), &h.scale(&frac(1, 2)), &h).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn hodge_index_examples() {
        let quadric = parse_variety_name("P1xP1").unwrap();
        for spec in ["O(1,1)", "O(1,2)+O(3,1)", "O(1,1)+O(1,1)+O(2,1)"] {
            let e = parse_bundle(spec, &quadric).unwrap();
            let r = hodge_index_matrix(&quadric, &e, &part(&[1])).unwrap();
            let k = rat(e.rank() as i64);
            assert_eq!(r.q, vec![vec![rat(0), k.clone()], vec![k, rat(0)]]);
            assert_eq!(r.signature, (1, 0, 1));
        }
        let cube = parse_variety_name("P1xP1xP1").unwrap();
        let e = parse_bundle("O(1,1,1)+O(1,1,1)", &cube).unwrap();
        let r = hodge_index_matrix(&cube, &e, &part(&[2])).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(r.q[i][j], if i == j { rat(0) } else { rat(2) });
            }
        }
        assert_eq!(r.signature, (1, 0, 2));
        let json = serde_json::to_value(&r).unwrap();
        let back: HodgeIndexReport = serde_json::from_value(json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn movable_examples() {
        let p3 = projective_space(3);
        let e = parse_bundle("O(1)+O(0)", &p3).unwrap();
        let r = movable_nonnegativity_check(&p3, &e, &part(&[2])).unwrap();
        assert_eq!(r.pairings, vec![("H".to_string(), rat(0))]);
        assert!(r.passes);
        let e = parse_bundle("O(1)+O(1)+O(1)", &p3).unwrap();
        let r = movable_nonnegativity_check(&p3, &e, &part(&[2])).unwrap();
        assert_eq!(r.pairings[0].1, rat(3));
        let quadric = parse_variety_name("P1xP1").unwrap();
        let e = parse_bundle("O(0,0)+O(2,0)", &quadric).unwrap();
        let r = movable_nonnegativity_check(&quadric, &e, &part(&[1])).unwrap();
        assert_eq!(r.pairings, vec![("f1".to_string(), rat(0)), ("f2".to_string(), rat(2))]);
        assert!(r.passes);
    }

    #[test]
    fn corollary_examples() {
        let p3 = projective_space(3);
        let e = parse_bundle("O(1)+O(1)+O(1)", &p3).unwrap();
        let r = corollary_restriction_check(&p3, &e, &part(&[1]), 1, None).unwrap();
        assert_eq!(r.pairings[0].1, rat(3));
        assert!(r.passes);
        let cube = parse_variety_name("P1xP1xP1").unwrap();
        let e = parse_bundle("O(1,1,1)+O(1,1,1)", &cube).unwrap();
        let r = corollary_restriction_check(&cube, &e, &part(&[1]), 1, None).unwrap();
        assert!(r.pairings.iter().all(|(_, x)| *x == rat(4)));
        let e = parse_bundle("O(1)+O(-1)", &p3).unwrap();
        let r = corollary_restriction_check(&p3, &e, &part(&[2]), 0, None).unwrap();
        assert!(!r.passes);
        assert!(corollary_restriction_check(&p3, &e, &part(&[2]), 1, None).is_err());
    }

    #[test]
    fn stable_twist_bound_keeps_positivity() {
        let p2 = projective_space(2);
        let h = p2.generator(0);
        let e = parse_bundle("O(1)+O(2)", &p2).unwrap();
        let minus_h = h.scale(&rat(-1));
        let bound = stable_twist_bound(&p2, &e, &part(&[1]), &minus_h).unwrap().unwrap();
        assert!(bound.is_positive());
        let nudged = e.twisted_by(&minus_h.scale(&(&bound / rat(2)))).unwrap();
        assert_eq!(check_theorem_a(&p2, &nudged, &part(&[1])).unwrap().verdict, Verdict::StrictlyPositive);
    }

    #[test]
    fn instance_grid_counts() {
        let p3 = projective_space(3);
        let specs = split_bundle_specs(&p3, 4, &[1, 2]);
        // multisets of size 1..=4 from two line bundles
        assert_eq!(specs.len(), 2 + 3 + 4 + 5);
        assert!(specs.contains(&"O(1)+O(2)+O(2)".to_string()));
        let quadric = parse_variety_name("P1xP1").unwrap();
        assert_eq!(split_bundle_specs(&quadric, 2, &[1, 2]).len(), 4 + 10);
    }
}
