use num_traits::{One, Zero};

use super::{
    BundleModel, CohomClass, ModelParts, Ray, VarietyError, VarietyKind, VarietyModel,
};
use crate::ring::Rational;

/// `P^n` with hyperplane class `H`: basis `H^k`, `∫ H^n = 1`, both cones spanned by `H`.
pub fn projective_space(n: usize) -> VarietyModel {
    assert!(n >= 1, "projective space needs dimension at least 1");
    let basis = (0..=n).map(|k| vec![vec![k as u32]]).collect();
    let ray = Ray {
        label: "H".to_string(),
        coords: vec![Rational::one()],
    };
    VarietyModel::assemble(
        ModelParts {
            name: format!("P{n}"),
            dim: n,
            kind: VarietyKind::Projective(n),
            generators: vec!["H".to_string()],
            basis,
            integral: vec![Rational::one()],
            pseff_rays: vec![ray.clone()],
            nef_rays: vec![ray],
        },
        |_, _, _, _| vec![Rational::one()],
    )
}

fn projective_dims(kind: &VarietyKind) -> Option<Vec<usize>> {
    match kind {
        VarietyKind::Projective(n) => Some(vec![*n]),
        VarietyKind::ProductOfProjective(d) => Some(d.clone()),
        _ => None,
    }
}

/// Tensor product of two models. Generators are renamed `f1, f2, ...` in order.
///
/// Cone data is the pullback of the factors' rays, and is only populated when
/// both factors are (products of) projective spaces, where that is correct.
pub fn product(v: &VarietyModel, w: &VarietyModel) -> VarietyModel {
    let dim = v.dim() + w.dim();
    let mut basis: Vec<Vec<Vec<u32>>> = Vec::with_capacity(dim + 1);
    for total in 0..=dim {
        let mut level = Vec::new();
        let lo = total.saturating_sub(w.dim());
        for dv in (lo..=total.min(v.dim())).rev() {
            for a in v.basis(dv) {
                for b in w.basis(total - dv) {
                    let mut e = a.clone();
                    e.extend_from_slice(b);
                    level.push(e);
                }
            }
        }
        basis.push(level);
    }
    let nv = v.generators().len();
    let split = |e: &[u32]| -> (usize, usize, usize, usize) {
        let (a, b) = e.split_at(nv);
        let da = degree_in(v, a);
        let db = degree_in(w, b);
        (
            da,
            v.basis_index(da, a).expect("factor basis element"),
            db,
            w.basis_index(db, b).expect("factor basis element"),
        )
    };

    let generators: Vec<String> = (1..=nv + w.generators().len())
        .map(|i| format!("f{i}"))
        .collect();

    let mut integral = Vec::new();
    for e in &basis[dim] {
        let (_, ia, _, ib) = split(e);
        integral.push(&v.integration_vector()[ia] * &w.integration_vector()[ib]);
    }

    let kind = match (projective_dims(v.kind()), projective_dims(w.kind())) {
        (Some(mut a), Some(b)) => {
            a.extend(b);
            VarietyKind::ProductOfProjective(a)
        }
        _ => VarietyKind::Product,
    };
    let cones_valid = matches!(kind, VarietyKind::ProductOfProjective(_));
    let h11 = basis[1].len();
    let pull = |rays_v: &[Ray], rays_w: &[Ray]| -> Vec<Ray> {
        if !cones_valid {
            return Vec::new();
        }
        let mut out = Vec::new();
        for r in rays_v {
            let mut c = r.coords.clone();
            c.resize(h11, Rational::zero());
            out.push(Ray { label: String::new(), coords: c });
        }
        for r in rays_w {
            let mut c = vec![Rational::zero(); nv];
            c.extend(r.coords.iter().cloned());
            out.push(Ray { label: String::new(), coords: c });
        }
        out
    };
    let pseff = pull(v.pseff_rays(), w.pseff_rays());
    let nef = pull(v.nef_rays(), w.nef_rays());

    let basis_for_mul = basis.clone();
    let mut model = VarietyModel::assemble(
        ModelParts {
            name: format!("{}x{}", v.name(), w.name()),
            dim,
            kind,
            generators,
            basis,
            integral,
            pseff_rays: pseff,
            nef_rays: nef,
        },
        |da, ia, db, ib| {
            let (va, iva, wa, iwa) = split(&basis_for_mul[da][ia]);
            let (vb, ivb, wb, iwb) = split(&basis_for_mul[db][ib]);
            let target = &basis_for_mul[da + db];
            let mut out = vec![Rational::zero(); target.len()];
            let (Some(x), Some(y)) = (v.basis_product(va, iva, vb, ivb), w.basis_product(wa, iwa, wb, iwb))
            else {
                return out;
            };
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for (j, yj) in y.iter().enumerate() {
                    if yj.is_zero() {
                        continue;
                    }
                    let mut e = v.basis(va + vb)[i].clone();
                    e.extend_from_slice(&w.basis(wa + wb)[j]);
                    let pos = target.iter().position(|t| *t == e).expect("product basis element");
                    out[pos] += xi * yj;
                }
            }
            out
        },
    );
    model.label_rays();
    model
}

fn degree_in(v: &VarietyModel, exponents: &[u32]) -> usize {
    (0..=v.dim())
        .find(|&d| v.basis_index(d, exponents).is_some())
        .expect("exponent vector is a basis element of the factor")
}

/// Projective bundle of lines `P(E) → V` with `ξ = c_1(O_{P(E)}(1))`.
///
/// The ring is `H^*(V)[ξ] / (ξ^r + c_1 ξ^{r-1} + ... + c_r)` and integration is
/// normalized by `∫ ξ^{r-1} · π^*(point) = 1`. Consequently
/// `∫ ξ^{r-1+k} · π^*β = ∫_V [c(E)^{-1}]_k · β`, which is the Segre polynomial
/// of degree `k` evaluated on the dual bundle. Cone data is left empty.
pub fn proj_bundle(v: &VarietyModel, e: &BundleModel<'_>) -> Result<VarietyModel, VarietyError> {
    if !std::ptr::eq(e.variety(), v) {
        return Err(VarietyError::VarietyMismatch);
    }
    if !e.twist().is_zero() {
        return Err(VarietyError::TwistedProjectivization);
    }
    let r = e.rank();
    if r < 2 {
        return Err(VarietyError::RankTooSmall(r));
    }
    let nv = v.dim();
    let dim = nv + r - 1;
    let chern: Vec<CohomClass<'_>> = (0..=r).map(|k| e.untwisted_chern(k)).collect();

    // xi_powers[m][j]: coefficient of ξ^j (j < r) in ξ^m, a class of degree m - j on V.
    let max_power = 2 * (r - 1);
    let mut xi_powers: Vec<Vec<CohomClass<'_>>> = Vec::with_capacity(max_power + 1);
    for m in 0..=max_power {
        let row = if m < r {
            (0..r)
                .map(|j| {
                    if j == m {
                        v.unit()
                    } else {
                        CohomClass::zero(v, m.saturating_sub(j))
                    }
                })
                .collect()
        } else {
            let prev = &xi_powers[m - 1];
            let mut row: Vec<CohomClass<'_>> =
                (0..r).map(|j| CohomClass::zero(v, m.saturating_sub(j))).collect();
            for j in 0..r - 1 {
                row[j + 1] = row[j + 1].add(&prev[j]);
            }
            let top = &prev[r - 1];
            for i in 1..=r {
                row[r - i] = row[r - i].sub(&chern[i].mul(top));
            }
            row
        };
        xi_powers.push(row);
    }

    let nbase = v.generators().len();
    let mut basis: Vec<Vec<Vec<u32>>> = Vec::with_capacity(dim + 1);
    for total in 0..=dim {
        let mut level = Vec::new();
        for j in 0..r {
            if j > total || total - j > nv {
                continue;
            }
            for b in v.basis(total - j) {
                let mut ex = b.clone();
                ex.push(j as u32);
                level.push(ex);
            }
        }
        basis.push(level);
    }
    let integral = basis[dim]
        .iter()
        .map(|ex| {
            let i = v.basis_index(nv, &ex[..nbase]).expect("top class of the base");
            v.integration_vector()[i].clone()
        })
        .collect();

    let mut generators = v.generators().to_vec();
    generators.push("xi".to_string());
    let basis_for_mul = basis.clone();
    let split = |ex: &[u32]| -> (usize, usize, usize) {
        let j = ex[nbase] as usize;
        let b = &ex[..nbase];
        let d = degree_in(v, b);
        (j, d, v.basis_index(d, b).expect("base basis element"))
    };
    let model = VarietyModel::assemble(
        ModelParts {
            name: format!("P({} on {})", e.spec(), v.name()),
            dim,
            kind: VarietyKind::ProjectiveBundle {
                base: v.name().to_string(),
                rank: r,
            },
            generators,
            basis,
            integral,
            pseff_rays: Vec::new(),
            nef_rays: Vec::new(),
        },
        |da, ia, db, ib| {
            let (ja, dva, iva) = split(&basis_for_mul[da][ia]);
            let (jb, dvb, ivb) = split(&basis_for_mul[db][ib]);
            let total = da + db;
            let target = &basis_for_mul[total];
            let mut out = vec![Rational::zero(); target.len()];
            let Some(ab) = v.basis_product(dva, iva, dvb, ivb) else {
                return out;
            };
            let base_product = CohomClass::homogeneous(v, dva + dvb, ab.to_vec());
            for (l, coeff) in xi_powers[ja + jb].iter().enumerate() {
                if l > total || total - l > nv || coeff.is_zero() {
                    continue;
                }
                let piece = coeff.mul(&base_product);
                let d = total - l;
                if piece.is_zero() {
                    continue;
                }
                for (i, q) in piece.coords(d).iter().enumerate() {
                    if q.is_zero() {
                        continue;
                    }
                    let mut ex = v.basis(d)[i].clone();
                    ex.push(l as u32);
                    let pos = target.iter().position(|t| *t == ex).expect("bundle basis element");
                    out[pos] += q;
                }
            }
            out
        },
    );
    Ok(model)
}

/// Parses names like `P3`, `P2xP1`, `P1xP1xP1`.
pub fn parse_variety_name(name: &str) -> Result<VarietyModel, VarietyError> {
    let err = || VarietyError::UnknownVariety(name.to_string());
    let mut factors = Vec::new();
    for part in name.trim().split('x') {
        let n: usize = part
            .strip_prefix('P')
            .ok_or_else(err)?
            .parse()
            .map_err(|_| err())?;
        if n == 0 {
            return Err(err());
        }
        factors.push(projective_space(n));
    }
    let mut iter = factors.into_iter();
    let first = iter.next().ok_or_else(err)?;
    Ok(iter.fold(first, |acc, f| product(&acc, &f)))
}

impl VarietyModel {
    fn label_rays(&mut self) {
        let pseff: Vec<String> = self.pseff_rays.iter().map(|r| self.ray_class(r).to_string()).collect();
        let nef: Vec<String> = self.nef_rays.iter().map(|r| self.ray_class(r).to_string()).collect();
        for (r, l) in self.pseff_rays.iter_mut().zip(pseff) {
            r.label = l;
        }
        for (r, l) in self.nef_rays.iter_mut().zip(nef) {
            r.label = l;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{binomial, rat};
    use crate::variety::parse_bundle;

    #[test]
    fn projective_space_integrals() {
        for n in 1..=4 {
            let p = projective_space(n);
            let h = p.generator(0);
            assert_eq!(h.pow(n as u32).integrate(), rat(1));
            assert!(h.pow(n as u32 + 1).is_zero());
            assert_eq!(p.h11(), 1);
            assert_eq!(p.basis_size(n), 1);
        }
        let p2 = projective_space(2);
        let h = p2.generator(0);
        assert_eq!(
            p2.evaluate(&[h.scale(&rat(2)), h.scale(&rat(3))]).unwrap(),
            rat(6)
        );
    }

    #[test]
    fn products_of_lines() {
        let q = parse_variety_name("P1xP1").unwrap();
        assert_eq!(q.generators(), &["f1".to_string(), "f2".to_string()]);
        let (f1, f2) = (q.generator(0), q.generator(1));
        assert!(f1.pow(2).is_zero());
        assert!(f2.pow(2).is_zero());
        assert_eq!(q.evaluate(&[f1.clone(), f2.clone()]).unwrap(), rat(1));
        assert_eq!(q.pseff_rays().len(), 2);
        assert_eq!(q.pseff_rays()[0].label, "f1");

        let x = parse_variety_name("P1xP1xP1").unwrap();
        assert_eq!(x.h11(), 3);
        let f: Vec<_> = (0..3).map(|i| x.generator(i)).collect();
        assert_eq!(x.evaluate(&f).unwrap(), rat(1));
        let sum = f[0].add(&f[1]).add(&f[2]);
        assert_eq!(x.evaluate(&[sum.clone(), sum.clone(), sum]).unwrap(), rat(6));

        let y = parse_variety_name("P2xP1").unwrap();
        assert_eq!(y.dim(), 3);
        let (h, g) = (y.generator(0), y.generator(1));
        assert_eq!(y.evaluate(&[h.clone(), h.clone(), g.clone()]).unwrap(), rat(1));
        assert!(h.pow(3).is_zero());
        assert_eq!(
            (0..=3).map(|d| y.basis_size(d)).collect::<Vec<_>>(),
            vec![1, 2, 2, 1]
        );
        assert_eq!(y.kind(), &VarietyKind::ProductOfProjective(vec![2, 1]));
    }

    #[test]
    fn unknown_names() {
        for bad in ["Q3", "P0", "P2x", "", "P-1"] {
            assert!(parse_variety_name(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn trivial_bundle_projectivizes_to_a_product() {
        let p1 = projective_space(1);
        let e = parse_bundle("O(0)+O(0)", &p1).unwrap();
        let pe = proj_bundle(&p1, &e).unwrap();
        let (f, xi) = (pe.generator(0), pe.generator(1));
        assert_eq!(pe.evaluate(&[xi.clone(), f.clone()]).unwrap(), rat(1));
        assert!(xi.pow(2).is_zero());
        assert!(f.pow(2).is_zero());
    }

    #[test]
    fn grothendieck_relation_on_p2() {
        let p2 = projective_space(2);
        let e = parse_bundle("O(0)+O(1)", &p2).unwrap();
        let pe = proj_bundle(&p2, &e).unwrap();
        let (h, xi) = (pe.generator(0), pe.generator(1));
        // ξ^2 = -ξ h
        assert_eq!(xi.pow(2), xi.mul(&h).scale(&rat(-1)));
        assert_eq!(pe.evaluate(&[xi.clone(), h.clone(), h.clone()]).unwrap(), rat(1));
        assert_eq!(pe.evaluate(&[xi.clone(), xi.clone(), h.clone()]).unwrap(), rat(-1));
    }

    #[test]
    fn projective_bundle_basis_dimensions() {
        // rank H^{2k}(P(E)) = # {(j, i) : j < r, i <= n, i + j = k} for E on P^n
        for (n, spec, r) in [(2usize, "O(1)+O(2)+O(0)", 3usize), (3, "O(1)+O(1)", 2)] {
            let pn = projective_space(n);
            let e = parse_bundle(spec, &pn).unwrap();
            let pe = proj_bundle(&pn, &e).unwrap();
            for k in 0..=pe.dim() {
                let expected = (0..r).filter(|&j| j <= k && k - j <= n).count();
                assert_eq!(pe.basis_size(k), expected);
            }
        }
    }

    #[test]
    fn projectivization_rejects_twists() {
        let p2 = projective_space(2);
        let e = parse_bundle("O(1)+O(1)<1/2*H>", &p2).unwrap();
        assert_eq!(proj_bundle(&p2, &e).unwrap_err(), VarietyError::TwistedProjectivization);
    }

    #[test]
    fn model_rings_are_associative_and_commutative() {
        let models = vec![
            parse_variety_name("P2xP1").unwrap(),
            parse_variety_name("P1xP1xP1").unwrap(),
        ];
        for m in &models {
            check_ring(m);
        }
        let p2 = projective_space(2);
        let e = parse_bundle("O(1)+O(2)+O(3)", &p2).unwrap();
        check_ring(&proj_bundle(&p2, &e).unwrap());
    }

    fn check_ring(m: &VarietyModel) {
        let mut elems = Vec::new();
        for d in 0..=m.dim() {
            for i in 0..m.basis_size(d) {
                let mut c = vec![Rational::zero(); m.basis_size(d)];
                c[i] = rat(1);
                elems.push(CohomClass::homogeneous(m, d, c));
            }
        }
        for a in &elems {
            for b in &elems {
                assert_eq!(a.mul(b), b.mul(a));
                for c in &elems {
                    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                }
            }
        }
    }

    #[test]
    fn projective_bundle_top_integral() {
        let p2 = projective_space(2);
        let e = parse_bundle("O(1)+O(2)+O(3)", &p2).unwrap();
        let pe = proj_bundle(&p2, &e).unwrap();
        let xi = pe.generator(1);
        let h = pe.generator(0);
        assert_eq!(pe.evaluate(&[xi.pow(2), h.pow(2)]).unwrap(), rat(1));
        // ∫ ξ^{r-1+k} h^{n-k} = [c(E)^{-1}]_k paired with h^{n-k}; c = (1+h)(1+2h)(1+3h)
        // c^{-1} = 1 - 6h + (36 - 11) h^2 = 1 - 6h + 25h^2
        assert_eq!(pe.evaluate(&[xi.pow(3), h.clone()]).unwrap(), rat(-6));
        assert_eq!(pe.evaluate(&[xi.pow(4)]).unwrap(), rat(25));
        let _ = binomial(1, 1);
    }
}
