//! Constant-coefficient `(p, q)`-forms on `C^n` and their positivity.
//!
//! A form is stored as coefficients `u_{IJ}` on `dz_I ∧ dz̄_J` with `I`, `J`
//! increasing multi-indices (bitmasks here, 0-based). A `(p, p)`-form is real
//! exactly when `ũ_{IJ} = u_{IJ} / σ_p` is Hermitian in `(I, J)`, where
//! `σ_p = i^p (-1)^{p(p-1)/2}` is the factor with
//! `i dz_1∧dz̄_1 ∧ ... ∧ i dz_p∧dz̄_p = σ_p dz_{1..p} ∧ dz̄_{1..p}`.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::{hermitian_inertia, GaussRational};
use crate::ring::{rational_from_f64, CommutativeAlgebra, Rational};

pub type C64 = Complex64;

/// Hermitian coefficient matrix of a `(1,1)` or hat-basis `(n-1,n-1)` form.
pub type HermCoeffMatrix = DMatrix<C64>;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormError {
    #[error("expected a form of bidegree ({0}, {1}), got ({2}, {3})")]
    WrongBidegree(usize, usize, usize, usize),
    #[error("form is not real")]
    NotReal,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("invalid form JSON: {0}")]
    Json(String),
}

fn i_pow(k: usize) -> C64 {
    match k % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

/// `σ_p = i^p (-1)^{p(p-1)/2}`.
pub fn sigma(p: usize) -> C64 {
    let s = if (p * p.saturating_sub(1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    i_pow(p) * s
}

fn mask(indices: &[usize]) -> u32 {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

fn indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

/// Sign of the permutation sorting `a` followed by `b` (disjoint masks).
fn merge_sign(a: u32, b: u32) -> f64 {
    let mut inversions = 0;
    for k in indices(b) {
        inversions += (a >> (k + 1)).count_ones();
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Constant-coefficient form of a fixed bidegree on `C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstForm {
    n: usize,
    p: usize,
    q: usize,
    terms: BTreeMap<(u32, u32), C64>,
}

impl ConstForm {
    pub fn zero(n: usize, p: usize, q: usize) -> Self {
        ConstForm { n, p, q, terms: BTreeMap::new() }
    }

    /// The constant function 1.
    pub fn one(n: usize) -> Self {
        Self::scalar(n, C64::new(1.0, 0.0))
    }

    pub fn scalar(n: usize, c: C64) -> Self {
        let mut f = Self::zero(n, 0, 0);
        f.add_term(&[], &[], c);
        f
    }

    /// `c · dz_I ∧ dz̄_J` for arbitrary (0-based) index lists; reordering signs
    /// are applied and repeated indices give zero.
    pub fn monomial(n: usize, i: &[usize], j: &[usize], c: C64) -> Self {
        let mut f = Self::zero(n, i.len(), j.len());
        f.add_term(i, j, c);
        f
    }

    /// `dz_j`.
    pub fn dz(n: usize, j: usize) -> Self {
        Self::monomial(n, &[j], &[], C64::new(1.0, 0.0))
    }

    /// `dz̄_k`.
    pub fn dzbar(n: usize, k: usize) -> Self {
        Self::monomial(n, &[], &[k], C64::new(1.0, 0.0))
    }

    /// `i dz_j ∧ dz̄_k`.
    pub fn i_dz_dzbar(n: usize, j: usize, k: usize) -> Self {
        Self::monomial(n, &[j], &[k], C64::new(0.0, 1.0))
    }

    /// `dvol = Π_j i dz_j ∧ dz̄_j`.
    pub fn dvol(n: usize) -> Self {
        let all: Vec<usize> = (0..n).collect();
        Self::monomial(n, &all, &all, sigma(n))
    }

    /// Adds `c · dz_I ∧ dz̄_J`, sorting the index lists with sign.
    pub fn add_term(&mut self, i: &[usize], j: &[usize], c: C64) {
        assert_eq!((i.len(), j.len()), (self.p, self.q), "term of the wrong bidegree");
        for &x in i.iter().chain(j) {
            assert!(x < self.n, "index {x} out of range for C^{}", self.n);
        }
        let (Some((mi, si)), Some((mj, sj))) = (sorted_mask(i), sorted_mask(j)) else {
            return;
        };
        self.add_masked(mi, mj, c * (si * sj));
    }

    fn add_masked(&mut self, i: u32, j: u32, c: C64) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(C64::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient on `dz_I ∧ dz̄_J` (sorted 0-based indices).
    pub fn coefficient(&self, i: &[usize], j: &[usize]) -> C64 {
        self.terms.get(&(mask(i), mask(j))).copied().unwrap_or_else(C64::zero)
    }

    /// Stored terms as `(I, J, coefficient)` with 0-based sorted indices.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, Vec<usize>, C64)> + '_ {
        self.terms.iter().map(|(&(i, j), &c)| (indices(i), indices(j), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "forms on different spaces");
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.bidegree(), other.bidegree(), "cannot add forms of different bidegree");
        let mut out = self.clone();
        for (&(i, j), &c) in &other.terms {
            out.add_masked(i, j, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = Self::zero(self.n, self.p, self.q);
        for (&(i, j), &x) in &self.terms {
            out.add_masked(i, j, x * c);
        }
        out
    }

    /// Exterior product; zero (of the nominal bidegree) past the top degree.
    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "forms on different spaces");
        let mut out = Self::zero(self.n, self.p + other.p, self.q + other.q);
        for (&(i, j), &a) in &self.terms {
            for (&(k, l), &b) in &other.terms {
                if i & k != 0 || j & l != 0 {
                    continue;
                }
                // dz̄_J must move past dz_K
                let cross = if j.count_ones() * k.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                let sign = cross * merge_sign(i, k) * merge_sign(j, l);
                out.add_masked(i | k, j | l, a * b * sign);
            }
        }
        out
    }

    /// Complex conjugate form.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.n, self.q, self.p);
        let sign = if (self.p * self.q).is_multiple_of(2) { 1.0 } else { -1.0 };
        for (&(i, j), &c) in &self.terms {
            // conj(dz_I ∧ dz̄_J) = dz̄_I ∧ dz_J = (-1)^{pq} dz_J ∧ dz̄_I
            out.add_masked(j, i, c.conj() * sign);
        }
        out
    }

    /// Largest coefficient modulus of `u - conj(u)`.
    pub fn reality_defect(&self) -> f64 {
        if self.p != self.q {
            return f64::INFINITY;
        }
        self.sub(&self.conj()).max_modulus()
    }

    pub fn max_modulus(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `u = a · dvol` for a top-degree form; returns `a`.
    pub fn top_coefficient(&self) -> C64 {
        let all = (1u32 << self.n) - 1;
        self.terms.get(&(all, all)).copied().unwrap_or_else(C64::zero) / sigma(self.n)
    }

    /// Multiplier of `dvol` in `u ∧ v`, for complementary bidegrees.
    pub fn pairing(&self, other: &Self) -> C64 {
        self.wedge(other).top_coefficient()
    }
}

fn sorted_mask(idx: &[usize]) -> Option<(u32, f64)> {
    let mut v = idx.to_vec();
    let mut sign = 1.0;
    for a in 0..v.len() {
        for b in 0..v.len() - a - 1 {
            if v[b] == v[b + 1] {
                return None;
            }
            if v[b] > v[b + 1] {
                v.swap(b, b + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((mask(&v), sign))
}

impl CommutativeAlgebra for ConstForm {
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.wedge(rhs)
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(C64::new(crate::ring::rational_to_f64(c), 0.0))
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

impl fmt::Display for ConstForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(i, j, c)| {
                let mut s = format!("({}{:+}i)", c.re, c.im);
                for x in i {
                    s.push_str(&format!(" dz{}", x + 1));
                }
                for x in j {
                    s.push_str(&format!(" dzb{}", x + 1));
                }
                s
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// JSON layout: `{"n":…, "p":…, "q":…, "terms":[[I, J, re, im], …]}` with 1-based indices.
#[derive(Serialize, Deserialize)]
struct FormJson {
    n: usize,
    p: usize,
    q: usize,
    terms: Vec<(Vec<usize>, Vec<usize>, f64, f64)>,
}

impl Serialize for ConstForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FormJson {
            n: self.n,
            p: self.p,
            q: self.q,
            terms: self
                .terms()
                .map(|(i, j, c)| {
                    (
                        i.into_iter().map(|x| x + 1).collect(),
                        j.into_iter().map(|x| x + 1).collect(),
                        c.re,
                        c.im,
                    )
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConstForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = FormJson::deserialize(d)?;
        ConstForm::from_json_parts(j).map_err(D::Error::custom)
    }
}

impl ConstForm {
    fn from_json_parts(j: FormJson) -> Result<Self, FormError> {
        if j.n == 0 || j.n > 16 {
            return Err(FormError::Dimension(format!("n = {} not supported", j.n)));
        }
        let mut f = ConstForm::zero(j.n, j.p, j.q);
        for (i, jj, re, im) in j.terms {
            if i.len() != j.p || jj.len() != j.q {
                return Err(FormError::WrongBidegree(j.p, j.q, i.len(), jj.len()));
            }
            let shift = |v: Vec<usize>| -> Result<Vec<usize>, FormError> {
                v.into_iter()
                    .map(|x| {
                        if x == 0 || x > j.n {
                            Err(FormError::IndexOutOfRange { index: x, n: j.n })
                        } else {
                            Ok(x - 1)
                        }
                    })
                    .collect()
            };
            f.add_term(&shift(i)?, &shift(jj)?, C64::new(re, im));
        }
        Ok(f)
    }
}

/// `Σ M_jk i dz_j ∧ dz̄_k`.
pub fn form_from_matrix_11(m: &HermCoeffMatrix) -> ConstForm {
    let n = m.nrows();
    let mut f = ConstForm::zero(n, 1, 1);
    for j in 0..n {
        for k in 0..n {
            f.add_term(&[j], &[k], m[(j, k)] * C64::new(0.0, 1.0));
        }
    }
    f
}

/// Inverse of [`form_from_matrix_11`].
pub fn matrix_from_form_11(u: &ConstForm) -> Result<HermCoeffMatrix, FormError> {
    check_bidegree(u, 1)?;
    let n = u.n;
    Ok(DMatrix::from_fn(n, n, |j, k| u.coefficient(&[j], &[k]) / C64::new(0.0, 1.0)))
}

fn complement(n: usize, j: usize) -> Vec<usize> {
    (0..n).filter(|&x| x != j).collect()
}

/// Sign `s_jk` with `hat(j,k) = s_jk dz_{Ĵ} ∧ dz̄_{K̂}`.
fn hat_sign(n: usize, j: usize, k: usize) -> C64 {
    let probe = ConstForm::i_dz_dzbar(n, j, k)
        .wedge(&ConstForm::monomial(n, &complement(n, j), &complement(n, k), C64::new(1.0, 0.0)));
    C64::new(1.0, 0.0) / probe.top_coefficient()
}

/// The `(n-1,n-1)` basis form dual to `i dz_j ∧ dz̄_k`:
/// `i dz_j ∧ dz̄_k ∧ hat(j,k) = dvol`, and `hat(j,k)` wedges to zero against
/// every other `i dz_a ∧ dz̄_b`.
pub fn hat(n: usize, j: usize, k: usize) -> ConstForm {
    ConstForm::monomial(n, &complement(n, j), &complement(n, k), hat_sign(n, j, k))
}

/// `Σ M_jk hat(j,k)`.
pub fn form_from_matrix_hat(m: &HermCoeffMatrix) -> ConstForm {
    let n = m.nrows();
    let mut f = ConstForm::zero(n, n - 1, n - 1);
    for j in 0..n {
        for k in 0..n {
            f = f.add(&hat(n, j, k).scale(m[(j, k)]));
        }
    }
    f
}

/// Coefficients `u_jk` of an `(n-1,n-1)`-form in the hat basis.
pub fn matrix_from_form_hat(u: &ConstForm) -> Result<HermCoeffMatrix, FormError> {
    let n = u.n;
    check_bidegree(u, n - 1)?;
    Ok(DMatrix::from_fn(n, n, |j, k| {
        u.coefficient(&complement(n, j), &complement(n, k)) / hat_sign(n, j, k)
    }))
}

fn check_bidegree(u: &ConstForm, p: usize) -> Result<(), FormError> {
    if u.bidegree() != (p, p) {
        return Err(FormError::WrongBidegree(p, p, u.p, u.q));
    }
    Ok(())
}

/// `Π_k i α_k ∧ ᾱ_k` for `(1,0)`-forms `α_k = Σ_j α_kj dz_j`.
pub fn decomposable(n: usize, alphas: &[Vec<C64>]) -> ConstForm {
    let m = alphas.len();
    let mut out = ConstForm::zero(n, m, m);
    if m > n {
        return out;
    }
    let subsets: Vec<u32> = (0u32..(1 << n)).filter(|s| s.count_ones() as usize == m).collect();
    let minors: Vec<(u32, C64)> = subsets
        .iter()
        .map(|&s| {
            let cols = indices(s);
            let a = DMatrix::from_fn(m, m, |r, c| alphas[r][cols[c]]);
            (s, if m == 0 { C64::new(1.0, 0.0) } else { a.determinant() })
        })
        .collect();
    let s = sigma(m);
    for &(k, dk) in &minors {
        for &(l, dl) in &minors {
            out.add_masked(k, l, s * dk * dl.conj());
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Semi,
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Arithmetic {
    /// Every coefficient is read as the exact dyadic rational it stores.
    Exact,
    Float { tolerance: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivityOptions {
    pub mode: Mode,
    pub arithmetic: Arithmetic,
    pub samples: usize,
    pub seed: u64,
}

impl Default for PositivityOptions {
    fn default() -> Self {
        PositivityOptions {
            mode: Mode::Semi,
            arithmetic: Arithmetic::Exact,
            samples: DEFAULT_SAMPLES,
            seed: 0,
        }
    }
}

/// Evidence against positivity.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// Bidegree `(0,0)` or `(n,n)`: the offending multiplier.
    Scalar { value: f64 },
    /// Eigenvector of the Hermitian coefficient matrix for its smallest eigenvalue `value`.
    Eigenvector { vector: Vec<C64>, value: f64 },
    /// `u ∧ Π i α_k ∧ ᾱ_k = value · dvol`.
    Forms { alphas: Vec<Vec<C64>>, value: f64 },
}

impl Witness {
    pub fn value(&self) -> f64 {
        match self {
            Witness::Scalar { value } | Witness::Eigenvector { value, .. } | Witness::Forms { value, .. } => *value,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PositivityVerdict {
    Positive { strict: bool },
    Violated(Witness),
    NoViolationFound { samples: usize, seed: u64 },
}

impl PositivityVerdict {
    /// True unless a violation was found.
    pub fn passes(&self) -> bool {
        !matches!(self, PositivityVerdict::Violated(_))
    }
}

impl fmt::Display for PositivityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PositivityVerdict::Positive { strict: true } => f.write_str("positive-strict"),
            PositivityVerdict::Positive { strict: false } => f.write_str("positive"),
            PositivityVerdict::Violated(_) => f.write_str("violated"),
            PositivityVerdict::NoViolationFound { samples, .. } => write!(f, "no-violation-found({samples})"),
        }
    }
}

/// Positivity of a real `(p,p)`-form.
///
/// Bidegrees `(0,0)`, `(1,1)`, `(n-1,n-1)` and `(n,n)` are decided through
/// the associated Hermitian matrix; the others are sampled against
/// decomposable strongly positive forms of complementary bidegree.
pub fn is_positive(u: &ConstForm, opts: &PositivityOptions) -> Result<PositivityVerdict, FormError> {
    let (p, q) = u.bidegree();
    if p != q {
        return Err(FormError::WrongBidegree(p, p, p, q));
    }
    let n = u.n;
    let strict = opts.mode == Mode::Strict;
    let scale = 1.0f64.max(u.max_modulus());
    match opts.arithmetic {
        Arithmetic::Exact => {
            if u.reality_defect() != 0.0 {
                return Err(FormError::NotReal);
            }
        }
        Arithmetic::Float { tolerance } => {
            if u.reality_defect() > tolerance * scale {
                return Err(FormError::NotReal);
            }
        }
    }
    if p == 0 || p == n {
        let value = if p == 0 {
            u.coefficient(&[], &[]).re
        } else {
            u.top_coefficient().re
        };
        let ok = match opts.arithmetic {
            Arithmetic::Exact => {
                let x = rational_from_f64(value).ok_or(FormError::NotReal)?;
                if strict { x.is_positive() } else { !x.is_negative() }
            }
            Arithmetic::Float { tolerance } => {
                if strict { value > tolerance } else { value >= -tolerance }
            }
        };
        return Ok(if ok {
            PositivityVerdict::Positive { strict }
        } else {
            PositivityVerdict::Violated(Witness::Scalar { value })
        });
    }
    if p == 1 || p + 1 == n {
        let m = if p == 1 { matrix_from_form_11(u)? } else { matrix_from_form_hat(u)? };
        return matrix_verdict(&m, p == 1, strict, opts.arithmetic);
    }
    Ok(sampled_verdict(u, strict, opts))
}

fn matrix_verdict(
    m: &HermCoeffMatrix,
    tangent: bool,
    strict: bool,
    arithmetic: Arithmetic,
) -> Result<PositivityVerdict, FormError> {
    let herm = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(herm);
    let (imin, lmin) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, &l)| if l < acc.1 { (i, l) } else { acc });
    let ok = match arithmetic {
        Arithmetic::Exact => {
            let exact = gaussian_matrix(m)?;
            let (_, zero, neg) = hermitian_inertia(&exact);
            neg == 0 && (!strict || zero == 0)
        }
        Arithmetic::Float { tolerance } => {
            let scale = 1.0f64.max(m.iter().map(|c| c.norm()).fold(0.0, f64::max));
            if strict { lmin > tolerance * scale } else { lmin >= -tolerance * scale }
        }
    };
    if ok {
        return Ok(PositivityVerdict::Positive { strict });
    }
    let v: Vec<C64> = eig.eigenvectors.column(imin).iter().copied().collect();
    // the hat-basis pairing reads Σ u_jk α_j conj(α_k), so α = conj(v)
    Ok(PositivityVerdict::Violated(if tangent {
        Witness::Eigenvector { vector: v, value: lmin }
    } else {
        Witness::Forms { alphas: vec![v.iter().map(|c| c.conj()).collect()], value: lmin }
    }))
}

fn gaussian_matrix(m: &HermCoeffMatrix) -> Result<Vec<Vec<GaussRational>>, FormError> {
    let n = m.nrows();
    let conv = |x: f64| rational_from_f64(x).ok_or(FormError::NotReal);
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut row = Vec::with_capacity(n);
        for k in 0..n {
            let c = m[(j, k)];
            row.push(GaussRational::new(conv(c.re)?, conv(c.im)?));
        }
        out.push(row);
    }
    for j in 0..n {
        for k in 0..n {
            if out[j][k] != GaussRational::new(out[k][j].re.clone(), -out[k][j].im.clone()) {
                return Err(FormError::NotReal);
            }
        }
    }
    Ok(out)
}

/// Deterministic generator for sample `index` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform point on the unit sphere of `C^n`.
pub fn random_unit_vector<R: Rng>(rng: &mut R, n: usize) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..n)
            .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|c| c / norm).collect();
        }
    }
}

/// `k` independent unit vectors in `C^n`.
pub fn random_alphas<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<Vec<C64>> {
    (0..k).map(|_| random_unit_vector(rng, n)).collect()
}

fn sampled_verdict(u: &ConstForm, strict: bool, opts: &PositivityOptions) -> PositivityVerdict {
    let n = u.n;
    let m = n - u.p;
    let tolerance = match opts.arithmetic {
        Arithmetic::Exact => DEFAULT_TOLERANCE,
        Arithmetic::Float { tolerance } => tolerance,
    } * 1.0f64.max(u.max_modulus());
    let worst = (0..opts.samples as u64)
        .into_par_iter()
        .map(|idx| {
            let mut rng = sample_rng(opts.seed, idx);
            let alphas = random_alphas(&mut rng, n, m);
            let value = u.pairing(&decomposable(n, &alphas)).re;
            (value, idx, alphas)
        })
        .filter(|(value, _, _)| if strict { *value <= tolerance } else { *value < -tolerance })
        .min_by_key(|(_, idx, _)| *idx);
    match worst {
        Some((value, _, alphas)) => PositivityVerdict::Violated(Witness::Forms { alphas, value }),
        None => PositivityVerdict::NoViolationFound { samples: opts.samples, seed: opts.seed },
    }
}

/// Tries to write `u` as a nonnegative combination of the decomposable forms
/// `Π_k i α_k ∧ ᾱ_k`, one per supplied tuple of `α` vectors.
///
/// Returns the coefficients when the nonnegative least-squares residual is
/// below `1e-9 · max(1, |u|)`; `None` proves nothing.
pub fn is_strongly_positive_witness(u: &ConstForm, generators: &[Vec<Vec<C64>>]) -> Option<Vec<f64>> {
    let n = u.n;
    let forms: Vec<ConstForm> = generators.iter().map(|g| decomposable(n, g)).collect();
    if forms.iter().any(|f| !f.is_zero() && f.bidegree() != u.bidegree()) {
        return None;
    }
    let mut keys: Vec<(u32, u32)> = u.terms.keys().copied().collect();
    for f in &forms {
        keys.extend(f.terms.keys().copied());
    }
    keys.sort_unstable();
    keys.dedup();
    let rows = 2 * keys.len();
    let coeff = |f: &ConstForm, k: &(u32, u32)| f.terms.get(k).copied().unwrap_or_else(C64::zero);
    let a = DMatrix::from_fn(rows, forms.len(), |r, c| {
        let z = coeff(&forms[c], &keys[r / 2]);
        if r % 2 == 0 { z.re } else { z.im }
    });
    let b = DVector::from_fn(rows, |r, _| {
        let z = coeff(u, &keys[r / 2]);
        if r % 2 == 0 { z.re } else { z.im }
    });
    let x = crate::linalg::nnls(&a, &b);
    let residual = (&a * &x - &b).norm();
    if residual <= 1e-9 * 1.0f64.max(b.norm()) {
        Some(x.iter().copied().collect())
    } else {
        None
    }
}
