//! Pointwise Chern–Weil forms of a curvature tensor
//! `Θ = Σ c_{jkλμ} dz_j ∧ dz̄_k ⊗ e_λ^* ⊗ e_μ` and Griffiths positivity.
//!
//! Indices are 0-based; the JSON layout is 1-based.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, RngCore};
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::forms::{self, sample_rng, ConstForm, PositivityOptions, C64};
use crate::ring::{CommutativeAlgebra, Partition};
use crate::schur::{schur_poly, SchurError};

/// Shift added to `B B^*` by [`random_nakano_positive`].
pub const NAKANO_EPSILON: f64 = 0.1;
pub const GRIFFITHS_RESTARTS: u64 = 16;
pub const GRIFFITHS_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LabError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: String, got: String },
    #[error("tensor violates c_jkλμ = conj(c_kjμλ) at ({0}, {1}, {2}, {3})")]
    NotHermitian(usize, usize, usize, usize),
    #[error("index out of range in tensor entry {0:?}")]
    IndexOutOfRange([usize; 4]),
    #[error(transparent)]
    Schur(#[from] SchurError),
    #[error(transparent)]
    Form(#[from] forms::FormError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureTensor {
    n: usize,
    r: usize,
    c: Vec<C64>,
}

impl CurvatureTensor {
    pub fn zero(n: usize, r: usize) -> Self {
        CurvatureTensor { n, r, c: vec![C64::new(0.0, 0.0); n * n * r * r] }
    }

    fn idx(&self, j: usize, k: usize, l: usize, m: usize) -> usize {
        ((j * self.n + k) * self.r + l) * self.r + m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn get(&self, j: usize, k: usize, l: usize, m: usize) -> C64 {
        self.c[self.idx(j, k, l, m)]
    }

    /// Sets `c_{jkλμ}` and its partner `c_{kjμλ}` to the conjugate value.
    pub fn set(&mut self, j: usize, k: usize, l: usize, m: usize, value: C64) {
        let a = self.idx(j, k, l, m);
        let b = self.idx(k, j, m, l);
        if a == b {
            self.c[a] = C64::new(value.re, 0.0);
        } else {
            self.c[a] = value;
            self.c[b] = value.conj();
        }
    }

    /// Largest `|c_{jkλμ} - conj(c_{kjμλ})|`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for j in 0..self.n {
            for k in 0..self.n {
                for l in 0..self.r {
                    for m in 0..self.r {
                        worst = worst.max((self.get(j, k, l, m) - self.get(k, j, m, l).conj()).norm());
                    }
                }
            }
        }
        worst
    }

    /// Reindexes a Hermitian `nr × nr` matrix: `c_{jkλμ} = A_{(j r + λ), (k r + μ)}`.
    /// Only the upper triangle of `A` is read.
    pub fn from_hermitian_matrix(n: usize, r: usize, a: &DMatrix<C64>) -> Result<Self, LabError> {
        if a.shape() != (n * r, n * r) {
            return Err(LabError::Dimension {
                expected: format!("{0}x{0}", n * r),
                got: format!("{}x{}", a.nrows(), a.ncols()),
            });
        }
        let mut t = CurvatureTensor::zero(n, r);
        for row in 0..n * r {
            for col in row..n * r {
                t.set(row / r, col / r, row % r, col % r, a[(row, col)]);
            }
        }
        Ok(t)
    }

    /// Inverse of [`CurvatureTensor::from_hermitian_matrix`].
    pub fn nakano_matrix(&self) -> DMatrix<C64> {
        let r = self.r;
        DMatrix::from_fn(self.n * r, self.n * r, |row, col| self.get(row / r, col / r, row % r, col % r))
    }

    /// `θ(u, u) = Σ c_{jkλμ} u_{jλ} conj(u_{kμ})` for an `n × r` matrix `u`.
    pub fn theta_eval(&self, u: &DMatrix<C64>) -> Result<f64, LabError> {
        if u.shape() != (self.n, self.r) {
            return Err(LabError::Dimension {
                expected: format!("{}x{}", self.n, self.r),
                got: format!("{}x{}", u.nrows(), u.ncols()),
            });
        }
        let mut acc = C64::new(0.0, 0.0);
        for j in 0..self.n {
            for k in 0..self.n {
                for l in 0..self.r {
                    for m in 0..self.r {
                        acc += self.get(j, k, l, m) * u[(j, l)] * u[(k, m)].conj();
                    }
                }
            }
        }
        Ok(acc.re)
    }

    /// Conjugates the fiber indices by a unitary `U`:
    /// `c'_{jkλμ} = Σ conj(U_{αλ}) c_{jkαβ} U_{βμ}`.
    pub fn gauge_transform(&self, u: &DMatrix<C64>) -> Result<Self, LabError> {
        if u.shape() != (self.r, self.r) {
            return Err(LabError::Dimension {
                expected: format!("{0}x{0}", self.r),
                got: format!("{}x{}", u.nrows(), u.ncols()),
            });
        }
        let mut out = CurvatureTensor::zero(self.n, self.r);
        for j in 0..self.n {
            for k in 0..self.n {
                let block = DMatrix::from_fn(self.r, self.r, |a, b| self.get(j, k, a, b));
                let conj = u.adjoint() * block * u;
                for l in 0..self.r {
                    for m in 0..self.r {
                        let idx = out.idx(j, k, l, m);
                        out.c[idx] = conj[(l, m)];
                    }
                }
            }
        }
        Ok(out)
    }

    /// The `(1,1)`-form `(i/2π) Σ_{jk} c_{jkλμ} dz_j ∧ dz̄_k`.
    pub fn entry_form(&self, l: usize, m: usize) -> ConstForm {
        let mut f = ConstForm::zero(self.n, 1, 1);
        let factor = C64::new(0.0, 1.0 / (2.0 * std::f64::consts::PI));
        for j in 0..self.n {
            for k in 0..self.n {
                f.add_term(&[j], &[k], self.get(j, k, l, m) * factor);
            }
        }
        f
    }

    fn entry_forms(&self) -> Vec<Vec<ConstForm>> {
        (0..self.r)
            .map(|l| (0..self.r).map(|m| self.entry_form(l, m)).collect())
            .collect()
    }
}

/// `Θ = A` for `A = B B^* + ε I` on `C^{nr}`.
pub fn nakano_from_factor(n: usize, r: usize, b: &DMatrix<C64>, epsilon: f64) -> Result<CurvatureTensor, LabError> {
    let a = b * b.adjoint() + DMatrix::<C64>::identity(n * r, n * r) * C64::new(epsilon, 0.0);
    CurvatureTensor::from_hermitian_matrix(n, r, &a)
}

fn gaussian_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<C64> {
    let scale = 1.0 / ((2 * cols) as f64).sqrt();
    DMatrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal)) * scale
    })
}

/// Nakano-positive sample: `A = B B^* + ε I` with a Gaussian `B`, reindexed.
pub fn random_nakano_positive(n: usize, r: usize, seed: u64) -> CurvatureTensor {
    let mut rng = sample_rng(seed, 0);
    let b = gaussian_matrix(&mut rng, n * r, n * r);
    nakano_from_factor(n, r, &b, NAKANO_EPSILON).expect("square factor")
}

/// Hermitian-symmetric tensor of no particular sign.
pub fn random_hermitian_tensor(n: usize, r: usize, seed: u64) -> CurvatureTensor {
    let mut rng = sample_rng(seed, 0);
    let b = gaussian_matrix(&mut rng, n * r, n * r);
    CurvatureTensor::from_hermitian_matrix(n, r, &(&b + b.adjoint())).expect("square matrix")
}

/// Result of the alternating minimization of `θ(ξ⊗s, ξ⊗s)` over unit `ξ`, `s`.
///
/// `value` is attained at the witnesses, so it bounds the true minimum from above.
#[derive(Debug, Clone, PartialEq)]
pub struct GriffithsMin {
    pub value: f64,
    pub xi: Vec<C64>,
    pub s: Vec<C64>,
    pub griffiths_positive: bool,
}

fn bottom_vector(m: DMatrix<C64>) -> (f64, Vec<C64>) {
    let herm = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(herm);
    let (i, l) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, &l)| if l < acc.1 { (i, l) } else { acc });
    (l, eig.eigenvectors.column(i).iter().map(|c| c.conj()).collect())
}

/// Alternating bottom-eigenvector iteration with [`GRIFFITHS_RESTARTS`] seeded restarts.
pub fn griffiths_min(theta: &CurvatureTensor, tolerance: f64, seed: u64) -> GriffithsMin {
    let (n, r) = (theta.n, theta.r);
    let runs: Vec<(f64, Vec<C64>, Vec<C64>)> = (0..GRIFFITHS_RESTARTS)
        .into_par_iter()
        .map(|restart| {
            let mut rng = sample_rng(seed, restart);
            let mut s = forms::random_unit_vector(&mut rng, r);
            let mut xi = forms::random_unit_vector(&mut rng, n);
            let mut value = f64::INFINITY;
            for _ in 0..1000 {
                // θ(ξ⊗s) = y^* M y with y = conj(ξ), M_jk = Σ c_jkλμ s_λ conj(s_μ)
                let m = DMatrix::from_fn(n, n, |j, k| {
                    let mut acc = C64::new(0.0, 0.0);
                    for l in 0..r {
                        for mu in 0..r {
                            acc += theta.get(j, k, l, mu) * s[l] * s[mu].conj();
                        }
                    }
                    acc
                });
                xi = bottom_vector(m).1;
                let nmat = DMatrix::from_fn(r, r, |l, mu| {
                    let mut acc = C64::new(0.0, 0.0);
                    for j in 0..n {
                        for k in 0..n {
                            acc += theta.get(j, k, l, mu) * xi[j] * xi[k].conj();
                        }
                    }
                    acc
                });
                let (next, s_next) = bottom_vector(nmat);
                s = s_next;
                let done = (value - next).abs() < GRIFFITHS_THRESHOLD;
                value = next;
                if done {
                    break;
                }
            }
            (value, xi, s)
        })
        .collect();
    let (value, xi, s) = runs
        .into_iter()
        .reduce(|best, run| if run.0 < best.0 { run } else { best })
        .expect("at least one restart");
    GriffithsMin { value, xi, s, griffiths_positive: value > tolerance }
}

/// How `c_k` is extracted from the matrix of curvature forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChernRoute {
    /// `t^k` coefficient of `det(Id + tΩ)`, expanded over all permutations.
    Determinant,
    /// `trace(∧^k Ω)`: sum of the `k × k` principal minors.
    TraceOfWedge,
}

fn permutations(r: usize) -> Vec<(Vec<usize>, f64)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..r).collect();
    fn heap(k: usize, perm: &mut Vec<usize>, sign: f64, out: &mut Vec<(Vec<usize>, f64)>) -> f64 {
        if k <= 1 {
            out.push((perm.clone(), sign));
            return sign;
        }
        let mut sign = heap(k - 1, perm, sign, out);
        for i in 0..k - 1 {
            if k.is_multiple_of(2) {
                perm.swap(i, k - 1);
            } else {
                perm.swap(0, k - 1);
            }
            sign = heap(k - 1, perm, -sign, out);
        }
        sign
    }
    heap(r, &mut perm, 1.0, &mut out);
    out
}

fn minor(omega: &[Vec<ConstForm>], rows: &[usize], n: usize) -> ConstForm {
    let k = rows.len();
    let mut acc = ConstForm::zero(n, k, k);
    for (perm, sign) in permutations(k) {
        let mut term = ConstForm::one(n);
        for (a, &b) in perm.iter().enumerate() {
            term = term.wedge(&omega[rows[a]][rows[b]]);
            if term.is_zero() {
                break;
            }
        }
        acc = acc.add(&term.scale(C64::new(sign, 0.0)));
    }
    acc
}

/// `c_k(E, h)` as a `(k,k)`-form; zero for `k > min(r, n)`.
pub fn chern_form_by(theta: &CurvatureTensor, k: usize, route: ChernRoute) -> ConstForm {
    let (n, r) = (theta.n, theta.r);
    if k == 0 {
        return ConstForm::one(n);
    }
    if k > r.min(n) {
        return ConstForm::zero(n, k, k);
    }
    let omega = theta.entry_forms();
    match route {
        ChernRoute::Determinant => {
            let mut acc = ConstForm::zero(n, k, k);
            for (perm, sign) in permutations(r) {
                // polynomial in t truncated at t^k, coefficients are forms
                let mut poly: Vec<ConstForm> = vec![ConstForm::one(n)];
                for (l, &m) in perm.iter().enumerate() {
                    let mut next: Vec<ConstForm> = (0..poly.len().min(k) + 1).map(|d| ConstForm::zero(n, d, d)).collect();
                    for (d, f) in poly.iter().enumerate() {
                        if l == m {
                            next[d] = next[d].add(f);
                        }
                        if d < k {
                            next[d + 1] = next[d + 1].add(&f.wedge(&omega[l][m]));
                        }
                    }
                    poly = next;
                }
                if let Some(f) = poly.get(k) {
                    acc = acc.add(&f.scale(C64::new(sign, 0.0)));
                }
            }
            acc
        }
        ChernRoute::TraceOfWedge => {
            let mut acc = ConstForm::zero(n, k, k);
            for subset in 0u32..(1 << r) {
                if subset.count_ones() as usize != k {
                    continue;
                }
                let rows: Vec<usize> = (0..r).filter(|i| subset & (1 << i) != 0).collect();
                acc = acc.add(&minor(&omega, &rows, n));
            }
            acc
        }
    }
}

pub fn chern_form(theta: &CurvatureTensor, k: usize) -> ConstForm {
    chern_form_by(theta, k, ChernRoute::Determinant)
}

/// `s_λ(c_1(E,h), ..., c_r(E,h))` as a `(|λ|, |λ|)`-form.
pub fn schur_form(theta: &CurvatureTensor, lambda: &Partition) -> Result<ConstForm, LabError> {
    let p = schur_poly(lambda, theta.r)?;
    let chern: Vec<ConstForm> = (1..=theta.r).map(|k| chern_form(theta, k)).collect();
    let d = lambda.weight() as usize;
    let value = p.evaluate(&ConstForm::one(theta.n), &chern);
    Ok(if value.vanishes() { ConstForm::zero(theta.n, d, d) } else { value })
}

#[derive(Serialize, Deserialize)]
struct TensorJson {
    n: usize,
    r: usize,
    c: Vec<(usize, usize, usize, usize, f64, f64)>,
}

impl Serialize for CurvatureTensor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut c = Vec::new();
        for j in 0..self.n {
            for l in 0..self.r {
                for k in 0..self.n {
                    for m in 0..self.r {
                        // keep (j, λ) ≤ (k, μ); the rest follows by symmetry
                        if (j, l) > (k, m) {
                            continue;
                        }
                        let v = self.get(j, k, l, m);
                        if v.re != 0.0 || v.im != 0.0 {
                            c.push((j + 1, k + 1, l + 1, m + 1, v.re, v.im));
                        }
                    }
                }
            }
        }
        TensorJson { n: self.n, r: self.r, c }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CurvatureTensor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let j = TensorJson::deserialize(d)?;
        let mut t = CurvatureTensor::zero(j.n, j.r);
        for (a, b, l, m, re, im) in j.c {
            let in_range = |x: usize, bound: usize| x >= 1 && x <= bound;
            if !(in_range(a, j.n) && in_range(b, j.n) && in_range(l, j.r) && in_range(m, j.r)) {
                return Err(D::Error::custom(LabError::IndexOutOfRange([a, b, l, m])));
            }
            if (a, l) == (b, m) && im != 0.0 {
                return Err(D::Error::custom(LabError::NotHermitian(a, b, l, m)));
            }
            t.set(a - 1, b - 1, l - 1, m - 1, C64::new(re, im));
        }
        Ok(t)
    }
}

/// Counts over a batch of seeded Nakano-positive samples.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabReport {
    pub n: usize,
    pub r: usize,
    pub seed: u64,
    pub samples: usize,
    /// Samples whose alternating minimum exceeds the tolerance.
    pub griffiths_positive: usize,
    pub smallest_griffiths_value: f64,
    pub forms: Vec<FormStatistics>,
}

/// Positivity statistics of one Schur form across the batch.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormStatistics {
    pub lambda: Partition,
    /// Decided by the matrix criterion, or sampled.
    pub method: String,
    pub positive: usize,
    pub violated: usize,
    pub no_violation_found: usize,
}

/// Seed of the `index`-th sample of a lab run.
pub fn sample_seed(seed: u64, index: u64) -> u64 {
    sample_rng(seed, index).next_u64()
}

/// Runs the lab: for each sample, the Griffiths minimum and the positivity of
/// every Schur form `s_λ` with `1 ≤ |λ| ≤ n` and parts at most `r`.
pub fn run_lab(n: usize, r: usize, seed: u64, samples: usize, opts: &PositivityOptions) -> Result<LabReport, LabError> {
    let lambdas: Vec<Partition> = (1..=n as u32)
        .flat_map(|k| Partition::enumerate(k, r as u32))
        .filter(|l| l.length() <= r)
        .collect();
    let tolerance = match opts.arithmetic {
        forms::Arithmetic::Float { tolerance } => tolerance,
        forms::Arithmetic::Exact => forms::DEFAULT_TOLERANCE,
    };
    let per_sample: Vec<(f64, Vec<forms::PositivityVerdict>)> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let s = sample_seed(seed, i);
            let theta = random_nakano_positive(n, r, s);
            let g = griffiths_min(&theta, tolerance, s);
            let verdicts = lambdas
                .iter()
                .map(|l| {
                    let f = schur_form(&theta, l)?;
                    let sample_opts = PositivityOptions { seed: s, ..*opts };
                    Ok(forms::is_positive(&f, &sample_opts)?)
                })
                .collect::<Result<Vec<_>, LabError>>()?;
            Ok((g.value, verdicts))
        })
        .collect::<Result<Vec<_>, LabError>>()?;
    let forms = lambdas
        .iter()
        .enumerate()
        .map(|(idx, l)| {
            let w = l.weight() as usize;
            let exact = w <= 1 || w + 1 >= n;
            let mut st = FormStatistics {
                lambda: l.clone(),
                method: if exact { "matrix" } else { "sampled" }.to_string(),
                positive: 0,
                violated: 0,
                no_violation_found: 0,
            };
            for (_, verdicts) in &per_sample {
                match verdicts[idx] {
                    forms::PositivityVerdict::Positive { .. } => st.positive += 1,
                    forms::PositivityVerdict::Violated(_) => st.violated += 1,
                    forms::PositivityVerdict::NoViolationFound { .. } => st.no_violation_found += 1,
                }
            }
            st
        })
        .collect();
    Ok(LabReport {
        n,
        r,
        seed,
        samples,
        griffiths_positive: per_sample.iter().filter(|(v, _)| *v > tolerance).count(),
        smallest_griffiths_value: per_sample.iter().map(|(v, _)| *v).fold(f64::INFINITY, f64::min),
        forms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{Arithmetic, Mode};

    fn close(a: &ConstForm, b: &ConstForm, tol: f64) -> bool {
        a.sub(b).max_modulus() <= tol
    }

    fn identity_tensor(n: usize, r: usize) -> CurvatureTensor {
        CurvatureTensor::from_hermitian_matrix(n, r, &DMatrix::identity(n * r, n * r)).unwrap()
    }

    #[test]
    fn theta_examples() {
        let t = identity_tensor(2, 3);
        let u = DMatrix::from_fn(2, 3, |j, l| C64::new(j as f64 + 1.0, l as f64 - 1.0));
        let frob: f64 = u.iter().map(|c| c.norm_sqr()).sum();
        assert!((t.theta_eval(&u).unwrap() - frob).abs() < 1e-12);
        assert_eq!(CurvatureTensor::zero(2, 3).theta_eval(&u).unwrap(), 0.0);
        // rank one: c = v v^* gives |<v, conj u>|^2
        let v = nalgebra::DVector::from_fn(6, |i, _| C64::new(i as f64 * 0.3, 1.0 - i as f64 * 0.1));
        let rank_one = CurvatureTensor::from_hermitian_matrix(2, 3, &(&v * v.adjoint())).unwrap();
        assert!(rank_one.theta_eval(&u).unwrap() >= 0.0);
        assert!(t.theta_eval(&DMatrix::zeros(3, 2)).is_err());
    }

    #[test]
    fn griffiths_examples() {
        let g = griffiths_min(&identity_tensor(2, 2), 1e-10, 1);
        assert!((g.value - 1.0).abs() < 1e-9);
        assert!(g.griffiths_positive);

        // a negative eigenvalue on the decomposable direction e_1 ⊗ e_2
        let diag = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            C64::new(1.0, 0.0),
            C64::new(-2.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
        ]));
        let t = CurvatureTensor::from_hermitian_matrix(2, 2, &diag).unwrap();
        let g = griffiths_min(&t, 1e-10, 1);
        assert!((g.value + 2.0).abs() < 1e-9);
        assert!(g.xi[0].norm() > 0.999 && g.s[1].norm() > 0.999);

        for seed in 0..5 {
            let t = random_nakano_positive(3, 2, seed);
            let g = griffiths_min(&t, 1e-10, seed);
            assert!(g.griffiths_positive);
        }
    }

    #[test]
    fn nakano_generator() {
        let t = random_nakano_positive(2, 3, 9);
        assert_eq!(t.hermitian_defect(), 0.0);
        let zero = DMatrix::<C64>::zeros(4, 4);
        let t = nakano_from_factor(2, 2, &zero, 0.5).unwrap();
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    for m in 0..2 {
                        let expected = if j == k && l == m { 0.5 } else { 0.0 };
                        assert_eq!(t.get(j, k, l, m), C64::new(expected, 0.0));
                    }
                }
            }
        }
    }

    #[test]
    fn chern_forms_of_scalar_curvature() {
        // Θ = θ0 ⊗ Id with θ0 = dz_1∧dz̄_1 + 2 dz_2∧dz̄_2
        let (n, r) = (2, 2);
        let mut t = CurvatureTensor::zero(n, r);
        for l in 0..r {
            t.set(0, 0, l, l, C64::new(1.0, 0.0));
            t.set(1, 1, l, l, C64::new(2.0, 0.0));
        }
        let base = t.entry_form(0, 0);
        let c1 = chern_form(&t, 1);
        let c2 = chern_form(&t, 2);
        assert!(close(&c1, &base.scale(C64::new(2.0, 0.0)), 1e-14));
        assert!(close(&c2, &base.wedge(&base), 1e-14));
        let s11 = schur_form(&t, &Partition::new(vec![1, 1]).unwrap()).unwrap();
        assert!(close(&s11, &base.wedge(&base).scale(C64::new(3.0, 0.0)), 1e-14));
        assert_eq!(schur_form(&t, &Partition::new(vec![1]).unwrap()).unwrap(), c1);
        for k in 1..=2 {
            assert!(chern_form(&CurvatureTensor::zero(n, r), k).is_zero());
        }
        assert!(chern_form(&t, 3).is_zero());
    }

    #[test]
    fn routes_agree_and_forms_are_real() {
        for seed in 0..6 {
            let t = random_hermitian_tensor(3, 3, seed);
            for k in 0..=3 {
                let a = chern_form_by(&t, k, ChernRoute::Determinant);
                let b = chern_form_by(&t, k, ChernRoute::TraceOfWedge);
                assert!(close(&a, &b, 1e-12));
                assert!(a.reality_defect() < 1e-12);
            }
        }
    }

    #[test]
    fn rank_two_second_chern_form_is_positive() {
        let opts = PositivityOptions { mode: Mode::Semi, arithmetic: Arithmetic::Float { tolerance: 1e-10 }, ..Default::default() };
        for seed in 0..10 {
            let t = random_nakano_positive(2, 2, seed);
            assert!(forms::is_positive(&chern_form(&t, 2), &opts).unwrap().passes());
        }
    }

    #[test]
    fn tensor_json_roundtrip() {
        let t = random_hermitian_tensor(2, 2, 4);
        let json = serde_json::to_string(&t).unwrap();
        let back: CurvatureTensor = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<CurvatureTensor>(r#"{"n":1,"r":1,"c":[[1,1,1,1,1.0,0.5]]}"#).is_err());
        assert!(serde_json::from_str::<CurvatureTensor>(r#"{"n":1,"r":1,"c":[[2,1,1,1,1.0,0.0]]}"#).is_err());
    }

    #[test]
    fn lab_is_deterministic() {
        let opts = PositivityOptions { arithmetic: Arithmetic::Float { tolerance: 1e-10 }, samples: 200, ..Default::default() };
        let a = run_lab(2, 2, 7, 8, &opts).unwrap();
        let b = run_lab(2, 2, 7, 8, &opts).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.griffiths_positive, 8);
        assert!(a.forms.iter().all(|f| f.violated == 0));
    }
}
