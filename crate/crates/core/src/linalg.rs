//! Exact linear algebra over `Q` and `Q(i)`: signatures by congruence,
//! characteristic polynomials, Descartes sign counts, interpolation.

use num_complex::Complex;
use num_traits::{One, Signed, Zero};

use crate::ring::Rational;

/// Gaussian rational `a + b i`.
pub type GaussRational = Complex<Rational>;

/// Inertia `(n_+, n_0, n_-)` of a real symmetric matrix.
pub type Signature = (usize, usize, usize);

/// Signature of a symmetric rational matrix by symmetric Gaussian elimination.
///
/// Each step is a congruence `A ↦ P A Pᵀ`; when every remaining diagonal entry
/// vanishes but some off-diagonal `a_ij ≠ 0`, row/column `j` is added to `i`
/// first, producing the nonzero pivot `2 a_ij`.
pub fn symmetric_signature(matrix: &[Vec<Rational>]) -> Signature {
    let n = matrix.len();
    assert!(
        matrix.iter().all(|row| row.len() == n),
        "signature needs a square matrix"
    );
    for i in 0..n {
        for j in 0..n {
            assert_eq!(matrix[i][j], matrix[j][i], "signature needs a symmetric matrix");
        }
    }
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let pair = active.iter().flat_map(|&i| active.iter().map(move |&j| (i, j))).find(|&(i, j)| i != j && !a[i][j].is_zero());
                let Some((i, j)) = pair else { break };
                // row_i += row_j, col_i += col_j
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                i
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &d;
            for &j in &active {
                let v = &f * &a[p][j];
                a[i][j] -= v;
            }
        }
        for &i in &active {
            a[i][p] = Rational::zero();
            a[p][i] = Rational::zero();
        }
    }
    (pos, n - pos - neg, neg)
}

/// Coefficients of `det(x I - A)` from the constant term up (monic, degree `n`),
/// by the Faddeev–LeVerrier recursion.
pub fn characteristic_polynomial(a: &[Vec<GaussRational>]) -> Vec<GaussRational> {
    let n = a.len();
    let zero = GaussRational::new(Rational::zero(), Rational::zero());
    let one = GaussRational::new(Rational::one(), Rational::zero());
    let mut coeffs = vec![zero.clone(); n + 1];
    coeffs[n] = one.clone();
    let mut m: Vec<Vec<GaussRational>> = vec![vec![zero.clone(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = matmul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = &row[i] + &coeffs[n - k + 1];
        }
        m = next;
        let am = matmul(a, &m);
        let trace = (0..n).fold(zero.clone(), |acc, i| acc + am[i][i].clone());
        let k_rat = Rational::from_integer((k as i64).into());
        coeffs[n - k] = GaussRational::new(-&trace.re / &k_rat, -&trace.im / &k_rat);
    }
    coeffs
}

fn matmul(a: &[Vec<GaussRational>], b: &[Vec<GaussRational>]) -> Vec<Vec<GaussRational>> {
    let n = a.len();
    let zero = GaussRational::new(Rational::zero(), Rational::zero());
    let mut out = vec![vec![zero; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].re.is_zero() && a[i][k].im.is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
            }
        }
    }
    out
}

/// Number of positive, zero and negative roots of a real-rooted polynomial
/// (coefficients from the constant term up), by Descartes' rule of signs.
///
/// Exact for characteristic polynomials of Hermitian matrices.
pub fn real_rooted_sign_counts(coeffs: &[Rational]) -> Signature {
    let zero_roots = coeffs.iter().take_while(|c| c.is_zero()).count();
    let rest = &coeffs[zero_roots..];
    let changes = |flip: bool| {
        let signs: Vec<bool> = rest
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| c.is_positive() ^ (flip && i % 2 == 1))
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    (changes(false), zero_roots, changes(true))
}

/// Eigenvalue sign counts `(n_+, n_0, n_-)` of a Hermitian Gaussian-rational matrix.
pub fn hermitian_inertia(a: &[Vec<GaussRational>]) -> Signature {
    let cp = characteristic_polynomial(a);
    debug_assert!(cp.iter().all(|c| c.im.is_zero()), "Hermitian matrices have real characteristic polynomials");
    let real: Vec<Rational> = cp.into_iter().map(|c| c.re).collect();
    real_rooted_sign_counts(&real)
}

/// Coefficients (constant term first) of the polynomial of degree `< xs.len()`
/// through the points `(xs[i], ys[i])`; Newton divided differences.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut dd: Vec<Rational> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner-style expansion of the Newton form
    let mut coeffs = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        // coeffs := coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![Rational::zero(); n];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += c;
            }
            next[k] -= c * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    while coeffs.len() > 1 && coeffs.last().map(Zero::is_zero).unwrap_or(false) {
        coeffs.pop();
    }
    coeffs
}

/// Nonnegative least squares `min ‖Ax - b‖` subject to `x ≥ 0` (Lawson–Hanson active set).
pub fn nnls(a: &nalgebra::DMatrix<f64>, b: &nalgebra::DVector<f64>) -> nalgebra::DVector<f64> {
    use nalgebra::{DMatrix, DVector};
    let (m, n) = a.shape();
    let mut x = DVector::<f64>::zeros(n);
    let mut passive = vec![false; n];
    let tol = 1e-12 * (1.0f64.max(a.norm() * b.norm()));
    let solve_passive = |passive: &[bool]| -> DVector<f64> {
        let cols: Vec<usize> = (0..n).filter(|&j| passive[j]).collect();
        let sub = DMatrix::from_fn(m, cols.len(), |r, c| a[(r, cols[c])]);
        let z = sub.svd(true, true).solve(b, 1e-14).unwrap_or_else(|_| DVector::zeros(cols.len()));
        let mut full = DVector::zeros(n);
        for (c, &j) in cols.iter().enumerate() {
            full[j] = z[c];
        }
        full
    };
    for _ in 0..3 * n.max(1) {
        let w = a.transpose() * (b - a * &x);
        let candidate = (0..n)
            .filter(|&j| !passive[j] && w[j] > tol)
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(j) = candidate else { break };
        passive[j] = true;
        loop {
            let s = solve_passive(&passive);
            if (0..n).all(|i| !passive[i] || s[i] > 0.0) {
                x = s;
                break;
            }
            let alpha = (0..n)
                .filter(|&i| passive[i] && s[i] <= 0.0)
                .map(|i| x[i] / (x[i] - s[i]))
                .fold(f64::INFINITY, f64::min);
            x = &x + (s - &x) * alpha;
            for i in 0..n {
                if passive[i] && x[i] <= 1e-15 {
                    passive[i] = false;
                    x[i] = 0.0;
                }
            }
        }
    }
    x
}
