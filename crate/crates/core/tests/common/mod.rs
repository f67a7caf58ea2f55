//! Independent oracles: semistandard tableaux, symmetric functions of
//! explicit roots, a naive truncated polynomial ring for products of
//! projective spaces, and a few small numeric helpers.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schurkit::forms::{ConstForm, C64};
use schurkit::ring::{frac, rat, Partition, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let num = rng.gen_range(-9i64..=9);
    let den = rng.gen_range(1i64..=5);
    frac(num, den)
}

pub fn random_roots(rng: &mut ChaCha8Rng, r: usize) -> Vec<Rational> {
    (0..r).map(|_| random_rational(rng)).collect()
}

/// Content vectors of all semistandard Young tableaux of `shape` with entries `0..r`.
pub fn ssyt_contents(shape: &[u32], r: usize) -> Vec<Vec<u32>> {
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(row, &len)| (0..len as usize).map(move |col| (row, col)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&l| vec![0; l as usize]).collect();
    let mut out = Vec::new();
    fn fill(
        idx: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        r: usize,
        out: &mut Vec<Vec<u32>>,
    ) {
        if idx == cells.len() {
            let mut content = vec![0u32; r];
            for row in grid.iter() {
                for &v in row {
                    content[v] += 1;
                }
            }
            out.push(content);
            return;
        }
        let (row, col) = cells[idx];
        let lo_row = if col > 0 { grid[row][col - 1] } else { 0 };
        let lo_col = if row > 0 { grid[row - 1][col] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..r {
            grid[row][col] = v;
            fill(idx + 1, cells, grid, r, out);
        }
    }
    fill(0, &cells, &mut grid, r, &mut out);
    out
}

/// Schur function `s_shape(x_1, ..., x_r)` as a sum over tableaux.
pub fn ssyt_schur(shape: &Partition, roots: &[Rational]) -> Rational {
    ssyt_contents(shape.parts(), roots.len())
        .iter()
        .map(|content| {
            content
                .iter()
                .zip(roots)
                .fold(Rational::one(), |acc, (&e, x)| acc * pow(x, e))
        })
        .sum()
}

pub fn pow(x: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

/// `e_k(x)`.
pub fn elementary(roots: &[Rational], k: usize) -> Rational {
    let mut e = vec![Rational::zero(); k + 1];
    e[0] = Rational::one();
    for x in roots {
        for j in (1..=k).rev() {
            let prev = e[j - 1].clone();
            e[j] += prev * x;
        }
    }
    e[k].clone()
}

/// `h_k(x)`.
pub fn complete(roots: &[Rational], k: usize) -> Rational {
    let mut h = vec![Rational::zero(); k + 1];
    h[0] = Rational::one();
    for x in roots {
        for j in 1..=k {
            let prev = h[j - 1].clone();
            h[j] += prev * x;
        }
    }
    h[k].clone()
}

/// `[e_1(x), ..., e_r(x)]`.
pub fn chern_values(roots: &[Rational]) -> Vec<Rational> {
    (1..=roots.len()).map(|k| elementary(roots, k)).collect()
}

/// Number of standard Young tableaux of the given shape, by the hook length formula.
pub fn hook_length_count(shape: &Partition) -> Rational {
    let parts = shape.parts();
    let conj = shape.conjugate();
    let cols = conj.parts();
    let n: u32 = shape.weight();
    let mut value = (1..=n as i64).fold(Rational::one(), |acc, i| acc * rat(i));
    for (i, &len) in parts.iter().enumerate() {
        for j in 0..len as usize {
            let hook = (len as usize - j - 1) + (cols[j] as usize - i - 1) + 1;
            value /= rat(hook as i64);
        }
    }
    value
}

/// Coefficients of the polynomial of degree `< xs.len()` through the points (Lagrange form).
pub fn lagrange(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    let n = xs.len();
    let mut out = vec![Rational::zero(); n];
    for i in 0..n {
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for j in 0..n {
            if i == j {
                continue;
            }
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * &xs[j];
            }
            basis = next;
            denom *= &xs[i] - &xs[j];
        }
        for (k, b) in basis.iter().enumerate() {
            out[k] += b * &ys[i] / &denom;
        }
    }
    out
}

/// `δ^i` coefficients of `s_shape(x_1 + δ, ..., x_r + δ)`.
pub fn shifted_schur_coefficients(shape: &Partition, roots: &[Rational]) -> Vec<Rational> {
    let d = shape.weight() as i64;
    let xs: Vec<Rational> = (0..=d).map(rat).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|t| {
            let shifted: Vec<Rational> = roots.iter().map(|x| x + t).collect();
            ssyt_schur(shape, &shifted)
        })
        .collect();
    lagrange(&xs, &ys)
}

/// `Q[f_1, ..., f_m] / (f_i^{n_i + 1})`, integration reads off `Π f_i^{n_i}`.
#[derive(Debug, Clone)]
pub struct NaiveRing {
    pub dims: Vec<usize>,
}

pub type NaivePoly = BTreeMap<Vec<u32>, Rational>;

impl NaiveRing {
    pub fn new(dims: &[usize]) -> Self {
        NaiveRing { dims: dims.to_vec() }
    }

    pub fn constant(&self, c: Rational) -> NaivePoly {
        let mut p = NaivePoly::new();
        if !c.is_zero() {
            p.insert(vec![0; self.dims.len()], c);
        }
        p
    }

    pub fn linear(&self, coeffs: &[Rational]) -> NaivePoly {
        let mut p = NaivePoly::new();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; self.dims.len()];
                e[i] = 1;
                p.insert(e, c.clone());
            }
        }
        p
    }

    pub fn add(&self, a: &NaivePoly, b: &NaivePoly) -> NaivePoly {
        let mut out = a.clone();
        for (e, c) in b {
            let entry = out.entry(e.clone()).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                out.remove(e);
            }
        }
        out
    }

    pub fn scale(&self, a: &NaivePoly, c: &Rational) -> NaivePoly {
        a.iter()
            .filter(|_| !c.is_zero())
            .map(|(e, x)| (e.clone(), x * c))
            .collect()
    }

    pub fn mul(&self, a: &NaivePoly, b: &NaivePoly) -> NaivePoly {
        let mut out = NaivePoly::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if e.iter().zip(&self.dims).any(|(&x, &d)| x as usize > d) {
                    continue;
                }
                let entry = out.entry(e.clone()).or_insert_with(Rational::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    out.remove(&e);
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &NaivePoly, k: u32) -> NaivePoly {
        (0..k).fold(self.constant(Rational::one()), |acc, _| self.mul(&acc, a))
    }

    pub fn integrate(&self, a: &NaivePoly) -> Rational {
        let top: Vec<u32> = self.dims.iter().map(|&d| d as u32).collect();
        a.get(&top).cloned().unwrap_or_else(Rational::zero)
    }

    /// Schur class from Chern roots: the tableaux sum of the conjugate shape.
    pub fn schur_from_roots(&self, lambda: &Partition, roots: &[NaivePoly]) -> NaivePoly {
        let shape = lambda.conjugate();
        let mut acc = NaivePoly::new();
        for content in ssyt_contents(shape.parts(), roots.len()) {
            let mut term = self.constant(Rational::one());
            for (x, &e) in roots.iter().zip(&content) {
                term = self.mul(&term, &self.pow(x, e));
            }
            acc = self.add(&acc, &term);
        }
        acc
    }
}

/// `Σ_σ Π_i a[i][σ(i)]`: the integral of `Π_i (Σ_j a_ij f_j)` on `(P^1)^m`.
pub fn permanent(a: &[Vec<Rational>]) -> Rational {
    let m = a.len();
    let mut total = Rational::zero();
    let mut perm: Vec<usize> = (0..m).collect();
    fn rec(k: usize, perm: &mut Vec<usize>, a: &[Vec<Rational>], total: &mut Rational) {
        if k == perm.len() {
            *total += perm
                .iter()
                .enumerate()
                .fold(Rational::one(), |acc, (i, &j)| acc * &a[i][j]);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            rec(k + 1, perm, a, total);
            perm.swap(k, i);
        }
    }
    rec(0, &mut perm, a, &mut total);
    total
}

/// Random unitary matrix (QR of a complex Gaussian matrix).
pub fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> nalgebra::DMatrix<C64> {
    let m = nalgebra::DMatrix::from_fn(n, n, |_, _| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5));
    m.qr().q()
}

/// Pullback of a constant form under `z ↦ U z`: `dz_j ↦ Σ_k U_jk dz_k`.
pub fn pullback(u: &ConstForm, unitary: &nalgebra::DMatrix<C64>) -> ConstForm {
    let n = u.n();
    let dz = |j: usize| {
        let mut f = ConstForm::zero(n, 1, 0);
        for k in 0..n {
            f.add_term(&[k], &[], unitary[(j, k)]);
        }
        f
    };
    let dzbar = |j: usize| {
        let mut f = ConstForm::zero(n, 0, 1);
        for k in 0..n {
            f.add_term(&[], &[k], unitary[(j, k)].conj());
        }
        f
    };
    let (p, q) = u.bidegree();
    let mut out = ConstForm::zero(n, p, q);
    for (i, j, c) in u.terms() {
        let mut term = ConstForm::scalar(n, c);
        for &a in &i {
            term = term.wedge(&dz(a));
        }
        for &b in &j {
            term = term.wedge(&dzbar(b));
        }
        out = out.add(&term);
    }
    out
}

pub fn partitions_fitting(k: u32, r: usize) -> Vec<Partition> {
    Partition::enumerate(k, r as u32)
}
