//! Numeric matrix representations: the two-dimensional reflection
//! representation of the dihedral group, two-dimensional Hecke
//! representations of the braid group, and monodromy representations over
//! truncated series in a formal parameter `h`.
//!
//! The monodromy substitution sends the hyperplane generator attached to
//! the reflection `s w^r` to `h` times its reflection matrix, and the
//! central element `T` to `h` times the sum of all of them; flat group
//! elements then evaluate to matrices of truncated `h`-polynomials, with
//! the group part mapped through the reflection representation.
//!
//! All entries are complex doubles: every check in this module is a
//! tolerance check, so exact cyclotomic arithmetic would buy nothing.

use crate::dihedral::{FlatElem, WElem};
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::scalar::{cx, Cx};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Dense square matrix over complex doubles, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    n: usize,
    a: Vec<Cx>,
}

impl Mat {
    pub fn zeros(n: usize) -> Self {
        Mat { n, a: vec![Cx::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n);
        for i in 0..n {
            m.set(i, i, cx(1.0, 0.0));
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Cx>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "square matrices only");
        Mat { n, a: rows.iter().flatten().copied().collect() }
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        Mat::from_rows(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| cx(x, 0.0)).collect())
                .collect::<Vec<_>>(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Cx {
        self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cx) {
        self.a[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.n, other.n);
        let mut out = Mat::zeros(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                let lik = self.get(i, k);
                if lik.norm() == 0.0 {
                    continue;
                }
                for j in 0..self.n {
                    let v = out.get(i, j) + lik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!(self.n, other.n);
        Mat {
            n: self.n,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!(self.n, other.n);
        Mat {
            n: self.n,
            a: self.a.iter().zip(&other.a).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn scale(&self, c: Cx) -> Mat {
        Mat { n: self.n, a: self.a.iter().map(|x| x * c).collect() }
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        let mut out = Mat::identity(self.n);
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.a.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// Eigenvalues of a 2×2 matrix, ordered by descending magnitude.
    pub fn eig2(&self) -> Result<[Cx; 2]> {
        if self.n != 2 {
            return Err(Error::InvalidInput("eigenvalues implemented for 2x2 only".into()));
        }
        let t = self.get(0, 0) + self.get(1, 1);
        let det = self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0);
        let disc = (t * t - cx(4.0, 0.0) * det).sqrt();
        let half = cx(0.5, 0.0);
        let (r1, r2) = ((t + disc) * half, (t - disc) * half);
        Ok(if r1.norm() >= r2.norm() { [r1, r2] } else { [r2, r1] })
    }
}

/// A matrix representation of the dihedral group, with the hyperplane
/// generators of the infinitesimal algebra represented through the
/// reflections that fix them.
#[derive(Debug, Clone)]
pub struct MatrixRep {
    m: u32,
    dim: usize,
    s: Mat,
    omega: Mat,
}

impl MatrixRep {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn s(&self) -> &Mat {
        &self.s
    }

    pub fn omega(&self) -> &Mat {
        &self.omega
    }

    /// Image of an arbitrary group element through its normal form.
    pub fn w_image(&self, g: &WElem) -> Mat {
        let (e, k) = g.normal_form();
        let rot = self.omega.pow(k as u64);
        if e == 1 {
            self.s.mul(&rot)
        } else {
            rot
        }
    }

    /// Image of the `r`-th hyperplane generator: the reflection fixing
    /// that hyperplane.
    pub fn t_image(&self, r: u32) -> Mat {
        self.w_image(&WElem::reflection(self.m, r as i64))
    }

    /// Image of the central element: the sum over all hyperplanes.
    pub fn t_sum(&self) -> Mat {
        let mut out = Mat::zeros(self.dim);
        for r in 0..self.m {
            out = out.add(&self.t_image(r));
        }
        out
    }
}

/// The two-dimensional reflection representation: `s` and its companion
/// reflection in the standard coordinates, with the rotation as their
/// product.
pub fn reflection_rep(m: u32) -> MatrixRep {
    assert!(m >= 3, "dihedral rank two needs m >= 3");
    let c = 2.0 * (PI / m as f64).cos();
    let s = Mat::from_real_rows(&[vec![-1.0, 0.0], vec![-c, 1.0]]);
    let s_prime = Mat::from_real_rows(&[vec![1.0, -c], vec![0.0, -1.0]]);
    let omega = s_prime.mul(&s);
    MatrixRep { m, dim: 2, s, omega }
}

/// A dihedral-invariant positive form for a representation, obtained by
/// averaging the standard form over the group; every group image is
/// orthogonal for it, so the reflections are self-adjoint.
pub fn invariant_form(rep: &MatrixRep) -> Mat {
    let mut g = Mat::zeros(rep.dimension());
    for w in WElem::all(rep.m()) {
        let img = rep.w_image(&w);
        g = g.add(&img.transpose().mul(&img));
    }
    g.scale(cx(1.0 / (2 * rep.m()) as f64, 0.0))
}

/// The two-dimensional Hecke representation with label `j` and parameter
/// `v`: images of the two braid generators. Both satisfy the quadratic
/// relation `(M + 1)(M - v^2) = 0` and the alternating braid relation.
pub fn hecke_rep(m: u32, j: u32, v: Cx) -> Result<(Mat, Mat)> {
    if m < 3 || j == 0 || j >= m {
        return Err(Error::InvalidInput(format!(
            "hecke label out of range: m = {m}, j = {j}"
        )));
    }
    if v.norm() == 0.0 {
        return Err(Error::InvalidInput("hecke parameter must be nonzero".into()));
    }
    let d = cx(2.0 * (j as f64 * PI / m as f64).cos(), 0.0);
    let v2 = v * v;
    let zero = cx(0.0, 0.0);
    let neg1 = cx(-1.0, 0.0);
    let sigma = Mat::from_rows(&[vec![neg1, zero], vec![v * d, v2]]);
    let tau = Mat::from_rows(&[vec![v2, v * d], vec![zero, neg1]]);
    Ok((sigma, tau))
}

/// The two one-dimensional characters through which the quadratic
/// relation also factors: both generators to `-1`, or both to `v^2`.
pub fn one_dimensional_characters(v: Cx) -> [(Cx, Cx); 2] {
    [(cx(-1.0, 0.0), cx(-1.0, 0.0)), (v * v, v * v)]
}

/// Truncated polynomial in the formal variable `h`; `c[k]` is the
/// coefficient of `h^k` and the length fixes the order.
#[derive(Debug, Clone, PartialEq)]
pub struct HSeries {
    c: Vec<Cx>,
}

impl HSeries {
    pub fn zero(order: u32) -> Self {
        HSeries { c: vec![cx(0.0, 0.0); order as usize + 1] }
    }

    pub fn one(order: u32) -> Self {
        let mut s = HSeries::zero(order);
        s.c[0] = cx(1.0, 0.0);
        s
    }

    pub fn from_coeffs(c: Vec<Cx>) -> Self {
        assert!(!c.is_empty());
        HSeries { c }
    }

    /// `exp(a h)` truncated at the order.
    pub fn exp_line(a: Cx, order: u32) -> Self {
        let mut s = HSeries::zero(order);
        let mut term = cx(1.0, 0.0);
        for k in 0..=order as usize {
            s.c[k] = term;
            term = term * a / cx(k as f64 + 1.0, 0.0);
        }
        s
    }

    pub fn order(&self) -> u32 {
        self.c.len() as u32 - 1
    }

    pub fn coeff(&self, k: u32) -> Cx {
        self.c.get(k as usize).copied().unwrap_or(cx(0.0, 0.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.c.len(), other.c.len());
        HSeries { c: self.c.iter().zip(&other.c).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.c.len(), other.c.len());
        HSeries { c: self.c.iter().zip(&other.c).map(|(x, y)| x - y).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.c.len(), other.c.len());
        let mut out = HSeries::zero(self.order());
        for (i, x) in self.c.iter().enumerate() {
            if x.norm() == 0.0 {
                continue;
            }
            for (j, y) in other.c.iter().enumerate() {
                if i + j >= out.c.len() {
                    break;
                }
                out.c[i + j] += x * y;
            }
        }
        out
    }

    pub fn scale(&self, a: Cx) -> Self {
        HSeries { c: self.c.iter().map(|x| x * a).collect() }
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }
}

/// Square matrix of truncated `h`-polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct HSeriesMatrix {
    n: usize,
    order: u32,
    e: Vec<HSeries>,
}

impl HSeriesMatrix {
    pub fn zeros(n: usize, order: u32) -> Self {
        HSeriesMatrix { n, order, e: vec![HSeries::zero(order); n * n] }
    }

    pub fn identity(n: usize, order: u32) -> Self {
        let mut m = HSeriesMatrix::zeros(n, order);
        for i in 0..n {
            m.e[i * n + i] = HSeries::one(order);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &HSeries {
        &self.e[i * self.n + j]
    }

    /// Adds `mat * h^power` in place.
    fn add_at_power(&mut self, mat: &Mat, power: u32) {
        assert_eq!(mat.dim(), self.n);
        if power > self.order {
            return;
        }
        for i in 0..self.n {
            for j in 0..self.n {
                self.e[i * self.n + j].c[power as usize] += mat.get(i, j);
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        assert_eq!(self.order, other.order);
        let mut out = HSeriesMatrix::zeros(self.n, self.order);
        for i in 0..self.n {
            for k in 0..self.n {
                let lik = self.get(i, k);
                for j in 0..self.n {
                    let prod = lik.mul(other.get(k, j));
                    out.e[i * self.n + j] = out.e[i * self.n + j].add(&prod);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let e = self.e.iter().zip(&other.e).map(|(x, y)| x.add(y)).collect();
        HSeriesMatrix { n: self.n, order: self.order, e }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let e = self.e.iter().zip(&other.e).map(|(x, y)| x.sub(y)).collect();
        HSeriesMatrix { n: self.n, order: self.order, e }
    }

    /// Entrywise product with a scalar series.
    pub fn scale_series(&self, s: &HSeries) -> Self {
        let e = self.e.iter().map(|x| x.mul(s)).collect();
        HSeriesMatrix { n: self.n, order: self.order, e }
    }

    pub fn max_abs(&self) -> f64 {
        self.e.iter().map(|x| x.max_abs()).fold(0.0, f64::max)
    }

    /// The constant term as a numeric matrix.
    pub fn h0(&self) -> Mat {
        let mut out = Mat::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.get(i, j).coeff(0));
            }
        }
        out
    }

    pub fn trace(&self) -> HSeries {
        let mut t = HSeries::zero(self.order);
        for i in 0..self.n {
            t = t.add(self.get(i, i));
        }
        t
    }

    /// Eigenvalues of a 2×2 series matrix as truncated series, lifted
    /// degree by degree from the constant-term spectrum; requires the two
    /// constant-term eigenvalues to be distinct.
    pub fn spectrum2(&self) -> Result<[HSeries; 2]> {
        if self.n != 2 {
            return Err(Error::InvalidInput("series spectrum implemented for 2x2 only".into()));
        }
        let t = self.trace();
        let det = self
            .get(0, 0)
            .mul(self.get(1, 1))
            .sub(&self.get(0, 1).mul(self.get(1, 0)));
        let roots0 = self.h0().eig2()?;
        if (roots0[0] - roots0[1]).norm() < 1e-9 {
            return Err(Error::InvalidInput(
                "series eigenvalue lift needs distinct constant-term roots".into(),
            ));
        }
        let mut out = Vec::with_capacity(2);
        for &x0 in &roots0 {
            let mut x = HSeries::zero(self.order);
            x.c[0] = x0;
            // coefficient of h^n in x^2 - t x + det = 0 solved for x_n:
            // (2 x_0 - t_0) x_n = -(sum_{a+b=n, a,b>=1} x_a x_b
            //                       - sum_{a>=1} t_a x_{n-a} + det_n)
            let pivot = cx(2.0, 0.0) * x0 - t.coeff(0);
            for n in 1..=self.order as usize {
                let mut rhs = det.coeff(n as u32);
                for a in 1..n {
                    rhs += x.c[a] * x.c[n - a];
                }
                for a in 1..=n {
                    rhs -= t.coeff(a as u32) * x.c[n - a];
                }
                x.c[n] = -rhs / pivot;
            }
            out.push(x);
        }
        Ok([out[0].clone(), out[1].clone()])
    }
}

/// Images of the two braid generators as matrices of truncated
/// `h`-polynomials.
#[derive(Debug, Clone)]
pub struct MonodromyImages {
    pub sigma: HSeriesMatrix,
    pub tau: HSeriesMatrix,
}

/// Evaluates one flat group element to a matrix of truncated
/// `h`-polynomials: the group part maps through the representation, each
/// algebra letter contributes one power of `h` times the matrix of its
/// reduced generator, and the central generator contributes `h` times the
/// sum over all hyperplanes.
pub fn monodromy_matrix(x: &FlatElem<Cx>, rep: &MatrixRep, order: u32) -> Result<HSeriesMatrix> {
    if rep.m() != x.m() {
        return Err(Error::InvalidInput("representation and element sizes differ".into()));
    }
    if order > x.trunc() {
        return Err(Error::InvalidInput(format!(
            "h-order {order} exceeds the algebra truncation {}",
            x.trunc()
        )));
    }
    let m = rep.m();
    let dim = rep.dimension();
    let t_sum = rep.t_sum();
    // the reduced letter images: hyperplane matrix minus its central share
    let reduced: Vec<Mat> = (0..m - 1)
        .map(|r| rep.t_image(r).sub(&t_sum.scale(cx(1.0 / m as f64, 0.0))))
        .collect();
    let mut out = HSeriesMatrix::zeros(dim, order);
    for (g, series) in x.parts() {
        let w_mat = rep.w_image(g);
        for (mono, coeff) in series.terms() {
            let deg = mono.word.len() as u32 + mono.tpow;
            if deg > order {
                continue;
            }
            let mut mat = Mat::identity(dim);
            for &l in &mono.word {
                mat = mat.mul(&reduced[l as usize]);
            }
            for _ in 0..mono.tpow {
                mat = mat.mul(&t_sum);
            }
            out.add_at_power(&w_mat.mul(&mat).scale(*coeff), deg);
        }
    }
    Ok(out)
}

/// The monodromy representation attached to a morphism: generator images
/// pushed through the representation with the `h`-grading tracking the
/// algebra grading.
pub fn monodromy_rep(
    mor: &Morphism<Cx>,
    rep: &MatrixRep,
    order: u32,
) -> Result<MonodromyImages> {
    Ok(MonodromyImages {
        sigma: monodromy_matrix(mor.sigma(), rep, order)?,
        tau: monodromy_matrix(mor.tau(), rep, order)?,
    })
}

/// Spectrum of the product `a b a` of the two eigen-projectors, plus the
/// stated unitarizability predicate.
#[derive(Debug, Clone, Copy)]
pub struct AbaReport {
    /// Eigenvalues ordered by descending magnitude (one is always zero).
    pub spectrum: [Cx; 2],
    /// The stated angular condition `cos(alpha) > -1/2`.
    pub unitarizable: bool,
}

/// Builds the projectors onto the `(-1)`-eigenspaces of the two Hecke
/// generator images at parameter `v = e^{i alpha / 2}` (each parallel to
/// the other eigenspace) and returns the numeric spectrum of `a b a`
/// together with the angular predicate.
pub fn aba_obstruction(m: u32, j: u32, alpha: f64) -> Result<AbaReport> {
    if (1.0 + 2.0 * alpha.cos()).abs() < 1e-12 {
        return Err(Error::InvalidInput(
            "angular parameter on the stated pole line; boundary case".into(),
        ));
    }
    let v = cx(0.0, alpha / 2.0).exp();
    let v2 = v * v;
    if (v2 + cx(1.0, 0.0)).norm() < 1e-12 {
        return Err(Error::InvalidInput(
            "projectors undefined where the parameter squares to -1".into(),
        ));
    }
    let (sigma, tau) = hecke_rep(m, j, v)?;
    // spectral projector onto the (-1)-eigenspace parallel to the other
    // eigenspace: (M - v^2) / (-1 - v^2)
    let denom = cx(-1.0, 0.0) - v2;
    let proj = |mat: &Mat| {
        mat.sub(&Mat::identity(2).scale(v2)).scale(cx(1.0, 0.0) / denom)
    };
    let a = proj(&sigma);
    let b = proj(&tau);
    let aba = a.mul(&b).mul(&a);
    Ok(AbaReport {
        spectrum: aba.eig2()?,
        unitarizable: alpha.cos() > -0.5,
    })
}

/// Batch sweep over angular parameters; pole points come back as `None`.
pub fn aba_sweep(m: u32, j: u32, alphas: &[f64]) -> Vec<(f64, Option<AbaReport>)> {
    alphas
        .par_iter()
        .map(|&alpha| (alpha, aba_obstruction(m, j, alpha).ok()))
        .collect()
}
