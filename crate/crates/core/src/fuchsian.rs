//! Formal and numerical solutions of a regular singular ODE with values in
//! the truncated algebra: `G'(x) = (A/x + C(x)) G(x)` with `A` of degree 1
//! and `C` analytic with algebra valuation >= 1.
//!
//! The normalized solution is sought as `G(x) = P(x) x^A` with
//! `P(x) = sum_n p_n x^n`, `p_0 = 1`. Substituting gives
//! `x P' + [P, A] = x C(x) P`, whose x^n coefficient is the linear equation
//!
//! ```text
//! (n - ad A) p_n = sum_{r+s = n-1} c_r p_s        (n >= 1)
//! ```
//!
//! The x-power offset on the right comes from the literal product with the
//! polynomial `x C(x)` (index conventions are easy to drop; the
//! [`FuchsProblem::ode_residual`] arbiter recomputes the original equation
//! term by term and is the ground truth for the offset used here). Since
//! `ad A` raises algebra degree by one, `(n - ad A)` inverts by the finite
//! Neumann sum `sum_j (ad A)^j / n^{j+1}`, which terminates within the
//! truncation order.
//!
//! Evaluation multiplies the truncated Taylor polynomial by
//! `x^A = exp(A log x)`; [`LogBranch`] selects between the real logarithm
//! and its continuation across the negative real axis from above (branch
//! cut on the negative imaginary axis), for which `log(-x) = log(x) + i pi`
//! and hence `G` continued to `x < 0` picks up the one-sided monodromy
//! factor `exp(i pi A)`.

use crate::error::{Error, Result};
use crate::scalar::{Coeff, Cx};
use crate::series::{bracket, GSeries};
use num_traits::One;
use rayon::prelude::*;

/// Safety factor applied to the caller-supplied distance to the nearest
/// singularity when guarding an evaluation point.
pub const RADIUS_SAFETY: f64 = 0.5;

/// Relative contribution of the last retained x-term above which an
/// evaluation is rejected as unconverged.
pub const TAIL_CUTOFF: f64 = 1e-12;

/// A regular singular problem `G' = (A/x + C(x)) G` at truncated-algebra
/// values: the residue `A` (homogeneous of degree 1, `T`-free) and the
/// Taylor coefficients `c_0 ... c_K` of the analytic part, each of algebra
/// valuation >= 1.
#[derive(Debug, Clone)]
pub struct FuchsProblem<C: Coeff> {
    a: GSeries<C>,
    c: Vec<GSeries<C>>,
}

impl<C: Coeff> FuchsProblem<C> {
    /// Validates the shape: `a` homogeneous of degree 1 without `T`, every
    /// `c_k` compatible with `a` and of valuation >= 1, at least one Taylor
    /// coefficient.
    pub fn new(a: GSeries<C>, c: Vec<GSeries<C>>) -> Result<Self> {
        for (mono, _) in a.terms() {
            if mono.degree() != 1 || mono.tpow != 0 {
                return Err(Error::InvalidInput(
                    "residue must be homogeneous of degree 1 without the central generator".into(),
                ));
            }
        }
        if c.is_empty() {
            return Err(Error::InvalidInput(
                "need at least one Taylor coefficient of the analytic part".into(),
            ));
        }
        for (k, ck) in c.iter().enumerate() {
            if ck.m() != a.m() || ck.trunc() != a.trunc() {
                return Err(Error::Incompatible(format!(
                    "Taylor coefficient {k} does not match the residue's algebra"
                )));
            }
            if !ck.constant_term().is_zero() {
                return Err(Error::InvalidInput(format!(
                    "Taylor coefficient {k} has a constant term (valuation must be >= 1)"
                )));
            }
        }
        Ok(FuchsProblem { a, c })
    }

    /// The degree-1 residue at the singular point.
    pub fn residue(&self) -> &GSeries<C> {
        &self.a
    }

    /// Taylor coefficients of the analytic part, `c_0 ... c_K`.
    pub fn coefficients(&self) -> &[GSeries<C>] {
        &self.c
    }

    /// Highest retained x-order `K`.
    pub fn xorder(&self) -> u32 {
        (self.c.len() - 1) as u32
    }

    /// `(n - ad A)^{-1}` applied to `rhs` by the finite Neumann sum
    /// `sum_j (ad A)^j / n^{j+1}`; `ad A` raises degree, so the loop runs at
    /// most `trunc - valuation(rhs)` extra rounds before the iterate dies.
    fn invert_shifted_ad(&self, n: i64, rhs: &GSeries<C>) -> GSeries<C> {
        let mut acc = GSeries::zero(self.a.m(), self.a.trunc());
        let mut term = rhs.clone();
        let n_inv = C::from_ratio(1, n);
        let mut weight = n_inv.clone();
        let mut rounds = 0u32;
        while !term.is_zero() {
            acc = &acc + &term.scale(&weight);
            term = bracket(&self.a, &term);
            weight = weight * n_inv.clone();
            rounds += 1;
            assert!(rounds <= self.a.trunc() + 1, "nilpotency bound exceeded");
        }
        acc
    }

    /// The Taylor coefficients `p_0 ... p_K` of the normalized solution:
    /// `p_0 = 1` and each `p_n` solves `(n - ad A) p_n = sum_{r+s=n-1} c_r p_s`.
    /// Deterministic: the result is a function of the problem data alone.
    pub fn solve_p(&self) -> Vec<GSeries<C>> {
        let k_max = self.xorder() as usize;
        let mut p = Vec::with_capacity(k_max + 1);
        p.push(GSeries::one(self.a.m(), self.a.trunc()));
        for n in 1..=k_max {
            let mut rhs = GSeries::zero(self.a.m(), self.a.trunc());
            for r in 0..n {
                rhs = &rhs + &(&self.c[r] * &p[n - 1 - r]);
            }
            p.push(self.invert_shifted_ad(n as i64, &rhs));
        }
        p
    }

    /// Independent arbiter: the x^n coefficients, `n = 0 ... K`, of
    /// `x P' + [P, A] - x C(x) P`, extracted directly from the original
    /// equation with the x-shift entering only through the literal product
    /// with `x C(x)`. A correct solution makes every entry vanish (exactly
    /// in exact mode, up to roundoff otherwise).
    pub fn ode_residual(&self, p: &[GSeries<C>]) -> Vec<GSeries<C>> {
        (0..p.len())
            .into_par_iter()
            .map(|n| {
                let mut res = p[n].scale(&C::from_ratio(n as i64, 1));
                res = &res + &bracket(&p[n], &self.a);
                // x C(x) has Taylor coefficients (0, c_0, c_1, ...)
                for r in 1..=n {
                    if r - 1 < self.c.len() {
                        res = &res - &(&self.c[r - 1] * &p[n - r]);
                    }
                }
                res
            })
            .collect()
    }

    /// The same equation after the change of variable `x -> -x`: the
    /// analytic part flips to `-C(-x)`, i.e. `c_k -> (-1)^{k+1} c_k`, and
    /// the solution normalized at the other side of the singular point is
    /// the positive-side solution of this reflected problem. Its
    /// coefficients relate to the original ones by `q_n = (-1)^n p_n`,
    /// which is the coefficient-level form of the one-sided monodromy
    /// relation `G(continued to x < 0) = (reflected solution) exp(i pi A)`.
    pub fn reflected(&self) -> FuchsProblem<C> {
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(k, ck)| {
                if k % 2 == 0 {
                    ck.scale(&-C::one())
                } else {
                    ck.clone()
                }
            })
            .collect();
        FuchsProblem { a: self.a.clone(), c }
    }
}

/// Which logarithm `x^A = exp(A log x)` uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogBranch {
    /// The real logarithm; the evaluation point must be on the positive
    /// real axis.
    Real,
    /// The continuation of the real logarithm across the negative real
    /// axis from above: branch cut on the negative imaginary axis,
    /// `log(-x) = log(x) + i pi` for `x > 0`.
    Principal,
}

/// The continued logarithm of [`LogBranch::Principal`]: argument taken in
/// `(-pi/2, 3 pi/2]`, matching the cut on the negative imaginary axis.
fn continued_log(x: Cx) -> Cx {
    let mut arg = x.im.atan2(x.re);
    if arg <= -std::f64::consts::FRAC_PI_2 {
        arg += 2.0 * std::f64::consts::PI;
    }
    Cx::new(x.norm().ln(), arg)
}

/// Evaluates the normal form `sum_n p_n x^n * exp(A log x)` at a scalar
/// point with the requested branch. Convergence control is the caller's
/// job (see [`check_convergence`]); this routine evaluates literally.
pub fn eval_g(p: &[GSeries<Cx>], a: &GSeries<Cx>, x: Cx, branch: LogBranch) -> GSeries<Cx> {
    assert!(!p.is_empty(), "empty coefficient list");
    let log_x = match branch {
        LogBranch::Real => {
            assert!(
                x.im == 0.0 && x.re > 0.0,
                "real-branch evaluation needs a positive real point"
            );
            Cx::new(x.re.ln(), 0.0)
        }
        LogBranch::Principal => continued_log(x),
    };
    let mut taylor = GSeries::zero(p[0].m(), p[0].trunc());
    let mut xn = Cx::one();
    for pn in p {
        taylor = &taylor + &pn.scale(&xn);
        xn *= x;
    }
    let power = a.scale(&log_x).exp().expect("degree-1 residue exponentiates");
    &taylor * &power
}

/// Relative contribution of the last retained x-term at radius `r`
/// (relative to the unit leading term `p_0 = 1`).
pub fn tail_magnitude(p: &[GSeries<Cx>], r: f64) -> f64 {
    match p.split_last() {
        Some((last, rest)) => last.max_magnitude() * r.powi(rest.len() as i32),
        None => 0.0,
    }
}

/// Convergence guard for evaluations: the point must sit within
/// [`RADIUS_SAFETY`] times the caller-supplied distance to the nearest
/// singularity, and the last retained x-term must contribute less than
/// [`TAIL_CUTOFF`] relative magnitude.
pub fn check_convergence(p: &[GSeries<Cx>], x: Cx, radius: f64) -> Result<()> {
    let r = x.norm();
    if r > RADIUS_SAFETY * radius {
        return Err(Error::Convergence(format!(
            "evaluation point |x| = {r:.6} outside the safe disc {:.6}",
            RADIUS_SAFETY * radius
        )));
    }
    let tail = tail_magnitude(p, r);
    if tail >= TAIL_CUTOFF {
        return Err(Error::Convergence(format!(
            "last x-term contributes {tail:.3e} relative, above {TAIL_CUTOFF:.0e}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{cx, rat, Rat};
    use crate::tensor::is_grouplike;
    use std::f64::consts::PI;

    /// Two-point problem on the algebra with two free generators: residue
    /// t0, analytic part t1/(x - 1), i.e. every Taylor coefficient -t1.
    fn two_point(trunc: u32, xorder: usize) -> FuchsProblem<Rat> {
        let t1 = GSeries::<Rat>::gen(3, trunc, 1);
        let c = (0..=xorder).map(|_| t1.scale(&rat(-1, 1))).collect();
        FuchsProblem::new(GSeries::gen(3, trunc, 0), c).unwrap()
    }

    fn two_point_cx(trunc: u32, xorder: usize) -> FuchsProblem<Cx> {
        let t1 = GSeries::<Cx>::gen(3, trunc, 1);
        let c = (0..=xorder).map(|_| t1.scale(&cx(-1.0, 0.0))).collect();
        FuchsProblem::new(GSeries::gen(3, trunc, 0), c).unwrap()
    }

    #[test]
    fn zero_analytic_part_gives_pure_power() {
        let zero = GSeries::<Rat>::zero(4, 3);
        let prob = FuchsProblem::new(GSeries::gen(4, 3, 2), vec![zero; 5]).unwrap();
        let p = prob.solve_p();
        assert_eq!(p.len(), 5);
        assert_eq!(p[0], GSeries::one(4, 3));
        for pn in &p[1..] {
            assert!(pn.is_zero());
        }
    }

    #[test]
    fn two_point_first_coefficient_is_nested_brackets() {
        // (1 - ad t0) p_1 = -t1 resolves by the Neumann sum to
        // -t1 + [t1, t0] - [[t1, t0], t0] through degree 3
        let prob = two_point(3, 4);
        let p = prob.solve_p();
        let t0 = GSeries::<Rat>::gen(3, 3, 0);
        let t1 = GSeries::<Rat>::gen(3, 3, 1);
        let b1 = bracket(&t1, &t0);
        let expect = &(&t1.scale(&rat(-1, 1)) + &b1) - &bracket(&b1, &t0);
        assert_eq!(p[1], expect);
        // its degree-2 component alone
        assert_eq!(p[1].degree_component(2), b1);
    }

    #[test]
    fn solution_is_deterministic() {
        let prob = two_point(4, 6);
        assert_eq!(prob.solve_p(), prob.solve_p());
    }

    #[test]
    fn neumann_inversion_inverts() {
        let prob = two_point(4, 2);
        let t0 = GSeries::<Rat>::gen(3, 4, 0);
        let t1 = GSeries::<Rat>::gen(3, 4, 1);
        let rhs = &t1 + &bracket(&t0, &t1).scale(&rat(2, 3));
        for n in [1i64, 2, 5] {
            let y = prob.invert_shifted_ad(n, &rhs);
            let back = &y.scale(&rat(n, 1)) - &bracket(&t0, &y);
            assert_eq!(back, rhs, "n = {n}");
        }
    }

    #[test]
    fn ode_residual_vanishes_exactly_and_detects_corruption() {
        let prob = two_point(4, 8);
        let mut p = prob.solve_p();
        for (n, res) in prob.ode_residual(&p).iter().enumerate() {
            assert!(res.is_zero(), "residual at x-order {n}");
        }
        // the arbiter localizes a corrupted coefficient at its own x-order
        p[3] = &p[3] + &GSeries::gen(3, 4, 0);
        let res = prob.ode_residual(&p);
        assert!(res[..3].iter().all(|r| r.is_zero()));
        assert!(!res[3].is_zero());
    }

    #[test]
    fn reflection_flips_coefficient_parity() {
        // the reflected problem's solution must be q_n = (-1)^n p_n — the
        // coefficient-level one-sided monodromy relation
        let prob = two_point(4, 6);
        let p = prob.solve_p();
        let q = prob.reflected().solve_p();
        for (n, (pn, qn)) in p.iter().zip(&q).enumerate() {
            let sign = if n % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
            assert_eq!(*qn, pn.scale(&sign), "x-order {n}");
        }
    }

    #[test]
    fn eval_at_one_with_zero_analytic_part_is_identity() {
        let zero = GSeries::<Cx>::zero(3, 3);
        let prob = FuchsProblem::new(GSeries::gen(3, 3, 0), vec![zero; 3]).unwrap();
        let p = prob.solve_p();
        let g = eval_g(&p, prob.residue(), cx(1.0, 0.0), LogBranch::Real);
        assert!(g.eq_within(&GSeries::one(3, 3), 1e-14));
    }

    #[test]
    fn eval_outputs_are_grouplike() {
        // primitive residue and primitive Taylor coefficients propagate
        // grouplikeness to the evaluated solution
        let prob = two_point_cx(4, 32);
        let p = prob.solve_p();
        for x in [0.3, 0.45] {
            let g = eval_g(&p, prob.residue(), cx(x, 0.0), LogBranch::Real);
            assert!(is_grouplike(&g, 1e-9), "x = {x}");
        }
    }

    #[test]
    fn continued_log_branch() {
        // on the negative real axis: log(-x) = log(x) + i pi
        let l = continued_log(cx(-0.25, 0.0));
        assert!((l.re - 0.25f64.ln()).abs() < 1e-15);
        assert!((l.im - PI).abs() < 1e-15);
        // just below the negative real axis the argument continues past pi
        assert!(continued_log(cx(-0.1, -0.05)).im > PI);
        // fourth quadrant reached from positive reals keeps a small
        // negative argument
        let l4 = continued_log(cx(0.1, -0.05));
        assert!(l4.im < 0.0 && l4.im > -std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn continuation_crosses_the_cut_with_the_monodromy_factor() {
        // continued to x < 0, the positive-side solution equals the
        // reflected-side solution times exp(i pi A)
        let prob = two_point_cx(4, 32);
        let p = prob.solve_p();
        let q = prob.reflected().solve_p();
        let y = 0.25;
        let lhs = eval_g(&p, prob.residue(), cx(-y, 0.0), LogBranch::Principal);
        let minus_side = eval_g(&q, prob.residue(), cx(y, 0.0), LogBranch::Real);
        let factor = prob.residue().scale(&cx(0.0, PI)).exp().unwrap();
        let rhs = &minus_side * &factor;
        assert!(lhs.eq_within(&rhs, 1e-12));
    }

    #[test]
    fn convergence_guard() {
        let prob = two_point_cx(3, 40);
        let p = prob.solve_p();
        assert!(check_convergence(&p, cx(0.3, 0.0), 1.0).is_ok());
        // outside the safe disc
        assert!(matches!(
            check_convergence(&p, cx(0.6, 0.0), 1.0),
            Err(Error::Convergence(_))
        ));
        // tail too fat: few terms at a point near the edge of the safe disc
        let short = &p[..4];
        assert!(matches!(
            check_convergence(short, cx(0.49, 0.0), 1.0),
            Err(Error::Convergence(_))
        ));
    }

    #[test]
    fn validation_rejects_bad_problems() {
        let t0 = GSeries::<Rat>::gen(3, 3, 0);
        let t1 = GSeries::<Rat>::gen(3, 3, 1);
        let ok = vec![t1.clone()];
        // degree-2 residue
        assert!(FuchsProblem::new(&t0 * &t0, ok.clone()).is_err());
        // residue involving the central generator
        assert!(FuchsProblem::new(GSeries::t_sym(3, 3), ok.clone()).is_err());
        // constant term in a Taylor coefficient
        let bad = &t1 + &GSeries::one(3, 3);
        assert!(FuchsProblem::new(t0.clone(), vec![bad]).is_err());
        // no Taylor coefficients at all
        assert!(FuchsProblem::new(t0.clone(), vec![]).is_err());
        // mismatched algebra
        assert!(FuchsProblem::new(t0, vec![GSeries::gen(4, 3, 1)]).is_err());
    }
}
