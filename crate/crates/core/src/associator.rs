//! Associator candidates and the equation suite that defines them.
//!
//! A candidate is a grouplike-looking `T`-free series `Phi` with constant
//! term 1, together with exponents attached to the generators: `lambda` on
//! even indices, `mu` on odd ones (`mu = lambda` unless set separately,
//! which only makes sense for even `m` where even- and odd-index
//! generators form distinct orbits of the group action).
//!
//! The defining equations:
//! - duality: odd `m`, `(s w^{(m-1)/2} . Phi) Phi = 1`; even `m` (default
//!   variant), `flip(Phi) Phi = 1`.
//! - half-turn: odd `m`, the product of all `m` rotated copies of
//!   `P = Phi e^{lambda t_1}` in the interleaved order below equals 1;
//!   even `m`, the product of the `m/2` rotated copies of
//!   `xi = Phi e^{mu t_1} (ws . Phi^{-1}) e^{lambda t_2}` equals 1.
//!
//! On the `mu`/`lambda` placement inside `xi`: it is the unique assignment
//! for which `tau sigma = w (w^{-1} . xi)` holds with `sigma = s e^{lambda
//! t_0}`, `tau = Phi (ws) e^{mu t_1} Phi^{-1}`, and for which the
//! parity-split scaling `(alpha, beta)` sends exponents `(lambda, mu)` to
//! `(alpha lambda, beta mu)`.
//!
//! All ascending-index products here multiply left to right.

use crate::dihedral::{act, flip, WElem};
use crate::error::{Error, Result};
use crate::scalar::Coeff;
use crate::series::GSeries;
use crate::tensor::{coproduct, is_grouplike, tensor_product};
use serde::{Deserialize, Serialize};

/// Summary of one checked equation, shaped for reporting.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct VerifyReport {
    pub equation: String,
    pub pass: bool,
    pub first_bad_degree: Option<u32>,
    pub residual_norm: Option<f64>,
}

/// A checked equation with its full residual (left side minus 1), kept so
/// callers can inspect which degree failed and by how much.
pub struct EquationCheck<C: Coeff> {
    pub name: String,
    pub residual: GSeries<C>,
    pub tol: f64,
}

impl<C: Coeff> EquationCheck<C> {
    pub fn pass(&self) -> bool {
        self.first_bad_degree().is_none()
    }

    pub fn first_bad_degree(&self) -> Option<u32> {
        self.residual.valuation(self.tol)
    }

    pub fn residual_norm(&self) -> f64 {
        self.residual.max_magnitude()
    }

    /// Lie projection (Dynkin map over the degree) of the lowest
    /// nonvanishing residual component; `None` when the residual is zero.
    /// For a grouplike-by-construction candidate whose equations hold below
    /// that degree, the component is primitive and the projection returns
    /// it unchanged, so this is what a degree-by-degree solver consumes.
    pub fn lie_projection(&self) -> Option<GSeries<C>> {
        let n = self.first_bad_degree()?;
        let component = self.residual.degree_component(n);
        let d = crate::lyndon::dynkin(&component).ok()?;
        Some(d.scale(&C::from_ratio(1, n as i64)))
    }

    pub fn report(&self) -> VerifyReport {
        VerifyReport {
            equation: self.name.clone(),
            pass: self.pass(),
            first_bad_degree: self.first_bad_degree(),
            residual_norm: Some(self.residual_norm()),
        }
    }
}

/// An associator candidate over the coefficient field `C`.
#[derive(Clone, Debug)]
pub struct Candidate<C: Coeff> {
    m: u32,
    trunc: u32,
    lambda: C,
    mu: C,
    phi: GSeries<C>,
    /// Even `m` only: check the flip-duality equation (on by default; the
    /// plain variant without any duality constraint is kept reachable).
    flip_duality: bool,
}

impl<C: Coeff> Candidate<C> {
    pub fn new(phi: GSeries<C>, lambda: C) -> Result<Self> {
        Self::with_exponents(phi, lambda.clone(), lambda)
    }

    /// Candidate with distinct even-/odd-index exponents (even `m` only).
    pub fn with_exponents(phi: GSeries<C>, lambda: C, mu: C) -> Result<Self> {
        if !phi.is_t_free(0.0) {
            return Err(Error::InvalidInput(
                "candidate series must be T-free".into(),
            ));
        }
        if phi.constant_term() != C::one() {
            return Err(Error::InvalidInput(
                "candidate series must have constant term 1".into(),
            ));
        }
        let m = phi.m();
        if lambda != mu && m % 2 != 0 {
            return Err(Error::InvalidInput(
                "distinct exponents need even m (two generator orbits)".into(),
            ));
        }
        Ok(Candidate {
            m,
            trunc: phi.trunc(),
            lambda,
            mu,
            phi,
            flip_duality: true,
        })
    }

    /// Even-`m` variant without the flip-duality equation.
    pub fn without_flip_duality(mut self) -> Self {
        self.flip_duality = false;
        self
    }

    /// Whether the even-`m` flip-duality equation is part of the suite.
    pub fn uses_flip_duality(&self) -> bool {
        self.flip_duality
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn lambda(&self) -> &C {
        &self.lambda
    }

    pub fn mu(&self) -> &C {
        &self.mu
    }

    pub fn phi(&self) -> &GSeries<C> {
        &self.phi
    }

    /// `exp(c * t_r)` with the index reduced mod `m`.
    fn exp_gen(&self, r: i64, c: &C) -> GSeries<C> {
        GSeries::gen_reduced(self.m, self.trunc, r)
            .scale(c)
            .exp()
            .expect("generator has valuation 1")
    }

    /// `P = Phi e^{lambda t_1}` (odd-`m` half-turn factor).
    pub fn p_series(&self) -> GSeries<C> {
        &self.phi * &self.exp_gen(1, &self.lambda)
    }

    /// `xi = Phi e^{mu t_1} (ws . Phi^{-1}) e^{lambda t_2}` (even-`m`
    /// half-turn factor; see the module notes on the exponent placement).
    pub fn xi_series(&self) -> GSeries<C> {
        let phi_inv = self.phi.inverse().expect("constant term 1");
        let moved = act(&WElem::omega_s(self.m), &phi_inv);
        let a = &self.phi * &self.exp_gen(1, &self.mu);
        let b = &moved * &self.exp_gen(2, &self.lambda);
        &a * &b
    }

    /// Grouplike test as a report (coproduct against the tensor square).
    pub fn check_grouplike(&self, tol: f64) -> VerifyReport {
        let lhs = coproduct(&self.phi);
        let rhs = tensor_product(&self.phi, &self.phi);
        let diff = lhs.sub(&rhs);
        let bad = diff.valuation(tol);
        VerifyReport {
            equation: "grouplike".into(),
            pass: bad.is_none() && is_grouplike(&self.phi, tol),
            first_bad_degree: bad,
            residual_norm: Some(diff.max_magnitude()),
        }
    }

    /// Duality equation; `None` when the candidate's variant has no duality
    /// constraint (even `m` with flip-duality disabled).
    pub fn check_duality(&self, tol: f64) -> Option<EquationCheck<C>> {
        let one = GSeries::one(self.m, self.trunc);
        if self.m % 2 == 1 {
            let g = WElem::new(self.m, 1, (self.m as i64 - 1) / 2);
            let residual = &(&act(&g, &self.phi) * &self.phi) - &one;
            Some(EquationCheck { name: "duality".into(), residual, tol })
        } else if self.flip_duality {
            let residual = &(&flip(&self.phi) * &self.phi) - &one;
            Some(EquationCheck { name: "flip-duality".into(), residual, tol })
        } else {
            None
        }
    }

    /// Half-turn equation (both parities).
    pub fn check_demi_tour(&self, tol: f64) -> EquationCheck<C> {
        let one = GSeries::one(self.m, self.trunc);
        let m = self.m as i64;
        let residual = if self.m % 2 == 1 {
            let p = self.p_series();
            let mut acc = one.clone();
            // ascending product of pairs, then the lone middle factor;
            // the m rotation exponents 0..m-1 each occur exactly once
            for r in 0..=(m - 3) / 2 {
                acc = &acc * &act(&WElem::rotation(self.m, r), &p);
                acc = &acc * &act(&WElem::rotation(self.m, (m + 1) / 2 + r), &p);
            }
            acc = &acc * &act(&WElem::rotation(self.m, (m - 1) / 2), &p);
            &acc - &one
        } else {
            let xi = self.xi_series();
            let mut acc = one.clone();
            for r in 0..m / 2 {
                acc = &acc * &act(&WElem::rotation(self.m, r), &xi);
            }
            &acc - &one
        };
        let name = if self.m % 2 == 1 { "demi-tour" } else { "half-turn" };
        EquationCheck { name: name.into(), residual, tol }
    }

    /// Mirror test: the same series with negated exponents must pass the
    /// same duality + half-turn equations.
    pub fn check_mirror(&self, tol: f64) -> VerifyReport {
        let neg = Candidate {
            m: self.m,
            trunc: self.trunc,
            lambda: -self.lambda.clone(),
            mu: -self.mu.clone(),
            phi: self.phi.clone(),
            flip_duality: self.flip_duality,
        };
        let mut pass = true;
        let mut first: Option<u32> = None;
        let mut norm: f64 = 0.0;
        let mut fold = |c: &EquationCheck<C>| {
            pass &= c.pass();
            first = match (first, c.first_bad_degree()) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
            norm = norm.max(c.residual_norm());
        };
        if let Some(d) = neg.check_duality(tol) {
            fold(&d);
        }
        fold(&neg.check_demi_tour(tol));
        VerifyReport {
            equation: "mirror".into(),
            pass,
            first_bad_degree: first,
            residual_norm: Some(norm),
        }
    }

    /// The full suite in report form.
    pub fn check_all(&self, tol: f64) -> Vec<VerifyReport> {
        let mut out = vec![self.check_grouplike(tol)];
        if let Some(d) = self.check_duality(tol) {
            out.push(d.report());
        }
        out.push(self.check_demi_tour(tol).report());
        out.push(self.check_mirror(tol));
        out
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.check_all(tol).iter().all(|r| r.pass)
    }

    /// Gauge twist `Phi' = e^{-alpha t_0} Phi e^{alpha t_1}`; exponents are
    /// unchanged.
    pub fn twist(&self, alpha: &C) -> Candidate<C> {
        let left = self.exp_gen(0, &-alpha.clone());
        let right = self.exp_gen(1, alpha);
        let phi = &(&left * &self.phi) * &right;
        Candidate { phi, ..self.clone() }
    }

    /// One-sided twist `Phi' = Phi e^{alpha t_1}`, valid for even `m` only.
    pub fn right_twist(&self, alpha: &C) -> Result<Candidate<C>> {
        if self.m % 2 == 1 {
            return Err(Error::InvalidInput(
                "one-sided twist requires even m".into(),
            ));
        }
        let phi = &self.phi * &self.exp_gen(1, alpha);
        Ok(Candidate { phi, ..self.clone() })
    }

    /// Uniform scaling `t_r -> f t_r`: exponents multiply by `f`.
    pub fn scale_uniform(&self, f: &C) -> Candidate<C> {
        Candidate {
            phi: self.phi.scale_degrees(f),
            lambda: self.lambda.clone() * f.clone(),
            mu: self.mu.clone() * f.clone(),
            ..self.clone()
        }
    }

    /// Parity-split scaling (even `m`): `alpha` on even-index generators,
    /// `beta` on odd-index ones; `(lambda, mu) -> (alpha lambda, beta mu)`.
    ///
    /// This rescales coefficients and exponents; unlike [`scale_uniform`]
    /// it does not map passing candidates to passing candidates when
    /// `alpha != beta`, because the relation `sum_r t_r = 0` eliminating the
    /// last generator is not homogeneous under a parity split (the half-turn
    /// product picks up the degree-1 residual `(lambda - mu) * sum_{r even} t_r`).
    ///
    /// [`scale_uniform`]: Candidate::scale_uniform
    pub fn scale_pair(&self, alpha: &C, beta: &C) -> Result<Candidate<C>> {
        if self.m % 2 == 1 {
            return Err(Error::InvalidInput(
                "parity-split scaling requires even m".into(),
            ));
        }
        Ok(Candidate {
            phi: self.phi.scale_parity(alpha, beta)?,
            lambda: self.lambda.clone() * alpha.clone(),
            mu: self.mu.clone() * beta.clone(),
            ..self.clone()
        })
    }
}

/// Independent hexagon checker for `m = 3`, written from the two-variable
/// shape `e^{la} f(a,b) e^{lb} f(b,c) e^{lc} f(c,a) = 1` with `a+b+c = 0`,
/// where `f(x,y)` is the candidate series with `(t_1, t_0)` replaced by
/// `(x, y)`. It shares no code with the half-turn product above: the
/// substitutions are spelled out directly instead of using group elements.
pub fn check_hexagon<C: Coeff>(c: &Candidate<C>) -> Result<EquationCheck<C>> {
    if c.m() != 3 {
        return Err(Error::InvalidInput("hexagon form needs m = 3".into()));
    }
    let (m, n) = (c.m(), c.trunc());
    let t0 = GSeries::<C>::gen(m, n, 0);
    let t1 = GSeries::<C>::gen(m, n, 1);
    let t2 = GSeries::<C>::gen_last(m, n);
    let e = |x: &GSeries<C>| x.scale(c.lambda()).exp().expect("valuation 1");
    // f(x, y): candidate with t1 -> x, t0 -> y (images for letters 0, 1)
    let f = |x: &GSeries<C>, y: &GSeries<C>| c.phi().substitute(&[y.clone(), x.clone()]);
    let prod = &(&(&(&(&e(&t0) * &f(&t1, &t0)?) * &e(&t1)) * &f(&t2, &t1)?) * &e(&t2))
        * &f(&t0, &t2)?;
    Ok(EquationCheck {
        name: "hexagon".into(),
        residual: &prod - &GSeries::one(m, n),
        tol: 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rat};
    use crate::series::bracket;

    fn one_phi(m: u32, n: u32) -> GSeries<Rat> {
        GSeries::one(m, n)
    }

    /// exp(-(1/6)[t0,t1]) at m=3: the degree-2 solution of the hexagon.
    fn hex2() -> GSeries<Rat> {
        bracket(
            &GSeries::<Rat>::gen(3, 2, 0),
            &GSeries::<Rat>::gen(3, 2, 1),
        )
        .scale(&rat(-1, 6))
        .exp()
        .unwrap()
    }

    #[test]
    fn candidate_rejects_bad_series() {
        let with_t = &one_phi(3, 3) + &GSeries::t_sym(3, 3);
        assert!(Candidate::new(with_t, rat(1, 1)).is_err());
        let no_const = GSeries::<Rat>::gen(3, 3, 0);
        assert!(Candidate::new(no_const, rat(1, 1)).is_err());
        assert!(
            Candidate::with_exponents(one_phi(5, 3), rat(1, 1), rat(2, 1)).is_err(),
            "odd m has a single generator orbit"
        );
    }

    #[test]
    fn p_series_examples() {
        let c = Candidate::new(one_phi(3, 2), rat(0, 1)).unwrap();
        assert_eq!(c.p_series(), one_phi(3, 2));
        let c = Candidate::new(one_phi(3, 1), rat(1, 1)).unwrap();
        let expect = &one_phi(3, 1) + &GSeries::gen(3, 1, 1);
        assert_eq!(c.p_series(), expect);
        // degree-2 candidate: 1 + t1 + t1^2/2 - (1/6)[t0,t1]
        let c = Candidate::new(hex2(), rat(1, 1)).unwrap();
        let t1 = GSeries::<Rat>::gen(3, 2, 1);
        let expect = &(&(&one_phi(3, 2) + &t1) + &(&t1 * &t1).scale(&rat(1, 2)))
            + &bracket(&GSeries::gen(3, 2, 0), &t1).scale(&rat(-1, 6));
        assert_eq!(c.p_series(), expect);
    }

    #[test]
    fn xi_series_examples() {
        let c = Candidate::new(one_phi(4, 2), rat(0, 1)).unwrap();
        assert_eq!(c.xi_series(), one_phi(4, 2));
        let c = Candidate::new(one_phi(4, 1), rat(1, 1)).unwrap();
        let expect = &(&one_phi(4, 1) + &GSeries::gen(4, 1, 1)) + &GSeries::gen(4, 1, 2);
        assert_eq!(c.xi_series(), expect);
    }

    #[test]
    fn xi_of_grouplike_is_grouplike() {
        let phi = bracket(
            &GSeries::<Rat>::gen(4, 3, 0),
            &GSeries::<Rat>::gen(4, 3, 2),
        )
        .scale(&rat(1, 5))
        .exp()
        .unwrap();
        let c = Candidate::new(phi, rat(1, 1)).unwrap();
        assert!(crate::tensor::is_grouplike(&c.xi_series(), 0.0));
        assert!(crate::tensor::is_grouplike(&c.p_series(), 0.0));
    }

    #[test]
    fn duality_trivial_and_bracket_cases() {
        // Phi = 1 passes for odd and even m
        assert!(Candidate::new(one_phi(3, 3), rat(1, 1))
            .unwrap()
            .check_duality(0.0)
            .unwrap()
            .pass());
        assert!(Candidate::new(one_phi(4, 3), rat(1, 1))
            .unwrap()
            .check_duality(0.0)
            .unwrap()
            .pass());
        // m=3: exp(c [t0,t1]) passes for any c, exp(t0) does not
        let b = bracket(&GSeries::<Rat>::gen(3, 3, 0), &GSeries::gen(3, 3, 1));
        let good = Candidate::new(b.scale(&rat(3, 7)).exp().unwrap(), rat(1, 1)).unwrap();
        assert!(good.check_duality(0.0).unwrap().pass());
        let bad = Candidate::new(GSeries::gen(3, 3, 0).exp().unwrap(), rat(1, 1)).unwrap();
        let chk = bad.check_duality(0.0).unwrap();
        assert!(!chk.pass());
        assert_eq!(chk.first_bad_degree(), Some(1));
    }

    #[test]
    fn flip_duality_can_be_disabled() {
        let c = Candidate::new(one_phi(4, 2), rat(1, 1)).unwrap();
        assert!(c.check_duality(0.0).is_some());
        assert!(c.without_flip_duality().check_duality(0.0).is_none());
    }

    #[test]
    fn demi_tour_trivial_cases() {
        for m in [3u32, 4, 5, 6] {
            let c = Candidate::new(one_phi(m, 3), rat(0, 1)).unwrap();
            assert!(c.check_demi_tour(0.0).pass(), "m={m}");
        }
    }

    #[test]
    fn demi_tour_degree_two_solution_and_failure() {
        // the hand-solved degree-2 candidate passes
        let good = Candidate::new(hex2(), rat(1, 1)).unwrap();
        assert!(good.check_demi_tour(0.0).pass());
        // Phi = 1 fails at degree 2 with residual (1/2)[t0,t1]
        let bad = Candidate::new(one_phi(3, 2), rat(1, 1)).unwrap();
        let chk = bad.check_demi_tour(0.0);
        assert!(!chk.pass());
        assert_eq!(chk.first_bad_degree(), Some(2));
        let expect = bracket(&GSeries::<Rat>::gen(3, 2, 0), &GSeries::gen(3, 2, 1))
            .scale(&rat(1, 2));
        assert_eq!(chk.residual.degree_component(2), expect);
    }

    #[test]
    fn full_suite_on_degree_two_solution() {
        let c = Candidate::new(hex2(), rat(1, 1)).unwrap();
        assert!(c.passes(0.0));
        for r in c.check_all(0.0) {
            assert!(r.pass, "{}", r.equation);
        }
    }

    #[test]
    fn twist_examples() {
        let c = Candidate::new(hex2(), rat(1, 1)).unwrap();
        assert_eq!(c.twist(&rat(0, 1)).phi(), c.phi());
        // Phi = 1, alpha = 1, N = 1: 1 - t0 + t1
        let c1 = Candidate::new(one_phi(3, 1), rat(1, 1)).unwrap();
        let tw = c1.twist(&rat(1, 1));
        let expect = &(&one_phi(3, 1) - &GSeries::gen(3, 1, 0)) + &GSeries::gen(3, 1, 1);
        assert_eq!(*tw.phi(), expect);
        // twisting back is the identity
        let back = c.twist(&rat(2, 5)).twist(&rat(-2, 5));
        assert_eq!(back.phi(), c.phi());
    }

    #[test]
    fn twist_preserves_the_suite() {
        let c = Candidate::new(hex2(), rat(1, 1)).unwrap();
        let tw = c.twist(&rat(2, 5));
        assert!(tw.passes(0.0));
    }

    #[test]
    fn right_twist_even_only() {
        let odd = Candidate::new(one_phi(3, 2), rat(1, 1)).unwrap();
        assert!(odd.right_twist(&rat(1, 1)).is_err());
        // the one-sided twist preserves only the plain variant: it leaves
        // the half-turn factor xi unchanged but moves the flip-dual
        let even = Candidate::new(one_phi(4, 2), rat(0, 1)).unwrap();
        let tw = even.right_twist(&rat(1, 2)).unwrap().without_flip_duality();
        assert!(tw.passes(0.0));
        assert_eq!(
            even.xi_series(),
            tw.xi_series(),
            "xi must be invariant under the one-sided twist"
        );
    }

    #[test]
    fn scale_examples() {
        let c = Candidate::new(hex2(), rat(1, 1)).unwrap();
        let same = c.scale_uniform(&rat(1, 1));
        assert_eq!(same.phi(), c.phi());
        assert_eq!(same.lambda(), c.lambda());
        // m=3, f=2 on exp(c[t0,t1]): series coefficient quadruples
        let scaled = c.scale_uniform(&rat(2, 1));
        assert_eq!(*scaled.lambda(), rat(2, 1));
        let expect = bracket(&GSeries::<Rat>::gen(3, 2, 0), &GSeries::gen(3, 2, 1))
            .scale(&rat(-4, 6))
            .exp()
            .unwrap();
        assert_eq!(*scaled.phi(), expect);
        assert!(scaled.passes(0.0));
    }

    #[test]
    fn pair_scaling_even_m() {
        // exponent bookkeeping: (alpha, beta) = (0, 1) zeroes lambda only
        let c = Candidate::new(one_phi(4, 1), rat(1, 1)).unwrap();
        assert!(c.passes(0.0), "degree-1 candidate passes trivially");
        let s = c.scale_pair(&rat(0, 1), &rat(1, 1)).unwrap();
        assert_eq!(*s.lambda(), rat(0, 1));
        assert_eq!(*s.mu(), rat(1, 1));
        // a split with alpha != beta leaves the equation suite: the
        // half-turn product of the scaled candidate acquires the degree-1
        // residual (lambda' - mu') * (t0 + t2), nonzero once t3 = -t0-t1-t2
        // has been eliminated
        let ht = s.check_demi_tour(0.0);
        assert!(!ht.pass());
        assert_eq!(ht.first_bad_degree(), Some(1));
        let expect = &GSeries::<Rat>::gen(4, 1, 0) + &GSeries::gen(4, 1, 2);
        assert_eq!(ht.residual, expect.scale(&rat(-1, 1)));
        // equal factors agree with uniform scaling and stay passing
        let c2 = Candidate::new(one_phi(4, 1), rat(1, 1)).unwrap();
        let even = c2.scale_pair(&rat(3, 1), &rat(3, 1)).unwrap();
        let uni = c2.scale_uniform(&rat(3, 1));
        assert_eq!(even.phi(), uni.phi());
        assert_eq!(even.lambda(), uni.lambda());
        assert_eq!(even.mu(), uni.mu());
        assert!(even.passes(0.0));
        // odd m rejects the pair action
        let odd = Candidate::new(one_phi(3, 2), rat(1, 1)).unwrap();
        assert!(odd.scale_pair(&rat(0, 1), &rat(1, 1)).is_err());
    }

    #[test]
    fn mirror_checks() {
        let c0 = Candidate::new(one_phi(4, 2), rat(0, 1)).unwrap();
        assert!(c0.check_mirror(0.0).pass);
        let c = Candidate::new(hex2(), rat(1, 1)).unwrap();
        assert!(c.check_mirror(0.0).pass);
    }

    #[test]
    fn hexagon_agrees_with_demi_tour() {
        // passing candidate: both pass
        let good = Candidate::new(hex2(), rat(1, 1)).unwrap();
        assert!(good.check_demi_tour(0.0).pass());
        assert!(check_hexagon(&good).unwrap().pass());
        // failing candidate: both fail at the same degree
        let bad = Candidate::new(one_phi(3, 2), rat(1, 1)).unwrap();
        let a = bad.check_demi_tour(0.0);
        let b = check_hexagon(&bad).unwrap();
        assert!(!a.pass() && !b.pass());
        assert_eq!(a.first_bad_degree(), b.first_bad_degree());
        // and the hexagon form is m=3 only
        let even = Candidate::new(one_phi(4, 2), rat(0, 1)).unwrap();
        assert!(check_hexagon(&even).is_err());
    }

    #[test]
    fn report_shape() {
        let c = Candidate::new(one_phi(3, 2), rat(1, 1)).unwrap();
        let rep = c.check_demi_tour(0.0).report();
        assert_eq!(rep.equation, "demi-tour");
        assert!(!rep.pass);
        assert_eq!(rep.first_bad_degree, Some(2));
        assert!(rep.residual_norm.unwrap() > 0.0);
        let js = serde_json::to_value(&rep).unwrap();
        assert_eq!(js["pass"], serde_json::Value::Bool(false));
        assert_eq!(js["first_bad_degree"], serde_json::json!(2));
    }
}
