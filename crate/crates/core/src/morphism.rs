//! Braid-group morphisms attached to an associator candidate.
//!
//! A candidate `Phi` with exponent `lambda` determines images of the two
//! braid generators inside the flat group algebra:
//!
//! ```text
//! sigma |-> s e^{lambda tt_0},   tau |-> Phi (omega s e^{lambda tt_1}) Phi^{-1}
//! ```
//!
//! where `tt_i = t_i + T/m`, so each image factors as a T-free part times
//! the central `e^{lambda T / m}`. Words in the generators are evaluated
//! by multiplying images left to right; the defining relations then become
//! finite-truncation checks: the two alternating words of length `m`
//! agree (and equal a closed-form half-twist image depending on the parity
//! of `m`), the full twist `(sigma tau)^m` is the central exponential
//! `e^{2 lambda T}`, and the standard generators of the pure braid
//! subgroup match a closed-form table of words in the T-free generator
//! images, up to one central factor `e^{lambda T/m}` per braid letter.

use crate::associator::{Candidate, VerifyReport};
use crate::dihedral::{FlatElem, WElem};
use crate::error::{Error, Result};
use crate::scalar::Coeff;
use crate::series::GSeries;

/// One of the two braid generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BLetter {
    Sigma,
    Tau,
}

impl BLetter {
    fn other(self) -> BLetter {
        match self {
            BLetter::Sigma => BLetter::Tau,
            BLetter::Tau => BLetter::Sigma,
        }
    }
}

/// A braid word: letters with nonzero exponents, adjacent runs of the same
/// letter merged.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BWord {
    letters: Vec<(BLetter, i64)>,
}

impl BWord {
    /// Normalizes a raw letter list: drops zero exponents and merges
    /// adjacent runs of the same letter (cascading when a merge cancels).
    pub fn new(raw: Vec<(BLetter, i64)>) -> Self {
        let mut letters: Vec<(BLetter, i64)> = Vec::with_capacity(raw.len());
        for (l, e) in raw {
            if e == 0 {
                continue;
            }
            match letters.last_mut() {
                Some((last, sum)) if *last == l => {
                    *sum += e;
                    if *sum == 0 {
                        letters.pop();
                    }
                }
                _ => letters.push((l, e)),
            }
        }
        BWord { letters }
    }

    pub fn empty() -> Self {
        BWord::default()
    }

    pub fn gen(l: BLetter, e: i64) -> Self {
        BWord::new(vec![(l, e)])
    }

    /// The alternating word starting at `first`, `len` letters, each with
    /// exponent `exp` (so e.g. `alternating(Tau, 4, 1)` is `(tau sigma)^2`
    /// and `alternating(Sigma, 4, -1)` is `(sigma^{-1} tau^{-1})^2`).
    pub fn alternating(first: BLetter, len: u32, exp: i64) -> Self {
        let mut raw = Vec::with_capacity(len as usize);
        let mut l = first;
        for _ in 0..len {
            raw.push((l, exp));
            l = l.other();
        }
        BWord::new(raw)
    }

    pub fn letters(&self) -> &[(BLetter, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of the exponents — the image of the word under the abelianized
    /// length homomorphism, which counts central factors `e^{lambda T/m}`.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|(_, e)| e).sum()
    }

    pub fn concat(&self, other: &BWord) -> BWord {
        let mut raw = self.letters.clone();
        raw.extend(other.letters.iter().cloned());
        BWord::new(raw)
    }

    pub fn inverse(&self) -> BWord {
        BWord::new(self.letters.iter().rev().map(|&(l, e)| (l, -e)).collect())
    }

    /// `self • x = self x self^{-1}`.
    pub fn conjugate(&self, x: &BWord) -> BWord {
        self.concat(x).concat(&self.inverse())
    }

    /// `self^k` (negative `k` through the inverse).
    pub fn pow(&self, k: i64) -> BWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = BWord::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }
}

/// A named residual of a flat-group identity, kept whole so callers can
/// locate the first failing degree.
#[derive(Debug, Clone)]
pub struct MorphCheck<C: Coeff> {
    name: String,
    residual: FlatElem<C>,
    tol: f64,
}

impl<C: Coeff> MorphCheck<C> {
    fn new(name: impl Into<String>, lhs: &FlatElem<C>, rhs: &FlatElem<C>, tol: f64) -> Self {
        MorphCheck {
            name: name.into(),
            residual: lhs.sub(rhs),
            tol,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pass(&self) -> bool {
        self.residual.max_magnitude() <= self.tol
    }

    pub fn residual_norm(&self) -> f64 {
        self.residual.max_magnitude()
    }

    pub fn first_bad_degree(&self) -> Option<u32> {
        (0..=self.residual.trunc()).find(|&d| {
            self.residual
                .parts()
                .any(|(_, series)| series.degree_max_magnitude(d) > self.tol)
        })
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

/// Binary exponentiation in the flat group (`e >= 0`).
fn flat_pow<C: Coeff>(base: &FlatElem<C>, mut e: u64) -> FlatElem<C> {
    let mut out = FlatElem::one(base.m(), base.trunc());
    let mut sq = base.clone();
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

/// The braid-group morphism attached to a verified candidate: generator
/// images with and without their central `e^{lambda T/m}` factor, plus
/// cached inverses.
#[derive(Debug, Clone)]
pub struct Morphism<C: Coeff> {
    m: u32,
    trunc: u32,
    lambda: C,
    phi: GSeries<C>,
    phi_inv: GSeries<C>,
    sigma: FlatElem<C>,
    tau: FlatElem<C>,
    sigma_inv: FlatElem<C>,
    tau_inv: FlatElem<C>,
    sigma_red: FlatElem<C>,
    tau_red: FlatElem<C>,
    sigma_red_inv: FlatElem<C>,
    tau_red_inv: FlatElem<C>,
}

impl<C: Coeff> Morphism<C> {
    /// Builds the morphism from a candidate, rejecting candidates that
    /// fail the equation suite within `tol` (exact candidates should pass
    /// `tol = 0.0`) or that carry distinct even/odd exponents.
    pub fn new(cand: &Candidate<C>, tol: f64) -> Result<Self> {
        if cand.mu() != cand.lambda() {
            return Err(Error::InvalidInput(
                "generator images use a single exponent; equal pairs only".into(),
            ));
        }
        if !cand.passes(tol) {
            return Err(Error::Verification(format!(
                "candidate fails the associator equation suite within {tol:.1e}"
            )));
        }
        let m = cand.m();
        let trunc = cand.trunc();
        let lambda = cand.lambda().clone();
        let phi = cand.phi().clone();
        let phi_inv = phi.inverse()?;
        let central = GSeries::exp_t(m, trunc, &(lambda.clone() * C::from_ratio(1, m as i64)));

        let exp_t0 = GSeries::gen(m, trunc, 0).scale(&lambda).exp()?;
        let exp_t1 = GSeries::gen(m, trunc, 1).scale(&lambda).exp()?;
        let sigma_red = FlatElem::from_pair(WElem::s(m), exp_t0);
        let tau_core = FlatElem::from_pair(WElem::omega_s(m), exp_t1);
        let phi_flat = FlatElem::from_series(phi.clone());
        let phi_flat_inv = FlatElem::from_series(phi_inv.clone());
        let tau_red = phi_flat.mul(&tau_core).mul(&phi_flat_inv);
        let central_flat = FlatElem::from_series(central);
        let sigma = sigma_red.mul(&central_flat);
        let tau = tau_red.mul(&central_flat);

        Ok(Morphism {
            m,
            trunc,
            lambda,
            sigma_inv: sigma.inverse()?,
            tau_inv: tau.inverse()?,
            sigma_red_inv: sigma_red.inverse()?,
            tau_red_inv: tau_red.inverse()?,
            phi,
            phi_inv,
            sigma,
            tau,
            sigma_red,
            tau_red,
        })
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

    pub fn phi(&self) -> &GSeries<C> {
        &self.phi
    }

    /// Image of the first braid generator (with its central factor).
    pub fn sigma(&self) -> &FlatElem<C> {
        &self.sigma
    }

    /// Image of the second braid generator (with its central factor).
    pub fn tau(&self) -> &FlatElem<C> {
        &self.tau
    }

    /// Evaluates a braid word.
    pub fn eval_word(&self, w: &BWord) -> FlatElem<C> {
        self.eval_with(w, &self.sigma, &self.sigma_inv, &self.tau, &self.tau_inv)
    }

    /// Evaluates a braid word through the T-free generator images — the
    /// full evaluation with one central factor `e^{lambda T/m}` per letter
    /// removed.
    pub fn eval_reduced(&self, w: &BWord) -> FlatElem<C> {
        self.eval_with(
            w,
            &self.sigma_red,
            &self.sigma_red_inv,
            &self.tau_red,
            &self.tau_red_inv,
        )
    }

    fn eval_with(
        &self,
        w: &BWord,
        s: &FlatElem<C>,
        s_inv: &FlatElem<C>,
        t: &FlatElem<C>,
        t_inv: &FlatElem<C>,
    ) -> FlatElem<C> {
        let mut out = FlatElem::one(self.m, self.trunc);
        // letters multiply left to right: the image of l_1^{e_1} l_2^{e_2} ...
        // is img(l_1)^{e_1} * img(l_2)^{e_2} * ... in the same order
        for &(l, e) in w.letters() {
            let base = match (l, e > 0) {
                (BLetter::Sigma, true) => s,
                (BLetter::Sigma, false) => s_inv,
                (BLetter::Tau, true) => t,
                (BLetter::Tau, false) => t_inv,
            };
            out = out.mul(&flat_pow(base, e.unsigned_abs()));
        }
        out
    }

    /// The central exponential `e^{c lambda T}` as a flat element.
    fn central_exp(&self, num: i64, den: i64) -> FlatElem<C> {
        let c = self.lambda.clone() * C::from_ratio(num, den);
        FlatElem::from_series(GSeries::exp_t(self.m, self.trunc, &c))
    }

    /// The two defining-relation checks: the alternating words of length
    /// `m` in the two generators agree, and both equal the closed-form
    /// half-twist image (`s omega^{(m-1)/2} Phi^{-1} e^{lambda T}` for odd
    /// `m`, `omega^{m/2} e^{lambda T}` for even `m`).
    pub fn artin_checks(&self, tol: f64) -> Vec<MorphCheck<C>> {
        let left = self.eval_word(&BWord::alternating(BLetter::Sigma, self.m, 1));
        let right = self.eval_word(&BWord::alternating(BLetter::Tau, self.m, 1));
        let half_twist = if self.m % 2 == 1 {
            let w = WElem::new(self.m, 1, ((self.m - 1) / 2) as i64);
            FlatElem::from_pair(w, self.phi_inv.clone()).mul(&self.central_exp(1, 1))
        } else {
            FlatElem::from_pair(WElem::rotation(self.m, (self.m / 2) as i64), GSeries::one(self.m, self.trunc))
                .mul(&self.central_exp(1, 1))
        };
        vec![
            MorphCheck::new("alternating generator words agree", &left, &right, tol),
            MorphCheck::new("half-twist image closed form", &left, &half_twist, tol),
        ]
    }

    pub fn verify_artin(&self, tol: f64) -> bool {
        self.artin_checks(tol).iter().all(|c| c.pass())
    }

    /// The full twist `(sigma tau)^m` evaluates to the central
    /// exponential `e^{2 lambda T}`.
    pub fn center_check(&self, tol: f64) -> MorphCheck<C> {
        let full = self.eval_word(&BWord::alternating(BLetter::Sigma, 2 * self.m, 1));
        MorphCheck::new(
            "full twist is the central exponential",
            &full,
            &self.central_exp(2, 1),
            tol,
        )
    }

    /// The defining braid word of the `r`-th pure-braid generator:
    /// `u_{2q} = (tau sigma)^q • sigma^2`, `u_{2q+1} = (tau sigma)^q • tau^2`.
    pub fn u_word(&self, i: u32) -> BWord {
        let conj = BWord::alternating(BLetter::Tau, 2 * (i / 2), 1);
        let base = if i % 2 == 0 { BLetter::Sigma } else { BLetter::Tau };
        conj.conjugate(&BWord::gen(base, 2))
    }

    /// The defining braid word of the telescoped family:
    /// partial products of the `u` generators in both directions.
    pub fn x_word(&self, j: i64) -> BWord {
        if j >= 1 {
            if j % 2 == 0 {
                // (tau sigma)^r (sigma tau)^r with 2r = j
                BWord::alternating(BLetter::Tau, j as u32, 1)
                    .concat(&BWord::alternating(BLetter::Sigma, j as u32, 1))
            } else {
                // ((tau sigma)^r tau)^2 with 2r + 1 = j
                let half = BWord::alternating(BLetter::Tau, j as u32, 1);
                half.concat(&half)
            }
        } else if (-j) % 2 == 0 {
            // ((sigma tau)^r sigma)^2 with 2r = -j
            let half = BWord::alternating(BLetter::Sigma, (1 - j) as u32, 1);
            half.concat(&half)
        } else {
            // (sigma tau)^r (tau sigma)^r with 2r = 1 - j
            BWord::alternating(BLetter::Sigma, (1 - j) as u32, 1)
                .concat(&BWord::alternating(BLetter::Tau, (1 - j) as u32, 1))
        }
    }

    /// Closed-form table value for the `i`-th reduced pure-braid
    /// generator, as (rotation prefactor power, word in the T-free
    /// generator images). `None` for the indices the table leaves to the
    /// product relation.
    fn u_closed(&self, i: u32) -> Option<(i64, BWord)> {
        let m = self.m;
        if 2 * i < m {
            // low indices: the defining word is its own table value
            return Some((0, self.u_word(i)));
        }
        if m % 2 == 1 {
            if 2 * i == m + 1 {
                // recovered from the product relation, not tabulated
                return None;
            }
            // high indices: conjugating power shifted down by a full turn,
            // with the generator squares swapped
            let (k, base) = if i % 2 == 0 {
                ((i as i64 - 1 - m as i64) / 2, BLetter::Tau)
            } else {
                ((i as i64 - m as i64) / 2, BLetter::Sigma)
            };
            let conj = BWord::alternating(BLetter::Tau, 2, 1).pow(k);
            return Some((0, conj.conjugate(&BWord::gen(base, 2))));
        }
        let half = m / 2;
        if i == half {
            let word = if half % 2 == 0 {
                let wing = BWord::alternating(BLetter::Sigma, half, -1);
                wing.concat(&BWord::gen(BLetter::Sigma, 2)).concat(&wing)
            } else {
                BWord::alternating(BLetter::Sigma, half, -1)
                    .concat(&BWord::gen(BLetter::Tau, 2))
                    .concat(&BWord::alternating(BLetter::Tau, half, -1))
            };
            return Some((half as i64, word));
        }
        if i == half + 1 {
            let word = if half % 2 == 0 {
                BWord::alternating(BLetter::Sigma, half, -1)
                    .concat(&BWord::gen(BLetter::Tau, 2))
                    .concat(&BWord::alternating(BLetter::Tau, m, -1))
                    .concat(&BWord::alternating(BLetter::Tau, half, 1))
            } else {
                BWord::alternating(BLetter::Sigma, half - 1, -1)
                    .concat(&BWord::alternating(BLetter::Tau, m, -1))
                    .concat(&BWord::gen(BLetter::Sigma, 2))
                    .concat(&BWord::alternating(BLetter::Tau, half - 1, 1))
            };
            return Some((half as i64, word));
        }
        // trailing indices: negative conjugating powers, within the
        // tabulated ranges only
        if i % 2 == 0 {
            let r = (m as i64 - i as i64) / 2; // i = m - 2r
            if r >= 1 && 2 * r < (m as i64 - 2) / 2 {
                let conj = BWord::alternating(BLetter::Tau, 2, 1).pow(-r);
                return Some((0, conj.conjugate(&BWord::gen(BLetter::Sigma, 2))));
            }
        } else {
            let r = (m as i64 - i as i64 + 1) / 2; // i = m - 2r + 1
            if r >= 1 && 2 * r + 1 < (m as i64 - 2) / 2 {
                let conj = BWord::alternating(BLetter::Tau, 2, 1).pow(-r);
                return Some((0, conj.conjugate(&BWord::gen(BLetter::Tau, 2))));
            }
        }
        None
    }

    /// Closed-form table value for the `j`-th reduced telescoped element.
    fn x_closed(&self, j: i64) -> Option<(i64, BWord)> {
        let m = self.m as i64;
        if 2 * j < m && 2 * j > 2 - m {
            // inner indices: the defining word is its own table value
            return Some((0, self.x_word(j)));
        }
        if m % 2 == 1 {
            return None;
        }
        let half = m / 2;
        if j == half {
            let word = if half % 2 == 0 {
                BWord::alternating(BLetter::Sigma, half as u32, -1)
                    .concat(&BWord::alternating(BLetter::Sigma, half as u32, 1))
            } else {
                BWord::alternating(BLetter::Sigma, half as u32, -1)
                    .concat(&BWord::alternating(BLetter::Tau, half as u32, 1))
            };
            return Some((half, word));
        }
        if j == 1 - half {
            let word = if half % 2 == 0 {
                BWord::alternating(BLetter::Tau, half as u32, -1)
                    .concat(&BWord::alternating(BLetter::Tau, half as u32, 1))
            } else {
                BWord::alternating(BLetter::Tau, half as u32, -1)
                    .concat(&BWord::alternating(BLetter::Sigma, half as u32, 1))
            };
            return Some((half, word));
        }
        None
    }

    fn table_check(
        &self,
        name: String,
        word: &BWord,
        prefactor_rot: i64,
        closed_word: &BWord,
        tol: f64,
    ) -> MorphCheck<C> {
        let lhs = self.eval_word(word);
        let closed = FlatElem::from_welem(WElem::rotation(self.m, prefactor_rot), self.trunc)
            .mul(&self.eval_reduced(closed_word));
        // one central factor per braid letter restores the full evaluation
        let rhs = closed.mul(&self.central_exp(word.exponent_sum(), self.m as i64));
        MorphCheck::new(name, &lhs, &rhs, tol)
    }

    /// Per-entry verification of the closed-form tables for both
    /// pure-braid generator families, plus the product relations that
    /// close them.
    pub fn pure_braid_tables(&self, tol: f64) -> Vec<MorphCheck<C>> {
        let m = self.m as i64;
        let mut checks = Vec::new();
        for i in 0..self.m {
            if let Some((rot, closed)) = self.u_closed(i) {
                checks.push(self.table_check(
                    format!("u-family entry {i}"),
                    &self.u_word(i),
                    rot,
                    &closed,
                    tol,
                ));
            }
        }
        let (j_lo, j_hi) = if m % 2 == 1 {
            (-(m - 3) / 2, (m - 1) / 2)
        } else {
            (1 - m / 2, m / 2)
        };
        for j in j_lo..=j_hi {
            if let Some((rot, closed)) = self.x_closed(j) {
                checks.push(self.table_check(
                    format!("x-family entry {j}"),
                    &self.x_word(j),
                    rot,
                    &closed,
                    tol,
                ));
            }
        }
        // the product over decreasing indices multiplies left to right
        // starting at the largest index: u_{m-1} u_{m-2} ... u_0
        let mut product = BWord::empty();
        for i in (0..self.m).rev() {
            product = product.concat(&self.u_word(i));
        }
        checks.push(MorphCheck::new(
            "u-family product equals the central exponential",
            &self.eval_word(&product),
            &self.central_exp(2, 1),
            tol,
        ));
        if self.m % 2 == 0 {
            let pair = self.x_word(m / 2).concat(&self.x_word(1 - m / 2));
            checks.push(MorphCheck::new(
                "x-family boundary pair equals the central exponential",
                &self.eval_word(&pair),
                &self.central_exp(2, 1),
                tol,
            ));
        }
        checks
    }
}
