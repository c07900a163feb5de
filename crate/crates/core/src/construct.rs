//! Degree-by-degree construction of exact associator candidates.
//!
//! The output is an ascending product of exponentials of homogeneous Lie
//! elements, `Phi = exp(phi_1) exp(phi_2) ...`, so it is grouplike by
//! construction and the grouplike condition never enters the linear
//! algebra. At degree `n` the unknown `phi_n` ranges over the span of the
//! degree-`n` Lyndon bracketings; two insertions of the unknown meet only
//! at degree `>= 2n`, so the duality and half-turn residuals at degree `n`
//! are affine in it and each step reduces to one exact linear solve.
//!
//! Solving degree by degree is not quite greedy: when a degree leaves free
//! directions, which representative is chosen can decide whether the next
//! degree is solvable at all ([`degree_step`] documents a measured
//! obstruction at `m = 4`, degree 3). The builder therefore carries each
//! step's kernel forward as extra unknowns — an adjustment of a degree-`k`
//! correction acts affinely on every residual of degree `< 2k`, so later
//! systems may still move along those directions exactly. A carried
//! direction is dropped (pinned to zero) once the target degree reaches
//! twice its lowest homogeneous piece, where its self-products would make
//! the model quadratic.
//!
//! Determinism: unknown columns are ordered carried-directions-first (in
//! their creation order), then current-degree Lyndon words in lexicographic
//! order; duality rows are stacked before half-turn rows; elimination is
//! reduced row echelon with leftmost-nonzero pivots; free variables are set
//! to zero when pinned. The output is therefore a function of
//! `(m, lambda, N)` alone; [`TIE_BREAK_RULE`] names this convention in
//! emitted provenance.

use crate::associator::Candidate;
use crate::dihedral::{act, flip, WElem};
use crate::error::{Error, Result};
use crate::linalg::{LinearSystem, SolveOutcome};
use crate::lyndon::{bracket_of_word, lyndon_words};
use crate::scalar::{Coeff, Rat};
use crate::series::{GSeries, Letter};
use num_traits::{One, Zero};
use rayon::prelude::*;

/// Name of the deterministic tie-break convention used by the solver,
/// emitted as provenance next to build outputs.
pub const TIE_BREAK_RULE: &str = "lyndon-lex-rref-kernel-carry-v1";

/// Index of a length-`n` word in the dense degree-`n` coordinate block
/// (base `num_gens` digits, most significant first).
fn word_index(num_gens: usize, w: &[Letter]) -> usize {
    w.iter().fold(0usize, |acc, &l| acc * num_gens + l as usize)
}

/// Degree-`n` component of a `T`-free series as a dense coefficient vector
/// over all `num_gens^n` words.
fn dense_row<C: Coeff>(s: &GSeries<C>, n: u32) -> Vec<C> {
    let num_gens = s.num_gens() as usize;
    let mut out = vec![C::zero(); num_gens.pow(n)];
    for (mono, c) in s.terms() {
        if mono.degree() != n {
            continue;
        }
        assert_eq!(mono.tpow, 0, "equation residuals stay T-free");
        out[word_index(num_gens, &mono.word)] = c.clone();
    }
    out
}

/// Duality and half-turn residuals of a partial product, checked to vanish
/// below the working degree `n` (the inductive contract of every step).
fn residual_pair<C: Coeff>(
    lambda: &C,
    phi: &GSeries<C>,
    n: u32,
) -> Result<(GSeries<C>, GSeries<C>)> {
    let cand = Candidate::new(phi.truncated(n), lambda.clone())?;
    let dual = cand
        .check_duality(0.0)
        .expect("default candidates carry a duality equation for both parities");
    let half = cand.check_demi_tour(0.0);
    for check in [&dual, &half] {
        if let Some(d) = check.first_bad_degree() {
            if d < n {
                return Err(Error::InvalidInput(format!(
                    "partial series violates {} at degree {} < {}",
                    check.name, d, n
                )));
            }
        }
    }
    Ok((dual.residual, half.residual))
}

/// Insertion column of one degree-`n` Lie direction `b` in the duality
/// equation: replacing `Phi` by `Phi exp(eps b)` moves the degree-`n`
/// residual by `eps` times this series.
fn dual_col<C: Coeff>(m: u32, b: &GSeries<C>) -> GSeries<C> {
    if m % 2 == 1 {
        let g = WElem::new(m, 1, (m as i64 - 1) / 2);
        b + &act(&g, b)
    } else {
        b + &flip(b)
    }
}

/// Insertion column of `b` in the half-turn equation. Odd `m`: the
/// insertion appears once inside each of the `m` rotated copies of
/// `P = Phi e^{lambda t_1}`. Even `m`: `xi` carries it twice — once
/// directly and once negated through the inverse behind the reflection —
/// each rotated `m/2` times.
fn half_col<C: Coeff>(m: u32, b: &GSeries<C>) -> GSeries<C> {
    let mut acc = GSeries::zero(m, b.trunc());
    if m % 2 == 1 {
        for j in 0..m as i64 {
            acc = &acc + &act(&WElem::rotation(m, j), b);
        }
    } else {
        let ws = WElem::omega_s(m);
        for r in 0..(m / 2) as i64 {
            let rot = WElem::rotation(m, r);
            acc = &acc + &act(&rot, b);
            acc = &acc - &act(&rot.mul(&ws), b);
        }
    }
    acc
}

/// The one-shot affine degree-`n` system around a fixed partial product,
/// with the Lyndon words labelling its columns. Rows are the dense
/// degree-`n` word coordinates of the duality equation followed by those of
/// the half-turn equation; the right-hand side is minus the base residual.
fn degree_system<C: Coeff>(
    m: u32,
    lambda: &C,
    phi_partial: &GSeries<C>,
    n: u32,
) -> Result<(LinearSystem<C>, Vec<Vec<Letter>>)> {
    let (rd, rh) = residual_pair(lambda, phi_partial, n)?;
    let num_gens = (m - 1) as usize;
    let words = lyndon_words(num_gens as Letter, n as usize);
    let cols: Vec<(Vec<C>, Vec<C>)> = words
        .par_iter()
        .map(|w| {
            let b = bracket_of_word(m, n, w);
            (dense_row(&dual_col(m, &b), n), dense_row(&half_col(m, &b), n))
        })
        .collect();
    let rhs_d = dense_row(&rd, n);
    let rhs_h = dense_row(&rh, n);
    let mut sys = LinearSystem::new(words.len());
    for i in 0..rhs_d.len() {
        let row = cols.iter().map(|c| c.0[i].clone()).collect();
        sys.push_row(row, -rhs_d[i].clone());
    }
    for i in 0..rhs_h.len() {
        let row = cols.iter().map(|c| c.1[i].clone()).collect();
        sys.push_row(row, -rhs_h[i].clone());
    }
    Ok((sys, words))
}

/// One-shot constructor step: the homogeneous degree-`n` Lie correction
/// such that `phi_partial * exp(correction)` satisfies duality and
/// half-turn through degree `n`, for a partial product satisfying them
/// through degree `n - 1` (violations are reported as errors;
/// grouplikeness of the input is the caller's contract and is not
/// re-checked here). The correction is returned at the truncation order of
/// `phi_partial`.
///
/// Solvability around a *fixed* partial product is not guaranteed: when
/// the degree-`(n-1)` solution set has free directions, only part of it
/// extends. The measured example is `m = 4`: around
/// `exp(-(1/4)[t_0, t_1])` — the degree-2 representative with its free
/// directions pinned to zero — the degree-3 system is inconsistent, while
/// the representative `exp(-(1/6)[t_0,t_1] - (1/12)[t_0,t_2] -
/// (1/12)[t_1,t_2])` extends (with zero degree-3 correction).
/// [`build_rational`] handles this by carrying kernels across degrees;
/// this entry point reports the obstruction honestly via
/// [`Error::Inconsistent`].
pub fn degree_step<C: Coeff>(
    m: u32,
    lambda: &C,
    phi_partial: &GSeries<C>,
    n: u32,
) -> Result<GSeries<C>> {
    if n < 1 {
        return Err(Error::InvalidInput("degree step needs n >= 1".into()));
    }
    if phi_partial.m() != m {
        return Err(Error::Incompatible(format!(
            "partial series has m = {}, step asked for m = {}",
            phi_partial.m(),
            m
        )));
    }
    if phi_partial.trunc() < n {
        return Err(Error::InvalidInput(format!(
            "partial series truncated at {} cannot reach degree {}",
            phi_partial.trunc(),
            n
        )));
    }
    let (sys, words) = degree_system(m, lambda, phi_partial, n)?;
    match sys.solve(0.0) {
        SolveOutcome::Solved(sol) => {
            let mut correction = GSeries::zero(m, phi_partial.trunc());
            for (x, w) in sol.x.iter().zip(&words) {
                if !x.is_zero() {
                    let b = bracket_of_word(m, phi_partial.trunc(), w);
                    correction = &correction + &b.scale(x);
                }
            }
            Ok(correction)
        }
        SolveOutcome::Inconsistent { residual, .. } => {
            Err(Error::Inconsistent { degree: n, residual })
        }
    }
}

/// A still-free affine direction left over from earlier degrees: adding
/// `c` times its pieces to the chosen corrections preserves every equation
/// up to the degree it was extracted at, and its effect on residuals stays
/// exactly affine while the target degree is below `window`.
struct Carried<C: Coeff> {
    /// `2 *` the lowest piece degree: the first degree its self-products
    /// reach, after which the direction is pinned to zero and dropped.
    window: u32,
    /// Homogeneous Lie adjustments, keyed by the degree of the correction
    /// they modify, sorted by degree.
    pieces: Vec<(u32, GSeries<C>)>,
}

/// Accumulates `s` into the degree-`d` piece of a direction under assembly.
fn merge_piece<C: Coeff>(pieces: &mut Vec<(u32, GSeries<C>)>, d: u32, s: &GSeries<C>) {
    match pieces.iter_mut().find(|(pd, _)| *pd == d) {
        Some((_, acc)) => *acc = &*acc + s,
        None => pieces.push((d, s.clone())),
    }
}

/// Degree-by-degree state: the chosen corrections and the carried kernel.
struct Builder<C: Coeff> {
    m: u32,
    lambda: C,
    n_max: u32,
    /// `phis[d - 1]` is the chosen degree-`d` Lie correction, kept at the
    /// full truncation order.
    phis: Vec<GSeries<C>>,
    carried: Vec<Carried<C>>,
}

impl<C: Coeff> Builder<C> {
    fn new(m: u32, lambda: C, n_max: u32) -> Self {
        let phis = (1..=n_max).map(|_| GSeries::zero(m, n_max)).collect();
        Builder { m, lambda, n_max, phis, carried: Vec::new() }
    }

    /// `exp(phi_1) ... exp(phi_n)` at truncation `n`, optionally with one
    /// carried direction added to the corrections it touches.
    fn product_at(&self, n: u32, adjust: Option<&Carried<C>>) -> GSeries<C> {
        let mut acc = GSeries::one(self.m, n);
        for d in 1..=n.min(self.n_max) {
            let mut phi_d = self.phis[(d - 1) as usize].truncated(n);
            if let Some(p) = adjust {
                for (pd, piece) in &p.pieces {
                    if *pd == d {
                        phi_d = &phi_d + &piece.truncated(n);
                    }
                }
            }
            if !phi_d.is_zero() {
                acc = &acc * &phi_d.exp().expect("homogeneous of positive degree");
            }
        }
        acc
    }

    /// Solves degree `n` and updates the corrections and the carried kernel.
    fn step(&mut self, n: u32) -> Result<()> {
        // directions whose affine window closed are pinned to zero here,
        // i.e. simply forgotten
        self.carried.retain(|p| n < p.window);

        let base = self.product_at(n, None);
        let (rd, rh) = residual_pair(&self.lambda, &base, n)?;

        // carried columns: the model is exactly affine inside the window,
        // so one full re-evaluation per direction is an exact derivative
        let carried_cols: Vec<(Vec<C>, Vec<C>)> = self
            .carried
            .par_iter()
            .map(|p| {
                let moved = self.product_at(n, Some(p));
                let (sd, sh) = residual_pair(&self.lambda, &moved, n)?;
                Ok((dense_row(&(&sd - &rd), n), dense_row(&(&sh - &rh), n)))
            })
            .collect::<Result<_>>()?;

        let num_gens = (self.m - 1) as usize;
        let words = lyndon_words(num_gens as Letter, n as usize);
        let lyndon_cols: Vec<(Vec<C>, Vec<C>)> = words
            .par_iter()
            .map(|w| {
                let b = bracket_of_word(self.m, n, w);
                (
                    dense_row(&dual_col(self.m, &b), n),
                    dense_row(&half_col(self.m, &b), n),
                )
            })
            .collect();

        let cols: Vec<&(Vec<C>, Vec<C>)> =
            carried_cols.iter().chain(lyndon_cols.iter()).collect();
        let rhs_d = dense_row(&rd, n);
        let rhs_h = dense_row(&rh, n);
        let mut sys = LinearSystem::new(cols.len());
        for i in 0..rhs_d.len() {
            let row = cols.iter().map(|c| c.0[i].clone()).collect();
            sys.push_row(row, -rhs_d[i].clone());
        }
        for i in 0..rhs_h.len() {
            let row = cols.iter().map(|c| c.1[i].clone()).collect();
            sys.push_row(row, -rhs_h[i].clone());
        }
        let sol = match sys.solve(0.0) {
            SolveOutcome::Solved(s) => s,
            SolveOutcome::Inconsistent { residual, .. } => {
                return Err(Error::Inconsistent { degree: n, residual })
            }
        };

        // apply the particular solution: move along carried directions,
        // then set the degree-n correction
        let n_carried = self.carried.len();
        for (i, p) in self.carried.iter().enumerate() {
            let c = &sol.x[i];
            if c.is_zero() {
                continue;
            }
            for (pd, piece) in &p.pieces {
                let idx = (*pd - 1) as usize;
                self.phis[idx] = &self.phis[idx] + &piece.scale(c);
            }
        }
        let mut phi_n = GSeries::zero(self.m, self.n_max);
        for (x, w) in sol.x[n_carried..].iter().zip(&words) {
            if !x.is_zero() {
                phi_n = &phi_n + &bracket_of_word(self.m, self.n_max, w).scale(x);
            }
        }
        self.phis[(n - 1) as usize] = phi_n;

        // the new carried set is this system's kernel, rebased onto
        // correction-degree pieces
        let mut fresh = Vec::new();
        for v in &sol.kernel {
            let mut pieces: Vec<(u32, GSeries<C>)> = Vec::new();
            for (i, p) in self.carried.iter().enumerate() {
                if v[i].is_zero() {
                    continue;
                }
                for (pd, piece) in &p.pieces {
                    merge_piece(&mut pieces, *pd, &piece.scale(&v[i]));
                }
            }
            for (x, w) in v[n_carried..].iter().zip(&words) {
                if !x.is_zero() {
                    merge_piece(
                        &mut pieces,
                        n,
                        &bracket_of_word(self.m, self.n_max, w).scale(x),
                    );
                }
            }
            pieces.retain(|(_, s)| !s.is_zero());
            pieces.sort_by_key(|(d, _)| *d);
            let Some(min_deg) = pieces.iter().map(|(d, _)| *d).min() else {
                continue;
            };
            fresh.push(Carried { window: 2 * min_deg, pieces });
        }
        self.carried = fresh;
        Ok(())
    }
}

/// Builds the canonical exact candidate at truncation `n_max`: the
/// ascending product `exp(phi_1) ... exp(phi_N)` of tie-broken degree
/// corrections, solved once at exponent 1 and then rescaled to `lambda`
/// (uniform scaling is an exact symmetry of the equation suite, so one
/// solve serves every exponent).
pub fn build_rational(m: u32, lambda: &Rat, n_max: u32) -> Result<Candidate<Rat>> {
    if m < 3 {
        return Err(Error::InvalidInput("need m >= 3".into()));
    }
    if n_max < 1 {
        return Err(Error::InvalidInput("need a truncation order >= 1".into()));
    }
    if lambda.is_zero() {
        return Err(Error::InvalidInput(
            "exponent must be nonzero (the zero case is the trivial suite)".into(),
        ));
    }
    let mut builder = Builder::new(m, Rat::one(), n_max);
    for n in 1..=n_max {
        builder.step(n)?;
    }
    let built = Candidate::new(builder.product_at(n_max, None), Rat::one())?;
    Ok(built.scale_uniform(lambda))
}
