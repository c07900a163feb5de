//! Numerical construction of the transcendental candidate: the connection
//! form `sum_r t_r cot(u - theta_r)` on `(0, pi)`, `theta_r = r pi / m`, is
//! a Fuchsian equation with regular singular points at the `theta_r`. On
//! each gap `(theta_r, theta_{r+1})` the two endpoint-normalized solutions
//! (`~ x^{t_r}` in the local coordinate at either end) differ by a constant
//! grouplike series, recovered by evaluating both endpoint expansions at an
//! interior point:
//!
//! ```text
//! Phi_r = G_{r,+}(u)^{-1} G_{r+1,-}(u),    u in (theta_r, theta_{r+1}).
//! ```
//!
//! `Phi_0` at exponent `i pi` is the transcendental associator candidate;
//! the module also provides the two-generator equation on `(0, 1)` whose
//! gluing constant is the classical `phi_KZ`, and the `m = 3` bridge
//! between the two.
//!
//! Everything reduces to [`crate::fuchsian`]: the local data are the
//! cotangent Taylor coefficients (regularized at the expansion point), the
//! minus-side problem is the plus-side problem reflected through `x -> -x`,
//! and midpoint evaluation keeps every series inside half its convergence
//! radius (the gap), so no ODE stepping is involved.

use crate::associator::Candidate;
use crate::error::{Error, Result};
use crate::fuchsian::{
    check_convergence, eval_g, tail_magnitude, FuchsProblem, LogBranch, TAIL_CUTOFF,
};
use crate::scalar::{cx, Cx};
use crate::series::GSeries;
use std::f64::consts::PI;

/// The singular angle `theta_r = r pi / m`.
pub fn endpoint_angle(m: u32, r: u32) -> f64 {
    r as f64 * PI / m as f64
}

/// Taylor coefficients of `x -> cot(x + a)` at `x = 0`, orders `0 ..= k`,
/// from `cot' = -(1 + cot^2)` read off on polynomial coefficients:
/// `(j+1) b_{j+1} = -delta_{j,0} - sum_{p+q=j} b_p b_q`.
pub fn cot_taylor(a: f64, k: usize) -> Result<Vec<f64>> {
    let s = a.sin();
    if s.abs() < 1e-12 {
        return Err(Error::InvalidInput(format!(
            "cotangent expansion point {a} is at a pole"
        )));
    }
    let mut b = Vec::with_capacity(k + 1);
    b.push(a.cos() / s);
    for j in 0..k {
        let mut conv = if j == 0 { 1.0 } else { 0.0 };
        for p in 0..=j {
            conv += b[p] * b[j - p];
        }
        b.push(-conv / (j + 1) as f64);
    }
    Ok(b)
}

/// Taylor coefficients of the regularized cotangent `cot(x) - 1/x` at
/// `x = 0`, orders `0 ..= k`. Writing `g` for that odd function,
/// `x g' + 2 g = -x - x g^2` gives
/// `(j+2) g_j = -delta_{j,1} - sum_{p+q=j-1} g_p g_q`.
fn cot_regularized_taylor(k: usize) -> Vec<f64> {
    let mut g = Vec::with_capacity(k + 1);
    g.push(0.0);
    for j in 1..=k {
        let mut conv = if j == 1 { 1.0 } else { 0.0 };
        for p in 0..j {
            conv += g[p] * g[j - 1 - p];
        }
        g.push(-conv / (j + 2) as f64);
    }
    g
}

/// Which endpoint normalization of a gap a local expansion belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Normalized `~ x^{t_r}` in `x = u - theta_r` (approach from above).
    Plus,
    /// Normalized `~ x^{t_r}` in `x = theta_r - u` (approach from below).
    Minus,
}

/// The regular singular problem of the connection form at the endpoint
/// `theta_r`, in the local coordinate of the requested side: residue `t_r`,
/// analytic part from the regularized cotangent at `theta_r` plus the
/// smooth cotangent terms of the other generators. The minus side is the
/// plus side reflected through `x -> -x`.
pub fn local_problem(m: u32, r: u32, side: Side, n: u32, k: usize) -> Result<FuchsProblem<Cx>> {
    if m < 3 {
        return Err(Error::InvalidInput("need m >= 3".into()));
    }
    if r >= m {
        return Err(Error::InvalidInput(format!(
            "endpoint index {r} out of range for m = {m}"
        )));
    }
    if n < 1 || k < 1 {
        return Err(Error::InvalidInput(
            "need algebra degree >= 1 and x-order >= 1".into(),
        ));
    }
    let gens: Vec<GSeries<Cx>> =
        (0..m as i64).map(|s| GSeries::gen_reduced(m, n, s)).collect();
    let gamma = cot_regularized_taylor(k);
    let mut smooth: Vec<(usize, Vec<f64>)> = Vec::new();
    for s in 0..m {
        if s != r {
            let a = endpoint_angle(m, r) - endpoint_angle(m, s);
            smooth.push((s as usize, cot_taylor(a, k)?));
        }
    }
    let mut c = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let mut cj = gens[r as usize].scale(&cx(gamma[j], 0.0));
        for (s, b) in &smooth {
            cj = &cj + &gens[*s].scale(&cx(b[j], 0.0));
        }
        c.push(cj);
    }
    let plus = FuchsProblem::new(gens[r as usize].clone(), c)?;
    Ok(match side {
        Side::Plus => plus,
        Side::Minus => plus.reflected(),
    })
}

/// Tail diagnostics of a gluing computation: the largest contribution of
/// the last retained x-term among the endpoint expansions, split by
/// algebra degree `0 ..= N`.
#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub tail_by_degree: Vec<f64>,
}

fn degree_tails(p: &[GSeries<Cx>], x: f64, n: u32) -> Vec<f64> {
    let xk = x.powi((p.len() - 1) as i32);
    (0..=n)
        .map(|d| p.last().map_or(0.0, |last| last.degree_max_magnitude(d) * xk))
        .collect()
}

/// The gluing series of the gap `(theta_r, theta_{r+1})`: both endpoint
/// expansions evaluated at an interior point, combined as
/// `G_{r,+}(u)^{-1} G_{r+1,-}(u)`.
///
/// The default evaluation point is the midpoint, which sits exactly on the
/// boundary of the safe disc (half the gap, the distance from either
/// endpoint to its nearest other singularity) and is gated by the full
/// convergence guard. An explicit `u_eval` may sit anywhere strictly
/// inside the gap and is gated by the tail cutoff alone.
pub fn glue_interval(
    m: u32,
    r: u32,
    n: u32,
    k: usize,
    u_eval: Option<f64>,
) -> Result<(GSeries<Cx>, ConvergenceReport)> {
    if r + 1 >= m {
        return Err(Error::InvalidInput(format!(
            "gap index {r} out of range for m = {m}"
        )));
    }
    let gap = PI / m as f64;
    let lo = endpoint_angle(m, r);
    let hi = endpoint_angle(m, r + 1);
    let (x_plus, x_minus) = match u_eval {
        None => (0.5 * gap, 0.5 * gap),
        Some(u) => {
            if !(u > lo && u < hi) {
                return Err(Error::InvalidInput(format!(
                    "evaluation point {u} outside the gap ({lo}, {hi})"
                )));
            }
            (u - lo, hi - u)
        }
    };
    let plus = local_problem(m, r, Side::Plus, n, k)?;
    let minus = local_problem(m, r + 1, Side::Minus, n, k)?;
    let p_plus = plus.solve_p();
    let p_minus = minus.solve_p();
    for (p, x) in [(&p_plus, x_plus), (&p_minus, x_minus)] {
        if u_eval.is_none() {
            check_convergence(p, cx(x, 0.0), gap)?;
        } else if tail_magnitude(p, x) >= TAIL_CUTOFF {
            return Err(Error::Convergence(format!(
                "tail {:.3e} at |x| = {x:.6} above the cutoff; raise the x-order",
                tail_magnitude(p, x)
            )));
        }
    }
    let g_plus = eval_g(&p_plus, plus.residue(), cx(x_plus, 0.0), LogBranch::Real);
    let g_minus = eval_g(&p_minus, minus.residue(), cx(x_minus, 0.0), LogBranch::Real);
    let phi = &g_plus.inverse()? * &g_minus;
    let report = ConvergenceReport {
        tail_by_degree: degree_tails(&p_plus, x_plus, n)
            .into_iter()
            .zip(degree_tails(&p_minus, x_minus, n))
            .map(|(a, b)| a.max(b))
            .collect(),
    };
    Ok((phi, report))
}

/// The transcendental candidate series: the gluing constant of the first
/// gap, evaluated at the midpoint.
pub fn phi0(m: u32, n: u32, k: usize) -> Result<GSeries<Cx>> {
    Ok(glue_interval(m, 0, n, k, None)?.0)
}

/// [`phi0`] together with its tail diagnostics.
pub fn phi0_with_report(m: u32, n: u32, k: usize) -> Result<(GSeries<Cx>, ConvergenceReport)> {
    glue_interval(m, 0, n, k, None)
}

/// The candidate built from [`phi0`] at exponent `i pi` — the exponent the
/// half-turn symmetry of the connection form forces on the gluing series.
pub fn phi0_candidate(m: u32, n: u32, k: usize) -> Result<Candidate<Cx>> {
    Candidate::new(phi0(m, n, k)?, cx(0.0, PI))
}

/// Runs the half-turn product equation on the numerically computed
/// candidate and reports whether the residual stays below `tol`.
pub fn half_turn_check(m: u32, n: u32, k: usize, tol: f64) -> Result<bool> {
    Ok(phi0_candidate(m, n, k)?.check_demi_tour(tol).pass())
}

/// The two-generator equation on `(0, 1)` with residues `t_0` at `0` and
/// `t_1` at `1`: the constant comparing the solution normalized
/// `~ (1-s)^{t_1}` at `1` against the solution normalized `~ s^{t_0}` at
/// `0`, both endpoint expansions evaluated at `1/2`.
pub fn phi_kz3(n: u32, k: usize) -> Result<GSeries<Cx>> {
    if n < 1 || k < 1 {
        return Err(Error::InvalidInput(
            "need algebra degree >= 1 and x-order >= 1".into(),
        ));
    }
    let t0 = GSeries::<Cx>::gen(3, n, 0);
    let t1 = GSeries::<Cx>::gen(3, n, 1);
    // at 0: G' = (t0/x - t1/(1-x)) G, Taylor coefficients all -t1
    let zero_end = FuchsProblem::new(t0.clone(), vec![t1.scale(&cx(-1.0, 0.0)); k + 1])?;
    // at 1, in x = 1 - s: G' = (t1/x - t0/(1-x)) G
    let one_end = FuchsProblem::new(t1.clone(), vec![t0.scale(&cx(-1.0, 0.0)); k + 1])?;
    let p0 = zero_end.solve_p();
    let p1 = one_end.solve_p();
    let x = cx(0.5, 0.0);
    check_convergence(&p0, x, 1.0)?;
    check_convergence(&p1, x, 1.0)?;
    let g0 = eval_g(&p0, zero_end.residue(), x, LogBranch::Real);
    let g1 = eval_g(&p1, one_end.residue(), x, LogBranch::Real);
    Ok(&g1.inverse()? * &g0)
}

/// The `m = 3` bridge: `phi_KZ = beta^{-t_1} Phi_0^{-1} beta^{t_0}` with
/// `beta = 1 / sin(pi / 3)`, compared within `tol`.
pub fn bridge_check_m3(n: u32, k: usize, tol: f64) -> Result<bool> {
    let kz = phi_kz3(n, k)?;
    let phi = phi0(3, n, k)?;
    let log_beta = -(PI / 3.0).sin().ln();
    let t0 = GSeries::<Cx>::gen(3, n, 0);
    let t1 = GSeries::<Cx>::gen(3, n, 1);
    let left = t1.scale(&cx(-log_beta, 0.0)).exp()?;
    let right = t0.scale(&cx(log_beta, 0.0)).exp()?;
    let bridged = &(&left * &phi.inverse()?) * &right;
    Ok(bridged.eq_within(&kz, tol))
}

/// Independent quadrature oracle for `zeta(2) = int_0^1 dt/t int_0^t
/// ds/(1-s) = - int_0^1 ln(1-t)/t dt`, used by the test suite to
/// cross-check the degree-2 coefficient of the gluing series against a
/// derivation that never touches the ODE solver. Double-exponential
/// (tanh-sinh) nodes absorb the logarithmic endpoint singularity.
pub fn zeta2_quadrature() -> f64 {
    let h = 0.05;
    let mut sum = 0.0;
    for j in -128..=128 {
        let u = j as f64 * h;
        let z = 0.5 * PI * u.sinh();
        let t = 0.5 * (1.0 + z.tanh());
        if t <= 0.0 || t >= 1.0 {
            continue;
        }
        let w = 0.25 * PI * u.cosh() / z.cosh().powi(2);
        sum += w * (-(1.0 - t).ln() / t);
    }
    sum * h
}
