//! Lyndon words and the free Lie algebra inside the series ring.
//!
//! Lyndon words over the generator alphabet index a basis of the free Lie
//! algebra: the standard (right-longest) factorization of a Lyndon word
//! turns it into a nested commutator. The module also carries the Witt
//! dimension formula, used as an independent count oracle, and the Dynkin
//! left-bracketing map, which detects Lie elements degree by degree.

use crate::scalar::Coeff;
use crate::series::{bracket, GSeries, Letter};
use crate::{Error, Result};

/// True when `w` is strictly smaller than all of its proper rotations.
pub fn is_lyndon(w: &[Letter]) -> bool {
    if w.is_empty() {
        return false;
    }
    let n = w.len();
    for i in 1..n {
        let rot: Vec<Letter> = w[i..].iter().chain(w[..i].iter()).copied().collect();
        if rot.as_slice() <= w {
            return false;
        }
    }
    true
}

/// All Lyndon words over `k` letters with length in `1..=max_len`,
/// ordered by length, then lexicographically (Duval's generation).
pub fn lyndon_words_up_to(k: Letter, max_len: usize) -> Vec<Vec<Letter>> {
    assert!(k >= 1 && max_len >= 1);
    let mut out: Vec<Vec<Letter>> = Vec::new();
    let mut w: Vec<Letter> = vec![0];
    loop {
        out.push(w.clone());
        let lenw = w.len();
        let mut x: Vec<Letter> = (0..max_len).map(|i| w[i % lenw]).collect();
        while x.last() == Some(&(k - 1)) {
            x.pop();
        }
        match x.last_mut() {
            None => break,
            Some(last) => *last += 1,
        }
        w = x;
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Lyndon words of length exactly `len`.
pub fn lyndon_words(k: Letter, len: usize) -> Vec<Vec<Letter>> {
    lyndon_words_up_to(k, len)
        .into_iter()
        .filter(|w| w.len() == len)
        .collect()
}

/// Standard factorization `w = u v` of a Lyndon word of length >= 2:
/// `v` is the longest proper Lyndon suffix, equivalently the
/// lexicographically least proper suffix.
pub fn standard_factorization(w: &[Letter]) -> (&[Letter], &[Letter]) {
    assert!(w.len() >= 2, "factorization needs length >= 2");
    let mut best = 1;
    for i in 2..w.len() {
        if w[i..] < w[best..] {
            best = i;
        }
    }
    (&w[..best], &w[best..])
}

/// The nested commutator attached to a Lyndon word via its standard
/// factorization; a single letter maps to its generator.
pub fn bracket_of_word<C: Coeff>(m: u32, trunc: u32, w: &[Letter]) -> GSeries<C> {
    assert!(!w.is_empty());
    if w.len() == 1 {
        return GSeries::gen(m, trunc, w[0]);
    }
    let (u, v) = standard_factorization(w);
    bracket(&bracket_of_word(m, trunc, u), &bracket_of_word(m, trunc, v))
}

/// Witt's formula: the number of Lyndon words of length `n` over `k`
/// letters, i.e. the rank of the degree-`n` part of the free Lie algebra.
pub fn witt_number(k: u64, n: u64) -> u64 {
    assert!(n >= 1);
    let mut total: i64 = 0;
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        total += moebius(d) * (k as i64).pow((n / d) as u32);
    }
    debug_assert!(total >= 0 && total % n as i64 == 0);
    (total / n as i64) as u64
}

fn moebius(mut n: u64) -> i64 {
    let mut factors = 0;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0; // squared prime factor
            }
            factors += 1;
        }
        p += 1;
    }
    if n > 1 {
        factors += 1;
    }
    if factors % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Dynkin left-bracketing: each word `l1 l2 ... ln` maps to the nested
/// commutator `[...[[t_{l1}, t_{l2}], t_{l3}] ..., t_{ln}]`. A homogeneous
/// degree-`n` element `x` lies in the free Lie algebra iff `dynkin(x) = n x`.
/// Rejects series carrying the central `T` (it has no free-Lie meaning).
pub fn dynkin<C: Coeff>(x: &GSeries<C>) -> Result<GSeries<C>> {
    let m = x.m();
    let trunc = x.trunc();
    let mut out = GSeries::zero(m, trunc);
    for (k, c) in x.terms() {
        if k.tpow > 0 {
            return Err(Error::InvalidInput(
                "left-bracketing map applied to a T-carrying term".into(),
            ));
        }
        if k.word.is_empty() {
            continue;
        }
        let mut acc = GSeries::gen(m, trunc, k.word[0]);
        for &l in &k.word[1..] {
            acc = bracket(&acc, &GSeries::gen(m, trunc, l));
        }
        out = &out + &acc.scale(c);
    }
    Ok(out)
}

/// True when every homogeneous component of `x` is a Lie element
/// (constant term excluded), within `tol` in approximate mode.
pub fn is_lie_element<C: Coeff>(x: &GSeries<C>, tol: f64) -> Result<bool> {
    let d = dynkin(x)?;
    for n in 1..=x.trunc() {
        let xn = x.degree_component(n);
        let lhs = d.degree_component(n);
        let rhs = xn.scale(&C::from_ratio(n as i64, 1));
        if !lhs.eq_within(&rhs, tol * (1.0 + rhs.max_magnitude())) {
            return Ok(false);
        }
    }
    Ok(x.degree_component(0).is_zero() || x.constant_term().is_negligible(tol))
}
