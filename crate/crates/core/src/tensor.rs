//! Two-sided tensor square of the series ring and its coproduct.
//!
//! The coproduct is the algebra morphism sending every generator `t_i` and
//! the central `T` to `x (x) 1 + 1 (x) x`. On a word it unshuffles letters
//! into ordered subword pairs; on `T^k` it splits binomially. Exponentials
//! of primitive elements are exactly the grouplike series, and both sides
//! of that equivalence are checkable here independently of `exp`/`log`.

use crate::scalar::Coeff;
use crate::series::{GSeries, Mono};
use std::collections::BTreeMap;

/// Element of the tensor square, sparse over pairs of monomials.
#[derive(Clone, PartialEq, Debug)]
pub struct TensorSeries<C: Coeff> {
    m: u32,
    trunc: u32,
    terms: BTreeMap<(Mono, Mono), C>,
}

impl<C: Coeff> TensorSeries<C> {
    pub fn zero(m: u32, trunc: u32) -> Self {
        TensorSeries { m, trunc, terms: BTreeMap::new() }
    }

    pub fn one(m: u32, trunc: u32) -> Self {
        let mut s = Self::zero(m, trunc);
        s.add_term(Mono::unit(), Mono::unit(), C::one());
        s
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, left: Mono, right: Mono, c: C) {
        if c.is_zero() || left.degree() + right.degree() > self.trunc {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((left, right)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let val = o.get().clone() + c;
                if val.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = val;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.m == other.m && self.trunc == other.trunc);
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.m == other.m && self.trunc == other.trunc);
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), -c.clone());
        }
        out
    }

    /// Componentwise product: `(a (x) b)(c (x) d) = ac (x) bd`.
    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.m == other.m && self.trunc == other.trunc);
        let mut out = Self::zero(self.m, self.trunc);
        for ((la, ra), ca) in &self.terms {
            let da = la.degree() + ra.degree();
            for ((lb, rb), cb) in &other.terms {
                if da + lb.degree() + rb.degree() > self.trunc {
                    continue;
                }
                let mut lw = la.word.clone();
                lw.extend_from_slice(&lb.word);
                let mut rw = ra.word.clone();
                rw.extend_from_slice(&rb.word);
                out.add_term(
                    Mono::new(lw, la.tpow + lb.tpow),
                    Mono::new(rw, ra.tpow + rb.tpow),
                    ca.clone() * cb.clone(),
                );
            }
        }
        out
    }

    /// Largest coefficient magnitude.
    pub fn max_magnitude(&self) -> f64 {
        self.terms.values().map(C::magnitude).fold(0.0, f64::max)
    }

    /// Least combined degree carrying a non-negligible coefficient.
    pub fn valuation(&self, tol: f64) -> Option<u32> {
        self.terms
            .iter()
            .filter(|(_, c)| !c.is_negligible(tol))
            .map(|((l, r), _)| l.degree() + r.degree())
            .min()
    }

    pub fn eq_within(&self, other: &Self, tol: f64) -> bool {
        self.sub(other)
            .terms
            .values()
            .all(|c| c.is_negligible(tol))
    }
}

/// Outer product `x (x) y`.
pub fn tensor_product<C: Coeff>(x: &GSeries<C>, y: &GSeries<C>) -> TensorSeries<C> {
    assert!(x.m() == y.m() && x.trunc() == y.trunc());
    let mut out = TensorSeries::zero(x.m(), x.trunc());
    for (ka, ca) in x.terms() {
        for (kb, cb) in y.terms() {
            out.add_term(ka.clone(), kb.clone(), ca.clone() * cb.clone());
        }
    }
    out
}

fn binomial(n: u32, k: u32) -> i64 {
    let mut num: i64 = 1;
    let mut den: i64 = 1;
    for i in 0..k.min(n - k) {
        num *= (n - i) as i64;
        den *= (i + 1) as i64;
    }
    num / den
}

/// The coproduct, extended multiplicatively from primitive generators.
pub fn coproduct<C: Coeff>(x: &GSeries<C>) -> TensorSeries<C> {
    let mut out = TensorSeries::zero(x.m(), x.trunc());
    for (k, c) in x.terms() {
        let n = k.word.len();
        assert!(n < 64, "word too long for subset enumeration");
        for mask in 0u64..(1u64 << n) {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (i, &l) in k.word.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    left.push(l);
                } else {
                    right.push(l);
                }
            }
            for j in 0..=k.tpow {
                let b = C::from_ratio(binomial(k.tpow, j), 1);
                out.add_term(
                    Mono::new(left.clone(), j),
                    Mono::new(right.clone(), k.tpow - j),
                    c.clone() * b,
                );
            }
        }
    }
    out
}

/// `x` is grouplike when its coproduct is `x (x) x` and its constant term
/// is 1. Only meaningful through the shared truncation order.
pub fn is_grouplike<C: Coeff>(x: &GSeries<C>, tol: f64) -> bool {
    if !(x.constant_term() == C::one()
        || (!C::EXACT && (x.constant_term() - C::one()).is_negligible(tol)))
    {
        return false;
    }
    let lhs = coproduct(x);
    let rhs = tensor_product(x, x);
    let scale = 1.0 + rhs.max_magnitude();
    lhs.eq_within(&rhs, tol * scale)
}

/// `x` is primitive when its coproduct is `x (x) 1 + 1 (x) x`.
pub fn is_primitive<C: Coeff>(x: &GSeries<C>, tol: f64) -> bool {
    let one = GSeries::one(x.m(), x.trunc());
    let lhs = coproduct(x);
    let rhs = tensor_product(x, &one).add(&tensor_product(&one, x));
    let scale = 1.0 + rhs.max_magnitude();
    lhs.eq_within(&rhs, tol * scale)
}
