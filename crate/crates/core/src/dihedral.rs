//! The dihedral group of order `2m`, its action on the series ring, and
//! the twisted group algebra built from both.
//!
//! Elements are kept in the normal form `s^e w^k` (`e` in {0,1}, `k` mod m)
//! where `s` is a fixed reflection and `w` the rotation of order `m`. The
//! group acts on generator indices by `r -> (-1)^e (r + 2k)`; reflections
//! `w^r s` correspond 1:1 to the generators `t_r` (indices mod `m`, the
//! last one eliminated inside the series ring).
//!
//! `flip` is the algebra involution `t_r -> t_{1-r}`, `T -> T`. For odd `m`
//! it is realized by an inner group element; for even `m` it is outer and
//! pairs with the group automorphism `s -> ws`, `w -> w^{-1}`.

use crate::error::{Error, Result};
use crate::linalg::{LinearSystem, SolveOutcome};
use crate::scalar::Coeff;
use crate::series::GSeries;
use std::collections::BTreeMap;
use std::fmt;

/// Dihedral group element `s^e w^k` of the group of order `2m`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WElem {
    m: u32,
    e: u8,
    k: u32,
}

impl WElem {
    pub fn new(m: u32, e: u8, k: i64) -> Self {
        assert!(m >= 3);
        WElem { m, e: e % 2, k: k.rem_euclid(m as i64) as u32 }
    }

    pub fn identity(m: u32) -> Self {
        Self::new(m, 0, 0)
    }

    /// The rotation `w^k`.
    pub fn rotation(m: u32, k: i64) -> Self {
        Self::new(m, 0, k)
    }

    /// The base reflection `s`.
    pub fn s(m: u32) -> Self {
        Self::new(m, 1, 0)
    }

    /// The reflection `w^r s` (in normal form `s w^{-r}`), the one whose
    /// mirror line carries the generator index `r`.
    pub fn reflection(m: u32, r: i64) -> Self {
        Self::new(m, 1, -r)
    }

    /// `w s`, the reflection adjacent to `s`.
    pub fn omega_s(m: u32) -> Self {
        Self::reflection(m, 1)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn is_reflection(&self) -> bool {
        self.e == 1
    }

    /// Exposed normal form `(e, k)`.
    pub fn normal_form(&self) -> (u8, u32) {
        (self.e, self.k)
    }

    pub fn mul(&self, other: &WElem) -> WElem {
        assert_eq!(self.m, other.m);
        let k = if other.e == 1 {
            -(self.k as i64) + other.k as i64
        } else {
            self.k as i64 + other.k as i64
        };
        WElem::new(self.m, self.e + other.e, k)
    }

    pub fn inv(&self) -> WElem {
        if self.e == 0 {
            WElem::new(self.m, 0, -(self.k as i64))
        } else {
            *self // reflections are involutions
        }
    }

    pub fn conj(&self, x: &WElem) -> WElem {
        self.mul(x).mul(&self.inv())
    }

    /// Action on generator indices: `r -> (-1)^e (r + 2k)  (mod m)`.
    pub fn act_index(&self, r: i64) -> i64 {
        let v = r + 2 * self.k as i64;
        let v = if self.e == 1 { -v } else { v };
        v.rem_euclid(self.m as i64)
    }

    /// The companion outer automorphism: `s -> ws`, `w -> w^{-1}`.
    pub fn flip_conjugate(&self) -> WElem {
        if self.e == 0 {
            WElem::new(self.m, 0, -(self.k as i64))
        } else {
            WElem::new(self.m, 1, -(self.k as i64 + 1))
        }
    }

    /// All `2m` group elements in a fixed order.
    pub fn all(m: u32) -> impl Iterator<Item = WElem> {
        (0..2u8).flat_map(move |e| (0..m).map(move |k| WElem::new(m, e, k as i64)))
    }
}

impl fmt::Debug for WElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.e, self.k) {
            (0, 0) => write!(f, "1"),
            (0, k) => write!(f, "w^{}", k),
            (1, 0) => write!(f, "s"),
            (_, k) => write!(f, "s.w^{}", k),
        }
    }
}

/// Action of a group element on a series (algebra automorphism permuting
/// generator indices; `T` is fixed).
pub fn act<C: Coeff>(g: &WElem, x: &GSeries<C>) -> GSeries<C> {
    assert_eq!(g.m(), x.m());
    let images: Vec<GSeries<C>> = (0..x.num_gens() as i64)
        .map(|i| GSeries::gen_reduced(x.m(), x.trunc(), g.act_index(i)))
        .collect();
    x.substitute(&images).expect("index images have valuation 1")
}

/// The involution `t_r -> t_{1-r}`, `T -> T` (an algebra automorphism).
pub fn flip<C: Coeff>(x: &GSeries<C>) -> GSeries<C> {
    let images: Vec<GSeries<C>> = (0..x.num_gens() as i64)
        .map(|i| GSeries::gen_reduced(x.m(), x.trunc(), 1 - i))
        .collect();
    x.substitute(&images).expect("index images have valuation 1")
}

/// Element of the twisted group algebra: a finite sum of `g * series`.
#[derive(Clone, PartialEq, Debug)]
pub struct FlatElem<C: Coeff> {
    m: u32,
    trunc: u32,
    parts: BTreeMap<WElem, GSeries<C>>,
}

impl<C: Coeff> FlatElem<C> {
    pub fn zero(m: u32, trunc: u32) -> Self {
        FlatElem { m, trunc, parts: BTreeMap::new() }
    }

    pub fn one(m: u32, trunc: u32) -> Self {
        Self::from_pair(WElem::identity(m), GSeries::one(m, trunc))
    }

    pub fn from_welem(g: WElem, trunc: u32) -> Self {
        Self::from_pair(g, GSeries::one(g.m(), trunc))
    }

    pub fn from_series(x: GSeries<C>) -> Self {
        Self::from_pair(WElem::identity(x.m()), x)
    }

    pub fn from_pair(g: WElem, x: GSeries<C>) -> Self {
        let mut parts = BTreeMap::new();
        let (m, trunc) = (g.m(), x.trunc());
        assert_eq!(m, x.m());
        if !x.is_zero() {
            parts.insert(g, x);
        }
        FlatElem { m, trunc, parts }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn parts(&self) -> impl Iterator<Item = (&WElem, &GSeries<C>)> {
        self.parts.iter()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// The series attached to `g` (zero when absent).
    pub fn series_at(&self, g: &WElem) -> GSeries<C> {
        self.parts
            .get(g)
            .cloned()
            .unwrap_or_else(|| GSeries::zero(self.m, self.trunc))
    }

    fn insert_add(&mut self, g: WElem, x: GSeries<C>) {
        if x.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.parts.entry(g) {
            Entry::Vacant(v) => {
                v.insert(x);
            }
            Entry::Occupied(mut o) => {
                let sum = &*o.get() + &x;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.m == other.m && self.trunc == other.trunc);
        let mut out = self.clone();
        for (g, x) in &other.parts {
            out.insert_add(*g, x.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.m, self.trunc);
        for (g, x) in &self.parts {
            out.parts.insert(*g, -x);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product with the semidirect twist: `(g a)(h b) = gh ((h^{-1} . a) b)`.
    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.m == other.m && self.trunc == other.trunc);
        let mut out = Self::zero(self.m, self.trunc);
        for (g, a) in &self.parts {
            for (h, b) in &other.parts {
                let moved = act(&h.inv(), a);
                out.insert_add(g.mul(h), &moved * b);
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.m, self.trunc);
        for (g, x) in &self.parts {
            out.insert_add(*g, x.scale(c));
        }
        out
    }

    /// Conjugation action of the group: `g . x = (g 1) x (g^{-1} 1)`.
    pub fn act_w(&self, g: &WElem) -> Self {
        let gf = Self::from_welem(*g, self.trunc);
        let gi = Self::from_welem(g.inv(), self.trunc);
        gf.mul(self).mul(&gi)
    }

    /// The involution extended to the twisted algebra:
    /// `g a  ->  flip_conjugate(g) flip(a)`.
    pub fn flip(&self) -> Self {
        let mut out = Self::zero(self.m, self.trunc);
        for (g, x) in &self.parts {
            out.insert_add(g.flip_conjugate(), flip(x));
        }
        out
    }

    pub fn is_t_free(&self, tol: f64) -> bool {
        self.parts.values().all(|x| x.is_t_free(tol))
    }

    pub fn eq_within(&self, other: &Self, tol: f64) -> bool {
        self.sub(other)
            .parts
            .values()
            .all(|x| x.valuation(tol).is_none())
    }

    pub fn max_magnitude(&self) -> f64 {
        self.parts
            .values()
            .map(GSeries::max_magnitude)
            .fold(0.0, f64::max)
    }

    /// Inverse, when the group-algebra part of degree zero is invertible:
    /// invert that part by a linear solve in the group algebra, then remove
    /// the higher-degree remainder with a truncated geometric series.
    pub fn inverse(&self) -> Result<Self> {
        let m = self.m;
        let n = (2 * m) as usize;
        // x0: constant coefficients per group element
        let order: Vec<WElem> = WElem::all(m).collect();
        let mut sys = LinearSystem::<C>::new(n);
        // rows: for each f in W, sum_{g h = f} c_g y_h = [f == 1]
        for f in &order {
            let mut row = vec![C::zero(); n];
            for (h_idx, h) in order.iter().enumerate() {
                // g = f h^{-1}
                let g = f.mul(&h.inv());
                row[h_idx] = self.series_at(&g).constant_term();
            }
            let rhs = if *f == WElem::identity(m) { C::one() } else { C::zero() };
            sys.push_row(row, rhs);
        }
        let sol = match sys.solve(1e-12) {
            SolveOutcome::Solved(s) if s.rank == n => s,
            _ => {
                return Err(Error::InvalidInput(
                    "degree-zero group part is not invertible".into(),
                ))
            }
        };
        let mut y0 = Self::zero(m, self.trunc);
        for (h_idx, h) in order.iter().enumerate() {
            y0.insert_add(*h, GSeries::scalar(m, self.trunc, sol.x[h_idx].clone()));
        }
        // x y0 = 1 + nil, with nil of positive series degree
        let nil = self.mul(&y0).sub(&Self::one(m, self.trunc));
        let mut acc = Self::one(m, self.trunc);
        let mut pow = Self::one(m, self.trunc);
        for _ in 0..self.trunc {
            pow = pow.mul(&nil).neg();
            if pow.parts.is_empty() {
                break;
            }
            acc = acc.add(&pow);
        }
        Ok(y0.mul(&acc))
    }
}
