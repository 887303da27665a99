//! A small field abstraction so curve and evaluation code can run over
//! `F_q`, `F_q[X]/(u)` and quadratic extensions of those alike.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;

use super::fq::{Fe, FieldDesc};

pub trait Field: Clone + Send + Sync {
    type El: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    /// Panics on zero.
    fn inv(&self, a: &Self::El) -> Self::El;
    /// Image of a base-field element.
    fn embed(&self, c: Fe) -> Self::El;
    /// The `q`-power Frobenius, `q` being the size of the base field `F_q`.
    fn frob(&self, a: &Self::El) -> Self::El;
    /// Number of elements.
    fn size(&self) -> BigUint;
    /// The base field `F_q`.
    fn base(&self) -> &FieldDesc;
    /// Degree over `F_q`.
    fn degree(&self) -> usize;
    /// Enumerates elements: index `i` in `0..size`.
    fn element(&self, i: u64) -> Self::El;
    /// The element as a member of `F_q`, if it lies there.
    fn to_base(&self, a: &Self::El) -> Option<Fe>;
    /// Coordinates over `F_q` in a fixed basis; length `degree()`.
    fn coords(&self, a: &Self::El) -> Vec<Fe>;

    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.add(a, &self.neg(b))
    }
    fn is_zero(&self, a: &Self::El) -> bool {
        *a == self.zero()
    }
    fn div(&self, a: &Self::El, b: &Self::El) -> Self::El {
        self.mul(a, &self.inv(b))
    }
    fn square(&self, a: &Self::El) -> Self::El {
        self.mul(a, a)
    }
    fn from_i64(&self, x: i64) -> Self::El {
        self.embed(self.base().from_i64(x))
    }
    fn pow(&self, a: &Self::El, e: u128) -> Self::El {
        let mut r = self.one();
        let mut b = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }
    fn pow_big(&self, a: &Self::El, e: &BigUint) -> Self::El {
        let mut r = self.one();
        for i in (0..e.bits()).rev() {
            r = self.mul(&r, &r);
            if e.bit(i) {
                r = self.mul(&r, a);
            }
        }
        r
    }
    /// `a^(q^times)`.
    fn frob_n(&self, a: &Self::El, times: usize) -> Self::El {
        let mut r = a.clone();
        for _ in 0..times % self.degree().max(1) {
            r = self.frob(&r);
        }
        r
    }
    /// Norm down to `F_q`.
    fn norm(&self, a: &Self::El) -> Fe {
        let mut acc = a.clone();
        let mut t = a.clone();
        for _ in 1..self.degree() {
            t = self.frob(&t);
            acc = self.mul(&acc, &t);
        }
        self.to_base(&acc).expect("norm lies in the base field")
    }
    fn is_square(&self, a: &Self::El) -> bool {
        self.is_zero(a) || self.base().chi(self.norm(a)) == 1
    }
    /// A square root (Tonelli–Shanks), if one exists.
    fn sqrt(&self, a: &Self::El) -> Option<Self::El> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        if !self.is_square(a) {
            return None;
        }
        let qm1 = self.size() - 1u32;
        let s = qm1.trailing_zeros().unwrap_or(0);
        let t = &qm1 >> s;
        let mut i = 2u64;
        let z = loop {
            let c = self.element(i);
            if !self.is_zero(&c) && !self.is_square(&c) {
                break c;
            }
            i += 1;
        };
        let mut m = s;
        let mut c = self.pow_big(&z, &t);
        let mut x = self.pow_big(a, &((&t + 1u32) >> 1));
        let mut b = self.pow_big(a, &t);
        let one = self.one();
        while b != one {
            let mut j = 0;
            let mut b2 = b.clone();
            while b2 != one {
                b2 = self.mul(&b2, &b2);
                j += 1;
            }
            let mut d = c.clone();
            for _ in 0..(m - j - 1) {
                d = self.mul(&d, &d);
            }
            x = self.mul(&x, &d);
            c = self.mul(&d, &d);
            b = self.mul(&b, &c);
            m = j;
        }
        Some(x)
    }
}

impl Field for FieldDesc {
    type El = Fe;
    fn zero(&self) -> Fe {
        Fe(0)
    }
    fn one(&self) -> Fe {
        Fe(1)
    }
    fn add(&self, a: &Fe, b: &Fe) -> Fe {
        FieldDesc::add(self, *a, *b)
    }
    fn neg(&self, a: &Fe) -> Fe {
        FieldDesc::neg(self, *a)
    }
    fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        FieldDesc::sub(self, *a, *b)
    }
    fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        FieldDesc::mul(self, *a, *b)
    }
    fn inv(&self, a: &Fe) -> Fe {
        FieldDesc::inv(self, *a)
    }
    fn embed(&self, c: Fe) -> Fe {
        c
    }
    fn frob(&self, a: &Fe) -> Fe {
        *a
    }
    fn size(&self) -> BigUint {
        BigUint::from(self.q())
    }
    fn base(&self) -> &FieldDesc {
        self
    }
    fn degree(&self) -> usize {
        1
    }
    fn element(&self, i: u64) -> Fe {
        self.elem(i)
    }
    fn to_base(&self, a: &Fe) -> Option<Fe> {
        Some(*a)
    }
    fn coords(&self, a: &Fe) -> Vec<Fe> {
        vec![*a]
    }
    fn pow(&self, a: &Fe, e: u128) -> Fe {
        FieldDesc::pow(self, *a, e)
    }
    fn is_square(&self, a: &Fe) -> bool {
        FieldDesc::is_square(self, *a)
    }
    fn sqrt(&self, a: &Fe) -> Option<Fe> {
        FieldDesc::sqrt(self, *a)
    }
    fn norm(&self, a: &Fe) -> Fe {
        *a
    }
}

/// Monic polynomial `prod (X - r)` over any field, coefficients low first.
pub fn poly_from_roots<F: Field>(k: &F, roots: &[F::El]) -> Vec<F::El> {
    let mut out = vec![k.one()];
    for r in roots {
        let mut next = vec![k.zero(); out.len() + 1];
        for (i, c) in out.iter().enumerate() {
            next[i + 1] = k.add(&next[i + 1], c);
            next[i] = k.sub(&next[i], &k.mul(c, r));
        }
        out = next;
    }
    out
}

/// Evaluates an `F_q` polynomial at an element of an extension.
pub fn eval_base_poly<F: Field>(k: &F, coeffs: &[Fe], x: &F::El) -> F::El {
    let mut acc = k.zero();
    for &c in coeffs.iter().rev() {
        acc = k.add(&k.mul(&acc, x), &k.embed(c));
    }
    acc
}

/// Minimal polynomial over `F_q` of `x`, monic, coefficients low first.
pub fn min_poly<F: Field>(k: &F, x: &F::El) -> Vec<Fe> {
    let mut conj = vec![x.clone()];
    let mut t = k.frob(x);
    while t != *x {
        conj.push(t.clone());
        t = k.frob(&t);
    }
    poly_from_roots(k, &conj)
        .iter()
        .map(|c| k.to_base(c).expect("conjugate product is rational"))
        .collect()
}
