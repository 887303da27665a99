//! Dense univariate polynomials over `F_q`, coefficients low degree first.

use std::cmp::Ordering;

use rand::Rng;

use super::fq::{Fe, FieldDesc};
use super::AlgebraError;

/// A polynomial with no trailing zero coefficients; the empty vector is zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    pub c: Vec<Fe>,
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c
            .len()
            .cmp(&other.c.len())
            .then_with(|| self.c.iter().rev().cmp(other.c.iter().rev()))
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }
    pub fn one() -> Self {
        Poly { c: vec![Fe(1)] }
    }
    pub fn constant(a: Fe) -> Self {
        Self::new(vec![a])
    }
    /// `X`.
    pub fn x() -> Self {
        Poly { c: vec![Fe(0), Fe(1)] }
    }
    /// `X - a` for a given field.
    pub fn x_minus(f: &FieldDesc, a: Fe) -> Self {
        Poly { c: vec![f.neg(a), Fe(1)] }
    }
    pub fn monomial(a: Fe, d: usize) -> Self {
        let mut c = vec![Fe(0); d + 1];
        c[d] = a;
        Self::new(c)
    }
    pub fn new(mut c: Vec<Fe>) -> Self {
        while c.last() == Some(&Fe(0)) {
            c.pop();
        }
        Poly { c }
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    /// Degree, with `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    /// Degree with zero mapped to 0; for size estimates only.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }
    pub fn lead(&self) -> Fe {
        self.c.last().copied().unwrap_or(Fe(0))
    }
    pub fn coeff(&self, i: usize) -> Fe {
        self.c.get(i).copied().unwrap_or(Fe(0))
    }
    pub fn is_monic(&self) -> bool {
        self.lead() == Fe(1)
    }
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn random<R: Rng + ?Sized>(f: &FieldDesc, deg: usize, monic: bool, rng: &mut R) -> Self {
        let mut c: Vec<Fe> = (0..deg).map(|_| f.random(rng)).collect();
        c.push(if monic { Fe(1) } else { f.random_nonzero(rng) });
        Poly::new(c)
    }

    /// See [`encode_poly`].
    pub fn encode(&self, f: &FieldDesc) -> String {
        encode_poly(f, self)
    }
}

/// Coefficients low degree first, each in element encoding, joined by `/`.
pub fn encode_poly(f: &FieldDesc, a: &Poly) -> String {
    if a.is_zero() {
        return "0".into();
    }
    a.c.iter().map(|&x| f.encode(x)).collect::<Vec<_>>().join("/")
}

pub fn decode_poly(f: &FieldDesc, s: &str) -> Result<Poly, AlgebraError> {
    if s == "0" || s.is_empty() {
        return Ok(Poly::zero());
    }
    let c = s.split('/').map(|t| f.decode(t)).collect::<Result<Vec<_>, _>>()?;
    Ok(Poly::new(c))
}

pub fn add(f: &FieldDesc, a: &Poly, b: &Poly) -> Poly {
    let n = a.c.len().max(b.c.len());
    Poly::new((0..n).map(|i| f.add(a.coeff(i), b.coeff(i))).collect())
}

pub fn sub(f: &FieldDesc, a: &Poly, b: &Poly) -> Poly {
    let n = a.c.len().max(b.c.len());
    Poly::new((0..n).map(|i| f.sub(a.coeff(i), b.coeff(i))).collect())
}

pub fn neg(f: &FieldDesc, a: &Poly) -> Poly {
    Poly { c: a.c.iter().map(|&x| f.neg(x)).collect() }
}

pub fn scale(f: &FieldDesc, a: &Poly, s: Fe) -> Poly {
    if s == Fe(0) {
        return Poly::zero();
    }
    Poly { c: a.c.iter().map(|&x| f.mul(x, s)).collect() }
}

pub fn mul(f: &FieldDesc, a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let mut out = vec![Fe(0); a.c.len() + b.c.len() - 1];
    for (i, &x) in a.c.iter().enumerate() {
        if x == Fe(0) {
            continue;
        }
        for (j, &y) in b.c.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    Poly::new(out)
}

pub fn pow(f: &FieldDesc, a: &Poly, mut e: u64) -> Poly {
    let mut r = Poly::one();
    let mut b = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            r = mul(f, &r, &b);
        }
        e >>= 1;
        if e > 0 {
            b = mul(f, &b, &b);
        }
    }
    r
}

/// Quotient and remainder; panics when dividing by zero.
pub fn divrem(f: &FieldDesc, a: &Poly, b: &Poly) -> (Poly, Poly) {
    assert!(!b.is_zero(), "polynomial division by zero");
    if a.c.len() < b.c.len() {
        return (Poly::zero(), a.clone());
    }
    let inv = f.inv(b.lead());
    let mut r = a.c.clone();
    let db = b.c.len() - 1;
    let mut q = vec![Fe(0); a.c.len() - db];
    for i in (db..r.len()).rev() {
        let c = f.mul(r[i], inv);
        if c == Fe(0) {
            continue;
        }
        q[i - db] = c;
        for j in 0..=db {
            r[i - db + j] = f.sub(r[i - db + j], f.mul(c, b.c[j]));
        }
    }
    r.truncate(db);
    (Poly::new(q), Poly::new(r))
}

pub fn rem(f: &FieldDesc, a: &Poly, b: &Poly) -> Poly {
    if a.c.len() < b.c.len() {
        return a.clone();
    }
    divrem(f, a, b).1
}

/// Exact division; panics if `b` does not divide `a`.
pub fn div_exact(f: &FieldDesc, a: &Poly, b: &Poly) -> Poly {
    let (q, r) = divrem(f, a, b);
    assert!(r.is_zero(), "inexact polynomial division");
    q
}

pub fn monic(f: &FieldDesc, a: &Poly) -> Poly {
    if a.is_zero() || a.is_monic() {
        return a.clone();
    }
    scale(f, a, f.inv(a.lead()))
}

/// Monic gcd (zero only when both inputs are zero).
pub fn gcd(f: &FieldDesc, a: &Poly, b: &Poly) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

/// Returns `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn xgcd(f: &FieldDesc, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(), Poly::zero());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() {
        let (q, r) = divrem(f, &r0, &r1);
        let s = sub(f, &s0, &mul(f, &q, &s1));
        let t = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_zero() {
        return (r0, s0, t0);
    }
    let inv = f.inv(r0.lead());
    (scale(f, &r0, inv), scale(f, &s0, inv), scale(f, &t0, inv))
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(f: &FieldDesc, a: &Poly, m: &Poly) -> Option<Poly> {
    let (g, s, _) = xgcd(f, &rem(f, a, m), m);
    (g == Poly::one()).then(|| rem(f, &s, m))
}

pub fn mulmod(f: &FieldDesc, a: &Poly, b: &Poly, m: &Poly) -> Poly {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod(f: &FieldDesc, a: &Poly, mut e: u128, m: &Poly) -> Poly {
    let mut r = rem(f, &Poly::one(), m);
    let mut b = rem(f, a, m);
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(f, &r, &b, m);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(f, &b, &b, m);
        }
    }
    r
}

pub fn eval(f: &FieldDesc, a: &Poly, x: Fe) -> Fe {
    a.c.iter().rev().fold(Fe(0), |acc, &c| f.add(f.mul(acc, x), c))
}

pub fn derivative(f: &FieldDesc, a: &Poly) -> Poly {
    Poly::new(
        a.c.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_i64(i as i64)))
            .collect(),
    )
}

/// `a(b(X)) mod m` by Horner's rule.
pub fn compose_mod(f: &FieldDesc, a: &Poly, b: &Poly, m: &Poly) -> Poly {
    let b = rem(f, b, m);
    let mut r = Poly::zero();
    for &c in a.c.iter().rev() {
        r = add(f, &mulmod(f, &r, &b, m), &Poly::constant(c));
    }
    rem(f, &r, m)
}

/// `a(b(X))` without reduction.
pub fn compose(f: &FieldDesc, a: &Poly, b: &Poly) -> Poly {
    let mut r = Poly::zero();
    for &c in a.c.iter().rev() {
        r = add(f, &mul(f, &r, b), &Poly::constant(c));
    }
    r
}

/// Multiplicity of `u` in `a` (`a` nonzero, `u` nonconstant), and the cofactor.
pub fn valuation(f: &FieldDesc, a: &Poly, u: &Poly) -> (usize, Poly) {
    let mut n = 0;
    let mut cur = a.clone();
    loop {
        let (q, r) = divrem(f, &cur, u);
        if !r.is_zero() {
            return (n, cur);
        }
        n += 1;
        cur = q;
    }
}

/// Product of the linear factors `X - r`.
pub fn from_roots(f: &FieldDesc, roots: &[Fe]) -> Poly {
    roots
        .iter()
        .fold(Poly::one(), |acc, &r| mul(f, &acc, &Poly::x_minus(f, r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field_make;

    #[test]
    fn division_identity() {
        let f = field_make(7, 1, 0).unwrap();
        let a = Poly::new(vec![Fe(3), Fe(1), Fe(4), Fe(1), Fe(5)]);
        let b = Poly::new(vec![Fe(2), Fe(0), Fe(1)]);
        let (q, r) = divrem(&f, &a, &b);
        assert_eq!(add(&f, &mul(&f, &q, &b), &r), a);
        assert!(r.c.len() < b.c.len());
    }

    #[test]
    fn xgcd_bezout() {
        let f = field_make(11, 1, 0).unwrap();
        let a = Poly::new(vec![Fe(1), Fe(2), Fe(3), Fe(1)]);
        let b = Poly::new(vec![Fe(5), Fe(0), Fe(1)]);
        let (g, s, t) = xgcd(&f, &a, &b);
        assert_eq!(add(&f, &mul(&f, &s, &a), &mul(&f, &t, &b)), g);
    }
}
