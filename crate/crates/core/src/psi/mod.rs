//! The evaluation map from degree-zero divisors to `F_{q^k}^* / F_q^*`.
//!
//! For a principal divisor `div(g)` the value is `g(F)`. A general elementary
//! divisor is reduced by Mumford steps `(u, v) -> (u', -v mod u')`, each
//! contributing `(tau - v(theta)) / u'(theta)`, down to `(T) - (O)` with `T`
//! rational; that last piece is `f_{n,T}(F)^(1/n)` for the Miller function of
//! `n = ord(T)`, the root taken modulo `M = (q^k - 1)/(q - 1)`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigUint;

use crate::algebra::ext::{ExtElem, ExtFieldDesc};
use crate::algebra::field::{eval_base_poly, Field};
use crate::algebra::fq::Fe;
use crate::algebra::poly::{self, Poly};
use crate::basis::EllipticBasis;
use crate::curve::{trace_sequence, Curve, Point};
use crate::divisor::{CurveFunction, Divisor, Place};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PsiError {
    #[error("group order is not invertible modulo M")]
    NdNotInvertible,
    #[error("the point F lies in the support")]
    SupportHitsF,
    #[error("divisor has degree {0}, expected 0")]
    NonZeroDegree(i64),
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `a^-1 mod m`.
pub fn inv_mod_u128(a: u128, m: u128) -> Option<u128> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u128)
}

/// Group orders `N_1..N_D` over `F_{q^i}`, their lcm, and its invertibility modulo `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NdTable {
    pub d: usize,
    pub orders: Vec<u128>,
    pub lcm: BigUint,
    pub m: u128,
    pub inv_ok: bool,
    pub inv: Option<u128>,
}

pub fn nd_build(c: &Curve, k: usize, d: usize) -> NdTable {
    let q = c.q();
    let ts = trace_sequence(q, c.trace(), d.max(1));
    let orders: Vec<u128> = (1..=d.max(1))
        .map(|i| ((q as i128).pow(i as u32) + 1 - ts[i]) as u128)
        .collect();
    let mut lcm = BigUint::from(1u32);
    for &n in &orders {
        let n = BigUint::from(n);
        let g = num_gcd(&lcm, &n);
        lcm = &lcm / g * n;
    }
    let m = crate::basis::quotient_order(q, k);
    let mb = BigUint::from(m);
    let inv_ok = num_gcd(&lcm, &mb) == BigUint::from(1u32);
    let inv = if inv_ok {
        let r = u128::try_from(&lcm % &mb).expect("residue below M");
        inv_mod_u128(r, m)
    } else {
        None
    };
    NdTable { d: d.max(1), orders, lcm, m, inv_ok, inv }
}

fn num_gcd(a: &BigUint, b: &BigUint) -> BigUint {
    let (mut a, mut b) = (a.clone(), b.clone());
    while b != BigUint::from(0u32) {
        let t = &a % &b;
        a = b;
        b = t;
    }
    a
}

/// Class in `F_{q^k}^* / F_q^*`, scaled so the lowest nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PsiValue(pub ExtElem);

impl PsiValue {
    pub fn new(e: &ExtFieldDesc, x: &ExtElem) -> Self {
        let f = e.fq();
        let lead = x.0.iter().copied().find(|c| *c != Fe(0)).expect("nonzero value");
        PsiValue(e.scale(x, f.inv(lead)))
    }
    pub fn one(e: &ExtFieldDesc) -> Self {
        PsiValue(e.one())
    }
    pub fn mul(&self, e: &ExtFieldDesc, o: &PsiValue) -> Self {
        PsiValue::new(e, &e.mul(&self.0, &o.0))
    }
    pub fn inv(&self, e: &ExtFieldDesc) -> Self {
        PsiValue::new(e, &e.inv(&self.0))
    }
    /// `self^n` for a signed exponent.
    pub fn pow(&self, e: &ExtFieldDesc, n: i128) -> Self {
        let base = if n < 0 { e.inv(&self.0) } else { self.0.clone() };
        PsiValue::new(e, &e.pow(&base, n.unsigned_abs()))
    }
    pub fn frob(&self, e: &ExtFieldDesc) -> Self {
        PsiValue::new(e, &e.frob(&self.0))
    }
    pub fn is_one(&self, e: &ExtFieldDesc) -> bool {
        self.0 == e.one()
    }
    pub fn encode(&self, e: &ExtFieldDesc) -> String {
        e.encode(&self.0)
    }
}

/// How the Miller function of a rational point is accumulated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chain {
    DoubleAndAdd,
    Sequential,
}

pub struct PsiEval<'a> {
    pub b: &'a EllipticBasis,
    cache: Mutex<HashMap<Place, PsiValue>>,
    chain: Chain,
}

impl<'a> PsiEval<'a> {
    pub fn new(b: &'a EllipticBasis) -> Self {
        Self::with_chain(b, Chain::DoubleAndAdd)
    }

    pub fn with_chain(b: &'a EllipticBasis, chain: Chain) -> Self {
        PsiEval { b, cache: Mutex::new(HashMap::new()), chain }
    }

    fn ext(&self) -> &ExtFieldDesc {
        &self.b.ext
    }

    pub fn one(&self) -> PsiValue {
        PsiValue::one(self.ext())
    }

    /// `g(F)` for a function on `E`.
    pub fn function_value(&self, g: &CurveFunction) -> Result<PsiValue, PsiError> {
        let e = self.ext();
        let v = g.eval(e, &self.b.theta, &self.b.tau).ok_or(PsiError::SupportHitsF)?;
        if e.is_zero(&v) {
            return Err(PsiError::SupportHitsF);
        }
        Ok(PsiValue::new(e, &v))
    }

    /// Value on `(p) - deg(p) (O)`.
    pub fn place(&self, p: &Place) -> Result<PsiValue, PsiError> {
        if let Some(v) = self.cache.lock().expect("cache lock").get(p) {
            return Ok(v.clone());
        }
        let v = self.place_uncached(p)?;
        self.cache.lock().expect("cache lock").insert(p.clone(), v.clone());
        Ok(v)
    }

    fn place_uncached(&self, p: &Place) -> Result<PsiValue, PsiError> {
        let e = self.ext();
        match p {
            Place::Infinity => Ok(self.one()),
            Place::Inert { u } => {
                let x = e.from_poly(u);
                if e.is_zero(&x) {
                    return Err(PsiError::SupportHitsF);
                }
                Ok(PsiValue::new(e, &x))
            }
            Place::Split { u, v } => self.mumford(u, v),
            Place::Ramified { u } => self.mumford(u, &Poly::zero()),
        }
    }

    /// Value on the Mumford divisor `(u, v) - deg(u) (O)`, escaping through a
    /// line when a reduction step meets `F`.
    pub fn mumford(&self, u: &Poly, v: &Poly) -> Result<PsiValue, PsiError> {
        let e = self.ext();
        if *u == *e.modulus() && eval_base_poly(e, &v.c, &self.b.theta) == self.b.tau {
            return Err(PsiError::SupportHitsF);
        }
        match self.reduce(u, v) {
            Ok(x) => return Ok(x),
            Err(PsiError::SupportHitsF) => {}
            Err(e) => return Err(e),
        }
        let f = self.b.fq();
        for i in 0..f.q() * f.q() {
            let (lam, mu) = (f.elem(i / f.q()), f.elem(i % f.q()));
            let lv = Poly::new(vec![mu, lam]);
            let ul = poly::sub(f, &self.b.curve.rhs_poly(), &poly::mul(f, &lv, &lv));
            if !poly::gcd(f, &ul, u).is_constant() {
                continue;
            }
            let lf = e.sub(&self.b.tau, &eval_base_poly(e, &lv.c, &self.b.theta));
            if e.is_zero(&lf) {
                continue;
            }
            let big_u = poly::mul(f, u, &ul);
            let inv = poly::inv_mod(f, u, &ul).expect("coprime");
            let corr = poly::mulmod(f, &poly::sub(f, &lv, v), &inv, &ul);
            let big_v = poly::rem(f, &poly::add(f, v, &poly::mul(f, u, &corr)), &big_u);
            if let Ok(x) = self.reduce(&big_u, &big_v) {
                return Ok(x.mul(e, &PsiValue::new(e, &lf).inv(e)));
            }
        }
        Err(PsiError::SupportHitsF)
    }

    fn reduce(&self, u: &Poly, v: &Poly) -> Result<PsiValue, PsiError> {
        let f = self.b.fq();
        let e = self.ext();
        let rhs = self.b.curve.rhs_poly();
        let (mut u, mut v) = (poly::monic(f, u), v.clone());
        let mut acc = e.one();
        while u.degree() >= 2 {
            let num = poly::sub(f, &rhs, &poly::mul(f, &v, &v));
            let (q2, r) = poly::divrem(f, &num, &u);
            debug_assert!(r.is_zero(), "v^2 = f mod u");
            let u2 = poly::monic(f, &q2);
            let top = e.sub(&self.b.tau, &eval_base_poly(e, &v.c, &self.b.theta));
            let bot = e.from_poly(&u2);
            if e.is_zero(&top) || e.is_zero(&bot) {
                return Err(PsiError::SupportHitsF);
            }
            acc = e.mul(&acc, &e.div(&top, &bot));
            v = poly::rem(f, &poly::neg(f, &v), &u2);
            u = u2;
        }
        let mut out = PsiValue::new(e, &acc);
        if u.degree() == 1 {
            let t = Point::Aff(f.neg(u.c[0]), v.coeff(0));
            out = out.mul(e, &self.rational(&t)?);
        }
        Ok(out)
    }

    /// Value on `(T) - (O)` for a rational point `T`.
    pub fn rational(&self, t: &Point<Fe>) -> Result<PsiValue, PsiError> {
        if t.is_inf() {
            return Ok(self.one());
        }
        let n = self.b.curve.point_order(t);
        let inv = inv_mod_u128(n as u128, self.b.m).ok_or(PsiError::NdNotInvertible)?;
        let e = self.ext();
        let m = self.miller(t, n);
        Ok(PsiValue::new(e, &e.pow(&m, inv)))
    }

    /// `f_{n,T}(F)` with `div f_{n,T} = n (T) - n (O)` when `n T = O`.
    pub fn miller(&self, t: &Point<Fe>, n: u64) -> ExtElem {
        let e = self.ext();
        let mut acc = e.one();
        let mut r = t.clone();
        match self.chain {
            Chain::DoubleAndAdd => {
                let bits = 64 - n.leading_zeros();
                for i in (0..bits - 1).rev() {
                    let g = self.step(&r, &r);
                    acc = e.mul(&e.mul(&acc, &acc), &g.0);
                    r = g.1;
                    if (n >> i) & 1 == 1 {
                        let g = self.step(&r, t);
                        acc = e.mul(&acc, &g.0);
                        r = g.1;
                    }
                }
            }
            Chain::Sequential => {
                for _ in 1..n {
                    let g = self.step(&r, t);
                    acc = e.mul(&acc, &g.0);
                    r = g.1;
                }
            }
        }
        debug_assert!(r.is_inf());
        acc
    }

    /// `(l_{P,Q} / v_{P+Q})(F)` and `P + Q`.
    fn step(&self, p: &Point<Fe>, q: &Point<Fe>) -> (ExtElem, Point<Fe>) {
        let c = &self.b.curve;
        let e = self.ext();
        let (th, ta) = (&self.b.theta, &self.b.tau);
        let ec = c.ec();
        let s = ec.add(p, q);
        let (Point::Aff(xp, yp), Point::Aff(..)) = (p, q) else {
            unreachable!("Miller steps only see affine points")
        };
        let line = match ec.slope(p, q) {
            None => e.sub(th, &e.embed(*xp)),
            Some(l) => {
                let dx = e.sub(th, &e.embed(*xp));
                e.sub(&e.sub(ta, &e.embed(*yp)), &e.scale(&dx, l))
            }
        };
        let val = match &s {
            Point::Inf => line,
            Point::Aff(xs, _) => e.div(&line, &e.sub(th, &e.embed(*xs))),
        };
        (val, s)
    }

    /// Value on a degree-zero divisor.
    pub fn divisor(&self, d: &Divisor) -> Result<PsiValue, PsiError> {
        if d.degree() != 0 {
            return Err(PsiError::NonZeroDegree(d.degree()));
        }
        let e = self.ext();
        let mut acc = self.one();
        for (p, n) in d.terms() {
            if p.is_finite() {
                acc = acc.mul(e, &self.place(p)?.pow(e, *n as i128));
            }
        }
        Ok(acc)
    }

    /// Product of `place^coeff` over elementary pieces.
    pub fn combination(&self, terms: &[(Place, i64)]) -> Result<PsiValue, PsiError> {
        let e = self.ext();
        let mut acc = self.one();
        for (p, n) in terms {
            acc = acc.mul(e, &self.place(p)?.pow(e, *n as i128));
        }
        Ok(acc)
    }

    /// Whether both sides have the same value.
    pub fn verify_relation(
        &self,
        lhs: &[(Place, i64)],
        rhs: &[(Place, i64)],
    ) -> Result<bool, PsiError> {
        Ok(self.combination(lhs)? == self.combination(rhs)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_inverse() {
        assert_eq!(inv_mod_u128(9, 488281), Some(108507));
        assert_eq!(inv_mod_u128(31, 488281), None);
    }
}
