//! Functions on `E` in the shape `(n0(X) + n1(X) Y) / (X - x1)^e`.

use crate::algebra::field::{eval_base_poly, Field};
use crate::algebra::fq::{Fe, FieldDesc};
use crate::algebra::poly::{self, Poly};
use crate::curve::Curve;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFunction {
    pub n0: Poly,
    pub n1: Poly,
    pub e: u32,
    /// Root of the denominator, the abscissa of `P_1`.
    pub x1: Fe,
}

impl CurveFunction {
    pub fn constant(c: Fe, x1: Fe) -> Self {
        CurveFunction { n0: Poly::constant(c), n1: Poly::zero(), e: 0, x1 }
    }
    pub fn from_x(p: Poly, x1: Fe) -> Self {
        CurveFunction { n0: p, n1: Poly::zero(), e: 0, x1 }
    }
    /// The function `Y`.
    pub fn y(x1: Fe) -> Self {
        CurveFunction { n0: Poly::zero(), n1: Poly::one(), e: 0, x1 }
    }
    pub fn is_zero(&self) -> bool {
        self.n0.is_zero() && self.n1.is_zero()
    }

    fn den_factor(&self, f: &FieldDesc) -> Poly {
        Poly::x_minus(f, self.x1)
    }

    /// Cancels common factors `X - x1` between numerator and denominator.
    pub fn normalize(mut self, f: &FieldDesc) -> Self {
        let l = self.den_factor(f);
        while self.e > 0 {
            let (q0, r0) = poly::divrem(f, &self.n0, &l);
            let (q1, r1) = poly::divrem(f, &self.n1, &l);
            if !r0.is_zero() || !r1.is_zero() {
                break;
            }
            self.n0 = q0;
            self.n1 = q1;
            self.e -= 1;
        }
        if self.is_zero() {
            self.e = 0;
        }
        self
    }

    /// Multiplies the numerator by `(X - x1)^s` and raises `e` by `s`.
    fn lift(&self, f: &FieldDesc, s: u32) -> Self {
        if s == 0 {
            return self.clone();
        }
        let m = poly::pow(f, &self.den_factor(f), s as u64);
        CurveFunction {
            n0: poly::mul(f, &self.n0, &m),
            n1: poly::mul(f, &self.n1, &m),
            e: self.e + s,
            x1: self.x1,
        }
    }

    pub fn add(&self, o: &Self, c: &Curve) -> Self {
        let f = &c.field;
        let e = self.e.max(o.e);
        let a = self.lift(f, e - self.e);
        let b = o.lift(f, e - o.e);
        CurveFunction {
            n0: poly::add(f, &a.n0, &b.n0),
            n1: poly::add(f, &a.n1, &b.n1),
            e,
            x1: self.x1,
        }
        .normalize(f)
    }

    pub fn neg(&self, c: &Curve) -> Self {
        let f = &c.field;
        CurveFunction {
            n0: poly::neg(f, &self.n0),
            n1: poly::neg(f, &self.n1),
            e: self.e,
            x1: self.x1,
        }
    }

    pub fn sub(&self, o: &Self, c: &Curve) -> Self {
        self.add(&o.neg(c), c)
    }

    pub fn scale(&self, s: Fe, c: &Curve) -> Self {
        let f = &c.field;
        CurveFunction {
            n0: poly::scale(f, &self.n0, s),
            n1: poly::scale(f, &self.n1, s),
            e: self.e,
            x1: self.x1,
        }
        .normalize(f)
    }

    /// Product, with `Y^2` replaced by `X^3 + aX + b`.
    pub fn mul(&self, o: &Self, c: &Curve) -> Self {
        let f = &c.field;
        let rhs = c.rhs_poly();
        let n1n1 = poly::mul(f, &self.n1, &o.n1);
        let n0 = poly::add(f, &poly::mul(f, &self.n0, &o.n0), &poly::mul(f, &n1n1, &rhs));
        let n1 = poly::add(f, &poly::mul(f, &self.n0, &o.n1), &poly::mul(f, &self.n1, &o.n0));
        CurveFunction { n0, n1, e: self.e + o.e, x1: self.x1 }.normalize(f)
    }

    pub fn pow(&self, n: u32, c: &Curve) -> Self {
        let mut r = CurveFunction::constant(Fe(1), self.x1);
        for _ in 0..n {
            r = r.mul(self, c);
        }
        r
    }

    /// Norm of the numerator to `F_q(X)`: `n0^2 - n1^2 (X^3 + aX + b)`.
    pub fn norm_numerator(&self, c: &Curve) -> Poly {
        let f = &c.field;
        let a = poly::mul(f, &self.n0, &self.n0);
        let b = poly::mul(f, &poly::mul(f, &self.n1, &self.n1), &c.rhs_poly());
        poly::sub(f, &a, &b)
    }

    /// Value at the affine point `(x, y)`; `None` at a pole coming from the denominator.
    pub fn eval<K: Field>(&self, k: &K, x: &K::El, y: &K::El) -> Option<K::El> {
        let num = k.add(
            &eval_base_poly(k, &self.n0.c, x),
            &k.mul(&eval_base_poly(k, &self.n1.c, x), y),
        );
        if self.e == 0 {
            return Some(num);
        }
        let d = k.sub(x, &k.embed(self.x1));
        if k.is_zero(&d) {
            return None;
        }
        Some(k.div(&num, &k.pow(&d, self.e as u128)))
    }
}
