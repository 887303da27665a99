//! The third summation polynomial, written as `4 s1 (s3 + b) - (s2 - a)^2`
//! in the elementary symmetric functions of its arguments.
//!
//! This is the negative of the usual normalisation; the zero set is the same.

use crate::algebra::field::Field;
use crate::algebra::fq::Fe;

use super::tripoly::TriPoly;
use super::Curve;

pub fn semaev3<K: Field>(k: &K, c: &Curve, x1: &K::El, x2: &K::El, x3: &K::El) -> K::El {
    let s1 = k.add(&k.add(x1, x2), x3);
    let s2 = k.add(&k.add(&k.mul(x1, x2), &k.mul(x1, x3)), &k.mul(x2, x3));
    let s3 = k.mul(&k.mul(x1, x2), x3);
    let four = k.from_i64(4);
    let l = k.mul(&four, &k.mul(&s1, &k.add(&s3, &k.embed(c.b))));
    let r = k.sub(&s2, &k.embed(c.a));
    k.sub(&l, &k.mul(&r, &r))
}

/// `S_3` applied to three polynomials.
pub fn semaev3_poly(c: &Curve, x1: &TriPoly, x2: &TriPoly, x3: &TriPoly) -> TriPoly {
    let f = &c.field;
    let s1 = x1.add(x2).add(x3);
    let s2 = x1.mul(x2).add(&x1.mul(x3)).add(&x2.mul(x3));
    let s3 = x1.mul(x2).mul(x3);
    let l = s1.mul(&s3.add_const(c.b)).scale(f.from_i64(4));
    let r = s2.add_const(f.neg(c.a));
    l.sub(&r.mul(&r))
}

/// `S_3(U, V, x)` as a polynomial in `U, V`.
pub fn semaev3_uv(c: &Curve, x: Fe) -> TriPoly {
    let f = &c.field;
    semaev3_poly(c, &TriPoly::u(f), &TriPoly::v(f), &TriPoly::constant(f, x))
}
