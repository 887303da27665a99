//! The space model `C` of `E`: the image of `Q -> (x(Q - P1), x(Q), x(Q + P1))`
//! and the pullback of polynomials in `U, V, W` to functions on `E`.

use std::collections::HashMap;

use crate::algebra::field::Field;
use crate::algebra::fq::Fe;
use crate::algebra::poly::Poly;
use crate::divisor::CurveFunction;

use super::semaev::{semaev3_poly, semaev3_uv};
use super::tripoly::TriPoly;
use super::{Curve, CurveError, Ec, Point, TorsionData};

/// The three defining equations of `C`: `S3(U,V,x1)`, the divided difference
/// `(S3(U,V,x1) - S3(V,W,x1)) / (U - W)`, and `S3(U,W,x2)`.
pub fn c_equations(c: &Curve, td: &TorsionData) -> [TriPoly; 3] {
    let f = &c.field;
    let x1 = td.x1();
    let x2 = td.x(2).expect("k >= 3");
    let s_uv = semaev3_uv(c, x1);
    let s_vw = semaev3_poly(c, &TriPoly::v(f), &TriPoly::w(f), &TriPoly::constant(f, x1));
    let delta = s_uv
        .sub(&s_vw)
        .div_u_minus_w()
        .expect("S3(U,V,x1) - S3(V,W,x1) is divisible by U - W");
    let s_uw = semaev3_poly(c, &TriPoly::u(f), &TriPoly::w(f), &TriPoly::constant(f, x2));
    [s_uv, delta, s_uw]
}

/// `Q -> (x(Q - P1), x(Q), x(Q + P1))`.
pub fn phi<K: Field>(
    ec: &Ec<K>,
    td: &TorsionData,
    q: &Point<K::El>,
) -> Result<[K::El; 3], CurveError> {
    let p1 = ec.embed_point(&td.p1());
    let l = ec.sub(q, &p1);
    let r = ec.add(q, &p1);
    match (l, q, r) {
        (Point::Aff(xu, _), Point::Aff(xv, _), Point::Aff(xw, _)) => Ok([xu, xv.clone(), xw]),
        _ => Err(CurveError::MapsToInfinity),
    }
}

/// Images of `U` and `W`: `(x1 X^2 + (a + x1^2) X + a x1 + 2b +- 2 y1 Y) / (X - x1)^2`.
pub fn phi_star_uw(c: &Curve, td: &TorsionData) -> (CurveFunction, CurveFunction) {
    let f = &c.field;
    let (x1, y1) = (td.x1(), td.y1());
    let n0 = Poly::new(vec![
        f.add(f.mul(c.a, x1), f.add(c.b, c.b)),
        f.add(c.a, f.mul(x1, x1)),
        x1,
    ]);
    let two_y1 = f.add(y1, y1);
    let u = CurveFunction { n0: n0.clone(), n1: Poly::constant(two_y1), e: 2, x1 };
    let w = CurveFunction { n0, n1: Poly::constant(f.neg(two_y1)), e: 2, x1 };
    (u, w)
}

/// Pullback of `f(U, V, W)` to `E`.
pub fn phi_star(f: &TriPoly, c: &Curve, td: &TorsionData) -> CurveFunction {
    let x1 = td.x1();
    let (fu, fw) = phi_star_uw(c, td);
    let fv = CurveFunction::from_x(Poly::x(), x1);
    let mut cache: HashMap<(usize, u32), CurveFunction> = HashMap::new();
    let mut power = |var: usize, e: u32| -> CurveFunction {
        if let Some(v) = cache.get(&(var, e)) {
            return v.clone();
        }
        let base = [&fu, &fv, &fw][var];
        let v = base.pow(e, c);
        cache.insert((var, e), v.clone());
        v
    };
    let mut acc = CurveFunction::constant(Fe(0), x1);
    for (m, coef) in f.terms() {
        let mut t = CurveFunction::constant(*coef, x1);
        for (var, &e) in m.iter().enumerate() {
            if e > 0 {
                t = t.mul(&power(var, e), c);
            }
        }
        acc = acc.add(&t, c);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field_make;

    #[test]
    fn phi_of_torsion_points() {
        let fd = field_make(5, 1, 0).unwrap();
        let c = Curve::new(&fd, Fe(1), Fe(1)).unwrap();
        let td = TorsionData::new(&c, &Point::Aff(Fe(0), Fe(1)), 9);
        let ec = c.ec();
        let x = |j| td.x(j).unwrap();
        assert_eq!(phi(&ec, &td, &td.p(2)).unwrap(), [x(1), x(2), x(3)]);
        assert_eq!(phi(&ec, &td, &td.p(-2)).unwrap(), [x(3), x(2), x(1)]);
        assert_eq!(phi(&ec, &td, &td.p(1)), Err(CurveError::MapsToInfinity));
        let eqs = c_equations(&c, &td);
        for j in 2..8 {
            let pt = phi(&ec, &td, &td.p(j)).unwrap();
            for e in &eqs {
                assert_eq!(e.eval(&fd, &pt), Fe(0));
            }
        }
    }

    #[test]
    fn pullback_of_v_is_x() {
        let fd = field_make(5, 1, 0).unwrap();
        let c = Curve::new(&fd, Fe(1), Fe(1)).unwrap();
        let td = TorsionData::new(&c, &Point::Aff(Fe(0), Fe(1)), 9);
        let v = phi_star(&TriPoly::v(&fd), &c, &td);
        assert_eq!(v, CurveFunction::from_x(Poly::x(), td.x1()));
        let one = phi_star(&TriPoly::one(&fd), &c, &td);
        assert_eq!(one, CurveFunction::constant(Fe(1), td.x1()));
    }
}
