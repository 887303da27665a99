//! Places of `F_q(E)`: Galois orbits of points, described by the minimal
//! polynomial `u` of the abscissa and, when the ordinate is rational over
//! `F_q(x)`, a polynomial `v` with `y = v(x) mod u`.

use std::cmp::Ordering;
use std::fmt;

use crate::algebra::ext::ExtFieldDesc;
use crate::algebra::field::{eval_base_poly, min_poly, Field};
use crate::algebra::fq::{Fe, FieldDesc};
use crate::algebra::linalg;
use crate::algebra::poly::{self, decode_poly, encode_poly, Poly};
use crate::algebra::quad::Quad;
use crate::curve::{Curve, Ec, Point, TorsionData};

use super::DivisorError;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Place {
    Infinity,
    Split { u: Poly, v: Poly },
    Inert { u: Poly },
    Ramified { u: Poly },
}

impl Place {
    /// Number of points in the orbit.
    pub fn degree(&self) -> usize {
        match self {
            Place::Infinity => 1,
            Place::Split { u, .. } | Place::Ramified { u } => u.degree(),
            Place::Inert { u } => 2 * u.degree(),
        }
    }

    pub fn u(&self) -> Option<&Poly> {
        match self {
            Place::Infinity => None,
            Place::Split { u, .. } | Place::Inert { u } | Place::Ramified { u } => Some(u),
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, Place::Infinity)
    }

    fn rank(&self) -> u8 {
        match self {
            Place::Infinity => 0,
            Place::Split { .. } => 1,
            Place::Inert { .. } => 2,
            Place::Ramified { .. } => 3,
        }
    }

    pub fn encode(&self, f: &FieldDesc) -> String {
        match self {
            Place::Infinity => "inf::".into(),
            Place::Split { u, v } => format!("split:{}:{}", encode_poly(f, u), encode_poly(f, v)),
            Place::Inert { u } => format!("inert:{}:", encode_poly(f, u)),
            Place::Ramified { u } => format!("ram:{}:", encode_poly(f, u)),
        }
    }

    pub fn decode(f: &FieldDesc, s: &str) -> Result<Place, DivisorError> {
        let bad = || DivisorError::Parse(s.to_string());
        let mut it = s.splitn(3, ':');
        let (kind, us, vs) = (
            it.next().ok_or_else(bad)?,
            it.next().ok_or_else(bad)?,
            it.next().ok_or_else(bad)?,
        );
        let up = || decode_poly(f, us).map_err(|_| bad());
        Ok(match kind {
            "inf" => Place::Infinity,
            "split" => Place::Split { u: up()?, v: decode_poly(f, vs).map_err(|_| bad())? },
            "inert" => Place::Inert { u: up()? },
            "ram" => Place::Ramified { u: up()? },
            _ => return Err(bad()),
        })
    }

    /// Conjugate under `y -> -y`.
    pub fn negate(&self, f: &FieldDesc) -> Place {
        match self {
            Place::Split { u, v } => Place::Split { u: u.clone(), v: poly::neg(f, v) },
            other => other.clone(),
        }
    }
}

impl Ord for Place {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.u().cmp(&o.u()))
            .then_with(|| self.rank().cmp(&o.rank()))
            .then_with(|| match (self, o) {
                (Place::Split { v: a, .. }, Place::Split { v: b, .. }) => a.cmp(b),
                _ => Ordering::Equal,
            })
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

pub struct PlaceDisplay<'a>(pub &'a Place, pub &'a FieldDesc);

impl fmt::Display for PlaceDisplay<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}", self.0.encode(self.1))
    }
}

/// The places above an irreducible monic `u`.
pub fn places_over(c: &Curve, u: &Poly) -> Vec<Place> {
    let f = &c.field;
    let r = poly::rem(f, &c.rhs_poly(), u);
    if r.is_zero() {
        return vec![Place::Ramified { u: u.clone() }];
    }
    if u.degree() == 1 {
        let x0 = f.neg(u.c[0]);
        return match f.sqrt(poly::eval(f, &c.rhs_poly(), x0)) {
            Some(y) => vec![
                Place::Split { u: u.clone(), v: Poly::constant(y) },
                Place::Split { u: u.clone(), v: Poly::constant(f.neg(y)) },
            ],
            None => vec![Place::Inert { u: u.clone() }],
        };
    }
    let k = ExtFieldDesc::new_unchecked(f, u);
    match k.sqrt(&k.from_poly(&r)) {
        Some(s) => {
            let v = k.to_poly(&s);
            let w = poly::neg(f, &v);
            let mut out = vec![
                Place::Split { u: u.clone(), v },
                Place::Split { u: u.clone(), v: w },
            ];
            out.sort();
            out
        }
        None => vec![Place::Inert { u: u.clone() }],
    }
}

/// The place of the point `r`.
pub fn place_of_point<K: Field>(k: &K, r: &Point<K::El>) -> Place {
    match r {
        Point::Inf => Place::Infinity,
        Point::Aff(x, y) => {
            let u = Poly::new(min_poly(k, x));
            let d = u.degree();
            if k.is_zero(y) {
                return Place::Ramified { u };
            }
            let mut yd = y.clone();
            for _ in 0..d {
                yd = k.frob(&yd);
            }
            if yd != *y {
                return Place::Inert { u };
            }
            Place::Split { u, v: express(k, x, y, d) }
        }
    }
}

/// Coefficients `c` of degree `< d` with `c(x) = y`.
fn express<K: Field>(k: &K, x: &K::El, y: &K::El, d: usize) -> Poly {
    let f = k.base();
    let n = k.degree();
    let mut cols = Vec::with_capacity(d);
    let mut p = k.one();
    for _ in 0..d {
        cols.push(k.coords(&p));
        p = k.mul(&p, x);
    }
    let a: Vec<Vec<Fe>> = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let sol = linalg::solve(f, &a, &k.coords(y)).expect("ordinate lies in F_q(x)");
    Poly::new(sol)
}

/// A geometric point of a finite place together with its coordinate field.
pub enum PlacePoint {
    Ext(ExtFieldDesc, Point<crate::algebra::ExtElem>),
    Quad(Quad<ExtFieldDesc>, Point<(crate::algebra::ExtElem, crate::algebra::ExtElem)>),
}

pub fn point_of_place(c: &Curve, pl: &Place) -> Option<PlacePoint> {
    let f = &c.field;
    match pl {
        Place::Infinity => None,
        Place::Split { u, v } => {
            let k = ExtFieldDesc::new_unchecked(f, u);
            let x = k.gen();
            let y = eval_base_poly(&k, &v.c, &x);
            Some(PlacePoint::Ext(k, Point::Aff(x, y)))
        }
        Place::Ramified { u } => {
            let k = ExtFieldDesc::new_unchecked(f, u);
            let x = k.gen();
            let z = k.zero();
            Some(PlacePoint::Ext(k, Point::Aff(x, z)))
        }
        Place::Inert { u } => {
            let k = ExtFieldDesc::new_unchecked(f, u);
            let x = k.gen();
            let r = eval_base_poly(&k, &c.rhs_poly().c, &x);
            let l = Quad::new(k, r);
            let pt = Point::Aff(l.lift(&x), l.s());
            Some(PlacePoint::Quad(l, pt))
        }
    }
}

fn walk<K: Field>(
    ec: &Ec<K>,
    td: &TorsionData,
    start: &Point<K::El>,
    steps: usize,
) -> Vec<Place> {
    let m = ec.embed_point(&td.p1());
    let mut out = Vec::with_capacity(steps + 1);
    let mut cur = start.clone();
    out.push(place_of_point(&ec.k, &cur));
    for _ in 0..steps {
        cur = ec.sub(&cur, &m);
        let pl = place_of_point(&ec.k, &cur);
        let stop = pl == out[0] || pl == Place::Infinity;
        out.push(pl);
        if stop {
            break;
        }
    }
    out
}

/// Successive translates `p, p - P1, p - 2 P1, ...`, ending when the walk
/// returns to `p` (that repeat included) or reaches `O`, or after `max` steps.
pub fn translates(c: &Curve, td: &TorsionData, p: &Place, max: usize) -> Vec<Place> {
    match point_of_place(c, p) {
        None => {
            let ec = c.ec();
            walk(&ec, td, &Point::Inf, max)
        }
        Some(PlacePoint::Ext(k, pt)) => walk(&c.over(&k), td, &pt, max),
        Some(PlacePoint::Quad(l, pt)) => walk(&c.over(&l), td, &pt, max),
    }
}

/// The place of `Q - steps P1` for `Q` in `p`.
pub fn translate_place(
    c: &Curve,
    td: &TorsionData,
    p: &Place,
    steps: i64,
) -> Result<Place, DivisorError> {
    let s = steps.rem_euclid(td.k as i64) as usize;
    if s == 0 {
        return Ok(p.clone());
    }
    let shift = td.p(s as i64);
    let out = match point_of_place(c, p) {
        None => place_of_point(&c.field, &c.ec().neg(&shift)),
        Some(PlacePoint::Ext(k, pt)) => {
            let ec = c.over(&k);
            place_of_point(&k, &ec.sub(&pt, &ec.embed_point(&shift)))
        }
        Some(PlacePoint::Quad(l, pt)) => {
            let ec = c.over(&l);
            place_of_point(&l, &ec.sub(&pt, &ec.embed_point(&shift)))
        }
    };
    if out == Place::Infinity {
        Err(DivisorError::HitsInfinity)
    } else {
        Ok(out)
    }
}

/// Orbit representative under translation by `P1`, and the number of `-P1`
/// steps leading from it to `p`.
///
/// The orbit of multiples of `P1` is anchored at `(-P1)`, so `(P_j)` has shift `k - 1 - j`.
pub fn orbit_canonical(c: &Curve, td: &TorsionData, p: &Place) -> (Place, usize) {
    if let Some(j) = torsion_index(c, td, p) {
        if j == 0 {
            return (Place::Infinity, 0);
        }
        return (torsion_place(c, td, -1), (td.k - 1 - j) as usize);
    }
    let mut orbit = translates(c, td, p, td.k as usize);
    orbit.pop();
    let (i, rep) = orbit
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cmp(b.1))
        .map(|(i, r)| (i, r.clone()))
        .expect("orbit is nonempty");
    let len = orbit.len();
    (rep, (len - i) % len)
}

/// `j` if `p` is the place of `P_j`.
pub fn torsion_index(c: &Curve, td: &TorsionData, p: &Place) -> Option<u64> {
    match p {
        Place::Infinity => Some(0),
        Place::Split { u, v } if u.degree() == 1 => {
            let x = c.field.neg(u.c[0]);
            td.index_of(&Point::Aff(x, v.coeff(0)))
        }
        Place::Ramified { u } if u.degree() == 1 => {
            td.index_of(&Point::Aff(c.field.neg(u.c[0]), Fe(0)))
        }
        _ => None,
    }
}

/// The place of `P_j`.
pub fn torsion_place(c: &Curve, td: &TorsionData, j: i64) -> Place {
    place_of_point(&c.field, &td.p(j))
}
