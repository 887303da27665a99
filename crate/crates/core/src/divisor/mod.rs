//! Divisors on `E`, the principal divisor of a function, and translation of
//! places by multiples of `P_1`.

pub mod function;
pub mod place;

use std::collections::BTreeMap;

use crate::algebra::factor::poly_factor;
use crate::algebra::fq::FieldDesc;
use crate::algebra::poly::{self, Poly};
use crate::curve::Curve;

pub use function::CurveFunction;
pub use place::{
    orbit_canonical, place_of_point, places_over, point_of_place, torsion_index, torsion_place,
    translate_place, translates, Place, PlacePoint,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DivisorError {
    #[error("zero function has no divisor")]
    ZeroFunction,
    #[error("translation reaches the point at infinity")]
    HitsInfinity,
    #[error("cannot parse divisor text {0:?}")]
    Parse(String),
}

/// Finite formal sum of places; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Divisor {
    terms: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn single(p: Place, n: i64) -> Self {
        let mut d = Self::zero();
        d.add_term(p, n);
        d
    }
    /// `(p) - deg(p) (O)`.
    pub fn elementary(p: &Place) -> Self {
        let mut d = Self::single(p.clone(), 1);
        d.add_term(Place::Infinity, -(p.degree() as i64));
        d
    }

    pub fn add_term(&mut self, p: Place, n: i64) {
        if n == 0 {
            return;
        }
        let e = self.terms.entry(p.clone()).or_insert(0);
        *e += n;
        if *e == 0 {
            self.terms.remove(&p);
        }
    }

    pub fn coeff(&self, p: &Place) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Place, &i64)> {
        self.terms.iter()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Divisor) -> Divisor {
        let mut r = self.clone();
        for (p, n) in &o.terms {
            r.add_term(p.clone(), *n);
        }
        r
    }
    pub fn scale(&self, s: i64) -> Divisor {
        let mut r = Divisor::zero();
        for (p, n) in &self.terms {
            r.add_term(p.clone(), n * s);
        }
        r
    }
    pub fn sub(&self, o: &Divisor) -> Divisor {
        self.add(&o.scale(-1))
    }

    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(p, n)| n * p.degree() as i64).sum()
    }
    /// Positive multiplicities counted with place degrees.
    pub fn height(&self) -> i64 {
        self.terms
            .iter()
            .filter(|(_, n)| **n > 0)
            .map(|(p, n)| n * p.degree() as i64)
            .sum()
    }

    pub fn positive_part(&self) -> Divisor {
        Divisor {
            terms: self.terms.iter().filter(|(_, n)| **n > 0).map(|(p, n)| (p.clone(), *n)).collect(),
        }
    }

    /// The finite part as a list of `(place, multiplicity)` with the `O` coefficient dropped.
    pub fn finite_terms(&self) -> Vec<(Place, i64)> {
        self.terms
            .iter()
            .filter(|(p, _)| p.is_finite())
            .map(|(p, n)| (p.clone(), *n))
            .collect()
    }

    /// Canonical text: `place^coeff` terms joined by `;`.
    pub fn encode(&self, f: &FieldDesc) -> String {
        self.terms
            .iter()
            .map(|(p, n)| format!("{}^{}", p.encode(f), n))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn decode(f: &FieldDesc, s: &str) -> Result<Divisor, DivisorError> {
        let mut d = Divisor::zero();
        if s.trim().is_empty() {
            return Ok(d);
        }
        for t in s.trim().split(';') {
            let (pl, n) = t.rsplit_once('^').ok_or_else(|| DivisorError::Parse(t.into()))?;
            let n: i64 = n.parse().map_err(|_| DivisorError::Parse(t.into()))?;
            d.add_term(Place::decode(f, pl)?, n);
        }
        Ok(d)
    }
}

/// Elementary pieces of the positive part, if every finite place there has degree `<= bound`.
pub fn decompose(d: &Divisor, bound: usize) -> Option<Vec<(Place, i64)>> {
    let mut out = Vec::new();
    for (p, n) in d.terms() {
        if *n <= 0 || !p.is_finite() {
            continue;
        }
        if p.degree() > bound {
            return None;
        }
        out.push((p.clone(), *n));
    }
    Some(out)
}

/// Principal divisor of `(n0 + n1 Y) / (X - x1)^e`.
pub fn divisor_of(g: &CurveFunction, c: &Curve) -> Result<Divisor, DivisorError> {
    if g.is_zero() {
        return Err(DivisorError::ZeroFunction);
    }
    let f = &c.field;
    let mut d = Divisor::zero();
    let content = poly::monic(f, &poly::gcd(f, &g.n0, &g.n1));
    let (n0, n1) = if content.is_constant() {
        (g.n0.clone(), g.n1.clone())
    } else {
        for (u, m) in poly_factor(f, &content).expect("content is nonzero") {
            add_x_factor(&mut d, c, &u, m as i64);
        }
        (poly::div_exact(f, &g.n0, &content), poly::div_exact(f, &g.n1, &content))
    };
    if !n1.is_zero() {
        let h = CurveFunction { n0: n0.clone(), n1: n1.clone(), e: 0, x1: g.x1 };
        let norm = h.norm_numerator(c);
        for (u, m) in poly_factor(f, &norm).expect("norm of a nonzero function") {
            let m = m as i64;
            let pls = places_over(c, &u);
            match pls.as_slice() {
                [Place::Ramified { .. }] => d.add_term(pls[0].clone(), m),
                [Place::Split { v, .. }, Place::Split { .. }] => {
                    let t = poly::rem(f, &poly::add(f, &n0, &poly::mul(f, &n1, v)), &u);
                    let i = if t.is_zero() { 0 } else { 1 };
                    d.add_term(pls[i].clone(), m);
                }
                _ => unreachable!("an inert place cannot divide a content-free norm"),
            }
        }
    } else if !n0.is_constant() {
        for (u, m) in poly_factor(f, &n0).expect("nonzero") {
            add_x_factor(&mut d, c, &u, m as i64);
        }
    }
    if g.e > 0 {
        add_x_factor(&mut d, c, &Poly::x_minus(f, g.x1), -(g.e as i64));
    }
    let deg = d.degree();
    d.add_term(Place::Infinity, -deg);
    Ok(d)
}

/// Adds the divisor of `u(X)^m` away from `O`.
fn add_x_factor(d: &mut Divisor, c: &Curve, u: &Poly, m: i64) {
    for p in places_over(c, u) {
        let w = if matches!(p, Place::Ramified { .. }) { 2 } else { 1 };
        d.add_term(p, w * m);
    }
}

/// Divisor of an irreducible `u(X)`: its places minus `2 deg(u) (O)`.
pub fn poly_to_divisor(c: &Curve, u: &Poly) -> Divisor {
    let mut d = Divisor::zero();
    let u = poly::monic(&c.field, u);
    add_x_factor(&mut d, c, &u, 1);
    d.add_term(Place::Infinity, -2 * u.degree() as i64);
    d
}
