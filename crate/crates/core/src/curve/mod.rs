//! Short Weierstrass curves `y^2 = x^3 + ax + b`, their group law over any
//! field from [`crate::algebra::Field`], naive point counting, and torsion data.

pub mod model;
pub mod semaev;
pub mod tripoly;

use rand::Rng;

use crate::algebra::field::Field;
use crate::algebra::fq::{Fe, FieldDesc};
use crate::algebra::poly::Poly;

pub use model::{c_equations, phi, phi_star};
pub use semaev::semaev3;
pub use tripoly::TriPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error("curve is singular")]
    Singular,
    #[error("points belong to different curves")]
    MixedCurves,
    #[error("{k} does not divide the group order {n}")]
    OrderNotDivisible { k: u64, n: u64 },
    #[error("point maps to a point at infinity of the model")]
    MapsToInfinity,
    #[error("cannot parse curve descriptor: {0}")]
    Parse(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Point<E> {
    Inf,
    Aff(E, E),
}

impl<E: Clone> Point<E> {
    pub fn is_inf(&self) -> bool {
        matches!(self, Point::Inf)
    }
    pub fn x(&self) -> Option<&E> {
        match self {
            Point::Inf => None,
            Point::Aff(x, _) => Some(x),
        }
    }
    pub fn y(&self) -> Option<&E> {
        match self {
            Point::Inf => None,
            Point::Aff(_, y) => Some(y),
        }
    }
}

/// Group law of a fixed curve over a chosen field.
#[derive(Clone)]
pub struct Ec<F: Field> {
    pub k: F,
    pub a: F::El,
    pub b: F::El,
}

impl<F: Field> Ec<F> {
    pub fn new(k: F, a: Fe, b: Fe) -> Self {
        let (a, b) = (k.embed(a), k.embed(b));
        Ec { k, a, b }
    }

    /// `x^3 + ax + b`.
    pub fn rhs(&self, x: &F::El) -> F::El {
        let k = &self.k;
        let x2 = k.mul(x, x);
        k.add(&k.mul(&k.add(&x2, &self.a), x), &self.b)
    }

    pub fn contains(&self, p: &Point<F::El>) -> bool {
        match p {
            Point::Inf => true,
            Point::Aff(x, y) => self.k.mul(y, y) == self.rhs(x),
        }
    }

    pub fn neg(&self, p: &Point<F::El>) -> Point<F::El> {
        match p {
            Point::Inf => Point::Inf,
            Point::Aff(x, y) => Point::Aff(x.clone(), self.k.neg(y)),
        }
    }

    /// Slope of the chord or tangent through `p` and `q`; `None` when vertical.
    pub fn slope(&self, p: &Point<F::El>, q: &Point<F::El>) -> Option<F::El> {
        let k = &self.k;
        match (p, q) {
            (Point::Aff(x1, y1), Point::Aff(x2, y2)) => {
                if x1 != x2 {
                    Some(k.div(&k.sub(y2, y1), &k.sub(x2, x1)))
                } else if y1 == y2 && !k.is_zero(y1) {
                    let x1s = k.mul(x1, x1);
                    let num = k.add(&k.mul(&k.from_i64(3), &x1s), &self.a);
                    Some(k.div(&num, &k.add(y1, y1)))
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn add(&self, p: &Point<F::El>, q: &Point<F::El>) -> Point<F::El> {
        let k = &self.k;
        match (p, q) {
            (Point::Inf, _) => q.clone(),
            (_, Point::Inf) => p.clone(),
            (Point::Aff(x1, y1), Point::Aff(x2, _)) => match self.slope(p, q) {
                None => Point::Inf,
                Some(l) => {
                    let x3 = k.sub(&k.sub(&k.mul(&l, &l), x1), x2);
                    let y3 = k.sub(&k.mul(&l, &k.sub(x1, &x3)), y1);
                    Point::Aff(x3, y3)
                }
            },
        }
    }

    pub fn sub(&self, p: &Point<F::El>, q: &Point<F::El>) -> Point<F::El> {
        self.add(p, &self.neg(q))
    }

    /// `n p` by double-and-add; negative `n` negates.
    pub fn mul(&self, n: i128, p: &Point<F::El>) -> Point<F::El> {
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Point::Inf;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    pub fn embed_point(&self, p: &Point<Fe>) -> Point<F::El> {
        match p {
            Point::Inf => Point::Inf,
            Point::Aff(x, y) => Point::Aff(self.k.embed(*x), self.k.embed(*y)),
        }
    }

    pub fn frob(&self, p: &Point<F::El>) -> Point<F::El> {
        match p {
            Point::Inf => Point::Inf,
            Point::Aff(x, y) => Point::Aff(self.k.frob(x), self.k.frob(y)),
        }
    }
}

/// An elliptic curve over `F_q` with its group order.
#[derive(Clone, Debug)]
pub struct Curve {
    pub field: FieldDesc,
    pub a: Fe,
    pub b: Fe,
    /// `#E(F_q)`.
    pub n: u64,
}

pub fn is_singular(f: &FieldDesc, a: Fe, b: Fe) -> bool {
    let a3 = f.mul(f.mul(a, a), a);
    let b2 = f.mul(b, b);
    let d = f.add(f.mul(f.from_i64(4), a3), f.mul(f.from_i64(27), b2));
    d == Fe(0)
}

/// `#E(F_q)` as `1 + sum_x (1 + chi(x^3 + ax + b))`.
pub fn count_points(f: &FieldDesc, a: Fe, b: Fe) -> Result<u64, CurveError> {
    if is_singular(f, a, b) {
        return Err(CurveError::Singular);
    }
    let mut n: i64 = 1 + f.q() as i64;
    for i in 0..f.q() {
        let x = f.elem(i);
        let r = f.add(f.mul(f.add(f.mul(x, x), a), x), b);
        n += f.chi(r) as i64;
    }
    Ok(n as u64)
}

/// Traces `t_i` of `pi^i` for `i = 0..=upto` from `t_i = t t_{i-1} - q t_{i-2}`.
pub fn trace_sequence(q: u64, t: i64, upto: usize) -> Vec<i128> {
    let mut ts: Vec<i128> = vec![2, t as i128];
    for i in 2..=upto {
        let v = t as i128 * ts[i - 1] - q as i128 * ts[i - 2];
        ts.push(v);
    }
    ts.truncate(upto + 1);
    ts
}

impl Curve {
    pub fn new(field: &FieldDesc, a: Fe, b: Fe) -> Result<Self, CurveError> {
        let n = count_points(field, a, b)?;
        Ok(Curve { field: field.clone(), a, b, n })
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    /// Trace of Frobenius `q + 1 - N`.
    pub fn trace(&self) -> i64 {
        self.q() as i64 + 1 - self.n as i64
    }

    /// `#E(F_{q^i})`.
    pub fn order_over(&self, i: usize) -> u128 {
        let t = trace_sequence(self.q(), self.trace(), i)[i];
        ((self.q() as i128).pow(i as u32) + 1 - t) as u128
    }

    pub fn ec(&self) -> Ec<FieldDesc> {
        Ec::new(self.field.clone(), self.a, self.b)
    }

    pub fn over<F: Field>(&self, k: &F) -> Ec<F> {
        Ec::new(k.clone(), self.a, self.b)
    }

    /// `x^3 + ax + b` as a polynomial.
    pub fn rhs_poly(&self) -> Poly {
        Poly::new(vec![self.b, self.a, Fe(0), Fe(1)])
    }

    pub fn contains(&self, p: &Point<Fe>) -> bool {
        self.ec().contains(p)
    }

    pub fn point_add(&self, p: &Point<Fe>, q: &Point<Fe>) -> Result<Point<Fe>, CurveError> {
        if !self.contains(p) || !self.contains(q) {
            return Err(CurveError::MixedCurves);
        }
        Ok(self.ec().add(p, q))
    }

    pub fn scalar_mul(&self, n: i128, p: &Point<Fe>) -> Point<Fe> {
        self.ec().mul(n, p)
    }

    /// All rational points, `O` first.
    pub fn points(&self) -> Vec<Point<Fe>> {
        let f = &self.field;
        let mut out = vec![Point::Inf];
        for i in 0..f.q() {
            let x = f.elem(i);
            let r = self.ec().rhs(&x);
            if let Some(y) = f.sqrt(r) {
                out.push(Point::Aff(x, y));
                if y != Fe(0) {
                    out.push(Point::Aff(x, f.neg(y)));
                }
            }
        }
        out
    }

    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Point<Fe> {
        let f = &self.field;
        loop {
            let x = f.random(rng);
            if let Some(y) = f.sqrt(self.ec().rhs(&x)) {
                let y = if rng.gen_bool(0.5) { f.neg(y) } else { y };
                return Point::Aff(x, y);
            }
        }
    }

    /// Exact order of a rational point, knowing it divides `N`.
    pub fn point_order(&self, p: &Point<Fe>) -> u64 {
        let mut n = self.n;
        for l in prime_factors(self.n) {
            while n % l == 0 && self.scalar_mul((n / l) as i128, p).is_inf() {
                n /= l;
            }
        }
        n
    }

    pub fn has_exact_order(&self, p: &Point<Fe>, k: u64) -> bool {
        self.scalar_mul(k as i128, p).is_inf()
            && prime_factors(k)
                .into_iter()
                .all(|l| !self.scalar_mul((k / l) as i128, p).is_inf())
    }

    /// A point of exact order `k`: tries `(N/k) R` for random `R`, then falls
    /// back to scanning every point when `q <= 2^10`.
    pub fn find_point_of_order<R: Rng + ?Sized>(
        &self,
        k: u64,
        rng: &mut R,
    ) -> Result<Option<Point<Fe>>, CurveError> {
        if k == 0 || self.n % k != 0 {
            return Err(CurveError::OrderNotDivisible { k, n: self.n });
        }
        if k == 1 {
            return Ok(Some(Point::Inf));
        }
        let cof = (self.n / k) as i128;
        for _ in 0..32 {
            let cand = self.scalar_mul(cof, &self.random_point(rng));
            if self.has_exact_order(&cand, k) {
                return Ok(Some(cand));
            }
        }
        if self.q() <= 1 << 10 {
            for pt in self.points() {
                if self.has_exact_order(&pt, k) {
                    return Ok(Some(pt));
                }
            }
        }
        Ok(None)
    }

    /// Descriptor `p,m,modulus|a|b|N|k|P1.x|P1.y`.
    pub fn descriptor(&self, k: u64, p1: &Point<Fe>) -> String {
        let f = &self.field;
        let modulus = f
            .modulus()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let (px, py) = match p1 {
            Point::Aff(x, y) => (f.encode(*x), f.encode(*y)),
            Point::Inf => ("inf".to_string(), "inf".to_string()),
        };
        format!(
            "{},{},{}|{}|{}|{}|{}|{}|{}",
            f.p(),
            f.m(),
            modulus,
            f.encode(self.a),
            f.encode(self.b),
            self.n,
            k,
            px,
            py
        )
    }

    pub fn parse_descriptor(s: &str) -> Result<(Curve, u64, Point<Fe>), CurveError> {
        let bad = || CurveError::Parse(s.to_string());
        let parts: Vec<&str> = s.trim().split('|').collect();
        if parts.len() != 7 {
            return Err(bad());
        }
        let head: Vec<u64> = parts[0]
            .split(',')
            .map(|t| t.trim().parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        if head.len() < 3 {
            return Err(bad());
        }
        let (p, m) = (head[0], head[1] as usize);
        let modulus: Vec<u32> = head[2..].iter().map(|&c| c as u32).collect();
        if modulus.len() != m + 1 {
            return Err(bad());
        }
        let f = crate::algebra::field_with_modulus(p, &modulus).map_err(|_| bad())?;
        let a = f.decode(parts[1]).map_err(|_| bad())?;
        let b = f.decode(parts[2]).map_err(|_| bad())?;
        let n: u64 = parts[3].parse().map_err(|_| bad())?;
        let k: u64 = parts[4].parse().map_err(|_| bad())?;
        let p1 = if parts[5] == "inf" {
            Point::Inf
        } else {
            Point::Aff(
                f.decode(parts[5]).map_err(|_| bad())?,
                f.decode(parts[6]).map_err(|_| bad())?,
            )
        };
        let c = Curve::new(&f, a, b)?;
        if c.n != n || !c.contains(&p1) {
            return Err(bad());
        }
        Ok((c, k, p1))
    }
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `P_1` of order `k` and its multiples `P_j = j P_1`, `j = 1..k-1`.
#[derive(Clone, Debug)]
pub struct TorsionData {
    pub k: u64,
    pub pts: Vec<(Fe, Fe)>,
}

impl TorsionData {
    pub fn new(curve: &Curve, p1: &Point<Fe>, k: u64) -> Self {
        let mut pts = Vec::with_capacity(k as usize - 1);
        let mut cur = p1.clone();
        for _ in 1..k {
            match &cur {
                Point::Aff(x, y) => pts.push((*x, *y)),
                Point::Inf => panic!("P_1 has order below k"),
            }
            cur = curve.ec().add(&cur, p1);
        }
        assert!(cur.is_inf(), "k P_1 must vanish");
        TorsionData { k, pts }
    }
    pub fn p1(&self) -> Point<Fe> {
        self.p(1)
    }
    /// `P_j` for any integer `j` (reduced mod `k`; `P_0 = O`).
    pub fn p(&self, j: i64) -> Point<Fe> {
        let j = j.rem_euclid(self.k as i64) as usize;
        if j == 0 {
            Point::Inf
        } else {
            let (x, y) = self.pts[j - 1];
            Point::Aff(x, y)
        }
    }
    /// Abscissa `x_j`; `None` for `j = 0 mod k`.
    pub fn x(&self, j: i64) -> Option<Fe> {
        self.p(j).x().copied()
    }
    pub fn x1(&self) -> Fe {
        self.pts[0].0
    }
    pub fn y1(&self) -> Fe {
        self.pts[0].1
    }
    /// `j` with `P_j = pt`, if `pt` is a multiple of `P_1`.
    pub fn index_of(&self, pt: &Point<Fe>) -> Option<u64> {
        match pt {
            Point::Inf => Some(0),
            Point::Aff(x, y) => self
                .pts
                .iter()
                .position(|(a, b)| a == x && b == y)
                .map(|i| i as u64 + 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field_make;

    fn toy() -> Curve {
        let f = field_make(5, 1, 0).unwrap();
        Curve::new(&f, Fe(1), Fe(1)).unwrap()
    }

    #[test]
    fn chord_example() {
        let c = toy();
        let s = c
            .point_add(&Point::Aff(Fe(0), Fe(1)), &Point::Aff(Fe(2), Fe(1)))
            .unwrap();
        assert_eq!(s, Point::Aff(Fe(3), Fe(4)));
        assert!(c.scalar_mul(9, &Point::Aff(Fe(0), Fe(1))).is_inf());
        assert_eq!(c.n, 9);
    }

    #[test]
    fn mixed_curves_rejected() {
        let c = toy();
        let r = c.point_add(&Point::Aff(Fe(0), Fe(1)), &Point::Aff(Fe(1), Fe(1)));
        assert_eq!(r, Err(CurveError::MixedCurves));
    }

    #[test]
    fn descriptor_round_trip() {
        let c = toy();
        let p1 = Point::Aff(Fe(0), Fe(1));
        let s = c.descriptor(9, &p1);
        let (c2, k, q) = Curve::parse_descriptor(&s).unwrap();
        assert_eq!((c2.a, c2.b, c2.n, k), (c.a, c.b, c.n, 9));
        assert_eq!(q, p1);
    }
}
