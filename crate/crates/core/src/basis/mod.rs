//! Construction of an elliptic basis of `F_{q^k}`: a curve with a rational
//! point `P1` of order `k`, and a point `F = (theta, tau)` defined over `F_{q^k}`
//! with `pi(F) = F + P1`.
//!
//! `theta` is a root of `S3(X, X^q, x1)`, a polynomial of degree `2q + 2` whose
//! degree-`k` irreducible factors are the candidates for the modulus `I`.

pub mod file;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::ext::{ExtElem, ExtFieldDesc};
use crate::algebra::factor::poly_factor;
use crate::algebra::field::Field;
use crate::algebra::fq::{field_make, Fe, FieldDesc};
use crate::algebra::poly::{self, Poly};
use crate::algebra::AlgebraError;
use crate::curve::{Curve, Point, TorsionData};
use crate::psi::{nd_build, NdTable};

pub use file::BasisFile;

/// Largest field size the search will try.
pub const Q_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BasisError {
    #[error("no suitable curve found: {0}")]
    SearchExhausted(String),
    #[error("S3(X, X^q, x1) has no irreducible factor of degree {0}")]
    NoDegreeKFactor(usize),
    #[error("theta^3 + a theta + b is not a square")]
    NotSquare,
    #[error("neither sign of tau satisfies pi(F) = F + P1")]
    OrientationFailed,
    #[error("N is not invertible modulo M")]
    NdNotInvertible,
    #[error("P1 must have order k >= 3")]
    BadOrder,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("malformed basis file: {0}")]
    File(String),
}

#[derive(Clone, Debug)]
pub struct EllipticBasis {
    pub curve: Curve,
    pub td: TorsionData,
    pub k: usize,
    pub ext: ExtFieldDesc,
    pub theta: ExtElem,
    pub tau: ExtElem,
    /// `(q^k - 1) / (q - 1)`.
    pub m: u128,
    pub nd: NdTable,
    pub mu: usize,
    pub nu: u64,
    pub seed: u64,
    /// Number of degree-`k` factors of `S3(X, X^q, x1)`.
    pub factor_count: usize,
}

/// The degree bound of the search, `ceil(log(k^2/4) / log q0) + 1`.
pub fn mu_bound(q0: u64, k: u64) -> usize {
    let b = ((k * k) as f64 / 4.0).ln() / (q0 as f64).ln();
    (b.ceil().max(1.0) as usize) + 1
}

/// Curve over `F_{q0^mu}` (`q0 = p^m0`) with a rational point of exact order `k`.
pub fn search_curve(
    p: u64,
    m0: usize,
    k: u64,
    seed: u64,
) -> Result<(usize, Curve, Point<Fe>), BasisError> {
    search_curve_with(p, m0, k, seed, |_, _| true)
}

/// As [`search_curve`], returning the first candidate `accept` approves.
pub fn search_curve_with<A>(
    p: u64,
    m0: usize,
    k: u64,
    seed: u64,
    mut accept: A,
) -> Result<(usize, Curve, Point<Fe>), BasisError>
where
    A: FnMut(&Curve, &Point<Fe>) -> bool,
{
    if k < 3 {
        return Err(BasisError::BadOrder);
    }
    let q0 = (p as u128).pow(m0 as u32);
    let bound = mu_bound(q0 as u64, k);
    let mut tried = 0usize;
    for mu in 1..=bound {
        let q = q0.pow(mu as u32);
        if q > Q_CAP as u128 {
            break;
        }
        let q = q as u64;
        if (k as f64) > (q as f64) + 1.0 + 2.0 * (q as f64).sqrt() {
            continue;
        }
        let f = field_make(p, m0 * mu, seed)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((mu as u64) << 32));
        let pairs: Vec<(Fe, Fe)> = if q * q <= 1 << 16 {
            let mut all: Vec<(Fe, Fe)> = (0..q * q).map(|i| (f.elem(i / q), f.elem(i % q))).collect();
            all.shuffle(&mut rng);
            all
        } else {
            let budget = (256 * k as usize).min(1 << 14);
            (0..budget).map(|_| (f.random(&mut rng), f.random(&mut rng))).collect()
        };
        for (a, b) in pairs {
            tried += 1;
            let Ok(c) = Curve::new(&f, a, b) else { continue };
            if c.n % k != 0 {
                continue;
            }
            if let Ok(Some(p1)) = c.find_point_of_order(k, &mut rng) {
                if accept(&c, &p1) {
                    return Ok((mu, c, p1));
                }
            }
        }
    }
    Err(BasisError::SearchExhausted(format!(
        "p={p} m0={m0} k={k}: {tried} curves tried for mu <= {bound}"
    )))
}

/// `S3(X, X^q, x1)` as a univariate polynomial.
pub fn s3_frobenius_poly(c: &Curve, x1: Fe) -> Poly {
    let f = &c.field;
    let q = f.q() as usize;
    let x = Poly::x();
    let xq = Poly::monomial(Fe(1), q);
    let cst = Poly::constant(x1);
    let s1 = poly::add(f, &poly::add(f, &x, &xq), &cst);
    let xxq = poly::mul(f, &x, &xq);
    let s2 = poly::add(f, &xxq, &poly::mul(f, &cst, &poly::add(f, &x, &xq)));
    let s3 = poly::mul(f, &xxq, &cst);
    let l = poly::scale(f, &poly::mul(f, &s1, &poly::add(f, &s3, &Poly::constant(c.b))), f.from_i64(4));
    let r = poly::sub(f, &s2, &Poly::constant(c.a));
    poly::sub(f, &l, &poly::mul(f, &r, &r))
}

/// `(q^k - 1) / (q - 1)`.
pub fn quotient_order(q: u64, k: usize) -> u128 {
    (0..k).map(|i| (q as u128).pow(i as u32)).sum()
}

pub fn build_basis(
    curve: &Curve,
    p1: &Point<Fe>,
    k: usize,
    seed: u64,
) -> Result<EllipticBasis, BasisError> {
    build_basis_with_mu(curve, p1, k, seed, 1)
}

pub fn build_basis_with_mu(
    curve: &Curve,
    p1: &Point<Fe>,
    k: usize,
    seed: u64,
    mu: usize,
) -> Result<EllipticBasis, BasisError> {
    if k < 3 || !curve.has_exact_order(p1, k as u64) {
        return Err(BasisError::BadOrder);
    }
    let f = &curve.field;
    let td = TorsionData::new(curve, p1, k as u64);
    let s = s3_frobenius_poly(curve, td.x1());
    let q = f.q() as usize;
    assert_eq!(s.degree(), 2 * q + 2, "S3(X, X^q, x1) has degree 2q + 2");
    let cands: Vec<Poly> = poly_factor(f, &s)?
        .into_iter()
        .filter(|(g, _)| g.degree() == k)
        .map(|(g, _)| g)
        .collect();
    if cands.is_empty() {
        return Err(BasisError::NoDegreeKFactor(k));
    }
    let mut last = BasisError::NoDegreeKFactor(k);
    for modulus in &cands {
        let ext = ExtFieldDesc::new_unchecked(f, modulus);
        let theta = ext.gen();
        let rhs = curve.over(&ext).rhs(&theta);
        let Some(t0) = ext.sqrt(&rhs) else {
            last = BasisError::NotSquare;
            continue;
        };
        let Some(tau) = orient(curve, &ext, &td, &theta, &t0) else {
            last = BasisError::OrientationFailed;
            continue;
        };
        let m = quotient_order(f.q(), k);
        let nd = nd_build(curve, k, 5);
        if crate::psi::gcd_u128(curve.n as u128, m) != 1 {
            return Err(BasisError::NdNotInvertible);
        }
        return Ok(EllipticBasis {
            curve: curve.clone(),
            td,
            k,
            ext,
            theta,
            tau,
            m,
            nd,
            mu,
            nu: curve.n / k as u64,
            seed,
            factor_count: cands.len(),
        });
    }
    Err(last)
}

/// The sign of `tau` with `(theta^q, tau^q) = (theta, tau) + P1`.
fn orient(
    c: &Curve,
    ext: &ExtFieldDesc,
    td: &TorsionData,
    theta: &ExtElem,
    t0: &ExtElem,
) -> Option<ExtElem> {
    let ec = c.over(ext);
    let p1 = ec.embed_point(&td.p1());
    for tau in [t0.clone(), ext.neg(t0)] {
        let fpt = Point::Aff(theta.clone(), tau.clone());
        if ec.frob(&fpt) == ec.add(&fpt, &p1) {
            return Some(tau);
        }
    }
    None
}

/// Searches curves until one yields a basis.
pub fn search_basis(p: u64, m0: usize, k: usize, seed: u64) -> Result<EllipticBasis, BasisError> {
    // k divides #E, so gcd(k, M) > 1 rules out every curve over that field.
    let q0 = p.pow(m0 as u32);
    let shares = |mu: usize| {
        let q = (0..mu).fold(1u128, |a, _| a * (q0 % k as u64) as u128 % k as u128);
        let m = (0..k).fold((0u128, 1u128), |(s, t), _| ((s + t) % k as u128, t * q % k as u128)).0;
        crate::psi::gcd_u128(m, k as u128) != 1
    };
    if k >= 3 && (1..=mu_bound(q0, k as u64)).all(shares) {
        return Err(BasisError::SearchExhausted(format!(
            "p={p} m0={m0} k={k}: k shares a factor with (q^k - 1)/(q - 1) for every admissible q"
        )));
    }
    let mut found = None;
    let mut fail = None;
    let res = search_curve_with(p, m0, k as u64, seed, |c, p1| {
        let mu = (c.field.m() / m0).max(1);
        match build_basis_with_mu(c, p1, k, seed, mu) {
            Ok(b) => {
                found = Some(b);
                true
            }
            Err(e) => {
                fail = Some(e);
                false
            }
        }
    });
    match (res, found) {
        (Ok(_), Some(b)) => Ok(b),
        (Err(BasisError::SearchExhausted(msg)), _) => Err(BasisError::SearchExhausted(format!(
            "{msg}; q0={q0}; last basis failure: {}",
            fail.map(|e| e.to_string()).unwrap_or_else(|| "none".into())
        ))),
        (Err(e), _) => Err(e),
        (Ok(_), None) => unreachable!("accepted candidate always stores a basis"),
    }
}

impl EllipticBasis {
    pub fn fq(&self) -> &FieldDesc {
        &self.curve.field
    }
    pub fn q(&self) -> u64 {
        self.curve.field.q()
    }

    /// `(theta^(q^(k-1)), theta, theta^q)`.
    pub fn phi_of_f(&self) -> [ExtElem; 3] {
        let e = &self.ext;
        [e.frob_n(&self.theta, self.k - 1), self.theta.clone(), e.frob(&self.theta)]
    }

    /// `F` as a point over `F_{q^k}`.
    pub fn f_point(&self) -> Point<ExtElem> {
        Point::Aff(self.theta.clone(), self.tau.clone())
    }

    /// Random element of `F_{q^k}^*`.
    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> ExtElem {
        loop {
            let z = self.ext.random(rng);
            if !self.ext.is_zero(&z) {
                return z;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Field;

    #[test]
    fn s3_degree_and_factor() {
        let f = field_make(5, 1, 0).unwrap();
        let c = Curve::new(&f, Fe(1), Fe(1)).unwrap();
        let s = s3_frobenius_poly(&c, Fe(0));
        assert_eq!(s.degree(), 12);
        let b = build_basis(&c, &Point::Aff(Fe(0), Fe(1)), 9, 0).unwrap();
        let [u, v, w] = b.phi_of_f();
        assert_eq!(b.ext.frob(&u), v);
        assert_eq!(b.ext.frob(&v), w);
        let ec = c.over(&b.ext);
        let fp = b.f_point();
        let mut g = fp.clone();
        for _ in 0..9 {
            g = ec.frob(&g);
        }
        assert_eq!(g, fp);
        assert_eq!(b.ext.frob_n(&b.theta, 9), b.theta);
        assert_eq!(b.m, 488281);
    }
}
