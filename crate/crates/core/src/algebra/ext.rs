//! `F_q[X]/(I)` for a monic irreducible `I`: the target field `F_{q^k}` as well
//! as the residue fields of places.

use std::sync::Arc;

use num_bigint::BigUint;

use super::factor;
use super::field::Field;
use super::fq::{Fe, FieldDesc};
use super::poly::{self, Poly};
use super::AlgebraError;

/// Residue of degree `< k`, always stored with exactly `k` coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ExtElem(pub Vec<Fe>);

struct Inner {
    base: FieldDesc,
    modulus: Poly,
    k: usize,
    /// `X^(q i) mod I` for `i < k`, the rows of the Frobenius matrix.
    frob_rows: Vec<Vec<Fe>>,
}

#[derive(Clone)]
pub struct ExtFieldDesc(Arc<Inner>);

impl std::fmt::Debug for ExtFieldDesc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}[X]/({:?})", self.0.base, self.0.modulus.c)
    }
}

/// Builds `F_q[X]/(I)`, checking irreducibility by factoring.
pub fn ext_make(base: &FieldDesc, modulus: &Poly) -> Result<ExtFieldDesc, AlgebraError> {
    if modulus.degree() == 0 || !modulus.is_monic() {
        return Err(AlgebraError::BadModulus);
    }
    let fac = factor::poly_factor(base, modulus)?;
    if fac.len() != 1 || fac[0].1 != 1 {
        return Err(AlgebraError::Reducible);
    }
    Ok(ExtFieldDesc::new_unchecked(base, modulus))
}

impl ExtFieldDesc {
    /// Skips the irreducibility check; for moduli already known to be irreducible.
    pub fn new_unchecked(base: &FieldDesc, modulus: &Poly) -> Self {
        let k = modulus.degree();
        let xq = poly::powmod(base, &Poly::x(), base.q() as u128, modulus);
        let mut rows = Vec::with_capacity(k);
        let mut cur = poly::rem(base, &Poly::one(), modulus);
        for _ in 0..k {
            rows.push(pad(&cur, k));
            cur = poly::mulmod(base, &cur, &xq, modulus);
        }
        ExtFieldDesc(Arc::new(Inner {
            base: base.clone(),
            modulus: modulus.clone(),
            k,
            frob_rows: rows,
        }))
    }

    pub fn k(&self) -> usize {
        self.0.k
    }
    pub fn modulus(&self) -> &Poly {
        &self.0.modulus
    }
    pub fn fq(&self) -> &FieldDesc {
        &self.0.base
    }

    pub fn from_poly(&self, a: &Poly) -> ExtElem {
        ExtElem(pad(&poly::rem(&self.0.base, a, &self.0.modulus), self.0.k))
    }
    pub fn to_poly(&self, a: &ExtElem) -> Poly {
        Poly::new(a.0.clone())
    }
    /// The class of `X`.
    pub fn gen(&self) -> ExtElem {
        self.from_poly(&Poly::x())
    }

    /// `a^(q^times)` by repeated `q`-th powering.
    pub fn frob_by_powering(&self, a: &ExtElem, times: usize) -> ExtElem {
        let mut r = a.clone();
        for _ in 0..times {
            r = self.pow(&r, self.0.base.q() as u128);
        }
        r
    }

    /// `a(X^q) mod I`, i.e. one Frobenius step by modular composition.
    pub fn frob_by_composition(&self, a: &ExtElem) -> ExtElem {
        let f = &self.0.base;
        let xq = poly::powmod(f, &Poly::x(), f.q() as u128, &self.0.modulus);
        self.from_poly(&poly::compose_mod(f, &self.to_poly(a), &xq, &self.0.modulus))
    }

    pub fn encode(&self, a: &ExtElem) -> String {
        let f = &self.0.base;
        a.0.iter().map(|&c| f.encode(c)).collect::<Vec<_>>().join("/")
    }

    pub fn decode(&self, s: &str) -> Result<ExtElem, AlgebraError> {
        let parts: Vec<&str> = s.split('/').collect();
        if parts.len() != self.0.k {
            return Err(AlgebraError::Parse(s.into()));
        }
        let c = parts
            .iter()
            .map(|t| self.0.base.decode(t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ExtElem(c))
    }

    /// Multiplies `a` by the scalar `s` in `F_q`.
    pub fn scale(&self, a: &ExtElem, s: Fe) -> ExtElem {
        let f = &self.0.base;
        ExtElem(a.0.iter().map(|&c| f.mul(c, s)).collect())
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> ExtElem {
        ExtElem((0..self.0.k).map(|_| self.0.base.random(rng)).collect())
    }
}

fn pad(a: &Poly, k: usize) -> Vec<Fe> {
    let mut v = a.c.clone();
    v.resize(k, Fe(0));
    v
}

impl Field for ExtFieldDesc {
    type El = ExtElem;

    fn zero(&self) -> ExtElem {
        ExtElem(vec![Fe(0); self.0.k])
    }
    fn one(&self) -> ExtElem {
        let mut v = vec![Fe(0); self.0.k];
        v[0] = Fe(1);
        ExtElem(v)
    }
    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = &self.0.base;
        ExtElem(a.0.iter().zip(&b.0).map(|(&x, &y)| f.add(x, y)).collect())
    }
    fn neg(&self, a: &ExtElem) -> ExtElem {
        let f = &self.0.base;
        ExtElem(a.0.iter().map(|&x| f.neg(x)).collect())
    }
    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = &self.0.base;
        ExtElem(a.0.iter().zip(&b.0).map(|(&x, &y)| f.sub(x, y)).collect())
    }
    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = &self.0.base;
        let k = self.0.k;
        let mut prod = vec![Fe(0); 2 * k - 1];
        for (i, &x) in a.0.iter().enumerate() {
            if x == Fe(0) {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                if y != Fe(0) {
                    prod[i + j] = f.add(prod[i + j], f.mul(x, y));
                }
            }
        }
        let m = &self.0.modulus.c;
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c == Fe(0) {
                continue;
            }
            for j in 0..k {
                prod[i - k + j] = f.sub(prod[i - k + j], f.mul(c, m[j]));
            }
        }
        prod.truncate(k);
        ExtElem(prod)
    }
    fn inv(&self, a: &ExtElem) -> ExtElem {
        let f = &self.0.base;
        let r = poly::inv_mod(f, &self.to_poly(a), &self.0.modulus)
            .expect("inverse of zero in extension field");
        self.from_poly(&r)
    }
    fn embed(&self, c: Fe) -> ExtElem {
        let mut v = vec![Fe(0); self.0.k];
        v[0] = c;
        ExtElem(v)
    }
    fn frob(&self, a: &ExtElem) -> ExtElem {
        let f = &self.0.base;
        let k = self.0.k;
        let mut out = vec![Fe(0); k];
        for (i, &c) in a.0.iter().enumerate() {
            if c == Fe(0) {
                continue;
            }
            for (j, &r) in self.0.frob_rows[i].iter().enumerate() {
                out[j] = f.add(out[j], f.mul(c, r));
            }
        }
        ExtElem(out)
    }
    fn size(&self) -> BigUint {
        BigUint::from(self.0.base.q()).pow(self.0.k as u32)
    }
    fn base(&self) -> &FieldDesc {
        &self.0.base
    }
    fn degree(&self) -> usize {
        self.0.k
    }
    fn element(&self, i: u64) -> ExtElem {
        let q = self.0.base.q();
        let mut t = i;
        let mut v = Vec::with_capacity(self.0.k);
        for _ in 0..self.0.k {
            v.push(self.0.base.elem(t % q));
            t /= q;
        }
        ExtElem(v)
    }
    fn to_base(&self, a: &ExtElem) -> Option<Fe> {
        a.0[1..].iter().all(|&c| c == Fe(0)).then_some(a.0[0])
    }
    fn coords(&self, a: &ExtElem) -> Vec<Fe> {
        a.0.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field_make;

    #[test]
    fn reducible_rejected() {
        let f = field_make(5, 1, 0).unwrap();
        let m = Poly::new(vec![Fe(1), Fe(0), Fe(1)]);
        assert_eq!(ext_make(&f, &m).unwrap_err(), AlgebraError::Reducible);
    }

    #[test]
    fn frobenius_two_ways() {
        let f = field_make(5, 1, 0).unwrap();
        let irr = &factor::irreducibles_of_degree(&f, 4)[3];
        let e = ext_make(&f, irr).unwrap();
        let th = e.gen();
        assert_eq!(e.frob_by_powering(&th, 1), e.frob_by_composition(&th));
        assert_eq!(e.frob(&th), e.frob_by_composition(&th));
        assert_eq!(e.frob_n(&th, 4), th);
        let x = e.element(312);
        assert_eq!(e.mul(&x, &e.inv(&x)), e.one());
        let s = e.mul(&x, &x);
        let r = e.sqrt(&s).unwrap();
        assert_eq!(e.mul(&r, &r), s);
    }
}
