//! Prime-power fields `F_q = F_p[t]/(g)` with elements packed as base-`p` integers.
//!
//! Multiplication goes through exponent/logarithm tables built once per field,
//! which keeps every operation O(1) at the sizes this crate targets (`q <= 2^20`).

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::AlgebraError;

/// Largest field size accepted by [`field_make`].
pub const Q_CAP: u64 = 1 << 20;

/// An element of some `F_q`: the integer whose base-`p` digits are its
/// coefficients, low degree first.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(pub u32);

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type FieldElem = Fe;

struct Inner {
    p: u32,
    m: usize,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    pow_p: Vec<u32>,
}

/// Description of `F_q`; cheap to clone and shareable across threads.
#[derive(Clone)]
pub struct FieldDesc(Arc<Inner>);

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.p(), self.m())
    }
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}
impl Eq for FieldDesc {}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for d in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % d == 0 {
            return n == d;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod_u64(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

pub fn pow_mod_u64(mut a: u64, mut e: u64, n: u64) -> u64 {
    let mut r = 1 % n;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod_u64(r, a, n);
        }
        a = mul_mod_u64(a, a, n);
        e >>= 1;
    }
    r
}

/// Digit-vector multiplication modulo a monic `g` over `F_p`; only used while
/// the tables are being built.
fn slow_mul(a: &[u32], b: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let m = g.len() - 1;
    let p64 = p as u64;
    let mut prod = vec![0u64; 2 * m];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p64;
        }
    }
    for i in (m..2 * m).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..m {
            let sub = c * g[j] as u64 % p64;
            prod[i - m + j] = (prod[i - m + j] + p64 - sub) % p64;
        }
    }
    prod.truncate(m);
    prod.into_iter().map(|x| x as u32).collect()
}

fn digits_of(mut x: u32, p: u32, m: usize) -> Vec<u32> {
    let mut d = vec![0; m];
    for slot in d.iter_mut() {
        *slot = x % p;
        x /= p;
    }
    d
}

fn index_of(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Irreducibility over `F_p` by checking `gcd(g, X^(p^i) - X) = 1` for `i <= m/2`.
fn irreducible_over_prime(g: &[u32], p: u32) -> bool {
    let m = g.len() - 1;
    if m == 1 {
        return true;
    }
    let one = {
        let mut v = vec![0; m];
        v[0] = 1;
        v
    };
    let mut x = vec![0; m];
    x[1] = 1;
    let pow = |base: &[u32], mut e: u64| {
        let mut r = one.clone();
        let mut b = base.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                r = slow_mul(&r, &b, g, p);
            }
            b = slow_mul(&b, &b, g, p);
            e >>= 1;
        }
        r
    };
    let mut xp = x.clone();
    for _ in 1..=m / 2 {
        xp = pow(&xp, p as u64);
        // h = X^(p^i) - X as a polynomial of degree < m, then gcd with g.
        let mut h: Vec<i64> = xp.iter().map(|&c| c as i64).collect();
        h[1] = (h[1] - 1).rem_euclid(p as i64);
        let h: Vec<u32> = h.into_iter().map(|c| c as u32).collect();
        if gcd_degree_over_prime(g, &h, p) > 0 {
            return false;
        }
    }
    true
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn gcd_degree_over_prime(a: &[u32], b: &[u32], p: u32) -> usize {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    let p64 = p as u64;
    while !b.is_empty() {
        // a mod b
        let inv = pow_mod_u64(*b.last().unwrap() as u64, p64 - 2, p64);
        while a.len() >= b.len() {
            let c = *a.last().unwrap() as u64 * inv % p64;
            let shift = a.len() - b.len();
            for (j, &bj) in b.iter().enumerate() {
                let sub = c * bj as u64 % p64;
                a[shift + j] = ((a[shift + j] as u64 + p64 - sub) % p64) as u32;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Builds `F_{p^m}`; the modulus is the first irreducible hit by a seeded
/// search over monic degree-`m` polynomials.
pub fn field_make(p: u64, m: usize, seed: u64) -> Result<FieldDesc, AlgebraError> {
    if !is_prime_u64(p) {
        return Err(AlgebraError::NotPrime(p));
    }
    if p < 5 {
        return Err(AlgebraError::CharTooSmall(p));
    }
    if m == 0 {
        return Err(AlgebraError::BadDegree(m));
    }
    let q = (p as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if q > Q_CAP as u128 {
        return Err(AlgebraError::TooLarge(q));
    }
    let p = p as u32;
    let modulus = if m == 1 {
        vec![0, 1]
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut g: Vec<u32> = (0..m).map(|_| rng.gen_range(0..p)).collect();
            g.push(1);
            if g[0] != 0 && irreducible_over_prime(&g, p) {
                break g;
            }
        }
    };
    Ok(build_tables(p, m, modulus))
}

/// Builds `F_{p^m}` from an explicit monic modulus (low degree first).
pub fn field_with_modulus(p: u64, modulus: &[u32]) -> Result<FieldDesc, AlgebraError> {
    if !is_prime_u64(p) {
        return Err(AlgebraError::NotPrime(p));
    }
    if p < 5 {
        return Err(AlgebraError::CharTooSmall(p));
    }
    let m = modulus.len().saturating_sub(1);
    if m == 0 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p as u32) {
        return Err(AlgebraError::BadModulus);
    }
    let q = (p as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if q > Q_CAP as u128 {
        return Err(AlgebraError::TooLarge(q));
    }
    if m > 1 && (modulus[0] == 0 || !irreducible_over_prime(modulus, p as u32)) {
        return Err(AlgebraError::Reducible);
    }
    let modulus = if m == 1 { vec![0, 1] } else { modulus.to_vec() };
    Ok(build_tables(p as u32, m, modulus))
}

fn build_tables(p: u32, m: usize, modulus: Vec<u32>) -> FieldDesc {
    let q = p.pow(m as u32);
    let order = (q - 1) as usize;
    let mut exp = vec![0u32; order];
    for g in 2..q {
        let gd = digits_of(g, p, m);
        let mut cur = digits_of(1, p, m);
        let mut full = true;
        for (i, slot) in exp.iter_mut().enumerate() {
            let idx = index_of(&cur, p);
            if i > 0 && idx == 1 {
                full = false;
                break;
            }
            *slot = idx;
            cur = slow_mul(&cur, &gd, &modulus, p);
        }
        if full {
            break;
        }
    }
    let mut log = vec![0u32; q as usize];
    for (i, &e) in exp.iter().enumerate() {
        log[e as usize] = i as u32;
    }
    let pow_p = (0..=m).map(|i| p.pow(i as u32)).collect();
    FieldDesc(Arc::new(Inner { p, m, q, modulus, exp, log, pow_p }))
}

impl FieldDesc {
    pub fn p(&self) -> u64 {
        self.0.p as u64
    }
    pub fn m(&self) -> usize {
        self.0.m
    }
    pub fn q(&self) -> u64 {
        self.0.q as u64
    }
    /// Modulus coefficients over `F_p`, low degree first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn zero(&self) -> Fe {
        Fe(0)
    }
    #[inline]
    pub fn one(&self) -> Fe {
        Fe(1)
    }

    /// Embeds an integer through `Z -> F_p -> F_q`.
    pub fn from_i64(&self, x: i64) -> Fe {
        Fe(x.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_digits(&self, d: &[u32]) -> Fe {
        Fe(index_of(d, self.0.p))
    }

    pub fn digits(&self, a: Fe) -> Vec<u32> {
        digits_of(a.0, self.0.p, self.0.m)
    }

    /// Element with index `i` in `0..q`.
    #[inline]
    pub fn elem(&self, i: u64) -> Fe {
        debug_assert!(i < self.q());
        Fe(i as u32)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.0.p;
        if self.0.m == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= p { s - p } else { s });
        }
        let (mut x, mut y, mut r, mut w) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            let d = x % p + y % p;
            r += if d >= p { d - p } else { d } * w;
            x /= p;
            y /= p;
            w *= p;
        }
        Fe(r)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.0.p;
        if self.0.m == 1 {
            return Fe(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let (mut x, mut r, mut w) = (a.0, 0u32, 1u32);
        while x > 0 {
            let d = x % p;
            r += if d == 0 { 0 } else { p - d } * w;
            x /= p;
            w *= p;
        }
        Fe(r)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        let n = self.0.q - 1;
        let s = self.0.log[a.0 as usize] + self.0.log[b.0 as usize];
        Fe(self.0.exp[(if s >= n { s - n } else { s }) as usize])
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Fe) -> Fe {
        assert!(a.0 != 0, "inverse of zero in {:?}", self);
        let n = self.0.q - 1;
        let l = self.0.log[a.0 as usize];
        Fe(self.0.exp[((n - l) % n) as usize])
    }

    #[inline]
    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Fe, e: u128) -> Fe {
        if e == 0 {
            return Fe(1);
        }
        if a.0 == 0 {
            return Fe(0);
        }
        let n = (self.0.q - 1) as u128;
        let l = (self.0.log[a.0 as usize] as u128 * (e % n)) % n;
        Fe(self.0.exp[l as usize])
    }

    /// Discrete logarithm to the table generator; `None` on zero.
    pub fn log(&self, a: Fe) -> Option<u64> {
        (a.0 != 0).then(|| self.0.log[a.0 as usize] as u64)
    }

    /// The table generator raised to `e`.
    pub fn exp(&self, e: u64) -> Fe {
        Fe(self.0.exp[(e % (self.q() - 1)) as usize])
    }

    /// A generator of `F_q^*`.
    pub fn generator(&self) -> Fe {
        self.exp(1)
    }

    /// Quadratic character: 0, 1 or -1.
    pub fn chi(&self, a: Fe) -> i32 {
        match self.log(a) {
            None => 0,
            Some(l) if l % 2 == 0 => 1,
            _ => -1,
        }
    }

    pub fn is_square(&self, a: Fe) -> bool {
        self.chi(a) >= 0
    }

    /// The square root with the smaller index, if any.
    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        match self.log(a) {
            None => Some(Fe(0)),
            Some(l) if l % 2 == 0 => {
                let r = self.exp(l / 2);
                let s = self.neg(r);
                Some(if r.0 <= s.0 { r } else { s })
            }
            _ => None,
        }
    }

    /// `a^(p^times)`.
    pub fn frob_p(&self, a: Fe, times: usize) -> Fe {
        let e = (self.0.p as u128).pow((times % self.0.m) as u32);
        self.pow(a, e)
    }

    /// Whether the element lies in the prime subfield.
    pub fn in_prime_field(&self, a: Fe) -> bool {
        a.0 < self.0.p
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(0..self.0.q))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(1..self.0.q))
    }

    /// Canonical text encoding: comma-separated base-`p` digits, low first.
    pub fn encode(&self, a: Fe) -> String {
        let d = self.digits(a);
        d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }

    pub fn decode(&self, s: &str) -> Result<Fe, AlgebraError> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != self.0.m {
            return Err(AlgebraError::Parse(s.to_string()));
        }
        let mut d = Vec::with_capacity(self.0.m);
        for part in parts {
            let v: u32 = part
                .trim()
                .parse()
                .map_err(|_| AlgebraError::Parse(s.to_string()))?;
            if v >= self.0.p {
                return Err(AlgebraError::Parse(s.to_string()));
            }
            d.push(v);
        }
        Ok(self.from_digits(&d))
    }

    /// `p^i` as used by the packed digit layout.
    pub fn digit_weight(&self, i: usize) -> u32 {
        self.0.pow_p[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = field_make(5, 1, 7).unwrap();
        assert_eq!(f.q(), 5);
        assert_eq!(f.mul(Fe(2), Fe(3)), Fe(1));
        assert_eq!(f.add(Fe(4), Fe(3)), Fe(2));
        assert_eq!(f.sqrt(Fe(4)).unwrap(), Fe(2));
        assert_eq!(f.sqrt(Fe(2)), None);
    }

    #[test]
    fn rejects_bad_characteristic() {
        assert_eq!(field_make(4, 1, 0).unwrap_err(), AlgebraError::NotPrime(4));
        assert_eq!(field_make(3, 1, 0).unwrap_err(), AlgebraError::CharTooSmall(3));
    }

    #[test]
    fn f25_modulus_has_no_roots() {
        let f = field_make(5, 2, 0).unwrap();
        let g = f.modulus();
        for x in 0..5u64 {
            let v = g.iter().rev().fold(0u64, |acc, &c| (acc * x + c as u64) % 5);
            assert_ne!(v, 0);
        }
        // every nonzero element has an inverse
        for a in 1..25 {
            assert_eq!(f.mul(Fe(a), f.inv(Fe(a))), Fe(1));
        }
    }
}
