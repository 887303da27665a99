//! Generic discrete-log oracles: baby-step giant-step, Pollard rho and
//! Pohlig-Hellman over either of them.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use rand::Rng;

use crate::algebra::ext::{ExtElem, ExtFieldDesc};
use crate::algebra::field::Field;
use crate::psi::PsiValue;

use super::arith::{crt, inv_mod, mul_mod};
use super::SolveError;

/// Largest group order the BSGS oracle accepts.
pub const BSGS_CAP: u128 = 10_000_000_000;

pub trait Group {
    type El: Clone + Eq + Hash;
    fn one(&self) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn pow(&self, a: &Self::El, mut e: u128) -> Self::El {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }
}

/// `F_{q^k}^*`.
pub struct Units<'a>(pub &'a ExtFieldDesc);

impl Group for Units<'_> {
    type El = ExtElem;
    fn one(&self) -> ExtElem {
        self.0.one()
    }
    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        self.0.mul(a, b)
    }
}

/// `F_{q^k}^* / F_q^*`, elements in canonical scaling.
pub struct Quotient<'a>(pub &'a ExtFieldDesc);

impl Group for Quotient<'_> {
    type El = PsiValue;
    fn one(&self) -> PsiValue {
        PsiValue::one(self.0)
    }
    fn mul(&self, a: &PsiValue, b: &PsiValue) -> PsiValue {
        a.mul(self.0, b)
    }
}

fn isqrt_ceil(n: u128) -> u128 {
    let mut r = (n as f64).sqrt() as u128;
    while r * r < n {
        r += 1;
    }
    r.max(1)
}

/// `x` in `[0, n)` with `g^x = h`, where `g^n = 1`.
pub fn bsgs<G: Group>(gr: &G, g: &G::El, h: &G::El, n: u128) -> Result<Option<u128>, SolveError> {
    if n > BSGS_CAP {
        return Err(SolveError::Unsupported(format!("BSGS on a group of order {n}")));
    }
    let m = isqrt_ceil(n);
    let mut table = HashMap::with_capacity(m as usize);
    let mut cur = gr.one();
    for j in 0..m {
        table.entry(cur.clone()).or_insert(j);
        cur = gr.mul(&cur, g);
    }
    let giant = gr.pow(g, (n - m % n) % n);
    let mut y = h.clone();
    for i in 0..=m {
        if let Some(&j) = table.get(&y) {
            let x = (i * m + j) % n;
            if gr.pow(g, x) == *h {
                return Ok(Some(x));
            }
        }
        y = gr.mul(&y, &giant);
    }
    Ok(None)
}

fn class<T: Hash>(x: &T) -> u64 {
    let mut s = DefaultHasher::new();
    x.hash(&mut s);
    s.finish() % 3
}

/// Pollard rho in a group of prime order `ell`.
pub fn rho<G: Group, R: Rng>(gr: &G, g: &G::El, h: &G::El, ell: u128, rng: &mut R) -> Option<u128> {
    if ell < 1000 {
        let mut cur = gr.one();
        for x in 0..ell {
            if cur == *h {
                return Some(x);
            }
            cur = gr.mul(&cur, g);
        }
        return None;
    }
    let step = |x: &G::El, a: u128, b: u128| match class(x) {
        0 => (gr.mul(x, g), (a + 1) % ell, b),
        1 => (gr.mul(x, x), (2 * a) % ell, (2 * b) % ell),
        _ => (gr.mul(x, h), a, (b + 1) % ell),
    };
    for _ in 0..32 {
        let (a0, b0) = (rng.gen_range(0..ell), rng.gen_range(0..ell));
        let x0 = gr.mul(&gr.pow(g, a0), &gr.pow(h, b0));
        let (mut x, mut a, mut b) = (x0.clone(), a0, b0);
        let (mut y, mut c, mut d) = (x0, a0, b0);
        for _ in 0..(8 * isqrt_ceil(ell) + 64) {
            (x, a, b) = step(&x, a, b);
            let t = step(&y, c, d);
            (y, c, d) = step(&t.0, t.1, t.2);
            if x == y {
                let db = (d + ell - b) % ell;
                if db == 0 {
                    break;
                }
                let xv = mul_mod((a + ell - c) % ell, inv_mod(db, ell)?, ell);
                if gr.pow(g, xv) == *h {
                    return Some(xv);
                }
                break;
            }
        }
    }
    None
}

/// Which inner solver the Pohlig-Hellman reduction uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inner {
    Bsgs,
    Rho,
}

/// Log of `h` base `g` modulo `ell^e`, where `g` has order dividing `n` and `ell^e | n`.
pub fn dlog_prime_power<G: Group, R: Rng>(
    gr: &G,
    g: &G::El,
    h: &G::El,
    n: u128,
    ell: u128,
    e: u32,
    inner: Inner,
    rng: &mut R,
) -> Result<Option<u128>, SolveError> {
    let pe = ell.pow(e);
    let gp = gr.pow(g, n / pe);
    let hp = gr.pow(h, n / pe);
    let gamma = gr.pow(&gp, pe / ell);
    let mut x = 0u128;
    let mut li = 1u128;
    for i in 0..e {
        let gx = gr.pow(&gp, (pe - x % pe) % pe);
        let hk = gr.pow(&gr.mul(&gx, &hp), pe / ell / ell.pow(i));
        let d = match inner {
            Inner::Bsgs => bsgs(gr, &gamma, &hk, ell)?,
            Inner::Rho => rho(gr, &gamma, &hk, ell, rng),
        };
        let Some(d) = d else { return Ok(None) };
        x += d * li;
        li *= ell;
    }
    Ok(Some(x % pe))
}

/// Full log modulo `n` from the factorization of `n`.
pub fn pohlig_hellman<G: Group, R: Rng>(
    gr: &G,
    g: &G::El,
    h: &G::El,
    n: u128,
    factors: &[(u128, u32)],
    inner: Inner,
    rng: &mut R,
) -> Result<Option<u128>, SolveError> {
    let mut parts = Vec::new();
    for &(ell, e) in factors {
        match dlog_prime_power(gr, g, h, n, ell, e, inner, rng)? {
            Some(x) => parts.push((x, ell.pow(e))),
            None => return Ok(None),
        }
    }
    let (x, _) = crt(&parts);
    Ok((gr.pow(g, x) == *h).then_some(x))
}

/// Log of `h` base `g` in `F_{q^k}^* / F_q^*`, order `M`, through `z -> z^(q-1)`.
pub fn bsgs_oracle(
    ext: &ExtFieldDesc,
    h: &ExtElem,
    g: &ExtElem,
    m: u128,
) -> Result<Option<u128>, SolveError> {
    let q1 = (ext.fq().q() - 1) as u128;
    let u = Units(ext);
    let (gg, hh) = (ext.pow(g, q1), ext.pow(h, q1));
    if u.pow(&hh, m) != ext.one() {
        return Err(SolveError::NotInSubgroup);
    }
    bsgs(&u, &gg, &hh, m)
}

/// Same log through Pohlig-Hellman over rho.
pub fn rho_oracle<R: Rng>(
    ext: &ExtFieldDesc,
    h: &ExtElem,
    g: &ExtElem,
    m: u128,
    factors: &[(u128, u32)],
    rng: &mut R,
) -> Result<Option<u128>, SolveError> {
    let q1 = (ext.fq().q() - 1) as u128;
    let u = Units(ext);
    let (gg, hh) = (ext.pow(g, q1), ext.pow(h, q1));
    pohlig_hellman(&u, &gg, &hh, m, factors, Inner::Rho, rng)
}

/// Whether `x` generates a cyclic group of order `n`.
pub fn is_generator<G: Group>(gr: &G, x: &G::El, n: u128, factors: &[(u128, u32)]) -> bool {
    gr.pow(x, n) == gr.one() && factors.iter().all(|&(ell, _)| gr.pow(x, n / ell) != gr.one())
}

