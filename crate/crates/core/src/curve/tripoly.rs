//! Sparse polynomials in `U, V, W` over `F_q`.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::field::Field;
use crate::algebra::fq::{Fe, FieldDesc};

/// Exponents of `(U, V, W)`.
pub type Mono = [u32; 3];

#[derive(Clone, PartialEq, Eq)]
pub struct TriPoly {
    f: FieldDesc,
    terms: BTreeMap<Mono, Fe>,
}

impl fmt::Debug for TriPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}", self)
    }
}

impl fmt::Display for TriPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            write!(out, "{}", self.f.encode(*c))?;
            for (name, e) in ["U", "V", "W"].iter().zip(m) {
                match e {
                    0 => {}
                    1 => write!(out, "*{}", name)?,
                    _ => write!(out, "*{}^{}", name, e)?,
                }
            }
        }
        Ok(())
    }
}

impl TriPoly {
    pub fn zero(f: &FieldDesc) -> Self {
        TriPoly { f: f.clone(), terms: BTreeMap::new() }
    }
    pub fn constant(f: &FieldDesc, c: Fe) -> Self {
        Self::monomial(f, c, [0, 0, 0])
    }
    pub fn one(f: &FieldDesc) -> Self {
        Self::constant(f, Fe(1))
    }
    pub fn monomial(f: &FieldDesc, c: Fe, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if c != Fe(0) {
            terms.insert(m, c);
        }
        TriPoly { f: f.clone(), terms }
    }
    pub fn u(f: &FieldDesc) -> Self {
        Self::monomial(f, Fe(1), [1, 0, 0])
    }
    pub fn v(f: &FieldDesc) -> Self {
        Self::monomial(f, Fe(1), [0, 1, 0])
    }
    pub fn w(f: &FieldDesc) -> Self {
        Self::monomial(f, Fe(1), [0, 0, 1])
    }

    pub fn field(&self) -> &FieldDesc {
        &self.f
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Fe)> {
        self.terms.iter()
    }
    pub fn coeff(&self, m: Mono) -> Fe {
        self.terms.get(&m).copied().unwrap_or(Fe(0))
    }
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m[0] + m[1] + m[2]).max().unwrap_or(0)
    }
    /// Whether `W` does not occur.
    pub fn is_uv(&self) -> bool {
        self.terms.keys().all(|m| m[2] == 0)
    }

    fn add_term(&mut self, m: Mono, c: Fe) {
        if c == Fe(0) {
            return;
        }
        let f = &self.f;
        let e = self.terms.entry(m).or_insert(Fe(0));
        *e = f.add(*e, c);
        if *e == Fe(0) {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &TriPoly) -> TriPoly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, *c);
        }
        r
    }
    pub fn neg(&self) -> TriPoly {
        self.scale(self.f.neg(Fe(1)))
    }
    pub fn sub(&self, o: &TriPoly) -> TriPoly {
        self.add(&o.neg())
    }
    pub fn scale(&self, s: Fe) -> TriPoly {
        let mut r = TriPoly::zero(&self.f);
        for (m, c) in &self.terms {
            r.add_term(*m, self.f.mul(*c, s));
        }
        r
    }
    pub fn add_const(&self, c: Fe) -> TriPoly {
        self.add(&TriPoly::constant(&self.f, c))
    }
    pub fn mul(&self, o: &TriPoly) -> TriPoly {
        let mut r = TriPoly::zero(&self.f);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = [m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]];
                r.add_term(m, self.f.mul(*c1, *c2));
            }
        }
        r
    }
    pub fn pow(&self, e: u32) -> TriPoly {
        let mut r = TriPoly::one(&self.f);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Renames variables: the exponent of variable `i` moves to slot `to[i]`.
    pub fn rename(&self, to: [usize; 3]) -> TriPoly {
        let mut r = TriPoly::zero(&self.f);
        for (m, c) in &self.terms {
            let mut n = [0u32; 3];
            for i in 0..3 {
                n[to[i]] += m[i];
            }
            r.add_term(n, *c);
        }
        r
    }

    /// `A(U,V) -> A(V,W)`.
    pub fn shift(&self) -> TriPoly {
        debug_assert!(self.is_uv());
        self.rename([1, 2, 0])
    }

    /// Exchanges `U` and `W`.
    pub fn swap_uw(&self) -> TriPoly {
        self.rename([2, 1, 0])
    }

    /// Exact quotient by `U - W`; `None` if it does not divide.
    pub fn div_u_minus_w(&self) -> Option<TriPoly> {
        let f = &self.f;
        // group by the exponent of U: p = sum_i c_i(V,W) U^i
        let mut by_u: BTreeMap<u32, TriPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_u.entry(m[0])
                .or_insert_with(|| TriPoly::zero(f))
                .add_term([0, m[1], m[2]], *c);
        }
        let top = match by_u.keys().next_back() {
            Some(&t) => t,
            None => return Some(TriPoly::zero(f)),
        };
        let w = TriPoly::w(f);
        let mut quot = TriPoly::zero(f);
        let mut carry = TriPoly::zero(f);
        for i in (1..=top).rev() {
            let ci = by_u.get(&i).cloned().unwrap_or_else(|| TriPoly::zero(f));
            let qi = ci.add(&carry);
            for (m, c) in &qi.terms {
                quot.add_term([i - 1, m[1], m[2]], *c);
            }
            carry = qi.mul(&w);
        }
        let c0 = by_u.get(&0).cloned().unwrap_or_else(|| TriPoly::zero(f));
        if c0.add(&carry).is_zero() {
            Some(quot)
        } else {
            None
        }
    }

    /// Value at a point of `K^3`.
    pub fn eval<K: Field>(&self, k: &K, pt: &[K::El; 3]) -> K::El {
        let maxe = self
            .terms
            .keys()
            .map(|m| m[0].max(m[1]).max(m[2]))
            .max()
            .unwrap_or(0) as usize;
        let powers: Vec<Vec<K::El>> = pt
            .iter()
            .map(|x| {
                let mut v = vec![k.one()];
                for i in 0..maxe {
                    v.push(k.mul(&v[i], x));
                }
                v
            })
            .collect();
        let mut acc = k.zero();
        for (m, c) in &self.terms {
            let mut t = k.embed(*c);
            for i in 0..3 {
                if m[i] > 0 {
                    t = k.mul(&t, &powers[i][m[i] as usize]);
                }
            }
            acc = k.add(&acc, &t);
        }
        acc
    }

    /// Largest monomial in exponent order, with its coefficient.
    pub fn lead(&self) -> Option<(Mono, Fe)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, *c))
    }
}

/// `<A, B> = A(V,W) B(U,V) - A(U,V) B(V,W)` for `A, B` in `U, V`.
pub fn bracket(a: &TriPoly, b: &TriPoly) -> TriPoly {
    a.shift().mul(b).sub(&a.mul(&b.shift()))
}
