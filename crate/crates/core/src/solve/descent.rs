//! Individual logarithms. A target `z` is split into low-degree polynomials
//! in `theta`; the places above their factors either have a known log or are
//! descended through a bilinear relation whose bracket vanishes at them.

use std::collections::HashMap;
use std::sync::Mutex;

use rand::Rng;

use crate::algebra::ext::ExtElem;
use crate::algebra::factor::{is_smooth, poly_factor};
use crate::algebra::field::Field;
use crate::algebra::fq::Fe;
use crate::algebra::linalg;
use crate::algebra::poly::{self, Poly};
use crate::basis::EllipticBasis;
use crate::curve::tripoly::{bracket, Mono};
use crate::curve::{phi, TriPoly};
use crate::divisor::{places_over, point_of_place, Place, PlacePoint};
use crate::harvest::{evaluate_pair, make_relation, FactorBase, Loc, Mode, Relation};

use super::arith::{inv_mod, mul_mod};
use super::factor::factor_modulus;
use super::oracle::{is_generator, Units};
use super::table::{orbit_log, LogTable};
use super::SolveError;

#[derive(Clone, Debug)]
pub struct DescentParams {
    pub t_a: usize,
    pub t_b: usize,
    /// Largest degree of the polynomials a split may contain.
    pub d0: usize,
    pub split_budget: usize,
    /// `A` candidates tried per bilinear step.
    pub descend_budget: usize,
    pub max_depth: usize,
}

impl Default for DescentParams {
    fn default() -> Self {
        DescentParams { t_a: 2, t_b: 1, d0: 4, split_budget: 2000, descend_budget: 20_000, max_depth: 3 }
    }
}

/// `z = g0^-r * prod num / prod den` up to `F_q^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub r: u128,
    pub num: Vec<(Poly, usize)>,
    pub den: Vec<(Poly, usize)>,
}

/// Rational reconstruction: `w = a / b mod m` with `deg a <= k/2`.
fn half_gcd_split(b: &EllipticBasis, w: &Poly) -> (Poly, Poly) {
    let f = b.fq();
    let m = b.ext.modulus().clone();
    let half = b.k / 2;
    let (mut r0, mut r1) = (m, w.clone());
    let (mut t0, mut t1) = (Poly::zero(), Poly::one());
    while !r1.is_zero() && r1.degree() > half {
        let (qt, r) = poly::divrem(f, &r0, &r1);
        let t = poly::sub(f, &t0, &poly::mul(f, &qt, &t1));
        (r0, r1) = (r1, r);
        (t0, t1) = (t1, t);
    }
    (r1, t1)
}

fn factor_nonconstant(b: &EllipticBasis, a: &Poly) -> Vec<(Poly, usize)> {
    if a.is_constant() {
        return vec![];
    }
    poly_factor(b.fq(), a).expect("nonzero")
}

/// Writes `z * g0^r` as a quotient of `d0`-smooth polynomials in `theta`.
pub fn classical_split<R: Rng>(
    b: &EllipticBasis,
    z: &ExtElem,
    g0: &ExtElem,
    d0: usize,
    budget: usize,
    rng: &mut R,
) -> Result<Split, SolveError> {
    let e = &b.ext;
    let f = b.fq();
    if e.is_zero(z) {
        return Err(SolveError::Unsupported("log of zero".into()));
    }
    for attempt in 0..budget.max(1) {
        let r = if attempt == 0 { 0 } else { rng.gen_range(1..b.m) };
        let w = e.to_poly(&e.mul(z, &e.pow(g0, r)));
        if w.is_constant() {
            return Ok(Split { r, num: vec![], den: vec![] });
        }
        if is_smooth(f, &w, d0) {
            return Ok(Split { r, num: factor_nonconstant(b, &w), den: vec![] });
        }
        let (a, d) = half_gcd_split(b, &w);
        if a.is_zero() || d.is_zero() {
            continue;
        }
        if is_smooth(f, &a, d0) && is_smooth(f, &d, d0) {
            return Ok(Split { r, num: factor_nonconstant(b, &a), den: factor_nonconstant(b, &d) });
        }
    }
    Err(SolveError::BudgetExhausted)
}

/// The product of a split, for checking against `z`.
pub fn split_value(b: &EllipticBasis, s: &Split, g0: &ExtElem) -> ExtElem {
    let e = &b.ext;
    let mut acc = e.one();
    for (u, n) in &s.num {
        acc = e.mul(&acc, &e.pow(&e.from_poly(u), *n as u128));
    }
    for (u, n) in &s.den {
        acc = e.div(&acc, &e.pow(&e.from_poly(u), *n as u128));
    }
    let gr = e.pow(g0, s.r);
    e.div(&acc, &gr)
}

/// `U^i, V^i, U^i V, U V^i` for `i <= t`, with `1` and `UV`: `4t` monomials, ascending.
pub fn descent_monomials(t: usize) -> Vec<Mono> {
    let t = t as u32;
    let mut out = vec![[0, 0, 0], [1, 1, 0]];
    for i in 1..=t {
        out.push([i, 0, 0]);
        out.push([0, i, 0]);
        if i >= 2 {
            out.push([i, 1, 0]);
            out.push([1, i, 0]);
        }
    }
    out.sort();
    out.dedup();
    out
}

/// A relation produced by one bilinear step.
#[derive(Clone, Debug)]
pub struct DescentStep {
    pub a: TriPoly,
    pub b: TriPoly,
    pub relation: Relation,
}

/// Coordinates over `F_q` of `<m_i, m_j>` at `Phi(Q)` for `Q` in `target`.
fn bracket_table(
    b: &EllipticBasis,
    target: &Place,
    ma: &[Mono],
    mb: &[Mono],
) -> Result<Vec<Vec<Vec<Fe>>>, SolveError> {
    let f = b.fq();
    let mono = |m: Mono| TriPoly::monomial(f, f.one(), m);
    let pt = point_of_place(&b.curve, target)
        .ok_or_else(|| SolveError::DescentFailed("target at infinity".into()))?;
    let mut out = Vec::new();
    for &x in ma {
        let mut row = Vec::new();
        for &y in mb {
            let br = bracket(&mono(x), &mono(y));
            let v = match &pt {
                PlacePoint::Ext(k, p) => {
                    let img = phi(&b.curve.over(k), &b.td, p)
                        .map_err(|_| SolveError::DescentFailed("target maps to infinity".into()))?;
                    k.coords(&br.eval(k, &img))
                }
                PlacePoint::Quad(l, p) => {
                    let img = phi(&b.curve.over(l), &b.td, p)
                        .map_err(|_| SolveError::DescentFailed("target maps to infinity".into()))?;
                    l.coords(&br.eval(l, &img))
                }
            };
            row.push(v);
        }
        out.push(row);
    }
    Ok(out)
}

/// Sieve pairs `(A, B)` with `A` over `M_{t_a}`, `B` over `M_{t_b}`, both
/// monic and `A` free of the head of `B`, whose bracket vanishes on `target`.
/// `A` is enumerated over `F_q`; `B` then solves a linear system. The first
/// relation accepted by `accept` is returned.
pub fn bilinear_descend<F: FnMut(&Relation) -> bool>(
    b: &EllipticBasis,
    fb: &FactorBase,
    target: &Place,
    t_a: usize,
    t_b: usize,
    budget: usize,
    mut accept: F,
) -> Result<DescentStep, SolveError> {
    let f = b.fq();
    let q = f.q();
    let ma_all = descent_monomials(t_a);
    let mb_all = descent_monomials(t_b.min(t_a));
    let head_a = *ma_all.last().expect("nonempty");
    let head_b = if t_b < t_a {
        *mb_all.last().expect("nonempty")
    } else {
        mb_all[mb_all.len() - 2]
    };
    let free_a: Vec<Mono> = ma_all.iter().copied().filter(|m| *m != head_a && *m != head_b).collect();
    let free_b: Vec<Mono> = mb_all.iter().copied().filter(|m| *m < head_b && *m != head_a).collect();
    let mut ma = vec![head_a];
    ma.extend(&free_a);
    let mut mb = vec![head_b];
    mb.extend(&free_b);
    let tab = bracket_table(b, target, &ma, &mb)?;
    let d = target.degree();
    let total = (q as u128).saturating_pow(free_a.len() as u32);
    let limit = total.min(budget as u128) as u64;
    for idx in 0..limit {
        let mut coef = vec![f.one()];
        let mut i = idx;
        for _ in 0..free_a.len() {
            coef.push(f.elem(i % q));
            i /= q;
        }
        // Column j: sum_i a_i <m_i, mb_j> at the target point.
        let col = |j: usize| -> Vec<Fe> {
            let mut v = vec![Fe(0); d];
            for (ai, row) in coef.iter().zip(&tab) {
                if *ai == Fe(0) {
                    continue;
                }
                for (s, x) in v.iter_mut().zip(&row[j]) {
                    *s = f.add(*s, f.mul(*ai, *x));
                }
            }
            v
        };
        let rhs: Vec<Fe> = col(0).into_iter().map(|x| f.neg(x)).collect();
        let cols: Vec<Vec<Fe>> = (1..mb.len()).map(col).collect();
        let mat: Vec<Vec<Fe>> = (0..d).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
        let Some(sol) = linalg::solve(f, &mat, &rhs) else { continue };
        let mut a = TriPoly::zero(f);
        for (c, m) in coef.iter().zip(&ma) {
            a = a.add(&TriPoly::monomial(f, *c, *m));
        }
        let mut bb = TriPoly::monomial(f, f.one(), head_b);
        for (c, m) in sol.iter().zip(&free_b) {
            bb = bb.add(&TriPoly::monomial(f, *c, *m));
        }
        let Ok(pd) = evaluate_pair(b, &a, &bb) else { continue };
        if pd.right.coeff(target) <= 0 {
            continue;
        }
        let rel = make_relation(b, fb, Mode::Core, vec![], &pd);
        if accept(&rel) {
            return Ok(DescentStep { a, b: bb, relation: rel });
        }
    }
    Err(SolveError::NoSolutionInBudget)
}

/// Logs of arbitrary places on top of a solved table, descending the ones the
/// table lacks. Results are memoized by orbit representative.
pub struct Descent<'a> {
    pub b: &'a EllipticBasis,
    pub fb: &'a FactorBase,
    pub table: &'a LogTable,
    pub params: DescentParams,
    memo: Mutex<HashMap<Place, Option<u128>>>,
}

impl<'a> Descent<'a> {
    pub fn new(b: &'a EllipticBasis, fb: &'a FactorBase, table: &'a LogTable, params: DescentParams) -> Self {
        Descent { b, fb, table, params, memo: Mutex::new(HashMap::new()) }
    }

    fn known_rep(&self, rep: &Place) -> Option<u128> {
        if let Some(v) = self.table.logs.get(rep) {
            return Some(*v);
        }
        self.memo.lock().expect("memo lock").get(rep).copied().flatten()
    }

    /// `L(p)` if already known, without descending.
    pub fn lookup(&self, p: &Place) -> Option<u128> {
        let m = self.b.m;
        let q = self.b.q() as u128 % m;
        match self.fb.locate(self.b, p) {
            Loc::Origin => Some(0),
            Loc::Torsion { .. } => self.table.place_log(self.b, self.fb, p),
            Loc::Rep { rep, shift } => {
                Some(orbit_log(q, m, p.degree(), shift, self.known_rep(&rep)?, self.table.c()?))
            }
        }
    }

    /// `L(p)`, descending when needed.
    pub fn place_log(&self, p: &Place) -> Result<u128, SolveError> {
        self.place_log_at(p, 0)
    }

    fn place_log_at(&self, p: &Place, depth: usize) -> Result<u128, SolveError> {
        if let Some(v) = self.lookup(p) {
            return Ok(v);
        }
        let Loc::Rep { rep, .. } = self.fb.locate(self.b, p) else {
            return Err(SolveError::MissingLog("c is not known".into()));
        };
        if self.memo.lock().expect("memo lock").get(&rep) == Some(&None) || depth >= self.params.max_depth {
            return Err(SolveError::DescentFailed(format!("no log for a place of degree {}", p.degree())));
        }
        let v = self.descend_rep(&rep, depth);
        self.memo.lock().expect("memo lock").insert(rep.clone(), v.as_ref().ok().copied());
        v?;
        self.lookup(p).ok_or_else(|| SolveError::MissingLog("after descent".into()))
    }

    /// Solves `a L(rep) + rest = 0` from a bilinear relation on `rep`.
    fn descend_rep(&self, rep: &Place, depth: usize) -> Result<u128, SolveError> {
        let (b, fb, m) = (self.b, self.fb, self.b.m);
        let deg = rep.degree();
        let mut found = None;
        let step = bilinear_descend(b, fb, rep, self.params.t_a, self.params.t_b, self.params.descend_budget, |rel| {
            let Some(&a) = rel.row.reps.get(rep) else { return false };
            if inv_mod(a, m).is_none() {
                return false;
            }
            let others: Vec<&Place> = rel.row.reps.keys().filter(|p| *p != rep).collect();
            if others.iter().any(|p| self.known_rep(p).is_none() && p.degree() >= deg) {
                return false;
            }
            let mut rest = mul_mod(rel.row.c, self.table.c().unwrap_or(0), m);
            for p in others {
                let l = match self.known_rep(p) {
                    Some(l) => l,
                    None => match self.place_log_at(p, depth + 1) {
                        Ok(l) => l,
                        Err(_) => return false,
                    },
                };
                rest = (rest + mul_mod(rel.row.reps[p], l, m)) % m;
            }
            let inv = inv_mod(a, m).expect("checked");
            found = Some(mul_mod((m - rest) % m, inv, m));
            true
        });
        step?;
        found.ok_or(SolveError::NoSolutionInBudget)
    }

    /// `L(u(theta))` for a monic irreducible `u`: the places above `u`.
    pub fn poly_log(&self, u: &Poly) -> Result<u128, SolveError> {
        let m = self.b.m;
        let mut acc = 0;
        for p in places_over(&self.b.curve, u) {
            let mult = if matches!(p, Place::Ramified { .. }) { 2 } else { 1 };
            acc = (acc + mult * self.place_log(&p)?) % m;
        }
        Ok(acc)
    }

    pub fn split_log(&self, s: &Split, l_g0: u128) -> Result<u128, SolveError> {
        let m = self.b.m;
        let mut acc = 0u128;
        for (u, n) in &s.num {
            acc = (acc + mul_mod(*n as u128, self.poly_log(u)?, m)) % m;
        }
        for (u, n) in &s.den {
            acc = (acc + m - mul_mod(*n as u128, self.poly_log(u)?, m)) % m;
        }
        Ok((acc + m - mul_mod(s.r % m, l_g0, m)) % m)
    }

    /// An element `theta - t` whose log is known and invertible modulo `M`.
    pub fn randomizer(&self) -> Result<(ExtElem, u128), SolveError> {
        let f = self.b.fq();
        let m = self.b.m;
        for i in 0..f.q() {
            let u = Poly::x_minus(f, f.elem(i));
            if let Ok(l) = self.poly_log(&u) {
                if inv_mod(l, m).is_some() {
                    return Ok((self.b.ext.from_poly(&u), l));
                }
            }
        }
        Err(SolveError::MissingLog("no linear randomizer has an invertible log".into()))
    }

    /// `L(z)` modulo `M`, re-randomizing the split while descent fails.
    pub fn elem_log<R: Rng>(&self, z: &ExtElem, rng: &mut R) -> Result<u128, SolveError> {
        let (b, m) = (self.b, self.b.m);
        let (g0, l_g0) = self.randomizer()?;
        let mut last = SolveError::BudgetExhausted;
        for attempt in 0..self.params.split_budget.max(1) {
            let r = if attempt == 0 { 0 } else { rng.gen_range(1..m) };
            let z2 = b.ext.mul(z, &b.ext.pow(&g0, r));
            let s = classical_split(b, &z2, &g0, self.params.d0, self.params.split_budget, rng)?;
            match self.split_log(&s, l_g0) {
                Ok(l) => return Ok((l + m - mul_mod(r, l_g0, m)) % m),
                Err(e) => last = e,
            }
        }
        Err(SolveError::DescentFailed(last.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DlogResult {
    /// `log_g z` modulo `M`.
    pub x: u128,
    /// `log_g z` modulo `q^k - 1`, when `g` generates `F_{q^k}^*`.
    pub full: Option<u128>,
    /// `z / g^x` lies in `F_q^*`.
    pub verified: bool,
}

/// `log_g z`: the quotient part from the descent, the `F_q^*` part by search.
pub fn dlog<R: Rng>(d: &Descent, z: &ExtElem, g: &ExtElem, rng: &mut R) -> Result<DlogResult, SolveError> {
    let b = d.b;
    let e = &b.ext;
    let m = b.m;
    let lz = d.elem_log(z, rng)?;
    let lg = d.elem_log(g, rng)?;
    let inv = inv_mod(lg, m).ok_or_else(|| SolveError::Unsupported("g does not generate the quotient".into()))?;
    let x = mul_mod(lz, inv, m);
    let u = e.div(z, &e.pow(g, x));
    let verified = e.to_base(&u).is_some();
    let norm = e.pow(g, m);
    let mut full = None;
    let mut cur = e.one();
    for t in 0..(b.q() as u128 - 1) {
        if cur == u {
            full = Some(x + m * t);
            break;
        }
        cur = e.mul(&cur, &norm);
    }
    Ok(DlogResult { x, full, verified })
}

/// Prime factorization of `q^k - 1`.
pub fn group_order_factors(b: &EllipticBasis) -> Result<Vec<(u128, u32)>, SolveError> {
    factor_modulus(b.m * (b.q() as u128 - 1))
}

/// The first generator of `F_{q^k}^*` of the form `theta + a`, then monic quadratics in `theta`.
pub fn choose_generator(b: &EllipticBasis) -> Result<ExtElem, SolveError> {
    let e = &b.ext;
    let f = b.fq();
    let n = b.m * (b.q() as u128 - 1);
    let factors = group_order_factors(b)?;
    let units = Units(e);
    let q = f.q();
    let lin = (0..q).map(|a| Poly::new(vec![f.elem(a), f.one()]));
    let quad = (0..q * q).map(|i| Poly::new(vec![f.elem(i % q), f.elem(i / q), f.one()]));
    for u in lin.chain(quad) {
        let x = e.from_poly(&u);
        if is_generator(&units, &x, n, &factors) {
            return Ok(x);
        }
    }
    Err(SolveError::Unsupported("no small generator".into()))
}
