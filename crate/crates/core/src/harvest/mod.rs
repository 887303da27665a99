//! Relation collection. Each sieve pair `(A, B)` of polynomials in `U, V`
//! gives the identity
//!
//! `B(F) * prod_a (A - a B)(F) = A(V,W) B(U,V) - A(U,V) B(V,W)` at `Phi(F)`,
//!
//! so the divisors of the left factors and of the bracket have equal images.
//! Rows are written over orbit representatives with the constant `c = L((-P1))`.

pub mod extend;
pub mod factor_base;
pub mod relation;

use std::collections::{BTreeMap, HashSet};

use crate::algebra::fq::{Fe, FieldDesc};
use crate::basis::EllipticBasis;
use crate::curve::tripoly::bracket;
use crate::curve::{phi_star, TriPoly};
use crate::divisor::{divisor_of, torsion_place, Divisor, Place};

pub use extend::{extend_h4, extend_h5, group_constants, ExtendReport, GroupReport};
pub use factor_base::{build_factor_base, orbit_rows, FactorBase, Loc, Row};
pub use relation::{Mode, Relation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HarvestError {
    #[error("degenerate sieve pair: {0}")]
    DegeneratePair(&'static str),
    #[error("group {0} is underdetermined: {1} of {2} unknowns solved")]
    GroupUnderdetermined(String, usize, usize),
    #[error("cannot parse relation {0:?}")]
    Parse(String),
    #[error("M = {0} exceeds 64 bits")]
    ModulusTooLarge(u128),
}

/// Generators of a sieve and the places forced onto its divisors.
#[derive(Clone, Debug)]
pub struct SieveBasis {
    pub mode: Mode,
    pub g: [TriPoly; 3],
    pub compelled_left: Vec<Place>,
    pub compelled_right: Vec<Place>,
}

impl SieveBasis {
    /// `g1 = U - x2`, `g2 = V - x3`, `g3 = g1 g2`; every left factor vanishes
    /// at `P3`, the bracket at `P3` and `P2`.
    pub fn core(b: &EllipticBasis) -> Self {
        let f = b.fq();
        let x2 = b.td.x(2).expect("k >= 3");
        let x3 = b.td.x(3).expect("k >= 4");
        let g1 = TriPoly::u(f).add_const(f.neg(x2));
        let g2 = TriPoly::v(f).add_const(f.neg(x3));
        let g3 = g1.mul(&g2);
        let p3 = torsion_place(&b.curve, &b.td, 3);
        let p2 = torsion_place(&b.curve, &b.td, 2);
        SieveBasis {
            mode: Mode::Core,
            g: [g1, g2, g3],
            compelled_left: vec![p3.clone()],
            compelled_right: vec![p3, p2],
        }
    }

    /// `g1 = UV`, `g2 = U + V`, `g3 = 1`; the bracket always contains `W - U`.
    pub fn special(b: &EllipticBasis) -> Self {
        let f = b.fq();
        let (u, v) = (TriPoly::u(f), TriPoly::v(f));
        let wu = TriPoly::w(f).sub(&u);
        let sys = divisor_of(&phi_star(&wu, &b.curve, &b.td), &b.curve)
            .expect("W - U is not zero on C");
        SieveBasis {
            mode: Mode::Special,
            g: [u.mul(&v), u.add(&v), TriPoly::one(f)],
            compelled_left: vec![],
            compelled_right: expand(&sys.positive_part()),
        }
    }

    /// `g1 = UV + k1 U`, `g2 = UV + k2 V`, `g3 = 1`.
    pub fn group(b: &EllipticBasis, k1: Fe, k2: Fe) -> Self {
        let f = b.fq();
        let (u, v) = (TriPoly::u(f), TriPoly::v(f));
        let uv = u.mul(&v);
        SieveBasis {
            mode: Mode::Group,
            g: [uv.add(&u.scale(k1)), uv.add(&v.scale(k2)), TriPoly::one(f)],
            compelled_left: vec![],
            compelled_right: vec![],
        }
    }

    /// `(A, B)` for the sieve parameters of this mode.
    pub fn pair(&self, params: &[Fe]) -> (TriPoly, TriPoly) {
        let [g1, g2, g3] = &self.g;
        match self.mode {
            Mode::Core => (
                g1.add(&g3.scale(params[0])),
                g1.add(&g2.scale(params[1])).add(&g3.scale(params[2])),
            ),
            _ => {
                let n = params.len();
                let (a, bb) = (params[n - 2], params[n - 1]);
                (g1.add(&g2.scale(a)), g1.add(&g3.scale(bb)))
            }
        }
    }
}

/// `A = UV + aU U + a1`, `B = UV + bV V + b1`.
pub fn height5_pair(f: &FieldDesc, p: &[Fe]) -> (TriPoly, TriPoly) {
    let (u, v) = (TriPoly::u(f), TriPoly::v(f));
    let uv = u.mul(&v);
    (uv.add(&u.scale(p[0])).add_const(p[1]), uv.add(&v.scale(p[2])).add_const(p[3]))
}

fn expand(d: &Divisor) -> Vec<Place> {
    let mut out = Vec::new();
    for (p, n) in d.terms() {
        if p.is_finite() {
            for _ in 0..*n {
                out.push(p.clone());
            }
        }
    }
    out
}

/// Divisors of the `q + 1` left factors (`A - a B` for `a` in `F_q`, then `B`) and of the bracket.
#[derive(Clone, Debug)]
pub struct PairDivisors {
    pub left: Vec<Divisor>,
    pub right: Divisor,
}

pub fn evaluate_pair(
    b: &EllipticBasis,
    a: &TriPoly,
    bb: &TriPoly,
) -> Result<PairDivisors, HarvestError> {
    let c = &b.curve;
    let f = b.fq();
    let br = bracket(a, bb);
    if br.is_zero() {
        return Err(HarvestError::DegeneratePair("A and B are proportional"));
    }
    let fa = phi_star(a, c, &b.td);
    let fb = phi_star(bb, c, &b.td);
    let mut left = Vec::with_capacity(f.q() as usize + 1);
    for i in 0..=f.q() {
        let g = if i == f.q() {
            fb.clone()
        } else {
            fa.sub(&fb.scale(f.elem(i), c), c).normalize(f)
        };
        if g.is_zero() {
            return Err(HarvestError::DegeneratePair("a left factor vanishes on E"));
        }
        left.push(divisor_of(&g, c).expect("nonzero"));
    }
    let gr = phi_star(&br, c, &b.td).normalize(f);
    if gr.is_zero() {
        return Err(HarvestError::DegeneratePair("the bracket vanishes on E"));
    }
    Ok(PairDivisors { left, right: divisor_of(&gr, c).expect("nonzero") })
}

/// Removes one copy of each compelled place; `None` if one is missing.
pub fn remove_compelled(d: &Divisor, places: &[Place]) -> Option<Divisor> {
    let mut r = d.clone();
    for p in places {
        if r.coeff(p) <= 0 {
            return None;
        }
        r.add_term(p.clone(), -1);
    }
    Some(r)
}

/// Largest degree among the positive finite places.
pub fn max_piece(d: &Divisor) -> usize {
    d.terms().filter(|(p, n)| **n > 0 && p.is_finite()).map(|(p, _)| p.degree()).max().unwrap_or(0)
}

/// The relation of a pair, with its expanded sides.
pub fn make_relation(
    b: &EllipticBasis,
    fb: &FactorBase,
    mode: Mode,
    params: Vec<Fe>,
    pd: &PairDivisors,
) -> Relation {
    let mut lhs = Divisor::zero();
    for d in &pd.left {
        lhs = lhs.add(d);
    }
    let lhs = lhs.finite_terms();
    let rhs = pd.right.finite_terms();
    let mut row = Row::default();
    for (p, n) in &lhs {
        row.add_place(fb, b, p, *n);
    }
    for (p, n) in &rhs {
        row.add_place(fb, b, p, -*n);
    }
    Relation { mode, params, orbit: None, row, lhs, rhs }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HarvestStats {
    pub pairs: usize,
    pub degenerate: usize,
    pub smooth: usize,
    pub duplicates: usize,
    /// Left factors whose height after removing the compelled places exceeds the bound.
    pub left_violations: usize,
    /// Brackets whose residual height exceeds the bound, or missing a compelled place.
    pub right_violations: usize,
    /// Residual bracket height histogram.
    pub residual: BTreeMap<i64, usize>,
}

impl HarvestStats {
    pub fn rate(&self) -> f64 {
        let n = self.pairs - self.degenerate;
        if n == 0 {
            0.0
        } else {
            self.smooth as f64 / n as f64
        }
    }
}

/// Runs `f` over `items` on `workers` threads, keeping the input order.
pub fn par_map<T: Sync, R: Send, F: Fn(&T) -> R + Sync>(items: &[T], workers: usize, f: F) -> Vec<R> {
    let w = workers.max(1).min(items.len().max(1));
    if w == 1 {
        return items.iter().map(&f).collect();
    }
    let mut slots: Vec<Option<R>> = (0..items.len()).map(|_| None).collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..w)
            .map(|t| {
                let f = &f;
                s.spawn(move || {
                    items.iter().enumerate().skip(t).step_by(w).map(|(i, x)| (i, f(x))).collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("worker panicked") {
                slots[i] = Some(r);
            }
        }
    });
    slots.into_iter().map(|r| r.expect("every slot filled")).collect()
}

/// All parameter tuples of length `n` over `F_q`, in lexicographic order.
pub fn param_space(f: &FieldDesc, n: usize) -> Vec<Vec<Fe>> {
    let q = f.q();
    let total = q.pow(n as u32);
    (0..total)
        .map(|mut i| {
            let mut v = vec![Fe(0); n];
            for j in (0..n).rev() {
                v[j] = f.elem(i % q);
                i /= q;
            }
            v
        })
        .collect()
}

pub(crate) fn check_modulus(b: &EllipticBasis) -> Result<(), HarvestError> {
    if b.m > u64::MAX as u128 {
        return Err(HarvestError::ModulusTooLarge(b.m));
    }
    Ok(())
}

/// The core sieve over `(alpha, beta, gamma)`, at most `budget` pairs.
pub fn harvest_core(
    b: &EllipticBasis,
    fb: &FactorBase,
    budget: Option<usize>,
    workers: usize,
) -> Result<(Vec<Relation>, HarvestStats), HarvestError> {
    check_modulus(b)?;
    let sb = SieveBasis::core(b);
    let mut space = param_space(b.fq(), 3);
    if let Some(n) = budget {
        space.truncate(n);
    }
    let results = par_map(&space, workers, |p| {
        let (a, bb) = sb.pair(p);
        evaluate_pair(b, &a, &bb).map(|pd| {
            let left_ok = pd.left.iter().all(|d| {
                remove_compelled(d, &sb.compelled_left).is_some_and(|r| r.height() <= 3)
            });
            let resid = remove_compelled(&pd.right, &sb.compelled_right);
            let rel = make_relation(b, fb, Mode::Core, p.clone(), &pd);
            (left_ok, resid.map(|r| (r.height(), max_piece(&r))), max_piece(&pd.right), rel)
        })
    });
    let mut stats = HarvestStats::default();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for r in results {
        stats.pairs += 1;
        let (left_ok, resid, right_max, rel) = match r {
            Ok(x) => x,
            Err(_) => {
                stats.degenerate += 1;
                continue;
            }
        };
        if !left_ok {
            stats.left_violations += 1;
        }
        match resid {
            Some((h, _)) => {
                *stats.residual.entry(h).or_insert(0) += 1;
                if h > 6 {
                    stats.right_violations += 1;
                }
            }
            None => stats.right_violations += 1,
        }
        if right_max > 3 || !left_ok {
            continue;
        }
        stats.smooth += 1;
        if rel.row.is_trivial() || !seen.insert(rel.row.clone()) {
            stats.duplicates += 1;
            continue;
        }
        out.push(rel);
    }
    Ok((out, stats))
}

/// Regenerates the expanded sides of a relation read from text.
pub fn rebuild(b: &EllipticBasis, fb: &FactorBase, r: &Relation) -> Result<Relation, HarvestError> {
    let f = b.fq();
    let (a, bb) = match r.mode {
        Mode::Core => SieveBasis::core(b).pair(&r.params),
        Mode::Special => SieveBasis::special(b).pair(&r.params),
        Mode::Group => SieveBasis::group(b, r.params[0], r.params[1]).pair(&r.params),
        Mode::Height5 => height5_pair(f, &r.params),
        Mode::Orbit => return Ok(r.clone()),
    };
    let pd = evaluate_pair(b, &a, &bb)?;
    Ok(make_relation(b, fb, r.mode, r.params.clone(), &pd))
}

/// Reads `relations.txt`, skipping blank and `#` lines.
pub fn read_relations(f: &FieldDesc, text: &str) -> Result<Vec<Relation>, HarvestError> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| Relation::decode(f, l))
        .collect()
}

pub fn write_relations(f: &FieldDesc, rels: &[Relation]) -> String {
    let mut s = String::new();
    for r in rels {
        s.push_str(&r.encode(f));
        s.push('\n');
    }
    s
}
