//! Places of bounded degree grouped into orbits under translation by `P1`.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::factor::irreducibles_of_degree;
use crate::basis::EllipticBasis;
use crate::divisor::{orbit_canonical, places_over, torsion_index, torsion_place, translates, Place};
use crate::solve::arith::{geom_mod, mul_mod, pow_mod};

/// Where a place sits: the orbit it belongs to and the number of `-P1`
/// translations from the representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Loc {
    /// Translate of `(-P1)`; its log is a multiple of `c`.
    Torsion { shift: usize },
    Rep { rep: Place, shift: usize },
    /// The point at infinity.
    Origin,
}

#[derive(Clone, Debug)]
pub struct FactorBase {
    pub max_degree: usize,
    /// Orbit representatives outside the torsion orbit, sorted.
    pub reps: Vec<Place>,
    pub orbit_len: BTreeMap<Place, usize>,
    /// The place `(-P1)`, whose log is the constant `c`.
    pub c_place: Place,
    /// Number of finite places covered.
    pub place_count: usize,
    index: HashMap<Place, Loc>,
}

pub fn build_factor_base(b: &EllipticBasis, max_degree: usize) -> FactorBase {
    let c = &b.curve;
    let f = c.field.clone();
    let k = b.k;
    let mut places = Vec::new();
    for d in 1..=max_degree {
        for u in irreducibles_of_degree(&f, d) {
            for p in places_over(c, &u) {
                if p.degree() <= max_degree {
                    places.push(p);
                }
            }
        }
    }
    places.sort();
    let mut index = HashMap::new();
    let mut reps = Vec::new();
    let mut orbit_len = BTreeMap::new();
    for p in &places {
        if index.contains_key(p) {
            continue;
        }
        if let Some(j) = torsion_index(c, &b.td, p) {
            let loc = if j == 0 {
                Loc::Origin
            } else {
                Loc::Torsion { shift: k - 1 - j as usize }
            };
            index.insert(p.clone(), loc);
            continue;
        }
        let mut walk = translates(c, &b.td, p, k);
        walk.pop();
        let len = walk.len();
        let (r, rep) = walk
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .map(|(i, p)| (i, p.clone()))
            .expect("orbit is nonempty");
        for (i, m) in walk.iter().enumerate() {
            let shift = (i + len - r) % len;
            index.insert(m.clone(), Loc::Rep { rep: rep.clone(), shift });
        }
        orbit_len.insert(rep.clone(), len);
        reps.push(rep);
    }
    reps.sort();
    FactorBase {
        max_degree,
        reps,
        orbit_len,
        c_place: torsion_place(c, &b.td, -1),
        place_count: places.len(),
        index,
    }
}

impl FactorBase {
    /// Location of any place, computed on the fly beyond `max_degree`.
    pub fn locate(&self, b: &EllipticBasis, p: &Place) -> Loc {
        if let Some(l) = self.index.get(p) {
            return l.clone();
        }
        if !p.is_finite() {
            return Loc::Origin;
        }
        if let Some(j) = torsion_index(&b.curve, &b.td, p) {
            return if j == 0 {
                Loc::Origin
            } else {
                Loc::Torsion { shift: b.k - 1 - j as usize }
            };
        }
        let (rep, shift) = orbit_canonical(&b.curve, &b.td, p);
        Loc::Rep { rep, shift }
    }

    pub fn contains(&self, p: &Place) -> bool {
        self.index.contains_key(p)
    }

    /// Every indexed place with its location.
    pub fn places(&self) -> impl Iterator<Item = (&Place, &Loc)> {
        self.index.iter()
    }

    pub fn reps_of_degree(&self, d: usize) -> impl Iterator<Item = &Place> {
        self.reps.iter().filter(move |p| p.degree() == d)
    }
}

/// A congruence `sum coeff * L(rep) + c_coeff * c = 0 mod M`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Row {
    pub reps: BTreeMap<Place, u128>,
    pub c: u128,
}

impl Row {
    /// Adds `n` copies of `L(p)`, expanding `p` through its orbit:
    /// `L(t^s(r)) = q^s L(r) + d c (q^s - 1)/(q - 1)`.
    pub fn add_place(&mut self, fb: &FactorBase, b: &EllipticBasis, p: &Place, n: i64) {
        let m = b.m;
        let q = b.q() as u128 % m;
        let nm = (n.rem_euclid(m as i64) as u128) % m;
        match fb.locate(b, p) {
            Loc::Origin => {}
            Loc::Torsion { shift } => {
                self.c = (self.c + mul_mod(nm, geom_mod(q, shift + 1, m), m)) % m;
            }
            Loc::Rep { rep, shift } => {
                let d = p.degree() as u128 % m;
                let e = self.reps.entry(rep.clone()).or_insert(0);
                *e = (*e + mul_mod(nm, pow_mod(q, shift as u128, m), m)) % m;
                if *e == 0 {
                    self.reps.remove(&rep);
                }
                let cc = mul_mod(mul_mod(nm, d, m), geom_mod(q, shift, m), m);
                self.c = (self.c + cc) % m;
            }
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.reps.is_empty() && self.c == 0
    }

    pub fn scale(&self, s: u128, m: u128) -> Row {
        let mut reps = BTreeMap::new();
        for (p, v) in &self.reps {
            let x = mul_mod(*v, s, m);
            if x != 0 {
                reps.insert(p.clone(), x);
            }
        }
        Row { reps, c: mul_mod(self.c, s, m) }
    }
}

/// `(q^len - 1) L(r) + d c (q^len - 1)/(q - 1) = 0` for an orbit shorter than `k`.
pub fn orbit_rows(fb: &FactorBase, b: &EllipticBasis) -> Vec<(Place, Row)> {
    let m = b.m;
    let q = b.q() as u128 % m;
    let mut out = Vec::new();
    for (rep, &len) in &fb.orbit_len {
        if len == b.k {
            continue;
        }
        let mut row = Row::default();
        let a = (pow_mod(q, len as u128, m) + m - 1) % m;
        if a != 0 {
            row.reps.insert(rep.clone(), a);
        }
        row.c = mul_mod(rep.degree() as u128 % m, geom_mod(q, len, m), m);
        if !row.is_trivial() {
            out.push((rep.clone(), row));
        }
    }
    out
}
