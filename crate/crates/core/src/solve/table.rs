//! Logarithms of orbit representatives, per prime power of `M` and assembled.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::basis::EllipticBasis;
use crate::divisor::Place;
use crate::harvest::{FactorBase, Loc, Relation, Row};
use crate::psi::PsiEval;

use super::arith::{crt, geom_mod, mul_mod, pow_mod};
use super::factor::factor_modulus;
use super::linalg::{solve_affine, AffineRow};
use super::oracle::{dlog_prime_power, is_generator, Inner, Quotient};
use super::SolveError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Relations,
    Bsgs,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Relations => "relations",
            Method::Bsgs => "bsgs",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeLogs {
    pub ell: u128,
    pub exp: u32,
    pub modulus: u128,
    pub method: Method,
    pub logs: BTreeMap<Place, u128>,
}

/// Logs base `Psi(reference)`. The key `c_place = (-P1)` carries `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogTable {
    pub m: u128,
    pub factors: Vec<(u128, u32)>,
    pub reference: Place,
    pub c_place: Place,
    pub primes: Vec<PrimeLogs>,
    pub logs: BTreeMap<Place, u128>,
}

#[derive(Clone, Debug)]
pub struct SolveConfig {
    /// Prime powers below this are solved by BSGS on Psi values.
    pub small_prime_threshold: u128,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig { small_prime_threshold: 1 << 20 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveReport {
    /// `(prime power, method, unknowns, determined)`.
    pub per_prime: Vec<(u128, &'static str, usize, usize)>,
    pub assembled: usize,
}

fn row_terms(r: &Row, c_place: &Place) -> Vec<(Place, u128)> {
    let mut v: Vec<(Place, u128)> = r.reps.iter().map(|(p, a)| (p.clone(), *a)).collect();
    if r.c != 0 {
        v.push((c_place.clone(), r.c));
    }
    v
}

/// First candidate whose value generates `F_{q^k}^* / F_q^*`.
pub fn choose_reference(
    b: &EllipticBasis,
    psi: &PsiEval,
    factors: &[(u128, u32)],
    candidates: &[Place],
) -> Result<Place, SolveError> {
    let gr = Quotient(&b.ext);
    for p in candidates {
        let v = psi.place(p)?;
        if is_generator(&gr, &v, b.m, factors) {
            return Ok(p.clone());
        }
    }
    Err(SolveError::MissingLog("no factor-base element generates the quotient group".into()))
}

impl LogTable {
    /// Linear algebra on core relations for large prime powers, BSGS on the
    /// remaining ones over every place of `fb`.
    pub fn solve_core(
        b: &EllipticBasis,
        fb: &FactorBase,
        rels: &[Relation],
        cfg: &SolveConfig,
    ) -> Result<(LogTable, SolveReport), SolveError> {
        let psi = PsiEval::new(b);
        let factors = factor_modulus(b.m)?;
        let c_place = fb.c_place.clone();
        let mut active = BTreeSet::new();
        for r in rels {
            for (p, _) in row_terms(&r.row, &c_place) {
                active.insert(p);
            }
        }
        let mut cands = vec![c_place.clone()];
        cands.extend(fb.reps.iter().filter(|p| active.contains(*p)).cloned());
        if !active.contains(&c_place) {
            cands.remove(0);
        }
        let bsgs_all = factors.iter().all(|&(l, e)| l.pow(e) < cfg.small_prime_threshold);
        if bsgs_all {
            cands = std::iter::once(c_place.clone()).chain(fb.reps.iter().cloned()).collect();
        }
        let reference = choose_reference(b, &psi, &factors, &cands)?;
        let mut table = LogTable {
            m: b.m,
            factors: factors.clone(),
            reference: reference.clone(),
            c_place: c_place.clone(),
            primes: Vec::new(),
            logs: BTreeMap::new(),
        };
        let mut report = SolveReport::default();
        let vars: Vec<Place> = active.iter().cloned().collect();
        let idx: BTreeMap<&Place, usize> = vars.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut all_places: Vec<Place> = vec![c_place.clone()];
        all_places.extend(fb.reps.iter().cloned());
        for &(ell, e) in &factors {
            let n = ell.pow(e);
            if n < cfg.small_prime_threshold {
                let logs = bsgs_fill(b, &psi, &reference, &all_places, ell, e)?;
                report.per_prime.push((n, "bsgs", all_places.len(), logs.len()));
                table.primes.push(PrimeLogs { ell, exp: e, modulus: n, method: Method::Bsgs, logs });
                continue;
            }
            let r = idx[&reference];
            let rows: Vec<AffineRow> = rels
                .iter()
                .map(|rel| {
                    let mut rhs = 0;
                    let mut rest = Vec::new();
                    for (p, a) in row_terms(&rel.row, &c_place) {
                        let j = idx[&p];
                        if j == r {
                            rhs = (rhs + n - a % n) % n;
                        } else {
                            rest.push((j, a % n));
                        }
                    }
                    (rest, rhs)
                })
                .collect();
            let sol = solve_affine(&rows, vars.len(), n)?;
            let mut logs = BTreeMap::new();
            for (j, v) in sol.into_iter().enumerate() {
                if j == r {
                    logs.insert(vars[j].clone(), 1 % n);
                } else if let Some(x) = v {
                    logs.insert(vars[j].clone(), x);
                }
            }
            report.per_prime.push((n, "relations", vars.len(), logs.len()));
            table.primes.push(PrimeLogs { ell, exp: e, modulus: n, method: Method::Relations, logs });
        }
        table.check_rows(rels.iter().map(|r| &r.row))?;
        table.assemble();
        report.assembled = table.logs.len();
        Ok((table, report))
    }

    /// Every row whose unknowns are all known must vanish.
    pub fn check_rows<'r>(&self, rows: impl Iterator<Item = &'r Row>) -> Result<(), SolveError> {
        for row in rows {
            let terms = row_terms(row, &self.c_place);
            for pl in &self.primes {
                let n = pl.modulus;
                let mut acc = 0u128;
                let mut full = true;
                for (p, a) in &terms {
                    match pl.logs.get(p) {
                        Some(v) => acc = (acc + mul_mod(*a, *v, n)) % n,
                        None => {
                            full = false;
                            break;
                        }
                    }
                }
                if full && acc != 0 {
                    return Err(SolveError::InconsistentSystem);
                }
            }
        }
        Ok(())
    }

    /// Solves for unknowns of `rows` modulo each prime power; returns how many
    /// places became known modulo `M`.
    pub fn absorb(&mut self, rows: &[Row]) -> Result<usize, SolveError> {
        let before = self.logs.len();
        for pl in self.primes.iter_mut() {
            let n = pl.modulus;
            let mut vars: Vec<Place> = Vec::new();
            let mut idx: BTreeMap<Place, usize> = BTreeMap::new();
            let mut arows: Vec<AffineRow> = Vec::new();
            for row in rows {
                let mut rhs = 0u128;
                let mut rest = Vec::new();
                for (p, a) in row_terms(row, &self.c_place) {
                    match pl.logs.get(&p) {
                        Some(v) => rhs = (rhs + n - mul_mod(a, *v, n)) % n,
                        None => {
                            let j = *idx.entry(p.clone()).or_insert_with(|| {
                                vars.push(p.clone());
                                vars.len() - 1
                            });
                            rest.push((j, a % n));
                        }
                    }
                }
                if !rest.is_empty() {
                    arows.push((rest, rhs));
                } else if rhs != 0 {
                    return Err(SolveError::InconsistentSystem);
                }
            }
            if vars.is_empty() {
                continue;
            }
            for (j, v) in solve_affine(&arows, vars.len(), n)?.into_iter().enumerate() {
                if let Some(x) = v {
                    pl.logs.insert(vars[j].clone(), x);
                }
            }
        }
        self.assemble();
        Ok(self.logs.len() - before)
    }

    /// Recomputes the logs modulo `M` from the per-prime tables.
    pub fn assemble(&mut self) {
        let mut out = BTreeMap::new();
        let Some(first) = self.primes.first() else { return };
        for p in first.logs.keys() {
            let parts: Option<Vec<(u128, u128)>> =
                self.primes.iter().map(|pl| pl.logs.get(p).map(|v| (*v, pl.modulus))).collect();
            if let Some(parts) = parts {
                out.insert(p.clone(), crt(&parts).0);
            }
        }
        self.logs = out;
    }

    pub fn c(&self) -> Option<u128> {
        self.logs.get(&self.c_place).copied()
    }

    /// `L(p)` modulo `M` from its orbit representative.
    pub fn place_log(&self, b: &EllipticBasis, fb: &FactorBase, p: &Place) -> Option<u128> {
        let m = self.m;
        let q = b.q() as u128 % m;
        match fb.locate(b, p) {
            Loc::Origin => Some(0),
            Loc::Torsion { shift } => Some(mul_mod(self.c()?, geom_mod(q, shift + 1, m), m)),
            Loc::Rep { rep, shift } => {
                Some(orbit_log(q, m, p.degree(), shift, *self.logs.get(&rep)?, self.c()?))
            }
        }
    }

    /// `Psi(p) = Psi(reference)^L(p)`.
    pub fn verify_entry(&self, psi: &PsiEval, p: &Place) -> Result<bool, SolveError> {
        let e = &psi.b.ext;
        let Some(&l) = self.logs.get(p) else { return Ok(false) };
        let r = psi.place(&self.reference)?;
        Ok(psi.place(p)? == r.pow(e, l as i128))
    }

    /// Fills every listed place by BSGS for prime powers below the threshold.
    pub fn fill_small_primes(&mut self, b: &EllipticBasis, places: &[Place], threshold: u128) -> Result<(), SolveError> {
        let psi = PsiEval::new(b);
        for pl in self.primes.iter_mut() {
            if pl.modulus >= threshold {
                continue;
            }
            let todo: Vec<Place> = places.iter().filter(|p| !pl.logs.contains_key(*p)).cloned().collect();
            let got = bsgs_fill(b, &psi, &self.reference, &todo, pl.ell, pl.exp)?;
            pl.logs.extend(got);
            pl.method = Method::Bsgs;
        }
        self.assemble();
        Ok(())
    }

    pub fn to_text(&self, b: &EllipticBasis) -> String {
        let f = b.fq();
        let mut s = String::new();
        let _ = writeln!(s, "# M = {}", self.m);
        let _ = writeln!(s, "# reference = {}", self.reference.encode(f));
        let _ = writeln!(s, "# c = {}", self.c_place.encode(f));
        for pl in &self.primes {
            let _ = writeln!(s, "[prime {}^{} {}]", pl.ell, pl.exp, pl.method.name());
            for (p, v) in &pl.logs {
                let _ = writeln!(s, "{} = {} mod {}", p.encode(f), v, pl.modulus);
            }
        }
        let _ = writeln!(s, "[mod M]");
        for (p, v) in &self.logs {
            let _ = writeln!(s, "{} = {} mod {}", p.encode(f), v, self.m);
        }
        s
    }

    pub fn from_text(b: &EllipticBasis, text: &str) -> Result<LogTable, SolveError> {
        let f = b.fq();
        let bad = |l: &str| SolveError::Parse(l.to_string());
        let mut m = None;
        let mut reference = None;
        let mut c_place = None;
        let mut primes: Vec<PrimeLogs> = Vec::new();
        let mut assembled = BTreeMap::new();
        let mut in_m = false;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            if let Some(v) = line.strip_prefix("# M = ") {
                m = Some(v.trim().parse::<u128>().map_err(|_| bad(line))?);
            } else if let Some(v) = line.strip_prefix("# reference = ") {
                reference = Some(Place::decode(f, v.trim()).map_err(|_| bad(line))?);
            } else if let Some(v) = line.strip_prefix("# c = ") {
                c_place = Some(Place::decode(f, v.trim()).map_err(|_| bad(line))?);
            } else if line == "[mod M]" {
                in_m = true;
            } else if let Some(h) = line.strip_prefix("[prime ").and_then(|h| h.strip_suffix(']')) {
                let (pe, meth) = h.split_once(' ').ok_or_else(|| bad(line))?;
                let (pr, ex) = pe.split_once('^').ok_or_else(|| bad(line))?;
                let ell: u128 = pr.parse().map_err(|_| bad(line))?;
                let exp: u32 = ex.parse().map_err(|_| bad(line))?;
                let method = match meth {
                    "relations" => Method::Relations,
                    "bsgs" => Method::Bsgs,
                    _ => return Err(bad(line)),
                };
                primes.push(PrimeLogs { ell, exp, modulus: ell.pow(exp), method, logs: BTreeMap::new() });
            } else if !line.starts_with('#') {
                let (p, rest) = line.split_once(" = ").ok_or_else(|| bad(line))?;
                let (v, n) = rest.split_once(" mod ").ok_or_else(|| bad(line))?;
                let p = Place::decode(f, p).map_err(|_| bad(line))?;
                let v: u128 = v.parse().map_err(|_| bad(line))?;
                let n: u128 = n.parse().map_err(|_| bad(line))?;
                if in_m {
                    assembled.insert(p, v);
                } else {
                    let pl = primes.last_mut().ok_or_else(|| bad(line))?;
                    if pl.modulus != n {
                        return Err(bad(line));
                    }
                    pl.logs.insert(p, v);
                }
            }
        }
        let m = m.ok_or_else(|| bad("missing M"))?;
        if m != b.m {
            return Err(SolveError::Parse("M does not match the basis".into()));
        }
        let mut t = LogTable {
            m,
            factors: primes.iter().map(|p| (p.ell, p.exp)).collect(),
            reference: reference.ok_or_else(|| bad("missing reference"))?,
            c_place: c_place.ok_or_else(|| bad("missing c"))?,
            primes,
            logs: BTreeMap::new(),
        };
        t.assemble();
        if t.logs != assembled {
            return Err(SolveError::Parse("assembled section disagrees with the per-prime tables".into()));
        }
        Ok(t)
    }
}

/// `L(t^s(r)) = q^s L(r) + d c (q^s - 1)/(q - 1)` modulo `m`.
pub fn orbit_log(q: u128, m: u128, degree: usize, shift: usize, l_rep: u128, c: u128) -> u128 {
    let a = mul_mod(pow_mod(q, shift as u128, m), l_rep, m);
    let t = mul_mod(mul_mod(degree as u128 % m, c, m), geom_mod(q, shift, m), m);
    (a + t) % m
}

fn bsgs_fill(
    b: &EllipticBasis,
    psi: &PsiEval,
    reference: &Place,
    places: &[Place],
    ell: u128,
    e: u32,
) -> Result<BTreeMap<Place, u128>, SolveError> {
    let gr = Quotient(&b.ext);
    let g = psi.place(reference)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut out = BTreeMap::new();
    for p in places {
        let h = psi.place(p)?;
        match dlog_prime_power(&gr, &g, &h, b.m, ell, e, Inner::Bsgs, &mut rng)? {
            Some(x) => {
                out.insert(p.clone(), x);
            }
            None => return Err(SolveError::NotInSubgroup),
        }
    }
    Ok(out)
}
