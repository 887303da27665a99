//! The stages behind each command and the files they exchange.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::ext::ExtElem;
use crate::algebra::field::Field;
use crate::basis::file::BasisFile;
use crate::basis::{build_basis_with_mu, search_basis, EllipticBasis};
use crate::curve::Curve;
use crate::harvest::{
    build_factor_base, extend_h4, extend_h5, harvest_core, orbit_rows, read_relations, rebuild,
    ExtendReport, FactorBase, Mode, Relation, Row,
};
use crate::psi::PsiEval;
use crate::solve::oracle::{bsgs, Quotient};
use crate::solve::{choose_generator, dlog as solve_dlog, Descent, DescentParams, LogTable, SolveConfig};

use super::{CliError, RunConfig};

pub const CURVE_FILE: &str = "curve.txt";
pub const BASIS_FILE: &str = "basis.json";
pub const RELATIONS_FILE: &str = "relations.txt";
pub const LOGS_FILE: &str = "logs.txt";

/// Harvest success rate predicted for large `q`.
pub const CORE_RATE: f64 = 0.383;

pub struct Workspace {
    pub dir: PathBuf,
}

impl Workspace {
    pub fn new(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::Config(format!("work directory {}: {e}", dir.display())))?;
        Ok(Workspace { dir: dir.to_path_buf() })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    fn read(&self, name: &str, producer: &str) -> Result<String, CliError> {
        let p = self.path(name);
        fs::read_to_string(&p).map_err(|_| {
            CliError::StageMissing(format!("{} not found; run `ellbasis {producer}` first", p.display()))
        })
    }

    fn write(&self, name: &str, text: &str) -> Result<(), CliError> {
        fs::write(self.path(name), text)?;
        Ok(())
    }

    pub fn load_basis(&self) -> Result<EllipticBasis, CliError> {
        let text = self.read(BASIS_FILE, "basis")?;
        let bf = BasisFile::from_json(&text).map_err(|e| CliError::Config(e.to_string()))?;
        bf.to_basis().map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load_relations(&self, b: &EllipticBasis) -> Result<Vec<Relation>, CliError> {
        let text = self.read(RELATIONS_FILE, "harvest")?;
        read_relations(b.fq(), &text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load_logs(&self, b: &EllipticBasis) -> Result<LogTable, CliError> {
        let text = self.read(LOGS_FILE, "solve")?;
        LogTable::from_text(b, &text).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Appends relations whose line is not yet in the file; returns how many.
    fn append_relations(&self, b: &EllipticBasis, rels: &[Relation]) -> Result<usize, CliError> {
        let mut text = fs::read_to_string(self.path(RELATIONS_FILE)).unwrap_or_default();
        let mut seen: BTreeSet<String> = text.lines().map(str::to_string).collect();
        let mut added = 0;
        for r in rels {
            let line = r.encode(b.fq());
            if seen.insert(line.clone()) {
                text.push_str(&line);
                text.push('\n');
                added += 1;
            }
        }
        self.write(RELATIONS_FILE, &text)?;
        Ok(added)
    }
}

pub fn search(ws: &Workspace, cfg: &RunConfig) -> Result<String, CliError> {
    let b = search_basis(cfg.p, cfg.m0, cfg.k, cfg.seed)?;
    let desc = b.curve.descriptor(b.k as u64, &b.td.p1());
    ws.write(CURVE_FILE, &format!("{desc}\n# mu = {}\n", b.mu))?;
    let mut out = String::new();
    let _ = writeln!(out, "{desc}");
    let _ = writeln!(out, "q = {}, #E = {}, k = {}, mu = {}", b.q(), b.curve.n, b.k, b.mu);
    Ok(out)
}

pub fn basis(ws: &Workspace, cfg: &RunConfig) -> Result<String, CliError> {
    let text = ws.read(CURVE_FILE, "search")?;
    let desc = text.lines().find(|l| !l.starts_with('#')).unwrap_or("");
    let mu = text
        .lines()
        .find_map(|l| l.strip_prefix("# mu = "))
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(1);
    let (curve, k, p1) = Curve::parse_descriptor(desc).map_err(|e| CliError::Config(e.to_string()))?;
    let b = build_basis_with_mu(&curve, &p1, k as usize, cfg.seed, mu)?;
    ws.write(BASIS_FILE, &BasisFile::from_basis(&b).to_json())?;
    let mut out = String::new();
    let _ = writeln!(out, "F_(q^k): q = {}, k = {}, M = {}", b.q(), b.k, b.m);
    let _ = writeln!(out, "modulus = {}", crate::algebra::poly::encode_poly(b.fq(), b.ext.modulus()));
    let _ = writeln!(out, "degree-k factors of S3(X, X^q, x1): {}", b.factor_count);
    Ok(out)
}

fn orbit_relations(b: &EllipticBasis, fb: &FactorBase) -> Vec<Relation> {
    orbit_rows(fb, b)
        .into_iter()
        .map(|(rep, row)| Relation { mode: Mode::Orbit, params: vec![], orbit: Some(rep), row, lhs: vec![], rhs: vec![] })
        .collect()
}

fn active_unknowns(rels: &[Relation]) -> usize {
    let mut s: BTreeSet<_> = BTreeSet::new();
    let mut c = false;
    for r in rels {
        s.extend(r.row.reps.keys());
        c |= r.row.c != 0;
    }
    s.len() + c as usize
}

pub fn harvest(ws: &Workspace, cfg: &RunConfig) -> Result<String, CliError> {
    let b = ws.load_basis()?;
    let fb = build_factor_base(&b, cfg.base_height);
    let (mut rels, st) = harvest_core(&b, &fb, cfg.sieve_budget, cfg.workers)?;
    rels.extend(orbit_relations(&b, &fb));
    let added = ws.append_relations(&b, &rels)?;
    let all = ws.load_relations(&b)?;
    let core: Vec<Relation> = all.into_iter().filter(|r| matches!(r.mode, Mode::Core | Mode::Orbit)).collect();
    let want = (cfg.slack * active_unknowns(&core) as f64).ceil() as usize;
    let mut out = String::new();
    let _ = writeln!(out, "pairs {}, degenerate {}, smooth {}, duplicates {}", st.pairs, st.degenerate, st.smooth, st.duplicates);
    let _ = writeln!(out, "success rate {:.4} (large-q prediction {CORE_RATE})", st.rate());
    let _ = writeln!(out, "height violations: left {}, right {}", st.left_violations, st.right_violations);
    let hist: Vec<String> = st.residual.iter().map(|(h, n)| format!("{h}:{n}")).collect();
    let _ = writeln!(out, "bracket residual heights {}", hist.join(" "));
    let _ = writeln!(out, "relations: {} new, {} in file, {} wanted", added, core.len(), want);
    if core.len() < want {
        let _ = writeln!(out, "warning: fewer relations than {} x unknowns", cfg.slack);
    }
    Ok(out)
}

fn solve_cfg(cfg: &RunConfig) -> SolveConfig {
    SolveConfig { small_prime_threshold: cfg.small_prime_threshold }
}

fn coverage_lines(out: &mut String, fb: &FactorBase, t: &LogTable) {
    for d in 1..=fb.max_degree {
        let total = fb.reps_of_degree(d).count();
        let known = fb.reps_of_degree(d).filter(|p| t.logs.contains_key(*p)).count();
        let _ = writeln!(out, "degree {d}: {known}/{total} reps with a log");
    }
}

fn group_lines(out: &mut String, r: &ExtendReport) {
    for g in &r.groups {
        let flag = if g.underdetermined() { " (underdetermined)" } else { "" };
        let _ = writeln!(
            out,
            "  {}: pairs {}, kept {}, unknowns {}, solved {}{}",
            g.name, g.pairs, g.kept, g.unknowns, g.solved, flag
        );
    }
    let _ = writeln!(out, "height {}: {}/{} reps", r.height, r.reps_known, r.reps_total);
}

pub fn extend(ws: &Workspace, cfg: &RunConfig) -> Result<String, CliError> {
    let b = ws.load_basis()?;
    let rels = ws.load_relations(&b)?;
    let fb = build_factor_base(&b, cfg.extended_height);
    let core: Vec<Relation> = rels.into_iter().filter(|r| matches!(r.mode, Mode::Core | Mode::Orbit)).collect();
    let (mut table, _) = LogTable::solve_core(&b, &fb, &core, &solve_cfg(cfg))?;
    let mut out = String::new();
    let mut new = Vec::new();
    if cfg.extended_height >= 4 {
        let r4 = extend_h4(&b, &fb, &mut table, cfg.workers)?;
        group_lines(&mut out, &r4);
        new.extend(r4.relations);
    }
    if cfg.extended_height >= 5 {
        let r5 = extend_h5(&b, &fb, &mut table, cfg.workers)?;
        group_lines(&mut out, &r5);
        new.extend(r5.relations);
    }
    let added = ws.append_relations(&b, &new)?;
    ws.write(LOGS_FILE, &table.to_text(&b))?;
    let _ = writeln!(out, "{added} relations appended");
    coverage_lines(&mut out, &fb, &table);
    Ok(out)
}

/// Core solve, then the remaining rows absorbed until no new log appears.
pub fn solve_relations(
    b: &EllipticBasis,
    fb: &FactorBase,
    rels: &[Relation],
    cfg: &SolveConfig,
) -> Result<(LogTable, crate::solve::SolveReport), CliError> {
    let (core, rest): (Vec<Relation>, Vec<Relation>) =
        rels.iter().cloned().partition(|r| matches!(r.mode, Mode::Core | Mode::Orbit));
    let (mut table, report) = LogTable::solve_core(b, fb, &core, cfg)?;
    let rows: Vec<Row> = rest.iter().map(|r| r.row.clone()).collect();
    while !rows.is_empty() && table.absorb(&rows)? > 0 {}
    table.check_rows(rels.iter().map(|r| &r.row))?;
    Ok((table, report))
}

pub fn solve(ws: &Workspace, cfg: &RunConfig) -> Result<String, CliError> {
    let b = ws.load_basis()?;
    let rels = ws.load_relations(&b)?;
    let fb = build_factor_base(&b, cfg.extended_height);
    let (table, report) = solve_relations(&b, &fb, &rels, &solve_cfg(cfg))?;
    ws.write(LOGS_FILE, &table.to_text(&b))?;
    let mut out = String::new();
    let _ = writeln!(out, "M = {} = {}", b.m, factor_text(&table.factors));
    for (n, method, unknowns, solved) in &report.per_prime {
        let _ = writeln!(out, "mod {n}: {method}, {solved}/{unknowns} unknowns");
    }
    coverage_lines(&mut out, &fb, &table);
    Ok(out)
}

fn factor_text(f: &[(u128, u32)]) -> String {
    f.iter()
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join(" * ")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Hex(String),
    Planted(u128),
}

/// Hex integer read as base-`q` digits, least significant first, of the
/// coordinates on `1, theta, ..., theta^(k-1)`.
pub fn parse_target(b: &EllipticBasis, hex: &str) -> Result<ExtElem, CliError> {
    let h = hex.trim().trim_start_matches("0x");
    let n = BigUint::parse_bytes(h.as_bytes(), 16)
        .ok_or_else(|| CliError::Config(format!("target {hex:?} is not hexadecimal")))?;
    let q = BigUint::from(b.q());
    if n >= q.pow(b.k as u32) {
        return Err(CliError::Config("target exceeds q^k".into()));
    }
    let f = b.fq();
    let digits = n.to_radix_le(b.q() as u32);
    let coeffs: Vec<_> = (0..b.k).map(|i| f.elem(*digits.get(i).unwrap_or(&0) as u64)).collect();
    let z = b.ext.from_poly(&crate::algebra::poly::Poly::new(coeffs));
    if b.ext.is_zero(&z) {
        return Err(CliError::Config("target is zero".into()));
    }
    Ok(z)
}

pub fn dlog(ws: &Workspace, cfg: &RunConfig, target: &Target) -> Result<String, CliError> {
    let b = ws.load_basis()?;
    let table = ws.load_logs(&b)?;
    let fb = build_factor_base(&b, cfg.extended_height);
    let g = choose_generator(&b)?;
    let z = match target {
        Target::Hex(h) => parse_target(&b, h)?,
        Target::Planted(x) => b.ext.pow(&g, *x),
    };
    let params = DescentParams { t_a: cfg.t_a, t_b: cfg.t_b, d0: cfg.d0, ..DescentParams::default() };
    let d = Descent::new(&b, &fb, &table, params);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let r = solve_dlog(&d, &z, &g, &mut rng)?;
    let e = &b.ext;
    let u = e.div(&z, &e.pow(&g, r.x));
    let mut out = String::new();
    let _ = writeln!(out, "g = {}", e.encode(&g));
    let _ = writeln!(out, "z = {}", e.encode(&z));
    let _ = writeln!(out, "x = {} mod {}", r.x, b.m);
    if let Some(full) = r.full {
        let _ = writeln!(out, "log_g z = {} mod {}", full, b.m * (b.q() as u128 - 1));
    }
    if let Target::Planted(x) = target {
        if *x % b.m != r.x {
            return Err(CliError::Verification(format!("planted {x} but found {}", r.x)));
        }
    }
    if !r.verified {
        return Err(CliError::Verification("z / g^x is not in F_q^*".into()));
    }
    let _ = writeln!(out, "z / g^x = {} in F_q^*: VERIFIED", e.encode(&u));
    Ok(out)
}

pub fn verify(ws: &Workspace, cfg: &RunConfig, sample: usize) -> Result<String, CliError> {
    let b = ws.load_basis()?;
    let rels = ws.load_relations(&b)?;
    let table = ws.load_logs(&b)?;
    let fb = build_factor_base(&b, cfg.extended_height);
    let psi = PsiEval::new(&b);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = String::new();
    let mut failures = Vec::new();

    let sieve: Vec<&Relation> = rels.iter().filter(|r| r.mode != Mode::Orbit).collect();
    let picked: Vec<&&Relation> = sieve.choose_multiple(&mut rng, sample).collect();
    let mut ok = 0;
    for r in &picked {
        let full = rebuild(&b, &fb, r)?;
        let good = full.row == r.row && psi.verify_relation(&full.lhs, &full.rhs).map_err(crate::solve::SolveError::from)?;
        if good {
            ok += 1;
        } else {
            failures.push(format!("relation {}", r.encode(b.fq())));
        }
    }
    let _ = writeln!(out, "relations: {ok}/{} pass the Psi check", picked.len());

    let gr = Quotient(&b.ext);
    let base = psi.place(&table.reference).map_err(crate::solve::SolveError::from)?;
    let entries: Vec<(_, _)> = table.logs.iter().collect();
    let picked: Vec<_> = entries.choose_multiple(&mut rng, sample).collect();
    let mut ok = 0;
    for (p, l) in &picked {
        let h = psi.place(p).map_err(crate::solve::SolveError::from)?;
        let x = bsgs(&gr, &base, &h, b.m)?;
        let good = x == Some(**l);
        if good {
            ok += 1;
        } else {
            failures.push(format!("log of {}", p.encode(b.fq())));
        }
    }
    let _ = writeln!(out, "logs: {ok}/{} agree with BSGS", picked.len());
    if !failures.is_empty() {
        return Err(CliError::Verification(format!("{out}{}", failures.join("\n"))));
    }
    Ok(out)
}
