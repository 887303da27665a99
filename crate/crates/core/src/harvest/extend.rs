//! Logs of height 4 and 5 places on top of a solved height 3 table.

use crate::algebra::fq::Fe;
use crate::basis::EllipticBasis;
use crate::curve::tripoly::bracket;
use crate::curve::{phi_star, TriPoly};
use crate::divisor::CurveFunction;
use crate::solve::arith::inv_mod;
use crate::solve::{LogTable, SolveError};

use super::{
    evaluate_pair, height5_pair, make_relation, max_piece, par_map, param_space, remove_compelled,
    FactorBase, Mode, Relation, Row, SieveBasis,
};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupReport {
    pub name: String,
    pub pairs: usize,
    pub degenerate: usize,
    /// Pairs whose pieces all have height at most the target height.
    pub kept: usize,
    /// Bracket residuals above the expected height after removing compelled places.
    pub residual_violations: usize,
    /// Unknown reps touched by the kept rows, and how many were solved.
    pub unknowns: usize,
    pub solved: usize,
}

impl GroupReport {
    pub fn underdetermined(&self) -> bool {
        self.solved < self.unknowns
    }
}

#[derive(Clone, Debug, Default)]
pub struct ExtendReport {
    pub height: usize,
    pub groups: Vec<GroupReport>,
    /// Reps of this height in the factor base, and those with a log.
    pub reps_total: usize,
    pub reps_known: usize,
    pub relations: Vec<Relation>,
}

/// Leading coefficients `(c_<U,UV>, c_<UV,V>, c_<U,V>)` of the pulled-back
/// brackets, read off the term of largest pole order at `O` (`X` counts 2,
/// `Y` counts 3) over the common denominator `(X - x1)^4`.
pub fn group_constants(b: &EllipticBasis) -> [Fe; 3] {
    let f = b.fq();
    let (u, v) = (TriPoly::u(f), TriPoly::v(f));
    let uv = u.mul(&v);
    let brs = [bracket(&u, &uv), bracket(&uv, &v), bracket(&u, &v)];
    let leads: Vec<(i64, Fe)> =
        brs.iter().map(|br| pole_lead(&phi_star(br, &b.curve, &b.td), 4)).collect();
    let top = leads.iter().map(|l| l.0).max().expect("three brackets");
    let pick = |i: usize| if leads[i].0 == top { leads[i].1 } else { Fe(0) };
    [pick(0), pick(1), pick(2)]
}

fn pole_lead(g: &CurveFunction, e: u32) -> (i64, Fe) {
    let w0 = g.n0.deg().map(|d| 2 * d as i64);
    let w1 = g.n1.deg().map(|d| 2 * d as i64 + 3);
    let shift = 2 * (e as i64 - g.e as i64);
    match (w0, w1) {
        (Some(a), Some(c)) if c > a => (c + shift, g.n1.lead()),
        (Some(a), _) => (a + shift, g.n0.lead()),
        (None, Some(c)) => (c + shift, g.n1.lead()),
        (None, None) => (i64::MIN, Fe(0)),
    }
}

/// The `(k1, k2)` pairs: `k1` over `F_q^*` except `-c2/c3`, `k2` from the
/// vanishing of `k1 c1 + k2 c2 + k1 k2 c3`.
pub fn group_parameters(b: &EllipticBasis) -> Vec<(Fe, Fe)> {
    let f = b.fq();
    let [c1, c2, c3] = group_constants(b);
    let mut out = Vec::new();
    for i in 1..f.q() {
        let k1 = f.elem(i);
        let den = f.add(c2, f.mul(k1, c3));
        if den == Fe(0) {
            continue;
        }
        let k2 = f.neg(f.div(f.mul(k1, c1), den));
        out.push((k1, k2));
    }
    out
}

fn unknown_reps(table: &LogTable, rows: &[Row]) -> std::collections::BTreeSet<crate::divisor::Place> {
    rows.iter()
        .flat_map(|r| r.reps.keys())
        .filter(|p| !table.logs.contains_key(*p))
        .cloned()
        .collect()
}

fn run_group(
    b: &EllipticBasis,
    fb: &FactorBase,
    sb: &SieveBasis,
    name: String,
    prefix: &[Fe],
    residual_bound: i64,
    table: &mut LogTable,
    workers: usize,
) -> Result<(GroupReport, Vec<Relation>), SolveError> {
    let space: Vec<Vec<Fe>> = param_space(b.fq(), 2)
        .into_iter()
        .map(|ab| prefix.iter().copied().chain(ab).collect())
        .collect();
    let results = par_map(&space, workers, |p| {
        let (a, bb) = sb.pair(p);
        evaluate_pair(b, &a, &bb).map(|pd| {
            let resid = remove_compelled(&pd.right, &sb.compelled_right).map(|r| r.height());
            let left = pd.left.iter().map(max_piece).max().unwrap_or(0);
            let top = left.max(max_piece(&pd.right));
            (resid, top, make_relation(b, fb, sb.mode, p.clone(), &pd))
        })
    });
    let mut rep = GroupReport { name, ..Default::default() };
    let mut rels = Vec::new();
    for r in results {
        rep.pairs += 1;
        let Ok((resid, top, rel)) = r else {
            rep.degenerate += 1;
            continue;
        };
        if resid.map_or(true, |h| h > residual_bound) {
            rep.residual_violations += 1;
        }
        if top <= 4 && !rel.row.is_trivial() {
            rep.kept += 1;
            rels.push(rel);
        }
    }
    let rows: Vec<Row> = rels.iter().map(|r| r.row.clone()).collect();
    let unknown = unknown_reps(table, &rows);
    rep.unknowns = unknown.len();
    table.absorb(&rows)?;
    rep.solved = unknown.iter().filter(|p| table.logs.contains_key(*p)).count();
    Ok((rep, rels))
}

fn coverage(fb: &FactorBase, table: &LogTable, d: usize) -> (usize, usize) {
    let total = fb.reps_of_degree(d).count();
    let known = fb.reps_of_degree(d).filter(|p| table.logs.contains_key(*p)).count();
    (total, known)
}

/// The special group, then the `(k1, k2)` groups, each solved on its own and
/// then together.
pub fn extend_h4(
    b: &EllipticBasis,
    fb: &FactorBase,
    table: &mut LogTable,
    workers: usize,
) -> Result<ExtendReport, SolveError> {
    let mut report = ExtendReport { height: 4, ..Default::default() };
    let special = SieveBasis::special(b);
    let (g, rels) = run_group(b, fb, &special, "special".into(), &[], 4, table, workers)?;
    report.groups.push(g);
    report.relations.extend(rels);
    for (k1, k2) in group_parameters(b) {
        let sb = SieveBasis::group(b, k1, k2);
        let f = b.fq();
        let name = format!("k1={},k2={}", f.encode(k1), f.encode(k2));
        let (g, rels) = run_group(b, fb, &sb, name, &[k1, k2], 7, table, workers)?;
        report.groups.push(g);
        report.relations.extend(rels);
    }
    let rows: Vec<Row> = report.relations.iter().map(|r| r.row.clone()).collect();
    table.absorb(&rows)?;
    (report.reps_total, report.reps_known) = coverage(fb, table, 4);
    Ok(report)
}

/// Height 5 pairs: each kept relation has a single unknown rep of degree 5,
/// solved directly. Passes repeat while new logs appear.
pub fn extend_h5(
    b: &EllipticBasis,
    fb: &FactorBase,
    table: &mut LogTable,
    workers: usize,
) -> Result<ExtendReport, SolveError> {
    let f = b.fq();
    let space = param_space(f, 4);
    let results = par_map(&space, workers, |p| {
        let (a, bb) = height5_pair(f, p);
        evaluate_pair(b, &a, &bb).map(|pd| {
            let left = pd.left.iter().map(max_piece).max().unwrap_or(0);
            (left, max_piece(&pd.right), make_relation(b, fb, Mode::Height5, p.clone(), &pd))
        })
    });
    let mut g = GroupReport { name: "h5".into(), ..Default::default() };
    let mut cands = Vec::new();
    for r in results {
        g.pairs += 1;
        let Ok((left, right, rel)) = r else {
            g.degenerate += 1;
            continue;
        };
        if left > 4 {
            g.residual_violations += 1;
        }
        if left <= 5 && right <= 5 && !rel.row.is_trivial() {
            cands.push(rel);
        }
    }
    let rows: Vec<Row> = cands.iter().map(|r| r.row.clone()).collect();
    g.unknowns = unknown_reps(table, &rows).len();
    let mut used = vec![false; cands.len()];
    loop {
        let mut batch = Vec::new();
        for (i, rel) in cands.iter().enumerate() {
            if used[i] {
                continue;
            }
            let unknown: Vec<_> = rel.row.reps.iter().filter(|(p, _)| !table.logs.contains_key(*p)).collect();
            if let [(p, a)] = unknown.as_slice() {
                if p.degree() == 5 && inv_mod(**a, b.m).is_some() {
                    batch.push(rel.row.clone());
                    used[i] = true;
                }
            }
        }
        if batch.is_empty() || table.absorb(&batch)? == 0 {
            break;
        }
    }
    g.kept = used.iter().filter(|u| **u).count();
    let mut report = ExtendReport { height: 5, ..Default::default() };
    report.relations = cands.into_iter().zip(&used).filter(|(_, u)| **u).map(|(r, _)| r).collect();
    (report.reps_total, report.reps_known) = coverage(fb, table, 5);
    g.solved = report.reps_known;
    report.groups.push(g);
    Ok(report)
}
