//! Dense linear algebra over `F_q`.

use super::fq::{Fe, FieldDesc};

/// Row-reduces `m` in place; returns the pivot columns.
pub fn rref(f: &FieldDesc, m: &mut [Vec<Fe>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i][col] != Fe(0)) else {
            continue;
        };
        m.swap(r, pr);
        let inv = f.inv(m[r][col]);
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && m[i][col] != Fe(0) {
                let c = m[i][col];
                for j in col..cols {
                    let t = f.mul(c, m[r][j]);
                    m[i][j] = f.sub(m[i][j], t);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// One solution of `A x = b` (free variables set to zero), if consistent.
pub fn solve(f: &FieldDesc, a: &[Vec<Fe>], b: &[Fe]) -> Option<Vec<Fe>> {
    let n = a.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<Fe>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let piv = rref(f, &mut aug);
    if piv.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Fe(0); n];
    for (i, &c) in piv.iter().enumerate() {
        x[c] = aug[i][n];
    }
    Some(x)
}

/// Basis of the right kernel of `A` (`n` columns).
pub fn kernel(f: &FieldDesc, a: &[Vec<Fe>], n: usize) -> Vec<Vec<Fe>> {
    let mut m: Vec<Vec<Fe>> = a.to_vec();
    let piv = rref(f, &mut m);
    let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Fe(0); n];
            v[fc] = Fe(1);
            for (i, &pc) in piv.iter().enumerate() {
                v[pc] = f.neg(m[i][fc]);
            }
            v
        })
        .collect()
}
