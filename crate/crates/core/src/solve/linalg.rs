//! Dense elimination over `Z/n`, pivoting only on units.

use super::arith::{inv_mod, mul_mod};
use super::SolveError;

/// Homogeneous sparse rows over `nvars` unknowns.
#[derive(Clone, Debug, Default)]
pub struct LinSystem {
    pub nvars: usize,
    pub rows: Vec<Vec<(usize, u128)>>,
}

/// Sparse row `sum a_j x_j = rhs`.
pub type AffineRow = (Vec<(usize, u128)>, u128);

fn dense(rows: &[AffineRow], nvars: usize, n: u128) -> Vec<Vec<u128>> {
    rows.iter()
        .map(|(r, rhs)| {
            let mut v = vec![0u128; nvars + 1];
            for &(j, a) in r {
                v[j] = (v[j] + a) % n;
            }
            v[nvars] = rhs % n;
            v
        })
        .collect()
}

/// Values forced by the system; `None` where an unknown is not determined.
pub fn solve_affine(rows: &[AffineRow], nvars: usize, n: u128) -> Result<Vec<Option<u128>>, SolveError> {
    let mut m = dense(rows, nvars, n);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..nvars {
        let Some(r) = (rank..m.len()).find(|&r| m[r][col] != 0 && inv_mod(m[r][col], n).is_some()) else {
            continue;
        };
        m.swap(rank, r);
        let inv = inv_mod(m[rank][col], n).expect("unit pivot");
        for x in m[rank].iter_mut() {
            *x = mul_mod(*x, inv, n);
        }
        let prow = m[rank].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == rank || row[col] == 0 {
                continue;
            }
            let t = row[col];
            for (x, p) in row.iter_mut().zip(&prow) {
                *x = (*x + n - mul_mod(t, *p, n)) % n;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    for row in &m[rank..] {
        if row[..nvars].iter().all(|&x| x == 0) && row[nvars] != 0 {
            return Err(SolveError::InconsistentSystem);
        }
    }
    let mut out = vec![None; nvars];
    for (i, &c) in pivots.iter().enumerate() {
        let row = &m[i];
        if (0..nvars).all(|j| j == c || row[j] == 0) {
            out[c] = Some(row[nvars]);
        }
    }
    Ok(out)
}

/// Dimension of the kernel modulo a prime.
pub fn kernel_dim(sys: &LinSystem, ell: u128) -> usize {
    let rows: Vec<AffineRow> = sys.rows.iter().map(|r| (r.clone(), 0)).collect();
    let mut m = dense(&rows, sys.nvars, ell);
    let mut rank = 0;
    for col in 0..sys.nvars {
        let Some(r) = (rank..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, r);
        let inv = inv_mod(m[rank][col], ell).expect("prime modulus");
        let prow: Vec<u128> = m[rank].iter().map(|&x| mul_mod(x, inv, ell)).collect();
        for row in m.iter_mut().skip(rank + 1) {
            let t = row[col];
            if t != 0 {
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x = (*x + ell - mul_mod(t, *p, ell)) % ell;
                }
            }
        }
        rank += 1;
    }
    sys.nvars - rank
}

/// The kernel vector with `x_reference = 1`, when the kernel is a line.
pub fn solve_mod(sys: &LinSystem, n: u128, reference: usize) -> Result<Vec<u128>, SolveError> {
    let rows: Vec<AffineRow> = sys
        .rows
        .iter()
        .map(|r| {
            let mut rhs = 0;
            let mut rest = Vec::with_capacity(r.len());
            for &(j, a) in r {
                if j == reference {
                    rhs = (rhs + n - a % n) % n;
                } else {
                    rest.push((j, a));
                }
            }
            (rest, rhs)
        })
        .collect();
    let sol = solve_affine(&rows, sys.nvars, n)?;
    let mut out = Vec::with_capacity(sys.nvars);
    let mut missing = 0;
    for (j, v) in sol.into_iter().enumerate() {
        match (j == reference, v) {
            (true, _) => out.push(1),
            (false, Some(x)) => out.push(x),
            (false, None) => {
                missing += 1;
                out.push(0)
            }
        }
    }
    if missing > 0 {
        return Err(SolveError::MoreRelationsNeeded { unknowns: sys.nvars, undetermined: missing });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_kernel() {
        // x0 - 2 x1 = 0, x1 - 3 x2 = 0 mod 7
        let sys = LinSystem { nvars: 3, rows: vec![vec![(0, 1), (1, 5)], vec![(1, 1), (2, 4)]] };
        assert_eq!(kernel_dim(&sys, 7), 1);
        assert_eq!(solve_mod(&sys, 7, 2).unwrap(), vec![6, 3, 1]);
    }

    #[test]
    fn underdetermined_reported() {
        let sys = LinSystem { nvars: 3, rows: vec![vec![(0, 1), (1, 1)]] };
        assert!(matches!(solve_mod(&sys, 7, 0), Err(SolveError::MoreRelationsNeeded { .. })));
    }
}
