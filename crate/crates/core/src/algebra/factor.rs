//! Factorization over `F_q`: squarefree split, distinct-degree, then
//! Cantor–Zassenhaus equal-degree splitting.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::fq::{Fe, FieldDesc};
use super::poly::{self, Poly};
use super::AlgebraError;

/// `a^(1/p)` in `F_q`.
fn fe_pth_root(f: &FieldDesc, a: Fe) -> Fe {
    f.frob_p(a, f.m() - 1)
}

/// Squarefree decomposition of a monic polynomial: `(g_i, i)` with `f = prod g_i^i`.
pub fn squarefree(f: &FieldDesc, a: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if a.is_constant() {
        return out;
    }
    let a = poly::monic(f, a);
    let d = poly::derivative(f, &a);
    let mut c = poly::gcd(f, &a, &d);
    let mut w = poly::div_exact(f, &a, &c);
    let mut i = 1;
    while !w.is_constant() {
        let y = poly::gcd(f, &w, &c);
        let fac = poly::div_exact(f, &w, &y);
        if !fac.is_constant() {
            out.push((fac, i));
        }
        c = poly::div_exact(f, &c, &y);
        w = y;
        i += 1;
    }
    if !c.is_constant() {
        let p = f.p() as usize;
        let root = Poly::new(
            c.c.iter()
                .step_by(p)
                .map(|&x| fe_pth_root(f, x))
                .collect(),
        );
        for (g, j) in squarefree(f, &root) {
            out.push((g, j * p));
        }
    }
    out
}

/// Distinct-degree split of a squarefree monic polynomial into `(d, product of its degree-d factors)`.
pub fn ddf(f: &FieldDesc, a: &Poly) -> Vec<(usize, Poly)> {
    ddf_upto(f, a, usize::MAX).0
}

/// As [`ddf`] but stops after degree `max_d`; the unsplit cofactor is returned.
pub fn ddf_upto(f: &FieldDesc, a: &Poly, max_d: usize) -> (Vec<(usize, Poly)>, Poly) {
    let mut out = Vec::new();
    let mut rest = poly::monic(f, a);
    let x = Poly::x();
    let mut h = poly::rem(f, &x, &rest);
    let mut i = 1;
    while rest.degree() >= 2 * i && i <= max_d {
        h = poly::powmod(f, &h, f.q() as u128, &rest);
        let g = poly::gcd(f, &rest, &poly::sub(f, &h, &x));
        if !g.is_constant() {
            rest = poly::div_exact(f, &rest, &g);
            h = poly::rem(f, &h, &rest);
            out.push((i, g));
        }
        i += 1;
    }
    if !rest.is_constant() && rest.degree() <= max_d {
        out.push((rest.degree(), rest));
        rest = Poly::one();
    }
    (out, rest)
}

/// Splits a product of distinct monic irreducibles of degree `d`.
pub fn edf(f: &FieldDesc, a: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = a.degree();
    if n == d {
        return vec![a.clone()];
    }
    let half = (f.q() - 1) / 2;
    loop {
        let r = Poly::random(f, n - 1, false, rng);
        if r.is_constant() {
            continue;
        }
        // r^((q^d - 1)/2) = (r * r^q * ... * r^(q^(d-1)))^((q-1)/2)
        let mut t = r.clone();
        let mut acc = r.clone();
        for _ in 1..d {
            t = poly::powmod(f, &t, f.q() as u128, a);
            acc = poly::mulmod(f, &acc, &t, a);
        }
        let b = poly::powmod(f, &acc, half as u128, a);
        let g = poly::gcd(f, a, &poly::sub(f, &b, &Poly::one()));
        if !g.is_constant() && g.degree() < n {
            let other = poly::div_exact(f, a, &g);
            let mut out = edf(f, &g, d, rng);
            out.extend(edf(f, &other, d, rng));
            return out;
        }
    }
}

/// Monic irreducible factors with multiplicities, sorted by degree then coefficients.
pub fn poly_factor(f: &FieldDesc, a: &Poly) -> Result<Vec<(Poly, usize)>, AlgebraError> {
    poly_factor_seeded(f, a, 0)
}

pub fn poly_factor_seeded(
    f: &FieldDesc,
    a: &Poly,
    seed: u64,
) -> Result<Vec<(Poly, usize)>, AlgebraError> {
    if a.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (g, mult) in squarefree(f, a) {
        for (d, block) in ddf(f, &g) {
            for h in edf(f, &block, d, &mut rng) {
                out.push((h, mult));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Degrees of the irreducible factors, with multiplicity, ascending.
pub fn factor_degrees(f: &FieldDesc, a: &Poly) -> Vec<usize> {
    let mut out = Vec::new();
    for (g, mult) in squarefree(f, a) {
        for (d, block) in ddf(f, &g) {
            for _ in 0..(block.degree() / d) * mult {
                out.push(d);
            }
        }
    }
    out.sort();
    out
}

/// Whether every irreducible factor has degree at most `bound`.
pub fn is_smooth(f: &FieldDesc, a: &Poly, bound: usize) -> bool {
    if a.is_constant() {
        return true;
    }
    squarefree(f, a).iter().all(|(g, _)| {
        let (_, rest) = ddf_upto(f, g, bound);
        rest.is_constant()
    })
}

pub fn is_irreducible(f: &FieldDesc, a: &Poly) -> bool {
    let n = match a.deg() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let d = poly::derivative(f, a);
    if !poly::gcd(f, a, &d).is_constant() {
        return false;
    }
    let blocks = ddf(f, a);
    blocks.len() == 1 && blocks[0].0 == n
}

/// Distinct roots in `F_q`, ascending.
pub fn roots(f: &FieldDesc, a: &Poly) -> Vec<Fe> {
    if a.is_constant() {
        return Vec::new();
    }
    let x = Poly::x();
    let xq = poly::powmod(f, &x, f.q() as u128, a);
    let g = poly::gcd(f, a, &poly::sub(f, &xq, &x));
    if g.is_constant() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut out: Vec<Fe> = edf(f, &g, 1, &mut rng)
        .into_iter()
        .map(|h| f.neg(h.c[0]))
        .collect();
    out.sort();
    out
}

/// All monic irreducible polynomials of degree `d`, in ascending order.
pub fn irreducibles_of_degree(f: &FieldDesc, d: usize) -> Vec<Poly> {
    let q = f.q();
    let count = q.pow(d as u32);
    let mut out = Vec::new();
    for idx in 0..count {
        let mut c = Vec::with_capacity(d + 1);
        let mut t = idx;
        for _ in 0..d {
            c.push(f.elem(t % q));
            t /= q;
        }
        c.push(Fe(1));
        let p = Poly::new(c);
        if is_irreducible(f, &p) {
            out.push(p);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field_make;

    #[test]
    fn x2_plus_1_over_f5() {
        let f = field_make(5, 1, 0).unwrap();
        let a = Poly::new(vec![Fe(1), Fe(0), Fe(1)]);
        let fac = poly_factor(&f, &a).unwrap();
        assert_eq!(
            fac,
            vec![
                (Poly::new(vec![Fe(2), Fe(1)]), 1),
                (Poly::new(vec![Fe(3), Fe(1)]), 1)
            ]
        );
    }

    #[test]
    fn zero_rejected() {
        let f = field_make(5, 1, 0).unwrap();
        assert_eq!(poly_factor(&f, &Poly::zero()), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn pth_power_factor() {
        let f = field_make(5, 2, 3).unwrap();
        // (X + a)^5 (X^2 + ...)
        let a = Poly::x_minus(&f, Fe(7));
        let b = poly::pow(&f, &a, 5);
        let fac = poly_factor(&f, &b).unwrap();
        assert_eq!(fac, vec![(a, 5)]);
    }

    #[test]
    fn irreducible_counts() {
        // number of monic irreducibles of degree 2 over F_5 is (25-5)/2 = 10
        let f = field_make(5, 1, 0).unwrap();
        assert_eq!(irreducibles_of_degree(&f, 2).len(), 10);
        assert_eq!(irreducibles_of_degree(&f, 3).len(), 40);
    }
}
