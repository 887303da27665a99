//! Factorization of `M` by trial division to `10^6`, then Pollard rho.

use crate::algebra::fq::{is_prime_u64, mul_mod_u64};

use super::SolveError;

const TRIAL: u64 = 1_000_000;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A nontrivial factor of the composite `n`, by Brent's variant.
fn rho_factor(n: u64, budget: u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    for c in 1..64u64 {
        let f = |x: u64| (mul_mod_u64(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        let mut steps = 0;
        while d == 1 && steps < budget {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
            steps += 1;
        }
        if d != 1 && d != n {
            return Some(d);
        }
    }
    None
}

/// `M` as sorted `(prime, exponent)` pairs.
pub fn factor_modulus(m: u128) -> Result<Vec<(u128, u32)>, SolveError> {
    if m < 2 {
        return Err(SolveError::Unsupported(format!("modulus {m}")));
    }
    let mut n = u64::try_from(m).map_err(|_| SolveError::Unsupported(format!("modulus {m} above 64 bits")))?;
    let mut out: Vec<(u128, u32)> = Vec::new();
    let mut d = 2u64;
    while d < TRIAL && d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d as u128, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![n];
    while let Some(x) = stack.pop() {
        if x == 1 {
            continue;
        }
        if is_prime_u64(x) {
            match out.iter_mut().find(|(p, _)| *p == x as u128) {
                Some(e) => e.1 += 1,
                None => out.push((x as u128, 1)),
            }
            continue;
        }
        let f = rho_factor(x, 1 << 24).ok_or(SolveError::FactorizationTimeout)?;
        stack.push(f);
        stack.push(x / f);
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toy_modulus() {
        assert_eq!(factor_modulus(488281).unwrap(), vec![(19, 1), (31, 1), (829, 1)]);
        assert_eq!(factor_modulus(1_000_003).unwrap(), vec![(1_000_003, 1)]);
        let big = 1_000_003u128 * 1_000_033 * 8;
        assert_eq!(factor_modulus(big).unwrap(), vec![(2, 3), (1_000_003, 1), (1_000_033, 1)]);
    }
}
