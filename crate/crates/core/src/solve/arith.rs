//! Integer arithmetic modulo `n < 2^64`.

pub fn mul_mod(a: u128, b: u128, n: u128) -> u128 {
    debug_assert!(n <= u64::MAX as u128);
    (a % n) * (b % n) % n
}

pub fn pow_mod(mut a: u128, mut e: u128, n: u128) -> u128 {
    let mut r = 1 % n;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, n);
        }
        a = mul_mod(a, a, n);
        e >>= 1;
    }
    r
}

/// `1 + q + ... + q^(s-1) mod n`.
pub fn geom_mod(q: u128, s: usize, n: u128) -> u128 {
    let mut acc = 0;
    let mut t = 1 % n;
    for _ in 0..s {
        acc = (acc + t) % n;
        t = mul_mod(t, q, n);
    }
    acc
}

pub fn inv_mod(a: u128, n: u128) -> Option<u128> {
    crate::psi::inv_mod_u128(a % n, n)
}

pub fn neg_mod(a: u128, n: u128) -> u128 {
    (n - a % n) % n
}

/// Reduces a signed integer.
pub fn from_i128(a: i128, n: u128) -> u128 {
    a.rem_euclid(n as i128) as u128
}

/// The residue modulo `prod n_i` matching each `(r_i, n_i)`; moduli pairwise coprime.
pub fn crt(parts: &[(u128, u128)]) -> (u128, u128) {
    let mut r = 0u128;
    let mut n = 1u128;
    for &(ri, ni) in parts {
        let inv = inv_mod(n % ni, ni).expect("coprime moduli");
        let t = mul_mod((ri + ni - r % ni) % ni, inv, ni);
        r += n * t;
        n *= ni;
        r %= n;
    }
    (r, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crt_small() {
        let (r, n) = crt(&[(2, 3), (3, 5), (2, 7)]);
        assert_eq!((r, n), (23, 105));
    }

    #[test]
    fn geometric_sum() {
        assert_eq!(geom_mod(5, 9, 1 << 40), 488281);
        assert_eq!(geom_mod(5, 9, 488281), 0);
    }
}
