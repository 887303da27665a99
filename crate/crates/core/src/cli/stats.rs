//! Splitting rates of random polynomials, the statistics the sieve yields follow.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::factor::is_smooth;
use crate::algebra::fq::{field_make, FieldDesc};
use crate::algebra::poly::Poly;

use super::CliError;

/// `(degree, predicted rate of splitting into factors of degree <= 3, what it governs)`.
pub const PREDICTED: [(usize, f64, &str); 4] = [
    (8, 0.147, "core bracket without compelled points"),
    (6, 0.383, "core bracket residual"),
    (7, 0.2405, "(k1, k2) group residual"),
    (4, 0.75, "special group residual"),
];

/// Yield of the height 5 harvest.
pub const HEIGHT5_RATE: f64 = 0.2;

/// Fraction of random monic degree-`n` polynomials whose factors all have degree `<= bound`.
pub fn splitting_rate<R: Rng>(f: &FieldDesc, n: usize, bound: usize, samples: usize, rng: &mut R) -> f64 {
    let mut hits = 0usize;
    for _ in 0..samples {
        let a = Poly::random(f, n, true, rng);
        if is_smooth(f, &a, bound) {
            hits += 1;
        }
    }
    hits as f64 / samples.max(1) as f64
}

/// `F_q` from `q = p^m`.
pub fn field_of_size(q: u64, seed: u64) -> Result<FieldDesc, CliError> {
    let p = crate::curve::prime_factors(q);
    if p.len() != 1 {
        return Err(CliError::Config(format!("q = {q} is not a prime power")));
    }
    let (p, mut m, mut r) = (p[0], 0, q);
    while r > 1 {
        r /= p;
        m += 1;
    }
    field_make(p, m, seed).map_err(|e| CliError::Config(e.to_string()))
}

pub fn report(q: u64, degree: Option<usize>, samples: usize, seed: u64) -> Result<String, CliError> {
    let f = field_of_size(q, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::new();
    let _ = writeln!(out, "q = {q}, {samples} samples per degree, factors of degree <= 3");
    let rows: Vec<(usize, Option<f64>, &str)> = match degree {
        Some(d) => {
            let known = PREDICTED.iter().find(|r| r.0 == d);
            vec![(d, known.map(|r| r.1), known.map_or("", |r| r.2))]
        }
        None => PREDICTED.iter().map(|r| (r.0, Some(r.1), r.2)).collect(),
    };
    for (d, pred, what) in rows {
        let rate = splitting_rate(&f, d, 3, samples, &mut rng);
        match pred {
            Some(p) => {
                let _ = writeln!(out, "degree {d}: {rate:.4} (predicted {p}, {what})");
            }
            None => {
                let _ = writeln!(out, "degree {d}: {rate:.4}");
            }
        }
    }
    let _ = writeln!(out, "height 5 yield predicted {HEIGHT5_RATE}");
    Ok(out)
}
