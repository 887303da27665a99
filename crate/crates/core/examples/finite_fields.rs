// Field construction, Frobenius two ways, and polynomial factoring over F_25.

use ellbasis::algebra::poly::{self, encode_poly};
use ellbasis::algebra::{ext_make, field_make, poly_factor, Field, Poly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let f = field_make(5, 2, 0)?;
    println!("F_25 modulus {:?}", f.modulus());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = Poly::random(&f, 6, true, &mut rng);
    let parts = poly_factor(&f, &a)?;
    let mut prod = Poly::one();
    for (g, n) in &parts {
        println!("  factor {} ^ {}", encode_poly(&f, g), n);
        prod = poly::mul(&f, &prod, &poly::pow(&f, g, *n as u64));
    }
    assert_eq!(prod, a);
    let irr = parts.iter().find(|(g, _)| g.degree() >= 2).map(|(g, _)| g.clone());
    if let Some(i) = irr {
        let e = ext_make(&f, &i)?;
        let x = e.gen();
        assert_eq!(e.frob_by_powering(&x, 1), e.frob_by_composition(&x));
        println!("F_(25^{}) Frobenius of the generator: {}", e.k(), e.encode(&e.frob(&x)));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("finite_fields");
}
