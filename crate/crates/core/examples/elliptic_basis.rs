// Curve search and the elliptic representation of F_(5^9).

use ellbasis::algebra::poly::encode_poly;
use ellbasis::algebra::Field;
use ellbasis::basis::{search_basis, BasisFile};
use ellbasis::curve::semaev3;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let b = search_basis(5, 1, 9, 0)?;
    let e = &b.ext;
    println!("curve {}", b.curve.descriptor(b.k as u64, &b.td.p1()));
    println!("I(X) = {}", encode_poly(b.fq(), e.modulus()));
    println!("theta = {}, tau = {}", e.encode(&b.theta), e.encode(&b.tau));
    let x1 = e.embed(b.td.x1());
    assert!(e.is_zero(&semaev3(e, &b.curve, &b.theta, &e.frob(&b.theta), &x1)));
    let [u, v, w] = b.phi_of_f();
    assert_eq!((e.frob(&u), e.frob(&v)), (v.clone(), w.clone()));
    println!("M = (q^k - 1)/(q - 1) = {}", b.m);
    let json = BasisFile::from_basis(&b).to_json();
    println!("basis.json: {} bytes", json.len());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("elliptic_basis");
}
