// Divisors of pulled-back functions, heights and translation orbits.

use ellbasis::basis::search_basis;
use ellbasis::curve::{phi_star, TriPoly};
use ellbasis::divisor::{decompose, divisor_of, orbit_canonical, translates};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let b = search_basis(5, 1, 9, 0)?;
    let f = b.fq();
    let (u, v) = (TriPoly::u(f), TriPoly::v(f));
    for (name, t) in [("V", v.clone()), ("U", u.clone()), ("UV", u.mul(&v))] {
        let d = divisor_of(&phi_star(&t, &b.curve, &b.td), &b.curve)?;
        println!("div({name}) = {}  height {}", d.encode(f), d.height());
    }
    let d = divisor_of(&phi_star(&u.mul(&v).add_const(f.one()), &b.curve, &b.td), &b.curve)?;
    let pos = d.positive_part();
    println!("UV + 1: positive part splits at bound 3: {}", decompose(&pos, 3).is_some());
    if let Some((p, _)) = pos.terms().find(|(p, _)| p.is_finite()) {
        let orbit = translates(&b.curve, &b.td, p, b.k);
        let (rep, shift) = orbit_canonical(&b.curve, &b.td, p);
        println!("orbit of {}: {} places, rep {} shift {}", p.encode(f), orbit.len() - 1, rep.encode(f), shift);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("divisors");
}
