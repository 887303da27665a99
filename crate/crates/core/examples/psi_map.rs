// The surrogate evaluation Psi and a relation audit.

use ellbasis::algebra::Poly;
use ellbasis::basis::search_basis;
use ellbasis::divisor::{torsion_place, Divisor, Place};
use ellbasis::psi::{PsiEval, PsiValue};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let b = search_basis(5, 1, 9, 0)?;
    let psi = PsiEval::new(&b);
    for j in 1..4 {
        let mut d = Divisor::zero();
        d.add_term(torsion_place(&b.curve, &b.td, j), 1);
        d.add_term(torsion_place(&b.curve, &b.td, -j), 1);
        d.add_term(Place::Infinity, -2);
        let got = psi.divisor(&d)?;
        let want = PsiValue::new(&b.ext, &b.ext.from_poly(&Poly::x_minus(b.fq(), b.td.x(j).unwrap())));
        println!("Psi((P_{j}) + (-P_{j}) - 2(O)) = {}", got.encode(&b.ext));
        assert_eq!(got, want);
    }
    let c = psi.place(&torsion_place(&b.curve, &b.td, -1))?;
    println!("c-value Psi((-P1) - (O)) = {}", c.encode(&b.ext));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("psi_map");
}
