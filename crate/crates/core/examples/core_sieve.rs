// The height 3 sieve over (alpha, beta, gamma) and its Psi audit.

use ellbasis::basis::search_basis;
use ellbasis::harvest::{build_factor_base, harvest_core};
use ellbasis::psi::PsiEval;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let b = search_basis(5, 1, 9, 0)?;
    let fb = build_factor_base(&b, 3);
    println!("factor base: {} orbit reps over {} places", fb.reps.len(), fb.place_count);
    let (rels, st) = harvest_core(&b, &fb, None, 2)?;
    println!("pairs {}, degenerate {}, smooth {}, distinct {}", st.pairs, st.degenerate, st.smooth, rels.len());
    println!("residual heights {:?}", st.residual);
    let psi = PsiEval::new(&b);
    for r in &rels {
        assert!(psi.verify_relation(&r.lhs, &r.rhs)?);
    }
    println!("first relation: {}", rels[0].encode(b.fq()));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("core_sieve");
}
