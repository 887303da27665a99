use ellbasis::algebra::{Fe, Poly};
use ellbasis::basis::{build_basis, EllipticBasis};
use ellbasis::curve::{phi_star, Curve, Point, TriPoly};
use ellbasis::divisor::{divisor_of, torsion_place, translate_place, Divisor, Place};
use ellbasis::algebra::factor::irreducibles_of_degree;
use ellbasis::divisor::places_over;
use ellbasis::psi::{Chain, PsiEval, PsiValue};
use ellbasis::algebra::field_make;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn toy() -> EllipticBasis {
    let f = field_make(5, 1, 0).unwrap();
    let c = Curve::new(&f, Fe(1), Fe(1)).unwrap();
    build_basis(&c, &Point::Aff(Fe(0), Fe(1)), 9, 0).unwrap()
}

fn random_tri(b: &EllipticBasis, rng: &mut ChaCha8Rng) -> TriPoly {
    let f = b.fq();
    let mut t = TriPoly::zero(f);
    for _ in 0..4 {
        let m = [rng.gen_range(0..3), rng.gen_range(0..3), rng.gen_range(0..3)];
        t = t.add(&TriPoly::monomial(f, f.random(rng), m));
    }
    t
}

#[test]
fn vertical_lines_evaluate_to_theta_minus_xj() {
    let b = toy();
    let psi = PsiEval::new(&b);
    for j in 1..9 {
        let mut d = Divisor::zero();
        d.add_term(torsion_place(&b.curve, &b.td, j), 1);
        d.add_term(torsion_place(&b.curve, &b.td, -j), 1);
        d.add_term(Place::Infinity, -2);
        let want = PsiValue::new(&b.ext, &b.ext.from_poly(&Poly::x_minus(b.fq(), b.td.x(j).unwrap())));
        assert_eq!(psi.divisor(&d).unwrap(), want);
    }
}

#[test]
fn principal_divisors_evaluate_to_function_values() {
    let b = toy();
    let psi = PsiEval::new(&b);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let t = random_tri(&b, &mut rng);
        if t.is_zero() {
            continue;
        }
        let g = phi_star(&t, &b.curve, &b.td);
        if g.is_zero() {
            continue;
        }
        let d = divisor_of(&g, &b.curve).unwrap();
        assert_eq!(psi.divisor(&d).unwrap(), psi.function_value(&g).unwrap(), "{t}");
    }
}

#[test]
fn miller_chains_agree() {
    let b = toy();
    let a = PsiEval::with_chain(&b, Chain::DoubleAndAdd);
    let s = PsiEval::with_chain(&b, Chain::Sequential);
    for p in b.curve.points() {
        assert_eq!(a.rational(&p).unwrap(), s.rational(&p).unwrap());
    }
}

#[test]
fn translation_identity() {
    let b = toy();
    let psi = PsiEval::new(&b);
    let e = &b.ext;
    let c = psi.place(&torsion_place(&b.curve, &b.td, -1)).unwrap();
    for d in 1..=3 {
        for u in irreducibles_of_degree(b.fq(), d) {
            for p in places_over(&b.curve, &u) {
                let Ok(t) = translate_place(&b.curve, &b.td, &p, 1) else { continue };
                let lhs = psi.place(&t).unwrap();
                let rhs = psi.place(&p).unwrap().frob(e).mul(e, &c.pow(e, p.degree() as i128));
                assert_eq!(lhs, rhs, "{}", p.encode(b.fq()));
            }
        }
    }
}
