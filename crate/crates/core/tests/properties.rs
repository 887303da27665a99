mod common;

use std::sync::OnceLock;

use common::solved;
use ellbasis::algebra::factor::is_irreducible;
use ellbasis::algebra::poly::{self, decode_poly, encode_poly};
use ellbasis::algebra::{field_make, frobenius, poly_factor, Field, FieldDesc, Poly};
use ellbasis::curve::tripoly::bracket;
use ellbasis::curve::{phi_star, Curve, Point, TriPoly};
use ellbasis::divisor::{divisor_of, CurveFunction, Divisor, Place};
use ellbasis::psi::PsiEval;
use ellbasis::solve::arith::crt;
use ellbasis::solve::table::orbit_log;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f25() -> &'static FieldDesc {
    static F: OnceLock<FieldDesc> = OnceLock::new();
    F.get_or_init(|| field_make(5, 2, 0).unwrap())
}

fn places() -> &'static Vec<Place> {
    static P: OnceLock<Vec<Place>> = OnceLock::new();
    P.get_or_init(|| {
        let mut v: Vec<Place> = solved().fb.places().map(|(p, _)| p.clone()).collect();
        v.sort();
        v
    })
}

fn random_tri(f: &FieldDesc, rng: &mut ChaCha8Rng, terms: usize) -> TriPoly {
    let mut t = TriPoly::zero(f);
    for _ in 0..terms {
        let m = [rng.gen_range(0..3), rng.gen_range(0..3), rng.gen_range(0..3)];
        t = t.add(&TriPoly::monomial(f, f.random(rng), m));
    }
    t
}

fn random_uv(f: &FieldDesc, rng: &mut ChaCha8Rng) -> TriPoly {
    let mut t = TriPoly::zero(f);
    for _ in 0..3 {
        let m = [rng.gen_range(0..3), rng.gen_range(0..3), 0];
        t = t.add(&TriPoly::monomial(f, f.random(rng), m));
    }
    t
}

fn random_function(rng: &mut ChaCha8Rng) -> CurveFunction {
    let b = &solved().b;
    loop {
        let g = phi_star(&random_tri(b.fq(), rng, 3), &b.curve, &b.td);
        if !g.is_zero() {
            return g;
        }
    }
}

fn random_divisor(rng: &mut ChaCha8Rng) -> Divisor {
    let ps = places();
    let mut d = Divisor::zero();
    for _ in 0..rng.gen_range(1..5) {
        let p = &ps[rng.gen_range(0..ps.len())];
        let n = rng.gen_range(-2..=2);
        d.add_term(p.clone(), n);
        d.add_term(Place::Infinity, -n * p.degree() as i64);
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn frobenius_is_additive_and_multiplicative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = &solved().b.ext;
        let (a, b) = (e.random(&mut rng), e.random(&mut rng));
        prop_assert_eq!(e.frob(&e.add(&a, &b)), e.add(&e.frob(&a), &e.frob(&b)));
        prop_assert_eq!(e.frob(&e.mul(&a, &b)), e.mul(&e.frob(&a), &e.frob(&b)));
        prop_assert_eq!(frobenius(e, &a, 9), a.clone());
        prop_assert_eq!(e.frob_by_powering(&a, 1), e.frob_by_composition(&a));
    }

    #[test]
    fn factorization_round_trips(seed in any::<u64>(), deg in 1usize..12) {
        let f = f25();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Poly::random(f, deg, true, &mut rng);
        let mut prod = Poly::one();
        for (g, n) in poly_factor(f, &a).unwrap() {
            prop_assert!(g.is_monic() && is_irreducible(f, &g));
            prod = poly::mul(f, &prod, &poly::pow(f, &g, n as u64));
        }
        prop_assert_eq!(prod, a);
    }

    #[test]
    fn encodings_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = f25();
        let x = f.random(&mut rng);
        prop_assert_eq!(f.decode(&f.encode(x)).unwrap(), x);
        let a = Poly::random(f, rng.gen_range(0..8), false, &mut rng);
        prop_assert_eq!(decode_poly(f, &encode_poly(f, &a)).unwrap(), a);
        let b = &solved().b;
        let z = b.ext.random(&mut rng);
        prop_assert_eq!(b.ext.decode(&b.ext.encode(&z)).unwrap(), z);
        let d = random_divisor(&mut rng);
        prop_assert_eq!(Divisor::decode(b.fq(), &d.encode(b.fq())).unwrap(), d.clone());
        for (p, _) in d.terms() {
            prop_assert_eq!(&Place::decode(b.fq(), &p.encode(b.fq())).unwrap(), p);
        }
    }

    #[test]
    fn group_law(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = field_make(7, 1, 0).unwrap();
        let c = Curve::new(&f, f.elem(3), f.elem(2)).unwrap();
        let (p, q, r) = (c.random_point(&mut rng), c.random_point(&mut rng), c.random_point(&mut rng));
        let add = |a: &Point<_>, b: &Point<_>| c.point_add(a, b).unwrap();
        prop_assert_eq!(add(&add(&p, &q), &r), add(&p, &add(&q, &r)));
        prop_assert_eq!(add(&p, &q), add(&q, &p));
        prop_assert_eq!(add(&p, &c.scalar_mul(-1, &p)), Point::Inf);
        prop_assert_eq!(c.scalar_mul(c.n as i128, &p), Point::Inf);
        prop_assert!(c.contains(&add(&p, &q)));
    }

    #[test]
    fn principal_divisors(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = &solved().b.curve;
        let (g, h) = (random_function(&mut rng), random_function(&mut rng));
        let (dg, dh) = (divisor_of(&g, c).unwrap(), divisor_of(&h, c).unwrap());
        prop_assert_eq!(dg.degree(), 0);
        prop_assert_eq!(divisor_of(&g.mul(&h, c), c).unwrap(), dg.add(&dh));
        prop_assert!(dg.add(&dh).height() <= dg.height() + dh.height());
        let s = solved().b.fq().elem(3);
        prop_assert_eq!(divisor_of(&g.scale(s, c), c).unwrap(), dg);
    }

    #[test]
    fn height_is_subadditive(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (d, e) = (random_divisor(&mut rng), random_divisor(&mut rng));
        prop_assert!(d.add(&e).height() <= d.height() + e.height());
        prop_assert_eq!(d.sub(&d).height(), 0);
    }

    #[test]
    fn bracket_is_bilinear_and_antisymmetric(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = solved().b.fq();
        let (a, a2, b) = (random_uv(f, &mut rng), random_uv(f, &mut rng), random_uv(f, &mut rng));
        let s = f.random(&mut rng);
        prop_assert_eq!(bracket(&a, &b), bracket(&b, &a).neg());
        prop_assert_eq!(bracket(&a.add(&a2.scale(s)), &b), bracket(&a, &b).add(&bracket(&a2, &b).scale(s)));
        prop_assert!(bracket(&a, &a).is_zero());
    }

    #[test]
    fn psi_is_multiplicative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = &solved().b;
        let psi = PsiEval::new(b);
        let (d, e) = (random_divisor(&mut rng), random_divisor(&mut rng));
        let lhs = psi.divisor(&d.add(&e)).unwrap();
        prop_assert_eq!(lhs, psi.divisor(&d).unwrap().mul(&b.ext, &psi.divisor(&e).unwrap()));
    }

    #[test]
    fn crt_matches_residues(x in 0u128..488_281) {
        let parts = [(x % 19, 19), (x % 31, 31), (x % 829, 829)];
        prop_assert_eq!(crt(&parts), (x, 488_281));
    }

    #[test]
    fn logs_are_homogeneously_consistent(idx in 0usize..824, scale in 1u128..488_281) {
        let s = solved();
        let (b, t) = (&s.b, &s.table);
        let p = &places()[idx % places().len()];
        if let Some(l) = t.place_log(b, &s.fb, p) {
            let psi = PsiEval::new(b);
            let r = psi.place(&t.reference).unwrap();
            prop_assert_eq!(psi.place(p).unwrap(), r.pow(&b.ext, l as i128));
        }
        // Every stored row stays satisfied after scaling.
        let row = &s.core[idx % s.core.len()].row.scale(scale, b.m);
        t.check_rows(std::iter::once(row)).unwrap();
    }

    #[test]
    fn orbit_formula_composes(l in 0u128..488_281, c in 0u128..488_281, s1 in 0usize..9, s2 in 0usize..9, d in 1usize..6) {
        let (q, m) = (5, 488_281);
        let one = orbit_log(q, m, d, s1, l, c);
        prop_assert_eq!(orbit_log(q, m, d, s2, one, c), orbit_log(q, m, d, s1 + s2, l, c));
    }
}
