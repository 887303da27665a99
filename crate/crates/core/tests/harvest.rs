mod common;

use common::{solved, toy};
use ellbasis::algebra::{Fe, FieldDesc};
use ellbasis::basis::EllipticBasis;
use ellbasis::curve::TriPoly;
use ellbasis::divisor::{decompose, orbit_canonical, translate_place};
use ellbasis::harvest::extend::group_parameters;
use ellbasis::harvest::{
    build_factor_base, evaluate_pair, group_constants, make_relation, read_relations, rebuild, remove_compelled,
    write_relations, HarvestError, Loc, Mode, Relation, SieveBasis,
};
use ellbasis::psi::PsiEval;

fn scaled(f: &FieldDesc, t: &TriPoly, s: u64) -> TriPoly {
    t.scale(f.elem(s))
}

fn core_pair(b: &EllipticBasis, p: [u64; 3]) -> (TriPoly, TriPoly) {
    let f = b.fq();
    SieveBasis::core(b).pair(&p.map(|x| f.elem(x)))
}

#[test]
fn factor_base_expansion_recovers_every_place() {
    let b = toy();
    let fb = build_factor_base(&b, 5);
    assert_eq!(fb.reps.len(), 92);
    assert_eq!(fb.place_count, 824);
    let mut seen = 0;
    for (p, loc) in fb.places() {
        match loc {
            Loc::Rep { rep, shift } => {
                let t = translate_place(&b.curve, &b.td, rep, *shift as i64).unwrap();
                assert_eq!(&t, p);
                assert_eq!(orbit_canonical(&b.curve, &b.td, p), (rep.clone(), *shift));
                seen += 1;
            }
            Loc::Torsion { shift } => {
                let c = &fb.c_place;
                assert_eq!(&translate_place(&b.curve, &b.td, c, *shift as i64).unwrap(), p);
                seen += 1;
            }
            Loc::Origin => {}
        }
    }
    assert_eq!(seen, fb.place_count);
}

#[test]
fn orbit_lengths_divide_k() {
    let b = toy();
    let fb = build_factor_base(&b, 5);
    for (rep, len) in &fb.orbit_len {
        assert_eq!(b.k % len, 0, "{}", rep.encode(b.fq()));
    }
}

#[test]
fn core_heights_hold_on_every_pair() {
    let s = solved();
    assert_eq!(s.stats.pairs, 125);
    assert_eq!(s.stats.left_violations, 0);
    assert_eq!(s.stats.right_violations, 0);
    assert!(s.stats.residual.keys().all(|h| *h <= 6));
}

#[test]
fn left_factors_decompose_after_compelled_removal() {
    let b = toy();
    let sb = SieveBasis::core(&b);
    for p in [[1, 2, 3], [4, 0, 1], [2, 3, 4]] {
        let (a, bb) = core_pair(&b, p);
        let Ok(pd) = evaluate_pair(&b, &a, &bb) else { continue };
        for d in &pd.left {
            let r = remove_compelled(d, &sb.compelled_left).expect("P3 on every left factor");
            assert!(decompose(&r.positive_part(), 3).is_some());
        }
        assert!(remove_compelled(&pd.right, &sb.compelled_right).is_some());
    }
}

#[test]
fn proportional_pair_is_degenerate() {
    let b = toy();
    // beta = 0 and gamma = alpha make B equal to A.
    let (a, bb) = core_pair(&b, [2, 0, 2]);
    assert_eq!(a, bb);
    assert!(matches!(evaluate_pair(&b, &a, &bb), Err(HarvestError::DegeneratePair(_))));
}

#[test]
fn scaling_a_keeps_the_row() {
    let b = toy();
    let f = b.fq();
    let fb = build_factor_base(&b, 5);
    let (a, bb) = core_pair(&b, [1, 2, 3]);
    let r1 = make_relation(&b, &fb, Mode::Core, vec![], &evaluate_pair(&b, &a, &bb).unwrap());
    for s in 2..5 {
        let pd = evaluate_pair(&b, &scaled(f, &a, s), &bb).unwrap();
        assert_eq!(make_relation(&b, &fb, Mode::Core, vec![], &pd).row, r1.row);
    }
}

#[test]
fn relation_lines_round_trip() {
    let s = solved();
    let f = s.b.fq();
    let all: Vec<Relation> = s.core.iter().chain(&s.extended).cloned().collect();
    let text = write_relations(f, &all);
    let back = read_relations(f, &text).unwrap();
    assert_eq!(back.len(), all.len());
    for (x, y) in all.iter().zip(&back) {
        assert_eq!((x.mode, &x.params, &x.orbit, &x.row), (y.mode, &y.params, &y.orbit, &y.row));
    }
    assert!(Relation::decode(f, "core|alpha=1|x").is_err());
}

#[test]
fn rebuilt_relations_match() {
    let s = solved();
    for r in s.core.iter().chain(&s.extended).filter(|r| r.mode != Mode::Orbit).take(60) {
        let full = rebuild(&s.b, &s.fb, r).unwrap();
        assert_eq!(full.row, r.row);
    }
}

#[test]
fn every_relation_passes_psi() {
    let s = solved();
    let psi = PsiEval::new(&s.b);
    let mut n = 0;
    for r in s.core.iter().chain(&s.extended).filter(|r| r.mode != Mode::Orbit) {
        assert!(psi.verify_relation(&r.lhs, &r.rhs).unwrap(), "{}", r.encode(s.b.fq()));
        n += 1;
    }
    assert!(n >= 100);
}

#[test]
fn group_constants_on_toy() {
    let b = toy();
    let f = b.fq();
    let x1 = b.td.x1();
    assert_eq!(group_constants(&b), [x1, x1, f.one()]);
    // x1 = 0 here: k2 vanishes and every k1 in F_q^* survives.
    assert_eq!(x1, Fe(0));
    let params = group_parameters(&b);
    assert_eq!(params.len(), 4);
    assert!(params.iter().all(|(_, k2)| *k2 == Fe(0)));
}
