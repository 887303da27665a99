mod common;

use common::{all_relations, solved};
use ellbasis::algebra::fq::is_prime_u64;
use ellbasis::algebra::{Field, Poly};
use ellbasis::cli::pipeline::solve_relations;
use ellbasis::divisor::Place;
use ellbasis::harvest::{Relation, Row};
use ellbasis::psi::PsiEval;
use ellbasis::solve::arith::crt;
use ellbasis::solve::descent::{bilinear_descend, descent_monomials, split_value};
use ellbasis::solve::oracle::{bsgs, rho, Units};
use ellbasis::solve::{
    bsgs_oracle, choose_generator, classical_split, dlog, factor_modulus, rho_oracle, solve_affine, Descent,
    DescentParams, LogTable, SolveError,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn toy_modulus_factors() {
    let f = factor_modulus(488_281).unwrap();
    assert_eq!(f, vec![(19, 1), (31, 1), (829, 1)]);
    for n in [2u128, 97, 1_000_003, 4_294_967_291] {
        assert_eq!(factor_modulus(n).unwrap(), vec![(n, 1)]);
    }
    let n = 3u128.pow(4) * 1_000_003 * 999_983;
    let f = factor_modulus(n).unwrap();
    assert_eq!(f.iter().map(|(p, e)| p.pow(*e)).product::<u128>(), n);
    assert!(f.iter().all(|(p, _)| is_prime_u64(*p as u64)));
}

#[test]
fn crt_recombines() {
    let (x, n) = crt(&[(2, 3), (3, 5), (2, 7)]);
    assert_eq!((x, n), (23, 105));
    let (x, n) = crt(&[(123_456 % 19, 19), (123_456 % 31, 31), (123_456 % 829, 829)]);
    assert_eq!((x, n), (123_456, 488_281));
}

#[test]
fn affine_solve_detects_inconsistency() {
    let rows = vec![(vec![(0, 1), (1, 1)], 3), (vec![(0, 1), (1, 1)], 4)];
    assert!(matches!(solve_affine(&rows, 2, 7), Err(SolveError::InconsistentSystem)));
    let rows = vec![(vec![(0, 1), (1, 1)], 3), (vec![(0, 1), (1, 6)], 1)];
    assert_eq!(solve_affine(&rows, 2, 7).unwrap(), vec![Some(2), Some(1)]);
}

#[test]
fn duplicate_rows_do_not_change_logs() {
    let s = solved();
    let mut doubled = s.core.clone();
    doubled.extend(s.core.iter().take(20).cloned());
    let (t1, _) = LogTable::solve_core(&s.b, &s.fb, &s.core, &all_relations()).unwrap();
    let (t2, _) = LogTable::solve_core(&s.b, &s.fb, &doubled, &all_relations()).unwrap();
    assert_eq!(t1.logs, t2.logs);
}

#[test]
fn held_out_relations_are_satisfied() {
    let s = solved();
    assert!(s.extended.len() >= 100, "{} extended relations", s.extended.len());
    let held: Vec<Relation> = s.extended.iter().step_by(2).take(50).cloned().collect();
    let mut train = s.core.clone();
    train.extend(s.extended.iter().skip(1).step_by(2).cloned());
    let (t, _) = solve_relations(&s.b, &s.fb, &train, &all_relations()).unwrap();
    let mut checked = 0;
    t.check_rows(held.iter().map(|r| &r.row)).unwrap();
    let m = s.b.m;
    for r in &held {
        let vals: Option<Vec<u128>> = r.row.reps.keys().map(|p| t.logs.get(p).copied()).collect();
        let Some(vals) = vals else { continue };
        let mut acc = (r.row.c * t.c().unwrap()) % m;
        for (a, v) in r.row.reps.values().zip(vals) {
            acc = (acc + a * v) % m;
        }
        assert_eq!(acc, 0);
        checked += 1;
    }
    assert!(checked >= 25, "only {checked} held-out rows fully determined");
}

#[test]
fn logs_agree_with_bsgs() {
    let s = solved();
    let psi = PsiEval::new(&s.b);
    let mut n = 0;
    for p in s.fb.reps.iter().filter(|p| s.table.logs.contains_key(*p)).take(20) {
        assert!(s.table.verify_entry(&psi, p).unwrap(), "{}", p.encode(s.b.fq()));
        n += 1;
    }
    assert_eq!(n, 20);
    assert!(s.table.verify_entry(&psi, &s.fb.c_place).unwrap());
}

#[test]
fn log_table_text_round_trips() {
    let s = solved();
    let text = s.table.to_text(&s.b);
    assert_eq!(LogTable::from_text(&s.b, &text).unwrap(), s.table);
    let broken = text.replacen("[mod M]\n", "[mod M]\nX-0/1 = 1 mod 488281\n", 1);
    assert!(LogTable::from_text(&s.b, &broken).is_err());
}

#[test]
fn bsgs_and_rho_agree() {
    let s = solved();
    let e = &s.b.ext;
    let g = choose_generator(&s.b).unwrap();
    let factors = factor_modulus(s.b.m).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let x = rng.gen_range(0..s.b.m);
        let h = e.pow(&g, x);
        assert_eq!(bsgs_oracle(e, &h, &g, s.b.m).unwrap(), Some(x));
        assert_eq!(rho_oracle(e, &h, &g, s.b.m, &factors, &mut rng).unwrap(), Some(x));
    }
    let u = Units(e);
    let g19 = e.pow(&g, s.b.m * 4 / 19);
    let h = e.pow(&g19, 11);
    assert_eq!(bsgs(&u, &g19, &h, 19).unwrap(), Some(11));
    assert_eq!(rho(&u, &g19, &h, 19, &mut rng), Some(11));
}

fn descent() -> Descent<'static> {
    let s = solved();
    Descent::new(&s.b, &s.fb, &s.table, DescentParams::default())
}

#[test]
fn planted_log_is_recovered() {
    let s = solved();
    let d = descent();
    let g = choose_generator(&s.b).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let r = dlog(&d, &s.b.ext.pow(&g, 12345), &g, &mut rng).unwrap();
    assert_eq!(r.x, 12345);
    assert!(r.verified);
    assert_eq!(r.full, Some(12345));
    let r = dlog(&d, &g, &g, &mut rng).unwrap();
    assert_eq!((r.x, r.full), (1, Some(1)));
}

#[test]
fn random_targets_verify() {
    let s = solved();
    let e = &s.b.ext;
    let d = descent();
    let g = choose_generator(&s.b).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..5 {
        let z = s.b.random_unit(&mut rng);
        let r = dlog(&d, &z, &g, &mut rng).unwrap();
        let u = e.div(&z, &e.pow(&g, r.x));
        assert!(e.to_base(&u).is_some());
        assert_eq!(bsgs_oracle(e, &z, &g, s.b.m).unwrap(), Some(r.x));
        let full = r.full.expect("g generates the full group");
        assert_eq!(e.pow(&g, full), z);
    }
}

#[test]
fn classical_split_cases() {
    let s = solved();
    let (b, e, f) = (&s.b, &s.b.ext, s.b.fq());
    let g0 = e.from_poly(&Poly::x_minus(f, f.elem(1)));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for j in 1..9 {
        let u = Poly::x_minus(f, b.td.x(j).unwrap());
        let sp = classical_split(b, &e.from_poly(&u), &g0, 4, 10, &mut rng).unwrap();
        assert_eq!((sp.r, sp.num.clone(), sp.den.len()), (0, vec![(u, 1)], 0));
    }
    let sp = classical_split(b, &e.from_poly(&Poly::constant(f.elem(3))), &g0, 4, 10, &mut rng).unwrap();
    assert!(sp.num.is_empty() && sp.den.is_empty());
    assert!(classical_split(b, &e.zero(), &g0, 4, 10, &mut rng).is_err());
    for _ in 0..20 {
        let z = b.random_unit(&mut rng);
        let sp = classical_split(b, &z, &g0, 4, 2000, &mut rng).unwrap();
        assert!(sp.num.iter().chain(&sp.den).all(|(u, _)| u.degree() <= 4));
        assert!(e.to_base(&e.div(&split_value(b, &sp, &g0), &z)).is_some());
    }
}

#[test]
fn descent_monomial_counts() {
    assert_eq!(descent_monomials(1).len(), 4);
    assert_eq!(descent_monomials(2).len(), 8);
    // A is monic and avoids the head of B: 4 t_a - 2 free coefficients.
    assert_eq!(descent_monomials(2).len() - 2, 6);
}

#[test]
fn known_place_needs_no_descent() {
    let s = solved();
    let d = descent();
    let p = s.fb.reps.iter().find(|p| s.table.logs.contains_key(*p)).unwrap();
    assert_eq!(d.lookup(p), Some(s.table.logs[p]));
    assert_eq!(d.place_log(p).unwrap(), s.table.logs[p]);
    assert_eq!(d.lookup(&Place::Infinity), Some(0));
}

#[test]
fn bilinear_relation_passes_psi() {
    let s = solved();
    let psi = PsiEval::new(&s.b);
    let target = s.fb.reps_of_degree(5).find(|p| !s.table.logs.contains_key(*p)).expect("unsolved degree-5 rep");
    let step = bilinear_descend(&s.b, &s.fb, target, 2, 1, 20_000, |_| true).unwrap();
    let rel = &step.relation;
    assert!(rel.rhs.iter().any(|(p, n)| p == target && *n > 0));
    assert!(psi.verify_relation(&rel.lhs, &rel.rhs).unwrap());
    let d = descent();
    let l = d.place_log(target).unwrap();
    let r = psi.place(&s.table.reference).unwrap();
    assert_eq!(psi.place(target).unwrap(), r.pow(&s.b.ext, l as i128));
}

#[test]
fn row_scaling_is_linear() {
    let s = solved();
    let r: &Row = &s.core[0].row;
    let m = s.b.m;
    let twice = r.scale(2, m);
    assert_eq!(twice.c, (2 * r.c) % m);
    assert_eq!(r.scale(m - 1, m).scale(m - 1, m), *r);
}
