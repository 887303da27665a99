// Individual logs in F_(5^9) through splitting and descent.

use ellbasis::algebra::Field;
use ellbasis::basis::search_basis;
use ellbasis::cli::pipeline::solve_relations;
use ellbasis::harvest::{build_factor_base, extend_h4, extend_h5, harvest_core, orbit_rows, Mode, Relation};
use ellbasis::solve::{bsgs_oracle, choose_generator, dlog, Descent, DescentParams, LogTable, SolveConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let b = search_basis(5, 1, 9, 0)?;
    let fb = build_factor_base(&b, 5);
    let cfg = SolveConfig { small_prime_threshold: 0 };
    let (mut rels, _) = harvest_core(&b, &fb, None, 2)?;
    for (rep, row) in orbit_rows(&fb, &b) {
        rels.push(Relation { mode: Mode::Orbit, params: vec![], orbit: Some(rep), row, lhs: vec![], rhs: vec![] });
    }
    let (mut t, _) = LogTable::solve_core(&b, &fb, &rels, &cfg)?;
    rels.extend(extend_h4(&b, &fb, &mut t, 2)?.relations);
    rels.extend(extend_h5(&b, &fb, &mut t, 2)?.relations);
    let (table, _) = solve_relations(&b, &fb, &rels, &cfg)?;
    let d = Descent::new(&b, &fb, &table, DescentParams::default());
    let g = choose_generator(&b)?;
    let e = &b.ext;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..3 {
        let z = b.random_unit(&mut rng);
        let r = dlog(&d, &z, &g, &mut rng)?;
        let check = bsgs_oracle(e, &z, &g, b.m)?;
        println!("log_g {} = {} mod M (BSGS {:?}), full {:?}", e.encode(&z), r.x, check, r.full);
        assert!(r.verified && check == Some(r.x));
        assert!(e.to_base(&e.div(&z, &e.pow(&g, r.x))).is_some());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("discrete_log");
}
