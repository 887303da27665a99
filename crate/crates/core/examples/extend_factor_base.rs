// Core logs, then height 4 groups and height 5 pairs on top.

use ellbasis::basis::search_basis;
use ellbasis::harvest::{build_factor_base, extend_h4, extend_h5, harvest_core, orbit_rows, Mode, Relation};
use ellbasis::solve::{LogTable, SolveConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let b = search_basis(5, 1, 9, 0)?;
    let fb = build_factor_base(&b, 5);
    let (mut rels, _) = harvest_core(&b, &fb, None, 2)?;
    for (rep, row) in orbit_rows(&fb, &b) {
        rels.push(Relation { mode: Mode::Orbit, params: vec![], orbit: Some(rep), row, lhs: vec![], rhs: vec![] });
    }
    let cfg = SolveConfig { small_prime_threshold: 0 };
    let (mut table, _) = LogTable::solve_core(&b, &fb, &rels, &cfg)?;
    for r in [extend_h4(&b, &fb, &mut table, 2)?, extend_h5(&b, &fb, &mut table, 2)?] {
        for g in &r.groups {
            println!("  {}: pairs {}, kept {}, solved {}/{}", g.name, g.pairs, g.kept, g.solved, g.unknowns);
        }
        println!("height {}: {}/{} reps with a log", r.height, r.reps_known, r.reps_total);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("extend_factor_base");
}
