// Solving the core system per prime of M, checked against BSGS.

use ellbasis::basis::search_basis;
use ellbasis::harvest::{build_factor_base, harvest_core, orbit_rows, Mode, Relation};
use ellbasis::psi::PsiEval;
use ellbasis::solve::{LogTable, SolveConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let b = search_basis(5, 1, 9, 0)?;
    let fb = build_factor_base(&b, 3);
    let (mut rels, _) = harvest_core(&b, &fb, None, 1)?;
    for (rep, row) in orbit_rows(&fb, &b) {
        rels.push(Relation { mode: Mode::Orbit, params: vec![], orbit: Some(rep), row, lhs: vec![], rhs: vec![] });
    }
    let (table, report) = LogTable::solve_core(&b, &fb, &rels, &SolveConfig { small_prime_threshold: 0 })?;
    for (n, method, unknowns, solved) in &report.per_prime {
        println!("mod {n}: {method}, {solved}/{unknowns}");
    }
    let psi = PsiEval::new(&b);
    let ok = table.logs.keys().filter(|p| table.verify_entry(&psi, p).unwrap_or(false)).count();
    println!("{ok}/{} logs agree with Psi", table.logs.len());
    assert_eq!(ok, table.logs.len());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("linear_algebra");
}
