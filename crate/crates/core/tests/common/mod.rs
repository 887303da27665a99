#![allow(dead_code)]

use std::sync::OnceLock;

use ellbasis::basis::{search_basis, EllipticBasis};
use ellbasis::harvest::{
    build_factor_base, extend_h4, extend_h5, harvest_core, orbit_rows, FactorBase, HarvestStats, Mode, Relation,
};
use ellbasis::solve::{LogTable, SolveConfig};

/// `y^2 = x^3 + x + 4` over `F_5` with `P1 = (0, 3)` of order 9.
pub fn toy() -> EllipticBasis {
    search_basis(5, 1, 9, 0).expect("toy basis")
}

pub struct Solved {
    pub b: EllipticBasis,
    pub fb: FactorBase,
    pub core: Vec<Relation>,
    pub stats: HarvestStats,
    pub extended: Vec<Relation>,
    pub table: LogTable,
}

/// Relations forced for every prime of `M`.
pub fn all_relations() -> SolveConfig {
    SolveConfig { small_prime_threshold: 0 }
}

pub fn orbit_relations(b: &EllipticBasis, fb: &FactorBase) -> Vec<Relation> {
    orbit_rows(fb, b)
        .into_iter()
        .map(|(rep, row)| Relation { mode: Mode::Orbit, params: vec![], orbit: Some(rep), row, lhs: vec![], rhs: vec![] })
        .collect()
}

/// Harvest, core solve and extension to height 5 on the toy instance.
pub fn solved() -> &'static Solved {
    static CELL: OnceLock<Solved> = OnceLock::new();
    CELL.get_or_init(|| {
        let b = toy();
        let fb = build_factor_base(&b, 5);
        let (mut core, stats) = harvest_core(&b, &fb, None, 2).expect("harvest");
        core.extend(orbit_relations(&b, &fb));
        let (mut table, _) = LogTable::solve_core(&b, &fb, &core, &all_relations()).expect("core solve");
        let mut extended = extend_h4(&b, &fb, &mut table, 2).expect("h4").relations;
        extended.extend(extend_h5(&b, &fb, &mut table, 2).expect("h5").relations);
        Solved { b, fb, core, stats, extended, table }
    })
}
