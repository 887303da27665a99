//! Relations and their line format `mode|params|rep:coeff,...|c:coeff`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::algebra::fq::{Fe, FieldDesc};
use crate::divisor::Place;

use super::factor_base::Row;
use super::HarvestError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Core,
    Special,
    Group,
    Height5,
    /// Self-consistency of an orbit shorter than `k`.
    Orbit,
}

impl fmt::Display for Mode {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(match self {
            Mode::Core => "core",
            Mode::Special => "special",
            Mode::Group => "group",
            Mode::Height5 => "h5",
            Mode::Orbit => "orbit",
        })
    }
}

impl FromStr for Mode {
    type Err = HarvestError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "core" => Mode::Core,
            "special" => Mode::Special,
            "group" => Mode::Group,
            "h5" => Mode::Height5,
            "orbit" => Mode::Orbit,
            _ => return Err(HarvestError::Parse(s.into())),
        })
    }
}

/// Parameter names per mode, in the order they are stored.
pub fn param_names(mode: Mode) -> &'static [&'static str] {
    match mode {
        Mode::Core => &["alpha", "beta", "gamma"],
        Mode::Special => &["alpha", "beta"],
        Mode::Group => &["k1", "k2", "alpha", "beta"],
        Mode::Height5 => &["aU", "a1", "bV", "b1"],
        Mode::Orbit => &[],
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub mode: Mode,
    pub params: Vec<Fe>,
    /// Orbit rep (for `Orbit` rows), otherwise `None`.
    pub orbit: Option<Place>,
    pub row: Row,
    /// Expanded divisors, empty when parsed from text.
    pub lhs: Vec<(Place, i64)>,
    pub rhs: Vec<(Place, i64)>,
}

impl Relation {
    pub fn encode(&self, f: &FieldDesc) -> String {
        let params = match (&self.orbit, self.mode) {
            (Some(p), Mode::Orbit) => format!("rep={}", p.encode(f)),
            _ => param_names(self.mode)
                .iter()
                .zip(&self.params)
                .map(|(n, v)| format!("{}={}", n, f.encode(*v)))
                .collect::<Vec<_>>()
                .join(";"),
        };
        let reps = self
            .row
            .reps
            .iter()
            .map(|(p, v)| format!("{}:{}", p.encode(f), v))
            .collect::<Vec<_>>()
            .join(",");
        format!("{}|{}|{}|c:{}", self.mode, params, reps, self.row.c)
    }

    pub fn decode(f: &FieldDesc, line: &str) -> Result<Relation, HarvestError> {
        let bad = || HarvestError::Parse(line.to_string());
        let parts: Vec<&str> = line.trim().split('|').collect();
        let [mode, params, reps, c] = parts.as_slice() else {
            return Err(bad());
        };
        let mode: Mode = mode.parse()?;
        let mut orbit = None;
        let mut pv = Vec::new();
        if mode == Mode::Orbit {
            let s = params.strip_prefix("rep=").ok_or_else(bad)?;
            orbit = Some(Place::decode(f, s).map_err(|_| bad())?);
        } else {
            let names = param_names(mode);
            let items: Vec<&str> = if params.is_empty() { vec![] } else { params.split(';').collect() };
            if items.len() != names.len() {
                return Err(bad());
            }
            for (it, name) in items.iter().zip(names) {
                let (n, v) = it.split_once('=').ok_or_else(bad)?;
                if n != *name {
                    return Err(bad());
                }
                pv.push(f.decode(v).map_err(|_| bad())?);
            }
        }
        let mut row = Row::default();
        row.c = c.strip_prefix("c:").ok_or_else(bad)?.parse().map_err(|_| bad())?;
        row.reps = parse_terms(f, reps).ok_or_else(bad)?;
        Ok(Relation { mode, params: pv, orbit, row, lhs: vec![], rhs: vec![] })
    }
}

/// Splits `place:coeff` entries; commas inside element encodings are
/// rejoined until an entry has its three colons.
fn parse_terms(f: &FieldDesc, s: &str) -> Option<BTreeMap<Place, u128>> {
    let mut out = BTreeMap::new();
    if s.is_empty() {
        return Some(out);
    }
    let mut cur = String::new();
    for piece in s.split(',') {
        if !cur.is_empty() {
            cur.push(',');
        }
        cur.push_str(piece);
        if cur.matches(':').count() == 3 {
            let (pl, v) = cur.rsplit_once(':')?;
            out.insert(Place::decode(f, pl).ok()?, v.parse().ok()?);
            cur.clear();
        }
    }
    cur.is_empty().then_some(out)
}
