//! `basis.json`: every field in its canonical text encoding, keys in struct order.

use serde::{Deserialize, Serialize};

use crate::algebra::ext::ext_make;
use crate::algebra::fq::field_with_modulus;
use crate::algebra::poly::{decode_poly, encode_poly};
use crate::curve::{Curve, Point, TorsionData};
use crate::psi::nd_build;

use super::{quotient_order, BasisError, EllipticBasis};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct NdFile {
    pub d: usize,
    pub orders: Vec<String>,
    pub lcm: String,
    pub inv_ok: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct BasisFile {
    pub p: u64,
    pub m: usize,
    pub field_modulus: Vec<u32>,
    pub a: String,
    pub b: String,
    pub n: u64,
    pub k: usize,
    pub p1: [String; 2],
    pub torsion: Vec<[String; 2]>,
    pub modulus: String,
    pub theta: String,
    pub tau: String,
    pub order_m: String,
    pub nd: NdFile,
    pub mu: usize,
    pub nu: u64,
    pub seed: u64,
    pub factor_count: usize,
}

impl BasisFile {
    pub fn from_basis(b: &EllipticBasis) -> Self {
        let f = b.fq();
        let enc = |x| f.encode(x);
        BasisFile {
            p: f.p(),
            m: f.m(),
            field_modulus: f.modulus().to_vec(),
            a: enc(b.curve.a),
            b: enc(b.curve.b),
            n: b.curve.n,
            k: b.k,
            p1: [enc(b.td.x1()), enc(b.td.y1())],
            torsion: b.td.pts.iter().map(|(x, y)| [enc(*x), enc(*y)]).collect(),
            modulus: encode_poly(f, b.ext.modulus()),
            theta: b.ext.encode(&b.theta),
            tau: b.ext.encode(&b.tau),
            order_m: b.m.to_string(),
            nd: NdFile {
                d: b.nd.d,
                orders: b.nd.orders.iter().map(|n| n.to_string()).collect(),
                lcm: b.nd.lcm.to_string(),
                inv_ok: b.nd.inv_ok,
            },
            mu: b.mu,
            nu: b.nu,
            seed: b.seed,
            factor_count: b.factor_count,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, BasisError> {
        serde_json::from_str(s).map_err(|e| BasisError::File(e.to_string()))
    }

    /// Rebuilds the basis and rechecks its defining properties.
    pub fn to_basis(&self) -> Result<EllipticBasis, BasisError> {
        let bad = |what: &str| BasisError::File(what.to_string());
        let f = field_with_modulus(self.p, &self.field_modulus)?;
        let a = f.decode(&self.a)?;
        let b = f.decode(&self.b)?;
        let curve = Curve::new(&f, a, b).map_err(|e| bad(&e.to_string()))?;
        if curve.n != self.n {
            return Err(bad("group order mismatch"));
        }
        let p1 = Point::Aff(f.decode(&self.p1[0])?, f.decode(&self.p1[1])?);
        if !curve.has_exact_order(&p1, self.k as u64) {
            return Err(bad("P1 does not have order k"));
        }
        let td = TorsionData::new(&curve, &p1, self.k as u64);
        let modulus = decode_poly(&f, &self.modulus)?;
        let ext = ext_make(&f, &modulus)?;
        let theta = ext.decode(&self.theta)?;
        let tau = ext.decode(&self.tau)?;
        if theta != ext.gen() {
            return Err(bad("theta is not the class of X"));
        }
        let ec = curve.over(&ext);
        let fp = Point::Aff(theta.clone(), tau.clone());
        if !ec.contains(&fp) || ec.frob(&fp) != ec.add(&fp, &ec.embed_point(&p1)) {
            return Err(bad("F is not oriented"));
        }
        let m = quotient_order(f.q(), self.k);
        if m.to_string() != self.order_m {
            return Err(bad("M mismatch"));
        }
        let nd = nd_build(&curve, self.k, self.nd.d);
        let basis = EllipticBasis {
            curve,
            td,
            k: self.k,
            ext,
            theta,
            tau,
            m,
            nd,
            mu: self.mu,
            nu: self.nu,
            seed: self.seed,
            factor_count: self.factor_count,
        };
        if BasisFile::from_basis(&basis) != *self {
            return Err(bad("fields do not match the rebuilt basis"));
        }
        Ok(basis)
    }
}
