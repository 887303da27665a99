//! Quadratic extension `K[s]/(s^2 - r)` of a field `K` with `r` a non-square.

use num_bigint::BigUint;

use super::field::Field;
use super::fq::{Fe, FieldDesc};

#[derive(Clone)]
pub struct Quad<K: Field> {
    k: K,
    r: K::El,
    /// `r^((q-1)/2)`, so that `s^q = gamma * s`.
    gamma: K::El,
}

impl<K: Field> Quad<K> {
    /// `r` must be a non-square in `K`.
    pub fn new(k: K, r: K::El) -> Self {
        assert!(!k.is_square(&r), "quadratic extension needs a non-square");
        let gamma = k.pow(&r, ((k.base().q() - 1) / 2) as u128);
        Quad { k, r, gamma }
    }
    pub fn inner(&self) -> &K {
        &self.k
    }
    /// The adjoined square root of `r`.
    pub fn s(&self) -> (K::El, K::El) {
        (self.k.zero(), self.k.one())
    }
    pub fn lift(&self, a: &K::El) -> (K::El, K::El) {
        (a.clone(), self.k.zero())
    }
}

impl<K: Field> Field for Quad<K> {
    type El = (K::El, K::El);

    fn zero(&self) -> Self::El {
        (self.k.zero(), self.k.zero())
    }
    fn one(&self) -> Self::El {
        (self.k.one(), self.k.zero())
    }
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El {
        (self.k.add(&a.0, &b.0), self.k.add(&a.1, &b.1))
    }
    fn neg(&self, a: &Self::El) -> Self::El {
        (self.k.neg(&a.0), self.k.neg(&a.1))
    }
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El {
        let k = &self.k;
        let x = k.add(&k.mul(&a.0, &b.0), &k.mul(&self.r, &k.mul(&a.1, &b.1)));
        let y = k.add(&k.mul(&a.0, &b.1), &k.mul(&a.1, &b.0));
        (x, y)
    }
    fn inv(&self, a: &Self::El) -> Self::El {
        let k = &self.k;
        let n = k.sub(&k.mul(&a.0, &a.0), &k.mul(&self.r, &k.mul(&a.1, &a.1)));
        let ni = k.inv(&n);
        (k.mul(&a.0, &ni), k.neg(&k.mul(&a.1, &ni)))
    }
    fn embed(&self, c: Fe) -> Self::El {
        (self.k.embed(c), self.k.zero())
    }
    fn frob(&self, a: &Self::El) -> Self::El {
        let k = &self.k;
        (k.frob(&a.0), k.mul(&k.frob(&a.1), &self.gamma))
    }
    fn size(&self) -> BigUint {
        let s = self.k.size();
        &s * &s
    }
    fn base(&self) -> &FieldDesc {
        self.k.base()
    }
    fn degree(&self) -> usize {
        2 * self.k.degree()
    }
    fn element(&self, i: u64) -> Self::El {
        let ks: BigUint = self.k.size();
        let ks = u64::try_from(ks).unwrap_or(u64::MAX);
        (self.k.element(i % ks), self.k.element(i / ks))
    }
    fn to_base(&self, a: &Self::El) -> Option<Fe> {
        if self.k.is_zero(&a.1) {
            self.k.to_base(&a.0)
        } else {
            None
        }
    }
    fn coords(&self, a: &Self::El) -> Vec<Fe> {
        let mut v = self.k.coords(&a.0);
        v.extend(self.k.coords(&a.1));
        v
    }
}
