//! Basis keys of `sum_r q^r (x) F (x) W (x) L` and sparse vectors over them.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::cycfield::CycScalar;
use crate::glvirmod::GlVirGen;

use super::waff::WGen;

/// A Fock oscillator `u_{pj}` or `v_{pj}`, `p` 0-based, `j >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Osc {
    U(usize, u32),
    V(usize, u32),
}

impl Osc {
    pub fn level(self) -> u32 {
        match self {
            Osc::U(_, j) | Osc::V(_, j) => j,
        }
    }
}

impl fmt::Display for Osc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Osc::U(p, j) => write!(f, "u{}_{j}", p + 1),
            Osc::V(p, j) => write!(f, "v{}_{j}", p + 1),
        }
    }
}

/// Sorted multiset of oscillators.
pub type FockMono = Vec<Osc>;

pub fn fock_degree(m: &[Osc]) -> i64 {
    m.iter().map(|o| o.level() as i64).sum()
}

pub fn fock_mul(m: &[Osc], o: Osc) -> FockMono {
    let mut out = m.to_vec();
    let at = out.partition_point(|x| *x <= o);
    out.insert(at, o);
    out
}

/// `d/d o` of the monomial: (multiplicity, monomial with one `o` removed).
pub fn fock_diff(m: &[Osc], o: Osc) -> Option<(i64, FockMono)> {
    let count = m.iter().filter(|x| **x == o).count();
    if count == 0 {
        return None;
    }
    let mut out = m.to_vec();
    let at = out.iter().position(|x| *x == o).expect("present");
    out.remove(at);
    Some((count as i64, out))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Key {
    pub r: Vec<i64>,
    pub fock: FockMono,
    pub w: Vec<WGen>,
    pub gl: Vec<GlVirGen>,
}

impl Key {
    pub fn vacuum(n: usize) -> Self {
        Key { r: vec![0; n], fock: vec![], w: vec![], gl: vec![] }
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.r.iter().map(|x| x.to_string()).collect();
        let fock: Vec<String> = self.fock.iter().map(|o| o.to_string()).collect();
        let w: Vec<String> = self.w.iter().map(|g| g.to_string()).collect();
        let gl: Vec<String> = self.gl.iter().map(|g| g.to_string()).collect();
        write!(f, "q^({}) [{}] [{}] [{}]", r.join(","), fock.join(" "), w.join(" "), gl.join(" "))
    }
}

/// Sparse vector in the truncated module.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TruncVector {
    pub terms: BTreeMap<Key, CycScalar>,
}

impl TruncVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: Key) -> Self {
        let mut v = Self::zero();
        v.add_term(k, CycScalar::one());
        v
    }

    pub fn add_term(&mut self, k: Key, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(s) => {
                *s += &c;
                if s.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn add_scaled(&mut self, o: &Self, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        for (k, x) in &o.terms {
            self.add_term(k.clone(), c * x);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(o, &CycScalar::from_int(-1));
        out
    }
}

impl fmt::Display for TruncVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| format!("({c}) {k}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Laurent series in `z^{1/m0}` with vector coefficients, keyed by the
/// scaled exponent.
pub type Series = BTreeMap<i64, TruncVector>;

pub fn series_add(s: &mut Series, e: i64, v: &TruncVector, c: &CycScalar) {
    if v.is_zero() || c.is_zero() {
        return;
    }
    let slot = s.entry(e).or_default();
    slot.add_scaled(v, c);
    if slot.is_zero() {
        s.remove(&e);
    }
}

pub fn series_add_key(s: &mut Series, e: i64, k: Key, c: CycScalar) {
    if c.is_zero() {
        return;
    }
    let slot = s.entry(e).or_default();
    slot.add_term(k, c);
    if slot.is_zero() {
        s.remove(&e);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fock_mul_and_diff_round_trip() {
        let m = fock_mul(&fock_mul(&[], Osc::U(0, 2)), Osc::U(0, 2));
        assert_eq!(m, vec![Osc::U(0, 2), Osc::U(0, 2)]);
        assert_eq!(fock_degree(&m), 4);
        let (c, rest) = fock_diff(&m, Osc::U(0, 2)).unwrap();
        assert_eq!(c, 2);
        assert_eq!(rest, vec![Osc::U(0, 2)]);
        assert!(fock_diff(&m, Osc::V(0, 2)).is_none());
    }
}
