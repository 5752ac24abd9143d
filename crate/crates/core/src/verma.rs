//! PBW straightening for induced modules of graded Lie algebras, truncated by
//! a depth grading.
//!
//! A module is generated by a top vector `v` on which each generator either
//! lowers (creates a PBW letter), annihilates, or acts by a scalar.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt::Debug;

use crate::cycfield::CycScalar;

#[derive(Debug, Clone, PartialEq)]
pub enum TopAction {
    Lowering,
    Annihilates,
    Scalar(CycScalar),
}

pub trait GradedAlgebra {
    type Gen: Clone + Ord + Debug;

    fn bracket(&self, a: &Self::Gen, b: &Self::Gen) -> Vec<(Self::Gen, CycScalar)>;

    /// Positive on lowering generators, negative on raising ones.
    fn depth(&self, g: &Self::Gen) -> i64;

    fn top_action(&self, g: &Self::Gen) -> TopAction;
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("depth overflow: result would have depth {needed} > {limit}")]
pub struct DepthOverflow {
    pub needed: i64,
    pub limit: i64,
}

/// Element of the module: sorted PBW monomials applied to the top vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModVec<G: Ord> {
    pub terms: BTreeMap<Vec<G>, CycScalar>,
}

impl<G: Ord + Clone> Default for ModVec<G> {
    fn default() -> Self {
        ModVec { terms: BTreeMap::new() }
    }
}

impl<G: Ord + Clone> ModVec<G> {
    pub fn top() -> Self {
        Self::mono(vec![], CycScalar::one())
    }

    pub fn mono(m: Vec<G>, c: CycScalar) -> Self {
        let mut v = Self::default();
        v.add_mono(m, c);
        v
    }

    pub fn add_mono(&mut self, m: Vec<G>, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        let s = self.terms.entry(m.clone()).or_insert_with(CycScalar::zero);
        *s += &c;
        if s.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, o: &Self, c: &CycScalar) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &o.terms {
            self.add_mono(m.clone(), c * x);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        let mut out = Self::default();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(o, &CycScalar::from_int(-1));
        out
    }
}

pub struct Verma<A: GradedAlgebra> {
    pub alg: A,
    pub max_depth: i64,
    cache: RefCell<BTreeMap<(A::Gen, Vec<A::Gen>), ModVec<A::Gen>>>,
}

impl<A: GradedAlgebra> Verma<A> {
    pub fn new(alg: A, max_depth: i64) -> Self {
        Verma { alg, max_depth, cache: RefCell::new(BTreeMap::new()) }
    }

    pub fn mono_depth(&self, m: &[A::Gen]) -> i64 {
        m.iter().map(|g| self.alg.depth(g)).sum()
    }

    pub fn vec_depth(&self, v: &ModVec<A::Gen>) -> i64 {
        v.terms.keys().map(|m| self.mono_depth(m)).max().unwrap_or(0)
    }

    /// All PBW monomials of depth at most `limit` built from `letters`
    /// (lowering generators, each of positive depth).
    pub fn basis(&self, letters: &[A::Gen], limit: i64) -> Vec<Vec<A::Gen>> {
        let mut letters = letters.to_vec();
        letters.sort();
        letters.dedup();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.enumerate(&letters, 0, limit, &mut cur, &mut out);
        out.sort_by(|a, b| self.mono_depth(a).cmp(&self.mono_depth(b)).then(a.cmp(b)));
        out
    }

    fn enumerate(&self, letters: &[A::Gen], start: usize, left: i64, cur: &mut Vec<A::Gen>, out: &mut Vec<Vec<A::Gen>>) {
        out.push(cur.clone());
        for k in start..letters.len() {
            let d = self.alg.depth(&letters[k]);
            if d <= left {
                cur.push(letters[k].clone());
                self.enumerate(letters, k, left - d, cur, out);
                cur.pop();
            }
        }
    }

    pub fn act(&self, x: &A::Gen, v: &ModVec<A::Gen>) -> Result<ModVec<A::Gen>, DepthOverflow> {
        let dx = self.alg.depth(x);
        let mut out = ModVec::default();
        for (m, c) in &v.terms {
            let needed = self.mono_depth(m) + dx;
            if needed > self.max_depth {
                return Err(DepthOverflow { needed, limit: self.max_depth });
            }
            out.add_scaled(&self.act_mono(x, m), c);
        }
        Ok(out)
    }

    pub fn act_sum(&self, xs: &[(A::Gen, CycScalar)], v: &ModVec<A::Gen>) -> Result<ModVec<A::Gen>, DepthOverflow> {
        let mut out = ModVec::default();
        for (x, c) in xs {
            out.add_scaled(&self.act(x, v)?, c);
        }
        Ok(out)
    }

    fn act_vec(&self, x: &A::Gen, v: &ModVec<A::Gen>) -> ModVec<A::Gen> {
        let mut out = ModVec::default();
        for (m, c) in &v.terms {
            out.add_scaled(&self.act_mono(x, m), c);
        }
        out
    }

    fn act_mono(&self, x: &A::Gen, m: &[A::Gen]) -> ModVec<A::Gen> {
        let key = (x.clone(), m.to_vec());
        if let Some(r) = self.cache.borrow().get(&key) {
            return r.clone();
        }
        let r = self.act_mono_uncached(x, m);
        self.cache.borrow_mut().insert(key, r.clone());
        r
    }

    fn act_mono_uncached(&self, x: &A::Gen, m: &[A::Gen]) -> ModVec<A::Gen> {
        let lowering = self.alg.top_action(x) == TopAction::Lowering;
        if m.is_empty() {
            return match self.alg.top_action(x) {
                TopAction::Lowering => ModVec::mono(vec![x.clone()], CycScalar::one()),
                TopAction::Annihilates => ModVec::default(),
                TopAction::Scalar(c) => ModVec::mono(vec![], c),
            };
        }
        let y = &m[0];
        let rest = &m[1..];
        if lowering && x <= y {
            let mut mm = Vec::with_capacity(m.len() + 1);
            mm.push(x.clone());
            mm.extend_from_slice(m);
            return ModVec::mono(mm, CycScalar::one());
        }
        // x y rest = y (x rest) + [x, y] rest.
        let inner = self.act_mono(x, rest);
        let mut out = self.act_vec(y, &inner);
        for (z, c) in self.alg.bracket(x, y) {
            out.add_scaled(&self.act_mono(&z, rest), &c);
        }
        out
    }
}
