//! Clifford-type Jordan tori, their TKK algebras, and the map onto the
//! twisted multiloop algebra of `so(U)` graded by sign involutions.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::cycfield::{rat_int, CycScalar};
use crate::liestruct::{build_so, conj_automorphism, StructLie};
use crate::linalg::{self, Matrix, Vector};
use crate::presets::{coset_label, tkk_index_set, tkk_sign_vectors};
use crate::toroidal::{Payload, ToroidalContext, ToroidalDegree, ToroidalElement, ToroidalError};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TkkError {
    #[error("{0} is not in S")]
    Membership(String),
    #[error("invalid coset set: {0}")]
    Cosets(String),
    #[error("derivation part is not in the span of the [L_a, L_b]: {0}")]
    NotInSpan(String),
    #[error(transparent)]
    Toroidal(#[from] ToroidalError),
}

fn coset_of(mu: &[i64]) -> Vec<u8> {
    mu.iter().map(|x| x.rem_euclid(2) as u8).collect()
}

fn add_coset(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

fn is_zero_coset(a: &[u8]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// Rank over `F_2` of a set of bit vectors.
fn f2_rank(vs: &[Vec<u8>]) -> usize {
    let mut rows: Vec<Vec<u8>> = vs.to_vec();
    let width = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..width {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] == 1) else { continue };
        rows.swap(rank, p);
        let piv = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c] == 1 {
                *row = add_coset(row, &piv);
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Debug, Clone)]
pub struct JordanTorus {
    pub m: usize,
    /// Residues mod 2, zero coset first, then in the order given.
    pub cosets: Vec<Vec<u8>>,
    /// Representatives as given by the caller.
    pub reps: Vec<Vec<i64>>,
}

impl JordanTorus {
    pub fn new(reps: &[Vec<i64>]) -> Result<Self, TkkError> {
        let m = reps.first().map(|c| c.len()).ok_or_else(|| TkkError::Cosets("empty coset list".into()))?;
        if m == 0 || reps.iter().any(|c| c.len() != m) {
            return Err(TkkError::Cosets("representatives must share a positive length".into()));
        }
        let mut seen = BTreeSet::new();
        let mut cosets = vec![vec![0u8; m]];
        let mut ordered = vec![vec![0i64; m]];
        for c in reps {
            let r = coset_of(c);
            if !seen.insert(r.clone()) {
                return Err(TkkError::Cosets(format!("coset {} repeated", coset_label(c))));
            }
            if !is_zero_coset(&r) {
                cosets.push(r);
                ordered.push(c.clone());
            }
        }
        if !seen.contains(&vec![0u8; m]) {
            return Err(TkkError::Cosets("the zero coset must be included".into()));
        }
        if f2_rank(&cosets) != m {
            return Err(TkkError::Cosets("cosets do not generate Z^m mod 2".into()));
        }
        Ok(JordanTorus { m, cosets, reps: ordered })
    }

    pub fn r(&self) -> usize {
        self.cosets.len()
    }

    pub fn coset_index(&self, mu: &[i64]) -> Option<usize> {
        let c = coset_of(mu);
        self.cosets.iter().position(|x| *x == c)
    }

    pub fn contains(&self, mu: &[i64]) -> bool {
        mu.len() == self.m && self.coset_index(mu).is_some()
    }

    /// `s^mu s^eta`, or `None` for the zero product.
    pub fn jordan_mul(&self, mu: &[i64], eta: &[i64]) -> Result<Option<Vec<i64>>, TkkError> {
        for x in [mu, eta] {
            if !self.contains(x) {
                return Err(TkkError::Membership(format!("{x:?}")));
            }
        }
        let (a, b) = (coset_of(mu), coset_of(eta));
        if is_zero_coset(&a) || is_zero_coset(&b) || a == b {
            Ok(Some(mu.iter().zip(eta).map(|(x, y)| x + y).collect()))
        } else {
            Ok(None)
        }
    }

    /// Coset matrix of `L_{s^gamma}`: entry `(target, source)`.
    fn mult_matrix(&self, gamma: &[u8]) -> Matrix {
        let r = self.r();
        let mut m = vec![linalg::zeros(r); r];
        for (b, cb) in self.cosets.iter().enumerate() {
            if is_zero_coset(gamma) || is_zero_coset(cb) || gamma == cb.as_slice() {
                let t = add_coset(gamma, cb);
                if let Some(ti) = self.cosets.iter().position(|x| *x == t) {
                    m[ti][b] = CycScalar::one();
                }
            }
        }
        m
    }

    /// `[L_{s^gamma}, L_{s^eta}]` as (shift, coset matrix).
    pub fn lj_commutator(&self, gamma: &[i64], eta: &[i64]) -> Result<TkkElement, TkkError> {
        for x in [gamma, eta] {
            if !self.contains(x) {
                return Err(TkkError::Membership(format!("{x:?}")));
            }
        }
        let a = self.mult_matrix(&coset_of(gamma));
        let b = self.mult_matrix(&coset_of(eta));
        let c = mat_sub(&linalg::mat_mul(&a, &b), &linalg::mat_mul(&b, &a));
        let shift: Vec<i64> = gamma.iter().zip(eta).map(|(x, y)| x + y).collect();
        let mut e = TkkElement::zero();
        e.add_op(shift, c);
        Ok(e)
    }
}

fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(x, y)| linalg::sub(x, y)).collect()
}

fn mat_add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(x, y)| linalg::add(x, y)).collect()
}

fn mat_is_zero(a: &Matrix) -> bool {
    a.iter().all(|r| linalg::is_zero_vec(r))
}

/// `J ⊗ sl_2` terms keyed by `(mu, wing)` with wing in `0..3` for `X_1..X_3`,
/// plus operators on `J` keyed by their degree shift.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TkkElement {
    pub wings: BTreeMap<(Vec<i64>, usize), CycScalar>,
    pub ops: BTreeMap<Vec<i64>, Matrix>,
}

impl TkkElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn wing(mu: Vec<i64>, i: usize, c: CycScalar) -> Self {
        let mut e = Self::zero();
        e.add_wing(mu, i, c);
        e
    }

    pub fn add_wing(&mut self, mu: Vec<i64>, i: usize, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        let key = (mu, i);
        let s = self.wings.entry(key.clone()).or_insert_with(CycScalar::zero);
        *s += &c;
        if s.is_zero() {
            self.wings.remove(&key);
        }
    }

    pub fn add_op(&mut self, shift: Vec<i64>, m: Matrix) {
        let new = match self.ops.remove(&shift) {
            Some(old) => mat_add(&old, &m),
            None => m,
        };
        if !mat_is_zero(&new) {
            self.ops.insert(shift, new);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.wings.is_empty() && self.ops.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for ((mu, i), c) in &o.wings {
            out.add_wing(mu.clone(), *i, c.clone());
        }
        for (s, m) in &o.ops {
            out.add_op(s.clone(), m.clone());
        }
        out
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        let mut out = Self::zero();
        for ((mu, i), x) in &self.wings {
            out.add_wing(mu.clone(), *i, c * x);
        }
        for (s, m) in &self.ops {
            out.add_op(s.clone(), m.iter().map(|r| linalg::scale(c, r)).collect());
        }
        out
    }

    /// Flat coordinates for rank computations.
    fn coords(&self) -> BTreeMap<String, CycScalar> {
        let mut out = BTreeMap::new();
        for ((mu, i), c) in &self.wings {
            out.insert(format!("w{mu:?}/{i}"), c.clone());
        }
        for (s, m) in &self.ops {
            for (a, row) in m.iter().enumerate() {
                for (b, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        out.insert(format!("d{s:?}/{a}/{b}"), c.clone());
                    }
                }
            }
        }
        out
    }
}

/// `[X_i, X_j]` for the basis with `[X_1,X_2]=X_3` and cyclic.
fn sl2_bracket(i: usize, j: usize) -> Option<(usize, i64)> {
    if i == j {
        return None;
    }
    let k = 3 - i - j;
    let sign = if (j + 3 - i) % 3 == 1 { 1 } else { -1 };
    Some((k, sign))
}

/// TKK algebra of a Clifford torus with the sl_2 form `kappa * delta_ij`.
#[derive(Debug, Clone)]
pub struct Tkk {
    pub torus: JordanTorus,
    pub kappa: CycScalar,
}

impl Tkk {
    fn apply_op(&self, shift: &[i64], m: &Matrix, mu: &[i64]) -> Option<(Vec<i64>, CycScalar)> {
        let src = self.torus.coset_index(mu)?;
        let target: Vec<i64> = mu.iter().zip(shift).map(|(x, y)| x + y).collect();
        let ti = self.torus.coset_index(&target)?;
        let c = m[ti][src].clone();
        if c.is_zero() {
            None
        } else {
            Some((target, c))
        }
    }

    pub fn bracket(&self, x: &TkkElement, y: &TkkElement) -> Result<TkkElement, TkkError> {
        let mut out = TkkElement::zero();
        for ((mu, i), a) in &x.wings {
            for ((eta, j), b) in &y.wings {
                let ab = a * b;
                if let Some((k, s)) = sl2_bracket(*i, *j) {
                    if let Some(prod) = self.torus.jordan_mul(mu, eta)? {
                        out.add_wing(prod, k, &ab * &CycScalar::from_int(s));
                    }
                } else {
                    out = out.add(&self.torus.lj_commutator(mu, eta)?.scale(&(&ab * &self.kappa)));
                }
            }
        }
        // [d, a ⊗ x] = d(a) ⊗ x.
        for (sign, ops, wings) in [(1, &x.ops, &y.wings), (-1, &y.ops, &x.wings)] {
            for (shift, m) in ops {
                for ((mu, i), c) in wings {
                    if let Some((t, f)) = self.apply_op(shift, m, mu) {
                        out.add_wing(t, *i, &(&f * c) * &CycScalar::from_int(sign));
                    }
                }
            }
        }
        for (s1, m1) in &x.ops {
            for (s2, m2) in &y.ops {
                let shift: Vec<i64> = s1.iter().zip(s2).map(|(a, b)| a + b).collect();
                out.add_op(shift, mat_sub(&linalg::mat_mul(m1, m2), &linalg::mat_mul(m2, m1)));
            }
        }
        Ok(out)
    }

    /// Generators in the box `[-bound, bound]^m`: every `s^mu ⊗ X_i`, and
    /// one `[L_{s^gamma}, L_{s^eta}]` per shift and unordered pair of distinct
    /// nonzero cosets summing to the shift's coset.
    pub fn generators(&self, bound: i64) -> Vec<(String, TkkElement)> {
        let mut out = Vec::new();
        for mu in box_points(self.torus.m, bound) {
            if self.torus.contains(&mu) {
                for i in 0..3 {
                    out.push((format!("s^{mu:?}⊗X{}", i + 1), TkkElement::wing(mu.clone(), i, CycScalar::one())));
                }
            }
        }
        for nu in box_points(self.torus.m, bound) {
            for (g, eta) in self.pair_list(&coset_of(&nu)) {
                let gamma = &self.torus.reps[g];
                let eta_rep: Vec<i64> = nu.iter().zip(gamma).map(|(a, b)| a - b).collect();
                let e = self.torus.lj_commutator(gamma, &eta_rep).expect("representatives are in S");
                if !e.is_zero() {
                    out.push((format!("[L{gamma:?},L{eta_rep:?}]#{eta}"), e));
                }
            }
        }
        out
    }

    /// Index pairs `(g, h)` with `g < h` of distinct nonzero cosets summing to `target`.
    fn pair_list(&self, target: &[u8]) -> Vec<(usize, usize)> {
        let r = self.torus.r();
        let mut out = Vec::new();
        for g in 1..r {
            for h in g + 1..r {
                if add_coset(&self.torus.cosets[g], &self.torus.cosets[h]) == target {
                    out.push((g, h));
                }
            }
        }
        out
    }

    /// Dimension of the degree-`mu` component for any `mu` in the coset.
    pub fn component_dim(&self, coset: &[u8]) -> usize {
        let wings = if self.torus.cosets.iter().any(|c| c == coset) { 3 } else { 0 };
        let mats: Vec<Vector> = self
            .pair_list(coset)
            .iter()
            .map(|&(g, h)| {
                let a = self.torus.mult_matrix(&self.torus.cosets[g]);
                let b = self.torus.mult_matrix(&self.torus.cosets[h]);
                mat_sub(&linalg::mat_mul(&a, &b), &linalg::mat_mul(&b, &a)).concat()
            })
            .collect();
        wings + if mats.is_empty() { 0 } else { linalg::rank(&mats) }
    }
}

fn box_points(m: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        let mut next = Vec::new();
        for p in &out {
            for x in -bound..=bound {
                let mut q = p.clone();
                q.push(x);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// The multiloop side: `so(U)` over `I = {1,2,3} ∪ (S̄ \ 0)` with sign
/// involutions, as a toroidal context whose `t_0^{1/2}` is the first `T`.
#[derive(Debug, Clone)]
pub struct TkkIso {
    pub tkk: Tkk,
    pub so: StructLie,
    pub ctx: ToroidalContext,
}

impl TkkIso {
    pub fn new(reps: &[Vec<i64>]) -> Result<Self, TkkError> {
        let torus = JordanTorus::new(reps)?;
        let ordered: Vec<Vec<i64>> = torus.reps.clone();
        let so = build_so(&tkk_index_set(&ordered)).map_err(ToroidalError::from)?;
        let autos = tkk_sign_vectors(&ordered)
            .iter()
            .map(|s| conj_automorphism(&so, s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(ToroidalError::from)?;
        let ctx = ToroidalContext::new(&so, &autos, rat_int(0), rat_int(0))?;
        let mut iso = TkkIso { tkk: Tkk { torus, kappa: CycScalar::from_int(-1) }, so, ctx };
        iso.tkk.kappa = iso.probe_kappa()?;
        Ok(iso)
    }

    fn degree(&self, mu: &[i64]) -> ToroidalDegree {
        ToroidalDegree::new(mu[0], mu[1..].to_vec())
    }

    /// Context basis index of `e_ab` (index positions), with its sign.
    fn e_index(&self, a: usize, b: usize) -> (usize, CycScalar) {
        let v = self.so.e(a, b).expect("positions in range");
        let k = v.iter().position(|c| !c.is_zero()).expect("nonzero");
        let col = self.ctx.basis_in_original.iter().position(|w| !w[k].is_zero()).expect("basis covers e_ab");
        let scale = v[k].try_div(&self.ctx.basis_in_original[col][k]).expect("nonzero");
        (col, scale)
    }

    fn wing_image(&self, mu: &[i64], i: usize) -> (usize, usize) {
        let ci = self.tkk.torus.coset_index(mu).expect("mu in S");
        if ci == 0 {
            // (X1, X2, X3) -> (e32, e13, e21) at index positions 0,1,2.
            [(2, 1), (0, 2), (1, 0)][i]
        } else {
            (2 + ci, i)
        }
    }

    pub fn phi(&self, x: &TkkElement) -> Result<ToroidalElement, TkkError> {
        let mut out = ToroidalElement::zero();
        for ((mu, i), c) in &x.wings {
            let (a, b) = self.wing_image(mu, *i);
            let (k, s) = self.e_index(a, b);
            out.add_term(self.degree(mu), Payload::Alg(k), c * &s);
        }
        for (shift, m) in &x.ops {
            let pairs = self.tkk.pair_list(&coset_of(shift));
            let cols: Vec<Vector> = pairs
                .iter()
                .map(|&(g, h)| {
                    let a = self.tkk.torus.mult_matrix(&self.tkk.torus.cosets[g]);
                    let b = self.tkk.torus.mult_matrix(&self.tkk.torus.cosets[h]);
                    mat_sub(&linalg::mat_mul(&a, &b), &linalg::mat_mul(&b, &a)).concat()
                })
                .collect();
            let coeffs = linalg::solve_combination(&cols, &m.concat()).ok_or_else(|| TkkError::NotInSpan(format!("shift {shift:?}")))?;
            for (&(g, h), c) in pairs.iter().zip(&coeffs) {
                let (k, s) = self.e_index(2 + g, 2 + h);
                out.add_term(self.degree(shift), Payload::Alg(k), c * &s);
            }
        }
        Ok(out)
    }

    fn loop_bracket(&self, a: &ToroidalElement, b: &ToroidalElement) -> ToroidalElement {
        self.ctx.bracket_unchecked(a, b).alg_part()
    }

    /// Fixes the sl_2 form by one probe pair `s^gamma ⊗ X_1`, `s^eta ⊗ X_1`
    /// with distinct nonzero cosets.
    fn probe_kappa(&self) -> Result<CycScalar, TkkError> {
        let r = self.tkk.torus.r();
        if r < 3 {
            return Ok(CycScalar::from_int(-1));
        }
        let g = self.tkk.torus.reps[1].clone();
        let h = self.tkk.torus.reps[2].clone();
        let lhs = self.loop_bracket(&self.phi(&TkkElement::wing(g.clone(), 0, CycScalar::one()))?, &self.phi(&TkkElement::wing(h.clone(), 0, CycScalar::one()))?);
        let unit = self.phi(&self.tkk.torus.lj_commutator(&g, &h)?)?;
        let (key, u) = unit.terms.iter().next().ok_or_else(|| TkkError::NotInSpan("probe commutator vanished".into()))?;
        let l = lhs.terms.get(key).cloned().unwrap_or_else(CycScalar::zero);
        Ok(l.try_div(u).expect("nonzero"))
    }

    pub fn verify(&self, bound: i64) -> Result<IsoReport, TkkError> {
        let gens = self.tkk.generators(bound);
        let images: Vec<ToroidalElement> = gens.iter().map(|(_, g)| self.phi(g)).collect::<Result<_, _>>()?;
        let mut pairs = 0usize;
        let mut mismatches = 0usize;
        let mut first = None;
        let mut degree_errors = 0usize;
        for (i, (ln, x)) in gens.iter().enumerate() {
            for (j, (rn, y)) in gens.iter().enumerate() {
                pairs += 1;
                let lhs = self.phi(&self.tkk.bracket(x, y)?)?;
                let rhs = self.loop_bracket(&images[i], &images[j]);
                if lhs != rhs {
                    mismatches += 1;
                    if first.is_none() {
                        first = Some(Mismatch { left: ln.clone(), right: rn.clone(), phi_of_bracket: format!("{:?}", lhs.to_json()), bracket_of_phi: format!("{:?}", rhs.to_json()) });
                    }
                }
            }
        }
        // Every image term must sit at its generator's degree.
        for ((_, g), img) in gens.iter().zip(&images) {
            let degs: BTreeSet<Vec<i64>> = g.wings.keys().map(|(m, _)| m.clone()).chain(g.ops.keys().cloned()).collect();
            for (d, _) in img.terms.keys() {
                let mut v = vec![d.t0_num];
                v.extend(&d.r);
                if !degs.contains(&v) {
                    degree_errors += 1;
                }
            }
        }
        let tkk_rank = rank_of(&gens.iter().map(|(_, g)| g.coords()).collect::<Vec<_>>());
        let img_rank = rank_of(&images.iter().map(|e| e.terms.iter().map(|((d, p), c)| (format!("{d}{p:?}"), c.clone())).collect()).collect::<Vec<_>>());

        let m = self.tkk.torus.m;
        let mut dims = BTreeMap::new();
        let mut all_equal = true;
        for c in all_cosets(m) {
            let a1 = self.tkk.component_dim(&c);
            let sc: Vec<u32> = c.iter().map(|&x| x as u32).collect();
            let a2 = self.ctx.coset.iter().filter(|k| **k == sc).count();
            all_equal &= a1 == a2;
            dims.insert(c.iter().map(|x| x.to_string()).collect::<String>(), (a1, a2));
        }
        let r = self.tkk.torus.r() as i64;
        let lhs_total = 3 * r + binom(r - 1, 2);
        let rhs_total = binom(r + 2, 2);
        let sum_tkk: usize = dims.values().map(|v| v.0).sum();
        let sum_loop: usize = dims.values().map(|v| v.1).sum();
        Ok(IsoReport {
            r: r as usize,
            box_bound: bound,
            generators: gens.len(),
            pairs,
            mismatches,
            first_mismatch: first,
            degree_errors,
            generator_rank: tkk_rank,
            image_rank: img_rank,
            kappa: self.tkk.kappa.clone(),
            dims: dims.into_iter().map(|(k, (a, b))| (k, DimPair { tkk: a, multiloop: b })).collect(),
            dims_equal: all_equal,
            total_identity: TotalIdentity { lhs: lhs_total, rhs: rhs_total, tkk_sum: sum_tkk, multiloop_sum: sum_loop },
        })
    }
}

fn all_cosets(m: usize) -> Vec<Vec<u8>> {
    (0..(1u32 << m)).map(|b| (0..m).map(|p| ((b >> (m - 1 - p)) & 1) as u8).collect()).collect()
}

pub fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn rank_of(vs: &[BTreeMap<String, CycScalar>]) -> usize {
    let keys: BTreeSet<&String> = vs.iter().flat_map(|m| m.keys()).collect();
    let keys: Vec<&String> = keys.into_iter().collect();
    let rows: Vec<Vector> = vs.iter().map(|m| keys.iter().map(|k| m.get(*k).cloned().unwrap_or_else(CycScalar::zero)).collect()).collect();
    if keys.is_empty() {
        0
    } else {
        linalg::rank(&rows)
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Mismatch {
    pub left: String,
    pub right: String,
    pub phi_of_bracket: String,
    pub bracket_of_phi: String,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct DimPair {
    pub tkk: usize,
    pub multiloop: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct TotalIdentity {
    /// `3r + C(r-1, 2)`.
    pub lhs: i64,
    /// `C(r+2, 2)`.
    pub rhs: i64,
    pub tkk_sum: usize,
    pub multiloop_sum: usize,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct IsoReport {
    pub r: usize,
    pub box_bound: i64,
    pub generators: usize,
    pub pairs: usize,
    pub mismatches: usize,
    pub first_mismatch: Option<Mismatch>,
    pub degree_errors: usize,
    pub generator_rank: usize,
    pub image_rank: usize,
    pub kappa: CycScalar,
    pub dims: BTreeMap<String, DimPair>,
    pub dims_equal: bool,
    pub total_identity: TotalIdentity,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
            && self.degree_errors == 0
            && self.generator_rank == self.image_rank
            && self.dims_equal
            && self.total_identity.lhs == self.total_identity.rhs
            && self.total_identity.tkk_sum as i64 == self.total_identity.rhs
            && self.total_identity.multiloop_sum as i64 == self.total_identity.rhs
    }
}

/// Parses `"(0,0),(0,1),(1,0)"`.
pub fn parse_cosets(s: &str) -> Result<Vec<Vec<i64>>, TkkError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(TkkError::Cosets("empty".into()));
    }
    let mut out = Vec::new();
    let mut rest = t.as_str();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| TkkError::Cosets(format!("expected '(' at {rest:?}")))?;
        let end = body.find(')').ok_or_else(|| TkkError::Cosets("missing ')'".into()))?;
        let nums = body[..end]
            .split(',')
            .map(|x| x.parse::<i64>().map_err(|_| TkkError::Cosets(format!("bad integer {x:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(nums);
        rest = &body[end + 1..];
        rest = rest.strip_prefix(',').unwrap_or(rest);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn baby() -> JordanTorus {
        JordanTorus::new(&[vec![0, 0], vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn multiplication_rule() {
        let j = baby();
        assert_eq!(j.jordan_mul(&[1, 0], &[1, 0]).unwrap(), Some(vec![2, 0]));
        assert_eq!(j.jordan_mul(&[0, 0], &[1, 0]).unwrap(), Some(vec![1, 0]));
        assert_eq!(j.jordan_mul(&[1, 0], &[0, 1]).unwrap(), None);
        assert!(matches!(j.jordan_mul(&[1, 1], &[0, 0]), Err(TkkError::Membership(_))));
    }

    #[test]
    fn multiplication_commutative_with_unit() {
        let j = baby();
        let pts: Vec<Vec<i64>> = box_points(2, 2).into_iter().filter(|p| j.contains(p)).collect();
        for a in &pts {
            assert_eq!(j.jordan_mul(&[0, 0], a).unwrap(), Some(a.clone()));
            for b in &pts {
                assert_eq!(j.jordan_mul(a, b).unwrap(), j.jordan_mul(b, a).unwrap());
            }
        }
    }

    #[test]
    fn coset_validation() {
        assert!(JordanTorus::new(&[vec![0, 1], vec![1, 0]]).is_err());
        assert!(JordanTorus::new(&[vec![0, 0], vec![0, 1]]).is_err());
        assert!(JordanTorus::new(&[vec![0, 0], vec![0, 1], vec![0, 3]]).is_err());
        assert!(parse_cosets("(0,0),(0,1").is_err());
        assert_eq!(parse_cosets("(0,0), (0,1),(1,0)").unwrap(), vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn trivial_commutators_vanish() {
        let j = baby();
        assert!(j.lj_commutator(&[0, 0], &[1, 0]).unwrap().is_zero());
        assert!(j.lj_commutator(&[1, 0], &[3, 2]).unwrap().is_zero());
        assert!(!j.lj_commutator(&[1, 0], &[0, 1]).unwrap().is_zero());
    }

    #[test]
    fn table_rows() {
        let iso = TkkIso::new(&[vec![0, 0], vec![0, 1], vec![1, 0]]).unwrap();
        let lbl = |e: &ToroidalElement| -> Vec<(String, String)> {
            e.terms.iter().map(|((d, p), c)| (format!("{d}{}", match p { Payload::Alg(k) => iso.ctx.algebra.labels[*k].clone(), _ => unreachable!() }), c.to_string())).collect()
        };
        let x1 = iso.phi(&TkkElement::wing(vec![0, 0], 0, CycScalar::one())).unwrap();
        assert_eq!(lbl(&x1), vec![("[0; 0]e[2,3]".to_string(), "-1".to_string())]);
        let x2 = iso.phi(&TkkElement::wing(vec![1, 0], 1, CycScalar::one())).unwrap();
        assert_eq!(lbl(&x2), vec![("[1; 0]e[2,(1,0)]".to_string(), "-1".to_string())]);
        let d = iso.phi(&iso.tkk.torus.lj_commutator(&[1, 0], &[0, 1]).unwrap()).unwrap();
        assert_eq!(lbl(&d), vec![("[1; 1]e[(0,1),(1,0)]".to_string(), "-1".to_string())]);
        assert_eq!(iso.tkk.kappa, CycScalar::from_int(-1));
    }

    #[test]
    fn sl2_relations() {
        assert_eq!(sl2_bracket(0, 1), Some((2, 1)));
        assert_eq!(sl2_bracket(1, 2), Some((0, 1)));
        assert_eq!(sl2_bracket(2, 0), Some((1, 1)));
        assert_eq!(sl2_bracket(1, 0), Some((2, -1)));
    }

    #[test]
    fn jacobi_small_box() {
        let iso = TkkIso::new(&[vec![0, 0], vec![0, 1], vec![1, 0]]).unwrap();
        let gens: Vec<TkkElement> = iso.tkk.generators(1).into_iter().map(|(_, g)| g).collect();
        let b = |x: &TkkElement, y: &TkkElement| iso.tkk.bracket(x, y).unwrap();
        for x in &gens {
            for y in &gens {
                let xy = b(x, y);
                for z in &gens {
                    let j = b(x, &b(y, z)).add(&b(y, &b(z, x))).add(&b(z, &xy));
                    assert!(j.is_zero());
                }
            }
        }
    }

    #[test]
    fn baby_iso_small_box() {
        let iso = TkkIso::new(&[vec![0, 0], vec![0, 1], vec![1, 0]]).unwrap();
        let rep = iso.verify(1).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let dims: Vec<usize> = rep.dims.values().map(|d| d.tkk).collect();
        assert_eq!(dims, vec![3, 3, 3, 1]);
        assert_eq!((rep.total_identity.lhs, rep.total_identity.rhs), (10, 10));
    }
}
