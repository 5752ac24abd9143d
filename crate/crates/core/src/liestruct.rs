//! Finite-dimensional Lie algebras given by structure constants, their
//! automorphisms, eigenspace gradings and invariant Cartan subalgebras.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cycfield::{rat_int, root_of_unity, CycScalar, Rat};
use crate::linalg::{self, Matrix, Vector};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LieError {
    #[error("shape mismatch: expected length {expected}, got {got}")]
    Shape { expected: usize, got: usize },
    #[error("inconsistent input: {0}")]
    Consistency(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("could not certify a Cartan subalgebra after {samples} samples: {reason}")]
    Certification { samples: usize, reason: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type SparseVec = Vec<(usize, CycScalar)>;

#[derive(Debug, Clone)]
pub struct StructLie {
    pub labels: Vec<String>,
    /// `sc[i][j]` lists the nonzero coordinates of `[b_i, b_j]`.
    pub sc: Vec<Vec<SparseVec>>,
    pub form: Matrix,
    pub dual_coxeter: Rat,
    /// Index labels when the algebra is `so(U)` in the `e_ij` basis.
    pub index_set: Option<Vec<String>>,
}

fn pair_positions(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            out.push((a, b));
        }
    }
    out
}

impl StructLie {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    fn check_len(&self, v: &[CycScalar]) -> Result<(), LieError> {
        if v.len() != self.dim() {
            return Err(LieError::Shape { expected: self.dim(), got: v.len() });
        }
        Ok(())
    }

    pub fn basis_vec(&self, i: usize) -> Vector {
        linalg::unit(self.dim(), i)
    }

    pub fn bracket(&self, x: &[CycScalar], y: &[CycScalar]) -> Result<Vector, LieError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub fn bracket_unchecked(&self, x: &[CycScalar], y: &[CycScalar]) -> Vector {
        let mut out = linalg::zeros(self.dim());
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || self.sc[i][j].is_empty() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in &self.sc[i][j] {
                    out[*k] += &(&c * s);
                }
            }
        }
        out
    }

    pub fn form_eval(&self, x: &[CycScalar], y: &[CycScalar]) -> CycScalar {
        let mut acc = CycScalar::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || self.form[i][j].is_zero() {
                    continue;
                }
                acc += &(&(xi * yj) * &self.form[i][j]);
            }
        }
        acc
    }

    /// Matrix of `ad x`: column `j` holds `[x, b_j]`.
    pub fn ad_matrix(&self, x: &[CycScalar]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|j| self.bracket_unchecked(x, &self.basis_vec(j))).collect();
        linalg::transpose(&cols)
    }

    /// First basis triple violating the Jacobi identity, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (a, b, c) = (self.basis_vec(i), self.basis_vec(j), self.basis_vec(k));
                    let t1 = self.bracket_unchecked(&a, &self.bracket_unchecked(&b, &c));
                    let t2 = self.bracket_unchecked(&b, &self.bracket_unchecked(&c, &a));
                    let t3 = self.bracket_unchecked(&c, &self.bracket_unchecked(&a, &b));
                    if !linalg::is_zero_vec(&linalg::add(&linalg::add(&t1, &t2), &t3)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn antisymmetry_violation(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let a = self.bracket_unchecked(&self.basis_vec(i), &self.basis_vec(j));
                let b = self.bracket_unchecked(&self.basis_vec(j), &self.basis_vec(i));
                if !linalg::is_zero_vec(&linalg::add(&a, &b)) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First basis triple with `([x,y]|z) != (x|[y,z])`, or an asymmetric form entry.
    pub fn form_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                if self.form[i][j] != self.form[j][i] {
                    return Some((i, j, j));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let xy = self.bracket_unchecked(&self.basis_vec(i), &self.basis_vec(j));
                for k in 0..n {
                    let yz = self.bracket_unchecked(&self.basis_vec(j), &self.basis_vec(k));
                    if self.form_eval(&xy, &self.basis_vec(k)) != self.form_eval(&self.basis_vec(i), &yz) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// The same algebra written in a new basis (given in current coordinates).
    /// The index set is dropped since the `e_ij` helpers no longer apply.
    pub fn rebased(&self, basis: &[Vector], labels: Vec<String>) -> Result<StructLie, LieError> {
        let n = self.dim();
        if basis.len() != n || labels.len() != n {
            return Err(LieError::Shape { expected: n, got: basis.len() });
        }
        let p = linalg::transpose(&basis.to_vec());
        let pinv = linalg::inverse(&p).ok_or_else(|| LieError::Consistency("new basis is not invertible".into()))?;
        let mut sc = vec![vec![SparseVec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let c = linalg::mat_vec(&pinv, &self.bracket_unchecked(&basis[i], &basis[j]));
                sc[i][j] = c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
            }
        }
        let form = (0..n).map(|i| (0..n).map(|j| self.form_eval(&basis[i], &basis[j])).collect()).collect();
        Ok(StructLie { labels, sc, form, dual_coxeter: self.dual_coxeter.clone(), index_set: None })
    }

    fn so_size(&self) -> Result<usize, LieError> {
        self.index_set.as_ref().map(|s| s.len()).ok_or_else(|| LieError::Precondition("algebra was not built by build_so".into()))
    }

    /// Coordinates of `e_ab` for index positions `a`, `b` (`e_ba = -e_ab`).
    pub fn e(&self, a: usize, b: usize) -> Result<Vector, LieError> {
        let n = self.so_size()?;
        let mut v = linalg::zeros(self.dim());
        if a == b {
            return Ok(v);
        }
        let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
        let pos = pair_positions(n).iter().position(|&p| p == (lo, hi)).ok_or(LieError::Shape { expected: n, got: hi })?;
        v[pos] = CycScalar::from_int(sign);
        Ok(v)
    }

    /// Position of an index label in the index set.
    pub fn index_of(&self, label: &str) -> Result<usize, LieError> {
        let set = self.index_set.as_ref().ok_or_else(|| LieError::Precondition("algebra was not built by build_so".into()))?;
        set.iter().position(|l| l == label).ok_or_else(|| LieError::Consistency(format!("unknown index {label}")))
    }

    /// The antisymmetric matrix realizing a vector of `so(U)`.
    pub fn to_so_matrix(&self, v: &[CycScalar]) -> Result<Matrix, LieError> {
        let n = self.so_size()?;
        self.check_len(v)?;
        let mut m = vec![linalg::zeros(n); n];
        for (c, &(a, b)) in v.iter().zip(pair_positions(n).iter()) {
            m[a][b] = c.clone();
            m[b][a] = -c;
        }
        Ok(m)
    }

    /// Inverse of `to_so_matrix`; rejects matrices that are not antisymmetric.
    pub fn from_so_matrix(&self, m: &Matrix) -> Result<Vector, LieError> {
        let n = self.so_size()?;
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(LieError::Shape { expected: n, got: m.len() });
        }
        for a in 0..n {
            for b in 0..n {
                if m[a][b] != -&m[b][a] {
                    return Err(LieError::Consistency(format!("matrix is not antisymmetric at ({}, {})", a + 1, b + 1)));
                }
            }
        }
        Ok(pair_positions(n).iter().map(|&(a, b)| m[a][b].clone()).collect())
    }

    pub fn to_json(&self) -> AlgebraJson {
        let mut sc = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                for (k, v) in &self.sc[i][j] {
                    sc.push(ScTriple { i, j, k: *k, value: v.clone() });
                }
            }
        }
        AlgebraJson {
            labels: self.labels.clone(),
            structure_constants: sc,
            form: self.form.clone(),
            dual_coxeter: crate::cycfield::CycScalar::from_rat(self.dual_coxeter.clone()).to_string(),
            index_set: self.index_set.clone(),
        }
    }

    pub fn from_json(j: &AlgebraJson) -> Result<Self, LieError> {
        let n = j.labels.len();
        let mut sc = vec![vec![SparseVec::new(); n]; n];
        for t in &j.structure_constants {
            if t.i >= n || t.j >= n || t.k >= n {
                return Err(LieError::Shape { expected: n, got: t.i.max(t.j).max(t.k) + 1 });
            }
            if t.i >= t.j {
                return Err(LieError::Consistency(format!("structure constant triple must have i < j, got ({}, {})", t.i, t.j)));
            }
            if t.value.is_zero() {
                continue;
            }
            sc[t.i][t.j].push((t.k, t.value.clone()));
            sc[t.j][t.i].push((t.k, -&t.value));
        }
        if j.form.len() != n || j.form.iter().any(|r| r.len() != n) {
            return Err(LieError::Shape { expected: n, got: j.form.len() });
        }
        let hv = crate::cycfield::parse_rat(&j.dual_coxeter).map_err(|e| LieError::Consistency(e.to_string()))?;
        let l = StructLie { labels: j.labels.clone(), sc, form: j.form.clone(), dual_coxeter: hv, index_set: j.index_set.clone() };
        if let Some(t) = l.jacobi_violation() {
            return Err(LieError::Consistency(format!("Jacobi identity fails on basis triple {t:?}")));
        }
        Ok(l)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ScTriple {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: CycScalar,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AlgebraJson {
    pub labels: Vec<String>,
    pub structure_constants: Vec<ScTriple>,
    pub form: Matrix,
    pub dual_coxeter: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index_set: Option<Vec<String>>,
}

fn elementary_antisym(n: usize, a: usize, b: usize) -> Matrix {
    let mut m = vec![linalg::zeros(n); n];
    m[a][b] = CycScalar::one();
    m[b][a] = CycScalar::from_int(-1);
    m
}

fn trace(m: &Matrix) -> CycScalar {
    let mut acc = CycScalar::zero();
    for (i, row) in m.iter().enumerate() {
        acc += &row[i];
    }
    acc
}

fn mat_sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(x, y)| linalg::sub(x, y)).collect()
}

/// `so(U)` for an index set of size at least 3, with basis `e_ij` (`i < j`).
pub fn build_so(index_set: &[String]) -> Result<StructLie, LieError> {
    let n = index_set.len();
    if n < 3 {
        return Err(LieError::Precondition(format!("so(U) needs at least 3 indices, got {n}")));
    }
    let pairs = pair_positions(n);
    let dim = pairs.len();
    let mats: Vec<Matrix> = pairs.iter().map(|&(a, b)| elementary_antisym(n, a, b)).collect();
    let decompose = |m: &Matrix| -> SparseVec {
        pairs.iter().enumerate().filter(|(_, &(a, b))| !m[a][b].is_zero()).map(|(k, &(a, b))| (k, m[a][b].clone())).collect()
    };
    let mut sc = vec![vec![SparseVec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let c = mat_sub(&linalg::mat_mul(&mats[i], &mats[j]), &linalg::mat_mul(&mats[j], &mats[i]));
            sc[i][j] = decompose(&c);
        }
    }
    let labels = pairs.iter().map(|&(a, b)| format!("e[{},{}]", index_set[a], index_set[b])).collect();

    // Long coroot: i e_01 - i e_23 for n >= 4; for so_3 = sl_2 the coroot is 2i e_01.
    let i = CycScalar::i();
    let h0 = if n >= 4 {
        let a = elementary_antisym(n, 0, 1);
        let b = elementary_antisym(n, 2, 3);
        a.iter().zip(&b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| &(&i * x) - &(&i * y)).collect()).collect::<Matrix>()
    } else {
        elementary_antisym(n, 0, 1).iter().map(|r| r.iter().map(|x| &(&i * x) * &CycScalar::from_int(2)).collect()).collect()
    };
    let tr_h0 = trace(&linalg::mat_mul(&h0, &h0));
    let lambda = CycScalar::from_int(2).try_div(&tr_h0).map_err(|e| LieError::Consistency(e.to_string()))?;
    let form: Matrix = (0..dim).map(|a| (0..dim).map(|b| &lambda * &trace(&linalg::mat_mul(&mats[a], &mats[b]))).collect()).collect();

    let dual_coxeter = match n {
        3 => rat_int(2),
        4 => rat_int(2),
        _ if n % 2 == 1 => rat_int(2 * ((n as i64 - 1) / 2) - 1),
        _ => rat_int(2 * (n as i64 / 2) - 2),
    };
    let l = StructLie { labels, sc, form, dual_coxeter, index_set: Some(index_set.to_vec()) };

    // Certify that h0 is a long coroot: ad-eigenvalues integral with top eigenvalue 2.
    let h0v = l.from_so_matrix(&h0)?;
    let eig = integer_eigenspaces(&l, &h0v)?;
    let top = eig.keys().copied().max().unwrap_or(0);
    if top != 2 || eig[&2].len() != 1 {
        return Err(LieError::Consistency("normalizing element is not a long coroot".into()));
    }
    Ok(l)
}

/// Rank of the classified type of `so_n`.
pub fn so_rank(n: usize) -> usize {
    n / 2
}

#[derive(Debug, Clone, PartialEq)]
pub struct LieAut {
    /// Column `j` holds the image of basis vector `j`.
    pub matrix: Matrix,
    pub order: u32,
}

impl LieAut {
    pub fn identity(dim: usize) -> Self {
        LieAut { matrix: linalg::identity(dim), order: 1 }
    }

    pub fn apply(&self, v: &[CycScalar]) -> Vector {
        linalg::mat_vec(&self.matrix, v)
    }

    pub fn compose(&self, other: &LieAut) -> Matrix {
        linalg::mat_mul(&self.matrix, &other.matrix)
    }

    pub fn commutes_with(&self, other: &LieAut) -> bool {
        self.compose(other) == other.compose(self)
    }

    pub fn power_is_identity(&self, m: u32) -> bool {
        let n = self.matrix.len();
        let mut acc = linalg::identity(n);
        for _ in 0..m {
            acc = linalg::mat_mul(&acc, &self.matrix);
        }
        acc == linalg::identity(n)
    }

    pub fn preserves_bracket(&self, l: &StructLie) -> Option<(usize, usize)> {
        let n = l.dim();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.apply(&l.bracket_unchecked(&l.basis_vec(i), &l.basis_vec(j)));
                let rhs = l.bracket_unchecked(&self.apply(&l.basis_vec(i)), &self.apply(&l.basis_vec(j)));
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn preserves_form(&self, l: &StructLie) -> Option<(usize, usize)> {
        let n = l.dim();
        for i in 0..n {
            for j in i..n {
                if l.form_eval(&self.apply(&l.basis_vec(i)), &self.apply(&l.basis_vec(j))) != l.form[i][j] {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// `e_ij -> s_i s_j e_ij` for a sign per index.
pub fn conj_automorphism(l: &StructLie, diag_signs: &[i64]) -> Result<LieAut, LieError> {
    let n = l.so_size()?;
    if diag_signs.len() != n {
        return Err(LieError::Shape { expected: n, got: diag_signs.len() });
    }
    if diag_signs.iter().any(|&s| s != 1 && s != -1) {
        return Err(LieError::Consistency("signs must be +1 or -1".into()));
    }
    let pairs = pair_positions(n);
    let mut m = linalg::identity(l.dim());
    let mut order = 1;
    for (k, &(a, b)) in pairs.iter().enumerate() {
        let s = diag_signs[a] * diag_signs[b];
        if s < 0 {
            order = 2;
        }
        m[k][k] = CycScalar::from_int(s);
    }
    Ok(LieAut { matrix: m, order })
}

/// Inner-ness of the sign automorphism `diag(signs)` of `so_n`:
/// inner iff the number of `-1`s or the number of `+1`s is even.
pub fn is_inner_sign_aut(diag_signs: &[i64]) -> bool {
    let minus = diag_signs.iter().filter(|&&s| s < 0).count();
    let plus = diag_signs.len() - minus;
    minus % 2 == 0 || plus % 2 == 0
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grading {
    pub lattice_orders: Vec<u32>,
    /// Component bases keyed by coset (one residue per automorphism).
    pub components: BTreeMap<Vec<u32>, Vec<Vector>>,
}

impl Grading {
    pub fn dims(&self) -> BTreeMap<Vec<u32>, usize> {
        self.components.iter().map(|(k, v)| (k.clone(), v.len())).collect()
    }

    pub fn dim_of(&self, coset: &[u32]) -> usize {
        self.components.get(coset).map_or(0, |b| b.len())
    }

    pub fn total_dim(&self) -> usize {
        self.components.values().map(|b| b.len()).sum()
    }

    /// Homogeneous basis ordered by coset, with each vector's coset.
    pub fn homogeneous_basis(&self) -> Vec<(Vec<u32>, Vector)> {
        self.components.iter().flat_map(|(k, b)| b.iter().map(move |v| (k.clone(), v.clone()))).collect()
    }

    pub fn add_cosets(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).zip(&self.lattice_orders).map(|((x, y), m)| (x + y) % m).collect()
    }

    pub fn neg_coset(&self, a: &[u32]) -> Vec<u32> {
        a.iter().zip(&self.lattice_orders).map(|(x, m)| (m - x % m) % m).collect()
    }

    /// Checks `[g_s, g_t] ⊆ g_{s+t}` on all component basis pairs.
    pub fn compatibility_violation(&self, l: &StructLie) -> Option<(Vec<u32>, Vec<u32>)> {
        for (s, bs) in &self.components {
            for (t, bt) in &self.components {
                let target = self.components.get(&self.add_cosets(s, t)).cloned().unwrap_or_default();
                for x in bs {
                    for y in bt {
                        let z = l.bracket_unchecked(x, y);
                        if !linalg::in_span(&target, &z) {
                            return Some((s.clone(), t.clone()));
                        }
                    }
                }
            }
        }
        None
    }
}

fn multiplicative_order(z: &CycScalar, bound: u32) -> Option<u32> {
    let mut acc = z.clone();
    for k in 1..=bound {
        if acc.is_one() {
            return Some(k);
        }
        acc = &acc * z;
    }
    None
}

/// Simultaneous eigenspace decomposition under commuting finite-order automorphisms.
pub fn simultaneous_grading(l: &StructLie, autos: &[LieAut], roots: &[CycScalar]) -> Result<Grading, LieError> {
    if autos.len() != roots.len() {
        return Err(LieError::Shape { expected: autos.len(), got: roots.len() });
    }
    for (a, s) in autos.iter().enumerate() {
        if s.matrix.len() != l.dim() {
            return Err(LieError::Shape { expected: l.dim(), got: s.matrix.len() });
        }
        for t in &autos[a + 1..] {
            if !s.commutes_with(t) {
                return Err(LieError::Consistency(format!("automorphism {a} does not commute with a later one")));
            }
        }
        if !s.power_is_identity(s.order) {
            return Err(LieError::Consistency(format!("automorphism {a} does not have the stated order {}", s.order)));
        }
        if multiplicative_order(&roots[a], s.order) != Some(s.order) {
            return Err(LieError::Consistency(format!("root {a} is not primitive of order {}", s.order)));
        }
    }
    let n = l.dim();
    let mut comps: Vec<(Vec<u32>, Vec<Vector>)> = vec![(vec![], (0..n).map(|i| l.basis_vec(i)).collect())];
    for (s, xi) in autos.iter().zip(roots) {
        let mut next = Vec::new();
        for (coset, basis) in comps {
            for k in 0..s.order {
                let lam = xi.pow(k);
                // Coordinates c with sum c_j (s b_j - lam b_j) = 0.
                let cols: Vec<Vector> = basis.iter().map(|b| linalg::sub(&s.apply(b), &linalg::scale(&lam, b))).collect();
                let m = linalg::transpose(&cols);
                let ker = linalg::kernel(&m, basis.len());
                if ker.is_empty() {
                    continue;
                }
                let vecs: Vec<Vector> = ker
                    .iter()
                    .map(|c| {
                        let mut v = linalg::zeros(n);
                        for (cj, bj) in c.iter().zip(&basis) {
                            linalg::axpy(&mut v, cj, bj);
                        }
                        v
                    })
                    .collect();
                let mut key = coset.clone();
                key.push(k);
                next.push((key, linalg::span_basis(&vecs)));
            }
        }
        comps = next;
    }
    let g = Grading { lattice_orders: autos.iter().map(|a| a.order).collect(), components: comps.into_iter().collect() };
    if g.total_dim() != n {
        return Err(LieError::Consistency(format!("eigenspaces span dimension {} of {n}", g.total_dim())));
    }
    Ok(g)
}

/// Eigenspaces of `ad h` for integer eigenvalues; errors unless they exhaust the algebra.
pub fn integer_eigenspaces(l: &StructLie, h: &[CycScalar]) -> Result<BTreeMap<i64, Vec<Vector>>, LieError> {
    let a = l.ad_matrix(h);
    let n = l.dim();
    let t = trace(&linalg::mat_mul(&a, &a));
    let tq = t.as_rational().ok_or_else(|| LieError::Unsupported("trace of (ad h)^2 is not rational".into()))?;
    if tq.is_negative() {
        return Err(LieError::Unsupported("ad h has non-real eigenvalues".into()));
    }
    let bound = tq.floor().to_integer().to_i64().unwrap_or(0);
    let bound = (bound as f64).sqrt().floor() as i64 + 1;
    let mut out = BTreeMap::new();
    let mut total = 0;
    for k in -bound..=bound {
        let mut shifted = a.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] -= &CycScalar::from_int(k);
        }
        let ker = linalg::kernel(&shifted, n);
        if !ker.is_empty() {
            total += ker.len();
            out.insert(k, ker);
        }
    }
    if total != n {
        return Err(LieError::Unsupported(format!("ad h is not diagonalizable with integer eigenvalues ({total} of {n})")));
    }
    Ok(out)
}

/// `exp(pi i t ad h)`, acting on the ad-h eigenspace of eigenvalue `k` by `e^{pi i t k}`.
pub fn exp_ad_rational(l: &StructLie, h: &[CycScalar], t: &Rat) -> Result<LieAut, LieError> {
    l.check_len(h)?;
    let eig = integer_eigenspaces(l, h)?;
    let p = t.numer().to_i64().ok_or_else(|| LieError::Unsupported("t too large".into()))?;
    let q = t.denom().to_i64().ok_or_else(|| LieError::Unsupported("t too large".into()))?;
    let modulus = 2 * q;
    let mut cols = Vec::new();
    let mut scaled = Vec::new();
    let mut order: u64 = 1;
    for (k, vecs) in &eig {
        let e = (p * k).rem_euclid(modulus);
        let z = root_of_unity(modulus as u32, e).map_err(|e| LieError::Unsupported(e.to_string()))?;
        let ord = (modulus / modulus.gcd(&e)) as u64;
        order = order.lcm(&ord);
        for v in vecs {
            cols.push(v.clone());
            scaled.push(linalg::scale(&z, v));
        }
    }
    let v = linalg::transpose(&cols);
    let vinv = linalg::inverse(&v).ok_or_else(|| LieError::Consistency("eigenvectors are dependent".into()))?;
    let d = linalg::transpose(&scaled);
    let m = linalg::mat_mul(&d, &vinv);
    Ok(LieAut { matrix: m, order: order as u32 })
}

/// Subalgebra given by a row-reduced spanning set.
fn span_elements(basis: &[Vector], coeffs: &[CycScalar], n: usize) -> Vector {
    let mut v = linalg::zeros(n);
    for (c, b) in coeffs.iter().zip(basis) {
        linalg::axpy(&mut v, c, b);
    }
    v
}

/// Centralizer of `xs` inside the subspace spanned by `within`.
pub fn centralizer_in(l: &StructLie, within: &[Vector], xs: &[Vector]) -> Vec<Vector> {
    let n = l.dim();
    if within.is_empty() {
        return vec![];
    }
    let mut rows: Matrix = Vec::new();
    for x in xs {
        let cols: Vec<Vector> = within.iter().map(|w| l.bracket_unchecked(x, w)).collect();
        rows.extend(linalg::transpose(&cols));
    }
    if rows.is_empty() {
        return within.to_vec();
    }
    let ker = linalg::kernel(&rows, within.len());
    let vecs: Vec<Vector> = ker.iter().map(|c| span_elements(within, c, n)).collect();
    linalg::span_basis(&vecs)
}

/// Normalizer of the subspace `h` inside the subspace `within`.
pub fn normalizer_in(l: &StructLie, within: &[Vector], h: &[Vector]) -> Vec<Vector> {
    let n = l.dim();
    let k = within.len();
    let hd = h.len();
    // Unknowns: c (k) and d (hd * hd); equations [sum c_j w_j, h_a] - sum_b d_ab h_b = 0.
    let nvars = k + hd * hd;
    let mut rows: Matrix = Vec::new();
    for (a, ha) in h.iter().enumerate() {
        let brs: Vec<Vector> = within.iter().map(|w| l.bracket_unchecked(w, ha)).collect();
        for comp in 0..n {
            let mut row = linalg::zeros(nvars);
            for j in 0..k {
                row[j] = brs[j][comp].clone();
            }
            for (b, hb) in h.iter().enumerate() {
                row[k + a * hd + b] = -&hb[comp];
            }
            rows.push(row);
        }
    }
    let ker = linalg::kernel(&rows, nvars);
    let vecs: Vec<Vector> = ker.iter().map(|c| span_elements(within, &c[..k], n)).collect();
    linalg::span_basis(&vecs)
}

#[derive(Debug, Clone)]
pub struct CartanResult {
    pub basis: Vec<Vector>,
    pub seed: u64,
    pub samples: usize,
}

fn fixed_subspace(within: &[Vector], s: &LieAut, n: usize) -> Vec<Vector> {
    let cols: Vec<Vector> = within.iter().map(|b| linalg::sub(&s.apply(b), b)).collect();
    let ker = linalg::kernel(&linalg::transpose(&cols), within.len());
    let vecs: Vec<Vector> = ker.iter().map(|c| span_elements(within, c, n)).collect();
    linalg::span_basis(&vecs)
}

fn acts_trivially(within: &[Vector], s: &LieAut) -> bool {
    within.iter().all(|b| &s.apply(b) == b)
}

fn certify(l: &StructLie, within: &[Vector], h: &[Vector]) -> Result<(), String> {
    for a in h {
        for b in h {
            if !linalg::is_zero_vec(&l.bracket_unchecked(a, b)) {
                return Err("candidate is not abelian".into());
            }
        }
    }
    if centralizer_in(l, within, h).len() != h.len() {
        return Err("candidate is not self-centralizing".into());
    }
    if normalizer_in(l, within, h).len() != h.len() {
        return Err("candidate is not self-normalizing".into());
    }
    Ok(())
}

fn sample_cartan(l: &StructLie, within: &[Vector], rng: &mut ChaCha8Rng, used: &mut usize) -> Result<Vec<Vector>, LieError> {
    if within.is_empty() {
        return Ok(vec![]);
    }
    let n = l.dim();
    let mut last_reason = String::new();
    for budget in [32usize, 64] {
        let mut best: Option<(usize, Vec<Vector>)> = None;
        for _ in 0..budget {
            *used += 1;
            let coeffs: Vec<CycScalar> = (0..within.len()).map(|_| CycScalar::from_int(rng.gen_range(-9..=9))).collect();
            let x = span_elements(within, &coeffs, n);
            let c = centralizer_in(l, within, &[x]);
            if best.as_ref().map_or(true, |(d, _)| c.len() < *d) {
                best = Some((c.len(), c));
            }
        }
        let (_, h) = best.expect("budget is positive");
        match certify(l, within, &h) {
            Ok(()) => return Ok(h),
            Err(r) => last_reason = r,
        }
    }
    Err(LieError::Certification { samples: *used, reason: last_reason })
}

fn cartan_rec(l: &StructLie, within: &[Vector], autos: &[LieAut], rng: &mut ChaCha8Rng, used: &mut usize) -> Result<Vec<Vector>, LieError> {
    let active: Vec<&LieAut> = autos.iter().filter(|s| !acts_trivially(within, s)).collect();
    let Some((first, rest)) = active.split_first() else {
        return sample_cartan(l, within, rng, used);
    };
    let fixed = fixed_subspace(within, first, l.dim());
    let rest: Vec<LieAut> = rest.iter().map(|s| (*s).clone()).collect();
    let hf = cartan_rec(l, &fixed, &rest, rng, used)?;
    let h = centralizer_in(l, within, &hf);
    certify(l, within, &h).map_err(|reason| LieError::Certification { samples: *used, reason })?;
    Ok(h)
}

/// Cartan subalgebra of a reductive `l`, setwise invariant under commuting finite-order automorphisms.
pub fn invariant_cartan(l: &StructLie, autos: &[LieAut], seed: u64) -> Result<CartanResult, LieError> {
    for (a, s) in autos.iter().enumerate() {
        for t in &autos[a + 1..] {
            if !s.commutes_with(t) {
                return Err(LieError::Consistency("automorphisms do not commute".into()));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used = 0;
    let all: Vec<Vector> = (0..l.dim()).map(|i| l.basis_vec(i)).collect();
    let h = cartan_rec(l, &all, autos, &mut rng, &mut used)?;
    for s in autos {
        for v in &h {
            if !linalg::in_span(&h, &s.apply(v)) {
                return Err(LieError::Certification { samples: used, reason: "result is not invariant".into() });
            }
        }
    }
    Ok(CartanResult { basis: h, seed, samples: used })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn so_dims_and_bracket() {
        let so5 = build_so(&labels(5)).unwrap();
        assert_eq!(so5.dim(), 10);
        assert_eq!(build_so(&labels(6)).unwrap().dim(), 15);
        let e12 = so5.e(0, 1).unwrap();
        let e23 = so5.e(1, 2).unwrap();
        assert_eq!(so5.bracket(&e12, &e23).unwrap(), so5.e(0, 2).unwrap());
        assert!(linalg::is_zero_vec(&so5.bracket(&e12, &e12).unwrap()));
        assert!(build_so(&labels(2)).is_err());
        assert!(matches!(so5.bracket(&e12, &[CycScalar::one()]), Err(LieError::Shape { .. })));
    }

    #[test]
    fn so_form_is_minus_identity_in_e_basis() {
        let so5 = build_so(&labels(5)).unwrap();
        for i in 0..10 {
            for j in 0..10 {
                let want = if i == j { CycScalar::from_int(-1) } else { CycScalar::zero() };
                assert_eq!(so5.form[i][j], want);
            }
        }
        assert_eq!(so5.dual_coxeter, rat_int(3));
        assert_eq!(build_so(&labels(6)).unwrap().dual_coxeter, rat_int(4));
    }

    #[test]
    fn sign_automorphisms() {
        let so5 = build_so(&labels(5)).unwrap();
        let id = conj_automorphism(&so5, &[1, 1, 1, 1, 1]).unwrap();
        assert_eq!(id, LieAut::identity(10));
        let s0 = conj_automorphism(&so5, &[1, 1, 1, 1, -1]).unwrap();
        assert_eq!(s0.apply(&so5.e(0, 1).unwrap()), so5.e(0, 1).unwrap());
        assert_eq!(s0.apply(&so5.e(0, 4).unwrap()), linalg::scale(&CycScalar::from_int(-1), &so5.e(0, 4).unwrap()));
        assert!(conj_automorphism(&so5, &[1, 1]).is_err());
    }

    #[test]
    fn gradings() {
        let so5 = build_so(&labels(5)).unwrap();
        let minus = CycScalar::from_int(-1);
        let g = simultaneous_grading(&so5, &[LieAut::identity(10)], &[CycScalar::one()]).unwrap();
        assert_eq!(g.components.len(), 1);
        let s0 = conj_automorphism(&so5, &[1, 1, 1, 1, -1]).unwrap();
        let g = simultaneous_grading(&so5, &[s0], &[minus.clone()]).unwrap();
        assert_eq!(g.dims().values().copied().collect::<Vec<_>>(), vec![6, 4]);
    }

    #[test]
    fn noncommuting_autos_rejected() {
        let so3 = build_so(&labels(3)).unwrap();
        // Rotation swapping e12 and e13 up to sign does not commute with a sign flip on index 2.
        let mut m = linalg::zeros(3).iter().map(|_| linalg::zeros(3)).collect::<Matrix>();
        m[1][0] = CycScalar::one();
        m[0][1] = CycScalar::one();
        m[2][2] = CycScalar::from_int(-1);
        let swap = LieAut { matrix: m, order: 2 };
        let flip = conj_automorphism(&so3, &[1, -1, 1]).unwrap();
        let minus = CycScalar::from_int(-1);
        assert!(matches!(simultaneous_grading(&so3, &[swap, flip], &[minus.clone(), minus]), Err(LieError::Consistency(_))));
    }

    #[test]
    fn inner_parity_rule() {
        assert!(is_inner_sign_aut(&[1, 1, 1, 1, -1]));
        assert!(is_inner_sign_aut(&[1, 1, 1, -1, -1]));
        assert!(!is_inner_sign_aut(&[1, 1, 1, -1, 1, 1]));
        assert!(is_inner_sign_aut(&[1, 1, 1, 1, -1, -1]));
    }

    #[test]
    fn exp_identity_at_zero() {
        let so5 = build_so(&labels(5)).unwrap();
        let h = linalg::scale(&CycScalar::i(), &so5.e(0, 1).unwrap());
        let a = exp_ad_rational(&so5, &h, &rat_int(0)).unwrap();
        assert_eq!(a.matrix, linalg::identity(10));
        // e_12 alone has ad-eigenvalues +-i, not integers after scaling by 1.
        assert!(matches!(exp_ad_rational(&so5, &so5.e(0, 1).unwrap(), &rat_int(1)), Err(LieError::Unsupported(_))));
    }

    #[test]
    fn json_roundtrip() {
        let so4 = build_so(&labels(4)).unwrap();
        let j = so4.to_json();
        let back = StructLie::from_json(&serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap()).unwrap();
        assert_eq!(back.sc, so4.sc);
        assert_eq!(back.form, so4.form);
    }
}
