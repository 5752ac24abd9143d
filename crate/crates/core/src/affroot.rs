//! Affine root systems of the untwisted loop algebras behind the two packaged
//! examples, the untwisting map for an inner `sigma_0`, the root action of a
//! lifted automorphism, and its factorization into Weyl word and diagram part.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::cycfield::{rat_int, CycScalar, Rat};
use crate::liestruct::{LieAut, StructLie};
use crate::linalg::{self, Vector};
use crate::presets::{Chevalley, PresetData, PresetName};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AffRootError {
    #[error("invalid root system: {0}")]
    RootSystem(String),
    #[error("image of {0} does not lie in a single root space")]
    NotCartanNormalizing(String),
    #[error("untwisting needs sigma_0 realized as exp(pi i t ad h): {0}")]
    Precondition(String),
    #[error("factorization failed: {0}")]
    Factorization(String),
    #[error("weight labels must be non-negative: {0:?}")]
    NotDominant(Vec<i64>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AffineRootSystem {
    pub name: String,
    pub cartan: Vec<Vec<i64>>,
    /// `delta = sum_i marks[i] alpha_i`.
    pub marks: Vec<i64>,
    pub labels: Vec<String>,
}

impl AffineRootSystem {
    pub fn new(name: &str, cartan: Vec<Vec<i64>>, marks: Vec<i64>) -> Result<Self, AffRootError> {
        let n = marks.len();
        if cartan.len() != n || cartan.iter().any(|r| r.len() != n) {
            return Err(AffRootError::RootSystem("cartan shape does not match marks".into()));
        }
        for (i, row) in cartan.iter().enumerate() {
            if row[i] != 2 {
                return Err(AffRootError::RootSystem(format!("diagonal entry {i} is not 2")));
            }
            if row.iter().zip(&marks).map(|(a, m)| a * m).sum::<i64>() != 0 {
                return Err(AffRootError::RootSystem("marks are not a null vector".into()));
            }
        }
        let finite: Vec<Vector> = cartan[1..].iter().map(|r| r[1..].iter().map(|&x| CycScalar::from_int(x)).collect()).collect();
        if linalg::rank(&finite) != n - 1 {
            return Err(AffRootError::RootSystem("corank is not 1".into()));
        }
        Ok(AffineRootSystem { name: name.into(), cartan, marks, labels: (0..n).map(|i| format!("α{i}")).collect() })
    }

    /// Type `B_2^(1)` with `alpha_1` long, matching the so5 Chevalley data.
    pub fn b2_1() -> Self {
        Self::new("B2(1)", vec![vec![2, -1, 0], vec![-2, 2, -2], vec![0, -1, 2]], vec![1, 2, 1]).expect("valid")
    }

    /// Type `D_3^(1)`: the 4-cycle `0-1-2-3-0`.
    pub fn d3_1() -> Self {
        Self::new(
            "D3(1)",
            vec![vec![2, -1, 0, -1], vec![-1, 2, -1, 0], vec![0, -1, 2, -1], vec![-1, 0, -1, 2]],
            vec![1, 1, 1, 1],
        )
        .expect("valid")
    }

    pub fn for_preset(name: PresetName) -> Self {
        match name {
            PresetName::BabyTkk => Self::b2_1(),
            PresetName::FullTkk => Self::d3_1(),
        }
    }

    pub fn rank(&self) -> usize {
        self.marks.len()
    }

    pub fn delta(&self) -> Vec<i64> {
        self.marks.clone()
    }

    pub fn simple(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    /// `<beta, alpha_j^vee>`.
    pub fn pairing(&self, beta: &[i64], j: usize) -> i64 {
        beta.iter().enumerate().map(|(i, c)| c * self.cartan[j][i]).sum()
    }

    pub fn reflect(&self, j: usize, beta: &[i64]) -> Vec<i64> {
        let p = self.pairing(beta, j);
        let mut out = beta.to_vec();
        out[j] -= p;
        out
    }

    /// Root written through the marks as `k delta + finite part`.
    pub fn display(&self, beta: &[i64]) -> String {
        let k = beta[0];
        let mut parts = Vec::new();
        if k != 0 {
            parts.push((k, "δ".to_string()));
        }
        for i in 1..self.rank() {
            let c = beta[i] - k * self.marks[i];
            if c != 0 {
                parts.push((c, self.labels[i].clone()));
            }
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (n, (c, name)) in parts.into_iter().enumerate() {
            let sign = if c < 0 { "-" } else if n > 0 { "+" } else { "" };
            let mag = c.abs();
            if mag == 1 {
                s.push_str(&format!("{sign}{name}"));
            } else {
                s.push_str(&format!("{sign}{mag}{name}"));
            }
        }
        s
    }

    /// Parses `"2δ-α2"` style input.
    pub fn parse_root(&self, s: &str) -> Result<Vec<i64>, AffRootError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut delta_k = 0i64;
        let mut finite = vec![0i64; self.rank()];
        let mut rest = t.as_str();
        let bad = || AffRootError::RootSystem(format!("cannot parse root {s:?}"));
        while !rest.is_empty() {
            let (sign, r) = match rest.chars().next() {
                Some('-') => (-1, &rest[1..]),
                Some('+') => (1, &rest[1..]),
                _ => (1, rest),
            };
            let digits: String = r.chars().take_while(|c| c.is_ascii_digit()).collect();
            let coef = if digits.is_empty() { 1 } else { digits.parse::<i64>().map_err(|_| bad())? };
            let r = &r[digits.len()..];
            if let Some(r2) = r.strip_prefix('δ') {
                delta_k += sign * coef;
                rest = r2;
            } else if let Some(r2) = r.strip_prefix('α') {
                let idx: String = r2.chars().take_while(|c| c.is_ascii_digit()).collect();
                let i: usize = idx.parse().map_err(|_| bad())?;
                if i >= self.rank() {
                    return Err(bad());
                }
                finite[i] += sign * coef;
                rest = &r2[idx.len()..];
            } else {
                return Err(bad());
            }
        }
        for (f, m) in finite.iter_mut().zip(&self.marks) {
            *f += delta_k * m;
        }
        Ok(finite)
    }

    pub fn is_positive(&self, beta: &[i64]) -> bool {
        beta.iter().all(|&c| c >= 0) && beta.iter().any(|&c| c > 0)
    }

    pub fn is_negative(&self, beta: &[i64]) -> bool {
        beta.iter().all(|&c| c <= 0) && beta.iter().any(|&c| c < 0)
    }
}

/// Linear map on the root lattice, by images of `alpha_0 .. alpha_l`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootAut {
    pub images: Vec<Vec<i64>>,
    /// Set when the map would need the Chevalley involution.
    pub chevalley_involution: bool,
}

impl RootAut {
    pub fn identity(n: usize) -> Self {
        RootAut { images: (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect(), chevalley_involution: false }
    }

    pub fn reflection(rs: &AffineRootSystem, j: usize) -> Self {
        RootAut { images: (0..rs.rank()).map(|i| rs.reflect(j, &rs.simple(i))).collect(), chevalley_involution: false }
    }

    pub fn from_perm(perm: &[usize]) -> Self {
        let n = perm.len();
        RootAut { images: perm.iter().map(|&p| (0..n).map(|j| i64::from(j == p)).collect()).collect(), chevalley_involution: false }
    }

    pub fn apply(&self, beta: &[i64]) -> Vec<i64> {
        let n = self.images.len();
        let mut out = vec![0; n];
        for (c, img) in beta.iter().zip(&self.images) {
            for k in 0..n {
                out[k] += c * img[k];
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RootAut) -> RootAut {
        RootAut {
            images: other.images.iter().map(|b| self.apply(b)).collect(),
            chevalley_involution: self.chevalley_involution ^ other.chevalley_involution,
        }
    }

    pub fn fixes_delta(&self, rs: &AffineRootSystem) -> bool {
        self.apply(&rs.delta()) == rs.delta()
    }

    /// `(f a | f b) = (a | b)` for the symmetrized Cartan form.
    pub fn preserves_form(&self, rs: &AffineRootSystem) -> bool {
        let g = symmetrized_gram(rs);
        let n = rs.rank();
        let pair = |a: &[i64], b: &[i64]| -> Rat {
            let mut s = rat_int(0);
            for i in 0..n {
                for j in 0..n {
                    s += &g[i][j] * rat_int(a[i] * b[j]);
                }
            }
            s
        };
        (0..n).all(|i| (0..n).all(|j| pair(&self.images[i], &self.images[j]) == g[i][j]))
    }
}

/// `(alpha_i | alpha_j) = a_ij * (alpha_i|alpha_i)/2` with lengths chosen
/// from the marks of the dual system so that the matrix is symmetric.
fn symmetrized_gram(rs: &AffineRootSystem) -> Vec<Vec<Rat>> {
    let n = rs.rank();
    // Solve d_i a_ij = d_j a_ji starting from d_0 = 1 along the diagram.
    let mut d: Vec<Option<Rat>> = vec![None; n];
    d[0] = Some(rat_int(1));
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in 0..n {
                if let (Some(di), None) = (d[i].clone(), d[j].clone()) {
                    if rs.cartan[i][j] != 0 {
                        d[j] = Some(di * rat_int(rs.cartan[i][j]) / rat_int(rs.cartan[j][i]));
                        changed = true;
                    }
                }
            }
        }
    }
    (0..n)
        .map(|i| (0..n).map(|j| d[i].clone().unwrap_or_else(|| rat_int(1)) * rat_int(rs.cartan[i][j])).collect())
        .collect()
}

/// Permutation of the simple roots that preserves the Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramAut {
    pub perm: Vec<usize>,
}

impl DiagramAut {
    pub fn identity(n: usize) -> Self {
        DiagramAut { perm: (0..n).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn is_valid(&self, rs: &AffineRootSystem) -> bool {
        let n = rs.rank();
        let mut seen = vec![false; n];
        for &p in &self.perm {
            if p >= n || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        (0..n).all(|i| (0..n).all(|j| rs.cartan[self.perm[i]][self.perm[j]] == rs.cartan[i][j]))
    }

    pub fn describe(&self) -> String {
        let mut parts = Vec::new();
        let mut done = vec![false; self.perm.len()];
        for i in 0..self.perm.len() {
            if done[i] || self.perm[i] == i {
                continue;
            }
            let mut cyc = vec![i];
            done[i] = true;
            let mut j = self.perm[i];
            while j != i {
                cyc.push(j);
                done[j] = true;
                j = self.perm[j];
            }
            parts.push(format!("({})", cyc.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")));
        }
        if parts.is_empty() {
            "id".into()
        } else {
            parts.join("")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeylWord {
    /// Leftmost letter acts last.
    pub letters: Vec<usize>,
}

impl WeylWord {
    pub fn action(&self, rs: &AffineRootSystem) -> RootAut {
        self.letters.iter().fold(RootAut::identity(rs.rank()), |acc, &i| acc.compose(&RootAut::reflection(rs, i)))
    }

    pub fn describe(&self) -> String {
        if self.letters.is_empty() {
            return "1".into();
        }
        self.letters.iter().map(|i| format!("r{i}")).collect::<Vec<_>>().join("")
    }
}

/// Writes `f = w ∘ gamma` by greedy height descent.
pub fn factorize_aut(rs: &AffineRootSystem, f: &RootAut) -> Result<(WeylWord, DiagramAut), AffRootError> {
    if !f.fixes_delta(rs) {
        return Err(AffRootError::Factorization("map does not fix delta".into()));
    }
    if f.chevalley_involution {
        return Err(AffRootError::Factorization("map needs the Chevalley involution".into()));
    }
    let n = rs.rank();
    let mut g = f.clone();
    let mut stripped = Vec::new();
    let limit = 10_000;
    while let Some(i) = (0..n).find(|&i| rs.is_negative(&g.images[i])) {
        g = g.compose(&RootAut::reflection(rs, i));
        stripped.push(i);
        if stripped.len() > limit {
            return Err(AffRootError::Factorization("descent did not terminate".into()));
        }
    }
    // g now sends simple roots to positive roots, so it must permute them.
    let mut perm = Vec::with_capacity(n);
    for img in &g.images {
        match (0..n).find(|&j| *img == rs.simple(j)) {
            Some(j) => perm.push(j),
            None => return Err(AffRootError::Factorization(format!("residual image {} is not simple", rs.display(img)))),
        }
    }
    let gamma = DiagramAut { perm };
    if !gamma.is_valid(rs) {
        return Err(AffRootError::Factorization("residual permutation is not a diagram symmetry".into()));
    }
    // f = gamma r_{i_k} ... r_{i_1} = r_{gamma(i_k)} ... r_{gamma(i_1)} gamma.
    let letters = stripped.iter().rev().map(|&i| gamma.perm[i]).collect();
    let w = WeylWord { letters };
    let check = w.action(rs).compose(&RootAut::from_perm(&gamma.perm));
    if check.images != f.images {
        return Err(AffRootError::Factorization("recomposition does not reproduce the map".into()));
    }
    Ok((w, gamma))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ThinShape {
    TwoCopies,
    Eigensplit,
}

impl fmt::Display for ThinShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThinShape::TwoCopies => "TWO_COPIES",
            ThinShape::Eigensplit => "EIGENSPLIT",
        })
    }
}

/// `TwoCopies` iff the diagram symmetry moves the weight's labels.
pub fn thin_covering_shape(rs: &AffineRootSystem, gamma: &DiagramAut, labels: &[i64]) -> Result<ThinShape, AffRootError> {
    if labels.len() != rs.rank() {
        return Err(AffRootError::RootSystem("wrong number of weight labels".into()));
    }
    if labels.iter().any(|&x| x < 0) {
        return Err(AffRootError::NotDominant(labels.to_vec()));
    }
    let moved = (0..labels.len()).any(|i| labels[gamma.perm[i]] != labels[i]);
    Ok(if moved { ThinShape::TwoCopies } else { ThinShape::Eigensplit })
}

/// Untwisting map for `sigma_0 = exp(2 pi i ad H)`: `t_0^j e_alpha` goes to
/// `t_0^{j + alpha(H)} e_alpha`.
#[derive(Debug, Clone)]
pub struct Theta {
    pub h: Vector,
    /// `ad H` eigenspaces of the finite algebra.
    pub eigenspaces: Vec<(Rat, Vec<Vector>)>,
}

/// Loop element `sum t_0^{j} x_j + c C_aff`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LoopElement {
    pub terms: BTreeMap<Rat, Vector>,
    pub central: CycScalar,
}

impl LoopElement {
    pub fn term(j: Rat, x: Vector) -> Self {
        let mut e = LoopElement::default();
        e.terms.insert(j, x);
        e
    }

    fn push(&mut self, j: Rat, x: &[CycScalar]) {
        if linalg::is_zero_vec(x) {
            return;
        }
        let slot = self.terms.entry(j.clone()).or_insert_with(|| linalg::zeros(x.len()));
        *slot = linalg::add(slot, x);
        if linalg::is_zero_vec(slot) {
            self.terms.remove(&j);
        }
    }
}

fn eigenvalue(l: &StructLie, h: &[CycScalar], y: &[CycScalar]) -> Option<CycScalar> {
    let hy = l.bracket_unchecked(h, y);
    let k = y.iter().position(|c| !c.is_zero())?;
    let lam = hy[k].try_div(&y[k]).ok()?;
    (linalg::scale(&lam, y) == hy).then_some(lam)
}

impl Theta {
    /// `sigma_0 = exp(pi i t ad h)`, i.e. `H = t h / 2`. `chev` supplies the
    /// Cartan subalgebra used to enumerate candidate eigenvalues.
    pub fn new(l: &StructLie, chev: &Chevalley, h: &[CycScalar], t: &Rat, sigma0: &LieAut) -> Result<Self, AffRootError> {
        let realized = crate::liestruct::exp_ad_rational(l, h, t).map_err(|e| AffRootError::Precondition(e.to_string()))?;
        if realized.matrix != sigma0.matrix {
            return Err(AffRootError::Precondition("exp(pi i t ad h) differs from sigma_0".into()));
        }
        let hh = linalg::scale(&CycScalar::from_rat(t / rat_int(2)), h);
        let rank = chev.h.len();
        // alpha_k(H) for the simple roots.
        let simple_vals: Vec<Rat> = chev
            .e
            .iter()
            .map(|e| eigenvalue(l, &hh, e).and_then(|x| x.as_rational()).ok_or_else(|| AffRootError::Precondition("H is not rational on simple roots".into())))
            .collect::<Result<_, _>>()?;
        let mut cands = std::collections::BTreeSet::new();
        let span = 3i64;
        let mut idx = vec![-span; rank];
        loop {
            let v: Rat = idx.iter().zip(&simple_vals).map(|(c, a)| rat_int(*c) * a).sum();
            cands.insert(v);
            let mut k = 0;
            while k < rank && idx[k] == span {
                idx[k] = -span;
                k += 1;
            }
            if k == rank {
                break;
            }
            idx[k] += 1;
        }
        let ad = l.ad_matrix(&hh);
        let n = l.dim();
        let mut eigenspaces = Vec::new();
        let mut total = 0;
        for lam in cands {
            let shifted: linalg::Matrix = (0..n)
                .map(|i| (0..n).map(|j| if i == j { &ad[i][j] - &CycScalar::from_rat(lam.clone()) } else { ad[i][j].clone() }).collect())
                .collect();
            let ker = linalg::kernel(&shifted, n);
            if !ker.is_empty() {
                total += ker.len();
                eigenspaces.push((lam, ker));
            }
        }
        if total != n {
            return Err(AffRootError::Precondition("ad H is not diagonalizable over the candidate eigenvalues".into()));
        }
        Ok(Theta { h: hh, eigenspaces })
    }

    pub fn for_preset(p: &PresetData) -> Result<Self, AffRootError> {
        let (h, t) = &p.sigma0_generator;
        Theta::new(&p.algebra, &p.chevalley, h, t, &p.sigmas[0])
    }

    fn split(&self, x: &[CycScalar]) -> Vec<(Rat, Vector)> {
        let cols: Vec<Vector> = self.eigenspaces.iter().flat_map(|(_, b)| b.iter().cloned()).collect();
        let coef = linalg::solve_combination(&cols, x).expect("eigenspaces span the algebra");
        let mut out = Vec::new();
        let mut k = 0;
        for (lam, basis) in &self.eigenspaces {
            let mut v = linalg::zeros(x.len());
            for b in basis {
                linalg::axpy(&mut v, &coef[k], b);
                k += 1;
            }
            if !linalg::is_zero_vec(&v) {
                out.push((lam.clone(), v));
            }
        }
        out
    }

    fn shift(&self, l: &StructLie, x: &LoopElement, sign: i64) -> LoopElement {
        let mut out = LoopElement { terms: BTreeMap::new(), central: x.central.clone() };
        for (j, v) in &x.terms {
            for (lam, comp) in self.split(v) {
                out.push(j + rat_int(sign) * &lam, &comp);
                if lam.is_zero() && j.is_zero() {
                    let c = l.form_eval(&self.h, &comp);
                    out.central = &out.central + &(&c * &CycScalar::from_int(sign));
                }
            }
        }
        out
    }

    pub fn apply(&self, l: &StructLie, x: &LoopElement) -> LoopElement {
        self.shift(l, x, 1)
    }

    pub fn apply_inverse(&self, l: &StructLie, x: &LoopElement) -> LoopElement {
        self.shift(l, x, -1)
    }

    pub fn exponent_of(&self, l: &StructLie, y: &[CycScalar]) -> Option<Rat> {
        eigenvalue(l, &self.h, y).and_then(|x| x.as_rational())
    }
}

/// Image of one Chevalley generator under `theta^{-1} sigma theta`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorImage {
    pub t0_exponent: Rat,
    pub vector: Vector,
    /// Finite root of `vector` in simple-root coordinates `alpha_1..alpha_l`.
    pub finite_root: Vec<i64>,
}

fn finite_root(l: &StructLie, chev: &Chevalley, y: &[CycScalar]) -> Option<Vec<i64>> {
    let vals: Vec<Rat> = chev.h.iter().map(|h| eigenvalue(l, h, y).and_then(|x| x.as_rational())).collect::<Option<_>>()?;
    // beta(h_j) = sum_k b_k A_jk.
    let cols: Vec<Vector> = (0..chev.h.len()).map(|k| chev.cartan.iter().map(|row| CycScalar::from_int(row[k])).collect()).collect();
    let target: Vector = vals.into_iter().map(CycScalar::from_rat).collect();
    let b = linalg::solve_combination(&cols, &target)?;
    b.iter().map(|c| c.as_integer()).collect()
}

/// Lowest root vector, the finite part of `e_0 = t_0 ⊗ e_{-theta}`.
pub fn lowest_root_vector(l: &StructLie, chev: &Chevalley, marks: &[i64]) -> Option<Vector> {
    let n = l.dim();
    let mut rows = Vec::new();
    for (j, h) in chev.h.iter().enumerate() {
        let val: i64 = (1..marks.len()).map(|k| -marks[k] * chev.cartan[j][k - 1]).sum();
        let ad = l.ad_matrix(h);
        for i in 0..n {
            rows.push((0..n).map(|c| if c == i { &ad[i][c] - &CycScalar::from_int(val) } else { ad[i][c].clone() }).collect::<Vector>());
        }
    }
    let ker = linalg::kernel(&rows, n);
    (ker.len() == 1).then(|| ker[0].clone())
}

pub fn induced_generator_image(
    l: &StructLie,
    chev: &Chevalley,
    theta: &Theta,
    sigma: &LieAut,
    t0_exponent: &Rat,
    y: &[CycScalar],
    name: &str,
) -> Result<GeneratorImage, AffRootError> {
    let a_h = theta.exponent_of(l, y).ok_or_else(|| AffRootError::NotCartanNormalizing(name.into()))?;
    let z = sigma.apply(y);
    let b_h = theta.exponent_of(l, &z).ok_or_else(|| AffRootError::NotCartanNormalizing(name.into()))?;
    let root = finite_root(l, chev, &z).ok_or_else(|| AffRootError::NotCartanNormalizing(name.into()))?;
    Ok(GeneratorImage { t0_exponent: t0_exponent + a_h - b_h, vector: z, finite_root: root })
}

/// Root action of `theta^{-1} sigma theta` on `alpha_0 .. alpha_l`, with the
/// generator-level images it was read from.
pub fn induced_root_action(
    rs: &AffineRootSystem,
    l: &StructLie,
    chev: &Chevalley,
    theta: &Theta,
    sigma: &LieAut,
) -> Result<(RootAut, Vec<GeneratorImage>), AffRootError> {
    let mut gens = Vec::new();
    let e0 = lowest_root_vector(l, chev, &rs.marks).ok_or_else(|| AffRootError::RootSystem("no unique lowest root vector".into()))?;
    gens.push(induced_generator_image(l, chev, theta, sigma, &rat_int(1), &e0, "e0")?);
    for (i, e) in chev.e.iter().enumerate() {
        gens.push(induced_generator_image(l, chev, theta, sigma, &rat_int(0), e, &format!("e{}", i + 1))?);
    }
    let mut images = Vec::new();
    for g in &gens {
        let k = g.t0_exponent.to_integer().to_i64().filter(|_| g.t0_exponent.is_integer()).ok_or_else(|| AffRootError::NotCartanNormalizing("fractional t0 exponent".into()))?;
        // k delta + sum b_i alpha_i in the alpha_0.. basis.
        let mut v: Vec<i64> = rs.marks.iter().map(|m| k * m).collect();
        for (i, b) in g.finite_root.iter().enumerate() {
            v[i + 1] += b;
        }
        images.push(v);
    }
    let f = RootAut { images, chevalley_involution: false };
    if !f.fixes_delta(rs) {
        return Err(AffRootError::NotCartanNormalizing("induced map moves delta".into()));
    }
    Ok((f, gens))
}

/// Everything the packaged example reports about `sigma_1`.
#[derive(Debug, Clone, Serialize)]
pub struct FactorizationReport {
    pub example: String,
    pub root_system: String,
    pub images: BTreeMap<String, String>,
    pub word: String,
    pub diagram_aut: String,
    pub reference_word: String,
    pub reference_diagram_aut: String,
    pub matches_reference: bool,
    pub square_is_identity: bool,
    pub e1_image: String,
    pub uses_chevalley_involution: bool,
}

/// The printed factorizations, as `(word, diagram permutation)`.
pub fn reference_factorization(name: PresetName) -> (WeylWord, DiagramAut) {
    match name {
        PresetName::BabyTkk => (WeylWord { letters: vec![1, 2, 0, 1] }, DiagramAut { perm: vec![2, 1, 0] }),
        PresetName::FullTkk => (WeylWord { letters: vec![3, 0, 2, 1] }, DiagramAut { perm: vec![2, 3, 0, 1] }),
    }
}

pub fn factorize_preset(p: &PresetData) -> Result<FactorizationReport, AffRootError> {
    let rs = AffineRootSystem::for_preset(p.name);
    let theta = Theta::for_preset(p)?;
    let (f, gens) = induced_root_action(&rs, &p.algebra, &p.chevalley, &theta, &p.sigmas[1])?;
    let (w, gamma) = factorize_aut(&rs, &f)?;
    let (rw, rg) = reference_factorization(p.name);
    let reference = rw.action(&rs).compose(&RootAut::from_perm(&rg.perm));
    let images = (0..rs.rank()).map(|i| (rs.labels[i].clone(), rs.display(&f.images[i]))).collect();
    let g1 = &gens[1];
    let f1 = &p.chevalley.f[0];
    let e1_image = if let Some(k) = f1.iter().position(|c| !c.is_zero()) {
        let c = g1.vector[k].try_div(&f1[k]).expect("nonzero");
        if linalg::scale(&c, f1) == g1.vector {
            format!("{c}*t0^{}⊗f1", g1.t0_exponent)
        } else {
            format!("t0^{}⊗{:?}", g1.t0_exponent, g1.vector)
        }
    } else {
        "0".into()
    };
    Ok(FactorizationReport {
        example: p.name.as_str().into(),
        root_system: rs.name.clone(),
        images,
        word: w.describe(),
        diagram_aut: gamma.describe(),
        reference_word: rw.describe(),
        reference_diagram_aut: rg.describe(),
        matches_reference: reference == f,
        square_is_identity: f.compose(&f) == RootAut::identity(rs.rank()),
        e1_image,
        uses_chevalley_involution: f.chevalley_involution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycfield::rat;
    use crate::presets::load;

    #[test]
    fn cartan_checks() {
        assert!(AffineRootSystem::new("x", vec![vec![2, -1], vec![-1, 2]], vec![1, 1]).is_err());
        let b = AffineRootSystem::b2_1();
        assert_eq!(b.display(&b.delta()), "δ");
        assert_eq!(b.parse_root("2δ-α2").unwrap(), vec![2, 4, 1]);
        assert_eq!(b.display(&[2, 4, 1]), "2δ-α2");
    }

    #[test]
    fn reflections_square_to_one() {
        for rs in [AffineRootSystem::b2_1(), AffineRootSystem::d3_1()] {
            for i in 0..rs.rank() {
                let r = RootAut::reflection(&rs, i);
                assert_eq!(r.compose(&r), RootAut::identity(rs.rank()));
                assert!(r.fixes_delta(&rs));
                assert!(r.preserves_form(&rs));
            }
        }
    }

    #[test]
    fn identity_factorizes_trivially() {
        let rs = AffineRootSystem::b2_1();
        let (w, g) = factorize_aut(&rs, &RootAut::identity(3)).unwrap();
        assert!(w.letters.is_empty());
        assert!(g.is_identity());
    }

    #[test]
    fn theta_exponents_and_inverse() {
        let p = load(PresetName::BabyTkk).unwrap();
        let th = Theta::for_preset(&p).unwrap();
        assert_eq!(th.exponent_of(&p.algebra, &p.chevalley.e[0]), Some(rat(-1, 2)));
        let x = LoopElement::term(rat_int(0), p.chevalley.e[0].clone());
        let y = th.apply(&p.algebra, &x);
        assert_eq!(y.terms.keys().cloned().collect::<Vec<_>>(), vec![rat(-1, 2)]);
        for k in 0..p.algebra.dim() {
            for j in [rat_int(0), rat_int(1), rat(1, 2)] {
                let x = LoopElement::term(j, p.algebra.basis_vec(k));
                assert_eq!(th.apply_inverse(&p.algebra, &th.apply(&p.algebra, &x)), x);
            }
        }
        let c = LoopElement { terms: BTreeMap::new(), central: CycScalar::one() };
        assert_eq!(th.apply(&p.algebra, &c), c);
    }

    #[test]
    fn theta_rejects_unrealized_sigma() {
        let p = load(PresetName::BabyTkk).unwrap();
        let (h, t) = &p.sigma0_generator;
        assert!(matches!(Theta::new(&p.algebra, &p.chevalley, h, t, &p.sigmas[1]), Err(AffRootError::Precondition(_))));
    }

    #[test]
    fn so5_root_images() {
        let p = load(PresetName::BabyTkk).unwrap();
        let rs = AffineRootSystem::b2_1();
        let th = Theta::for_preset(&p).unwrap();
        let (f, gens) = induced_root_action(&rs, &p.algebra, &p.chevalley, &th, &p.sigmas[1]).unwrap();
        assert_eq!(f.images[1], rs.parse_root("-δ-α1").unwrap());
        assert_eq!(f.images[2], rs.parse_root("δ+2α1+α2").unwrap());
        assert_eq!(f.images[0], rs.parse_root("2δ-α2").unwrap());
        assert_eq!(gens[1].t0_exponent, rat_int(-1));
        assert_eq!(gens[1].vector, linalg::scale(&CycScalar::from_int(-1), &p.chevalley.f[0]));
        let id = induced_root_action(&rs, &p.algebra, &p.chevalley, &th, &LieAut::identity(10)).unwrap().0;
        assert_eq!(id, RootAut::identity(3));
    }

    #[test]
    fn preset_factorizations_match() {
        for name in [PresetName::BabyTkk, PresetName::FullTkk] {
            let rep = factorize_preset(&load(name).unwrap()).unwrap();
            assert!(rep.matches_reference, "{rep:?}");
            assert!(rep.square_is_identity);
        }
        let rep = factorize_preset(&load(PresetName::BabyTkk).unwrap()).unwrap();
        assert_eq!(rep.diagram_aut, "(0 2)");
        assert_eq!(rep.e1_image, "-1*t0^-1⊗f1");
        let rep = factorize_preset(&load(PresetName::FullTkk).unwrap()).unwrap();
        assert_eq!(rep.diagram_aut, "(0 2)(1 3)");
    }

    #[test]
    fn thin_shapes() {
        let rs = AffineRootSystem::b2_1();
        let g = DiagramAut { perm: vec![2, 1, 0] };
        assert_eq!(thin_covering_shape(&rs, &g, &[1, 0, 0]).unwrap(), ThinShape::TwoCopies);
        assert_eq!(thin_covering_shape(&rs, &g, &[0, 1, 0]).unwrap(), ThinShape::Eigensplit);
        assert_eq!(thin_covering_shape(&rs, &DiagramAut::identity(3), &[1, 0, 0]).unwrap(), ThinShape::Eigensplit);
        assert!(thin_covering_shape(&rs, &g, &[-1, 0, 0]).is_err());
    }
}
