//! The twisted `gl_N`-Virasoro algebra, its `sl_N` subalgebra, and truncated
//! Verma modules with a prescribed central character.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::cycfield::{rat, rat_int, ser_rat, ser_rats, CycScalar, Rat};
use crate::verma::{GradedAlgebra, ModVec, TopAction, Verma};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GlVirGen {
    L(i64),
    /// `E_ij(m)`, 0-based indices.
    E(usize, usize, i64),
    /// `(E_ii - E_{i+1,i+1})(m)`, used by the `sl_N` version.
    H(usize, i64),
    CSl,
    CHeis,
    CVir,
    CVh,
}

impl fmt::Display for GlVirGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlVirGen::L(n) => write!(f, "L({n})"),
            GlVirGen::E(i, j, m) => write!(f, "E{}{}({m})", i + 1, j + 1),
            GlVirGen::H(i, m) => write!(f, "H{}({m})", i + 1),
            GlVirGen::CSl => f.write_str("C_slN"),
            GlVirGen::CHeis => f.write_str("C_Heis"),
            GlVirGen::CVir => f.write_str("C_Vir"),
            GlVirGen::CVh => f.write_str("C_VH"),
        }
    }
}

pub type GlVirSum = BTreeMap<GlVirGen, CycScalar>;

fn push(out: &mut GlVirSum, g: GlVirGen, c: CycScalar) {
    if c.is_zero() {
        return;
    }
    let s = out.entry(g.clone()).or_insert_with(CycScalar::zero);
    *s += &c;
    if s.is_zero() {
        out.remove(&g);
    }
}

/// Values of the four central elements.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Charges {
    #[serde(serialize_with = "ser_rat")]
    pub c_sl: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub c_heis: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub c_vir: Rat,
    #[serde(serialize_with = "ser_rat")]
    pub c_vh: Rat,
}

/// Charges making the full toroidal assembly a representation.
pub fn toroidal_charges(n: usize, c: &Rat, mu: &Rat, nu: &Rat, dim_g: usize, hv: &Rat) -> Charges {
    let nn = rat_int(n as i64);
    let one = rat_int(1);
    Charges {
        c_sl: &one - mu * c,
        c_heis: &nn * (&one - mu * c) - &nn * &nn * nu * c,
        c_vir: rat_int(12) * c * (mu + nu) - rat_int(2) * &nn - c * rat_int(dim_g as i64) / (c + hv),
        c_vh: &nn * (rat(1, 2) - nu * c),
    }
}

/// Charges for the EALA assembly. `c_heis` and `c_vh` are absent there and
/// reported as zero.
pub fn eala_charges(n: usize, c: &Rat, mu: &Rat, dim_g: usize, hv: &Rat) -> Charges {
    let nn = rat_int(n as i64);
    let one = rat_int(1);
    Charges {
        c_sl: &one - mu * c,
        c_heis: rat_int(0),
        c_vir: rat_int(12) * (&one - &one / &nn) + rat_int(12) * mu * c * (&one + &one / &nn) - rat_int(2) * &nn
            - c * rat_int(dim_g as i64) / (c + hv),
        c_vh: rat_int(0),
    }
}

/// `glVir` for `gl_N`, or `slVir` when `sl` is set.
#[derive(Debug, Clone)]
pub struct GlVir {
    pub n: usize,
    pub sl: bool,
}

pub type Mat = Vec<Vec<Rat>>;

impl GlVir {
    pub fn new(n: usize, sl: bool) -> Self {
        assert!(n >= 1);
        GlVir { n, sl }
    }

    fn matrix(&self, g: &GlVirGen) -> Option<Mat> {
        let n = self.n;
        let mut m = vec![vec![rat_int(0); n]; n];
        match *g {
            GlVirGen::E(i, j, _) => m[i][j] = rat_int(1),
            GlVirGen::H(i, _) => {
                m[i][i] = rat_int(1);
                m[i + 1][i + 1] = rat_int(-1);
            }
            _ => return None,
        }
        Some(m)
    }

    fn mode(g: &GlVirGen) -> i64 {
        match *g {
            GlVirGen::L(n) | GlVirGen::E(_, _, n) | GlVirGen::H(_, n) => n,
            _ => 0,
        }
    }

    /// Expands `u(m)` for a matrix `u` in this algebra's loop basis.
    pub fn decompose(&self, u: &Mat, m: i64) -> Vec<(GlVirGen, CycScalar)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && !u[i][j].is_zero() {
                    out.push((GlVirGen::E(i, j, m), CycScalar::from_rat(u[i][j].clone())));
                }
            }
        }
        if self.sl {
            // Diagonal part sum d_i E_ii with trace zero: coefficient of H_i is d_1 + .. + d_i.
            let mut acc = rat_int(0);
            for i in 0..n.saturating_sub(1) {
                acc += &u[i][i];
                if !acc.is_zero() {
                    out.push((GlVirGen::H(i, m), CycScalar::from_rat(acc.clone())));
                }
            }
        } else {
            for i in 0..n {
                if !u[i][i].is_zero() {
                    out.push((GlVirGen::E(i, i, m), CycScalar::from_rat(u[i][i].clone())));
                }
            }
        }
        out
    }

    fn trace(u: &Mat) -> Rat {
        (0..u.len()).map(|i| u[i][i].clone()).sum()
    }

    fn mul(a: &Mat, b: &Mat) -> Mat {
        let n = a.len();
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
    }

    fn psi1(&self, u: &Mat) -> Mat {
        let p = Self::trace(u) / rat_int(self.n as i64);
        let mut out = u.clone();
        for (i, row) in out.iter_mut().enumerate() {
            row[i] -= &p;
        }
        out
    }

    fn psi2(&self, u: &Mat) -> Rat {
        Self::trace(u) / rat_int(self.n as i64)
    }

    pub fn bracket_sum(&self, x: &GlVirGen, y: &GlVirGen) -> GlVirSum {
        let mut out = GlVirSum::new();
        for (g, c) in self.bracket(x, y) {
            push(&mut out, g, c);
        }
        out
    }

    /// Generators of the algebra whose mode lies in `modes`.
    pub fn generators(&self, modes: std::ops::RangeInclusive<i64>) -> Vec<GlVirGen> {
        let mut out = Vec::new();
        for m in modes {
            out.push(GlVirGen::L(m));
            for i in 0..self.n {
                for j in 0..self.n {
                    if i != j || !self.sl {
                        out.push(GlVirGen::E(i, j, m));
                    }
                }
                if self.sl && i + 1 < self.n {
                    out.push(GlVirGen::H(i, m));
                }
            }
        }
        out
    }
}

impl GradedAlgebra for GlVir {
    type Gen = GlVirGen;

    fn bracket(&self, x: &GlVirGen, y: &GlVirGen) -> Vec<(GlVirGen, CycScalar)> {
        use GlVirGen::*;
        let central = |g: &GlVirGen| matches!(g, CSl | CHeis | CVir | CVh);
        if central(x) || central(y) {
            return vec![];
        }
        let q = |r: Rat| CycScalar::from_rat(r);
        match (x, y) {
            (L(n), L(m)) => {
                let mut out = vec![];
                if n != m {
                    out.push((L(n + m), CycScalar::from_int(n - m)));
                }
                if n + m == 0 && n * n * n != *n {
                    out.push((CVir, q(rat(n * n * n - n, 12))));
                }
                out
            }
            (L(n), u) => {
                let m = Self::mode(u);
                let um = self.matrix(u).expect("loop generator");
                let mut out: Vec<_> = self.decompose(&um, n + m).into_iter().map(|(g, c)| (g, &c * &CycScalar::from_int(-m))).collect();
                if n + m == 0 {
                    let p = self.psi2(&um) * rat_int(n * n + n);
                    if !p.is_zero() {
                        out.push((CVh, q(-p)));
                    }
                }
                out
            }
            (_, L(_)) => self.bracket(y, x).into_iter().map(|(g, c)| (g, -&c)).collect(),
            (u, v) => {
                let (n, m) = (Self::mode(u), Self::mode(v));
                let a = self.matrix(u).expect("loop generator");
                let b = self.matrix(v).expect("loop generator");
                let ab = Self::mul(&a, &b);
                let ba = Self::mul(&b, &a);
                let comm: Mat = ab.iter().zip(&ba).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect();
                let mut out = self.decompose(&comm, n + m);
                if n + m == 0 && n != 0 {
                    let t = Self::trace(&Self::mul(&self.psi1(&a), &self.psi1(&b))) * rat_int(n);
                    if !t.is_zero() {
                        out.push((CSl, q(t)));
                    }
                    let h = self.psi2(&a) * self.psi2(&b) * rat_int(n);
                    if !h.is_zero() && !self.sl {
                        out.push((CHeis, q(h)));
                    }
                }
                out
            }
        }
    }

    /// `N * energy + height`, so that every lowering generator has depth >= 1.
    fn depth(&self, g: &GlVirGen) -> i64 {
        let n = self.n as i64;
        match *g {
            GlVirGen::L(m) | GlVirGen::H(_, m) => -n * m,
            GlVirGen::E(i, j, m) => -n * m + i as i64 - j as i64,
            _ => 0,
        }
    }

    fn top_action(&self, _g: &GlVirGen) -> TopAction {
        unreachable!("top action is supplied by the module")
    }
}

/// Highest-weight data.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HighestWeight {
    #[serde(serialize_with = "ser_rat")]
    pub l0: Rat,
    /// Eigenvalues of `E_ii(0)`.
    #[serde(serialize_with = "ser_rats")]
    pub diag: Vec<Rat>,
    pub charges: Charges,
}

/// `GlVir` together with a highest weight, so that top actions are known.
#[derive(Debug, Clone)]
pub struct GlVirWithWeight {
    pub alg: GlVir,
    pub hw: HighestWeight,
}

impl GradedAlgebra for GlVirWithWeight {
    type Gen = GlVirGen;

    fn bracket(&self, a: &GlVirGen, b: &GlVirGen) -> Vec<(GlVirGen, CycScalar)> {
        self.alg.bracket(a, b)
    }

    fn depth(&self, g: &GlVirGen) -> i64 {
        self.alg.depth(g)
    }

    fn top_action(&self, g: &GlVirGen) -> TopAction {
        let q = |r: &Rat| TopAction::Scalar(CycScalar::from_rat(r.clone()));
        let d = self.depth(g);
        if d > 0 {
            return TopAction::Lowering;
        }
        if d < 0 {
            return TopAction::Annihilates;
        }
        match g {
            GlVirGen::L(_) => q(&self.hw.l0),
            GlVirGen::E(i, _, _) => q(&self.hw.diag[*i]),
            GlVirGen::H(i, _) => q(&(&self.hw.diag[*i] - &self.hw.diag[*i + 1])),
            GlVirGen::CSl => q(&self.hw.charges.c_sl),
            GlVirGen::CHeis => q(&self.hw.charges.c_heis),
            GlVirGen::CVir => q(&self.hw.charges.c_vir),
            GlVirGen::CVh => q(&self.hw.charges.c_vh),
        }
    }
}

/// Verma module truncated at depth `D`; stands in for the irreducible quotient.
pub struct HwModuleTrunc {
    pub verma: Verma<GlVirWithWeight>,
    pub basis: Vec<Vec<GlVirGen>>,
}

pub type GlVirVec = ModVec<GlVirGen>;

pub fn build_hw_module(n: usize, sl: bool, hw: HighestWeight, depth: i64) -> HwModuleTrunc {
    let alg = GlVirWithWeight { alg: GlVir::new(n, sl), hw };
    let letters: Vec<GlVirGen> = {
        let reach = depth / n as i64 + 1;
        alg.alg.generators(-reach..=0).into_iter().filter(|g| alg.depth(g) > 0 && alg.depth(g) <= depth).collect()
    };
    let verma = Verma::new(alg, depth);
    let basis = verma.basis(&letters, depth);
    HwModuleTrunc { verma, basis }
}

impl HwModuleTrunc {
    pub fn n(&self) -> usize {
        self.verma.alg.alg.n
    }

    pub fn depth(&self) -> i64 {
        self.verma.max_depth
    }

    /// Checks `x(y v) - y(x v) = [x, y] v` for all generators with modes in
    /// `[-reach, reach]` and basis vectors where everything stays in depth.
    /// Returns (checked, first failure).
    pub fn check_commutators(&self, reach: i64) -> (usize, Option<String>) {
        let gens = self.verma.alg.alg.generators(-reach..=reach);
        let d = self.depth();
        let mut checked = 0;
        for x in &gens {
            for y in &gens {
                let dx = self.verma.alg.depth(x);
                let dy = self.verma.alg.depth(y);
                for b in &self.basis {
                    let db = self.verma.mono_depth(b);
                    if db + dx.max(0) + dy.max(0) > d {
                        continue;
                    }
                    let v = GlVirVec::mono(b.clone(), CycScalar::one());
                    let xy = self.verma.act(x, &self.verma.act(y, &v).expect("in depth")).expect("in depth");
                    let yx = self.verma.act(y, &self.verma.act(x, &v).expect("in depth")).expect("in depth");
                    let rhs = self.verma.act_sum(&self.verma.alg.alg.bracket(x, y), &v).expect("in depth");
                    checked += 1;
                    if xy.sub(&yx) != rhs {
                        return (checked, Some(format!("[{x}, {y}] on {b:?}")));
                    }
                }
            }
        }
        (checked, None)
    }
}
