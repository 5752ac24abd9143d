//! Vertex representations of twisted toroidal Lie algebras and of their EALA
//! quotients on `sum_r q^r (x) F (x) W (x) L`, truncated by conformal degree.
//!
//! Degrees and `z`-exponents are integers scaled by `m0`.

mod check;
mod field;
mod space;
mod waff;

use serde::{Deserialize, Serialize};

use crate::cycfield::{binom_rat, rat, rat_int, CycScalar, Rat};
use crate::glvirmod::{eala_charges, toroidal_charges, Charges, GlVir, GlVirWithWeight, HighestWeight, Mat};
use crate::liestruct::{LieAut, StructLie};
use crate::linalg;
use crate::toroidal::{EalaKind, Payload, ToroidalContext, ToroidalDegree, ToroidalElement, ToroidalError};
use crate::verma::{DepthOverflow, Verma};

pub use check::{check_commutators, irreducibility_proxy, thin_module, CommReport, ProxyReport, SamplePlan, ThinReport};
pub use field::{Factors, Field};
pub use space::{fock_degree, fock_diff, fock_mul, Key, Osc, Series, TruncVector};
pub use waff::{TwistedAffine, WGen};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RepError {
    #[error(transparent)]
    Depth(#[from] DepthOverflow),
    #[error("result leaves the degree window: {0}")]
    Window(String),
    #[error("membership: {0}")]
    Membership(String),
    #[error(transparent)]
    Toroidal(#[from] ToroidalError),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("thin covering violated: {0}")]
    Covering(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Assembly {
    Toroidal,
    Eala,
}

#[derive(Debug, Clone)]
pub struct RepSettings {
    pub level: Rat,
    pub mu: Rat,
    pub nu: Rat,
    /// Degree window `D` in integer units.
    pub depth: i64,
    pub assembly: Assembly,
    /// `L(0)` and `E_ii(0)` eigenvalues on the top of the `glVir` factor.
    pub gl_l0: Rat,
    pub gl_diag: Option<Vec<Rat>>,
}

impl RepSettings {
    pub fn new(level: Rat, mu: Rat, nu: Rat, depth: i64, assembly: Assembly) -> Self {
        RepSettings { level, mu, nu, depth, assembly, gl_l0: rat_int(0), gl_diag: None }
    }
}

/// One summand of an EALA element in the spanning set used by the fields.
#[derive(Debug, Clone, PartialEq)]
pub enum EalaPiece {
    Plain(ToroidalDegree, Payload),
    Dhat(usize, ToroidalDegree),
    Dd(usize, usize, ToroidalDegree),
}

const CACHE_SUGAWARA: usize = 0;
const CACHE_OMEGA_HYP: usize = 1;

pub struct RepContext {
    pub ctx: ToroidalContext,
    pub settings: RepSettings,
    pub hv: Rat,
    pub charges: Charges,
    pub factors: Factors,
    sugawara: Field,
}

impl RepContext {
    pub fn new(l: &StructLie, autos: &[LieAut], settings: RepSettings) -> Result<Self, RepError> {
        let c = settings.level.clone();
        let hv = l.dual_coxeter.clone();
        if c == rat_int(0) || &c + &hv == rat_int(0) {
            return Err(RepError::Precondition(format!("level {c} is zero or critical")));
        }
        if settings.depth < 0 {
            return Err(RepError::Precondition("negative depth".into()));
        }
        if settings.assembly == Assembly::Eala && settings.nu != rat_int(0) {
            return Err(RepError::Precondition("the EALA assembly needs nu = 0".into()));
        }
        let ctx = ToroidalContext::new(l, autos, settings.mu.clone(), settings.nu.clone())?;
        let m0 = ctx.m0() as i64;
        let n = ctx.n_vars();
        if n == 0 {
            return Err(RepError::Precondition("need at least one variable t_1".into()));
        }
        let dim = ctx.algebra.dim();
        let charges = match settings.assembly {
            Assembly::Toroidal => toroidal_charges(n, &c, &settings.mu, &settings.nu, dim, &hv),
            Assembly::Eala => eala_charges(n, &c, &settings.mu, dim, &hv),
        };
        let residue: Vec<i64> = ctx.coset.iter().map(|s| s[0] as i64).collect();
        let cap = 8 * (settings.depth + 1) * m0;
        let w = Verma::new(TwistedAffine::new(&ctx.algebra, residue, m0, c.clone()), cap);
        let diag = settings.gl_diag.clone().unwrap_or_else(|| vec![rat_int(0); n]);
        if diag.len() != n {
            return Err(RepError::Precondition(format!("{} diagonal weights for N = {n}", diag.len())));
        }
        let hw = HighestWeight { l0: settings.gl_l0.clone(), diag, charges: charges.clone() };
        let gl_alg = GlVirWithWeight { alg: GlVir::new(n, settings.assembly == Assembly::Eala), hw };
        let gl = Verma::new(gl_alg, (n as i64) * (cap / m0 + 2));
        let factors = Factors { m0, n, w, gl, cache: Default::default() };
        let sugawara = Field::Cached(CACHE_SUGAWARA, Box::new(sugawara_field(&ctx, &c, &hv)?));
        Ok(RepContext { ctx, settings, hv, charges, factors, sugawara })
    }

    pub fn m0(&self) -> i64 {
        self.factors.m0
    }

    pub fn n(&self) -> usize {
        self.factors.n
    }

    /// The probe window `D`, scaled.
    pub fn window(&self) -> i64 {
        self.settings.depth * self.m0()
    }

    pub fn degree(&self, k: &Key) -> i64 {
        self.factors.key_degree(k)
    }

    fn c(&self) -> CycScalar {
        CycScalar::from_rat(self.settings.level.clone())
    }

    pub fn sugawara(&self) -> &Field {
        &self.sugawara
    }

    /// Coefficient of `z^{e / m0}` in `f(z) v`.
    pub fn coefficient(&self, f: &Field, e: i64, v: &TruncVector) -> Result<TruncVector, RepError> {
        let h = self.factors.weight(f);
        let mut out = TruncVector::zero();
        for (k, c) in &v.terms {
            let target = self.degree(k) + h + e;
            if target < 0 {
                continue;
            }
            if target > self.window() {
                return Err(RepError::Window(format!("degree {target} > {} from {k}", self.window())));
            }
            let s = self.factors.eval(f, &TruncVector::basis(k.clone()), target)?;
            if let Some(w) = s.get(&e) {
                out.add_scaled(w, c);
            }
        }
        Ok(out)
    }

    /// `f_(n) v`, the coefficient of `z^{-n-1}`; `n` scaled.
    pub fn field_mode(&self, f: &Field, n: i64, v: &TruncVector) -> Result<TruncVector, RepError> {
        self.coefficient(f, -n - self.m0(), v)
    }

    /// `L_n` of the twisted Sugawara field; `n` in integer units.
    pub fn sugawara_mode(&self, n: i64, v: &TruncVector) -> Result<TruncVector, RepError> {
        self.coefficient(&self.sugawara, (-n - 2) * self.m0(), v)
    }

    /// `x(r, z)` mode `t_0^{n / m0} t^r x` for basis vector `k`.
    pub fn twisted_affine_mode(&self, k: usize, r: &[i64], n: i64, v: &TruncVector) -> Result<TruncVector, RepError> {
        let deg = ToroidalDegree::new(n, r.to_vec());
        self.ctx.check_term(&deg, &Payload::Alg(k))?;
        self.coefficient(&self.x_img(k, r), -n - self.m0(), v)
    }

    pub fn omega_hyp(&self) -> Field {
        let f = Field::Sum((0..self.n()).map(|p| (CycScalar::one(), Field::normord(Field::K(p), Field::D(p)))).collect());
        Field::Cached(CACHE_OMEGA_HYP, Box::new(f))
    }

    fn unit_matrix(&self, i: usize, j: usize) -> Mat {
        let n = self.n();
        let mut m = vec![vec![rat_int(0); n]; n];
        m[i][j] = rat_int(1);
        m
    }

    /// `psi_1(E_ij) = E_ij - delta_ij I / N`.
    fn psi1(&self, i: usize, j: usize) -> Mat {
        let n = self.n();
        let mut m = self.unit_matrix(i, j);
        if i == j {
            for (p, row) in m.iter_mut().enumerate() {
                row[p] -= rat(1, n as i64);
            }
        }
        m
    }

    pub fn k0_img(&self, r: &[i64]) -> Field {
        Field::scaled(self.c(), Field::K0(r.to_vec()))
    }

    pub fn ka_img(&self, a: usize, r: &[i64]) -> Field {
        Field::scaled(self.c(), Field::prod(Field::K(a), Field::K0(r.to_vec())))
    }

    pub fn x_img(&self, k: usize, r: &[i64]) -> Field {
        Field::prod(Field::X(k), Field::K0(r.to_vec()))
    }

    /// Image of the `d~_a(r, z)` field.
    pub fn da_img(&self, a: usize, r: &[i64]) -> Field {
        let k0 = || Field::K0(r.to_vec());
        let mut items = vec![(CycScalar::one(), Field::normord(Field::D(a), k0()))];
        for (p, &rp) in r.iter().enumerate() {
            if rp != 0 {
                items.push((CycScalar::from_int(rp), Field::prod(Field::Gl(self.unit_matrix(p, a)), k0())));
            }
        }
        Field::Sum(items)
    }

    /// Image of the `d~_0(r, z)` field.
    pub fn d0_img(&self, r: &[i64]) -> Field {
        let k0 = || Field::K0(r.to_vec());
        let mut items = vec![
            (CycScalar::one(), Field::normord(self.omega_hyp(), k0())),
            (CycScalar::one(), Field::prod(self.sugawara.clone(), k0())),
            (CycScalar::one(), Field::prod(Field::Lgl, k0())),
        ];
        let mc1 = CycScalar::from_rat(&self.settings.mu * &self.settings.level - rat_int(1));
        for (i, &ri) in r.iter().enumerate() {
            if ri == 0 {
                continue;
            }
            for j in 0..self.n() {
                let e = Field::prod(Field::Gl(self.unit_matrix(i, j)), k0());
                items.push((CycScalar::from_int(ri), Field::prod(Field::K(j), e)));
            }
            items.push((&mc1 * &CycScalar::from_int(ri), Field::prod(Field::deriv(Field::K(i)), k0())));
        }
        Field::Sum(items)
    }

    /// Image of the `d~_ab(s, z)` field of the EALA.
    pub fn dab_img(&self, a: usize, b: usize, s: &[i64]) -> Field {
        let k0 = || Field::K0(s.to_vec());
        let n = self.n();
        let q = CycScalar::from_int;
        let d = Field::Sum(vec![(q(s[b]), Field::D(a)), (q(-s[a]), Field::D(b))]);
        let mut items = vec![(CycScalar::one(), Field::normord(d, k0()))];
        for p in 0..n {
            if p != a {
                items.push((q(s[b] * s[p]), Field::prod(Field::Gl(self.unit_matrix(p, a)), k0())));
            }
            if p != b {
                items.push((q(-s[a] * s[p]), Field::prod(Field::Gl(self.unit_matrix(p, b)), k0())));
            }
        }
        if a != b {
            let mut m = self.unit_matrix(a, a);
            m[b][b] = rat_int(-1);
            items.push((q(s[a] * s[b]), Field::prod(Field::Gl(m), k0())));
        }
        Field::Sum(items)
    }

    /// Image of the `d^_a(s, z)` field of the EALA.
    pub fn dhat_img(&self, a: usize, s: &[i64]) -> Field {
        let k0 = || Field::K0(s.to_vec());
        let n = self.n();
        let q = CycScalar::from_int;
        let sa = q(s[a]);
        let mut items = vec![
            (sa.clone(), Field::normord(self.omega_hyp(), k0())),
            (sa.clone(), Field::prod(Field::Lgl, k0())),
            (sa.clone(), Field::prod(self.sugawara.clone(), k0())),
        ];
        let mc1 = CycScalar::from_rat(&self.settings.mu * &self.settings.level - rat_int(1));
        for p in 0..n {
            if s[p] == 0 {
                continue;
            }
            for l in 0..n {
                let kl = Field::prod(Field::K(l), k0());
                items.push((&sa * &q(s[p]), Field::prod(Field::Gl(self.psi1(p, l)), kl)));
            }
            items.push((&(&sa * &mc1) * &q(s[p]), Field::prod(Field::deriv(Field::K(p)), k0())));
        }
        let mut inner = vec![(CycScalar::one(), Field::normord(Field::D(a), k0()))];
        for p in 0..n {
            if s[p] != 0 {
                inner.push((q(s[p]), Field::prod(Field::Gl(self.psi1(p, a)), k0())));
            }
        }
        let inner = Field::Sum(inner);
        let m0 = self.m0();
        items.push((q(-1), Field::zpow(-m0, inner.clone())));
        items.push((q(-1), Field::deriv(inner)));
        Field::Sum(items)
    }

    /// Action of a single toroidal term `t^deg p`.
    fn rep_term(&self, deg: &ToroidalDegree, p: &Payload, v: &TruncVector) -> Result<TruncVector, RepError> {
        self.ctx.check_term(deg, p)?;
        let m0 = self.m0();
        let js = deg.t0_num;
        let r = &deg.r;
        let eala = self.settings.assembly == Assembly::Eala;
        match *p {
            Payload::Alg(k) => self.coefficient(&self.x_img(k, r), -js - m0, v),
            Payload::K(0) => self.coefficient(&self.k0_img(r), -js, v),
            Payload::K(a) => self.coefficient(&self.ka_img(a - 1, r), -js - m0, v),
            Payload::D(_) if eala && !deg.is_zero() => {
                Err(RepError::Membership(format!("lone derivation at degree {deg} is not in the EALA")))
            }
            Payload::D(0) => {
                let mut out = self.coefficient(&self.d0_img(r), -js - 2 * m0, v)?.scale(&CycScalar::from_int(-1));
                let f = (&self.settings.mu + &self.settings.nu) * (rat(js, m0) + rat(1, 2));
                if f != rat_int(0) {
                    let k = self.coefficient(&self.k0_img(r), -js, v)?;
                    out.add_scaled(&k, &CycScalar::from_rat(f));
                }
                Ok(out)
            }
            Payload::D(a) => {
                let mut out = self.coefficient(&self.da_img(a - 1, r), -js - m0, v)?;
                let f = &self.settings.nu * rat_int(r[a - 1]);
                if f != rat_int(0) {
                    let k = self.coefficient(&self.k0_img(r), -js, v)?;
                    out.add_scaled(&k, &CycScalar::from_rat(f));
                }
                Ok(out)
            }
        }
    }

    /// Writes an EALA element in terms of `d^_a`, `d~_ab` and plain terms.
    pub fn eala_pieces(&self, x: &ToroidalElement) -> Result<Vec<(EalaPiece, CycScalar)>, RepError> {
        self.ctx.validate(x)?;
        let n = self.n();
        let m0 = self.m0();
        let mut rest = x.clone();
        let mut out = Vec::new();
        let degrees: Vec<ToroidalDegree> =
            x.terms.keys().filter(|(d, p)| matches!(p, Payload::D(_)) && !d.is_zero()).map(|(d, _)| d.clone()).collect();
        let mut done: Vec<ToroidalDegree> = Vec::new();
        for deg in degrees {
            if done.contains(&deg) {
                continue;
            }
            done.push(deg.clone());
            let j = deg.t0_num / m0;
            let mut kinds = Vec::new();
            for a in 1..=n {
                kinds.push((EalaPiece::Dhat(a, deg.clone()), EalaKind::Dhat(a)));
                for b in a + 1..=n {
                    kinds.push((EalaPiece::Dd(a, b, deg.clone()), EalaKind::Dd(a, b)));
                }
            }
            let mut elems = Vec::new();
            let mut cols = Vec::new();
            for (piece, kind) in kinds {
                let e = self.ctx.eala_basis(&deg.r, j, kind, &self.settings.level)?;
                cols.push((0..=n).map(|q| e.terms.get(&(deg.clone(), Payload::D(q))).cloned().unwrap_or_else(CycScalar::zero)).collect());
                elems.push((piece, e));
            }
            let target: Vec<CycScalar> =
                (0..=n).map(|q| rest.terms.get(&(deg.clone(), Payload::D(q))).cloned().unwrap_or_else(CycScalar::zero)).collect();
            let coefs = linalg::solve_combination(&cols, &target)
                .ok_or_else(|| RepError::Membership(format!("derivation part at {deg} has nonzero divergence")))?;
            for ((piece, e), c) in elems.into_iter().zip(coefs) {
                if !c.is_zero() {
                    rest = rest.sub(&e.scale(&c));
                    out.push((piece, c));
                }
            }
        }
        let rest = self.ctx.reduce_kahler(&rest);
        for ((d, p), c) in rest.terms {
            out.push((EalaPiece::Plain(d, p), c));
        }
        Ok(out)
    }

    /// Action of a Lie algebra element on a truncated vector.
    pub fn represent(&self, x: &ToroidalElement, v: &TruncVector) -> Result<TruncVector, RepError> {
        let mut out = TruncVector::zero();
        match self.settings.assembly {
            Assembly::Toroidal => {
                for ((d, p), c) in &x.terms {
                    out.add_scaled(&self.rep_term(d, p, v)?, c);
                }
            }
            Assembly::Eala => {
                let m0 = self.m0();
                for (piece, c) in self.eala_pieces(x)? {
                    let w = match piece {
                        EalaPiece::Plain(d, p) => self.rep_term(&d, &p, v)?,
                        EalaPiece::Dhat(a, d) => self.coefficient(&self.dhat_img(a - 1, &d.r), -d.t0_num - 2 * m0, v)?,
                        EalaPiece::Dd(a, b, d) => self.coefficient(&self.dab_img(a - 1, b - 1, &d.r), -d.t0_num - m0, v)?,
                    };
                    out.add_scaled(&w, &c);
                }
            }
        }
        Ok(out)
    }
}

/// `1 / (2 (c + h)) [ sum :x_i x^i: - z^{-1} sum alpha_i [x_i, x^i] - c sum C(alpha_i, 2) z^{-2} ]`
/// over a homogeneous basis and its dual.
fn sugawara_field(ctx: &ToroidalContext, c: &Rat, hv: &Rat) -> Result<Field, RepError> {
    let l = &ctx.algebra;
    let dim = l.dim();
    let m0 = ctx.m0() as i64;
    let ginv = linalg::inverse(&l.form).ok_or_else(|| RepError::Precondition("degenerate invariant form".into()))?;
    let pref = CycScalar::from_rat(Rat::from_integer(1.into()) / (rat_int(2) * (c + hv)));
    let mut items = Vec::new();
    let mut corr = vec![CycScalar::zero(); dim];
    let mut scalar = rat_int(0);
    for k in 0..dim {
        let alpha = rat(ctx.coset[k][0] as i64, m0);
        let dual: Vec<(CycScalar, Field)> =
            (0..dim).filter(|&j| !ginv[j][k].is_zero()).map(|j| (ginv[j][k].clone(), Field::X(j))).collect();
        if dual.is_empty() {
            continue;
        }
        items.push((pref.clone(), Field::normord(Field::X(k), Field::Sum(dual))));
        if alpha != rat_int(0) {
            for j in 0..dim {
                if ginv[j][k].is_zero() {
                    continue;
                }
                for (q, s) in &l.sc[k][j] {
                    corr[*q] += &(&(&ginv[j][k] * s) * &CycScalar::from_rat(alpha.clone()));
                }
            }
        }
        scalar += binom_rat(&alpha, 2);
    }
    let corr: Vec<(CycScalar, Field)> = corr.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(q, x)| (&(-&x) * &pref, Field::X(q))).collect();
    if !corr.is_empty() {
        items.push((CycScalar::one(), Field::zpow(-m0, Field::Sum(corr))));
    }
    let s = -(c * &scalar);
    if s != rat_int(0) {
        items.push((&pref * &CycScalar::from_rat(s), Field::zpow(-2 * m0, Field::Ident)));
    }
    Ok(Field::Sum(items))
}

#[cfg(test)]
mod tests;
