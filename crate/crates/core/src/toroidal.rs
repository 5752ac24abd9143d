//! Twisted multiloop algebras extended by Kähler differentials and by
//! derivations of the Laurent ring, with the `mu tau_1 + nu tau_2` cocycle.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cycfield::{rat, rat_int, root_of_unity, CycScalar, Rat};
use crate::liestruct::{simultaneous_grading, LieAut, LieError, StructLie};
use crate::linalg;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ToroidalError {
    #[error("term {0} is not in the twisted algebra")]
    Membership(String),
    #[error("wrong payload kind: {0}")]
    Kind(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// `t_0^{t0_num / m_0} t^r`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ToroidalDegree {
    pub t0_num: i64,
    pub r: Vec<i64>,
}

impl ToroidalDegree {
    pub fn new(t0_num: i64, r: Vec<i64>) -> Self {
        ToroidalDegree { t0_num, r }
    }

    pub fn zero(n: usize) -> Self {
        ToroidalDegree { t0_num: 0, r: vec![0; n] }
    }

    pub fn add(&self, o: &Self) -> Self {
        ToroidalDegree { t0_num: self.t0_num + o.t0_num, r: self.r.iter().zip(&o.r).map(|(a, b)| a + b).collect() }
    }

    pub fn neg(&self) -> Self {
        ToroidalDegree { t0_num: -self.t0_num, r: self.r.iter().map(|a| -a).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.t0_num == 0 && self.r.iter().all(|&x| x == 0)
    }

    /// Exponent vector `(t0_num / m0, r_1, ..., r_N)` as rationals.
    pub fn exponents(&self, m0: u32) -> Vec<Rat> {
        let mut v = vec![rat(self.t0_num, m0 as i64)];
        v.extend(self.r.iter().map(|&x| rat_int(x)));
        v
    }
}

impl fmt::Display for ToroidalDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r: Vec<String> = self.r.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}; {}]", self.t0_num, r.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index")]
pub enum Payload {
    #[serde(rename = "ALG")]
    Alg(usize),
    #[serde(rename = "K")]
    K(usize),
    #[serde(rename = "D")]
    D(usize),
}

impl Payload {
    pub fn label(&self) -> String {
        match self {
            Payload::Alg(i) => format!("x{i}"),
            Payload::K(p) => format!("k{p}"),
            Payload::D(a) => format!("d{a}"),
        }
    }
}

pub type TermKey = (ToroidalDegree, Payload);

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ToroidalElement {
    pub terms: BTreeMap<TermKey, CycScalar>,
}

impl ToroidalElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(deg: ToroidalDegree, p: Payload, c: CycScalar) -> Self {
        let mut e = Self::zero();
        e.add_term(deg, p, c);
        e
    }

    pub fn add_term(&mut self, deg: ToroidalDegree, p: Payload, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        let key = (deg, p);
        let slot = self.terms.entry(key.clone()).or_insert_with(CycScalar::zero);
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for ((d, p), c) in &o.terms {
            out.add_term(d.clone(), *p, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        let mut out = Self::zero();
        for ((d, p), x) in &self.terms {
            out.add_term(d.clone(), *p, c * x);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&CycScalar::from_int(-1)))
    }

    fn filter(&self, keep: impl Fn(&Payload) -> bool) -> Self {
        ToroidalElement { terms: self.terms.iter().filter(|((_, p), _)| keep(p)).map(|(k, v)| (k.clone(), v.clone())).collect() }
    }

    pub fn k_part(&self) -> Self {
        self.filter(|p| matches!(p, Payload::K(_)))
    }

    pub fn d_part(&self) -> Self {
        self.filter(|p| matches!(p, Payload::D(_)))
    }

    pub fn alg_part(&self) -> Self {
        self.filter(|p| matches!(p, Payload::Alg(_)))
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|((d, p), c)| {
                let mut degree = vec![d.t0_num];
                degree.extend(&d.r);
                let (kind, index) = match p {
                    Payload::Alg(i) => ("ALG", *i),
                    Payload::K(i) => ("K", *i),
                    Payload::D(i) => ("D", *i),
                };
                TermJson { degree, kind: kind.to_string(), index, coeff: c.clone() }
            })
            .collect()
    }

    pub fn from_json(terms: &[TermJson]) -> Result<Self, ToroidalError> {
        let mut e = Self::zero();
        for t in terms {
            let (&t0, r) = t.degree.split_first().ok_or_else(|| ToroidalError::Index("empty degree".into()))?;
            let p = match t.kind.as_str() {
                "ALG" => Payload::Alg(t.index),
                "K" => Payload::K(t.index),
                "D" => Payload::D(t.index),
                other => return Err(ToroidalError::Kind(format!("unknown kind {other}"))),
            };
            e.add_term(ToroidalDegree::new(t0, r.to_vec()), p, t.coeff.clone());
        }
        Ok(e)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub degree: Vec<i64>,
    pub kind: String,
    pub index: usize,
    pub coeff: CycScalar,
}

/// The algebra written in a basis homogeneous for the grading, with the
/// coset of every basis vector and the cocycle parameters.
#[derive(Debug, Clone)]
pub struct ToroidalContext {
    pub algebra: StructLie,
    /// `coset[i]` is the residue tuple `(s_0 mod m_0, ..., s_N mod m_N)` of basis vector `i`.
    pub coset: Vec<Vec<u32>>,
    /// `(m_0, ..., m_N)`.
    pub orders: Vec<u32>,
    pub mu: Rat,
    pub nu: Rat,
    /// Basis change back to the original algebra coordinates (columns).
    pub basis_in_original: Vec<linalg::Vector>,
}

impl ToroidalContext {
    /// Grades `l` by `autos = (sigma_0, ..., sigma_N)` using `xi_i = exp(2 pi i / m_i)`.
    pub fn new(l: &StructLie, autos: &[LieAut], mu: Rat, nu: Rat) -> Result<Self, ToroidalError> {
        if autos.is_empty() {
            return Err(ToroidalError::Index("need at least sigma_0".into()));
        }
        let roots = autos.iter().map(|a| root_of_unity(a.order, 1).expect("order is positive")).collect::<Vec<_>>();
        let g = simultaneous_grading(l, autos, &roots)?;
        let hb = g.homogeneous_basis();
        let labels = hb
            .iter()
            .enumerate()
            .map(|(k, (_, v))| {
                let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
                if nz.len() == 1 && v[nz[0]].is_one() {
                    l.labels[nz[0]].clone()
                } else {
                    format!("b{k}")
                }
            })
            .collect();
        let basis: Vec<linalg::Vector> = hb.iter().map(|(_, v)| v.clone()).collect();
        let algebra = l.rebased(&basis, labels)?;
        Ok(ToroidalContext {
            algebra,
            coset: hb.into_iter().map(|(c, _)| c).collect(),
            orders: g.lattice_orders,
            mu,
            nu,
            basis_in_original: basis,
        })
    }

    /// Number of Laurent variables `t_1..t_N`.
    pub fn n_vars(&self) -> usize {
        self.orders.len() - 1
    }

    pub fn m0(&self) -> u32 {
        self.orders[0]
    }

    pub fn degree_coset(&self, d: &ToroidalDegree) -> Vec<u32> {
        let mut c = vec![d.t0_num.rem_euclid(self.orders[0] as i64) as u32];
        c.extend(d.r.iter().zip(&self.orders[1..]).map(|(x, m)| x.rem_euclid(*m as i64) as u32));
        c
    }

    /// Degree in `Lambda`: integral `t_0` power and `r` in `Gamma`.
    pub fn in_lattice(&self, d: &ToroidalDegree) -> bool {
        self.degree_coset(d).iter().all(|&x| x == 0)
    }

    pub fn check_term(&self, d: &ToroidalDegree, p: &Payload) -> Result<(), ToroidalError> {
        let n = self.n_vars();
        if d.r.len() != n {
            return Err(ToroidalError::Membership(format!("degree {d} has {} variables, expected {n}", d.r.len())));
        }
        match p {
            Payload::Alg(i) => {
                if *i >= self.algebra.dim() {
                    return Err(ToroidalError::Index(format!("algebra index {i}")));
                }
                if self.degree_coset(d) != self.coset[*i] {
                    return Err(ToroidalError::Membership(format!("{} at degree {d} (basis coset {:?})", self.algebra.labels[*i], self.coset[*i])));
                }
            }
            Payload::K(i) | Payload::D(i) => {
                if *i > n {
                    return Err(ToroidalError::Index(format!("{} with N = {n}", p.label())));
                }
                if !self.in_lattice(d) {
                    return Err(ToroidalError::Membership(format!("{} at degree {d} outside the lattice", p.label())));
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self, x: &ToroidalElement) -> Result<(), ToroidalError> {
        for (d, p) in x.terms.keys() {
            self.check_term(d, p)?;
        }
        Ok(())
    }

    fn exps(&self, d: &ToroidalDegree) -> Vec<Rat> {
        d.exponents(self.m0())
    }

    /// Canonical representative of the K-part modulo exact forms: at each
    /// nonzero degree the `k_p` with the smallest `p` such that `r_p != 0`
    /// is eliminated by `sum_p r_p t^r k_p = 0`.
    pub fn reduce_kahler(&self, x: &ToroidalElement) -> ToroidalElement {
        let mut out = ToroidalElement::zero();
        for ((d, p), c) in &x.terms {
            match p {
                Payload::K(q) if !d.is_zero() => {
                    let e = self.exps(d);
                    let pivot = e.iter().position(|v| !v.is_zero()).expect("nonzero degree");
                    if *q == pivot {
                        for (s, es) in e.iter().enumerate() {
                            if s != pivot && !es.is_zero() {
                                let f = CycScalar::from_rat(-(es / &e[pivot]));
                                out.add_term(d.clone(), Payload::K(s), &f * c);
                            }
                        }
                    } else {
                        out.add_term(d.clone(), *p, c.clone());
                    }
                }
                _ => out.add_term(d.clone(), *p, c.clone()),
            }
        }
        out
    }

    /// `d(t^r) = sum_p r_p t^r k_p`, not reduced.
    pub fn exact_form(&self, d: &ToroidalDegree) -> ToroidalElement {
        let mut out = ToroidalElement::zero();
        for (p, e) in self.exps(d).iter().enumerate() {
            out.add_term(d.clone(), Payload::K(p), CycScalar::from_rat(e.clone()));
        }
        out
    }

    /// `mu tau_1 + nu tau_2` on two monomial vector fields, unreduced.
    fn tau_terms(&self, da: &ToroidalDegree, a: usize, db: &ToroidalDegree, b: usize) -> ToroidalElement {
        let al = self.exps(da);
        let be = self.exps(db);
        let coef = &(&self.mu * &al[b]) * &be[a] + &(&self.nu * &al[a]) * &be[b];
        if coef.is_zero() {
            return ToroidalElement::zero();
        }
        // t^{alpha+beta} sum_p beta_p k_p, from differentiating the second Jacobian.
        let d = da.add(db);
        let mut out = ToroidalElement::zero();
        for (p, e) in be.iter().enumerate() {
            out.add_term(d.clone(), Payload::K(p), CycScalar::from_rat(&coef * e));
        }
        out
    }

    /// `mu tau_1(v, w) + nu tau_2(v, w)` for derivation elements.
    pub fn cocycle_tau(&self, v: &ToroidalElement, w: &ToroidalElement) -> Result<ToroidalElement, ToroidalError> {
        for x in [v, w] {
            if let Some((_, p)) = x.terms.keys().find(|(_, p)| !matches!(p, Payload::D(_))) {
                return Err(ToroidalError::Kind(format!("cocycle needs derivations, got {}", p.label())));
            }
        }
        let mut out = ToroidalElement::zero();
        for ((d1, p1), c1) in &v.terms {
            for ((d2, p2), c2) in &w.terms {
                let (Payload::D(a), Payload::D(b)) = (p1, p2) else { unreachable!() };
                out = out.add(&self.tau_terms(d1, *a, d2, *b).scale(&(c1 * c2)));
            }
        }
        Ok(self.reduce_kahler(&out))
    }

    /// `Tr(v^J)` of the derivation part, as a map degree -> coefficient.
    pub fn divergence(&self, v: &ToroidalElement) -> BTreeMap<ToroidalDegree, CycScalar> {
        let mut out: BTreeMap<ToroidalDegree, CycScalar> = BTreeMap::new();
        for ((d, p), c) in &v.terms {
            if let Payload::D(a) = p {
                let e = &self.exps(d)[*a];
                if !e.is_zero() {
                    let s = out.entry(d.clone()).or_insert_with(CycScalar::zero);
                    *s += &c.scale(e);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn bracket_terms(&self, d1: &ToroidalDegree, p1: &Payload, d2: &ToroidalDegree, p2: &Payload, out: &mut ToroidalElement) {
        let d = d1.add(d2);
        match (p1, p2) {
            (Payload::K(_), _) | (_, Payload::K(_)) if !matches!(p1, Payload::D(_)) && !matches!(p2, Payload::D(_)) => {}
            (Payload::Alg(i), Payload::Alg(j)) => {
                for (k, s) in &self.algebra.sc[*i][*j] {
                    out.add_term(d.clone(), Payload::Alg(*k), s.clone());
                }
                let f = &self.algebra.form[*i][*j];
                if !f.is_zero() {
                    for (p, e) in self.exps(d1).iter().enumerate() {
                        out.add_term(d.clone(), Payload::K(p), f.scale(e));
                    }
                }
            }
            (Payload::D(a), Payload::Alg(i)) => {
                let b = &self.exps(d2)[*a];
                out.add_term(d, Payload::Alg(*i), CycScalar::from_rat(b.clone()));
            }
            (Payload::D(a), Payload::K(b)) => {
                out.add_term(d.clone(), Payload::K(*b), CycScalar::from_rat(self.exps(d2)[*a].clone()));
                if a == b {
                    for (p, e) in self.exps(d1).iter().enumerate() {
                        out.add_term(d.clone(), Payload::K(p), CycScalar::from_rat(e.clone()));
                    }
                }
            }
            (Payload::D(a), Payload::D(b)) => {
                out.add_term(d.clone(), Payload::D(*b), CycScalar::from_rat(self.exps(d2)[*a].clone()));
                out.add_term(d.clone(), Payload::D(*a), CycScalar::from_rat(-self.exps(d1)[*b].clone()));
                let t = self.tau_terms(d1, *a, d2, *b);
                for ((dd, pp), c) in t.terms {
                    out.add_term(dd, pp, c);
                }
            }
            (_, Payload::D(_)) => {
                let mut tmp = ToroidalElement::zero();
                self.bracket_terms(d2, p2, d1, p1, &mut tmp);
                for ((dd, pp), c) in tmp.terms {
                    out.add_term(dd, pp, -c);
                }
            }
            _ => {}
        }
    }

    /// The Lie bracket, with the K-part in canonical form.
    pub fn bracket(&self, x: &ToroidalElement, y: &ToroidalElement) -> Result<ToroidalElement, ToroidalError> {
        self.validate(x)?;
        self.validate(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub fn bracket_unchecked(&self, x: &ToroidalElement, y: &ToroidalElement) -> ToroidalElement {
        let mut out = ToroidalElement::zero();
        for ((d1, p1), c1) in &x.terms {
            for ((d2, p2), c2) in &y.terms {
                let mut tmp = ToroidalElement::zero();
                self.bracket_terms(d1, p1, d2, p2, &mut tmp);
                let c = c1 * c2;
                for ((dd, pp), v) in tmp.terms {
                    out.add_term(dd, pp, &v * &c);
                }
            }
        }
        self.reduce_kahler(&out)
    }

    /// Spanning elements of the divergence-zero part at `t_0^j t^s`.
    pub fn eala_basis(&self, s: &[i64], j: i64, kind: EalaKind, level: &Rat) -> Result<ToroidalElement, ToroidalError> {
        let n = self.n_vars();
        let deg = ToroidalDegree::new(j * self.m0() as i64, s.to_vec());
        if !self.in_lattice(&deg) {
            return Err(ToroidalError::Membership(format!("degree {deg} outside the lattice")));
        }
        let mut out = ToroidalElement::zero();
        match kind {
            EalaKind::Dd(a, b) => {
                if a == 0 || b == 0 || a > n || b > n {
                    return Err(ToroidalError::Index(format!("dd({a},{b}) with N = {n}")));
                }
                out.add_term(deg.clone(), Payload::D(a), CycScalar::from_int(s[b - 1]));
                out.add_term(deg, Payload::D(b), CycScalar::from_int(-s[a - 1]));
            }
            EalaKind::Dhat(a) => {
                if a == 0 || a > n {
                    return Err(ToroidalError::Index(format!("dhat({a}) with N = {n}")));
                }
                let sa = rat_int(s[a - 1]);
                out.add_term(deg.clone(), Payload::D(a), CycScalar::from_int(j));
                // s_a times the z^{-j-2} coefficient of the d~_0 field.
                out.add_term(deg.clone(), Payload::D(0), CycScalar::from_rat(-sa.clone()));
                let half = rat(1, 2);
                let k0 = &(&(&sa * &(&self.mu + &self.nu)) * &(rat_int(j) + half));
                let nn = rat_int(n as i64);
                let counter = &(&sa / &(rat_int(2) * level * &nn)) * &(&nn - Rat::one() + &self.mu * level);
                out.add_term(deg, Payload::K(0), CycScalar::from_rat(k0 + &counter));
            }
        }
        Ok(self.reduce_kahler(&out))
    }
}

/// A random valid element with `terms` terms whose lattice coordinates lie in
/// `[-bound, bound]` (so exponents lie in `[-bound, bound]` scaled by the orders).
pub fn random_element<R: rand::Rng>(ctx: &ToroidalContext, rng: &mut R, terms: usize, bound: i64) -> ToroidalElement {
    let n = ctx.n_vars();
    let mut out = ToroidalElement::zero();
    for _ in 0..terms {
        let kind = rng.gen_range(0..4);
        let (p, coset): (Payload, Vec<u32>) = match kind {
            0 | 1 => {
                let i = rng.gen_range(0..ctx.algebra.dim());
                (Payload::Alg(i), ctx.coset[i].clone())
            }
            2 => (Payload::K(rng.gen_range(0..=n)), vec![0; n + 1]),
            _ => (Payload::D(rng.gen_range(0..=n)), vec![0; n + 1]),
        };
        let t0 = rng.gen_range(-bound..=bound) * ctx.orders[0] as i64 + coset[0] as i64;
        let r = (0..n).map(|p| rng.gen_range(-bound..=bound) * ctx.orders[p + 1] as i64 + coset[p + 1] as i64).collect();
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-3..=3);
        }
        out.add_term(ToroidalDegree::new(t0, r), p, CycScalar::from_int(c));
    }
    ctx.reduce_kahler(&out)
}

/// First random triple violating the Jacobi identity, if any.
pub fn jacobi_sweep(ctx: &ToroidalContext, seed: u64, triples: usize, bound: i64) -> Option<[ToroidalElement; 3]> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..triples {
        let x = random_element(ctx, &mut rng, 3, bound);
        let y = random_element(ctx, &mut rng, 3, bound);
        let z = random_element(ctx, &mut rng, 3, bound);
        let j = ctx
            .bracket_unchecked(&x, &ctx.bracket_unchecked(&y, &z))
            .add(&ctx.bracket_unchecked(&y, &ctx.bracket_unchecked(&z, &x)))
            .add(&ctx.bracket_unchecked(&z, &ctx.bracket_unchecked(&x, &y)));
        if !ctx.reduce_kahler(&j).is_zero() {
            return Some([x, y, z]);
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EalaKind {
    Dd(usize, usize),
    Dhat(usize),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{load, PresetName};

    fn ctx(mu: i64, nu: i64) -> ToroidalContext {
        let p = load(PresetName::BabyTkk).unwrap();
        ToroidalContext::new(&p.algebra, &p.sigmas, rat_int(mu), rat_int(nu)).unwrap()
    }

    fn deg(t0: i64, r: &[i64]) -> ToroidalDegree {
        ToroidalDegree::new(t0, r.to_vec())
    }

    #[test]
    fn homogeneous_basis_matches_grading() {
        let c = ctx(0, 0);
        let mut counts = BTreeMap::new();
        for s in &c.coset {
            *counts.entry(s.clone()).or_insert(0) += 1;
        }
        assert_eq!(counts.values().copied().collect::<Vec<_>>(), vec![3, 3, 3, 1]);
    }

    #[test]
    fn degree_zero_loop_bracket_has_no_central_term() {
        let c = ctx(1, 1);
        let g00: Vec<usize> = (0..10).filter(|&i| c.coset[i] == vec![0, 0]).collect();
        let x = ToroidalElement::term(deg(0, &[0]), Payload::Alg(g00[0]), CycScalar::one());
        let y = ToroidalElement::term(deg(0, &[0]), Payload::Alg(g00[1]), CycScalar::one());
        let z = c.bracket(&x, &y).unwrap();
        assert!(z.k_part().is_zero());
    }

    #[test]
    fn tau_golden_values() {
        let k0 = ToroidalElement::term(deg(0, &[0]), Payload::K(0), CycScalar::one());
        let v = ToroidalElement::term(deg(2, &[0]), Payload::D(0), CycScalar::one());
        let w = ToroidalElement::term(deg(-2, &[0]), Payload::D(0), CycScalar::one());
        assert_eq!(ctx(1, 0).cocycle_tau(&v, &w).unwrap(), k0);
        assert_eq!(ctx(0, 1).cocycle_tau(&v, &w).unwrap(), k0);
        // [t0 d0, t0^-1 d0] = -2 d0 + k0 for mu = 1, nu = 0.
        let mut want = ToroidalElement::term(deg(0, &[0]), Payload::D(0), CycScalar::from_int(-2));
        want.add_term(deg(0, &[0]), Payload::K(0), CycScalar::one());
        assert_eq!(ctx(1, 0).bracket(&v, &w).unwrap(), want);
        let d1 = ToroidalElement::term(deg(0, &[0]), Payload::D(1), CycScalar::one());
        assert!(ctx(1, 1).cocycle_tau(&d1, &w).unwrap().is_zero());
        assert!(matches!(ctx(1, 0).cocycle_tau(&k0, &w), Err(ToroidalError::Kind(_))));
    }

    #[test]
    fn derivation_acts_on_loop_part() {
        let c = ctx(0, 0);
        let i = (0..10).find(|&i| c.coset[i] == vec![1, 1]).unwrap();
        let x = ToroidalElement::term(deg(3, &[5]), Payload::Alg(i), CycScalar::one());
        for a in 0..2 {
            let d = ToroidalElement::term(deg(2, &[-2]), Payload::D(a), CycScalar::one());
            let want = if a == 0 { CycScalar::frac(3, 2) } else { CycScalar::from_int(5) };
            assert_eq!(c.bracket(&d, &x).unwrap(), ToroidalElement::term(deg(5, &[3]), Payload::Alg(i), want));
        }
    }

    #[test]
    fn kahler_reduction() {
        let c = ctx(0, 0);
        // d(t_1^{m_1}) vanishes.
        assert!(c.reduce_kahler(&c.exact_form(&deg(0, &[2]))).is_zero());
        let k = ToroidalElement::term(deg(0, &[0]), Payload::K(1), CycScalar::one());
        assert_eq!(c.reduce_kahler(&k), k);
        // t0 t1^2 (k0 + 2 k1) -> (2 - 2) k1 = 0 with m_1 = 2.
        let mut x = ToroidalElement::term(deg(2, &[2]), Payload::K(0), CycScalar::one());
        x.add_term(deg(2, &[2]), Payload::K(1), CycScalar::from_int(2));
        assert!(c.reduce_kahler(&x).is_zero());
        let mut y = ToroidalElement::term(deg(2, &[4]), Payload::K(0), CycScalar::one());
        y.add_term(deg(2, &[4]), Payload::K(1), CycScalar::from_int(2));
        let ry = c.reduce_kahler(&y);
        assert_eq!(ry, ToroidalElement::term(deg(2, &[4]), Payload::K(1), CycScalar::from_int(-2)));
        assert_eq!(c.reduce_kahler(&ry), ry);
    }

    #[test]
    fn membership_errors() {
        let c = ctx(0, 0);
        let i = (0..10).find(|&i| c.coset[i] == vec![1, 0]).unwrap();
        let bad = ToroidalElement::term(deg(0, &[0]), Payload::Alg(i), CycScalar::one());
        assert!(matches!(c.validate(&bad), Err(ToroidalError::Membership(_))));
        let bad_k = ToroidalElement::term(deg(1, &[0]), Payload::K(0), CycScalar::one());
        assert!(matches!(c.validate(&bad_k), Err(ToroidalError::Membership(_))));
    }

    #[test]
    fn eala_elements_have_zero_divergence() {
        let c = ctx(1, 0);
        for j in -2..=2 {
            for s in [-4, -2, 0, 2, 4] {
                let e = c.eala_basis(&[s], j, EalaKind::Dhat(1), &rat_int(1)).unwrap();
                assert!(c.divergence(&e).is_empty(), "j={j} s={s}");
            }
        }
        assert!(c.eala_basis(&[2], 0, EalaKind::Dd(1, 1), &rat_int(1)).unwrap().is_zero());
        assert!(c.eala_basis(&[1], 0, EalaKind::Dd(1, 1), &rat_int(1)).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let mut x = ToroidalElement::term(deg(2, &[4]), Payload::K(1), CycScalar::frac(1, 3));
        x.add_term(deg(1, &[1]), Payload::Alg(3), CycScalar::i());
        let j = serde_json::to_string(&x.to_json()).unwrap();
        let back: Vec<TermJson> = serde_json::from_str(&j).unwrap();
        assert_eq!(ToroidalElement::from_json(&back).unwrap(), x);
    }

    #[test]
    fn jacobi_on_random_triples() {
        for (mu, nu) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            assert!(jacobi_sweep(&ctx(mu, nu), 11, 40, 3).is_none(), "mu={mu} nu={nu}");
        }
    }

    #[test]
    fn antisymmetry_and_central_k() {
        use rand::SeedableRng;
        let c = ctx(1, 1);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let x = random_element(&c, &mut rng, 4, 3);
            let y = random_element(&c, &mut rng, 4, 3);
            assert!(c.bracket_unchecked(&x, &y).add(&c.bracket_unchecked(&y, &x)).is_zero());
            assert!(c.bracket_unchecked(&x.k_part(), &y.alg_part()).is_zero());
            assert!(c.bracket_unchecked(&x.k_part(), &y.k_part()).is_zero());
            c.validate(&c.bracket_unchecked(&x, &y)).unwrap();
        }
    }
}
