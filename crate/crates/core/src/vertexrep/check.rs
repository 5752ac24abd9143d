//! Commutator verification, thin-covering assembly and orbit checks.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::affroot::ThinShape;
use crate::cycfield::CycScalar;
use crate::glvirmod::GlVirGen;
use crate::linalg;
use crate::toroidal::{EalaKind, Payload, ToroidalDegree, ToroidalElement};
use crate::verma::GradedAlgebra;

use super::space::{fock_degree, Key, Osc, TruncVector};
use super::waff::WGen;
use super::{Assembly, Field, RepContext, RepError};

#[derive(Debug, Clone, Serialize)]
pub struct SamplePlan {
    pub seed: u64,
    /// `|j| <= t0_reach` for the `t_0` exponent of probe elements.
    pub t0_reach: i64,
    /// `|r_p| <= r_reach`.
    pub r_reach: i64,
    pub pairs_per_relation: usize,
    pub vectors_per_pair: usize,
    /// `q^r` exponents of probe vectors, `|r_p| <= vector_r_reach`.
    pub vector_r_reach: i64,
}

impl Default for SamplePlan {
    fn default() -> Self {
        SamplePlan { seed: 0, t0_reach: 2, r_reach: 2, pairs_per_relation: 12, vectors_per_pair: 6, vector_r_reach: 1 }
    }
}

/// A probe element with a short kind name.
#[derive(Debug, Clone)]
pub struct Probe {
    pub kind: String,
    pub elem: ToroidalElement,
    /// Scaled amount by which the element can raise the degree.
    pub raise: i64,
}

fn boxes(n: usize, reach: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (-reach..=reach).map(move |x| { let mut w = v.clone(); w.push(x); w })).collect();
    }
    out
}

/// Spanning elements of the represented algebra inside the sample box.
pub fn probe_elements(rc: &RepContext, t0_reach: i64, r_reach: i64) -> Result<Vec<Probe>, RepError> {
    let ctx = &rc.ctx;
    let n = rc.n();
    let m0 = rc.m0();
    let mut out = Vec::new();
    let one = CycScalar::one();
    for t0 in -t0_reach * m0..=t0_reach * m0 {
        for r in boxes(n, r_reach) {
            let deg = ToroidalDegree::new(t0, r.clone());
            for k in 0..ctx.algebra.dim() {
                if ctx.check_term(&deg, &Payload::Alg(k)).is_ok() {
                    out.push(Probe { kind: "x".into(), elem: ToroidalElement::term(deg.clone(), Payload::Alg(k), one.clone()), raise: -t0 });
                }
            }
            if !ctx.in_lattice(&deg) {
                continue;
            }
            for p in 0..=n {
                let kk = ToroidalElement::term(deg.clone(), Payload::K(p), one.clone());
                if !ctx.reduce_kahler(&kk).is_zero() {
                    out.push(Probe { kind: format!("k{p}"), elem: kk, raise: -t0 });
                }
            }
            match rc.settings.assembly {
                Assembly::Toroidal => {
                    for p in 0..=n {
                        out.push(Probe { kind: format!("d{p}"), elem: ToroidalElement::term(deg.clone(), Payload::D(p), one.clone()), raise: -t0 });
                    }
                }
                Assembly::Eala => {
                    if deg.is_zero() {
                        for p in 0..=n {
                            out.push(Probe { kind: format!("d{p}"), elem: ToroidalElement::term(deg.clone(), Payload::D(p), one.clone()), raise: 0 });
                        }
                        continue;
                    }
                    for a in 1..=n {
                        let e = ctx.eala_basis(&r, t0 / m0, EalaKind::Dhat(a), &rc.settings.level)?;
                        out.push(Probe { kind: format!("dhat{a}"), elem: e, raise: -t0 });
                        for b in a + 1..=n {
                            let e = ctx.eala_basis(&r, t0 / m0, EalaKind::Dd(a, b), &rc.settings.level)?;
                            if !e.is_zero() {
                                out.push(Probe { kind: format!("dd{a}{b}"), elem: e, raise: -t0 });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn fock_monomials(n: usize, max_level: i64) -> Vec<Vec<Osc>> {
    let mut oscs = Vec::new();
    for p in 0..n {
        for j in 1..=max_level.max(0) as u32 {
            oscs.push(Osc::U(p, j));
            oscs.push(Osc::V(p, j));
        }
    }
    oscs.sort();
    let mut out = Vec::new();
    fn rec(oscs: &[Osc], start: usize, left: i64, cur: &mut Vec<Osc>, out: &mut Vec<Vec<Osc>>) {
        out.push(cur.clone());
        for i in start..oscs.len() {
            let l = oscs[i].level() as i64;
            if l <= left {
                cur.push(oscs[i]);
                rec(oscs, i, left - l, cur, out);
                cur.pop();
            }
        }
    }
    rec(&oscs, 0, max_level, &mut Vec::new(), &mut out);
    out
}

/// All basis keys of scaled degree at most `max` with the given `q`-exponents.
pub fn basis_keys(rc: &RepContext, max: i64, rs: &[Vec<i64>]) -> Vec<Key> {
    let f = &rc.factors;
    let m0 = rc.m0();
    let fock = fock_monomials(rc.n(), max / m0);
    let w = f.w.basis(&f.w.alg.letters(max), max);
    let n = rc.n() as i64;
    let emax = max / m0;
    let letters: Vec<GlVirGen> = f.gl.alg.alg.generators(-emax..=0).into_iter().filter(|g| f.gl.alg.depth(g) > 0).collect();
    let gl: Vec<Vec<GlVirGen>> = f.gl.basis(&letters, n * emax + n);
    let mut out = Vec::new();
    for r in rs {
        for fm in &fock {
            for wm in &w {
                for gm in &gl {
                    let k = Key { r: r.clone(), fock: fm.clone(), w: wm.clone(), gl: gm.clone() };
                    if rc.degree(&k) <= max {
                        out.push(k);
                    }
                }
            }
        }
    }
    out.sort_by_key(|k| (rc.degree(k), k.clone()));
    out
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct RelationCount {
    pub pairs: usize,
    pub probes: usize,
    /// Probes where the commutator is nonzero.
    pub nonzero: usize,
    pub mismatches: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CommReport {
    pub assembly: Assembly,
    pub relations: BTreeMap<String, RelationCount>,
    pub probes: usize,
    pub mismatches: usize,
    pub first_failure: Option<String>,
}

impl CommReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0 && self.probes > 0
    }
}

/// Samples pairs of probe elements per relation and compares
/// `[rho(A), rho(B)] v` with `rho([A, B]) v` on basis vectors inside the window.
pub fn check_commutators(rc: &RepContext, plan: &SamplePlan) -> Result<CommReport, RepError> {
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let probes = probe_elements(rc, plan.t0_reach, plan.r_reach)?;
    let rs = boxes(rc.n(), plan.vector_r_reach);
    let keys = basis_keys(rc, rc.window(), &rs);
    let mut kinds: Vec<String> = probes.iter().map(|p| p.kind.clone()).collect();
    kinds.sort();
    kinds.dedup();
    let mut report = CommReport { assembly: rc.settings.assembly, relations: BTreeMap::new(), probes: 0, mismatches: 0, first_failure: None };
    for (i, ka) in kinds.iter().enumerate() {
        for kb in &kinds[i..] {
            let mut pairs: Vec<(&Probe, &Probe)> = Vec::new();
            for a in probes.iter().filter(|p| &p.kind == ka) {
                for b in probes.iter().filter(|p| &p.kind == kb) {
                    if a.raise.max(0) + b.raise.max(0) <= rc.window() {
                        pairs.push((a, b));
                    }
                }
            }
            // Pairs of opposite degree carry the central terms; take them first.
            pairs.shuffle(&mut rng);
            pairs.sort_by_key(|(a, b)| !total_degree(a, b).is_zero());
            let balanced = pairs.iter().filter(|(a, b)| total_degree(a, b).is_zero()).count();
            let keep_balanced = balanced.min(plan.pairs_per_relation.div_ceil(2));
            let mut rest = pairs.split_off(balanced);
            pairs.truncate(keep_balanced);
            rest.truncate(plan.pairs_per_relation - keep_balanced);
            pairs.extend(rest);
            let name = format!("{ka}-{kb}");
            let mut count = RelationCount::default();
            for (a, b) in pairs {
                count.pairs += 1;
                let room = rc.window() - a.raise.max(0) - b.raise.max(0);
                let eligible: Vec<&Key> = keys.iter().filter(|k| rc.degree(k) <= room).collect();
                let chosen: Vec<&&Key> = eligible.choose_multiple(&mut rng, plan.vectors_per_pair).collect();
                let bracket = rc.ctx.bracket(&a.elem, &b.elem)?;
                for k in chosen {
                    count.probes += 1;
                    let v = TruncVector::basis((*k).clone());
                    let res = (|| -> Result<(bool, bool), RepError> {
                        let ab = rc.represent(&a.elem, &rc.represent(&b.elem, &v)?)?;
                        let ba = rc.represent(&b.elem, &rc.represent(&a.elem, &v)?)?;
                        let rhs = rc.represent(&bracket, &v)?;
                        Ok((ab.sub(&ba) == rhs, !rhs.is_zero()))
                    })();
                    let ok = match res {
                        Ok((ok, nz)) => {
                            count.nonzero += nz as usize;
                            ok
                        }
                        Err(e) => {
                            if report.first_failure.is_none() {
                                report.first_failure = Some(format!("{name}: error {e}"));
                            }
                            false
                        }
                    };
                    if !ok {
                        count.mismatches += 1;
                        if report.first_failure.is_none() {
                            report.first_failure = Some(format!("{name}: [{:?}, {:?}] on {k}", a.elem.terms.keys().collect::<Vec<_>>(), b.elem.terms.keys().collect::<Vec<_>>()));
                        }
                    }
                }
            }
            report.probes += count.probes;
            report.mismatches += count.mismatches;
            report.relations.insert(name, count);
        }
    }
    Ok(report)
}

fn total_degree(a: &Probe, b: &Probe) -> ToroidalDegree {
    let d = |p: &Probe| p.elem.terms.keys().next().map(|(d, _)| d.clone()).expect("nonzero probe");
    d(a).add(&d(b))
}

/// Coset tag of a `W` monomial: sum of the `sigma_1..sigma_N` residues.
fn w_tag(rc: &RepContext, w: &[WGen]) -> Vec<i64> {
    let ctx = &rc.ctx;
    let mut tag = vec![0i64; rc.n()];
    for g in w {
        if let WGen::X(k, _) = g {
            for (p, t) in tag.iter_mut().enumerate() {
                *t = (*t + ctx.coset[*k][p + 1] as i64).rem_euclid(ctx.orders[p + 1] as i64);
            }
        }
    }
    tag
}

fn r_tag(rc: &RepContext, r: &[i64]) -> Vec<i64> {
    r.iter().enumerate().map(|(p, x)| x.rem_euclid(rc.ctx.orders[p + 1] as i64)).collect()
}

fn in_module(rc: &RepContext, shape: ThinShape, k: &Key) -> bool {
    match shape {
        ThinShape::TwoCopies => true,
        ThinShape::Eigensplit => w_tag(rc, &k.w) == r_tag(rc, &k.r),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ThinReport {
    pub shape: ThinShape,
    pub depth: i64,
    /// Dimension of each tagged piece of `W` per scaled depth.
    pub w_dims: BTreeMap<String, Vec<usize>>,
    pub intertwiner_checks: usize,
    pub closure_checks: usize,
    pub violations: usize,
    pub first_violation: Option<String>,
}

impl ThinReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.closure_checks > 0
    }
}

/// Builds the coset-tagged `W` factor for `shape` and checks that the
/// represented algebra maps `sum_r q^r F W_rbar L` into itself at depth <= `depth`.
pub fn thin_module(rc: &RepContext, shape: ThinShape, depth: i64) -> Result<ThinReport, RepError> {
    let m0 = rc.m0();
    let max = depth * m0;
    let f = &rc.factors;
    let wbasis = f.w.basis(&f.w.alg.letters(max), max);
    let mut w_dims: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    let tags: Vec<Vec<i64>> = match shape {
        ThinShape::TwoCopies => boxes(rc.n(), 1).into_iter().filter(|t| t.iter().enumerate().all(|(p, x)| *x >= 0 && *x < rc.ctx.orders[p + 1] as i64)).collect(),
        ThinShape::Eigensplit => Vec::new(),
    };
    for m in &wbasis {
        let d = f.w.mono_depth(m) as usize;
        let names: Vec<Vec<i64>> = match shape {
            ThinShape::TwoCopies => tags.clone(),
            ThinShape::Eigensplit => vec![w_tag(rc, m)],
        };
        for t in names {
            let e = w_dims.entry(format!("{t:?}")).or_insert_with(|| vec![0; max as usize + 1]);
            e[d] += 1;
        }
    }
    let mut report = ThinReport { shape, depth, w_dims, intertwiner_checks: 0, closure_checks: 0, violations: 0, first_violation: None };
    if shape == ThinShape::Eigensplit && !w_tag(rc, &[]).iter().all(|&x| x == 0) {
        report.violations += 1;
        report.first_violation = Some("top vector outside W_0".into());
    }
    // phi(x_k(n) m) = sigma_1(x_k)(n) phi(m) on every monomial.
    if shape == ThinShape::Eigensplit {
        for m in &wbasis {
            let t = w_tag(rc, m);
            for k in 0..f.w.alg.dim() {
                for n in -max..=max {
                    if !f.w.alg.admits(k, n) || f.w.mono_depth(m) - n > max || n > f.w.mono_depth(m) {
                        continue;
                    }
                    report.intertwiner_checks += 1;
                    let img = f.w.act(&WGen::X(k, n), &crate::verma::ModVec::mono(m.clone(), CycScalar::one()))?;
                    let want: Vec<i64> = t.iter().enumerate().map(|(p, x)| (x + rc.ctx.coset[k][p + 1] as i64).rem_euclid(rc.ctx.orders[p + 1] as i64)).collect();
                    for mm in img.terms.keys() {
                        if w_tag(rc, mm) != want {
                            report.violations += 1;
                            report.first_violation.get_or_insert_with(|| format!("x{k}({n}) on {m:?}"));
                        }
                    }
                }
            }
        }
    }
    let rs = boxes(rc.n(), 1);
    let keys: Vec<Key> = basis_keys(rc, max, &rs).into_iter().filter(|k| in_module(rc, shape, k)).collect();
    let probes = probe_elements(rc, 1, 1)?;
    for p in &probes {
        for k in &keys {
            if rc.degree(k) + p.raise.max(0) > max {
                continue;
            }
            report.closure_checks += 1;
            let img = rc.represent(&p.elem, &TruncVector::basis(k.clone()))?;
            for kk in img.terms.keys() {
                if !in_module(rc, shape, kk) {
                    report.violations += 1;
                    report.first_violation.get_or_insert_with(|| format!("{} maps {k} to {kk}", p.kind));
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct ProxyReport {
    pub fock_depth: i64,
    pub fock_monomials: usize,
    pub reached_from_vacuum: usize,
    pub reach_vacuum: usize,
    pub orbit_depth: i64,
    pub orbit_dim: usize,
    pub sampled_vectors: usize,
    /// Per operator family: (checks, escapes).
    pub operators: BTreeMap<String, (usize, usize)>,
}

impl ProxyReport {
    pub fn passed(&self) -> bool {
        self.reached_from_vacuum == self.fock_monomials
            && self.reach_vacuum == self.fock_monomials
            && self.operators.values().all(|(c, e)| *c > 0 && *e == 0)
    }
}

/// Echelon rows (pivot, row with a unit pivot) of one graded component.
#[derive(Default)]
struct Echelon {
    keys: Vec<Key>,
    rows: Vec<(usize, linalg::Vector)>,
}

impl Echelon {
    fn reduce(&self, mut x: linalg::Vector) -> linalg::Vector {
        for (p, row) in &self.rows {
            if !x[*p].is_zero() {
                let f = x[*p].clone();
                for (xi, ri) in x.iter_mut().zip(row) {
                    if !ri.is_zero() {
                        *xi -= &(&f * ri);
                    }
                }
            }
        }
        x
    }
}

/// Span of vectors, kept per graded component `(degree, r)`.
struct GradedSpan {
    comps: BTreeMap<(i64, Vec<i64>), Echelon>,
}

impl GradedSpan {
    fn component<'a>(&'a mut self, rc: &RepContext, all: &[Key], d: i64, r: &[i64]) -> &'a mut Echelon {
        self.comps.entry((d, r.to_vec())).or_insert_with(|| {
            let keys: Vec<Key> = all.iter().filter(|k| rc.degree(k) == d && k.r == r).cloned().collect();
            Echelon { keys, rows: Vec::new() }
        })
    }

    fn pieces(rc: &RepContext, v: &TruncVector) -> BTreeMap<(i64, Vec<i64>), TruncVector> {
        let mut out: BTreeMap<(i64, Vec<i64>), TruncVector> = BTreeMap::new();
        for (k, c) in &v.terms {
            out.entry((rc.degree(k), k.r.clone())).or_default().add_term(k.clone(), c.clone());
        }
        out
    }

    fn coords_of(keys: &[Key], v: &TruncVector) -> Option<linalg::Vector> {
        let mut x = vec![CycScalar::zero(); keys.len()];
        for (k, c) in &v.terms {
            let i = keys.binary_search(k).ok()?;
            x[i] = c.clone();
        }
        Some(x)
    }

    /// Adds the graded pieces of `v`; true if the span grew.
    fn insert(&mut self, rc: &RepContext, all: &[Key], v: &TruncVector) -> bool {
        let mut grew = false;
        for ((d, r), piece) in Self::pieces(rc, v) {
            let comp = self.component(rc, all, d, &r);
            let Some(x) = Self::coords_of(&comp.keys, &piece) else { continue };
            let x = comp.reduce(x);
            if let Some(p) = x.iter().position(|c| !c.is_zero()) {
                let inv = x[p].inv().expect("nonzero pivot");
                comp.rows.push((p, x.iter().map(|c| c * &inv).collect()));
                grew = true;
            }
        }
        grew
    }

    fn contains(&mut self, rc: &RepContext, all: &[Key], v: &TruncVector) -> bool {
        for ((d, r), piece) in Self::pieces(rc, v) {
            let comp = self.component(rc, all, d, &r);
            match Self::coords_of(&comp.keys, &piece) {
                Some(x) if linalg::is_zero_vec(&comp.reduce(x.clone())) => {}
                _ => return false,
            }
        }
        true
    }

    fn dim(&self) -> usize {
        self.comps.values().map(|c| c.rows.len()).sum()
    }

    fn vectors(&self) -> Vec<TruncVector> {
        let mut out = Vec::new();
        for c in self.comps.values() {
            for (_, b) in &c.rows {
                let mut v = TruncVector::zero();
                for (k, x) in c.keys.iter().zip(b) {
                    v.add_term(k.clone(), x.clone());
                }
                out.push(v);
            }
        }
        out
    }
}

/// Computable ingredients of irreducibility: Heisenberg transitivity on Fock
/// monomials and stability of a cyclic orbit under the auxiliary fields.
pub fn irreducibility_proxy(rc: &RepContext, fock_depth: i64, orbit_depth: i64, r_reach: i64, samples: usize, seed: u64) -> Result<ProxyReport, RepError> {
    let n = rc.n();
    let m0 = rc.m0();
    let zero_r = vec![0i64; n];
    // Heisenberg part: rho(t_0^j k_a) and rho(t_0^j d_a) at r = 0.
    let monos = fock_monomials(n, fock_depth);
    let mut heis = Vec::new();
    for j in -fock_depth..=fock_depth {
        for a in 1..=n {
            let deg = ToroidalDegree::new(j * m0, zero_r.clone());
            heis.push(ToroidalElement::term(deg.clone(), Payload::K(a), CycScalar::one()));
            if rc.settings.assembly == Assembly::Toroidal || j == 0 {
                heis.push(ToroidalElement::term(deg, Payload::D(a), CycScalar::one()));
            } else {
                heis.push(rc.ctx.eala_basis(&zero_r, j, EalaKind::Dhat(a), &rc.settings.level)?);
            }
        }
    }
    let key_of = |m: &Vec<Osc>| Key { r: zero_r.clone(), fock: m.clone(), w: vec![], gl: vec![] };
    let mut edges: BTreeMap<Vec<Osc>, Vec<Vec<Osc>>> = BTreeMap::new();
    for m in &monos {
        let k = key_of(m);
        let mut next = Vec::new();
        for x in &heis {
            let raise = -x.terms.keys().next().map(|(d, _)| d.t0_num).unwrap_or(0);
            if rc.degree(&k) + raise > fock_depth * m0 || rc.degree(&k) + raise < 0 {
                continue;
            }
            for kk in rc.represent(x, &TruncVector::basis(k.clone()))?.terms.keys() {
                if kk.w.is_empty() && kk.gl.is_empty() && fock_degree(&kk.fock) <= fock_depth {
                    next.push(kk.fock.clone());
                }
            }
        }
        edges.insert(m.clone(), next);
    }
    let reach = |start: &Vec<Osc>| -> std::collections::BTreeSet<Vec<Osc>> {
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![start.clone()];
        while let Some(m) = stack.pop() {
            if seen.insert(m.clone()) {
                stack.extend(edges[&m].iter().cloned());
            }
        }
        seen
    };
    let from_vac = reach(&vec![]).len();
    let to_vac = monos.iter().filter(|m| reach(m).contains(&Vec::new())).count();

    // Cyclic orbit of the vacuum under sampled probe elements.
    let max = orbit_depth * m0;
    let rs: Vec<Vec<i64>> = boxes(n, r_reach);
    let all = basis_keys(rc, max, &rs);
    let mut span = GradedSpan { comps: BTreeMap::new() };
    let vac = TruncVector::basis(Key::vacuum(n));
    span.insert(rc, &all, &vac);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens = probe_elements(rc, orbit_depth, r_reach)?;
    gens.shuffle(&mut rng);
    let in_box = |v: &TruncVector| v.terms.keys().all(|k| k.r.iter().all(|x| x.abs() <= r_reach));
    let mut frontier = vec![vac];
    while let Some(v) = frontier.pop() {
        let d = rc.factors.max_degree(&v);
        for g in &gens {
            if d + g.raise > max {
                continue;
            }
            let w = rc.represent(&g.elem, &v)?;
            if w.is_zero() || !in_box(&w) {
                continue;
            }
            if span.insert(rc, &all, &w) {
                frontier.push(w);
            }
        }
    }
    let mut orbit = span.vectors();
    orbit.shuffle(&mut rng);
    orbit.truncate(samples);
    let mut operators: BTreeMap<String, (usize, usize)> = BTreeMap::new();
    let mut families: Vec<(String, Field, i64)> = vec![
        ("omega_hyp".into(), rc.omega_hyp(), 2),
        ("sugawara".into(), rc.sugawara().clone(), 2),
        ("omega_glvir".into(), Field::Lgl, 2),
    ];
    for a in 0..n {
        for b in 0..n {
            let mut u = vec![vec![crate::cycfield::rat_int(0); n]; n];
            u[a][b] = crate::cycfield::rat_int(1);
            if rc.settings.assembly == Assembly::Eala && a == b {
                continue;
            }
            families.push((format!("E{}{}", a + 1, b + 1), Field::Gl(u), 1));
        }
    }
    for k in 0..rc.ctx.algebra.dim() {
        for r in &rs {
            let deg_ok = (0..n).all(|p| (r[p] - rc.ctx.coset[k][p + 1] as i64).rem_euclid(rc.ctx.orders[p + 1] as i64) == 0);
            if deg_ok {
                families.push((format!("qY_W(x{k})"), rc.x_img(k, r), 1));
            }
        }
    }
    for (name, f, _) in &families {
        let entry = operators.entry(name.split('(').next().unwrap_or(name).to_string()).or_insert((0, 0));
        for v in &orbit {
            let d = rc.factors.max_degree(&v);
            for e in (-(max + 3 * m0))..=max {
                let h = rc.factors.weight(f);
                if d + h + e > max || d + h + e < 0 {
                    continue;
                }
                let w = rc.coefficient(f, e, v)?;
                if !in_box(&w) {
                    continue;
                }
                entry.0 += 1;
                if !span.contains(rc, &all, &w) {
                    entry.1 += 1;
                }
            }
        }
    }
    Ok(ProxyReport {
        fock_depth,
        fock_monomials: monos.len(),
        reached_from_vacuum: from_vac,
        reach_vacuum: to_vac,
        orbit_depth,
        orbit_dim: span.dim(),
        sampled_vectors: orbit.len(),
        operators,
    })
}
