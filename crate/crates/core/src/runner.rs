//! Run configurations, the verification suites behind the CLI, and report
//! writing.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::affroot::{factorize_preset, reference_factorization, thin_covering_shape, AffineRootSystem, ThinShape};
use crate::cliffordtkk::{parse_cosets, TkkIso};
use crate::cycfield::{parse_rat, rat_int, root_of_unity, CycScalar, Rat};
use crate::liestruct::{
    build_so, centralizer_in, conj_automorphism, exp_ad_rational, invariant_cartan, simultaneous_grading, LieAut, StructLie,
};
use crate::linalg;
use crate::presets::{self, tkk_index_set, tkk_sign_vectors, PresetData, PresetName};
use crate::toroidal::{jacobi_sweep, Payload, ToroidalContext, ToroidalDegree, ToroidalElement};
use crate::vertexrep::{check_commutators, irreducibility_proxy, thin_module, Assembly, RepContext, RepSettings, SamplePlan};

pub const SCHEMA: u64 = 1;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RunError {
    #[error("config: {0}")]
    Config(String),
    #[error("depth: {0}")]
    Depth(String),
    #[error("computation: {0}")]
    Compute(String),
}

impl RunError {
    pub fn kind(&self) -> &'static str {
        match self {
            RunError::Config(_) => "config",
            RunError::Depth(_) => "depth",
            RunError::Compute(_) => "computation",
        }
    }
}

fn compute<E: fmt::Display>(e: E) -> RunError {
    RunError::Compute(e.to_string())
}

fn rep_err(e: crate::vertexrep::RepError) -> RunError {
    match e {
        crate::vertexrep::RepError::Depth(d) => RunError::Depth(d.to_string()),
        crate::vertexrep::RepError::Window(w) => RunError::Depth(w),
        crate::vertexrep::RepError::Precondition(p) => RunError::Config(p),
        other => compute(other),
    }
}

/// Integers or strings such as `"-3/2"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Fraction {
    Int(i64),
    Text(String),
}

impl Fraction {
    pub fn value(&self) -> Result<Rat, RunError> {
        match self {
            Fraction::Int(n) => Ok(rat_int(*n)),
            Fraction::Text(s) => parse_rat(s).map_err(|e| RunError::Config(format!("fraction {s:?}: {e}"))),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum CosetList {
    Text(String),
    Lists(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub example: Option<String>,
    pub algebra: Option<String>,
    pub cosets: Option<CosetList>,
    pub index_set: Option<Vec<String>>,
    /// Diagonal sign vectors of `sigma_0, sigma_1, ...` when `index_set` is given without cosets.
    pub signs: Option<Vec<Vec<i64>>>,
    pub orders: Option<Vec<u32>>,
    pub level_c: Option<Fraction>,
    pub mu: Option<Fraction>,
    pub nu: Option<Fraction>,
    pub depth: Option<i64>,
    pub assembly: Option<Assembly>,
    /// Affine weight labels; only used to predict the thin-covering shape.
    pub hw_labels: Option<Vec<i64>>,
    pub seed: Option<u64>,
    pub out: Option<String>,
}

impl RunConfig {
    pub fn example(name: &str) -> Self {
        RunConfig { example: Some(name.into()), ..Default::default() }
    }

    pub fn from_json(text: &str) -> Result<Self, RunError> {
        serde_json::from_str(text).map_err(|e| RunError::Config(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    VerifyAlgebra,
    VerifyTkk,
    Factorize,
    VerifyRep,
    All,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Command::VerifyAlgebra => "verify-algebra",
            Command::VerifyTkk => "verify-tkk",
            Command::Factorize => "factorize",
            Command::VerifyRep => "verify-rep",
            Command::All => "all",
        }
    }
}

/// A config with every field resolved.
pub struct Setup {
    pub example: String,
    pub preset: Option<PresetData>,
    pub cosets: Option<Vec<Vec<i64>>>,
    pub algebra: StructLie,
    pub signs: Vec<Vec<i64>>,
    pub autos: Vec<LieAut>,
    pub level: Rat,
    pub mu: Rat,
    pub nu: Rat,
    pub depth: i64,
    pub assembly: Assembly,
    pub hw_labels: Option<Vec<i64>>,
    pub seed: u64,
}

impl Setup {
    pub fn resolve(cfg: &RunConfig) -> Result<Self, RunError> {
        if let Some(a) = &cfg.algebra {
            if a != "so" {
                return Err(RunError::Config(format!("unsupported algebra {a:?}, only \"so\"")));
            }
        }
        let example = cfg.example.clone().unwrap_or_else(|| "custom".into());
        let preset_name = match example.as_str() {
            "custom" => None,
            s => Some(PresetName::parse(s).ok_or_else(|| RunError::Config(format!("unknown example {s:?}")))?),
        };
        let cosets = match (&cfg.cosets, preset_name) {
            (Some(CosetList::Text(s)), _) => Some(parse_cosets(s).map_err(|e| RunError::Config(e.to_string()))?),
            (Some(CosetList::Lists(v)), _) => Some(v.clone()),
            (None, Some(p)) => Some(p.cosets()),
            (None, None) => None,
        };
        if let (Some(p), Some(c)) = (preset_name, &cosets) {
            if c != &p.cosets() {
                return Err(RunError::Config(format!("{} fixes its cosets", p.as_str())));
            }
        }
        let (algebra, signs) = match (&cosets, &cfg.index_set) {
            (Some(c), idx) => {
                // Validates the coset list itself (lengths, distinct classes, trivial coset).
                crate::cliffordtkk::JordanTorus::new(c).map_err(|e| RunError::Config(e.to_string()))?;
                let derived = tkk_index_set(c);
                if let Some(i) = idx {
                    if i != &derived {
                        return Err(RunError::Config(format!("index_set {i:?} disagrees with the cosets ({derived:?})")));
                    }
                }
                if cfg.signs.is_some() {
                    return Err(RunError::Config("signs are derived from the cosets".into()));
                }
                (build_so(&derived).map_err(|e| RunError::Config(e.to_string()))?, tkk_sign_vectors(c))
            }
            (None, Some(idx)) => {
                let signs = cfg.signs.clone().ok_or_else(|| RunError::Config("index_set needs signs".into()))?;
                (build_so(idx).map_err(|e| RunError::Config(e.to_string()))?, signs)
            }
            (None, None) => return Err(RunError::Config("need an example, cosets or index_set".into())),
        };
        if signs.len() < 2 {
            return Err(RunError::Config("need sigma_0 and at least one sigma_p".into()));
        }
        let autos = signs
            .iter()
            .map(|s| conj_automorphism(&algebra, s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| RunError::Config(e.to_string()))?;
        let preset = preset_name.map(|p| presets::load(p).map_err(compute)).transpose()?;
        let frac = |f: &Option<Fraction>, d: i64| f.as_ref().map_or(Ok(rat_int(d)), |x| x.value());
        let setup = Setup {
            example,
            preset,
            cosets,
            algebra,
            signs,
            autos,
            level: frac(&cfg.level_c, 1)?,
            mu: frac(&cfg.mu, 0)?,
            nu: frac(&cfg.nu, 0)?,
            depth: cfg.depth.unwrap_or(3),
            assembly: cfg.assembly.unwrap_or(Assembly::Toroidal),
            hw_labels: cfg.hw_labels.clone(),
            seed: cfg.seed.unwrap_or(0),
        };
        if setup.depth < 0 {
            return Err(RunError::Config("depth must be non-negative".into()));
        }
        if let Some(o) = &cfg.orders {
            let ctx = setup.context(rat_int(0), rat_int(0))?;
            if o != &ctx.orders {
                return Err(RunError::Config(format!("orders {o:?} disagree with the automorphisms ({:?})", ctx.orders)));
            }
        }
        Ok(setup)
    }

    pub fn context(&self, mu: Rat, nu: Rat) -> Result<ToroidalContext, RunError> {
        ToroidalContext::new(&self.algebra, &self.autos, mu, nu).map_err(compute)
    }

    fn echo(&self) -> Value {
        json!({
            "example": self.example,
            "cosets": self.cosets,
            "index_set": self.algebra.index_set,
            "signs": self.signs,
            "level_c": self.level.to_string(),
            "mu": self.mu.to_string(),
            "nu": self.nu.to_string(),
            "depth": self.depth,
            "assembly": self.assembly,
            "hw_labels": self.hw_labels,
            "seed": self.seed,
        })
    }
}

pub struct Report {
    pub value: Value,
    pub passed: bool,
}

fn suite(mut v: Value, passed: bool) -> (Value, bool) {
    v["passed"] = json!(passed);
    (v, passed)
}

/// Jacobi triples per cocycle, and the coordinate box.
pub const JACOBI_TRIPLES: usize = 200;
pub const JACOBI_BOX: i64 = 3;

/// Eigenspace dimensions read off the sign vectors: `e_ab` has sign `s_a s_b`.
pub fn sign_oracle_dims(signs: &[Vec<i64>]) -> BTreeMap<Vec<u32>, usize> {
    let n = signs[0].len();
    let mut out = BTreeMap::new();
    for a in 0..n {
        for b in a + 1..n {
            let key = signs.iter().map(|s| u32::from(s[a] * s[b] < 0)).collect();
            *out.entry(key).or_insert(0) += 1;
        }
    }
    out
}

fn coset_key(c: &[u32]) -> String {
    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn verify_algebra(s: &Setup) -> Result<(Value, bool), RunError> {
    let l = &s.algebra;
    let mut ok = true;
    let jac = l.jacobi_violation();
    let anti = l.antisymmetry_violation();
    let form = l.form_violation();
    ok &= jac.is_none() && anti.is_none() && form.is_none();

    let mut aut_failures = Vec::new();
    for (i, a) in s.autos.iter().enumerate() {
        if let Some(w) = a.preserves_bracket(l) {
            aut_failures.push(format!("sigma_{i} breaks [{}, {}]", w.0, w.1));
        }
        if let Some(w) = a.preserves_form(l) {
            aut_failures.push(format!("sigma_{i} breaks the form on ({}, {})", w.0, w.1));
        }
        for (j, b) in s.autos.iter().enumerate().skip(i + 1) {
            if !a.commutes_with(b) {
                aut_failures.push(format!("sigma_{i} and sigma_{j} do not commute"));
            }
        }
    }
    ok &= aut_failures.is_empty();

    let roots = s.autos.iter().map(|a| root_of_unity(a.order, 1)).collect::<Result<Vec<_>, _>>().map_err(compute)?;
    let grading = simultaneous_grading(l, &s.autos, &roots).map_err(compute)?;
    let dims = grading.dims();
    let oracle = sign_oracle_dims(&s.signs);
    let dims_match = dims.iter().filter(|(_, d)| **d > 0).map(|(k, d)| (k.clone(), *d)).collect::<BTreeMap<_, _>>() == oracle;
    let compat = grading.compatibility_violation(l);
    ok &= dims_match && compat.is_none();

    // Toroidal bracket.
    let n = s.autos.len() - 1;
    let mut jacobi = BTreeMap::new();
    for (mu, nu) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        let ctx = s.context(rat_int(mu), rat_int(nu))?;
        let bad = jacobi_sweep(&ctx, s.seed, JACOBI_TRIPLES, JACOBI_BOX);
        ok &= bad.is_none();
        let witness = bad.map(|t| t.iter().map(|x| x.to_json()).collect::<Vec<_>>());
        jacobi.insert(format!("mu={mu},nu={nu}"), json!({"triples": JACOBI_TRIPLES, "box": JACOBI_BOX, "failure": witness}));
    }
    let taus = tau_values(s)?;
    let k0 = ToroidalElement::term(ToroidalDegree::zero(n), Payload::K(0), CycScalar::one());
    let tau_ok = taus.iter().all(|(_, v)| v == &k0);
    ok &= tau_ok;

    // Invariant Cartan subalgebra.
    let cartan = invariant_cartan(l, &s.autos, s.seed).map_err(compute)?;
    let h = &cartan.basis;
    let all: Vec<linalg::Vector> = (0..l.dim()).map(|i| l.basis_vec(i)).collect();
    let invariant = s.autos.iter().all(|a| h.iter().all(|v| linalg::in_span(h, &a.apply(v))));
    let abelian = h.iter().all(|a| h.iter().all(|b| linalg::is_zero_vec(&l.bracket_unchecked(a, b))));
    let self_centralizing = centralizer_in(l, &all, h).len() == h.len();
    let rank = crate::liestruct::so_rank(l.index_set.as_ref().map_or(0, |i| i.len()));
    ok &= invariant && abelian && self_centralizing && h.len() == rank;

    let exp = match &s.preset {
        Some(p) => {
            let (hv, t) = &p.sigma0_generator;
            let e = exp_ad_rational(l, hv, t).map_err(compute)?;
            let equal = e.matrix == p.sigmas[0].matrix;
            ok &= equal;
            json!({"t": t.to_string(), "equals_sigma_0": equal})
        }
        None => Value::Null,
    };

    Ok(suite(
        json!({
            "dim": l.dim(),
            "labels": l.labels,
            "dual_coxeter": l.dual_coxeter.to_string(),
            "jacobi_violation": jac,
            "antisymmetry_violation": anti,
            "form_violation": form,
            "automorphism_failures": aut_failures,
            "orders": grading.lattice_orders,
            "eigenspace_dims": dims.iter().map(|(k, d)| (coset_key(k), *d)).collect::<BTreeMap<_, _>>(),
            "sign_oracle_dims": oracle.iter().map(|(k, d)| (coset_key(k), *d)).collect::<BTreeMap<_, _>>(),
            "dims_match_oracle": dims_match,
            "grading_violation": compat.map(|(a, b)| format!("{} x {}", coset_key(&a), coset_key(&b))),
            "toroidal": {
                "n_vars": n,
                "jacobi": jacobi,
                "tau": taus.iter().map(|(k, v)| (k.clone(), json!(v.to_json()))).collect::<BTreeMap<_, _>>(),
                "tau_equals_k0": tau_ok,
            },
            "cartan": {
                "dim": h.len(),
                "rank": rank,
                "invariant": invariant,
                "abelian": abelian,
                "self_centralizing": self_centralizing,
                "samples": cartan.samples,
            },
            "exp_realization": exp,
        }),
        ok,
    ))
}

/// `tau_1` and `tau_2` on `(t_0 d_0, t_0^{-1} d_0)`.
pub fn tau_values(s: &Setup) -> Result<Vec<(String, ToroidalElement)>, RunError> {
    let n = s.autos.len() - 1;
    let mut out = Vec::new();
    for (name, mu, nu) in [("tau_1", 1, 0), ("tau_2", 0, 1)] {
        let ctx = s.context(rat_int(mu), rat_int(nu))?;
        let m0 = ctx.m0() as i64;
        let v = ToroidalElement::term(ToroidalDegree::new(m0, vec![0; n]), Payload::D(0), CycScalar::one());
        let w = ToroidalElement::term(ToroidalDegree::new(-m0, vec![0; n]), Payload::D(0), CycScalar::one());
        out.push((name.to_string(), ctx.cocycle_tau(&v, &w).map_err(compute)?));
    }
    Ok(out)
}

pub const TKK_BOX: i64 = 2;

pub fn verify_tkk(s: &Setup) -> Result<(Value, bool), RunError> {
    let cosets = s.cosets.as_ref().ok_or_else(|| RunError::Config("verify-tkk needs cosets".into()))?;
    let iso = TkkIso::new(cosets).map_err(|e| RunError::Config(e.to_string()))?;
    let rep = iso.verify(TKK_BOX).map_err(compute)?;
    let ok = rep.passed();
    let v = serde_json::to_value(&rep).map_err(compute)?;
    Ok(suite(v, ok))
}

pub fn factorize(s: &Setup) -> Result<(Value, bool), RunError> {
    let p = s.preset.as_ref().ok_or_else(|| RunError::Config("factorize needs a packaged example".into()))?;
    let rep = factorize_preset(p).map_err(compute)?;
    let ok = rep.matches_reference;
    let mut v = serde_json::to_value(&rep).map_err(compute)?;
    // The printed word action, composed with the diagram automorphism.
    let (w, g) = reference_factorization(p.name);
    v["word_action"] = json!(format!("{}{}", w.describe(), g.describe()));
    Ok(suite(v, ok))
}

/// Sampling and truncation knobs of the representation suite.
#[derive(Debug, Clone)]
pub struct RepPlan {
    pub commutators: SamplePlan,
    pub thin_depth: i64,
    pub proxy_fock_depth: i64,
    pub proxy_orbit_depth: i64,
    pub proxy_r_reach: i64,
    pub proxy_samples: usize,
}

impl RepPlan {
    pub fn for_depth(depth: i64, seed: u64) -> Self {
        RepPlan {
            commutators: SamplePlan { seed, ..SamplePlan::default() },
            thin_depth: depth.min(2),
            proxy_fock_depth: depth.min(3),
            proxy_orbit_depth: depth.min(2),
            proxy_r_reach: 2,
            proxy_samples: 64,
        }
    }
}

pub fn rep_context(s: &Setup) -> Result<RepContext, RunError> {
    let settings = RepSettings::new(s.level.clone(), s.mu.clone(), s.nu.clone(), s.depth, s.assembly);
    RepContext::new(&s.algebra, &s.autos, settings).map_err(rep_err)
}

pub fn verify_rep(s: &Setup, plan: &RepPlan) -> Result<(Value, bool), RunError> {
    let rc = rep_context(s)?;
    let comm = check_commutators(&rc, &plan.commutators).map_err(rep_err)?;
    let mut ok = comm.passed();
    let mut thin = BTreeMap::new();
    for shape in [ThinShape::TwoCopies, ThinShape::Eigensplit] {
        let r = thin_module(&rc, shape, plan.thin_depth).map_err(rep_err)?;
        ok &= r.passed();
        let mut v = serde_json::to_value(&r).map_err(compute)?;
        v["passed"] = json!(r.passed());
        thin.insert(shape.to_string(), v);
    }
    let proxy = irreducibility_proxy(
        &rc,
        plan.proxy_fock_depth,
        plan.proxy_orbit_depth,
        plan.proxy_r_reach,
        plan.proxy_samples,
        plan.commutators.seed,
    )
    .map_err(rep_err)?;
    ok &= proxy.passed();
    let predicted = match (&s.hw_labels, &s.preset) {
        (Some(labels), Some(p)) => {
            let rs = AffineRootSystem::for_preset(p.name);
            let (_, gamma) = reference_factorization(p.name);
            json!(thin_covering_shape(&rs, &gamma, labels).map_err(|e| RunError::Config(e.to_string()))?.to_string())
        }
        _ => Value::Null,
    };
    let mut proxy_v = serde_json::to_value(&proxy).map_err(compute)?;
    proxy_v["passed"] = json!(proxy.passed());
    proxy_v["r_reach"] = json!(plan.proxy_r_reach);
    let mut comm_v = serde_json::to_value(&comm).map_err(compute)?;
    comm_v["passed"] = json!(comm.passed());
    comm_v["plan"] = serde_json::to_value(&plan.commutators).map_err(compute)?;
    Ok(suite(
        json!({
            "assembly": s.assembly,
            "level_c": s.level.to_string(),
            "mu": s.mu.to_string(),
            "nu": s.nu.to_string(),
            "depth": s.depth,
            "m0": rc.m0(),
            "n_vars": rc.n(),
            "dual_coxeter": rc.hv.to_string(),
            "charges": rc.charges,
            "commutators": comm_v,
            "thin": thin,
            "predicted_shape": predicted,
            "proxy": proxy_v,
        }),
        ok,
    ))
}

fn run_one(s: &Setup, cmd: Command) -> Result<(Value, bool), RunError> {
    match cmd {
        Command::VerifyAlgebra => verify_algebra(s),
        Command::VerifyTkk => verify_tkk(s),
        Command::Factorize => factorize(s),
        Command::VerifyRep => verify_rep(s, &RepPlan::for_depth(s.depth, s.seed)),
        Command::All => unreachable!(),
    }
}

/// Runs `cmd`; errors become a report with an `error` object.
pub fn run(cfg: &RunConfig, cmd: Command) -> Report {
    let mut root = json!({"schema": SCHEMA, "command": cmd.as_str()});
    let setup = match Setup::resolve(cfg) {
        Ok(s) => s,
        Err(e) => return error_report(root, &e),
    };
    root["config"] = setup.echo();
    root["seed"] = json!(setup.seed);
    let cmds: Vec<Command> = match cmd {
        Command::All => {
            let mut v = vec![Command::VerifyAlgebra, Command::VerifyTkk];
            if setup.preset.is_some() {
                v.push(Command::Factorize);
            }
            v.push(Command::VerifyRep);
            v
        }
        c => vec![c],
    };
    let mut suites = serde_json::Map::new();
    let mut passed = true;
    for c in cmds {
        match run_one(&setup, c) {
            Ok((v, ok)) => {
                passed &= ok;
                suites.insert(c.as_str().into(), v);
            }
            Err(e) => {
                root["suites"] = Value::Object(suites);
                return error_report(root, &e);
            }
        }
    }
    root["suites"] = Value::Object(suites);
    root["passed"] = json!(passed);
    Report { value: root, passed }
}

fn error_report(mut root: Value, e: &RunError) -> Report {
    root["passed"] = json!(false);
    root["error"] = json!({"kind": e.kind(), "message": e.to_string()});
    Report { value: root, passed: false }
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

/// Writes to a sibling temporary file, then renames over `path`.
pub fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_else(|| "report".into());
    let tmp = path.with_file_name(format!(".{name}.{}.tmp", std::process::id()));
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_oracle_for_baby() {
        let d = sign_oracle_dims(&tkk_sign_vectors(&PresetName::BabyTkk.cosets()));
        assert_eq!(d.values().copied().collect::<Vec<_>>(), vec![3, 3, 3, 1]);
    }

    #[test]
    fn config_parsing() {
        let c = RunConfig::from_json(r#"{"example":"custom","cosets":"(0,0),(0,1),(1,0)","level_c":"3/2","mu":1}"#).unwrap();
        let s = Setup::resolve(&c).unwrap();
        assert_eq!(s.level, crate::cycfield::rat(3, 2));
        assert_eq!(s.mu, rat_int(1));
        assert!(RunConfig::from_json(r#"{"bogus":1}"#).is_err());
        let bad = RunConfig::from_json(r#"{"cosets":"(0,0),(1"}"#).unwrap();
        assert!(matches!(Setup::resolve(&bad), Err(RunError::Config(_))));
        let wrong_orders = RunConfig { orders: Some(vec![3, 2]), ..RunConfig::example("baby-tkk") };
        assert!(Setup::resolve(&wrong_orders).is_err());
        let ok_orders = RunConfig { orders: Some(vec![2, 2]), ..RunConfig::example("baby-tkk") };
        assert!(Setup::resolve(&ok_orders).is_ok());
    }

    #[test]
    fn malformed_cosets_give_a_config_error_report() {
        let c = RunConfig::from_json(r#"{"cosets":"(0,0),(0,x)"}"#).unwrap();
        let r = run(&c, Command::VerifyTkk);
        assert!(!r.passed);
        assert_eq!(r.value["error"]["kind"], "config");
        assert_eq!(r.value["schema"], 1);
    }

    #[test]
    fn index_set_with_signs() {
        let c = RunConfig {
            index_set: Some(vec!["1".into(), "2".into(), "3".into(), "4".into(), "5".into()]),
            signs: Some(vec![vec![1, 1, 1, 1, -1], vec![1, 1, 1, -1, 1]]),
            ..Default::default()
        };
        let s = Setup::resolve(&c).unwrap();
        assert_eq!(s.context(rat_int(0), rat_int(0)).unwrap().orders, vec![2, 2]);
        assert!(matches!(verify_tkk(&s), Err(RunError::Config(_))));
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r.json");
        write_atomic(&p, "a").unwrap();
        write_atomic(&p, "b").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "b");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
