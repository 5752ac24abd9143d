//! One pass/fail line per acceptance criterion. Runs without the libtest
//! harness so the lines always show: `cargo test -p toroidalg --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use toroidalg::affroot::{factorize_preset, AffineRootSystem, ThinShape};
use toroidalg::cliffordtkk::{binom, TkkIso};
use toroidalg::cycfield::{rat, rat_int, CycScalar};
use toroidalg::liestruct::{centralizer_in, exp_ad_rational, invariant_cartan};
use toroidalg::linalg;
use toroidalg::presets::{load, tkk_sign_vectors, PresetName};
use toroidalg::runner::{self, sign_oracle_dims, Command, RunConfig, Setup};
use toroidalg::toroidal::{jacobi_sweep, Payload, ToroidalDegree, ToroidalElement};
use toroidalg::vertexrep::{check_commutators, irreducibility_proxy, thin_module, Assembly, RepContext, RepSettings, SamplePlan};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn structure() -> Outcome {
    let mut notes = Vec::new();
    for (name, dim) in [(PresetName::BabyTkk, 10), (PresetName::FullTkk, 15)] {
        let p = load(name).map_err(|e| e.to_string())?;
        let l = &p.algebra;
        ensure(l.dim() == dim, format!("{} has dim {}", name.as_str(), l.dim()))?;
        ensure(l.jacobi_violation().is_none(), "Jacobi")?;
        ensure(l.antisymmetry_violation().is_none(), "antisymmetry")?;
        ensure(l.form_violation().is_none(), "form invariance")?;
        let s = Setup::resolve(&RunConfig::example(name.as_str())).map_err(|e| e.to_string())?;
        let ctx = s.context(rat_int(0), rat_int(0)).map_err(|e| e.to_string())?;
        let mut got = std::collections::BTreeMap::new();
        for c in &ctx.coset {
            *got.entry(c.clone()).or_insert(0usize) += 1;
        }
        let oracle = sign_oracle_dims(&tkk_sign_vectors(&p.cosets));
        ensure(got == oracle, format!("{}: {got:?} vs oracle {oracle:?}", name.as_str()))?;
        let table: Vec<usize> = got.values().copied().collect();
        if name == PresetName::BabyTkk {
            ensure(table == vec![3, 3, 3, 1], format!("so5 table {table:?}"))?;
        }
        notes.push(format!("{} dims {table:?}", name.as_str()));
    }
    Ok(notes.join(", "))
}

fn toroidal_bracket() -> Outcome {
    let configs = [("baby-tkk", None), ("three-variable", Some(vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]))];
    let mut notes = Vec::new();
    for (label, cosets) in configs {
        let cfg = match cosets {
            None => RunConfig::example(label),
            Some(c) => RunConfig { cosets: Some(runner::CosetList::Lists(c)), ..Default::default() },
        };
        let s = Setup::resolve(&cfg).map_err(|e| e.to_string())?;
        let n = s.autos.len() - 1;
        for (mu, nu) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let ctx = s.context(rat_int(mu), rat_int(nu)).map_err(|e| e.to_string())?;
            if let Some(t) = jacobi_sweep(&ctx, 2024, 200, 3) {
                return Err(format!("N={n} mu={mu} nu={nu}: Jacobi fails on {:?}", t[0].to_json()));
            }
        }
        let k0 = ToroidalElement::term(ToroidalDegree::zero(n), Payload::K(0), CycScalar::one());
        for (name, v) in runner::tau_values(&s).map_err(|e| e.to_string())? {
            ensure(v == k0, format!("N={n}: {name} = {:?}", v.to_json()))?;
        }
        notes.push(format!("N={n}"));
    }
    Ok(format!("200 triples x 4 cocycles for {}", notes.join(", ")))
}

fn tkk_iso() -> Outcome {
    let mut notes = Vec::new();
    for name in [PresetName::BabyTkk, PresetName::FullTkk] {
        let rep = TkkIso::new(&name.cosets()).and_then(|i| i.verify(2)).map_err(|e| e.to_string())?;
        ensure(rep.passed(), format!("{}: {:?}", name.as_str(), rep.first_mismatch))?;
        let r = rep.r as i64;
        ensure(3 * r + binom(r - 1, 2) == binom(r + 2, 2), format!("identity at r={r}"))?;
        notes.push(format!("r={r}: {} pairs", rep.pairs));
    }
    Ok(notes.join(", "))
}

fn golden_roots() -> Outcome {
    let p = load(PresetName::BabyTkk).map_err(|e| e.to_string())?;
    let rep = factorize_preset(&p).map_err(|e| e.to_string())?;
    let rs = AffineRootSystem::b2_1();
    for (alpha, want) in [("α1", "-δ-α1"), ("α2", "δ+2α1+α2"), ("α0", "2δ-α2")] {
        let got = rs.parse_root(&rep.images[alpha]).map_err(|e| e.to_string())?;
        let want = rs.parse_root(want).map_err(|e| e.to_string())?;
        ensure(got == want, format!("{alpha} -> {}", rep.images[alpha]))?;
    }
    ensure(rep.e1_image == "-1*t0^-1⊗f1", format!("e1 -> {}", rep.e1_image))?;
    ensure(rep.matches_reference, format!("so5 factorization {} {}", rep.word, rep.diagram_aut))?;
    let p6 = load(PresetName::FullTkk).map_err(|e| e.to_string())?;
    let rep6 = factorize_preset(&p6).map_err(|e| e.to_string())?;
    ensure(rep6.matches_reference, format!("so6 factorization {} {}", rep6.word, rep6.diagram_aut))?;
    Ok(format!(
        "so5 {}{} = {}{}, so6 {}{} = {}{}",
        rep.word, rep.diagram_aut, rep.reference_word, rep.reference_diagram_aut, rep6.word, rep6.diagram_aut, rep6.reference_word, rep6.reference_diagram_aut
    ))
}

fn appendix() -> Outcome {
    let mut notes = Vec::new();
    for (name, rank) in [(PresetName::BabyTkk, 2), (PresetName::FullTkk, 3)] {
        let p = load(name).map_err(|e| e.to_string())?;
        let l = &p.algebra;
        let h = invariant_cartan(l, &p.sigmas, 1).map_err(|e| e.to_string())?.basis;
        ensure(h.len() == rank, format!("{}: dim h = {}", name.as_str(), h.len()))?;
        for s in &p.sigmas {
            for v in &h {
                ensure(linalg::in_span(&h, &s.apply(v)), "not invariant")?;
            }
        }
        for a in &h {
            for b in &h {
                ensure(linalg::is_zero_vec(&l.bracket_unchecked(a, b)), "not abelian")?;
            }
        }
        let all: Vec<_> = (0..l.dim()).map(|i| l.basis_vec(i)).collect();
        ensure(centralizer_in(l, &all, &h).len() == h.len(), "centralizer is larger than h")?;
        let (hv, t) = &p.sigma0_generator;
        let e = exp_ad_rational(l, hv, t).map_err(|e| e.to_string())?;
        ensure(e.matrix == p.sigmas[0].matrix, format!("{}: exp realization differs", name.as_str()))?;
        notes.push(format!("{} dim h = {rank}", name.as_str()));
    }
    Ok(notes.join(", "))
}

fn baby_rep(mu: i64, assembly: Assembly, depth: i64) -> Result<RepContext, String> {
    let p = load(PresetName::BabyTkk).map_err(|e| e.to_string())?;
    let settings = RepSettings::new(rat_int(1), rat_int(mu), rat_int(0), depth, assembly);
    RepContext::new(&p.algebra, &p.sigmas, settings).map_err(|e| e.to_string())
}

fn representation() -> Outcome {
    let mut probes = 0;
    for assembly in [Assembly::Toroidal, Assembly::Eala] {
        for mu in [0, 1] {
            let rc = baby_rep(mu, assembly, 3)?;
            let r = check_commutators(&rc, &SamplePlan { seed: 6, ..SamplePlan::default() }).map_err(|e| e.to_string())?;
            ensure(r.passed(), format!("{assembly:?} mu={mu}: {} mismatches, {:?}", r.mismatches, r.first_failure))?;
            probes += r.probes;
            if mu == 0 {
                // dim so5 = 10, h = 3, N = 1, c = 1.
                ensure(rc.charges.c_vir == rat(-9, 2), format!("{assembly:?}: C_Vir = {}", rc.charges.c_vir))?;
            }
        }
    }
    let rc = baby_rep(0, Assembly::Toroidal, 3)?;
    let mut closure = 0;
    for shape in [ThinShape::TwoCopies, ThinShape::Eigensplit] {
        let t = thin_module(&rc, shape, 2).map_err(|e| e.to_string())?;
        ensure(t.passed(), format!("{shape}: {:?}", t.first_violation))?;
        closure += t.closure_checks;
    }
    Ok(format!("{probes} commutator probes, {closure} closure checks, C_Vir = -9/2"))
}

fn irreducibility_ingredients() -> Outcome {
    let mut notes = Vec::new();
    for assembly in [Assembly::Toroidal, Assembly::Eala] {
        let rc = baby_rep(0, assembly, 3)?;
        let r = irreducibility_proxy(&rc, 3, 2, 2, 64, 7).map_err(|e| e.to_string())?;
        ensure(r.passed(), format!("{assembly:?}: {r:?}"))?;
        ensure(r.fock_depth == 3, "Fock depth")?;
        let families: Vec<&String> = r.operators.keys().collect();
        notes.push(format!("{assembly:?}: {} Fock monomials, orbit dim {}, {families:?}", r.fock_monomials, r.orbit_dim));
    }
    Ok(notes.join("; "))
}

fn determinism() -> Outcome {
    for (cmd, depth) in [(Command::VerifyAlgebra, 3), (Command::VerifyTkk, 3), (Command::Factorize, 3), (Command::VerifyRep, 2)] {
        let cfg = RunConfig { depth: Some(depth), seed: Some(11), ..RunConfig::example("baby-tkk") };
        let a = runner::render(&runner::run(&cfg, cmd).value);
        let b = runner::render(&runner::run(&cfg, cmd).value);
        ensure(a == b, format!("{} differs between runs", cmd.as_str()))?;
    }
    Ok("four commands byte-identical".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("structure constants and gradings", structure),
        ("toroidal bracket", toroidal_bracket),
        ("TKK isomorphism", tkk_iso),
        ("golden root computations", golden_roots),
        ("invariant Cartan and exp realization", appendix),
        ("representation commutators, charges, thin covering", representation),
        ("irreducibility ingredients", irreducibility_ingredients),
        ("determinism", determinism),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                println!("criterion {}: FAIL {name}: {why} [{secs:.1}s]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
