use super::*;
use crate::cycfield::rat;
use crate::presets::{load, PresetName};

fn baby(mu: i64, depth: i64, assembly: Assembly) -> RepContext {
    let p = load(PresetName::BabyTkk).unwrap();
    let s = RepSettings::new(rat_int(1), rat_int(mu), rat_int(0), depth, assembly);
    RepContext::new(&p.algebra, &p.sigmas, s).unwrap()
}

fn vac_r(r: i64) -> TruncVector {
    TruncVector::basis(Key { r: vec![r], ..Key::vacuum(1) })
}

#[test]
fn fock_modes_on_vacuum() {
    let rc = baby(0, 2, Assembly::Toroidal);
    let v = vac_r(0);
    let k0 = rc.coefficient(&Field::K0(vec![2]), 0, &v).unwrap();
    assert_eq!(k0, vac_r(2));
    let ka = rc.coefficient(&Field::K(0), 0, &v).unwrap();
    let want = TruncVector::basis(Key { fock: vec![Osc::U(0, 1)], ..Key::vacuum(1) });
    assert_eq!(ka, want);
    let da = rc.coefficient(&Field::D(0), -rc.m0(), &vac_r(3)).unwrap();
    assert_eq!(da, vac_r(3).scale(&CycScalar::from_int(3)));
}

#[test]
fn heisenberg_modes_commute_canonically() {
    // [K(1), D(-1)] = 1 on any vector.
    let rc = baby(0, 3, Assembly::Toroidal);
    let v = TruncVector::basis(Key { fock: vec![Osc::V(0, 1)], ..Key::vacuum(1) });
    let m0 = rc.m0();
    let k1 = |x: &TruncVector| rc.field_mode(&Field::K(0), m0, x).unwrap();
    let dm1 = |x: &TruncVector| rc.field_mode(&Field::D(0), -m0, x).unwrap();
    assert_eq!(k1(&dm1(&v)).sub(&dm1(&k1(&v))), v);
}

#[test]
fn k0_field_is_central_at_degree_zero() {
    let rc = baby(0, 2, Assembly::Toroidal);
    let k0 = ToroidalElement::term(ToroidalDegree::zero(1), Payload::K(0), CycScalar::one());
    for r in -1..=1 {
        assert_eq!(rc.represent(&k0, &vac_r(r)).unwrap(), vac_r(r));
    }
}

#[test]
fn sugawara_top_eigenvalue() {
    // Only the scalar term survives on the top: -c * 4 * C(1/2, 2) / (2 (c + 3)) = 1/16.
    let rc = baby(0, 2, Assembly::Toroidal);
    let l0 = rc.sugawara_mode(0, &vac_r(0)).unwrap();
    assert_eq!(l0, vac_r(0).scale(&CycScalar::from_rat(rat(1, 16))));
}

#[test]
fn sugawara_is_virasoro_and_normalizes_currents() {
    let rc = baby(0, 3, Assembly::Toroidal);
    let m0 = rc.m0();
    let tops = [vac_r(0), TruncVector::basis(Key { w: vec![WGen::X(0, -m0)], ..Key::vacuum(1) })];
    // Pick one current of each residue.
    let k_half = (0..rc.ctx.algebra.dim()).find(|&k| rc.ctx.coset[k][0] == 1).unwrap();
    let k_int = (0..rc.ctx.algebra.dim()).find(|&k| rc.ctx.coset[k][0] == 0).unwrap();
    let cvir = rat(10, 4);
    for v in &tops {
        for (m, n) in [(1, -1), (2, -2), (1, -2), (0, -1)] {
            let lhs = rc.sugawara_mode(m, &rc.sugawara_mode(n, v).unwrap()).unwrap().sub(&rc.sugawara_mode(n, &rc.sugawara_mode(m, v).unwrap()).unwrap());
            let mut rhs = rc.sugawara_mode(m + n, v).unwrap().scale(&CycScalar::from_int(m - n));
            if m + n == 0 {
                rhs.add_scaled(v, &CycScalar::from_rat(&cvir * rat(m * m * m - m, 12)));
            }
            assert_eq!(lhs, rhs, "[L{m}, L{n}]");
        }
        for k in [k_half, k_int] {
            let res = rc.ctx.coset[k][0] as i64;
            for m in [-1i64, 0, 1] {
                for n in [res - m0, res - 2 * m0, res] {
                    let x = |y: &TruncVector| rc.field_mode(&Field::X(k), n, y).unwrap();
                    let xm = |y: &TruncVector| rc.field_mode(&Field::X(k), n + m * m0, y).unwrap();
                    if rc.factors.max_degree(v) - n - m.min(0) * m0 > rc.window() || rc.factors.max_degree(v) - n > rc.window() {
                        continue;
                    }
                    let lhs = rc.sugawara_mode(m, &x(v)).unwrap().sub(&x(&rc.sugawara_mode(m, v).unwrap()));
                    let rhs = xm(v).scale(&CycScalar::from_rat(rat(-n, m0)));
                    assert_eq!(lhs, rhs, "[L{m}, x{k}({n})]");
                }
            }
        }
    }
}

#[test]
fn critical_level_is_rejected() {
    let p = load(PresetName::BabyTkk).unwrap();
    let s = RepSettings::new(rat_int(-3), rat_int(0), rat_int(0), 2, Assembly::Toroidal);
    assert!(matches!(RepContext::new(&p.algebra, &p.sigmas, s), Err(RepError::Precondition(_))));
}

fn keys_up_to(rc: &RepContext, depth: i64) -> Vec<Key> {
    check::basis_keys(rc, depth * rc.m0(), &[vec![-1], vec![0], vec![1]])
}

#[test]
fn modes_beyond_the_degree_annihilate() {
    let rc = baby(0, 2, Assembly::Toroidal);
    let m0 = rc.m0();
    for k in keys_up_to(&rc, 1) {
        let v = TruncVector::basis(k.clone());
        let d = rc.degree(&k);
        for x in 0..rc.ctx.algebra.dim() {
            let n = d + 1 + (rc.factors.w.alg.residue[x] - d - 1).rem_euclid(m0);
            assert!(rc.field_mode(&Field::X(x), n, &v).unwrap().is_zero(), "x{x}({n}) on {k}");
        }
        let top = (d / m0 + 1) * m0;
        for f in [Field::K(0), Field::D(0)] {
            assert!(rc.field_mode(&f, top, &v).unwrap().is_zero());
        }
    }
}

#[test]
fn degree_zero_derivations_are_diagonal() {
    for asm in [Assembly::Toroidal, Assembly::Eala] {
        let rc = baby(1, 2, asm);
        let m0 = rc.m0();
        let d0 = ToroidalElement::term(ToroidalDegree::zero(1), Payload::D(0), CycScalar::one());
        let d1 = ToroidalElement::term(ToroidalDegree::zero(1), Payload::D(1), CycScalar::one());
        // -(L_0 on the top) + (mu + nu) c / 2, with the Sugawara top value 1/16.
        let base = rat(1, 2) - rat(1, 16);
        for k in keys_up_to(&rc, 2) {
            let v = TruncVector::basis(k.clone());
            let want = &base - rat(rc.degree(&k), m0);
            assert_eq!(rc.represent(&d0, &v).unwrap(), v.scale(&CycScalar::from_rat(want)), "{k}");
            assert_eq!(rc.represent(&d1, &v).unwrap(), v.scale(&CycScalar::from_int(k.r[0])), "{k}");
        }
    }
}

#[test]
fn central_elements_act_by_their_charges() {
    let rc = baby(0, 2, Assembly::Toroidal);
    let f = &rc.factors;
    let mut checked = 0;
    for k in keys_up_to(&rc, 2) {
        let w = crate::verma::ModVec::mono(k.w.clone(), CycScalar::one());
        assert_eq!(f.w.act(&WGen::C, &w).unwrap(), w.scale(&CycScalar::from_rat(rat_int(1))));
        let g = crate::verma::ModVec::mono(k.gl.clone(), CycScalar::one());
        let ch = &rc.charges;
        for (c, val) in [
            (crate::glvirmod::GlVirGen::CSl, &ch.c_sl),
            (crate::glvirmod::GlVirGen::CHeis, &ch.c_heis),
            (crate::glvirmod::GlVirGen::CVir, &ch.c_vir),
            (crate::glvirmod::GlVirGen::CVh, &ch.c_vh),
        ] {
            assert_eq!(f.gl.act(&c, &g).unwrap(), g.scale(&CycScalar::from_rat(val.clone())));
        }
        checked += 1;
    }
    assert!(checked > 100);
}

#[test]
fn eala_charges_for_the_baby_example() {
    let rc = baby(0, 1, Assembly::Eala);
    assert_eq!(rc.charges.c_vir, rat(-9, 2));
    assert_eq!(rc.charges.c_sl, rat_int(1));
}

#[test]
fn dab_field_vanishes_on_the_diagonal() {
    let rc = baby(0, 2, Assembly::Eala);
    for k in keys_up_to(&rc, 1) {
        let v = TruncVector::basis(k);
        for e in [-2 * rc.m0(), -rc.m0(), 0] {
            assert!(rc.coefficient(&rc.dab_img(0, 0, &[2]), e, &v).unwrap().is_zero());
        }
    }
}

#[test]
fn lone_derivations_are_rejected_in_the_eala() {
    let rc = baby(0, 2, Assembly::Eala);
    let x = ToroidalElement::term(ToroidalDegree::new(2, vec![0]), Payload::D(1), CycScalar::one());
    assert!(rc.represent(&x, &vac_r(0)).is_ok(), "divergence-free, so it is a multiple of dhat");
    let y = ToroidalElement::term(ToroidalDegree::new(2, vec![2]), Payload::D(1), CycScalar::one());
    assert!(matches!(rc.represent(&y, &vac_r(0)), Err(RepError::Membership(_))));
}

#[test]
fn small_commutator_sample_is_exact() {
    for asm in [Assembly::Toroidal, Assembly::Eala] {
        let rc = baby(1, 2, asm);
        let plan = SamplePlan { pairs_per_relation: 2, vectors_per_pair: 2, ..SamplePlan::default() };
        let r = check_commutators(&rc, &plan).unwrap();
        assert!(r.passed(), "{:?}", r.first_failure);
        assert!(r.relations.values().map(|c| c.nonzero).sum::<usize>() > 0);
    }
}

#[test]
fn eigensplit_puts_the_top_in_the_even_piece() {
    let rc = baby(0, 1, Assembly::Toroidal);
    let r = thin_module(&rc, crate::affroot::ThinShape::Eigensplit, 1).unwrap();
    assert_eq!(r.w_dims["[0]"][0], 1);
    assert_eq!(r.w_dims.get("[1]").map(|v| v[0]).unwrap_or(0), 0);
    assert!(r.passed());
}
