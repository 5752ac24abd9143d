use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toroidalg::affroot::{factorize_aut, AffineRootSystem, DiagramAut, RootAut, WeylWord};
use toroidalg::cliffordtkk::JordanTorus;
use toroidalg::cycfield::{rat, root_of_unity, CycScalar};
use toroidalg::linalg;
use toroidalg::presets::{load, PresetName};
use toroidalg::toroidal::{random_element, ToroidalContext};
use toroidalg::vertexrep::{fock_diff, fock_mul, Osc};

fn scalar() -> impl Strategy<Value = CycScalar> {
    // Rational combinations of powers of a root of unity of order 1, 3, 4, 8 or 12.
    (prop::sample::select(vec![1u32, 3, 4, 8, 12]), prop::collection::vec((-6i64..=6, 1i64..=4), 1..4)).prop_map(|(n, cs)| {
        let z = root_of_unity(n, 1).unwrap();
        let mut acc = CycScalar::zero();
        let mut p = CycScalar::one();
        for (a, b) in cs {
            acc += &(&p * CycScalar::frac(a, b));
            p = &p * &z;
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a - &a, CycScalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), CycScalar::one());
        }
    }

    #[test]
    fn embedding_is_a_homomorphism(a in scalar(), b in scalar()) {
        let m = 24;
        prop_assert_eq!((&a * &b).embed(m), a.embed(m) * b.embed(m));
        prop_assert_eq!(a.embed(m), a.clone());
    }

    #[test]
    fn display_parses_back(a in (-9i64..=9, 1i64..=5, -9i64..=9, 1i64..=5)) {
        let x = CycScalar::frac(a.0, a.1) + CycScalar::frac(a.2, a.3) * CycScalar::i();
        prop_assert_eq!(x.to_string().parse::<CycScalar>().unwrap(), x);
    }

    #[test]
    fn so5_bracket_is_antisymmetric_and_the_form_invariant(
        x in prop::collection::vec(-3i64..=3, 10),
        y in prop::collection::vec(-3i64..=3, 10),
        z in prop::collection::vec(-3i64..=3, 10),
    ) {
        let l = load(PresetName::BabyTkk).unwrap().algebra;
        let v = |c: &[i64]| c.iter().map(|&n| CycScalar::from_int(n)).collect::<Vec<_>>();
        let (x, y, z) = (v(&x), v(&y), v(&z));
        let xy = l.bracket(&x, &y).unwrap();
        prop_assert_eq!(linalg::add(&xy, &l.bracket(&y, &x).unwrap()), linalg::zeros(10));
        prop_assert_eq!(l.form_eval(&xy, &z), l.form_eval(&x, &l.bracket(&y, &z).unwrap()));
    }

    #[test]
    fn toroidal_jacobi_and_antisymmetry(seed in any::<u64>(), mu in 0i64..=2, nu in -1i64..=1) {
        let p = load(PresetName::BabyTkk).unwrap();
        let ctx = ToroidalContext::new(&p.algebra, &p.sigmas, rat(mu, 2), rat(nu, 1)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(&ctx, &mut rng, 3, 3);
        let y = random_element(&ctx, &mut rng, 3, 3);
        let z = random_element(&ctx, &mut rng, 3, 3);
        let b = |a: &_, c: &_| ctx.bracket(a, c).unwrap();
        prop_assert!(b(&x, &y).add(&b(&y, &x)).is_zero());
        let j = b(&x, &b(&y, &z)).add(&b(&y, &b(&z, &x))).add(&b(&z, &b(&x, &y)));
        prop_assert!(j.is_zero());
        prop_assert!(b(&x.k_part(), &y.alg_part().add(&y.k_part())).is_zero());
    }

    #[test]
    fn jordan_product_is_commutative(a in (-4i64..=4, -4i64..=4), c in (-4i64..=4, -4i64..=4)) {
        let j = JordanTorus::new(&PresetName::FullTkk.cosets()).unwrap();
        let (a, c) = (vec![a.0, a.1], vec![c.0, c.1]);
        prop_assert_eq!(j.jordan_mul(&a, &c).unwrap(), j.jordan_mul(&c, &a).unwrap());
    }

    #[test]
    fn factorization_recovers_word_times_diagram(letters in prop::collection::vec(0usize..4, 0..8), g in 0usize..8) {
        let rs = AffineRootSystem::d3_1();
        let perms: Vec<Vec<usize>> = permutations(4).into_iter().filter(|p| DiagramAut { perm: p.clone() }.is_valid(&rs)).collect();
        let gamma = DiagramAut { perm: perms[g % perms.len()].clone() };
        let f = WeylWord { letters }.action(&rs).compose(&RootAut::from_perm(&gamma.perm));
        let (w, gamma2) = factorize_aut(&rs, &f).unwrap();
        prop_assert_eq!(&gamma2, &gamma);
        prop_assert_eq!(w.action(&rs).compose(&RootAut::from_perm(&gamma2.perm)), f);
    }

    #[test]
    fn fock_multiplication_then_derivative(levels in prop::collection::vec((0usize..2, 1u32..4, any::<bool>()), 0..6), pick in (0usize..2, 1u32..4)) {
        let osc = |(p, j, u): (usize, u32, bool)| if u { Osc::U(p, j) } else { Osc::V(p, j) };
        let mut m = Vec::new();
        for l in levels {
            m = fock_mul(&m, osc(l));
        }
        let o = Osc::U(pick.0, pick.1);
        let before = m.iter().filter(|x| **x == o).count() as i64;
        let (k, back) = fock_diff(&fock_mul(&m, o), o).unwrap();
        prop_assert_eq!(k, before + 1);
        prop_assert_eq!(back, m);
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}
