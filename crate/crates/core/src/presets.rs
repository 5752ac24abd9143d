//! The two packaged Clifford-type examples: three cosets of `2Z^2` (so5) and
//! all four cosets (so6), with their explicit Chevalley generators.

use crate::cycfield::{rat, rat_int, CycScalar, Rat};
use crate::liestruct::{build_so, conj_automorphism, LieAut, LieError, StructLie};
use crate::linalg::{self, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetName {
    BabyTkk,
    FullTkk,
}

impl PresetName {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "baby-tkk" => Some(PresetName::BabyTkk),
            "full-tkk" => Some(PresetName::FullTkk),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PresetName::BabyTkk => "baby-tkk",
            PresetName::FullTkk => "full-tkk",
        }
    }

    /// Coset representatives of `2Z^2` making up `S`.
    pub fn cosets(self) -> Vec<Vec<i64>> {
        match self {
            PresetName::BabyTkk => vec![vec![0, 0], vec![0, 1], vec![1, 0]],
            PresetName::FullTkk => vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]],
        }
    }
}

pub fn coset_label(c: &[i64]) -> String {
    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Index set `{1,2,3}` followed by the nonzero cosets in the given order.
pub fn tkk_index_set(cosets: &[Vec<i64>]) -> Vec<String> {
    let mut out: Vec<String> = (1..=3).map(|i| i.to_string()).collect();
    for c in cosets {
        if c.iter().any(|&x| x.rem_euclid(2) != 0) {
            out.push(coset_label(c));
        }
    }
    out
}

/// Sign vectors of `sigma_p`, one per coordinate `p`: `+1` on `1,2,3` and
/// `(-1)^{mu_p}` on the index of coset `mu`.
pub fn tkk_sign_vectors(cosets: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = cosets.first().map_or(0, |c| c.len());
    let nonzero: Vec<&Vec<i64>> = cosets.iter().filter(|c| c.iter().any(|&x| x.rem_euclid(2) != 0)).collect();
    (0..m)
        .map(|p| {
            let mut s = vec![1, 1, 1];
            s.extend(nonzero.iter().map(|c| if c[p].rem_euclid(2) == 1 { -1 } else { 1 }));
            s
        })
        .collect()
}

/// Chevalley generators of a simple Lie algebra, in algebra coordinates.
#[derive(Debug, Clone)]
pub struct Chevalley {
    pub e: Vec<Vector>,
    pub f: Vec<Vector>,
    pub h: Vec<Vector>,
    pub cartan: Vec<Vec<i64>>,
}

#[derive(Debug, Clone)]
pub struct PresetData {
    pub name: PresetName,
    pub algebra: StructLie,
    pub cosets: Vec<Vec<i64>>,
    pub signs: Vec<Vec<i64>>,
    pub sigmas: Vec<LieAut>,
    pub chevalley: Chevalley,
    /// `sigma_0 = exp(pi i t ad h)` for this `(h, t)`.
    pub sigma0_generator: (Vector, Rat),
}

type Entry = (usize, usize, &'static str);

fn from_entries(l: &StructLie, entries: &[Entry]) -> Vector {
    let mut v = linalg::zeros(l.dim());
    for &(a, b, c) in entries {
        let c: CycScalar = c.parse().expect("literal coefficient");
        let e = l.e(a - 1, b - 1).expect("index within range");
        linalg::axpy(&mut v, &c, &e);
    }
    v
}

fn so5_chevalley(l: &StructLie) -> Chevalley {
    let e = vec![
        from_entries(l, &[(3, 5, "-1"), (4, 5, "i")]),
        from_entries(l, &[(1, 3, "1/2"), (1, 4, "1/2*i"), (2, 3, "-1/2*i"), (2, 4, "1/2")]),
    ];
    let f = vec![
        from_entries(l, &[(3, 5, "1"), (4, 5, "i")]),
        from_entries(l, &[(1, 3, "-1/2"), (1, 4, "1/2*i"), (2, 3, "-1/2*i"), (2, 4, "-1/2")]),
    ];
    let h = vec![from_entries(l, &[(3, 4, "2*i")]), from_entries(l, &[(1, 2, "i"), (3, 4, "-i")])];
    Chevalley { e, f, h, cartan: vec![vec![2, -2], vec![-1, 2]] }
}

fn so6_chevalley(l: &StructLie) -> Chevalley {
    let e = vec![
        from_entries(l, &[(3, 5, "1/2"), (3, 6, "-1/2*i"), (4, 5, "-1/2*i"), (4, 6, "-1/2")]),
        from_entries(l, &[(1, 3, "1/2"), (1, 4, "1/2*i"), (2, 3, "-1/2*i"), (2, 4, "1/2")]),
        from_entries(l, &[(3, 5, "1/2"), (3, 6, "1/2*i"), (4, 5, "-1/2*i"), (4, 6, "1/2")]),
    ];
    let f = vec![
        from_entries(l, &[(3, 5, "-1/2"), (3, 6, "-1/2*i"), (4, 5, "-1/2*i"), (4, 6, "1/2")]),
        from_entries(l, &[(1, 3, "-1/2"), (1, 4, "1/2*i"), (2, 3, "-1/2*i"), (2, 4, "-1/2")]),
        from_entries(l, &[(3, 5, "-1/2"), (3, 6, "1/2*i"), (4, 5, "-1/2*i"), (4, 6, "-1/2")]),
    ];
    let h = vec![
        from_entries(l, &[(3, 4, "i"), (5, 6, "i")]),
        from_entries(l, &[(1, 2, "i"), (3, 4, "-i")]),
        from_entries(l, &[(3, 4, "i"), (5, 6, "-i")]),
    ];
    Chevalley { e, f, h, cartan: vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]] }
}

pub fn load(name: PresetName) -> Result<PresetData, LieError> {
    let cosets = name.cosets();
    let algebra = build_so(&tkk_index_set(&cosets))?;
    let signs = tkk_sign_vectors(&cosets);
    let sigmas = signs.iter().map(|s| conj_automorphism(&algebra, s)).collect::<Result<Vec<_>, _>>()?;
    let (chevalley, sigma0_generator) = match name {
        PresetName::BabyTkk => {
            let c = so5_chevalley(&algebra);
            let h = c.h[1].clone();
            (c, (h, rat_int(1)))
        }
        PresetName::FullTkk => {
            let c = so6_chevalley(&algebra);
            let h = linalg::sub(&c.h[0], &c.h[2]);
            (c, (h, rat(1, 2)))
        }
    };
    Ok(PresetData { name, algebra, cosets, signs, sigmas, chevalley, sigma0_generator })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liestruct::exp_ad_rational;

    fn check_relations(l: &StructLie, c: &Chevalley) {
        let r = c.e.len();
        for i in 0..r {
            for j in 0..r {
                let ef = l.bracket(&c.e[i], &c.f[j]).unwrap();
                if i == j {
                    assert_eq!(ef, c.h[i], "[e{i}, f{i}]");
                } else {
                    assert!(linalg::is_zero_vec(&ef), "[e{i}, f{j}]");
                }
                let a = CycScalar::from_int(c.cartan[i][j]);
                assert_eq!(l.bracket(&c.h[i], &c.e[j]).unwrap(), linalg::scale(&a, &c.e[j]));
                assert_eq!(l.bracket(&c.h[i], &c.f[j]).unwrap(), linalg::scale(&-&a, &c.f[j]));
            }
        }
    }

    #[test]
    fn index_sets_and_signs() {
        let baby = PresetName::BabyTkk.cosets();
        assert_eq!(tkk_index_set(&baby), vec!["1", "2", "3", "(0,1)", "(1,0)"]);
        assert_eq!(tkk_sign_vectors(&baby), vec![vec![1, 1, 1, 1, -1], vec![1, 1, 1, -1, 1]]);
        let full = PresetName::FullTkk.cosets();
        assert_eq!(tkk_sign_vectors(&full), vec![vec![1, 1, 1, 1, -1, -1], vec![1, 1, 1, -1, 1, -1]]);
    }

    #[test]
    fn so5_generators_satisfy_chevalley_relations() {
        let p = load(PresetName::BabyTkk).unwrap();
        check_relations(&p.algebra, &p.chevalley);
        let h1e2 = p.algebra.bracket(&p.chevalley.h[0], &p.chevalley.e[1]).unwrap();
        assert_eq!(h1e2, linalg::scale(&CycScalar::from_int(-2), &p.chevalley.e[1]));
    }

    #[test]
    fn so6_generators_satisfy_chevalley_relations() {
        let p = load(PresetName::FullTkk).unwrap();
        check_relations(&p.algebra, &p.chevalley);
    }

    #[test]
    fn sigma0_is_an_exponential() {
        for name in [PresetName::BabyTkk, PresetName::FullTkk] {
            let p = load(name).unwrap();
            let (h, t) = &p.sigma0_generator;
            let e = exp_ad_rational(&p.algebra, h, t).unwrap();
            assert_eq!(e.matrix, p.sigmas[0].matrix, "{}", name.as_str());
        }
    }

    #[test]
    fn invariant_cartan_dims() {
        use crate::liestruct::invariant_cartan;
        for (name, rank) in [(PresetName::BabyTkk, 2), (PresetName::FullTkk, 3)] {
            let p = load(name).unwrap();
            let c = invariant_cartan(&p.algebra, &p.sigmas, 7).unwrap();
            assert_eq!(c.basis.len(), rank);
            for s in &p.sigmas {
                for v in &c.basis {
                    assert!(linalg::in_span(&c.basis, &s.apply(v)));
                }
            }
        }
    }
}
