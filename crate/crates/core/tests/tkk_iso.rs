use toroidalg::cliffordtkk::TkkIso;
use toroidalg::presets::PresetName;

#[test]
fn baby_tkk_matches_multiloop_on_box_two() {
    let iso = TkkIso::new(&PresetName::BabyTkk.cosets()).unwrap();
    let rep = iso.verify(2).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(rep.r, 3);
    assert_eq!(rep.generator_rank, rep.generators);
}

#[test]
fn full_tkk_matches_multiloop_on_box_two() {
    let iso = TkkIso::new(&PresetName::FullTkk.cosets()).unwrap();
    let rep = iso.verify(2).unwrap();
    assert!(rep.passed(), "{rep:?}");
    let dims: Vec<(usize, usize)> = rep.dims.values().map(|d| (d.tkk, d.multiloop)).collect();
    assert_eq!(dims, vec![(3, 3), (4, 4), (4, 4), (4, 4)]);
    assert_eq!((rep.total_identity.lhs, rep.total_identity.rhs), (15, 15));
}

#[test]
fn odd_representatives_give_same_dims() {
    let iso = TkkIso::new(&[vec![0, 0], vec![1, 0], vec![-1, 3]]).unwrap();
    let rep = iso.verify(1).unwrap();
    assert!(rep.passed(), "{rep:?}");
}

#[test]
fn three_variable_torus() {
    let iso = TkkIso::new(&[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
    let rep = iso.verify(1).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(rep.total_identity.rhs, 15);
}
