mod common;

use std::collections::BTreeSet;

use common::stacky_fan_strategy;
use itertools::Itertools;
use proptest::prelude::*;
use stacky::linalg::int_vec;
use stacky::{Cone, Fan};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn face_closure_is_downward_closed(sf in stacky_fan_strategy()) {
        let fan = sf.fan();
        let faces: BTreeSet<Cone> = fan.face_closure().into_iter().collect();
        prop_assert!(faces.contains(&Cone::empty()));
        for f in &faces {
            for k in 0..f.len() {
                for sub in f.rays().iter().copied().combinations(k) {
                    prop_assert!(faces.contains(&Cone::new(sub)));
                }
            }
        }
    }

    /// Over all subsets of rays: a subset is a face exactly when it contains
    /// no minimal non-face, and each minimal non-face has only faces as
    /// proper subsets.
    #[test]
    fn minimal_nonfaces_partition_subsets(sf in stacky_fan_strategy()) {
        let fan = sf.fan();
        let faces: BTreeSet<Cone> = fan.face_closure().into_iter().collect();
        let mnf = fan.minimal_nonfaces();
        for s in (0..fan.ray_count()).powerset() {
            let c = Cone::new(s);
            let blocked = mnf.iter().any(|m| m.is_subset(&c));
            prop_assert_eq!(faces.contains(&c), !blocked);
            prop_assert_eq!(fan.is_face(&c), !blocked);
        }
        for m in &mnf {
            prop_assert!(!faces.contains(m));
            for r in m.rays() {
                let rest: Vec<usize> = m.rays().iter().copied().filter(|x| x != r).collect();
                prop_assert!(faces.contains(&Cone::new(rest)));
            }
        }
    }
}

#[test]
fn p2_minimal_nonface() {
    let fan = Fan::new(
        2,
        vec![int_vec(&[1, 0]), int_vec(&[0, 1]), int_vec(&[-1, -1])],
        vec![Cone::new(vec![0, 1]), Cone::new(vec![1, 2]), Cone::new(vec![0, 2])],
    );
    assert!(fan.validate(true).is_empty());
    assert_eq!(fan.minimal_nonfaces(), vec![Cone::new(vec![0, 1, 2])]);
    assert_eq!(fan.face_closure().len(), 7);
    assert!(fan.is_complete());
}

#[test]
fn overlapping_cones_are_incompatible() {
    let fan = Fan::new(
        2,
        vec![int_vec(&[1, 0]), int_vec(&[0, 1]), int_vec(&[1, 1])],
        vec![Cone::new(vec![0, 1]), Cone::new(vec![0, 2])],
    );
    let kinds: Vec<&str> = fan.validate(true).iter().map(|v| v.kind()).collect();
    assert!(kinds.contains(&"compatibility"), "{kinds:?}");
}

#[test]
fn dependent_rays_are_not_simplicial() {
    let fan = Fan::new(
        2,
        vec![int_vec(&[1, 0]), int_vec(&[2, 0]), int_vec(&[0, 1])],
        vec![Cone::new(vec![0, 1]), Cone::new(vec![2])],
    );
    let kinds: Vec<&str> = fan.validate(true).iter().map(|v| v.kind()).collect();
    assert!(kinds.contains(&"simpliciality"), "{kinds:?}");
}
