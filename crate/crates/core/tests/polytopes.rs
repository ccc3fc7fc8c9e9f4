mod common;

use common::{is_primitive, unimodular_strategy};
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use stacky::linalg::{int_vec, rat, unimodular_inverse, IntMatrix, Rational};
use stacky::{FgAbGroup, Order, Polytope, StackyPolytope};

fn sheared_polytope(a: &[i64], m: &[i64]) -> StackyPolytope {
    let d = a.len();
    let mut cols = vec![a.iter().map(|x| BigInt::from(-m[0] * x)).collect::<Vec<_>>()];
    for j in 0..d {
        let mut c = vec![BigInt::zero(); d];
        c[j] = BigInt::from(m[j + 1]);
        cols.push(c);
    }
    let mut offsets = vec![rat(0, 1); d + 1];
    offsets[0] = Rational::from_integer(BigInt::from(m[0]));
    StackyPolytope::new(FgAbGroup::free(d), cols, offsets).unwrap()
}

fn trapezoid_polytope(a: [i64; 2], m: [i64; 4]) -> StackyPolytope {
    let cols = vec![
        int_vec(&[-m[0] * a[0], -m[0] * a[1]]),
        int_vec(&[0, m[1]]),
        int_vec(&[m[2], 0]),
        int_vec(&[0, -m[3]]),
    ];
    let offsets = [m[0] * (a[1] + 1), 0, 0, m[3]].iter().map(|&c| rat(c, 1)).collect();
    StackyPolytope::new(FgAbGroup::free(2), cols, offsets).unwrap()
}

/// Image of `{⟨x, ν⟩ ≥ −c}` under `x ↦ U x + t`.
fn transform(p: &Polytope, u: &IntMatrix, t: &[Rational]) -> Polytope {
    let w = unimodular_inverse(u).unwrap().transpose();
    let normals: Vec<Vec<Rational>> = p
        .normals()
        .iter()
        .map(|nu| (0..p.dim()).map(|i| (0..p.dim()).map(|j| Rational::from_integer(w[(i, j)].clone()) * &nu[j]).sum()).collect())
        .collect();
    let offsets = p
        .offsets()
        .iter()
        .zip(&normals)
        .map(|(c, nu): (&Rational, &Vec<Rational>)| c - nu.iter().zip(t).map(|(a, b)| a * b).sum::<Rational>())
        .collect();
    Polytope::new(p.dim(), normals, offsets).unwrap()
}

fn base_polytopes() -> Vec<Polytope> {
    vec![
        sheared_polytope(&[1, 2], &[1, 1, 1]).polytope().clone(),
        sheared_polytope(&[2, 3], &[2, 1, 3]).polytope().clone(),
        trapezoid_polytope([1, 2], [1, 1, 1, 1]).polytope().clone(),
        trapezoid_polytope([3, 1], [2, 1, 3, 2]).polytope().clone(),
        sheared_polytope(&[1, 2, 1], &[1, 1, 1, 1]).polytope().clone(),
        {
            let normals = (0..3)
                .flat_map(|i| [1, -1].map(|s| (0..3).map(|j| rat(if i == j { s } else { 0 }, 1)).collect::<Vec<_>>()))
                .collect();
            Polytope::new(3, normals, vec![rat(0, 1), rat(2, 1), rat(1, 2), rat(1, 1), rat(0, 1), rat(3, 1)]).unwrap()
        },
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn volume_is_unimodular_and_translation_invariant(
        (k, u) in (0usize..6).prop_flat_map(|k| {
            let d = base_polytopes()[k].dim();
            (Just(k), unimodular_strategy(d))
        }),
        t in prop::collection::vec((-5i64..=5, 1i64..=3), 3),
    ) {
        let p = &base_polytopes()[k];
        let t: Vec<Rational> = t[..p.dim()].iter().map(|&(a, b)| rat(a, b)).collect();
        let q = transform(p, &u, &t);
        prop_assert_eq!(q.volume(), p.volume());
        prop_assert_eq!(q.vertices().len(), p.vertices().len());
    }

    #[test]
    fn each_vertex_is_simple(k in 0usize..6) {
        let p = &base_polytopes()[k];
        let d = p.dim();
        let active_subsets = (0..p.facet_count())
            .combinations(d)
            .filter(|s| p.vertex_facets().iter().any(|a| a == s))
            .count();
        prop_assert_eq!(active_subsets, p.vertices().len());
        prop_assert!(p.vertex_facets().iter().all(|a| a.len() == d));
    }

    /// Three independent quantities agree: the normalized cover volume
    /// ratio, `|coker β|`, and the order of the fundamental group of the
    /// normal fan.
    #[test]
    fn cover_ratio_is_fundamental_group_order(
        a in prop::collection::vec(1i64..=3, 2).prop_filter("primitive", |a| is_primitive(a)),
        m in prop::collection::vec(1i64..=4, 4),
        trap in any::<bool>(),
    ) {
        let sp = if trap {
            trapezoid_polytope([a[0], a[1]], [m[0], m[1], m[2], m[3]])
        } else {
            sheared_polytope(&a, &m[..3])
        };
        let cover = sp.cover_polytope().unwrap();
        let pi1 = sp.normal_fan().unwrap().fundamental_group().order();
        prop_assert_eq!(Order::Finite(cover.index.clone()), pi1);
        prop_assert_eq!(cover.ratio.clone(), Rational::from_integer(cover.index.clone()));
        prop_assert_eq!(cover.cover.volume(), &cover.euclidean_ratio * sp.volume());
        prop_assert_eq!(sp.symplectic_volume_ratio().unwrap(), cover.index);
    }
}

#[test]
fn normal_fan_of_labelled_polytope_uses_labelled_normals() {
    let lp = stacky::LabelledPolytope::from_i64(2, &[&[-1, -2], &[0, 1], &[1, 0], &[0, -1]], &[2, 1, 3, 1], vec![rat(3, 1), rat(0, 1), rat(0, 1), rat(1, 1)])
        .unwrap();
    let sp = StackyPolytope::from_labelled(&lp).unwrap();
    let fan = sp.normal_fan().unwrap();
    assert_eq!(fan.columns(), vec![int_vec(&[-2, -4]), int_vec(&[0, 1]), int_vec(&[3, 0]), int_vec(&[0, -1])]);
    assert_eq!(fan.fan().max_cones().len(), 4);
    // the labels do not move the polytope
    let plain = stacky::LabelledPolytope::from_i64(2, &[&[-1, -2], &[0, 1], &[1, 0], &[0, -1]], &[1, 1, 1, 1], lp.offsets().to_vec()).unwrap();
    assert_eq!(StackyPolytope::from_labelled(&plain).unwrap().volume(), sp.volume());
    assert!(!sp.volume().is_zero());
}
