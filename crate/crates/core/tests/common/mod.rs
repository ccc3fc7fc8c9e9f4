//! Oracles and generators shared by the integration tests.
//!
//! The oracles deliberately avoid the library's elimination routines.

#![allow(dead_code)]

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use stacky::linalg::{int_vec, IntMatrix};
use stacky::{Cone, FgAbGroup, StackyFan};

/// Determinant by permutation expansion.
pub fn det_oracle(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut total = BigInt::zero();
    for perm in (0..n).permutations(n) {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        let term: BigInt = (0..n).map(|i| m[(i, perm[i])].clone()).product();
        if inversions % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// gcd of all k×k minors (zero if there are none or all vanish).
pub fn minor_gcd(m: &IntMatrix, k: usize) -> BigInt {
    let mut g = BigInt::zero();
    for rows in (0..m.rows()).combinations(k) {
        for cols in (0..m.cols()).combinations(k) {
            let sub = m.select_rows(&rows).select_columns(&cols);
            g = g.gcd(&det_oracle(&sub));
        }
    }
    g
}

pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn matrix_strategy(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
            .prop_map(|rows| IntMatrix::from_rows(rows.into_iter().map(|r| int_vec(&r)).collect()))
    })
}

/// Product of random elementary moves, so unimodular by construction.
pub fn unimodular_strategy(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -3i64..=3, any::<bool>()), 0..12).prop_map(move |moves| {
        let mut m = IntMatrix::identity(n);
        for (i, j, k, flip) in moves {
            if i != j {
                m.add_row_multiple(i, j, &BigInt::from(k));
            }
            if flip {
                m.swap_rows(i, j);
            }
        }
        m
    })
}

/// Sheared simplex fan: `β(f_0) = -m_0 a`, `β(f_j) = m_j e_j`.
pub fn sheared_simplex(a: &[i64], m: &[i64]) -> StackyFan {
    let d = a.len();
    let mut cols = vec![a.iter().map(|x| BigInt::from(-m[0] * x)).collect::<Vec<_>>()];
    for j in 0..d {
        let mut c = vec![BigInt::zero(); d];
        c[j] = BigInt::from(m[j + 1]);
        cols.push(c);
    }
    let cones = (0..=d).combinations(d).map(Cone::new).collect();
    StackyFan::new(FgAbGroup::free(d), cols, cones).unwrap()
}

pub fn trapezoid(a: [i64; 2], m: [i64; 4]) -> StackyFan {
    let cols = vec![
        int_vec(&[-m[0] * a[0], -m[0] * a[1]]),
        int_vec(&[0, m[1]]),
        int_vec(&[m[2], 0]),
        int_vec(&[0, -m[3]]),
    ];
    let cones = vec![Cone::new(vec![0, 1]), Cone::new(vec![1, 2]), Cone::new(vec![2, 3]), Cone::new(vec![0, 3])];
    StackyFan::new(FgAbGroup::free(2), cols, cones).unwrap()
}

pub fn is_primitive(a: &[i64]) -> bool {
    a.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1
}

/// A complete simplicial base fan: (dimension, rays, maximal cones).
fn base_fans() -> Vec<(usize, Vec<Vec<i64>>, Vec<Vec<usize>>)> {
    vec![
        (1, vec![vec![1], vec![-1]], vec![vec![0], vec![1]]),
        (2, vec![vec![1, 0], vec![0, 1], vec![-1, -1]], vec![vec![0, 1], vec![1, 2], vec![0, 2]]),
        (2, vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]], vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]),
        (2, vec![vec![-1, -2], vec![0, 1], vec![1, 0], vec![0, -1]], vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]),
        (2, vec![vec![1, 0], vec![1, 1], vec![0, 1], vec![-1, -1]], vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]),
        (
            3,
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, -1, -1]],
            (0..4).combinations(3).collect(),
        ),
        (
            3,
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, -2, -1]],
            (0..4).combinations(3).collect(),
        ),
        // a non-complete fan: two cones in the plane
        (2, vec![vec![1, 0], vec![0, 1], vec![-1, 1]], vec![vec![0, 1], vec![1, 2]]),
    ]
}

/// Random stacky fans over the base fans: ray multiples, torsion summands
/// and random torsion coordinates.
pub fn stacky_fan_strategy() -> impl Strategy<Value = StackyFan> {
    let bases = base_fans();
    (0..bases.len(), prop::collection::vec(1i64..=4, 6), prop::collection::vec(1i64..=4, 0..=2), prop::collection::vec(0i64..16, 12))
        .prop_map(move |(b, mult, tors, coords)| {
            let (d, rays, cones) = &bases[b];
            let mut torsion: Vec<i64> = tors.into_iter().filter(|&t| t > 1).collect();
            torsion.sort();
            // force a divisibility chain
            for i in 1..torsion.len() {
                torsion[i] *= torsion[i - 1];
            }
            let group = FgAbGroup::from_i64(*d, &torsion).unwrap();
            let mut c = coords.into_iter();
            let cols = rays
                .iter()
                .enumerate()
                .map(|(j, r)| {
                    let mut col: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x * mult[j])).collect();
                    col.extend(torsion.iter().map(|&t| BigInt::from(c.next().unwrap() % t)));
                    col
                })
                .collect();
            let cones = cones.iter().map(|c| Cone::new(c.clone())).collect();
            StackyFan::new(group, cols, cones).unwrap()
        })
}

pub fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}
