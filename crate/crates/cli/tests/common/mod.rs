//! Seeded random stacky fans and independent oracles.

#![allow(dead_code)]

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use stacky::linalg::IntMatrix;
use stacky::{Cone, Fan, FgAbGroup, StackyFan};

/// Torsion parts of order at most 8, as divisibility chains.
const TORSIONS: &[&[i64]] = &[&[], &[], &[2], &[3], &[4], &[5], &[6], &[7], &[8], &[2, 2], &[2, 4]];

fn random_fan(rng: &mut ChaCha8Rng, d: usize, n: usize) -> Option<(Vec<Vec<i64>>, Vec<Cone>)> {
    let rays: Vec<Vec<i64>> = (0..n)
        .map(|_| loop {
            let r: Vec<i64> = (0..d).map(|_| rng.gen_range(-2..=2)).collect();
            if r.iter().any(|&x| x != 0) {
                break r;
            }
        })
        .collect();
    let big: Vec<Vec<BigInt>> = rays.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut candidates: Vec<Vec<usize>> = (1..=d).flat_map(|k| (0..n).combinations(k)).collect();
    candidates.shuffle(rng);
    // prefer top-dimensional cones
    candidates.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut cones: Vec<Cone> = Vec::new();
    for c in candidates {
        let cone = Cone::new(c);
        if cones.iter().any(|m| cone.is_subset(m)) {
            continue;
        }
        let mut trial = cones.clone();
        trial.push(cone);
        if Fan::new(d, big.clone(), trial.clone()).validate(false).iter().all(|v| v.kind() == "uncovered_ray") {
            cones = trial;
        }
    }
    Fan::new(d, big, cones.clone()).validate(true).is_empty().then_some((rays, cones))
}

/// A valid stacky fan with `d ≤ 3`, `n ≤ 6` rays and torsion of order ≤ 8.
pub fn random_stacky_fan(rng: &mut ChaCha8Rng) -> StackyFan {
    loop {
        let d = rng.gen_range(1..=3);
        let n = rng.gen_range(d + 1..=6);
        let Some((rays, cones)) = random_fan(rng, d, n) else { continue };
        let torsion = TORSIONS[rng.gen_range(0..TORSIONS.len())];
        let group = FgAbGroup::from_i64(d, torsion).unwrap();
        let cols: Vec<Vec<BigInt>> = rays
            .iter()
            .map(|r| {
                let k = rng.gen_range(1..=3);
                let mut col: Vec<BigInt> = r.iter().map(|&x| BigInt::from(k * x)).collect();
                col.extend(torsion.iter().map(|&t| BigInt::from(rng.gen_range(0..t))));
                col
            })
            .collect();
        if let Ok(sf) = StackyFan::new(group, cols, cones) {
            return sf;
        }
    }
}

pub fn random_matrix(rng: &mut ChaCha8Rng, max_dim: usize, bound: i64) -> IntMatrix {
    let r = rng.gen_range(1..=max_dim);
    let c = rng.gen_range(1..=max_dim);
    IntMatrix::from_rows((0..r).map(|_| (0..c).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect()).collect())
}

/// Determinant by permutation expansion.
pub fn det_oracle(m: &IntMatrix) -> BigInt {
    let n = m.rows();
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

/// gcd of all k×k minors.
pub fn minor_gcd(m: &IntMatrix, k: usize) -> BigInt {
    use num_integer::Integer;
    let mut g = BigInt::zero();
    for rows in (0..m.rows()).combinations(k) {
        for cols in (0..m.cols()).combinations(k) {
            g = g.gcd(&det_oracle(&m.select_rows(&rows).select_columns(&cols)));
        }
    }
    g
}
