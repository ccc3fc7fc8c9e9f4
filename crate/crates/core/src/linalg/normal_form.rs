//! Smith and Hermite normal forms over the integers.
//!
//! Both reductions are driven by 2×2 unimodular "gcd moves": given a pivot
//! `a` and an entry `b`, the pair of rows (or columns) is replaced using
//! Bézout coefficients `x·a + y·b = g`, so that the pivot becomes `g` and the
//! entry becomes zero. Every move has determinant one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// `U · A · V = S` with `U`, `V` unimodular and `S` diagonal in Smith form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries, in order; each divides the next.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Returns `(g, x, y)` with `x·a + y·b = g = gcd(a, b) ≥ 0`.
pub(crate) fn bezout(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Coefficients of the unimodular move sending `(a, b)` to `(g, 0)`.
fn gcd_move(a: &BigInt, b: &BigInt) -> [BigInt; 4] {
    // plain elimination when the pivot already divides, so the pivot never moves
    if !a.is_zero() && b.is_multiple_of(a) {
        return [BigInt::one(), BigInt::zero(), -(b / a), BigInt::one()];
    }
    let (g, x, y) = bezout(a, b);
    let zb = -(b / &g);
    let wa = a / &g;
    [x, y, zb, wa]
}

fn refs(c: &[BigInt; 4]) -> [&BigInt; 4] {
    [&c[0], &c[1], &c[2], &c[3]]
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        // smallest nonzero entry of the trailing block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if s[(i, j)].is_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let c = gcd_move(&s[(t, t)], &s[(i, t)]);
                s.combine_rows(t, i, refs(&c));
                u.combine_rows(t, i, refs(&c));
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let c = gcd_move(&s[(t, t)], &s[(t, j)]);
                s.combine_cols(t, j, refs(&c));
                v.combine_cols(t, j, refs(&c));
            }
            if (t + 1..m).any(|i| !s[(i, t)].is_zero()) {
                continue;
            }
            // pivot must divide the whole trailing block
            let pivot = s[(t, t)].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    s.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithDecomposition { u, s, v }
}

/// Column-style Hermite normal form: returns `(H, U)` with `H = A·U`, `U`
/// unimodular, `H` lower echelon with positive pivots, and each entry left of
/// a pivot reduced into `[0, pivot)`. Zero columns come last.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntMatrix::identity(n);
    let mut p = 0;
    for i in 0..m {
        if p == n {
            break;
        }
        for j in p + 1..n {
            if h[(i, j)].is_zero() {
                continue;
            }
            let c = gcd_move(&h[(i, p)], &h[(i, j)]);
            h.combine_cols(p, j, refs(&c));
            u.combine_cols(p, j, refs(&c));
        }
        if h[(i, p)].is_zero() {
            continue;
        }
        if h[(i, p)].is_negative() {
            h.negate_col(p);
            u.negate_col(p);
        }
        for j in 0..p {
            let q = h[(i, j)].div_floor(&h[(i, p)]);
            if !q.is_zero() {
                let k = -q;
                h.add_col_multiple(j, p, &k);
                u.add_col_multiple(j, p, &k);
            }
        }
        p += 1;
    }
    (h, u)
}

/// Number of nonzero columns of the Hermite form, i.e. the rank.
pub fn rank(a: &IntMatrix) -> usize {
    let (h, _) = hermite_normal_form(a);
    (0..h.cols()).filter(|&j| (0..h.rows()).any(|i| !h[(i, j)].is_zero())).count()
}

/// Canonical basis of the lattice spanned by the columns of `a`: the nonzero
/// columns of its Hermite form.
pub fn lattice_basis(a: &IntMatrix) -> IntMatrix {
    let (h, _) = hermite_normal_form(a);
    let r = rank_of_hermite(&h);
    h.select_columns(&(0..r).collect::<Vec<_>>())
}

fn rank_of_hermite(h: &IntMatrix) -> usize {
    (0..h.cols())
        .take_while(|&j| (0..h.rows()).any(|i| !h[(i, j)].is_zero()))
        .count()
}

/// Basis (as columns, in Hermite form) of `{x : A·x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let (h, u) = hermite_normal_form(a);
    let r = rank_of_hermite(&h);
    let raw = u.select_columns(&(r..a.cols()).collect::<Vec<_>>());
    lattice_basis(&raw)
}

/// Some integer `x` with `A·x = b`, or `None` when no integer solution exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "right-hand side has wrong length");
    let snf = smith_normal_form(a);
    let ub = snf.u.mul_vec(b);
    let factors = snf.invariant_factors();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, c) in ub.iter().enumerate() {
        match factors.get(i) {
            Some(d) => {
                let (q, r) = c.div_rem(d);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            }
            None if !c.is_zero() => return None,
            None => {}
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// Inverse of a unimodular matrix, or `None` if `a` is not unimodular.
pub fn unimodular_inverse(a: &IntMatrix) -> Option<IntMatrix> {
    if !a.is_square() {
        return None;
    }
    let (h, w) = hermite_normal_form(a);
    (h == IntMatrix::identity(a.rows())).then_some(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;

    fn check_smith(a: &IntMatrix) -> SmithDecomposition {
        let snf = smith_normal_form(a);
        assert_eq!(&(&snf.u * a) * &snf.v, snf.s);
        assert!(snf.u.is_unimodular());
        assert!(snf.v.is_unimodular());
        snf
    }

    #[test]
    fn smith_identity() {
        let snf = check_smith(&IntMatrix::identity(2));
        assert_eq!(snf.s, IntMatrix::identity(2));
        assert_eq!(snf.u, IntMatrix::identity(2));
        assert_eq!(snf.v, IntMatrix::identity(2));
    }

    #[test]
    fn smith_two_by_two() {
        // gcd of entries 2, |det| 8
        let snf = check_smith(&IntMatrix::from_i64_rows(&[[2, 4], [6, 8]]));
        assert_eq!(snf.s, IntMatrix::from_i64_rows(&[[2, 0], [0, 4]]));
    }

    #[test]
    fn smith_zero_and_empty() {
        let snf = check_smith(&IntMatrix::zeros(3, 2));
        assert_eq!(snf.s, IntMatrix::zeros(3, 2));
        assert!(snf.invariant_factors().is_empty());
        for (r, c) in [(0, 3), (3, 0), (0, 0)] {
            let snf = check_smith(&IntMatrix::zeros(r, c));
            assert!(snf.invariant_factors().is_empty());
        }
    }

    #[test]
    fn smith_divisibility_needs_fixup() {
        let snf = check_smith(&IntMatrix::from_i64_rows(&[[2, 0], [0, 3]]));
        assert_eq!(snf.invariant_factors(), int_vec(&[1, 6]));
    }

    #[test]
    fn hermite_examples() {
        let (h, u) = hermite_normal_form(&IntMatrix::identity(3));
        assert_eq!(h, IntMatrix::identity(3));
        assert_eq!(u, IntMatrix::identity(3));

        let a = IntMatrix::from_i64_rows(&[[2, 4], [6, 8]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(&a * &u, h);
        assert_eq!(h, IntMatrix::from_i64_rows(&[[2, 0], [2, 4]]));
        assert_eq!(h.determinant().abs(), BigInt::from(8));

        let col = IntMatrix::from_i64_rows(&[[4], [6]]);
        assert_eq!(hermite_normal_form(&col).0, col);
        let neg = IntMatrix::from_i64_rows(&[[-4], [6]]);
        assert_eq!(hermite_normal_form(&neg).0, IntMatrix::from_i64_rows(&[[4], [-6]]));
    }

    #[test]
    fn kernel_examples() {
        let k = integer_kernel(&IntMatrix::from_i64_rows(&[[1, 1]]));
        assert_eq!(k, IntMatrix::from_i64_rows(&[[1], [-1]]));
        let k = integer_kernel(&IntMatrix::from_i64_rows(&[[2, -2]]));
        assert_eq!(k, IntMatrix::from_i64_rows(&[[1], [1]]));
        let k = integer_kernel(&IntMatrix::from_i64_rows(&[[2, 1], [1, 1]]));
        assert_eq!(k.cols(), 0);
        assert_eq!(k.rows(), 2);
        // kernel of the empty map Z^2 -> Z^0 is everything
        assert_eq!(integer_kernel(&IntMatrix::zeros(0, 2)), IntMatrix::identity(2));
    }

    #[test]
    fn solve_examples() {
        let b = int_vec(&[5, -7]);
        assert_eq!(solve_integer(&IntMatrix::identity(2), &b), Some(b.clone()));
        assert_eq!(solve_integer(&IntMatrix::from_i64_rows(&[[2]]), &int_vec(&[3])), None);
        assert_eq!(
            solve_integer(&IntMatrix::from_i64_rows(&[[2], [1]]), &int_vec(&[4, 2])),
            Some(int_vec(&[2]))
        );
        assert_eq!(solve_integer(&IntMatrix::from_i64_rows(&[[2], [1]]), &int_vec(&[4, 3])), None);
        assert_eq!(solve_integer(&IntMatrix::zeros(0, 2), &[]), Some(int_vec(&[0, 0])));
    }

    #[test]
    fn inverse_of_unimodular() {
        let a = IntMatrix::from_i64_rows(&[[2, 3], [1, 2]]);
        let inv = unimodular_inverse(&a).unwrap();
        assert_eq!(&a * &inv, IntMatrix::identity(2));
        assert!(unimodular_inverse(&IntMatrix::from_i64_rows(&[[2, 0], [0, 1]])).is_none());
    }
}
