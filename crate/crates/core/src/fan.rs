//! Simplicial fans, described combinatorially by index sets of rays.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{rational_rank, to_rational_vec, RatMatrix, Rational};

/// A cone, as the sorted set of (0-based) indices of its rays.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn new(mut rays: Vec<usize>) -> Self {
        rays.sort_unstable();
        rays.dedup();
        Cone(rays)
    }

    pub fn empty() -> Self {
        Cone(Vec::new())
    }

    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, ray: usize) -> bool {
        self.0.binary_search(&ray).is_ok()
    }

    pub fn is_subset(&self, other: &Cone) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn common(&self, other: &Cone) -> Cone {
        Cone(self.0.iter().copied().filter(|&i| other.contains(i)).collect())
    }

    /// Ray indices counted from one, as shown to people.
    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }
}

impl From<Vec<usize>> for Cone {
    fn from(v: Vec<usize>) -> Self {
        Cone::new(v)
    }
}

impl fmt::Display for Cone {
    /// 1-based, e.g. `{1,3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.one_based().iter().join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanViolation {
    RayDimension { ray: usize, expected: usize, got: usize },
    ZeroRay { ray: usize },
    IndexOutOfRange { cone: Cone, index: usize },
    NotSimplicial { cone: Cone },
    NotMaximal { cone: Cone, container: Cone },
    Incompatible { first: Cone, second: Cone },
    UncoveredRay { ray: usize },
    RaysDoNotSpan { rank: usize, dim: usize },
}

impl FanViolation {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            FanViolation::RayDimension { .. } => "ray_dimension",
            FanViolation::ZeroRay { .. } => "ray_undefined",
            FanViolation::IndexOutOfRange { .. } => "index_out_of_range",
            FanViolation::NotSimplicial { .. } => "simpliciality",
            FanViolation::NotMaximal { .. } => "maximality",
            FanViolation::Incompatible { .. } => "compatibility",
            FanViolation::UncoveredRay { .. } => "uncovered_ray",
            FanViolation::RaysDoNotSpan { .. } => "span",
        }
    }

    /// Cones involved, for machine-readable reports.
    pub fn cones(&self) -> Vec<Cone> {
        match self {
            FanViolation::IndexOutOfRange { cone, .. } | FanViolation::NotSimplicial { cone } => vec![cone.clone()],
            FanViolation::NotMaximal { cone, container } => vec![cone.clone(), container.clone()],
            FanViolation::Incompatible { first, second } => vec![first.clone(), second.clone()],
            _ => Vec::new(),
        }
    }

    /// Rays involved.
    pub fn rays(&self) -> Vec<usize> {
        match self {
            FanViolation::RayDimension { ray, .. } | FanViolation::ZeroRay { ray } | FanViolation::UncoveredRay { ray } => {
                vec![*ray]
            }
            FanViolation::IndexOutOfRange { index, .. } => vec![*index],
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for FanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanViolation::RayDimension { ray, expected, got } => {
                write!(f, "ray {} has {got} coordinates, expected {expected}", ray + 1)
            }
            FanViolation::ZeroRay { ray } => write!(f, "ray {} is undefined: its vector is zero", ray + 1),
            FanViolation::IndexOutOfRange { cone, index } => {
                write!(f, "cone {cone} refers to ray {} which does not exist", index + 1)
            }
            FanViolation::NotSimplicial { cone } => write!(f, "cone {cone} is not simplicial"),
            FanViolation::NotMaximal { cone, container } => {
                write!(f, "maximal cone {cone} is contained in {container}")
            }
            FanViolation::Incompatible { first, second } => {
                write!(f, "cones {first} and {second} do not meet along a common face")
            }
            FanViolation::UncoveredRay { ray } => write!(f, "ray {} lies in no cone", ray + 1),
            FanViolation::RaysDoNotSpan { rank, dim } => {
                write!(f, "rays span a space of dimension {rank}, not {dim}")
            }
        }
    }
}

/// Rays in `Z^dim` together with the maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<BigInt>>,
    max_cones: Vec<Cone>,
}

impl Fan {
    /// Stores the data without validation; see [`Fan::validate`].
    pub fn new(dim: usize, rays: Vec<Vec<BigInt>>, max_cones: Vec<Cone>) -> Self {
        let max_cones: Vec<Cone> = max_cones.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        Fan { dim, rays, max_cones }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn ray_count(&self) -> usize {
        self.rays.len()
    }

    /// Maximal cones in lexicographic order.
    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    fn ray_columns(&self, cone: &Cone) -> Vec<Vec<BigInt>> {
        cone.rays().iter().map(|&i| self.rays[i].clone()).collect()
    }

    pub fn is_simplicial_cone(&self, cone: &Cone) -> bool {
        rational_rank(&self.ray_columns(cone), self.dim) == cone.len()
    }

    /// All violations; the span condition is checked only when asked for.
    pub fn validate(&self, require_span: bool) -> Vec<FanViolation> {
        let mut out = Vec::new();
        for (i, r) in self.rays.iter().enumerate() {
            if r.len() != self.dim {
                out.push(FanViolation::RayDimension {
                    ray: i,
                    expected: self.dim,
                    got: r.len(),
                });
            } else if r.iter().all(Zero::is_zero) {
                out.push(FanViolation::ZeroRay { ray: i });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for cone in &self.max_cones {
            if let Some(&index) = cone.rays().iter().find(|&&i| i >= self.rays.len()) {
                out.push(FanViolation::IndexOutOfRange {
                    cone: cone.clone(),
                    index,
                });
            }
        }
        if !out.is_empty() {
            return out;
        }

        let mut simplicial = vec![true; self.max_cones.len()];
        for (k, cone) in self.max_cones.iter().enumerate() {
            if !self.is_simplicial_cone(cone) {
                simplicial[k] = false;
                out.push(FanViolation::NotSimplicial { cone: cone.clone() });
            }
        }
        for (a, b) in self.max_cones.iter().tuple_combinations() {
            if a.is_subset(b) || b.is_subset(a) {
                let (cone, container) = if a.is_subset(b) { (a, b) } else { (b, a) };
                out.push(FanViolation::NotMaximal {
                    cone: cone.clone(),
                    container: container.clone(),
                });
            }
        }
        for ((i, a), (j, b)) in self.max_cones.iter().enumerate().tuple_combinations() {
            if simplicial[i] && simplicial[j] && !self.meet_properly(a, b) {
                out.push(FanViolation::Incompatible {
                    first: a.clone(),
                    second: b.clone(),
                });
            }
        }
        for ray in 0..self.rays.len() {
            if !self.max_cones.iter().any(|c| c.contains(ray)) {
                out.push(FanViolation::UncoveredRay { ray });
            }
        }
        if require_span {
            let rank = rational_rank(&self.rays, self.dim);
            if rank != self.dim {
                out.push(FanViolation::RaysDoNotSpan { rank, dim: self.dim });
            }
        }
        out
    }

    /// Whether the geometric intersection of two simplicial cones is the cone
    /// on their common rays.
    ///
    /// Points of the intersection are pairs `(a, b) >= 0` with
    /// `sum a_i u_i = sum b_j u_j`. That set is a pointed polyhedral cone, so it
    /// is generated by its extreme rays, which are the sign-definite kernel
    /// vectors of minimal support. The intersection is the common face exactly
    /// when every extreme ray is `a_i = b_i = 1` for one shared ray `i`.
    fn meet_properly(&self, a: &Cone, b: &Cone) -> bool {
        let mut columns: Vec<(usize, bool, Vec<Rational>)> = Vec::new();
        for &i in a.rays() {
            columns.push((i, true, to_rational_vec(&self.rays[i])));
        }
        for &j in b.rays() {
            let neg: Vec<BigInt> = self.rays[j].iter().map(|x| -x).collect();
            columns.push((j, false, to_rational_vec(&neg)));
        }
        let total = columns.len();
        for size in 1..=(self.dim + 1).min(total) {
            for support in (0..total).combinations(size) {
                let cols: Vec<Vec<Rational>> = support.iter().map(|&k| columns[k].2.clone()).collect();
                let Some(v) = unique_kernel_direction(self.dim, &cols) else {
                    continue;
                };
                let positive = v.iter().all(|x| x.is_positive());
                let negative = v.iter().all(|x| x.is_negative());
                if !(positive || negative) {
                    continue;
                }
                let trivial = size == 2 && {
                    let (i, side_i, _) = &columns[support[0]];
                    let (j, side_j, _) = &columns[support[1]];
                    i == j && side_i != side_j
                };
                if !trivial {
                    return false;
                }
            }
        }
        true
    }

    /// Every cone of the fan, including the empty cone, in lexicographic order.
    pub fn face_closure(&self) -> Vec<Cone> {
        let mut all = BTreeSet::new();
        all.insert(Cone::empty());
        for cone in &self.max_cones {
            for k in 1..=cone.len() {
                for sub in cone.rays().iter().copied().combinations(k) {
                    all.insert(Cone(sub));
                }
            }
        }
        all.into_iter().collect()
    }

    pub fn is_face(&self, s: &Cone) -> bool {
        self.max_cones.iter().any(|c| s.is_subset(c))
    }

    /// Minimal index sets contained in no cone.
    pub fn minimal_nonfaces(&self) -> Vec<Cone> {
        let n = self.rays.len();
        let max_size = self.max_cones.iter().map(Cone::len).max().unwrap_or(0);
        let mut out = Vec::new();
        for k in 1..=(max_size + 1).min(n) {
            for s in (0..n).combinations(k) {
                let cone = Cone(s);
                if self.is_face(&cone) {
                    continue;
                }
                let minimal = (0..k).all(|drop| {
                    let mut sub = cone.0.clone();
                    sub.remove(drop);
                    self.is_face(&Cone(sub))
                });
                if minimal {
                    out.push(cone);
                }
            }
        }
        out.sort();
        out
    }

    /// Whether `v` lies in the (simplicial) cone spanned by the rays of `cone`.
    pub fn ray_membership(&self, v: &[Rational], cone: &Cone) -> bool {
        let cols: Vec<Vec<Rational>> = cone.rays().iter().map(|&i| to_rational_vec(&self.rays[i])).collect();
        let m = RatMatrix::from_columns(self.dim, &cols);
        match m.solve(v) {
            Some(lambda) => lambda.iter().all(|x| !x.is_negative()),
            None => false,
        }
    }

    /// Whether the support of a valid fan is all of `R^dim`: all maximal cones
    /// are full-dimensional and every facet of one is shared by exactly two.
    pub fn is_complete(&self) -> bool {
        if self.dim == 0 {
            return true;
        }
        if self.max_cones.is_empty() || self.max_cones.iter().any(|c| c.len() != self.dim) {
            return false;
        }
        self.max_cones.iter().all(|cone| {
            cone.rays().iter().copied().combinations(self.dim - 1).all(|ridge| {
                let ridge = Cone(ridge);
                self.max_cones.iter().filter(|c| ridge.is_subset(c)).count() == 2
            })
        })
    }
}

/// If the columns have a one-dimensional kernel over Q, a spanning vector.
fn unique_kernel_direction(rows: usize, columns: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let m = RatMatrix::from_columns(rows, columns);
    let (r, pivots) = m.rref();
    if columns.len() - pivots.len() != 1 {
        return None;
    }
    let free = (0..columns.len()).find(|c| !pivots.contains(c))?;
    let mut v = vec![Rational::zero(); columns.len()];
    v[free] = Rational::from_integer(1.into());
    for (row, &p) in pivots.iter().enumerate() {
        v[p] = -r.get(row, free).clone();
    }
    Some(v)
}
