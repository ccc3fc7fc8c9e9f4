//! Stacky polytopes and the exact geometry behind them.
//!
//! A polytope is given in H-representation `{x : ⟨x, ν_i⟩ ≥ −c_i}`. Vertices
//! are found by solving every `d`-subset of facet equations, which is fine at
//! the sizes this crate is meant for (a dozen facets in dimension ≤ 4).

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::fan::Cone;
use crate::group::{FgAbGroup, GroupError, GroupHom, Order};
use crate::linalg::{to_rational_vec, RatMatrix, Rational};
use crate::stacky::{StackyError, StackyFan};

#[derive(Debug, Error)]
pub enum PolytopeError {
    #[error("need at least {needed} facets in dimension {dim}, got {got}")]
    TooFewFacets { dim: usize, needed: usize, got: usize },
    #[error("normal {index} has {got} coordinates, expected {expected}")]
    NormalLength { index: usize, expected: usize, got: usize },
    #[error("expected {expected} offsets, got {got}")]
    OffsetCount { expected: usize, got: usize },
    #[error("normal {0} is zero")]
    ZeroNormal(usize),
    #[error("polytope is unbounded (normals do not positively span)")]
    Unbounded,
    #[error("polytope is empty")]
    Empty,
    #[error("polytope is not simple: vertex {vertex} lies on facets {facets:?}")]
    NotSimple { vertex: String, facets: Vec<usize> },
    #[error("facet {0} is redundant (supports no vertex)")]
    RedundantFacet(usize),
    #[error("normal {0} is not primitive")]
    NotPrimitive(usize),
    #[error("label {0} is not a positive integer")]
    BadLabel(usize),
    #[error("cokernel of beta is infinite")]
    InfiniteCokernel,
    #[error("volume relation violated: {0}")]
    VolumeMismatch(String),
    #[error(transparent)]
    Stacky(#[from] StackyError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A bounded, full-dimensional, simple polytope together with its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope {
    dim: usize,
    normals: Vec<Vec<Rational>>,
    offsets: Vec<Rational>,
    vertices: Vec<Vec<Rational>>,
    vertex_facets: Vec<Vec<usize>>,
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn format_point(p: &[Rational]) -> String {
    format!("({})", p.iter().map(ToString::to_string).join(", "))
}

/// Whether `v` is a nonnegative combination of `gens`.
fn in_cone(v: &[Rational], gens: &[Vec<Rational>], dim: usize) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    // Carathéodory: some linearly independent subset already works
    for k in 1..=dim.min(gens.len()) {
        for subset in (0..gens.len()).combinations(k) {
            let cols: Vec<Vec<Rational>> = subset.iter().map(|&i| gens[i].clone()).collect();
            let m = RatMatrix::from_columns(dim, &cols);
            if m.rank() < k {
                continue;
            }
            if let Some(lambda) = m.solve(v) {
                if lambda.iter().all(|l| !l.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}

impl Polytope {
    /// Enumerates the vertices of `{x : ⟨x, normals[i]⟩ ≥ −offsets[i]}`.
    pub fn new(dim: usize, normals: Vec<Vec<Rational>>, offsets: Vec<Rational>) -> Result<Self, PolytopeError> {
        let n = normals.len();
        if offsets.len() != n {
            return Err(PolytopeError::OffsetCount { expected: n, got: offsets.len() });
        }
        for (index, nu) in normals.iter().enumerate() {
            if nu.len() != dim {
                return Err(PolytopeError::NormalLength { index, expected: dim, got: nu.len() });
            }
        }
        if let Some(i) = normals.iter().position(|nu| nu.iter().all(Zero::is_zero)) {
            return Err(PolytopeError::ZeroNormal(i));
        }
        if n < dim + 1 {
            return Err(PolytopeError::TooFewFacets { dim, needed: dim + 1, got: n });
        }
        let spans = RatMatrix::from_columns(dim, &normals).rank() == dim;
        let negated = |nu: &Vec<Rational>| nu.iter().map(|x| -x).collect::<Vec<_>>();
        if !spans || !normals.iter().all(|nu| in_cone(&negated(nu), &normals, dim)) {
            return Err(PolytopeError::Unbounded);
        }

        let mut found: BTreeSet<Vec<Rational>> = BTreeSet::new();
        for subset in (0..n).combinations(dim) {
            let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| normals[i].clone()).collect();
            let m = RatMatrix::from_rows(rows);
            if m.determinant().is_zero() {
                continue;
            }
            let rhs: Vec<Rational> = subset.iter().map(|&i| -&offsets[i]).collect();
            let x = m.solve(&rhs).expect("nonsingular system is solvable");
            if normals.iter().zip(&offsets).all(|(nu, c)| dot(&x, nu) >= -c) {
                found.insert(x);
            }
        }
        if found.is_empty() {
            return Err(PolytopeError::Empty);
        }
        let vertices: Vec<Vec<Rational>> = found.into_iter().collect();
        let mut vertex_facets = Vec::with_capacity(vertices.len());
        for v in &vertices {
            let active: Vec<usize> = (0..n).filter(|&i| dot(v, &normals[i]) == -&offsets[i]).collect();
            if active.len() != dim {
                return Err(PolytopeError::NotSimple { vertex: format_point(v), facets: active });
            }
            vertex_facets.push(active);
        }
        if let Some(i) = (0..n).find(|i| !vertex_facets.iter().any(|a| a.contains(i))) {
            return Err(PolytopeError::RedundantFacet(i));
        }
        Ok(Polytope { dim, normals, offsets, vertices, vertex_facets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facet_count(&self) -> usize {
        self.normals.len()
    }

    pub fn normals(&self) -> &[Vec<Rational>] {
        &self.normals
    }

    pub fn offsets(&self) -> &[Rational] {
        &self.offsets
    }

    /// Vertices in lexicographic order.
    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    /// Facets through each vertex, aligned with [`Polytope::vertices`].
    pub fn vertex_facets(&self) -> &[Vec<usize>] {
        &self.vertex_facets
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.normals.iter().zip(&self.offsets).all(|(nu, c)| dot(x, nu) >= -c)
    }

    /// Euclidean volume in the ambient coordinates.
    pub fn volume(&self) -> Rational {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let mut total = Rational::zero();
        for simplex in self.triangulate(&[], &all) {
            let v0 = &self.vertices[simplex[0]];
            let cols: Vec<Vec<Rational>> = simplex[1..]
                .iter()
                .map(|&k| self.vertices[k].iter().zip(v0).map(|(a, b)| a - b).collect())
                .collect();
            total += RatMatrix::from_columns(self.dim, &cols).determinant().abs();
        }
        let factorial: BigInt = (1..=self.dim).map(BigInt::from).product();
        total / Rational::from_integer(factorial)
    }

    /// Pulling triangulation of the face cut out by `facets` (whose vertex
    /// indices are `face`): cone the smallest vertex over the triangulations
    /// of the subfaces that miss it.
    fn triangulate(&self, facets: &[usize], face: &[usize]) -> Vec<Vec<usize>> {
        if facets.len() == self.dim {
            return vec![face.to_vec()];
        }
        let apex = face[0];
        let mut out = Vec::new();
        for j in 0..self.facet_count() {
            if facets.contains(&j) || self.vertex_facets[apex].contains(&j) {
                continue;
            }
            let sub: Vec<usize> = face.iter().copied().filter(|&k| self.vertex_facets[k].contains(&j)).collect();
            if sub.is_empty() {
                continue;
            }
            let mut next = facets.to_vec();
            next.push(j);
            for mut simplex in self.triangulate(&next, &sub) {
                simplex.insert(0, apex);
                out.push(simplex);
            }
        }
        out
    }

    /// Maximal cones of the normal fan: the facet sets of the vertices.
    pub fn normal_cones(&self) -> Vec<Cone> {
        self.vertex_facets.iter().map(|a| Cone::new(a.clone())).collect()
    }
}

/// Free-function form of [`Polytope::new`].
pub fn enumerate_vertices(
    dim: usize,
    normals: Vec<Vec<Rational>>,
    offsets: Vec<Rational>,
) -> Result<Polytope, PolytopeError> {
    Polytope::new(dim, normals, offsets)
}

pub fn lattice_volume(p: &Polytope) -> Rational {
    p.volume()
}

/// A simple polytope with primitive integral normals and positive labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledPolytope {
    dim: usize,
    normals: Vec<Vec<BigInt>>,
    labels: Vec<BigInt>,
    offsets: Vec<Rational>,
}

impl LabelledPolytope {
    /// The polytope is `{x : ⟨x, ν_i⟩ ≥ −c_i}`.
    pub fn new(
        dim: usize,
        normals: Vec<Vec<BigInt>>,
        labels: Vec<BigInt>,
        offsets: Vec<Rational>,
    ) -> Result<Self, PolytopeError> {
        let n = normals.len();
        for (count, expected) in [(labels.len(), n), (offsets.len(), n)] {
            if count != expected {
                return Err(PolytopeError::OffsetCount { expected, got: count });
            }
        }
        for (index, nu) in normals.iter().enumerate() {
            if nu.len() != dim {
                return Err(PolytopeError::NormalLength { index, expected: dim, got: nu.len() });
            }
            let g = nu.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if g.is_zero() {
                return Err(PolytopeError::ZeroNormal(index));
            }
            if !g.is_one() {
                return Err(PolytopeError::NotPrimitive(index));
            }
        }
        if let Some(i) = labels.iter().position(|m| !m.is_positive()) {
            return Err(PolytopeError::BadLabel(i));
        }
        Ok(LabelledPolytope { dim, normals, labels, offsets })
    }

    pub fn from_i64(dim: usize, normals: &[&[i64]], labels: &[i64], offsets: Vec<Rational>) -> Result<Self, PolytopeError> {
        Self::new(
            dim,
            normals.iter().map(|nu| nu.iter().map(|&x| BigInt::from(x)).collect()).collect(),
            labels.iter().map(|&m| BigInt::from(m)).collect(),
            offsets,
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[Vec<BigInt>] {
        &self.normals
    }

    pub fn labels(&self) -> &[BigInt] {
        &self.labels
    }

    pub fn offsets(&self) -> &[Rational] {
        &self.offsets
    }
}

/// `(N, Δ, β)`: a stacky fan datum `(N, β)` with one offset per ray, where
/// `Δ = {x : ⟨x, β(e_i) ⊗ 1⟩ ≥ −c_i}` in the dual of the free part of `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackyPolytope {
    beta: GroupHom,
    offsets: Vec<Rational>,
    polytope: Polytope,
}

/// Output of [`StackyPolytope::cover_polytope`].
#[derive(Clone, Debug)]
pub struct CoverPolytope {
    pub cover: StackyPolytope,
    /// `vol(Δ') / vol(Δ)` in dual-basis coordinates.
    pub euclidean_ratio: Rational,
    /// Ratio of volumes each divided by the order of the torsion of its
    /// lattice. Equals `|N/N'|`.
    pub ratio: Rational,
    /// `|N/N'| = |coker β|`.
    pub index: BigInt,
}

impl StackyPolytope {
    pub fn new(group: FgAbGroup, columns: Vec<Vec<BigInt>>, offsets: Vec<Rational>) -> Result<Self, PolytopeError> {
        let n = columns.len();
        if offsets.len() != n {
            return Err(PolytopeError::OffsetCount { expected: n, got: offsets.len() });
        }
        let beta = GroupHom::from_columns(FgAbGroup::free(n), group.clone(), &columns)?;
        let d = group.rank();
        let normals = (0..n).map(|j| to_rational_vec(&beta.column(j)[..d])).collect();
        let polytope = Polytope::new(d, normals, offsets.clone())?;
        if !beta.cokernel().group.is_finite() {
            return Err(PolytopeError::InfiniteCokernel);
        }
        Ok(StackyPolytope { beta, offsets, polytope })
    }

    /// `β(e_i) = m_i ν_i` on `N = Z^d`. Offsets are scaled by the labels so
    /// that the polytope itself is unchanged.
    pub fn from_labelled(lp: &LabelledPolytope) -> Result<Self, PolytopeError> {
        let columns = lp.normals.iter().zip(&lp.labels).map(|(nu, m)| nu.iter().map(|x| x * m).collect()).collect();
        let offsets = lp.offsets.iter().zip(&lp.labels).map(|(c, m)| c * Rational::from_integer(m.clone())).collect();
        Self::new(FgAbGroup::free(lp.dim), columns, offsets)
    }

    pub fn group(&self) -> &FgAbGroup {
        self.beta.target()
    }

    pub fn beta(&self) -> &GroupHom {
        &self.beta
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.beta.source().dim()).map(|j| self.beta.column(j)).collect()
    }

    pub fn offsets(&self) -> &[Rational] {
        &self.offsets
    }

    pub fn polytope(&self) -> &Polytope {
        &self.polytope
    }

    pub fn volume(&self) -> Rational {
        self.polytope.volume()
    }

    /// Volume divided by the order of the torsion subgroup of `N`.
    pub fn normalized_volume(&self) -> Rational {
        self.volume() / Rational::from_integer(self.group().torsion_order())
    }

    /// `(N, Σ(Δ), β)`, rays the inward normals, one maximal cone per vertex.
    pub fn normal_fan(&self) -> Result<StackyFan, PolytopeError> {
        Ok(StackyFan::new(self.group().clone(), self.columns(), self.polytope.normal_cones())?)
    }

    /// `(N', Δ', β')` over the universal cover, with the same offsets.
    ///
    /// Fails if the volume relation `vol(Δ') = |N/N'| · |Tor N'| / |Tor N| ·
    /// vol(Δ)` does not hold exactly.
    pub fn cover_polytope(&self) -> Result<CoverPolytope, PolytopeError> {
        let fan = self.normal_fan()?;
        let index = match fan.fundamental_group().order() {
            Order::Finite(k) => k,
            Order::Infinite => return Err(PolytopeError::InfiniteCokernel),
        };
        let up = fan.universal_cover();
        let cover = StackyPolytope::new(up.group().clone(), up.columns(), self.offsets.clone())?;
        let euclidean_ratio = cover.volume() / self.volume();
        let ratio = cover.normalized_volume() / self.normalized_volume();
        let expected = Rational::new(
            &index * cover.group().torsion_order(),
            self.group().torsion_order(),
        );
        if euclidean_ratio != expected || ratio != Rational::from_integer(index.clone()) {
            return Err(PolytopeError::VolumeMismatch(format!(
                "vol(cover)/vol = {euclidean_ratio}, expected {expected}; normalized ratio {ratio}, |N/N'| = {index}"
            )));
        }
        Ok(CoverPolytope { cover, euclidean_ratio, ratio, index })
    }

    /// `|coker β|`, cross-checked against the cover volume ratio.
    pub fn symplectic_volume_ratio(&self) -> Result<BigInt, PolytopeError> {
        let cover = self.cover_polytope()?;
        let order = self.beta.cokernel().group.order();
        match order.finite() {
            Some(k) if Rational::from_integer(k.clone()) == cover.ratio => Ok(k.clone()),
            _ => Err(PolytopeError::VolumeMismatch(format!(
                "|coker beta| = {order:?} but volume ratio is {}",
                cover.ratio
            ))),
        }
    }
}

impl fmt::Display for StackyPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N = {}, beta = [", self.group())?;
        for (j, col) in self.columns().iter().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({})", col.iter().join(", "))?;
        }
        write!(f, "], offsets = ({})", self.offsets.iter().join(", "))
    }
}
