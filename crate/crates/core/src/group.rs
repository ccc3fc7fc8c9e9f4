//! Finitely generated abelian groups in invariant-factor form.
//!
//! A group `Z^d + Z/q_1 + ... + Z/q_r` (with `q_i >= 2`, `q_i | q_{i+1}`) has
//! elements given by coordinate vectors of length `d + r`; coordinate `d + i`
//! is read modulo `q_i` and stored reduced into `[0, q_i)`. Every lattice
//! question about such a group is lifted to `Z^(d+r)` with the relation
//! matrix `Q` (columns `q_i` times the torsion unit vectors) adjoined, and then
//! answered by the routines in [`crate::linalg`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{integer_kernel, lattice_basis, smith_normal_form, solve_integer, unimodular_inverse, IntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invariant factor {0} is not at least 2")]
    FactorTooSmall(BigInt),
    #[error("invariant factors are not a divisibility chain: {0} does not divide {1}")]
    NotDivisibilityChain(BigInt, BigInt),
    #[error("element has {got} coordinates but the group needs {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("matrix is {got_rows}x{got_cols}, expected {rows}x{cols}")]
    Shape {
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("map is not well defined: {order} times generator {generator} does not go to zero")]
    IllDefined { generator: usize, order: BigInt },
    #[error("homomorphisms are not composable")]
    NotComposable,
    #[error("subgroups have different parent groups")]
    DifferentParents,
}

/// Cardinality of a group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Finite(BigInt),
    Infinite,
}

impl Order {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Order::Finite(n) if n.is_one())
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "infinite"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Result<Self, GroupError> {
        for q in &torsion {
            if q < &BigInt::from(2) {
                return Err(GroupError::FactorTooSmall(q.clone()));
            }
        }
        for w in torsion.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(GroupError::NotDivisibilityChain(w[0].clone(), w[1].clone()));
            }
        }
        Ok(FgAbGroup { rank, torsion })
    }

    pub fn from_i64(rank: usize, torsion: &[i64]) -> Result<Self, GroupError> {
        Self::new(rank, torsion.iter().map(|&q| BigInt::from(q)).collect())
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { rank, torsion: Vec::new() }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn torsion_rank(&self) -> usize {
        self.torsion.len()
    }

    /// Number of coordinates of an element.
    pub fn dim(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn order(&self) -> Order {
        if self.rank > 0 {
            Order::Infinite
        } else {
            Order::Finite(self.torsion_order())
        }
    }

    /// `|Tor G|`, the product of the invariant factors.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// The `dim × r` matrix whose columns generate the relations.
    pub fn relation_matrix(&self) -> IntMatrix {
        let mut q = IntMatrix::zeros(self.dim(), self.torsion.len());
        for (i, t) in self.torsion.iter().enumerate() {
            q[(self.rank + i, i)] = t.clone();
        }
        q
    }

    pub fn check_element(&self, x: &[BigInt]) -> Result<(), GroupError> {
        if x.len() == self.dim() {
            Ok(())
        } else {
            Err(GroupError::WrongLength {
                expected: self.dim(),
                got: x.len(),
            })
        }
    }

    /// Reduces torsion coordinates into `[0, q_i)`.
    pub fn normalize(&self, x: &[BigInt]) -> Vec<BigInt> {
        debug_assert_eq!(x.len(), self.dim());
        x.iter()
            .enumerate()
            .map(|(i, c)| match i.checked_sub(self.rank) {
                Some(t) => c.mod_floor(&self.torsion[t]),
                None => c.clone(),
            })
            .collect()
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        self.normalize(x).iter().all(Zero::is_zero)
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.dim()]
    }

    /// The `i`-th canonical generator.
    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        let mut e = self.zero();
        e[i] = BigInt::one();
        e
    }

    pub fn free_part<'a>(&self, x: &'a [BigInt]) -> &'a [BigInt] {
        &x[..self.rank]
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            d => parts.push(format!("Z^{d}")),
        }
        parts.extend(self.torsion.iter().map(|q| format!("Z/{q}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A homomorphism given by its matrix on canonical generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Validates shape and well-definedness; columns are stored normalized.
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self, GroupError> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(GroupError::Shape {
                rows: target.dim(),
                cols: source.dim(),
                got_rows: matrix.rows(),
                got_cols: matrix.cols(),
            });
        }
        let columns: Vec<Vec<BigInt>> = matrix.columns().iter().map(|c| target.normalize(c)).collect();
        for (i, q) in source.torsion.iter().enumerate() {
            let g = source.rank + i;
            let image: Vec<BigInt> = columns[g].iter().map(|c| c * q).collect();
            if !target.is_zero_element(&image) {
                return Err(GroupError::IllDefined {
                    generator: g,
                    order: q.clone(),
                });
            }
        }
        let matrix = IntMatrix::from_columns(target.dim(), &columns);
        Ok(GroupHom { source, target, matrix })
    }

    pub fn from_columns(source: FgAbGroup, target: FgAbGroup, columns: &[Vec<BigInt>]) -> Result<Self, GroupError> {
        if columns.len() != source.dim() {
            return Err(GroupError::Shape {
                rows: target.dim(),
                cols: source.dim(),
                got_rows: target.dim(),
                got_cols: columns.len(),
            });
        }
        for c in columns {
            target.check_element(c)?;
        }
        Self::new(source, target.clone(), IntMatrix::from_columns(target.dim(), columns))
    }

    pub fn identity(group: &FgAbGroup) -> Self {
        GroupHom {
            source: group.clone(),
            target: group.clone(),
            matrix: IntMatrix::identity(group.dim()),
        }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.matrix.column(j)
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.target.normalize(&self.matrix.mul_vec(x))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom, GroupError> {
        if inner.target != self.source {
            return Err(GroupError::NotComposable);
        }
        GroupHom::new(inner.source.clone(), self.target.clone(), &self.matrix * &inner.matrix)
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::new_unchecked(self.target.clone(), self.matrix.columns())
    }

    pub fn kernel(&self) -> Subgroup {
        let lattice = self.matrix.hcat(&self.target.relation_matrix());
        let kernel = integer_kernel(&lattice);
        let gens = kernel
            .columns()
            .into_iter()
            .map(|c| self.source.normalize(&c[..self.source.dim()]))
            .filter(|c| c.iter().any(|x| !x.is_zero()))
            .collect();
        Subgroup::new_unchecked(self.source.clone(), gens)
    }

    pub fn cokernel(&self) -> Quotient {
        quotient_by(&self.image())
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().group.is_trivial()
    }

    /// Restriction to a subgroup of the source, as a map out of the
    /// canonical form of that subgroup.
    pub fn restrict(&self, sub: &Subgroup) -> Result<GroupHom, GroupError> {
        if sub.parent != self.source {
            return Err(GroupError::DifferentParents);
        }
        self.compose(&sub.embedding().inclusion)
    }

    /// Some preimage of `y`, if there is one.
    pub fn preimage(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let lattice = self.matrix.hcat(&self.target.relation_matrix());
        let x = solve_integer(&lattice, y)?;
        Some(self.source.normalize(&x[..self.source.dim()]))
    }
}

/// Subgroup generated by a (possibly redundant) list of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent: FgAbGroup,
    generators: Vec<Vec<BigInt>>,
}

/// A subgroup in canonical form together with its inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub group: FgAbGroup,
    pub inclusion: GroupHom,
}

impl Subgroup {
    pub fn new(parent: FgAbGroup, generators: Vec<Vec<BigInt>>) -> Result<Self, GroupError> {
        for g in &generators {
            parent.check_element(g)?;
        }
        Ok(Self::new_unchecked(parent, generators))
    }

    fn new_unchecked(parent: FgAbGroup, generators: Vec<Vec<BigInt>>) -> Self {
        let generators = generators.iter().map(|g| parent.normalize(g)).collect();
        Subgroup { parent, generators }
    }

    pub fn trivial(parent: &FgAbGroup) -> Self {
        Subgroup {
            parent: parent.clone(),
            generators: Vec::new(),
        }
    }

    pub fn whole(parent: &FgAbGroup) -> Self {
        let gens = (0..parent.dim()).map(|i| parent.generator(i)).collect();
        Subgroup::new_unchecked(parent.clone(), gens)
    }

    pub fn parent(&self) -> &FgAbGroup {
        &self.parent
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn generator_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.parent.dim(), &self.generators)
    }

    /// Generators with the parent's relations adjoined, as a lattice in `Z^dim`.
    fn lifted_lattice(&self) -> IntMatrix {
        self.generator_matrix().hcat(&self.parent.relation_matrix())
    }

    /// Hermite basis of the lifted lattice; equal subgroups give equal bases.
    pub fn canonical_lattice(&self) -> IntMatrix {
        lattice_basis(&self.lifted_lattice())
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        solve_integer(&self.lifted_lattice(), x).is_some()
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        other.parent == self.parent && other.generators.iter().all(|g| self.contains(g))
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(|g| self.parent.is_zero_element(g))
    }

    pub fn embedding(&self) -> Embedding {
        let k = self.generators.len();
        let m = self.generator_matrix();
        let relations = integer_kernel(&self.lifted_lattice()).select_rows(&(0..k).collect::<Vec<_>>());
        let q = from_presentation(k, &relations);
        let columns: Vec<Vec<BigInt>> = (0..q.group.dim())
            .map(|j| self.parent.normalize(&m.mul_vec(&q.section.column(j))))
            .collect();
        let inclusion = GroupHom::from_columns(q.group.clone(), self.parent.clone(), &columns)
            .expect("inclusion of a subgroup is well defined");
        Embedding {
            group: q.group,
            inclusion,
        }
    }

    pub fn order(&self) -> Order {
        self.embedding().group.order()
    }

    /// `|G / H|`.
    pub fn index(&self) -> Order {
        quotient_by(self).group.order()
    }
}

/// `subgroup_equal`: mutual containment.
pub fn subgroup_equal(a: &Subgroup, b: &Subgroup) -> Result<bool, GroupError> {
    if a.parent != b.parent {
        return Err(GroupError::DifferentParents);
    }
    Ok(a.contains_subgroup(b) && b.contains_subgroup(a))
}

/// A canonical quotient `source / H` with projection, plus a section matrix
/// sending canonical coordinates of the quotient to lifts in the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub group: FgAbGroup,
    pub projection: GroupHom,
    pub section: IntMatrix,
}

impl Quotient {
    /// A preimage in the source of a quotient element.
    pub fn lift(&self, y: &[BigInt]) -> Vec<BigInt> {
        self.projection.source().normalize(&self.section.mul_vec(y))
    }
}

/// `Z^k / im(relations)` in canonical form, with the projection from `Z^k`.
pub fn from_presentation(generators: usize, relations: &IntMatrix) -> Quotient {
    assert_eq!(relations.rows(), generators, "relation matrix must have one row per generator");
    let snf = smith_normal_form(relations);
    let factors = snf.invariant_factors();
    let rank = factors.len();
    let torsion_rows: Vec<usize> = (0..rank).filter(|&i| !factors[i].is_one()).collect();
    let kept: Vec<usize> = (rank..generators).chain(torsion_rows.iter().copied()).collect();
    let group = FgAbGroup {
        rank: generators - rank,
        torsion: torsion_rows.iter().map(|&i| factors[i].abs()).collect(),
    };
    let projection = GroupHom::new(FgAbGroup::free(generators), group.clone(), snf.u.select_rows(&kept))
        .expect("projection onto a presented group is well defined");
    let u_inv = unimodular_inverse(&snf.u).expect("Smith transform is unimodular");
    Quotient {
        group,
        projection,
        section: u_inv.select_columns(&kept),
    }
}

/// `G / H` in canonical form.
pub fn quotient_by(sub: &Subgroup) -> Quotient {
    let parent = &sub.parent;
    let presented = from_presentation(parent.dim(), &sub.lifted_lattice());
    let projection = GroupHom::new(parent.clone(), presented.group.clone(), presented.projection.matrix)
        .expect("projection is well defined because relations are adjoined");
    let columns: Vec<Vec<BigInt>> = presented.section.columns().iter().map(|c| parent.normalize(c)).collect();
    Quotient {
        section: IntMatrix::from_columns(parent.dim(), &columns),
        group: presented.group,
        projection,
    }
}

/// `coker f = target / im f`.
pub fn cokernel(f: &GroupHom) -> Quotient {
    f.cokernel()
}

/// `Tor G` with its inclusion into `G`.
pub fn torsion_subgroup(group: &FgAbGroup) -> Embedding {
    let t = FgAbGroup {
        rank: 0,
        torsion: group.torsion.clone(),
    };
    let mut m = IntMatrix::zeros(group.dim(), t.dim());
    for i in 0..t.dim() {
        m[(group.rank + i, i)] = BigInt::one();
    }
    let inclusion = GroupHom::new(t.clone(), group.clone(), m).expect("torsion inclusion is well defined");
    Embedding { group: t, inclusion }
}
