//! Stacky fans `(N, Σ, β)` and the invariants of their toric DM stacks.
//!
//! `N` is stored in invariant-factor form, so `β` is an integer matrix whose
//! column `j` holds the coordinates of `β(e_j)`; the fan's ray vectors are the
//! free parts of those columns. All answers come from lattice computations on
//! that matrix with `N`'s relation matrix adjoined:
//!
//! * fundamental group: `coker β = N / im β`;
//! * isotropy of a cone σ: `Tor(N / N_σ)`, where `N_σ` is generated by the
//!   `β(e_i)` with `i ∈ σ`;
//! * inertia map `ω_σ`: `Tor(N/N_σ) → N/N_σ → coker β`;
//! * global quotient: `im β = N_σ` for every maximal σ;
//! * universal cover: `(im β, Σ, β)` with `β` corestricted.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::fan::{Cone, Fan, FanViolation};
use crate::group::{
    from_presentation, quotient_by, torsion_subgroup, FgAbGroup, GroupError, GroupHom, Quotient, Subgroup,
};
use crate::linalg::{hermite_normal_form, integer_kernel, lattice_basis, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ColumnLength { ray: usize, expected: usize, got: usize },
    Fan(FanViolation),
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::ColumnLength { .. } => "column_length",
            Violation::Fan(v) => v.kind(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ColumnLength { ray, expected, got } => write!(
                f,
                "beta column {} has {got} coordinates but the group needs {expected}",
                ray + 1
            ),
            Violation::Fan(v) => v.fmt(f),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StackyError {
    #[error("invalid stacky fan: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// All violations of the stacky fan conditions for the given data.
pub fn validate_stacky_fan(group: &FgAbGroup, columns: &[Vec<BigInt>], max_cones: &[Cone]) -> Vec<Violation> {
    let bad: Vec<Violation> = columns
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() != group.dim())
        .map(|(ray, c)| Violation::ColumnLength {
            ray,
            expected: group.dim(),
            got: c.len(),
        })
        .collect();
    if !bad.is_empty() {
        return bad;
    }
    ray_fan(group, columns, max_cones)
        .validate(true)
        .into_iter()
        .map(Violation::Fan)
        .collect()
}

fn ray_fan(group: &FgAbGroup, columns: &[Vec<BigInt>], max_cones: &[Cone]) -> Fan {
    let rays = columns.iter().map(|c| group.free_part(c).to_vec()).collect();
    Fan::new(group.rank(), rays, max_cones.to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackyFan {
    group: FgAbGroup,
    beta: GroupHom,
    fan: Fan,
}

/// Data of the quotient construction: the canonical free resolution of `N`,
/// the lift `B` of `β` and the dual group `DG(β) = Z^(n+r) / im [B Q]^T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGroupData {
    pub torsion_rank: usize,
    pub lift: IntMatrix,
    pub resolution: IntMatrix,
    pub group: FgAbGroup,
    /// `β^∨ : Z^n → DG(β)`.
    pub dual_map: GroupHom,
    /// `n - d`, which must equal the rank of `DG(β)`.
    pub expected_rank: usize,
}

impl DualGroupData {
    pub fn rank_matches(&self) -> bool {
        self.group.rank() == self.expected_rank
    }

    /// Whether `Tor DG(β)` and the given (finite) group have the same invariant factors.
    pub fn torsion_matches(&self, pi1: &FgAbGroup) -> bool {
        pi1.is_finite() && self.group.torsion() == pi1.torsion()
    }
}

/// Isotropy `Tor(N/N_σ)` of a cone and its inertia map into `coker β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InertiaRecord {
    pub cone: Cone,
    pub isotropy: FgAbGroup,
    pub omega: GroupHom,
    pub injective: bool,
    pub kernel_order: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessCheck {
    pub smooth: bool,
    /// First maximal cone with `N_σ ≠ N`.
    pub witness: Option<Cone>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalQuotientCheck {
    pub global_quotient: bool,
    /// First maximal cone σ and ray `j` with `β(e_j) ∉ N_σ`.
    pub witness: Option<(Cone, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub fundamental_group: FgAbGroup,
    pub dual_group: DualGroupData,
    pub tor_duality: bool,
    pub global_stabilizer: FgAbGroup,
    pub cones: Vec<InertiaRecord>,
    pub smoothness: SmoothnessCheck,
    pub global_quotient: GlobalQuotientCheck,
    pub minimal_nonfaces: Vec<Cone>,
    pub complete: bool,
    pub cover: StackyFan,
}

impl AnalysisReport {
    /// The stack is a smooth manifold.
    pub fn is_manifold(&self) -> bool {
        self.smoothness.smooth
    }

    /// Every inertia map over the face closure is injective.
    pub fn all_inertia_injective(&self) -> bool {
        self.cones.iter().all(|r| r.injective)
    }
}

impl StackyFan {
    /// Builds and validates a stacky fan; `columns[j]` are the coordinates of `β(e_j)`.
    pub fn new(group: FgAbGroup, columns: Vec<Vec<BigInt>>, max_cones: Vec<Cone>) -> Result<Self, StackyError> {
        let violations = validate_stacky_fan(&group, &columns, &max_cones);
        if !violations.is_empty() {
            return Err(StackyError::Invalid(violations));
        }
        let beta = GroupHom::from_columns(FgAbGroup::free(columns.len()), group.clone(), &columns)?;
        let fan = ray_fan(&group, &beta.matrix().columns(), &max_cones);
        Ok(StackyFan { group, beta, fan })
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn beta(&self) -> &GroupHom {
        &self.beta
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn ray_count(&self) -> usize {
        self.beta.source().dim()
    }

    /// `d`, the rank of `N`.
    pub fn dim(&self) -> usize {
        self.group.rank()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.beta.column(j)
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        self.beta.matrix().columns()
    }

    /// `N' = im β`.
    pub fn image_subgroup(&self) -> Subgroup {
        self.beta.image()
    }

    /// `N_σ`, generated by `β(e_i)` for `i ∈ σ`.
    pub fn n_sigma(&self, cone: &Cone) -> Subgroup {
        let gens = cone.rays().iter().map(|&i| self.column(i)).collect();
        Subgroup::new(self.group.clone(), gens).expect("columns live in N")
    }

    /// `coker β` with the projection `N → coker β`.
    pub fn cokernel(&self) -> Quotient {
        self.beta.cokernel()
    }

    pub fn fundamental_group(&self) -> FgAbGroup {
        self.cokernel().group
    }

    pub fn dual_group(&self) -> DualGroupData {
        let n = self.ray_count();
        let resolution = self.group.relation_matrix();
        let lift = self.beta.matrix().clone();
        let stacked = lift.hcat(&resolution);
        let presented = from_presentation(stacked.cols(), &stacked.transpose());
        let dual_columns: Vec<Vec<BigInt>> = (0..n).map(|j| presented.projection.column(j)).collect();
        let dual_map = GroupHom::from_columns(FgAbGroup::free(n), presented.group.clone(), &dual_columns)
            .expect("restriction of a projection is well defined");
        DualGroupData {
            torsion_rank: self.group.torsion_rank(),
            lift,
            resolution,
            group: presented.group,
            dual_map,
            expected_rank: n - self.dim(),
        }
    }

    pub fn isotropy(&self, cone: &Cone) -> FgAbGroup {
        torsion_subgroup(&quotient_by(&self.n_sigma(cone)).group).group
    }

    pub fn inertia(&self, cone: &Cone) -> InertiaRecord {
        let local = quotient_by(&self.n_sigma(cone));
        let torsion = torsion_subgroup(&local.group);
        let coker = self.cokernel();
        // N/N_σ → N/im β through lifts to N
        let induced = GroupHom::new(
            local.group.clone(),
            coker.group.clone(),
            coker.projection.matrix() * &local.section,
        )
        .expect("N_σ ⊆ im β, so the induced map is well defined");
        let omega = induced.compose(&torsion.inclusion).expect("composable by construction");
        let kernel_order = omega
            .kernel()
            .order()
            .finite()
            .cloned()
            .expect("isotropy groups are finite");
        InertiaRecord {
            cone: cone.clone(),
            isotropy: torsion.group,
            injective: kernel_order == BigInt::from(1),
            kernel_order,
            omega,
        }
    }

    /// Inertia records over the whole face closure, empty cone first.
    pub fn inertia_records(&self) -> Vec<InertiaRecord> {
        self.fan.face_closure().iter().map(|c| self.inertia(c)).collect()
    }

    pub fn is_smooth(&self) -> SmoothnessCheck {
        let whole = Subgroup::whole(&self.group);
        let witness = self
            .fan
            .max_cones()
            .iter()
            .find(|c| !self.n_sigma(c).contains_subgroup(&whole))
            .cloned();
        SmoothnessCheck {
            smooth: witness.is_none(),
            witness,
        }
    }

    pub fn is_global_quotient(&self) -> GlobalQuotientCheck {
        for cone in self.fan.max_cones() {
            let local = self.n_sigma(cone);
            if let Some(j) = (0..self.ray_count()).find(|&j| !local.contains(&self.column(j))) {
                return GlobalQuotientCheck {
                    global_quotient: false,
                    witness: Some((cone.clone(), j)),
                };
            }
        }
        GlobalQuotientCheck {
            global_quotient: true,
            witness: None,
        }
    }

    /// `(N', Σ', β')` with `N' = im β ≅ Z^n / ker β`.
    ///
    /// Coordinates on `N'` are fixed by the Smith form of the Hermite basis of
    /// `ker β`, followed by a row-Hermite normalization of the free block, so
    /// the result depends only on the lattice `ker β`; in particular the
    /// cover of the cover is the cover.
    pub fn universal_cover(&self) -> StackyFan {
        let n = self.ray_count();
        let lifted = self.beta.matrix().hcat(&self.group.relation_matrix());
        let kernel = integer_kernel(&lifted).select_rows(&(0..n).collect::<Vec<_>>());
        let presented = from_presentation(n, &lattice_basis(&kernel));
        let group = presented.group;
        let d = group.rank();
        let matrix = presented.projection.matrix();
        let free = matrix.select_rows(&(0..d).collect::<Vec<_>>());
        let (h, _) = hermite_normal_form(&free.transpose());
        let mut rows = h.transpose().to_rows();
        rows.extend(matrix.select_rows(&(d..group.dim()).collect::<Vec<_>>()).to_rows());
        let columns = IntMatrix::from_rows_sized(rows, n).columns();
        StackyFan::new(group, columns, self.fan.max_cones().to_vec()).expect("the cover of a stacky fan is a stacky fan")
    }

    pub fn analysis_report(&self) -> AnalysisReport {
        let fundamental_group = self.fundamental_group();
        let dual_group = self.dual_group();
        let tor_duality = dual_group.torsion_matches(&fundamental_group) && dual_group.rank_matches();
        let cones = self.inertia_records();
        let global_stabilizer = cones
            .iter()
            .find(|r| r.cone.is_empty())
            .map(|r| r.isotropy.clone())
            .unwrap_or_else(FgAbGroup::trivial);
        AnalysisReport {
            tor_duality,
            global_stabilizer,
            cones,
            smoothness: self.is_smooth(),
            global_quotient: self.is_global_quotient(),
            minimal_nonfaces: self.fan.minimal_nonfaces(),
            complete: self.fan.is_complete(),
            cover: self.universal_cover(),
            fundamental_group,
            dual_group,
        }
    }
}

impl fmt::Display for StackyFan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N = {}, beta = {}, cones = [", self.group, self.beta.matrix())?;
        for (k, c) in self.fan.max_cones().iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}
