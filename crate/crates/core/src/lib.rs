//! Exact lattice computations for toric Deligne-Mumford stacks.
//!
//! The crate is layered bottom-up:
//!
//! * [`linalg`]: integer and rational matrices, Smith and Hermite normal
//!   forms, integer kernels and integer linear solving.
//! * [`group`]: finitely generated abelian groups in invariant-factor form,
//!   homomorphisms, subgroups, quotients and torsion.
//! * [`fan`]: simplicial fan combinatorics (face closure, validity, minimal
//!   non-faces).
//! * [`stacky`]: stacky fans and everything derived from them: fundamental
//!   group, dual group, isotropy and inertia, smoothness and global-quotient
//!   decisions, universal cover.
//! * [`polytope`]: stacky polytopes, vertex enumeration, normal fans, exact
//!   volumes and the cover polytope.

pub mod fan;
pub mod group;
pub mod linalg;
pub mod polytope;
pub mod stacky;

pub use fan::{Cone, Fan, FanViolation};
pub use group::{FgAbGroup, GroupError, GroupHom, Order, Quotient, Subgroup};
pub use linalg::{IntMatrix, RatMatrix, Rational};
pub use polytope::{CoverPolytope, LabelledPolytope, Polytope, PolytopeError, StackyPolytope};
pub use stacky::{AnalysisReport, DualGroupData, InertiaRecord, StackyError, StackyFan, Violation};
