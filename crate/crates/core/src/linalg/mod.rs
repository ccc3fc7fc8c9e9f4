//! Exact integer and rational linear algebra.

mod matrix;
mod normal_form;
mod rational;

pub use matrix::{int_vec, IntMatrix};
pub use normal_form::{
    hermite_normal_form, integer_kernel, lattice_basis, rank, smith_normal_form, solve_integer,
    unimodular_inverse, SmithDecomposition,
};
pub use rational::{rat, rational_rank, to_rational_vec, RatMatrix, Rational};
