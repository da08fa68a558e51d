//! Exact integer-matrix algebra: Smith and Hermite normal forms, lattice
//! membership, congruence modulo a matrix, and canonical coordinates for the
//! quotient group `Z^n / Z^n M`.
//!
//! For a non-singular `n x n` integer matrix `M`, two vectors are congruent
//! modulo `M` when their difference is an integer combination of the rows of
//! `M`. The Smith normal form `U M V = S = diag(s_1, ..., s_n)` turns that
//! relation into independent scalar congruences `u V_i = v V_i (mod s_i)`,
//! and dropping the columns with `s_i = 1` yields canonical coordinates in
//! `Z_{s_{n-r+1}} x ... x Z_{s_n}`.
//!
//! All arithmetic is arbitrary-precision; nothing in this module touches
//! floating point.

mod hnf;
mod matrix;
mod snf;

pub use hnf::{hermite_basis, HermiteBasis};
pub use matrix::IntMatrix;
pub use snf::{
    canonicalize, congruent, group_facts, smith_normal_form, CanonicalVector, GroupFacts,
    SmithDecomposition,
};
