//! Exact-arithmetic toolkit for the degree/diameter problem on mixed Abelian
//! Cayley graphs.
//!
//! A mixed graph has both undirected edges and directed arcs. For Cayley
//! graphs of finite Abelian groups the classical Moore bound tightens to a
//! binomial expression in the generator signature `(r1, r2, z)`: the number
//! of involutions, of inverse-closed generator pairs, and of purely directed
//! generators. This crate computes those bounds exactly, constructs the known
//! dense families from integer-lattice congruences, verifies diameters by
//! breadth-first search over the implicit graph, and reproduces the known
//! optimality and non-existence results by pruned exhaustive search.
//!
//! Modules:
//!
//! - [`lattice`] — integer matrices, Smith/Hermite normal forms, congruence
//!   modulo a matrix, canonical coordinates for `Z^n / Z^n M`.
//! - [`group`] — finite Abelian groups as invariant-factor products.
//! - [`mixedgraph`] — Cayley mixed graphs, BFS distance profiles, diameters.
//! - [`bounds`] — every Moore-like bound, in all equivalent forms, with an
//!   integer recurrence as oracle.
//! - [`families`] — the explicit dense families plus expansion/contraction
//!   combinators.
//! - [`tiles`] — L-shaped tiles for 2-generator circulant digraphs.
//! - [`search`] — exhaustive search over groups and generator sets.
//!
//! Everything that must be exact is exact: bounds use big-integer binomials,
//! lattice algebra uses arbitrary-precision integers, and no diameter is ever
//! trusted without a BFS pass.

#![forbid(unsafe_code)]

pub mod bounds;
pub mod error;
pub mod families;
pub mod group;
pub mod lattice;
pub mod mixedgraph;
pub mod search;
pub mod tiles;

pub use error::{Error, Result};
pub use group::{AbelianGroup, GroupElement};
pub use lattice::{CanonicalVector, HermiteBasis, IntMatrix, SmithDecomposition};
pub use mixedgraph::{CayleyMixedGraph, DistanceProfile, GeneratorSet};
