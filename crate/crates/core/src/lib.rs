//! Simplicial complexes, edge contraction gated by p-link conditions,
//! integer (relative) homology, total unimodularity of boundary matrices
//! and exact optimal homologous chains.
//!
//! The numeric code is generic over the scalar type (see [`scalar`]); the
//! aliases below fix the instantiations used by the rest of the crate and
//! the CLI.

pub mod chain;
pub mod complex;
pub mod contraction;
pub mod error;
pub mod fixtures;
pub mod homology;
pub mod io;
pub mod lp;
pub mod matrix;
pub mod ohcp;
pub mod pipeline;
pub mod scalar;
pub mod snf;
pub mod tu;

pub use chain::Chain;
pub use complex::{OrientedSimplex, Simplex, SimplicialComplex, VertexId};
pub use contraction::{
    contract_edge, contract_edge_with, EdgeContraction, SimplexClass, WeightMerge,
};
pub use error::{DomainExclusion, Error, Result};
pub use homology::{HomologyGroup, SubcomplexPair};
pub use matrix::{boundary_matrix, IntegerMatrix, Matrix};
pub use snf::SnfResult;

/// Arbitrary-precision integers.
pub type Integer = num_bigint::BigInt;
/// Exact rationals over [`Integer`].
pub type Rational = num_rational::BigRational;
/// Integer chains.
pub type IntChain = Chain<Integer>;
/// Rational chains, as produced by the LP solver.
pub type RatChain = Chain<Rational>;
/// Smith normal form over [`Integer`].
pub type IntegerSnf = SnfResult<Integer>;
