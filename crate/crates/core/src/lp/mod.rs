//! Exact linear and integer programming.

mod bnb;
mod simplex;

pub use bnb::{solve_integer, IlpResult, NODE_PIVOT_BUDGET};
pub use simplex::{solve, LinearProgram, LpResult, LpStatus};
