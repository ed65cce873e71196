//! Exact upper and lower bounds for generalized hypergraph Turán problems,
//! plus exhaustive verification of the density relations behind them.
//!
//! All densities, matrix entries and bounds are exact rationals.

pub mod bounds;
pub mod certificate;
pub mod combinatorics;
pub mod error;
pub mod flag;
pub mod hypergraph;
pub mod parallel;
pub mod relations;
pub mod tridiagonal;

pub use combinatorics::{EpsilonMode, Rational};
pub use error::{Error, Result};
pub use hypergraph::{CanonicalCode, Catalog, ClassFilter, Hypergraph};
pub use parallel::Exec;
