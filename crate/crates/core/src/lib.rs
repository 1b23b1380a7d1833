//! Exact combinatorics of G-Hilb for finite abelian subgroups of SL(3).
//!
//! The pipeline runs group -> fan -> Reid's recipe -> quiver vanishing data ->
//! sink-source graphs -> transform supports, and every stage checks its own
//! invariants as it goes.

pub mod analysis;
pub mod corpus;
pub mod error;
pub mod fan;
pub mod ggraph;
pub mod group;
pub mod lattice;
pub mod normal_form;
pub mod quiver;
pub mod recipe;
pub mod sinksource;
pub mod transform;


pub use analysis::Analysis;
pub use error::{Error, Result};
pub use fan::GHilbFan;

pub use group::{Character, DiagonalGroup, Generator, Monomial};
pub use lattice::WeightVector;

/// Exact rational numbers used in public results.
pub type Rational = num_rational::Ratio<i64>;
