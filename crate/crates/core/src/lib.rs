//! Distance spectral radius and k-criticality with respect to `[1,b]`-odd
//! factors.
//!
//! The crate builds the join/union families `K_s ∨ (K_{n_1} ∪ … ∪ K_{n_t})`,
//! computes exact distance matrices and their Perron roots, evaluates the
//! closed-form quotient polynomials of the two three-block families, and
//! decides odd-factor existence and k-criticality by subset enumeration.
//! [`lab`] ties these together into reproducible numerical checks.

pub mod enumerate;
pub mod error;
pub mod exec;
pub mod factors;
pub mod graph;
pub mod lab;
pub mod linalg;
pub mod params;
pub mod quotient;
pub mod spectrum;

pub use error::{Error, ParseErrorKind, Result};
pub use exec::Execution;
pub use graph::{FamilySpec, Graph, VertexSet};
pub use params::OddFactorParams;
