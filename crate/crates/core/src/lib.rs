//! Bohr radii for Ma-Minda starlike and convex classes and for functions
//! starlike with respect to a boundary point.
//!
//! The crate is organised bottom-up:
//!
//! - [`series`]: truncated real power series (products, `exp`, `log`, evaluation);
//! - [`phi`]: the catalog of Ma-Minda kernels `φ`;
//! - [`extremal`]: the extremal functions `h` and `k` and their boundary values;
//! - [`solver`]: Bohr radii and parameter thresholds;
//! - [`verifier`]: sampling oracles that check the growth, subordination and
//!   Bohr inequalities on random members of each class;
//! - [`cli`]: the `bohr` command-line front end.

// `!(x < y)` is used on purpose so that NaN fails range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod extremal;
pub mod phi;
pub mod quadrature;
pub mod series;
pub mod solver;
pub mod verifier;

pub use error::{BohrError, Result};
pub use extremal::{build_extremal, ExtremalPair};
pub use phi::{Kernel, PhiSpec};
pub use series::TruncatedSeries;
pub use solver::{BohrResult, ClassKind};
