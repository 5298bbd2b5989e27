//! Exact arithmetic for positive-definite integral quadratic lattices.
//!
//! The crate decides representations of integers and lattices by lattices,
//! local (p-adic) representability, genus equality and the rank-3 "buried
//! pair" question for binary lattices. Everything is exact: Gram matrices are
//! `i128`, rational steps go through `num-rational`.

pub mod buried;
pub mod enumerate;
pub mod error;
pub mod exec;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod local;
pub mod named;
pub mod paperlab;
pub mod represent;

pub use error::{Error, Result};
pub use exec::Execution;
pub use lattice::{orthogonal_sum, Definiteness, Lattice};
pub use linalg::Mat;
pub use named::NamedLattice;
