//! Unit-memory MDS convolutional codes over small finite fields.
//!
//! The crate builds convolutional codes whose parity-check matrix is
//! `G(D) = H0 + H1 D`, where the rows of `H0` and `H1` come from the parity
//! check of an MDS block code (Reed-Solomon, generalized Reed-Solomon, or
//! length `q + 1` (consta)cyclic codes over `F_q`), and verifies their
//! distance properties exactly: column distances, free distance, and the
//! MDS, strongly-MDS and MDP verdicts.

pub mod blockcode;
pub mod cli;
pub mod constructions;
pub mod convcode;
pub mod error;
pub mod fixtures;
pub mod galois;
pub mod linalg;
pub mod poly;

pub use error::{Error, Result};
pub use galois::{ExtField, Field, FiniteField};
pub use linalg::FMatrix;
