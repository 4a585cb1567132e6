//! Exact classification of the counting problem for matrix partitions of
//! graphs, for symmetric `{0,1,*}` matrices.
//!
//! The crate is organised bottom-up:
//!
//! - [`matrix`]: symmetric `{0,1,*}` matrices, part-sets and canonical keys.
//! - [`relation`]: star relations, composition and rectangularity.
//! - [`derect`]: derectangularising sequences, both a sufficient tractability
//!   test over doubleton families and an exact breadth-first decider.
//! - [`oracle`]: the known classification of matrices up to 3×3 and of pure
//!   matrices.
//! - [`interpolation`]: gadget counts, access profiles and the exact
//!   interpolation system used to certify hardness.
//! - [`graph`] and [`verify`]: graphs, gadget constructions, brute-force
//!   counting and checks of every identity the classifier relies on.
//! - [`census`]: enumeration of canonical matrices, the classifier pipeline,
//!   the registry of hand-resolved matrices and reports.

#![allow(clippy::needless_range_loop)]

pub mod census;
pub mod derect;
pub mod error;
pub mod exceptions;
pub mod graph;
pub mod interpolation;
pub mod matrix;
pub mod oracle;
pub mod par;
pub mod relation;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::{CanonicalKey, PartSet, PartitionMatrix, Symbol};

/// Exact non-negative integer used for every count.
pub type Count = num_bigint::BigUint;
