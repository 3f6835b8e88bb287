//! Finite algebras of partial functions and their representations.
//!
//! An abstract finite algebra is a carrier of named elements together with
//! operation tables for symbols such as composition, meet, domain, and range.
//! A representation realises each element as a partial function on a common
//! base set so that every table operation becomes the corresponding
//! set-theoretic one. This crate provides:
//!
//! - [`algebra`]: signatures, operation tables, the induced order, and
//!   structural screening checks
//! - [`pfun`]: partial functions on a finite base, the operations themselves,
//!   closure of generator sets, and abstraction back to tables
//! - [`network`]: edge-labelled graphs, the representation checker, and
//!   labelled-graph isomorphism search
//! - [`construction`]: realisability profiles and the finite-base
//!   construction with its size bound
//! - [`decide`]: bounded exhaustive representability search and an example
//!   gallery of algebras with known status
//! - [`files`]: JSON formats for algebras, representations, networks,
//!   profiles, traces, and decisions
//! - [`dot`]: DOT export for networks

pub mod algebra;
pub mod construction;
pub mod decide;
pub mod dot;
pub mod files;
pub mod network;
pub mod pfun;

pub use algebra::{FiniteAlgebra, OpSymbol, Signature};
pub use network::Network;
pub use pfun::{ConcreteAlgebra, PartialFunction, Representation};

use thiserror::Error;

/// Errors reported by library operations.
#[derive(Debug, Error)]
pub enum Error {
    /// Input data failed structural validation (bad index, shape, or name).
    #[error("malformed input: {0}")]
    MalformedInput(String),
    /// A configured resource limit was exceeded.
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// A function set was expected to be operation-closed but is not.
    #[error("not closed under the signature: {0}")]
    ClosureViolation(String),
    /// A claimed representation failed the checker.
    #[error("not a representation: {0}")]
    NotARepresentation(String),
    /// Operation tables contradict each other or a required law.
    #[error("inconsistent algebra: {0}")]
    Inconsistent(String),
    /// The finite-base construction could not complete.
    #[error("construction failure: {0}")]
    ConstructionFailure(String),
    /// No algebraic characterization is available for this signature.
    #[error("unsupported signature: {0}")]
    UnsupportedSignature(String),
    /// A realisability profile violates its required properties.
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
