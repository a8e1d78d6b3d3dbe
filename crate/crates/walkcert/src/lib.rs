//! Inequalities for walk counts in simple undirected graphs, proved by
//! nonnegative polynomials and checked with exact arithmetic.
//!
//! A walk of length `k` is a sequence of `k + 1` nodes in which consecutive
//! nodes are adjacent; `w_k` denotes the total number of such walks in a
//! graph. Classical results (Dress–Gutman, Lagarias et al., Täubig et al.)
//! bound products of walk counts by other products. This crate builds the
//! certificates behind such inequalities:
//!
//! * [`graph`] / [`walks`] — graph ingestion (graph6, edge lists, named
//!   families), exhaustive small-graph corpora, and exact big-integer walk
//!   counts.
//! * [`spectral`] — floating-point eigendecomposition diagnostics for the
//!   identity `w_k = Σ λ_j^k μ_j²` and its symmetrization generalization.
//! * [`poly`] / [`univariate`] — exact sparse polynomials over the
//!   rationals, symmetrization, Newton-polytope vertex analysis, and Sturm
//!   root machinery.
//! * [`certificate`] — constructions whose symmetrizations are provably
//!   nonnegative (squares, sandwich factorizations, AM-GM sums of squares,
//!   certified univariate minima, binary psd decisions) together with the
//!   Newton-polytope obstructions that rule such certificates out.
//! * [`inequality`] — the compiled walk inequalities themselves, exact
//!   evaluation on graphs, and counterexample searches over corpora and
//!   parametric graph families.
//!
//! Certification never relies on floating point: every certificate is
//! re-verified by exact rational expansion, and every search evaluates
//! inequalities with exact integers.

pub mod certificate;
pub mod graph;
pub mod inequality;
pub mod poly;
pub mod ratio;
pub mod spectral;
pub mod univariate;
pub mod walks;

pub use certificate::{Certificate, CertificateKind, Obstruction, SosDecomposition};
pub use graph::Graph;
pub use inequality::{SearchReport, WalkInequality};
pub use poly::Polynomial;
pub use spectral::SpectralData;
pub use univariate::UnivariatePolynomial;
pub use walks::WalkTable;

use thiserror::Error;

/// Errors for precondition violations and malformed input. Domain outcomes
/// (refutations, obstructions, negative witnesses) are ordinary values, not
/// errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph parse error: {0}")]
    GraphParse(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("enumeration of n={requested} exceeds the configured limit {limit}")]
    EnumerationLimit { requested: usize, limit: usize },
    #[error("graph6 supports at most 62 nodes, got {0}")]
    Graph6TooLarge(usize),
    #[error("symmetrization limited to {max} variables, got {k}")]
    TooManyVariables { k: usize, max: usize },
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("eigendecomposition failed: {0}")]
    Eigen(String),
    #[error("walk table covers lengths up to {available}, need {required}")]
    WalkTableTooShort { available: usize, required: usize },
    #[error("certificate verification failed: {0}")]
    Verification(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
