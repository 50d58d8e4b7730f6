//! Exact computations on even integral lattices.

pub mod linalg;
pub mod lattice;
pub mod cyclo;
pub mod disc;
pub mod printed;
pub mod catalog;
pub mod enumerate;
pub mod niemeier;
pub mod isometry;
pub mod fixed_locus;
pub mod classification;
pub mod verify;
pub mod cli;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degenerate lattice")]
    Degenerate,
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("even lattice required")]
    NotEven,
    #[error("zero vector")]
    ZeroVector,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("lattice is not definite")]
    Indefinite,
    #[error("form not well-defined")]
    FormNotWellDefined,
    #[error("not an isometry: {0}")]
    NotIsometry(String),
    #[error("bad glue code: {0}")]
    BadGlue(String),
    #[error("not Leech: root {0:?}")]
    NotLeech(Vec<i64>),
    #[error("derivation mismatch: {0}")]
    DerivationMismatch(String),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
