use thiserror::Error;

use crate::homotopy_cat::DerivedIndec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabError {
    #[error("not a type A quiver: {0}")]
    NotTypeA(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("Euler form gives negative Ext dimension for ({0}, {1})")]
    NegativeExt(usize, usize),
    #[error("Hom fingerprint does not decompose: {0}")]
    FingerprintMismatch(String),
    #[error("subrepresentation enumeration needs vertex dimensions <= 1")]
    DimensionTooLarge,
    #[error("object {0} leaves the window [-{1}, {1}]")]
    WindowOverflow(DerivedIndec, i32),
    #[error("object {0} is not in the extended coheart")]
    NotInExtendedCoheart(DerivedIndec),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error("Hom space of dimension {0} between indecomposables; expected at most 1")]
    HomTooLarge(usize),
}

pub type Result<T> = std::result::Result<T, LabError>;
