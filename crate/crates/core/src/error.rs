use thiserror::Error;

/// Errors shared across the crate. Each variant corresponds to a documented
/// failure mode of one of the geometric or dynamical operations.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("zero vector cannot represent a projective point")]
    ZeroVector,
    #[error("point is not on the quadric (residual {residual:e})")]
    NotOnQuadric { residual: f64 },
    #[error("point is not on the z3 = 0 slice (|z3| = {z3:e}, residual {residual:e})")]
    NotOnQ2 { z3: f64, residual: f64 },
    #[error("point lies on the z3 = 0 slice, no matrix chart there")]
    OnQ2,
    #[error("matrix is not unimodular (|det - 1| = {defect:e})")]
    NotUnimodular { defect: f64 },
    #[error("span is not an isotropic pair (|b| = {b_abs:e})")]
    NotIsotropicPair { b_abs: f64 },
    #[error("degenerate span (second singular value {sv:e})")]
    DegenerateSpan { sv: f64 },
    #[error("explicit sequence too short ({len} elements, need at least {min})")]
    TooShort { len: usize, min: usize },
    #[error("outer Cartan frames do not converge (tail deviation {deviation:e})")]
    NotConvergentFrame { deviation: f64 },
    #[error("sequence class {found} does not support this operation")]
    WrongClass { found: &'static str },
    #[error("dynamical limit undefined on the repeller set")]
    UndefinedOnRepeller,
    #[error("no divergent words up to the requested length")]
    NoDivergentWords,
    #[error("group spec has no Schottky pairing data")]
    MissingSchottkyData,
    #[error("no loxodromic word found up to the requested length")]
    NoLoxodromic,
    #[error("reduction did not converge within {steps} steps")]
    NoConvergence { steps: usize },
    #[error("invalid group spec: {0}")]
    BadGroupSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
