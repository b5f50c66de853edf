use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational {0:?}: expected a nonnegative \"num/den\" or integer")]
    InvalidRational(String),

    #[error("point {label:?} is not in space {space:?}")]
    UnknownPoint { space: String, label: String },

    #[error("duplicate point {label:?} in space {space:?}")]
    DuplicatePoint { space: String, label: String },

    #[error("space mismatch: expected {expected:?}, found {found:?}")]
    SpaceMismatch { expected: String, found: String },

    #[error("map mismatch: expected {expected:?}, found {found:?}")]
    MapMismatch { expected: String, found: String },

    #[error("map {map:?} is not total: no image for {label:?}")]
    IncompleteMap { map: String, label: String },

    #[error("measure on fiber {fiber:?} puts mass {mass} on {point:?}, which lies outside the fiber")]
    ConcentrationViolation {
        fiber: String,
        point: String,
        mass: Rational,
    },

    #[error("kernel on {map:?} needs {expected} fiber measures, got {found}")]
    FiberCount {
        map: String,
        expected: usize,
        found: usize,
    },

    #[error("compatibility violation at {point:?}: {equation}")]
    CompatibilityViolation { point: String, equation: String },

    #[error("not absolutely continuous: {point:?} has positive mass but the reference measure vanishes there")]
    NotAbsolutelyContinuous { point: String },

    #[error("map is not measure-class-preserving: supports differ at {point:?}")]
    NotClassPreserving { point: String },

    #[error("kernel {kernel:?} is not a disintegration: {detail}")]
    NotADisintegration { kernel: String, detail: String },

    #[error("invalid groupoid: {0}")]
    InvalidGroupoid(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
