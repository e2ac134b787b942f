//! Characteristic-2 Weierstrass curves over GF(2^k) and GF(2^k)(t).

pub mod builtins;
mod curve;
mod fibers;

use thiserror::Error;

use crate::algebra::{AlgebraError, ParseError};

pub use curve::{CurveFile, CurvePoint, FieldSpec, Invariants, WeierstrassCurve};
pub use fibers::{half_fiber_j, shioda_tate_check, Ambient, FiberReport, ShiodaTateReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeierstrassError {
    #[error("singular model: discriminant is zero")]
    SingularModel,
    #[error("point {0} is not on the curve")]
    PointNotOnCurve(String),
    #[error("model is not minimal at {0}")]
    NonMinimalModel(String),
    #[error("inconsistent data: {0}")]
    InconsistentData(String),
    #[error("curve has no base parameter")]
    NoBase,
    #[error("unknown built-in curve `{0}`")]
    UnknownBuiltin(String),
    #[error("malformed curve file: {0}")]
    Format(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl From<ParseError> for WeierstrassError {
    fn from(e: ParseError) -> Self {
        WeierstrassError::Algebra(AlgebraError::Parse(e))
    }
}
