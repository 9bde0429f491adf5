use thiserror::Error;

use crate::domain::Space;
use crate::psl2::ElementClass;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("determinant {det} differs from 1 by more than {tol}")]
    Determinant { det: f64, tol: f64 },
    #[error("point is not in the upper half-plane (y = {0})")]
    NotInUpperHalfPlane(f64),
    #[error("tangent vector has hyperbolic norm {0}, expected 1")]
    NotUnitTangent(f64),
    #[error("geodesic endpoints coincide")]
    DegenerateGeodesic,
    #[error("{0:?} element has no hyperbolic/parabolic standard form")]
    NoStandardForm(ElementClass),
    #[error("domain lives in {found:?}, expected {expected:?}")]
    WrongSpace { expected: Space, found: Space },
    #[error("Dirichlet center is fixed by a listed non-identity element")]
    FixedCenter,
    #[error("reduction did not terminate within {0} steps")]
    StepLimitExceeded(usize),
    #[error("only {found} of {wanted} interior samples after {attempts} attempts")]
    SamplingExhausted {
        found: usize,
        wanted: usize,
        attempts: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
