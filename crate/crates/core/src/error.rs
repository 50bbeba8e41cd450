use alloc::string::String;

use crate::poly::PhasePolynomial;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("polynomial depends on {0}, which the symplectic signature does not cover")]
    MismatchedVariables(&'static str),

    #[error("symplectic signature is malformed: {0}")]
    MalformedSignature(&'static str),

    #[error("bracket {{{left}, {right}}} leaves the span of the generators")]
    ClosureViolation {
        left: String,
        right: String,
        residual: PhasePolynomial,
    },

    #[error("generators are linearly dependent ({0} is in the span of the others)")]
    DependentGenerators(String),

    #[error("chart is singular: ||P|| + P0 vanishes")]
    SingularChart,

    #[error("collision state: Q - R' vanishes")]
    Collision,

    #[error("constraint I = 0 violated (I = {value})")]
    ConstraintViolated { value: f64 },

    #[error("energy sign does not match the requested regime: {0}")]
    EnergySign(&'static str),

    #[error("flow step {step} exceeds the configured bound {bound}")]
    FlowOverflow { step: f64, bound: f64 },

    #[error("unsupported input: {0}")]
    Unsupported(&'static str),

    #[error("basis kind does not match: {0}")]
    BasisMismatch(&'static str),

    #[error("internal consistency check failed for {what}: residual {residual:e}")]
    Inconsistent { what: String, residual: f64 },
}
