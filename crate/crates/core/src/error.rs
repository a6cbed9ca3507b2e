use alloc::string::String;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("denominator series has zero constant term")]
    ZeroConstantTerm,
    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstantTerm,
    #[error("series is not reversible (needs s(0) = 0 and s'(0) != 0)")]
    NotReversible,
    #[error("rational function has a pole at the origin")]
    PoleAtOrigin,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("Gamma requires a positive argument")]
    NonPositiveArgument,
    #[error("Gamma pole at a nonpositive integer in {0}")]
    GammaPole(String),
    #[error("principal power of zero")]
    ZeroBase,
    #[error("rational reconstruction is ambiguous within the error ball")]
    Ambiguous,
    #[error("no rational with bounded denominator lies within the error ball")]
    NoneFound,
    #[error("value has a non-negligible imaginary part")]
    NotReal,
    #[error("argument outside the domain: {0}")]
    OutOfDomain(String),
    #[error("series or iteration failed to converge: {0}")]
    NoConvergence(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("input is a pole of the rational expression")]
    PoleInput,
    #[error("tau must lie in the upper half-plane")]
    NotUpperHalfPlane,
    #[error("contour radius too large for reliable sampling")]
    ContourTooLarge,
    #[error("arg(t) lies within 1e-6 of a sector boundary")]
    SectorBoundary,
}

pub type Result<T> = core::result::Result<T, Error>;
