use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DualError {
    #[error("degenerate exponent a={a}")]
    DegenerateExponent { a: f64 },
    #[error("inversion sign flip needs an odd integer exponent, got a={a}")]
    NonIntegerInversion { a: f64 },
    #[error("conic kind mismatch: {0}")]
    WrongConicKind(String),
    #[error("no bounded motion: {0}")]
    NoBoundMotion(String),
    #[error("quadrature did not converge: {0}")]
    QuadratureFailure(String),
    #[error("adaptive quadrature exceeded its subdivision limit (estimate {estimate}, error {error})")]
    MaxDepthExceeded { estimate: f64, error: f64 },
    #[error("root not bracketed: {0}")]
    RootNotBracketed(String),
    #[error("unsupported sign pattern: {0}")]
    UnsupportedSignPattern(String),
    #[error("energy function inversion failed: {0}")]
    InversionFailure(String),
    #[error("no shared energy function registered for exponent pair ({a}, {b})")]
    MissingF { a: f64, b: f64 },
    #[error("beta function pole at ({p}, {q})")]
    PoleInBeta { p: f64, q: f64 },
    #[error("connection formula degenerate at 2L={two_l}")]
    ConnectionDegenerate { two_l: f64 },
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("duality map incompatible: {0}")]
    MapIncompatible(String),
    #[error("energy {energy} lies on the bound-state spectrum")]
    OnSpectrum { energy: f64 },
    #[error("no such bound state: {0}")]
    NoSuchBoundState(String),
    #[error("no eigenvalue in bracket: {0}")]
    NoEigenvalueInBracket(String),
    #[error("grid too coarse: energies {coarse} and {fine} differ")]
    GridTooCoarse { coarse: f64, fine: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, DualError>;
