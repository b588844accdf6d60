use thiserror::Error;

/// Errors raised by the classification and evolution routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The cubic coefficient vanishes, so the map is not of degree three.
    #[error("degenerate degree: the cubic coefficient a3 is zero")]
    DegenerateDegree,

    #[error("invalid coefficients: {0}")]
    InvalidCoefficients(String),

    /// A denominator of the moment parametrization fell below the floor.
    #[error("moment parametrization singular at tau = {tau} (denominator {denominator:e})")]
    SingularParametrization { tau: f64, denominator: f64 },

    /// An argument lies outside the domain on which the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    /// A root finder was handed an interval without a sign change.
    #[error("bracket failure on [{lo}, {hi}]: f(lo) = {f_lo:e}, f(hi) = {f_hi:e}")]
    Bracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    /// The point handed to the cusp fit is not a critical point on the unit circle.
    #[error("not a critical point on the unit circle: |zeta| = {modulus}, |f'(zeta)| = {derivative:e}")]
    NotCritical { modulus: f64, derivative: f64 },

    #[error("classification error: {0}")]
    Classification(String),

    /// A continued trajectory failed to lie strictly inside the locally univalent region.
    #[error("continued solution left the locally univalent region at t = {t} (ellipse margin {margin:e})")]
    NotReentered { t: f64, margin: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
