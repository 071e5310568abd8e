use thiserror::Error;

/// Errors produced while building, evaluating or checking germs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` is not finite: {value}")]
    NonFinite { name: &'static str, value: f64 },

    /// `p(K0) <= 0`: the triple lies outside the generic moduli domain.
    #[error("p(K0) = {p_k0} is not positive, (C, C', K0) is outside the generic domain")]
    NotInDomain { p_k0: f64 },

    #[error("K0 = {k0} is not a root of p (residual {residual})")]
    NotARoot { k0: f64, residual: f64 },

    #[error("K0 = {k0} is a multiple root of p (p'(K0) = {p_prime})")]
    DegenerateRoot { k0: f64, p_prime: f64 },

    #[error("fifth invariant must be positive, got {0}")]
    NonPositiveLambda(f64),

    #[error("t = {t} lies outside the curvature interval ({lower}, {upper})")]
    OutOfInterval { t: f64, lower: f64, upper: f64 },

    #[error("|z| = {modulus} is not inside the guaranteed disk of radius {radius}")]
    OutOfDomain { modulus: f64, radius: f64 },

    #[error("density is not positive ({value}) at z = {re} + {im}i")]
    NonPositiveDensity { value: f64, re: f64, im: f64 },

    #[error("grid radius {grid_radius} (plus stencil reach) exceeds the domain radius {domain_radius}")]
    GridExceedsDomain { grid_radius: f64, domain_radius: f64 },

    #[error("t = C - K0^2 must be nonzero")]
    ZeroT,

    #[error("Einstein germs are not part of the extremal non-Einstein moduli space")]
    EinsteinNotInModuli,

    #[error("operation requires a {expected} germ")]
    WrongKind { expected: &'static str },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("adaptive quadrature did not reach tolerance on [{a}, {b}]")]
    QuadratureFailed { a: f64, b: f64 },

    #[error("root finding failed: {0}")]
    RootFinding(String),
}

impl Error {
    /// Stable snake_case identifier used in machine-readable error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonFinite { .. } => "non_finite",
            Error::NotInDomain { .. } => "not_in_domain",
            Error::NotARoot { .. } => "not_a_root",
            Error::DegenerateRoot { .. } => "degenerate_root",
            Error::NonPositiveLambda(_) => "non_positive_lambda",
            Error::OutOfInterval { .. } => "out_of_interval",
            Error::OutOfDomain { .. } => "out_of_domain",
            Error::NonPositiveDensity { .. } => "non_positive_density",
            Error::GridExceedsDomain { .. } => "grid_exceeds_domain",
            Error::ZeroT => "zero_t",
            Error::EinsteinNotInModuli => "einstein_not_in_moduli",
            Error::WrongKind { .. } => "wrong_kind",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::QuadratureFailed { .. } => "quadrature_failed",
            Error::RootFinding(_) => "root_finding_failed",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}
