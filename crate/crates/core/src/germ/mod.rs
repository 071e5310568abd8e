//! Germ descriptors for the three families and their evaluators.
//!
//! A germ is described in its normalized coordinate `z` near `0`:
//!
//! * **Einstein**: constant curvature `K0`, metric `4|dz|² / (1 + K0|z|²)²`.
//! * **Generic**: `∂K = p(K) dz`, metric `4 p(K) |dz|²`, with `p(K0) > 0`.
//! * **Exceptional**: `∂K = σ p(K) dz / z`, metric `4σ² p(K) |dz|² / |z|²`,
//!   where `K0` is a simple root of `p`, `σ = 1 / p'(K0)` and the fifth
//!   invariant `λ > 0` fixes the remaining freedom.
//!
//! Specs are validated on construction and immutable afterwards; σ is always
//! derived from `(C, C', K0)` and never accepted as input.

mod evaluator;

pub use evaluator::{EvalOptions, GermEvaluator, PointValue};

use serde::{Deserialize, Serialize};

use crate::cubic::CubicParams;
use crate::error::{ensure_finite, Error, Result};

/// Generic germs need `p(K0)` strictly above this floor.
pub const GENERIC_P_FLOOR: f64 = 1e-12;
/// Relative residual allowed for `K0` to count as a root of `p`.
pub const ROOT_REL_TOL: f64 = 1e-9;
/// Smallest admissible `|p'(K0)|` for an exceptional germ.
pub const DEGENERATE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Einstein {
    k0: f64,
}

impl Einstein {
    pub fn k0(&self) -> f64 {
        self.k0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Generic {
    cubic: CubicParams,
    k0: f64,
}

impl Generic {
    pub fn cubic(&self) -> CubicParams {
        self.cubic
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    /// `p(K0)`, strictly positive.
    pub fn p_k0(&self) -> f64 {
        self.cubic.eval(self.k0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exceptional {
    cubic: CubicParams,
    k0: f64,
    lambda: f64,
    sigma: f64,
}

impl Exceptional {
    pub fn cubic(&self) -> CubicParams {
        self.cubic
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    /// The fifth invariant.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `1 / p'(K0)`.
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `+1` when the curvature has a local minimum at `0`, `-1` for a maximum.
    pub fn sigma_sign(&self) -> f64 {
        self.sigma.signum()
    }
}

/// A validated germ descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub enum GermSpec {
    Einstein(Einstein),
    Generic(Generic),
    Exceptional(Exceptional),
}

impl GermSpec {
    pub fn k0(&self) -> f64 {
        match self {
            GermSpec::Einstein(e) => e.k0,
            GermSpec::Generic(g) => g.k0,
            GermSpec::Exceptional(x) => x.k0,
        }
    }

    pub fn cubic(&self) -> Option<CubicParams> {
        match self {
            GermSpec::Einstein(_) => None,
            GermSpec::Generic(g) => Some(g.cubic),
            GermSpec::Exceptional(x) => Some(x.cubic),
        }
    }

    pub fn sigma(&self) -> Option<f64> {
        match self {
            GermSpec::Exceptional(x) => Some(x.sigma),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GermSpec::Einstein(_) => "einstein",
            GermSpec::Generic(_) => "generic",
            GermSpec::Exceptional(_) => "exceptional",
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("germ spec serializes")
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Like [`GermSpec::from_json`], but keeps malformed input apart from
    /// well-formed descriptors that fail validation.
    pub fn parse(s: &str) -> std::result::Result<Self, SpecInputError> {
        let repr: SpecRepr = serde_json::from_str(s).map_err(SpecInputError::Malformed)?;
        GermSpec::try_from(repr).map_err(SpecInputError::Invalid)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SpecInputError {
    #[error("malformed germ descriptor: {0}")]
    Malformed(serde_json::Error),
    #[error(transparent)]
    Invalid(Error),
}

/// Einstein (constant curvature) germ.
pub fn make_einstein(k0: f64) -> Result<GermSpec> {
    Ok(GermSpec::Einstein(Einstein {
        k0: ensure_finite("K0", k0)?,
    }))
}

/// Generic germ; requires `p(K0) > 0`.
pub fn make_generic(cubic: CubicParams, k0: f64) -> Result<GermSpec> {
    let k0 = ensure_finite("K0", k0)?;
    let p_k0 = cubic.eval(k0);
    if !(p_k0 > GENERIC_P_FLOOR) {
        return Err(Error::NotInDomain { p_k0 });
    }
    Ok(GermSpec::Generic(Generic { cubic, k0 }))
}

/// Exceptional germ; `K0` must be a simple root of `p` and `λ > 0`.
pub fn make_exceptional(cubic: CubicParams, k0: f64, lambda: f64) -> Result<GermSpec> {
    let k0 = ensure_finite("K0", k0)?;
    let lambda = ensure_finite("lambda", lambda)?;
    let residual = cubic.eval(k0);
    if residual.abs() > ROOT_REL_TOL * (1.0 + k0.abs().powi(3)) {
        return Err(Error::NotARoot { k0, residual });
    }
    let p_prime = cubic.derivative(k0);
    if p_prime.abs() < DEGENERATE_TOL {
        return Err(Error::DegenerateRoot { k0, p_prime });
    }
    if !(lambda > 0.0) {
        return Err(Error::NonPositiveLambda(lambda));
    }
    Ok(GermSpec::Exceptional(Exceptional {
        cubic,
        k0,
        lambda,
        sigma: 1.0 / p_prime,
    }))
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum SpecRepr {
    Einstein {
        #[serde(rename = "K0")]
        k0: f64,
    },
    Generic {
        #[serde(rename = "C")]
        c: f64,
        #[serde(rename = "Cprime")]
        c_prime: f64,
        #[serde(rename = "K0")]
        k0: f64,
    },
    Exceptional {
        #[serde(rename = "C")]
        c: f64,
        #[serde(rename = "Cprime")]
        c_prime: f64,
        #[serde(rename = "K0")]
        k0: f64,
        lambda: f64,
    },
}

impl TryFrom<SpecRepr> for GermSpec {
    type Error = Error;

    fn try_from(repr: SpecRepr) -> Result<Self> {
        match repr {
            SpecRepr::Einstein { k0 } => make_einstein(k0),
            SpecRepr::Generic { c, c_prime, k0 } => make_generic(CubicParams::new(c, c_prime)?, k0),
            SpecRepr::Exceptional {
                c,
                c_prime,
                k0,
                lambda,
            } => make_exceptional(CubicParams::new(c, c_prime)?, k0, lambda),
        }
    }
}

impl From<GermSpec> for SpecRepr {
    fn from(spec: GermSpec) -> Self {
        match spec {
            GermSpec::Einstein(e) => SpecRepr::Einstein { k0: e.k0 },
            GermSpec::Generic(g) => SpecRepr::Generic {
                c: g.cubic.c(),
                c_prime: g.cubic.c_prime(),
                k0: g.k0,
            },
            GermSpec::Exceptional(x) => SpecRepr::Exceptional {
                c: x.cubic.c(),
                c_prime: x.cubic.c_prime(),
                k0: x.k0,
                lambda: x.lambda,
            },
        }
    }
}
