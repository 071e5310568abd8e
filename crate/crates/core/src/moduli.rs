//! Moduli-space charts and classification of non-Einstein germs.
//!
//! Generic germs are parametrized by the open set `{p(K0) > 0}` of
//! `(C, C', K0)`, which the chart `(C, ln p(K0), K0)` maps onto `ℝ³`.
//! Exceptional germs are parametrized by the surface `{p(K0) = 0, p'(K0) ≠ 0}`
//! times the fifth invariant `λ > 0`; the surface is charted by
//! `Ψ(C, C', K0) = (K0, C - K0²)`, and each sign of `t = C - K0² = 1/σ` gives
//! one component `≅ ℝ³` once `ln λ` is added as third coordinate.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cubic::{CubicParams, RootStructure};
use crate::error::{ensure_finite, Error, Result};
use crate::germ::{make_exceptional, make_generic, GermEvaluator, GermSpec};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModuliCoords {
    /// `(C, ln p(K0), K0)`.
    GenericChart { x1: f64, x2: f64, x3: f64 },
    /// `(K0, C - K0², ln λ)`.
    ExceptionalChart {
        #[serde(rename = "K0")]
        k0: f64,
        t: f64,
        log_lambda: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    GenericComponent,
    ExceptionalSigmaPositive,
    ExceptionalSigmaNegative,
}

impl Component {
    pub fn name(&self) -> &'static str {
        match self {
            Component::GenericComponent => "generic",
            Component::ExceptionalSigmaPositive => "exceptional_sigma_positive",
            Component::ExceptionalSigmaNegative => "exceptional_sigma_negative",
        }
    }
}

/// Whether a germ embeds into an HCMU metric, and how.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HcmuClass {
    GenericHcmu {
        #[serde(rename = "K1")]
        k1: f64,
        #[serde(rename = "K2")]
        k2: f64,
    },
    #[serde(rename = "exceptional_cone")]
    ExceptionalConeHcmu {
        #[serde(rename = "K1")]
        k1: f64,
        #[serde(rename = "K2")]
        k2: f64,
        sigma_sign: i8,
    },
    #[serde(rename = "exceptional_cusp")]
    ExceptionalCuspHcmu {
        #[serde(rename = "K1")]
        k1: f64,
    },
    NotHcmu { reason: String },
}

impl HcmuClass {
    pub fn is_hcmu(&self) -> bool {
        !matches!(self, HcmuClass::NotHcmu { .. })
    }

    fn not(reason: &str) -> Self {
        HcmuClass::NotHcmu {
            reason: reason.to_string(),
        }
    }
}

pub fn chart_generic(spec: &GermSpec) -> Result<ModuliCoords> {
    match spec {
        GermSpec::Generic(g) => Ok(ModuliCoords::GenericChart {
            x1: g.cubic().c(),
            x2: g.p_k0().ln(),
            x3: g.k0(),
        }),
        _ => Err(Error::WrongKind { expected: "generic" }),
    }
}

/// Pulls `(x1, x2, x3)` back to `(C, C', K0) = (x1, e^{x2} + x3³/3 - x1 x3, x3)`.
pub fn chart_generic_inv(x1: f64, x2: f64, x3: f64) -> Result<GermSpec> {
    let c = ensure_finite("x1", x1)?;
    let log_p = ensure_finite("x2", x2)?;
    let k0 = ensure_finite("x3", x3)?;
    let c_prime = log_p.exp() + k0 * k0 * k0 / 3.0 - c * k0;
    make_generic(CubicParams::new(c, c_prime)?, k0)
}

/// `Ψ(C, C', K0) = (K0, C - K0²)` together with `ln λ`.
pub fn psi(spec: &GermSpec) -> Result<ModuliCoords> {
    match spec {
        GermSpec::Exceptional(x) => Ok(ModuliCoords::ExceptionalChart {
            k0: x.k0(),
            t: x.cubic().c() - x.k0() * x.k0(),
            log_lambda: x.lambda().ln(),
        }),
        _ => Err(Error::WrongKind {
            expected: "exceptional",
        }),
    }
}

/// `Ψ⁻¹(K0, t) = (t + K0², -2K0³/3 - t K0, K0)`, with `λ` attached.
pub fn psi_inv(k0: f64, t: f64, lambda: f64) -> Result<GermSpec> {
    let k0 = ensure_finite("K0", k0)?;
    let t = ensure_finite("t", t)?;
    if t == 0.0 {
        return Err(Error::ZeroT);
    }
    let c = t + k0 * k0;
    let c_prime = -2.0 * k0 * k0 * k0 / 3.0 - t * k0;
    make_exceptional(CubicParams::new(c, c_prime)?, k0, lambda)
}

/// Inverse of the full exceptional chart `(K0, t, ln λ)`.
pub fn exceptional_chart_inv(k0: f64, t: f64, log_lambda: f64) -> Result<GermSpec> {
    psi_inv(k0, t, ensure_finite("log_lambda", log_lambda)?.exp())
}

/// Inverse of either chart.
pub fn chart_inv(coords: &ModuliCoords) -> Result<GermSpec> {
    match *coords {
        ModuliCoords::GenericChart { x1, x2, x3 } => chart_generic_inv(x1, x2, x3),
        ModuliCoords::ExceptionalChart { k0, t, log_lambda } => {
            exceptional_chart_inv(k0, t, log_lambda)
        }
    }
}

/// Chart of a non-Einstein spec.
pub fn chart(spec: &GermSpec) -> Result<ModuliCoords> {
    match spec {
        GermSpec::Einstein(_) => Err(Error::EinsteinNotInModuli),
        GermSpec::Generic(_) => chart_generic(spec),
        GermSpec::Exceptional(_) => psi(spec),
    }
}

pub fn component_of(spec: &GermSpec) -> Result<Component> {
    match spec {
        GermSpec::Einstein(_) => Err(Error::EinsteinNotInModuli),
        GermSpec::Generic(_) => Ok(Component::GenericComponent),
        GermSpec::Exceptional(x) if x.sigma() > 0.0 => Ok(Component::ExceptionalSigmaPositive),
        GermSpec::Exceptional(_) => Ok(Component::ExceptionalSigmaNegative),
    }
}

/// Recovers `λ = lim sgn(σ)(K(r) - K0)/r²` from samples at decreasing radii by
/// polynomial extrapolation in `r²` to `r = 0`.
pub fn fifth_invariant_estimate(eval: &GermEvaluator, radii: &[f64]) -> Result<f64> {
    let GermSpec::Exceptional(x) = eval.spec() else {
        return Err(Error::WrongKind {
            expected: "exceptional",
        });
    };
    if radii.len() < 3 {
        return Err(Error::InvalidArgument("need at least 3 radii".into()));
    }
    if radii.windows(2).any(|w| !(w[1] < w[0])) || !(radii[radii.len() - 1] > 0.0) {
        return Err(Error::InvalidArgument(
            "radii must be positive and strictly decreasing".into(),
        ));
    }
    // Allow for rounding in radii such as 0.1 r and 0.01 r.
    if radii[0] < 10.0 * radii[radii.len() - 1] * (1.0 - 1e-12) {
        return Err(Error::InvalidArgument("radii must span a decade".into()));
    }

    let sign = x.sigma_sign();
    let mut xs = Vec::with_capacity(radii.len());
    let mut table = Vec::with_capacity(radii.len());
    for &r in radii {
        let k = eval.curvature_at(Complex64::new(r, 0.0))?;
        xs.push(r * r);
        table.push(sign * (k - x.k0()) / (r * r));
    }
    // Neville's scheme evaluated at r² = 0.
    let n = xs.len();
    for level in 1..n {
        for i in 0..n - level {
            let (xi, xj) = (xs[i], xs[i + level]);
            table[i] = (xi * table[i + 1] - xj * table[i]) / (xi - xj);
        }
    }
    Ok(table[0])
}

/// Decides whether a germ arises from an HCMU metric.
///
/// With the roots of `p` real and sorted `r1 ≥ r2 ≥ r3` (they sum to zero):
///
/// * generic: HCMU iff `r1 > r2` and `K0 ∈ (r2, r1)`; then `K1 = r1`, `K2 = r2`;
/// * exceptional: `K0 = r1` with `r2 > r3` is a cone metric with `σ < 0`,
///   `K0 = r2` (three distinct roots) a cone metric with `σ > 0`, and
///   `K0 = r1` with `r2 = r3` a cusp metric; every other case is not HCMU.
pub fn hcmu_class(spec: &GermSpec) -> Result<HcmuClass> {
    match spec {
        GermSpec::Einstein(_) => Err(Error::EinsteinNotInModuli),
        GermSpec::Generic(g) => Ok(generic_hcmu(g.cubic().root_structure(), g.k0())),
        GermSpec::Exceptional(x) => Ok(exceptional_hcmu(x.cubic().root_structure(), x.k0())),
    }
}

fn generic_hcmu(roots: RootStructure, k0: f64) -> HcmuClass {
    let (k1, k2) = match roots {
        RootStructure::ThreeDistinctReal { roots } => (roots[0], roots[1]),
        RootStructure::DoubleAndSimple { double, simple } if simple > double => (simple, double),
        RootStructure::DoubleAndSimple { .. } => {
            return HcmuClass::not("largest root of p is a double root")
        }
        RootStructure::TripleZero => return HcmuClass::not("p has a triple root"),
        RootStructure::OneReal { .. } => return HcmuClass::not("p has non-real roots"),
    };
    if k0 > k2 && k0 < k1 {
        HcmuClass::GenericHcmu { k1, k2 }
    } else {
        HcmuClass::not("K0 lies below the two largest roots of p")
    }
}

fn exceptional_hcmu(roots: RootStructure, k0: f64) -> HcmuClass {
    match roots {
        RootStructure::ThreeDistinctReal { roots } => {
            let nearest = (0..3)
                .min_by(|&a, &b| (roots[a] - k0).abs().total_cmp(&(roots[b] - k0).abs()))
                .unwrap_or(2);
            match nearest {
                0 => HcmuClass::ExceptionalConeHcmu {
                    k1: roots[0],
                    k2: roots[1],
                    sigma_sign: -1,
                },
                1 => HcmuClass::ExceptionalConeHcmu {
                    k1: roots[0],
                    k2: roots[1],
                    sigma_sign: 1,
                },
                _ => HcmuClass::not("K0 is the smallest root of p"),
            }
        }
        // K0 is the simple root; a degenerate K0 never validates.
        RootStructure::DoubleAndSimple { double, simple } if simple > double => {
            HcmuClass::ExceptionalCuspHcmu { k1: simple }
        }
        RootStructure::DoubleAndSimple { .. } => {
            HcmuClass::not("K0 is the smallest root of p")
        }
        RootStructure::TripleZero => HcmuClass::not("p has a triple root"),
        RootStructure::OneReal { .. } => HcmuClass::not("p has non-real roots"),
    }
}
