use num_complex::Complex64;

use super::{Exceptional, Generic, GermSpec};
use crate::cubic::{CubicParams, RootStructure};
use crate::chebyshev::Chebyshev;
use crate::error::{Error, Result};
use crate::quadrature::Simpson;
use crate::solve::Bracketed;

/// Numerical knobs of an evaluator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    /// Absolute target of the adaptive Simpson rule.
    pub quadrature_tol: f64,
    /// Step tolerance of the curvature root finder.
    pub root_tol: f64,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            quadrature_tol: crate::quadrature::DEFAULT_TOL,
            root_tol: 1e-11,
        }
    }
}

/// Curvature and metric density at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointValue {
    pub curvature: f64,
    pub density: f64,
}

/// Degree of the interpolants that cache `𝔓` and `G`.
const CACHE_DEGREE: usize = 48;

#[derive(Debug, Clone)]
enum Model {
    Einstein {
        k0: f64,
    },
    Generic {
        germ: Generic,
        delta: f64,
        /// 𝔓 on `[K0 - δ, K0 + δ]`.
        primitive: Chebyshev,
    },
    Exceptional {
        germ: Exceptional,
        delta: f64,
        /// `u ↦ G(K0 + sgn(σ) u)` on `[0, δ]`.
        correction: Chebyshev,
    },
}

/// Evaluates curvature `K(z)` and density `e^{2φ}(z)` of a germ on its
/// guaranteed disk `|z| < domain_radius`.
///
/// The evaluator holds no interior mutability; it is `Send + Sync` and cheap
/// to clone.
#[derive(Debug, Clone)]
pub struct GermEvaluator {
    spec: GermSpec,
    model: Model,
    domain_radius: f64,
    interval: (f64, f64),
    quad: Simpson,
    solver: Bracketed,
}

impl GermEvaluator {
    pub fn new(spec: GermSpec) -> Result<Self> {
        Self::with_options(spec, EvalOptions::default())
    }

    pub fn with_options(spec: GermSpec, options: EvalOptions) -> Result<Self> {
        if !(options.quadrature_tol > 0.0 && options.root_tol > 0.0) {
            return Err(Error::InvalidArgument(
                "tolerances must be positive".into(),
            ));
        }
        let quad = Simpson::new(options.quadrature_tol);
        let solver = Bracketed::new(options.root_tol);
        let (model, domain_radius, interval) = match spec {
            GermSpec::Einstein(e) => {
                let k0 = e.k0();
                let radius = if k0 >= 0.0 {
                    f64::INFINITY
                } else {
                    1.0 / (-k0).sqrt()
                };
                (Model::Einstein { k0 }, radius, (k0, k0))
            }
            GermSpec::Generic(g) => build_generic(g, &quad)?,
            GermSpec::Exceptional(x) => build_exceptional(x, &quad)?,
        };
        Ok(GermEvaluator {
            spec,
            model,
            domain_radius,
            interval,
            quad,
            solver,
        })
    }

    pub fn spec(&self) -> &GermSpec {
        &self.spec
    }

    /// Radius of the disk on which evaluation is guaranteed. Infinite for
    /// Einstein germs with `K0 >= 0`.
    pub fn domain_radius(&self) -> f64 {
        self.domain_radius
    }

    /// Curvature values reachable from `K0`: the component of `{p > 0}`
    /// containing `K0` (generic) or the admissible side of `K0` up to the next
    /// root (exceptional). Bounds may be infinite. Degenerate `(K0, K0)` for
    /// Einstein germs.
    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    /// `𝔓(t) = ∫_{K0}^{t} ds / p(s)` for generic germs.
    pub fn primitive(&self, t: f64) -> Result<f64> {
        let Model::Generic { germ, .. } = &self.model else {
            return Err(Error::WrongKind { expected: "generic" });
        };
        let (lower, upper) = self.interval;
        if !(t > lower && t < upper) {
            return Err(Error::OutOfInterval { t, lower, upper });
        }
        generic_primitive(&germ.cubic, germ.k0, t, &self.quad)
    }

    /// `G(t) = ∫_{K0}^{t} [1/p(s) - σ/(s - K0)] ds / σ` for exceptional germs,
    /// evaluated through the deflated cubic so the integrand is regular at
    /// `K0`.
    pub fn radial_correction(&self, t: f64) -> Result<f64> {
        let Model::Exceptional { germ, .. } = &self.model else {
            return Err(Error::WrongKind {
                expected: "exceptional",
            });
        };
        let (lower, upper) = self.interval;
        if !(t >= lower && t <= upper) {
            return Err(Error::OutOfInterval { t, lower, upper });
        }
        exceptional_correction(germ, t, &self.quad)
    }

    pub fn curvature_at(&self, z: Complex64) -> Result<f64> {
        self.evaluate(z).map(|v| v.curvature)
    }

    pub fn density_at(&self, z: Complex64) -> Result<f64> {
        self.evaluate(z).map(|v| v.density)
    }

    /// Curvature and density from a single implicit solve.
    pub fn evaluate(&self, z: Complex64) -> Result<PointValue> {
        let modulus = z.norm();
        if !(modulus < self.domain_radius) {
            return Err(Error::OutOfDomain {
                modulus,
                radius: self.domain_radius,
            });
        }
        match &self.model {
            Model::Einstein { k0 } => {
                let w = 1.0 + k0 * z.norm_sqr();
                Ok(PointValue {
                    curvature: *k0,
                    density: 4.0 / (w * w),
                })
            }
            Model::Generic {
                germ,
                delta,
                primitive,
            } => self.eval_generic(germ, *delta, primitive, z),
            Model::Exceptional {
                germ,
                delta,
                correction,
            } => self.eval_exceptional(germ, *delta, correction, z),
        }
    }

    fn eval_generic(
        &self,
        germ: &Generic,
        delta: f64,
        primitive: &Chebyshev,
        z: Complex64,
    ) -> Result<PointValue> {
        let cubic = germ.cubic;
        let k0 = germ.k0;
        // 𝔓(K) = z + z̄
        let target = 2.0 * z.re;
        let k = if target == 0.0 {
            k0
        } else {
            let guess = (k0 + cubic.eval(k0) * target).clamp(k0 - 0.5 * delta, k0 + 0.5 * delta);
            self.solver.solve(
                |k| Ok((primitive.eval(k) - target, Some(1.0 / cubic.eval(k)))),
                k0 - delta,
                k0 + delta,
                Some(guess),
            )?
        };
        Ok(PointValue {
            curvature: k,
            density: 4.0 * cubic.eval(k),
        })
    }

    fn eval_exceptional(
        &self,
        germ: &Exceptional,
        delta: f64,
        correction: &Chebyshev,
        z: Complex64,
    ) -> Result<PointValue> {
        let k0 = germ.k0;
        let sign = germ.sigma_sign();
        let abs_sigma = germ.sigma.abs();
        let r2 = z.norm_sqr();
        if r2 == 0.0 {
            return Ok(PointValue {
                curvature: k0,
                density: 4.0 * abs_sigma * germ.lambda,
            });
        }
        // Unknown v = ln u with u = sgn(σ)(K - K0):
        //   v + G(K0 + sgn(σ) e^v) = ln(λ r²),
        // strictly increasing in v with slope 1 / (|σ| sgn(σ) q(K)).
        let target = germ.lambda.ln() + r2.ln();
        let residual = |v: f64| -> (f64, Option<f64>) {
            let u = v.exp().min(delta);
            let k = k0 + sign * u;
            let slope = 1.0 / (abs_sigma * sign * deflated(&germ.cubic, k0, k));
            (v + correction.eval(u) - target, Some(slope))
        };

        let hi = delta.ln();
        if !(hi + correction.value_at_hi() > target) {
            return Err(Error::OutOfDomain {
                modulus: r2.sqrt(),
                radius: self.domain_radius,
            });
        }
        // G is bounded on [0, δ], so stepping down terminates.
        let mut lo = target.min(hi) - 1.0;
        let mut step = 1.0;
        while residual(lo).0 >= 0.0 {
            step *= 2.0;
            lo -= step;
            if step > 1e6 {
                return Err(Error::RootFinding("radial map bracket not found".into()));
            }
        }
        let guess = (target - correction.value_at_lo()).clamp(lo, hi);
        let v = self.solver.solve(|v| Ok(residual(v)), lo, hi, Some(guess))?;
        let u = v.exp();
        let k = k0 + sign * u;
        // p(K) = (K - K0) q(K)
        let p_k = sign * u * deflated(&germ.cubic, k0, k);
        Ok(PointValue {
            curvature: k,
            density: 4.0 * germ.sigma * germ.sigma * p_k / r2,
        })
    }
}

/// `q(t)` with `p(t) = (t - K0) q(t)` when `K0` is a root:
/// `q(t) = -(t² + K0 t + K0² - 3C) / 3`. `q(K0) = C - K0² = p'(K0)`.
fn deflated(cubic: &CubicParams, k0: f64, t: f64) -> f64 {
    -((t + k0) * t + k0 * k0 - 3.0 * cubic.c()) / 3.0
}

/// Roots of `t² + b t + c` as complex numbers.
fn quadratic_roots(b: f64, c: f64) -> [Complex64; 2] {
    let disc = b * b - 4.0 * c;
    if disc >= 0.0 {
        let q = -0.5 * (b + disc.sqrt().copysign(b));
        if q == 0.0 {
            [Complex64::new(0.0, 0.0); 2]
        } else {
            [Complex64::new(q, 0.0), Complex64::new(c / q, 0.0)]
        }
    } else {
        let im = 0.5 * (-disc).sqrt();
        [Complex64::new(-0.5 * b, im), Complex64::new(-0.5 * b, -im)]
    }
}

/// All three roots of `p` in ℂ.
fn complex_roots(cubic: &CubicParams) -> Vec<Complex64> {
    match cubic.root_structure() {
        RootStructure::OneReal { root } => {
            // p = -(1/3)(t - r)(t² + r t + r² - 3C)
            let [a, b] = quadratic_roots(root, root * root - 3.0 * cubic.c());
            vec![Complex64::new(root, 0.0), a, b]
        }
        other => other
            .real_roots()
            .into_iter()
            .map(|r| Complex64::new(r, 0.0))
            .collect(),
    }
}

fn node_quadrature(quad: &Simpson) -> Simpson {
    Simpson {
        tol: quad.tol * 1e-3,
        ..*quad
    }
}

fn generic_primitive(cubic: &CubicParams, k0: f64, t: f64, quad: &Simpson) -> Result<f64> {
    quad.integrate(|s| 1.0 / cubic.eval(s), k0, t)
}

fn exceptional_correction(germ: &Exceptional, t: f64, quad: &Simpson) -> Result<f64> {
    let k0 = germ.k0;
    let cubic = germ.cubic;
    // (1/σ)(1/p - σ/(s - K0)) = (s + 2K0) / (3 q(s))
    quad.integrate(|s| (s + 2.0 * k0) / (3.0 * deflated(&cubic, k0, s)), k0, t)
}

fn build_generic(germ: Generic, quad: &Simpson) -> Result<(Model, f64, (f64, f64))> {
    let k0 = germ.k0;
    let roots = complex_roots(&germ.cubic);
    let real: Vec<f64> = roots.iter().filter(|r| r.im == 0.0).map(|r| r.re).collect();
    let below = real
        .iter()
        .copied()
        .filter(|&r| r < k0)
        .fold(f64::NEG_INFINITY, f64::max);
    let above = real
        .iter()
        .copied()
        .filter(|&r| r > k0)
        .fold(f64::INFINITY, f64::min);
    // Half the distance to the nearest zero of p in ℂ keeps 1/p analytic
    // well beyond [K0 - δ, K0 + δ].
    let nearest = roots
        .iter()
        .map(|r| (r - k0).norm())
        .fold(f64::INFINITY, f64::min);
    let mut delta = 0.5 * nearest;
    // Roots are only accurate to ~1e-12; shrink until p > 0 at both ends.
    while !(germ.cubic.eval(k0 - delta) > 0.0 && germ.cubic.eval(k0 + delta) > 0.0) {
        delta *= 0.5;
        if delta < 1e-300 {
            return Err(Error::NotInDomain { p_k0: germ.p_k0() });
        }
    }
    let node_quad = node_quadrature(quad);
    let primitive = Chebyshev::sample(k0 - delta, k0 + delta, CACHE_DEGREE, |t| {
        generic_primitive(&germ.cubic, k0, t, &node_quad)
    })?;
    // |z| < min(|𝔓(K0 - δ)|, |𝔓(K0 + δ)|) / 2 keeps z + z̄ inside the range of 𝔓.
    let radius = 0.5 * primitive.value_at_lo().abs().min(primitive.value_at_hi().abs());
    Ok((
        Model::Generic {
            germ,
            delta,
            primitive,
        },
        radius,
        (below, above),
    ))
}

fn build_exceptional(germ: Exceptional, quad: &Simpson) -> Result<(Model, f64, (f64, f64))> {
    let k0 = germ.k0;
    let sign = germ.sigma_sign();
    // The other roots of p are the roots of t² + K0 t + K0² - 3C.
    let others = quadratic_roots(k0, k0 * k0 - 3.0 * germ.cubic.c());
    let nearest = others
        .iter()
        .map(|r| (r - k0).norm())
        .fold(f64::INFINITY, f64::min);
    let delta = 0.5 * nearest;
    let side_limit = others
        .iter()
        .filter(|r| r.im == 0.0)
        .map(|r| sign * (r.re - k0))
        .filter(|d| *d > 0.0)
        .fold(f64::INFINITY, f64::min);
    let interval = if sign > 0.0 {
        (k0, k0 + side_limit)
    } else {
        (k0 - side_limit, k0)
    };

    let node_quad = node_quadrature(quad);
    let correction = Chebyshev::sample(0.0, delta, CACHE_DEGREE, |u| {
        exceptional_correction(&germ, k0 + sign * u, &node_quad)
    })?;
    // u e^{G} = λ r² reaches δ at r² = δ e^{G(K0 ± δ)} / λ; keep half that radius.
    let radius = 0.5 * (delta * correction.value_at_hi().exp() / germ.lambda).sqrt();
    Ok((
        Model::Exceptional {
            germ,
            delta,
            correction,
        },
        radius,
        interval,
    ))
}
