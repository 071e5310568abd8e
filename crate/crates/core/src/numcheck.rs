//! Finite-difference verification of constructed germs.
//!
//! The harness only sees a metric through two callbacks, the conformal
//! density `e^{2φ}` and the claimed curvature `K`, and checks three things on
//! a golden-angle spiral grid:
//!
//! * curvature consistency: `K = -4 φ_{zz̄} e^{-2φ}` recomputed from the
//!   density agrees with the claimed `K`;
//! * the extremal condition: the gradient field `F = 4 e^{-2φ} ∂K/∂z̄` is
//!   holomorphic, checked as `∂F/∂z̄ ≈ 0`;
//! * the normalized model: `F ≡ 1` (generic), `F = z/σ` (exceptional),
//!   `F ≡ 0` (Einstein).
//!
//! All derivatives are second-order central differences with step `h`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::germ::{GermEvaluator, GermSpec};

pub const DEFAULT_GRID_POINTS: usize = 64;
/// Default step as a fraction of the grid radius.
pub const DEFAULT_H_FRAC: f64 = 1e-3;
pub const MIN_GRID_POINTS: usize = 8;

/// Returns `(∂f/∂z, ∂f/∂z̄)` from the four-point stencil `z ± h`, `z ± ih`.
pub fn wirtinger<F>(f: F, z: Complex64, h: f64) -> Result<(Complex64, Complex64)>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let dx = (f(z + h)? - f(z - h)?) / (2.0 * h);
    let dy = (f(z + Complex64::new(0.0, h))? - f(z - Complex64::new(0.0, h))?) / (2.0 * h);
    let i = Complex64::i();
    Ok((0.5 * (dx - i * dy), 0.5 * (dx + i * dy)))
}

fn positive(value: f64, z: Complex64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonPositiveDensity {
            value,
            re: z.re,
            im: z.im,
        })
    }
}

/// Gaussian curvature `-4 φ_{zz̄} / e^{2φ}` of `density = e^{2φ}` by the
/// five-point Laplacian, using `φ_{zz̄} = ¼ Δφ`.
pub fn curvature_fd<D>(density: D, z: Complex64, h: f64) -> Result<f64>
where
    D: Fn(Complex64) -> Result<f64>,
{
    let center = positive(density(z)?, z)?;
    let mut sum = 0.0;
    for offset in [
        Complex64::new(h, 0.0),
        Complex64::new(-h, 0.0),
        Complex64::new(0.0, h),
        Complex64::new(0.0, -h),
    ] {
        let w = z + offset;
        let rho = positive(density(w)?, w)?;
        // 2(φ(w) - φ(z)) = ln(ρ(w) / ρ(z))
        sum += ((rho - center) / center).ln_1p();
    }
    let laplacian_phi = 0.5 * sum / (h * h);
    Ok(-laplacian_phi / center)
}

/// `F = 4 (∂K/∂z̄) / e^{2φ}`.
pub fn gradient_field_f<D, K>(density: D, curvature: K, z: Complex64, h: f64) -> Result<Complex64>
where
    D: Fn(Complex64) -> Result<f64>,
    K: Fn(Complex64) -> Result<f64>,
{
    let rho = positive(density(z)?, z)?;
    let (_, k_zbar) = wirtinger(|w| curvature(w).map(Complex64::from), z, h)?;
    Ok(4.0 * k_zbar / rho)
}

/// A metric seen only through its public density and curvature.
pub trait MetricField: Sync {
    fn density(&self, z: Complex64) -> Result<f64>;
    fn curvature(&self, z: Complex64) -> Result<f64>;
    /// Expected gradient field in normalized coordinates.
    fn gradient_model(&self, z: Complex64) -> Complex64;
    fn domain_radius(&self) -> f64;
}

impl MetricField for GermEvaluator {
    fn density(&self, z: Complex64) -> Result<f64> {
        self.density_at(z)
    }

    fn curvature(&self, z: Complex64) -> Result<f64> {
        self.curvature_at(z)
    }

    fn gradient_model(&self, z: Complex64) -> Complex64 {
        match self.spec() {
            GermSpec::Einstein(_) => Complex64::new(0.0, 0.0),
            GermSpec::Generic(_) => Complex64::new(1.0, 0.0),
            GermSpec::Exceptional(x) => z / x.sigma(),
        }
    }

    fn domain_radius(&self) -> f64 {
        GermEvaluator::domain_radius(self)
    }
}

/// Negative control: multiplies the density by `1 + ε Re z`, which is not
/// extremal for `ε ≠ 0`, while keeping the original curvature and model.
#[derive(Debug, Clone, Copy)]
pub struct Perturbed<'a, M> {
    pub inner: &'a M,
    pub epsilon: f64,
}

impl<M: MetricField> MetricField for Perturbed<'_, M> {
    fn density(&self, z: Complex64) -> Result<f64> {
        Ok(self.inner.density(z)? * (1.0 + self.epsilon * z.re))
    }

    fn curvature(&self, z: Complex64) -> Result<f64> {
        self.inner.curvature(z)
    }

    fn gradient_model(&self, z: Complex64) -> Complex64 {
        self.inner.gradient_model(z)
    }

    fn domain_radius(&self) -> f64 {
        self.inner.domain_radius()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub curvature: f64,
    pub holomorphy: f64,
    pub model: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            curvature: 1e-4,
            holomorphy: 1e-4,
            model: 1e-4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub radius: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub max_curvature_residual: f64,
    pub max_holomorphy_residual: f64,
    /// `max |F - F_model| / max(1, |F_model|)`.
    pub max_model_residual: f64,
    pub h: f64,
    pub grid: GridSpec,
}

/// Residuals at a single grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointResiduals {
    pub z: Complex64,
    pub curvature: f64,
    pub holomorphy: f64,
    pub model: f64,
}

/// `n` points of a golden-angle spiral filling the disk of radius `radius`.
/// The origin is never sampled.
pub fn spiral_grid(radius: f64, n: usize) -> Vec<Complex64> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|k| {
            let r = radius * ((k as f64 + 0.5) / n as f64).sqrt();
            Complex64::from_polar(r, k as f64 * golden)
        })
        .collect()
}

/// Residuals of a metric at `z` with step `h`.
pub fn point_residuals<M: MetricField + ?Sized>(
    metric: &M,
    z: Complex64,
    h: f64,
) -> Result<PointResiduals> {
    let density = |w| metric.density(w);
    let curvature = |w| metric.curvature(w);

    let k_fd = curvature_fd(density, z, h)?;
    let k_eval = metric.curvature(z)?;

    let field = |w| gradient_field_f(density, curvature, w, h);
    let f_here = field(z)?;
    let (_, f_zbar) = wirtinger(field, z, h)?;

    let expected = metric.gradient_model(z);
    Ok(PointResiduals {
        z,
        curvature: (k_fd - k_eval).abs(),
        holomorphy: f_zbar.norm(),
        model: (f_here - expected).norm() / expected.norm().max(1.0),
    })
}

/// Runs the full check of `metric` on a spiral grid.
pub fn verify_metric<M: MetricField>(
    metric: &M,
    grid_radius: f64,
    n_points: usize,
    h: Option<f64>,
    tolerances: Tolerances,
) -> Result<VerificationReport> {
    if n_points < MIN_GRID_POINTS {
        return Err(Error::InvalidArgument(format!(
            "need at least {MIN_GRID_POINTS} grid points, got {n_points}"
        )));
    }
    if !(grid_radius > 0.0 && grid_radius.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "grid radius must be positive and finite, got {grid_radius}"
        )));
    }
    let h = h.unwrap_or(DEFAULT_H_FRAC * grid_radius);
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {h}")));
    }
    // The holomorphy check nests two stencils.
    let reach = grid_radius + 2.0 * std::f64::consts::SQRT_2 * h;
    if !(reach < metric.domain_radius()) {
        return Err(Error::GridExceedsDomain {
            grid_radius,
            domain_radius: metric.domain_radius(),
        });
    }

    let residuals = spiral_grid(grid_radius, n_points)
        .into_par_iter()
        .map(|z| point_residuals(metric, z, h))
        .collect::<Result<Vec<_>>>()?;

    let max_of = |f: fn(&PointResiduals) -> f64| residuals.iter().map(f).fold(0.0, f64::max);
    let max_curvature_residual = max_of(|r| r.curvature);
    let max_holomorphy_residual = max_of(|r| r.holomorphy);
    let max_model_residual = max_of(|r| r.model);
    let pass = max_curvature_residual < tolerances.curvature
        && max_holomorphy_residual < tolerances.holomorphy
        && max_model_residual < tolerances.model;
    Ok(VerificationReport {
        pass,
        max_curvature_residual,
        max_holomorphy_residual,
        max_model_residual,
        h,
        grid: GridSpec {
            radius: grid_radius,
            n: n_points,
        },
    })
}

/// Builds the evaluator for `spec` and verifies it.
pub fn verify(
    spec: &GermSpec,
    grid_radius: f64,
    n_points: usize,
    h: Option<f64>,
    tolerances: Tolerances,
) -> Result<VerificationReport> {
    let eval = GermEvaluator::new(*spec)?;
    verify_metric(&eval, grid_radius, n_points, h, tolerances)
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
