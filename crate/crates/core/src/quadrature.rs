//! Adaptive Simpson quadrature.
//!
//! Each panel is split until the two-half estimate agrees with the whole-panel
//! estimate to `15 * tol`, after which the Richardson-corrected value is used.
//! The absolute tolerance is halved at each split, so the accumulated error
//! stays near the requested target. Recursion is capped; a panel that is still
//! unresolved at the cap makes the whole integral fail.

use crate::error::{Error, Result};

/// Absolute error target used by the germ evaluators.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Maximum bisection depth of a single panel.
pub const MAX_DEPTH: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Simpson {
    pub tol: f64,
    pub max_depth: u32,
}

impl Default for Simpson {
    fn default() -> Self {
        Simpson {
            tol: DEFAULT_TOL,
            max_depth: MAX_DEPTH,
        }
    }
}

impl Simpson {
    pub fn new(tol: f64) -> Self {
        Simpson {
            tol,
            ..Default::default()
        }
    }

    /// Integrates `f` over `[a, b]`. Reversed limits flip the sign.
    pub fn integrate<F>(&self, f: F, a: f64, b: f64) -> Result<f64>
    where
        F: Fn(f64) -> f64,
    {
        if a == b {
            return Ok(0.0);
        }
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::QuadratureFailed { a, b });
        }
        let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };

        let fa = f(lo);
        let fb = f(hi);
        let m = 0.5 * (lo + hi);
        let fm = f(m);
        let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
        let value = self.step(&f, lo, hi, fa, fm, fb, whole, self.tol, self.max_depth)?;
        if value.is_finite() {
            Ok(sign * value)
        } else {
            Err(Error::QuadratureFailed { a, b })
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn step<F>(
        &self,
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64>
    where
        F: Fn(f64) -> f64,
    {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;

        if !delta.is_finite() {
            return Err(Error::QuadratureFailed { a, b });
        }
        // Below the roundoff floor further splitting cannot help.
        let floor = 64.0 * f64::EPSILON * (left.abs() + right.abs());
        if delta.abs() <= (15.0 * tol).max(floor) {
            return Ok(left + right + delta / 15.0);
        }
        // Panel can no longer be split meaningfully.
        if depth == 0 || m <= a || m >= b {
            return Err(Error::QuadratureFailed { a, b });
        }
        let l = self.step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
        let r = self.step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
        Ok(l + r)
    }
}

/// Integrates with the default tolerance and depth cap.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> Result<f64> {
    Simpson::default().integrate(f, a, b)
}
