//! Bracketed root finding for monotone scalar functions.
//!
//! The bracket `[lo, hi]` is kept with `f(lo) < 0 < f(hi)` (after orienting by
//! sign). Each iteration tries a Newton step when a derivative is supplied, a
//! secant step otherwise, and falls back to bisection whenever the trial point
//! leaves the bracket or fails to shrink it fast enough.

use crate::error::{Error, Result};

pub const MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracketed {
    /// Absolute step size below which the iteration stops.
    pub xtol: f64,
    pub max_iter: usize,
}

impl Default for Bracketed {
    fn default() -> Self {
        Bracketed {
            xtol: 1e-11,
            max_iter: MAX_ITER,
        }
    }
}

impl Bracketed {
    pub fn new(xtol: f64) -> Self {
        Bracketed {
            xtol,
            ..Default::default()
        }
    }

    /// Finds the root of `f` in `[a, b]`. `f(a)` and `f(b)` must have opposite
    /// signs (or one of them vanish). `fdf` returns `(f(x), f'(x))`; pass
    /// `None` for the derivative to use secant steps.
    pub fn solve<F>(&self, mut fdf: F, a: f64, b: f64, guess: Option<f64>) -> Result<f64>
    where
        F: FnMut(f64) -> Result<(f64, Option<f64>)>,
    {
        let (fa, _) = fdf(a)?;
        if fa == 0.0 {
            return Ok(a);
        }
        let (fb, _) = fdf(b)?;
        if fb == 0.0 {
            return Ok(b);
        }
        if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
            return Err(Error::RootFinding(format!(
                "no sign change on [{a}, {b}]: f(a) = {fa}, f(b) = {fb}"
            )));
        }
        // Orient so that the bracket is (neg, pos).
        let (mut neg, mut pos, mut f_neg, mut f_pos) = if fa < 0.0 {
            (a, b, fa, fb)
        } else {
            (b, a, fb, fa)
        };

        let mut x = match guess {
            Some(g) if g > a.min(b) && g < a.max(b) => g,
            _ => secant_point(neg, pos, f_neg, f_pos),
        };
        let mut prev_step = (pos - neg).abs();

        for _ in 0..self.max_iter {
            let (fx, dfx) = fdf(x)?;
            if fx == 0.0 {
                return Ok(x);
            }
            if fx.is_nan() {
                return Err(Error::RootFinding(format!("f({x}) is NaN")));
            }
            if fx < 0.0 {
                neg = x;
                f_neg = fx;
            } else {
                pos = x;
                f_pos = fx;
            }

            let width = (pos - neg).abs();
            let (lo, hi) = (neg.min(pos), neg.max(pos));

            let trial = match dfx {
                Some(d) if d != 0.0 && d.is_finite() => x - fx / d,
                _ => secant_point(neg, pos, f_neg, f_pos),
            };
            // Bisect when the trial leaves the bracket or steps stop halving.
            let newton = trial >= lo && trial <= hi && (trial - x).abs() <= 0.5 * prev_step;
            let next = if newton { trial } else { 0.5 * (lo + hi) };
            prev_step = (next - x).abs().max(f64::MIN_POSITIVE);

            let step = (next - x).abs();
            x = next;
            // A small bisection step says nothing about the distance to the root.
            if newton && step <= self.xtol {
                return Ok(x);
            }
            if width <= self.xtol || width <= 2.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) {
                // f is linear to working precision on so small a bracket.
                return Ok(secant_point(neg, pos, f_neg, f_pos));
            }
        }
        Err(Error::RootFinding(format!(
            "no convergence after {} iterations (bracket [{}, {}])",
            self.max_iter,
            neg.min(pos),
            neg.max(pos)
        )))
    }
}

fn secant_point(neg: f64, pos: f64, f_neg: f64, f_pos: f64) -> f64 {
    let denom = f_pos - f_neg;
    let candidate = neg - f_neg * (pos - neg) / denom;
    let (lo, hi) = (neg.min(pos), neg.max(pos));
    if candidate.is_finite() && candidate > lo && candidate < hi {
        candidate
    } else {
        0.5 * (lo + hi)
    }
}
