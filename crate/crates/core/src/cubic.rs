//! The characteristic cubic `p(t) = -t³/3 + C t + C'`.
//!
//! `p` has no quadratic term, so its roots always sum to zero. Its
//! discriminant `D = 27 (4C³ - 9C'²)` equals the product of the squared root
//! gaps of the monic cubic `t³ - 3Ct - 3C'`, and decides the real-root
//! structure:
//!
//! | `D`   | roots                                   |
//! |-------|-----------------------------------------|
//! | `> 0` | three distinct real                     |
//! | `= 0` | a double and a simple root, or `0` triple |
//! | `< 0` | one real, two complex conjugate         |
//!
//! Roots come from the trigonometric / Cardano closed forms and are then
//! polished by safeguarded Newton iteration inside a sign-change bracket.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Result};

/// Relative tolerance for deciding `4C³ = 9C'²`.
pub const DISCRIMINANT_REL_TOL: f64 = 1e-9;
/// Absolute tolerance below which both coefficients count as zero.
pub const TRIPLE_ZERO_TOL: f64 = 1e-12;

const POLISH_MAX_STEPS: usize = 50;

/// Coefficients `(C, C')` of `p(t) = -t³/3 + C t + C'`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicParams {
    #[serde(rename = "C")]
    c: f64,
    #[serde(rename = "Cprime")]
    c_prime: f64,
}

impl CubicParams {
    pub fn new(c: f64, c_prime: f64) -> Result<Self> {
        Ok(CubicParams {
            c: ensure_finite("C", c)?,
            c_prime: ensure_finite("Cprime", c_prime)?,
        })
    }

    /// Coefficients of `-(1/3)(t - r1)(t - r2)(t - r3)` with `r3 = -r1 - r2`.
    pub fn from_roots(r1: f64, r2: f64) -> Result<Self> {
        Self::new(
            (r1 * r1 + r1 * r2 + r2 * r2) / 3.0,
            -r1 * r2 * (r1 + r2) / 3.0,
        )
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn c_prime(&self) -> f64 {
        self.c_prime
    }

    pub fn eval(&self, t: f64) -> f64 {
        p_eval(self, t)
    }

    pub fn derivative(&self, t: f64) -> f64 {
        p_prime(self, t)
    }

    pub fn discriminant(&self) -> f64 {
        discriminant(self)
    }

    pub fn root_structure(&self) -> RootStructure {
        root_structure(self)
    }

    /// True when `4C³` and `9C'²` agree to [`DISCRIMINANT_REL_TOL`].
    pub fn discriminant_vanishes(&self) -> bool {
        let a = 4.0 * self.c.powi(3);
        let b = 9.0 * self.c_prime * self.c_prime;
        let scale = a.abs().max(b);
        (a - b).abs() <= DISCRIMINANT_REL_TOL * scale
    }

    pub fn is_triple_zero(&self) -> bool {
        self.c.abs() <= TRIPLE_ZERO_TOL && self.c_prime.abs() <= TRIPLE_ZERO_TOL
    }
}

/// `27 (4C³ - 9C'²)`.
pub fn discriminant(params: &CubicParams) -> f64 {
    27.0 * (4.0 * params.c.powi(3) - 9.0 * params.c_prime * params.c_prime)
}

/// `-t³/3 + C t + C'` in Horner form.
pub fn p_eval(params: &CubicParams, t: f64) -> f64 {
    (-t * t / 3.0 + params.c) * t + params.c_prime
}

/// `-t² + C`.
pub fn p_prime(params: &CubicParams, t: f64) -> f64 {
    params.c - t * t
}

/// Real-root structure of `p`. Real roots are stored in decreasing order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RootStructure {
    ThreeDistinctReal { roots: [f64; 3] },
    DoubleAndSimple { double: f64, simple: f64 },
    TripleZero,
    /// The conjugate non-real pair is not stored.
    OneReal { root: f64 },
}

impl RootStructure {
    /// Real roots with multiplicity, sorted decreasingly. Empty slots for
    /// `OneReal` are omitted.
    pub fn real_roots(&self) -> Vec<f64> {
        match *self {
            RootStructure::ThreeDistinctReal { roots } => roots.to_vec(),
            RootStructure::DoubleAndSimple { double, simple } => {
                let mut v = vec![double, double, simple];
                v.sort_by(|a, b| b.total_cmp(a));
                v
            }
            RootStructure::TripleZero => vec![0.0; 3],
            RootStructure::OneReal { root } => vec![root],
        }
    }

    /// Distinct real roots, decreasing.
    pub fn distinct_real_roots(&self) -> Vec<f64> {
        let mut v = match *self {
            RootStructure::ThreeDistinctReal { roots } => roots.to_vec(),
            RootStructure::DoubleAndSimple { double, simple } => vec![double, simple],
            RootStructure::TripleZero => vec![0.0],
            RootStructure::OneReal { root } => vec![root],
        };
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    pub fn all_real(&self) -> bool {
        !matches!(self, RootStructure::OneReal { .. })
    }
}

/// Classifies and computes the real roots of `p`.
pub fn root_structure(params: &CubicParams) -> RootStructure {
    let (c, cp) = (params.c, params.c_prime);
    if params.is_triple_zero() {
        return RootStructure::TripleZero;
    }
    if params.discriminant_vanishes() {
        // p = -(1/3)(t - a)²(t + 2a) with C = a², C' = -2a³/3.
        let a = -1.5 * cp / c;
        return RootStructure::DoubleAndSimple {
            double: a,
            simple: -2.0 * a,
        };
    }
    if discriminant(params) > 0.0 {
        // t = 2√C cos φ turns p = 0 into cos 3φ = 3C' / (2 C^{3/2}).
        let sc = c.sqrt();
        let arg = (1.5 * cp / (c * sc)).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        let third = 2.0 * std::f64::consts::PI / 3.0;
        let mut roots = [
            2.0 * sc * phi.cos(),
            2.0 * sc * (phi - third).cos(),
            2.0 * sc * (phi + third).cos(),
        ];
        roots.sort_by(|a, b| b.total_cmp(a));
        let gaps = [roots[0] - roots[1], roots[1] - roots[2]];
        let polished = [
            polish(params, roots[0], gaps[0] * 0.5, f64::INFINITY),
            polish(params, roots[1], gaps[1] * 0.5, gaps[0] * 0.5),
            polish(params, roots[2], f64::INFINITY, gaps[1] * 0.5),
        ];
        RootStructure::ThreeDistinctReal { roots: polished }
    } else {
        // Cardano for t³ + P t + Q with P = -3C, Q = -3C'.
        let p = -3.0 * c;
        let q = -3.0 * cp;
        let disc = q * q / 4.0 + p * p * p / 27.0;
        let s = disc.max(0.0).sqrt();
        // Choose the sign that avoids cancellation.
        let u = (-0.5 * q - s.copysign(q)).cbrt();
        let root = if u != 0.0 { u - p / (3.0 * u) } else { 0.0 };
        RootStructure::OneReal {
            root: polish(params, root, f64::INFINITY, f64::INFINITY),
        }
    }
}

/// Refines a simple root estimate. `below` and `above` bound how far the
/// bracket may extend on each side without reaching a neighbouring root.
fn polish(params: &CubicParams, x0: f64, below: f64, above: f64) -> f64 {
    let f = |t: f64| p_eval(params, t);
    let f0 = f(x0);
    if f0 == 0.0 {
        return x0;
    }

    // Grow a sign-change bracket around the estimate.
    let mut w = 1e-12 * (1.0 + x0.abs());
    let mut bracket = None;
    while w <= below.max(above) && w.is_finite() {
        let lo = x0 - w.min(below);
        let hi = x0 + w.min(above);
        let (flo, fhi) = (f(lo), f(hi));
        if flo == 0.0 {
            return lo;
        }
        if fhi == 0.0 {
            return hi;
        }
        if flo.signum() != fhi.signum() {
            bracket = Some((lo, hi, flo));
            break;
        }
        w *= 4.0;
    }
    let Some((mut lo, mut hi, flo)) = bracket else {
        return x0;
    };
    let lo_negative = flo < 0.0;

    let mut x = x0;
    for _ in 0..POLISH_MAX_STEPS {
        let fx = f(x);
        if fx == 0.0 {
            return x;
        }
        if (fx < 0.0) == lo_negative {
            lo = x;
        } else {
            hi = x;
        }
        let d = p_prime(params, x);
        let newton = if d != 0.0 { x - fx / d } else { f64::NAN };
        let next = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if next == x || hi - lo <= 2.0 * f64::EPSILON * x.abs() {
            break;
        }
        x = next;
    }
    x
}
