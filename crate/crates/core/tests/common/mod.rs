//! Independent oracles shared by the integration tests. None of them calls
//! the closed-form root formulas or the evaluators they are compared with.

#![allow(dead_code)]

use extk::cubic::CubicParams;
use extk::germ::{make_exceptional, make_generic, GermSpec};
use rand::Rng;

pub fn p(c: f64, cp: f64, t: f64) -> f64 {
    -t * t * t / 3.0 + c * t + cp
}

/// Real roots of `p` (decreasing) from sign changes on a uniform grid over
/// `[-R, R]`, `R = 2(1 + |C| + |C'|)`, refined by bisection. The critical
/// points `±√C` are added to the grid so that close root pairs are not
/// skipped.
pub fn sign_change_roots(c: f64, cp: f64, n: usize) -> Vec<f64> {
    let r = 2.0 * (1.0 + c.abs() + cp.abs());
    let mut xs: Vec<f64> = (0..=n).map(|i| -r + 2.0 * r * i as f64 / n as f64).collect();
    if c > 0.0 {
        xs.push(c.sqrt());
        xs.push(-c.sqrt());
        xs.sort_by(f64::total_cmp);
    }
    let f = |t: f64| p(c, cp, t);
    let mut roots = Vec::new();
    for w in xs.windows(2) {
        let (mut a, mut b) = (w[0], w[1]);
        let (mut fa, fb) = (f(a), f(b));
        if fa == 0.0 {
            roots.push(a);
            continue;
        }
        if fa.signum() == fb.signum() || fb == 0.0 {
            continue;
        }
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m == a || m == b {
                break;
            }
            let fm = f(m);
            if fm.signum() == fa.signum() {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        roots.push(0.5 * (a + b));
    }
    if f(xs[xs.len() - 1]) == 0.0 {
        roots.push(xs[xs.len() - 1]);
    }
    roots.sort_by(|a, b| b.total_cmp(a));
    roots
}

/// `(C, C')` of `-(1/3)(t - K1)(t - K2)(t + K1 + K2)`.
pub fn coefficients(k1: f64, k2: f64) -> (f64, f64) {
    ((k1 * k1 + k1 * k2 + k2 * k2) / 3.0, -k1 * k2 * (k1 + k2) / 3.0)
}

/// What the brute-force search concludes about a germ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleVerdict {
    Generic { k1: f64, k2: f64 },
    Cone { k1: f64, k2: f64, sigma_sign: i8 },
    Cusp { k1: f64 },
    NotHcmu,
}

/// Searches `K1 ∈ (0, R]`, `K2 ∈ [-K1/2, K1)` on a grid of step `step` for a
/// pair whose cubic matches `(C, C')` within `coef_tol`, then applies the
/// case conditions of each HCMU family literally.
pub fn hcmu_oracle(spec: &GermSpec, r_max: f64, step: f64, coef_tol: f64) -> OracleVerdict {
    let cubic = spec.cubic().expect("non-Einstein");
    let (c, cp) = (cubic.c(), cubic.c_prime());
    let k0 = spec.k0();
    let n1 = (r_max / step).round() as i64;
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-6 * (1.0 + a.abs());
    for i in 1..=n1 {
        let k1 = i as f64 * step;
        let j_lo = (-(k1 / 2.0) / step).ceil() as i64;
        let j_hi = (k1 / step).round() as i64;
        for j in j_lo..j_hi {
            let k2 = j as f64 * step;
            let (cc, ccp) = coefficients(k1, k2);
            if (cc - c).abs() > coef_tol || (ccp - cp).abs() > coef_tol {
                continue;
            }
            match spec {
                GermSpec::Generic(_) => {
                    if k0 > k2 && k0 < k1 {
                        return OracleVerdict::Generic { k1, k2 };
                    }
                }
                GermSpec::Exceptional(x) => {
                    let cusp = close(k2, -k1 / 2.0);
                    if cusp && close(k0, k1) {
                        return OracleVerdict::Cusp { k1 };
                    }
                    if !cusp && close(k0, k1) && x.sigma() < 0.0 {
                        return OracleVerdict::Cone { k1, k2, sigma_sign: -1 };
                    }
                    if !cusp && close(k0, k2) && x.sigma() > 0.0 {
                        return OracleVerdict::Cone { k1, k2, sigma_sign: 1 };
                    }
                }
                GermSpec::Einstein(_) => unreachable!(),
            }
        }
    }
    OracleVerdict::NotHcmu
}

/// Classic RK4 for `r K_r = 2σ p(K)` in `s = ln r`, started at `r0` from the
/// leading asymptotic `K ≈ K0 + sgn(σ) λ r0²`. The unknown is
/// `w = ln |K - K0|`; Taylor expansion at the root gives
/// `p(K0 + u) = u (p'(K0) - K0 u - u²/3)`, so `dw/ds = 2σ (p'(K0) - K0 u - u²/3)`.
pub fn radial_march(spec: &GermSpec, r0: f64, r1: f64, steps: usize) -> f64 {
    let GermSpec::Exceptional(x) = spec else {
        panic!("exceptional germ required")
    };
    let k0 = x.k0();
    let slope = x.cubic().c() - k0 * k0;
    let sigma = x.sigma();
    let sign = sigma.signum();
    let f = |w: f64| {
        let u = sign * w.exp();
        2.0 * sigma * (slope - k0 * u - u * u / 3.0)
    };
    let mut w = (x.lambda() * r0 * r0).ln();
    let ds = (r1.ln() - r0.ln()) / steps as f64;
    for _ in 0..steps {
        let a = f(w);
        let b = f(w + 0.5 * ds * a);
        let c = f(w + 0.5 * ds * b);
        let d = f(w + ds * c);
        w += ds * (a + 2.0 * b + 2.0 * c + d) / 6.0;
    }
    k0 + sign * w.exp()
}

/// Random HCMU-or-not germ whose roots lie on a grid of step `step`,
/// within `[-r_max, r_max]`.
pub fn grid_root_spec<R: Rng>(rng: &mut R, r_max: f64, step: f64) -> GermSpec {
    loop {
        let n = (r_max / 2.0 / step) as i64;
        let k1 = rng.gen_range(-n..=n) as f64 * step;
        let k2 = rng.gen_range(-n..=n) as f64 * step;
        let k3 = -(k1 + k2);
        let (c, cp) = coefficients(k1, k2);
        let Ok(cubic) = CubicParams::new(c, cp) else { continue };
        let mut roots = [k1, k2, k3];
        roots.sort_by(|a, b| b.total_cmp(a));
        let spec = if rng.gen_bool(0.5) {
            let lambda = 10f64.powf(rng.gen_range(-1.0..1.0));
            make_exceptional(cubic, roots[rng.gen_range(0..3)], lambda)
        } else {
            let k0 = rng.gen_range(-r_max..r_max);
            make_generic(cubic, k0)
        };
        if let Ok(s) = spec {
            return s;
        }
    }
}

/// Random germ with non-real roots, for which no HCMU pair can exist.
pub fn complex_root_spec<R: Rng>(rng: &mut R) -> GermSpec {
    loop {
        let c = rng.gen_range(-10.0..10.0);
        let cp = rng.gen_range(-10.0..10.0);
        let Ok(cubic) = CubicParams::new(c, cp) else { continue };
        if cubic.discriminant() >= 0.0 {
            continue;
        }
        if let Ok(s) = make_generic(cubic, rng.gen_range(-5.0..5.0)) {
            return s;
        }
    }
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
