//! Polynomial interpolation on Chebyshev–Lobatto points, evaluated with the
//! barycentric formula.

use crate::error::Result;

#[derive(Debug, Clone)]
pub(crate) struct Chebyshev {
    nodes: Vec<f64>,
    values: Vec<f64>,
}

impl Chebyshev {
    /// Samples `f` at `degree + 1` Lobatto points of `[lo, hi]`. The endpoints
    /// are sampled exactly at `lo` and `hi`.
    pub(crate) fn sample<F>(lo: f64, hi: f64, degree: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        let mut nodes = Vec::with_capacity(degree + 1);
        let mut values = Vec::with_capacity(degree + 1);
        for j in 0..=degree {
            let x = if j == 0 {
                hi
            } else if j == degree {
                lo
            } else if 2 * j == degree {
                mid
            } else {
                mid + half * (std::f64::consts::PI * j as f64 / degree as f64).cos()
            };
            nodes.push(x);
            values.push(f(x)?);
        }
        Ok(Chebyshev {
            nodes,
            values,
        })
    }

    pub(crate) fn value_at_lo(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub(crate) fn value_at_hi(&self) -> f64 {
        self.values[0]
    }

    pub(crate) fn eval(&self, x: f64) -> f64 {
        let n = self.nodes.len() - 1;
        let mut num = 0.0;
        let mut den = 0.0;
        for (j, (&xj, &fj)) in self.nodes.iter().zip(&self.values).enumerate() {
            let diff = x - xj;
            if diff == 0.0 {
                return fj;
            }
            let mut w = if j % 2 == 0 { 1.0 } else { -1.0 };
            if j == 0 || j == n {
                w *= 0.5;
            }
            let t = w / diff;
            num += t * fj;
            den += t;
        }
        num / den
    }
}
