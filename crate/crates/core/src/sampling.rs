//! Reproducible random germ specs.
//!
//! Specs are drawn uniformly in chart coordinates over a box and pulled back
//! through the chart inverses, so every sample is valid by construction.
//! The generator is ChaCha8 seeded with `seed_from_u64`, which yields the
//! same stream on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::germ::GermSpec;
use crate::moduli::{chart_generic_inv, exceptional_chart_inv};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Ranges of the chart coordinates. Exceptional `t` is drawn as a random
/// sign times `|t| ∈ t_abs`, which keeps it away from zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChartBox {
    pub c: (f64, f64),
    pub log_p: (f64, f64),
    pub k0: (f64, f64),
    pub t_abs: (f64, f64),
    pub log_lambda: (f64, f64),
}

impl Default for ChartBox {
    fn default() -> Self {
        ChartBox {
            c: (-2.0, 2.0),
            log_p: (-2.0, 2.0),
            k0: (-2.0, 2.0),
            t_abs: (0.25, 4.0),
            log_lambda: (-std::f64::consts::LN_10 * 2.0, std::f64::consts::LN_10 * 2.0),
        }
    }
}

impl ChartBox {
    fn validate(&self) -> Result<()> {
        let ranges = [self.c, self.log_p, self.k0, self.t_abs, self.log_lambda];
        if ranges
            .iter()
            .any(|&(a, b)| !(a.is_finite() && b.is_finite() && a <= b))
        {
            return Err(Error::InvalidArgument("chart box ranges must be finite with lo <= hi".into()));
        }
        if !(self.t_abs.0 > 0.0) {
            return Err(Error::InvalidArgument("t range must exclude zero".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleKind {
    Generic,
    Exceptional,
}

fn uniform(rng: &mut SampleRng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.gen_range(lo..hi)
    }
}

pub fn sample_generic(rng: &mut SampleRng, bounds: &ChartBox) -> Result<GermSpec> {
    let x1 = uniform(rng, bounds.c);
    let x2 = uniform(rng, bounds.log_p);
    let x3 = uniform(rng, bounds.k0);
    chart_generic_inv(x1, x2, x3)
}

/// `sign` forces the component (`Some(1.0)` for σ > 0); `None` picks it at random.
pub fn sample_exceptional(
    rng: &mut SampleRng,
    bounds: &ChartBox,
    sign: Option<f64>,
) -> Result<GermSpec> {
    let k0 = uniform(rng, bounds.k0);
    let magnitude = uniform(rng, bounds.t_abs);
    let sign = match sign {
        Some(s) => s.signum(),
        None => {
            if rng.gen::<bool>() {
                1.0
            } else {
                -1.0
            }
        }
    };
    let log_lambda = uniform(rng, bounds.log_lambda);
    exceptional_chart_inv(k0, sign * magnitude, log_lambda)
}

/// `count` specs of one kind from `seed`.
pub fn sample_specs(
    kind: SampleKind,
    count: usize,
    seed: u64,
    bounds: &ChartBox,
) -> Result<Vec<GermSpec>> {
    bounds.validate()?;
    let mut rng = rng(seed);
    (0..count)
        .map(|_| match kind {
            SampleKind::Generic => sample_generic(&mut rng, bounds),
            SampleKind::Exceptional => sample_exceptional(&mut rng, bounds, None),
        })
        .collect()
}
