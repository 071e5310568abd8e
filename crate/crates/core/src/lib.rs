//! Germs of one-dimensional extremal Kähler metrics.
//!
//! An extremal Kähler germ near `0 ∈ ℂ` with non-constant curvature is, in a
//! suitable holomorphic coordinate, either *generic* (the curvature gradient
//! field does not vanish at `0`) or *exceptional* (the curvature has a local
//! extremum at `0`). Both families are governed by the cubic
//! `p(t) = -t³/3 + C t + C'`:
//!
//! * [`cubic`]: discriminant and real-root structure of `p`.
//! * [`germ`]: validated descriptors and evaluators for curvature and density.
//! * [`numcheck`]: an independent finite-difference harness that checks the
//!   extremal condition from the metric density alone.
//! * [`moduli`]: moduli-space charts, components, fifth-invariant estimation
//!   and the HCMU membership test.
//! * [`sampling`]: reproducible random specs drawn uniformly in chart
//!   coordinates.
//! * [`cli`]: the `extk` command-line front end.
//!
//! ```
//! use extk::{cubic::CubicParams, germ::{make_generic, GermEvaluator}};
//! use num_complex::Complex64;
//!
//! let spec = make_generic(CubicParams::new(1.0, 0.0)?, 1.0)?;
//! let eval = GermEvaluator::new(spec)?;
//! let k = eval.curvature_at(Complex64::new(0.1, 0.0))?;
//! assert!((k - 1.13215).abs() < 1e-3);
//! # Ok::<(), extk::Error>(())
//! ```

mod chebyshev;
pub mod cli;
pub mod cubic;
pub mod error;
pub mod germ;
pub mod moduli;
pub mod numcheck;
pub mod quadrature;
pub mod sampling;
pub mod solve;

pub use error::{Error, Result};
