//! Finite-difference verification of the curvature equation, holomorphy
//! of F and the gradient-field model, plus a perturbed control that must
//! fail.

use extk::cubic::CubicParams;
use extk::germ::{make_exceptional, make_generic, GermEvaluator};
use extk::numcheck::{verify_metric, Perturbed, Tolerances};

fn main() -> extk::Result<()> {
    let specs = [
        make_generic(CubicParams::new(1.0, 0.0)?, 1.0)?,
        make_exceptional(CubicParams::new(1.0, 2.0 / 3.0)?, 2.0, 1.0)?,
    ];
    for spec in specs {
        let ev = GermEvaluator::new(spec)?;
        let radius = 0.5 * ev.domain_radius();
        let report = verify_metric(&ev, radius, 64, None, Tolerances::default())?;
        println!("{}\n  {}", spec.to_json(), report.to_json());
        let bad = Perturbed { inner: &ev, epsilon: 0.01 };
        let report = verify_metric(&bad, radius, 64, None, Tolerances::default())?;
        println!("  perturbed: {}", report.to_json());
    }
    Ok(())
}
