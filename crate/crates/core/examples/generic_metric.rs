//! Curvature and density of a generic germ along both axes.
//! Curvature depends on the real part only.

use extk::cubic::CubicParams;
use extk::germ::{make_generic, GermEvaluator};
use num_complex::Complex64;

fn main() -> extk::Result<()> {
    let ev = GermEvaluator::new(make_generic(CubicParams::new(1.0, 0.0)?, 1.0)?)?;
    let r = ev.domain_radius();
    println!("domain radius {r:.6}, curvature range {:?}", ev.interval());
    for i in -4..=4 {
        let x = 0.2 * r * i as f64;
        let a = ev.evaluate(Complex64::new(x, 0.0))?;
        let b = ev.evaluate(Complex64::new(x, 0.5 * r))?;
        println!("re {x:>8.4}  K {:.10}  density {:.10}  (im shifted: K {:.10})", a.curvature, a.density, b.curvature);
    }
    Ok(())
}
