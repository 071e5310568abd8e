//! Radial profile of an exceptional germ and recovery of λ from the
//! small-radius behaviour `|K - K0| ≈ λ r²`.

use extk::cubic::CubicParams;
use extk::germ::{make_exceptional, GermEvaluator};
use extk::moduli::fifth_invariant_estimate;
use num_complex::Complex64;

fn main() -> extk::Result<()> {
    let lambda = 7.5;
    let spec = make_exceptional(CubicParams::new(1.0, 2.0 / 3.0)?, 2.0, lambda)?;
    let ev = GermEvaluator::new(spec)?;
    let r = ev.domain_radius();
    println!("sigma {:.6}, domain radius {r:.6}", spec.sigma().unwrap());
    for frac in [0.0, 0.01, 0.1, 0.25, 0.5, 0.9] {
        let v = ev.evaluate(Complex64::from_polar(frac * r, 0.7))?;
        println!("|z| {:>8.5}  K {:.12}  density {:.12}", frac * r, v.curvature, v.density);
    }
    let est = fifth_invariant_estimate(&ev, &[0.1 * r, 0.05 * r, 0.02 * r, 0.01 * r])?;
    println!("lambda {lambda}, recovered {est:.9}");
    Ok(())
}
