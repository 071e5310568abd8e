//! Curvature and density on a square grid, written as CSV to stdout.
//! Usage: `cargo run --example grid_csv -- [n]`.

use extk::cli::grid_csv;
use extk::cubic::CubicParams;
use extk::germ::{make_exceptional, GermEvaluator};

fn main() -> extk::Result<()> {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let ev = GermEvaluator::new(make_exceptional(CubicParams::new(1.0, 2.0 / 3.0)?, 2.0, 1.0)?)?;
    print!("{}", grid_csv(&ev, n, 0.5)?);
    Ok(())
}
