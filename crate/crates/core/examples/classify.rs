//! Component, chart coordinates and HCMU class of a few germs.

use extk::cubic::CubicParams;
use extk::germ::{make_exceptional, make_generic};
use extk::moduli::{chart, component_of, hcmu_class};

fn main() -> extk::Result<()> {
    let specs = [
        make_generic(CubicParams::new(1.0, 0.0)?, 1.0)?,
        make_generic(CubicParams::new(-1.0, 1.0)?, 0.0)?,
        make_exceptional(CubicParams::new(1.0, 2.0 / 3.0)?, 2.0, 1.0)?,
        make_exceptional(CubicParams::from_roots(2.0, 0.5)?, 0.5, 3.0)?,
    ];
    for spec in &specs {
        println!("{}", spec.to_json());
        println!("  component {}", component_of(spec)?.name());
        println!("  chart     {:?}", chart(spec)?);
        println!("  hcmu      {:?}", hcmu_class(spec)?);
    }
    Ok(())
}
