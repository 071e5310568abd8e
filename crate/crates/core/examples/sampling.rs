//! Seeded random germs, uniform in chart coordinates.

use extk::moduli::hcmu_class;
use extk::sampling::{sample_specs, ChartBox, SampleKind};

fn main() -> extk::Result<()> {
    let bounds = ChartBox::default();
    for kind in [SampleKind::Generic, SampleKind::Exceptional] {
        for spec in sample_specs(kind, 4, 2024, &bounds)? {
            println!("{}  hcmu: {}", spec.to_json(), hcmu_class(&spec)?.is_hcmu());
        }
    }
    Ok(())
}
