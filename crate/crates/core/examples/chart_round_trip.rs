//! Chart coordinates to germ and back.

use extk::moduli::{chart, chart_generic_inv, chart_inv, exceptional_chart_inv};

fn main() -> extk::Result<()> {
    let generic = chart_generic_inv(0.5, -0.2, 1.3)?;
    let coords = chart(&generic)?;
    println!("{}\n  -> {coords:?}\n  -> {}", generic.to_json(), chart_inv(&coords)?.to_json());

    let exceptional = exceptional_chart_inv(1.5, -0.75, 2.0f64.ln())?;
    let coords = chart(&exceptional)?;
    println!("{}\n  -> {coords:?}\n  -> {}", exceptional.to_json(), chart_inv(&coords)?.to_json());
    Ok(())
}
