//! Discriminant and root structure of `p(t) = -t³/3 + C t + C'`.

use extk::cubic::CubicParams;

fn main() -> extk::Result<()> {
    for (c, cp) in [(1.0, 0.0), (1.0, 2.0 / 3.0), (0.0, 0.0), (-1.0, 1.0)] {
        let p = CubicParams::new(c, cp)?;
        println!("C = {c:>6.3}, C' = {cp:>6.3}: D = {:>9.4}  {:?}", p.discriminant(), p.root_structure());
    }
    let p = CubicParams::from_roots(2.0, -0.5)?;
    println!("from roots 2, -0.5: C = {}, C' = {}", p.c(), p.c_prime());
    Ok(())
}
