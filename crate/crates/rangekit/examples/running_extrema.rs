//! Running supremum, infimum, and range of a sampled path, exported as the
//! five-column CSV the `range` subcommand produces.
//!
//! Run with: cargo run --example running_extrema

use rangekit::extrema::write_extrema_csv;
use rangekit::{running_extrema, Interpolation, SampledPath, TimeGrid};

fn main() -> rangekit::Result<()> {
    let grid = TimeGrid::new(vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0])?;
    let path = SampledPath::new(
        grid,
        vec![0.0, 2.0, -1.0, 3.0, 3.0, 0.5],
        Interpolation::PiecewiseLinear,
    )?;

    let triple = running_extrema(&path);
    println!("value, running sup, running inf, range per knot:");
    let mut csv = Vec::new();
    write_extrema_csv(&path, &triple, &mut csv)?;
    print!("{}", String::from_utf8_lossy(&csv));

    println!();
    println!("range is symmetric under negation:");
    let negated = running_extrema(&path.negate());
    println!("  range(f)  = {:?}", triple.range_path().values());
    println!("  range(-f) = {:?}", negated.range_path().values());
    Ok(())
}
