//! Point-source scattering against plane-wave far fields.

use biharm::error::Result;
use biharm::geometry::Curve;
use biharm::kernels::{Direction, Point2, Wavenumber};
use biharm::verify::check_mixed_reciprocity;

fn main() -> Result<()> {
    let z = Point2::polar(3.0, 0.9);
    let r = check_mixed_reciprocity(
        &Curve::kite(Point2::ORIGIN, 1.0)?,
        Wavenumber::new(1.0)?,
        128,
        z,
        &Direction::grid(8),
        1e-6,
    )?;
    println!("{}", r.summary());
    for (k, v) in &r.details {
        println!("  {k}: {v:.3e}");
    }
    Ok(())
}
