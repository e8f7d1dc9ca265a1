//! Exterior checks on a kite: manufactured fields, representation and null field.

use biharm::error::Result;
use biharm::geometry::Curve;
use biharm::kernels::{Point2, Wavenumber};
use biharm::verify;

fn main() -> Result<()> {
    let kite = Curve::kite(Point2::ORIGIN, 1.0)?;
    let kappa = Wavenumber::new(2.0)?;
    for report in [
        verify::check_manufactured_solution(&kite, kappa, 128, 1e-6)?,
        verify::check_exterior_representation(&kite, kappa, 128, 1e-8)?,
        verify::check_null_field(&kite, kappa, 128, 1e-8)?,
    ] {
        println!("{}", report.summary());
    }
    Ok(())
}
