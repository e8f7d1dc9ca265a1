//! Swapping source and receiver leaves each scattered component unchanged.

use biharm::error::Result;
use biharm::geometry::Curve;
use biharm::kernels::{Point2, Wavenumber};
use biharm::verify::{check_symmetry, SymmetryComponent};

fn main() -> Result<()> {
    let kite = Curve::kite(Point2::ORIGIN, 1.0)?;
    let x = Point2::polar(2.5, 0.3);
    let z = Point2::polar(3.0, 1.9);
    for which in [SymmetryComponent::H, SymmetryComponent::M, SymmetryComponent::Bi] {
        println!(
            "{}",
            check_symmetry(&kite, Wavenumber::new(1.0)?, 128, x, z, which, 1e-6)?.summary()
        );
    }
    Ok(())
}
