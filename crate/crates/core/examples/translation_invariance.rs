//! Translating the cavity multiplies the far field by a unimodular phase.

use biharm::error::Result;
use biharm::geometry::Curve;
use biharm::kernels::{Point2, Wavenumber};
use biharm::verify::check_translation_invariance;

fn main() -> Result<()> {
    let kite = Curve::kite(Point2::ORIGIN, 1.0)?;
    for h in [Point2::new(0.7, -0.3), Point2::new(-2.0, 1.5)] {
        let r = check_translation_invariance(&kite, Wavenumber::new(1.0)?, 128, h, 0.0, 1e-6, 1e-6)?;
        println!(
            "h={h}: {}  phaseless {:.2e}",
            r.summary(),
            r.details["phaseless_residual"]
        );
    }
    Ok(())
}
