//! Far-field differences under successive refinement of the kite.

use biharm::error::Result;
use biharm::geometry::Curve;
use biharm::kernels::{Point2, Wavenumber};
use biharm::verify::check_self_convergence;

fn main() -> Result<()> {
    let kite = Curve::kite(Point2::ORIGIN, 1.0)?;
    for base in [16, 32] {
        let r = check_self_convergence(&kite, Wavenumber::new(1.0)?, base, 0.0, 1e-2)?;
        println!(
            "n={base}: d(n,2n)={:.2e}  d(2n,4n)={:.2e}  {}",
            r.details["difference_n_2n"],
            r.details["difference_2n_4n"],
            r.summary()
        );
    }
    Ok(())
}
