//! Interior Green representation of entire solutions, evaluated directly.

use biharm::error::Result;
use biharm::geometry::{discretize, Curve};
use biharm::incident::{interior_test_traces, InteriorTestField};
use biharm::kernels::{Direction, Point2, Wavenumber};
use biharm::representation::eval_wu;

fn main() -> Result<()> {
    let kappa = Wavenumber::new(1.0)?;
    let bd = discretize(&Curve::kite(Point2::ORIGIN, 1.0)?, 64)?;
    let d = Direction::new(0.7);
    for field in [
        InteriorTestField::EntirePlane { direction: d },
        InteriorTestField::EntireModified { direction: d },
    ] {
        let data = interior_test_traces(&field, &bd, kappa);
        println!("{}", field.describe());
        for x in bd.interior_samples(4) {
            let (w, u) = eval_wu(&data, &bd, kappa, x)?;
            println!("  x={x}  |W - U - v| = {:.2e}", (w - u - field.value(kappa, x)).norm());
        }
        // outside, the same functionals cancel
        let x = Point2::new(3.0, 1.0);
        let (w, u) = eval_wu(&data, &bd, kappa, x)?;
        println!("  x={x}  |W - U| = {:.2e}", (w - u).norm());
    }
    Ok(())
}
