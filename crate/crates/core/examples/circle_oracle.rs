//! Plane wave on the unit circle: boundary-integral solver vs series solution.

use biharm::error::Result;
use biharm::geometry::Curve;
use biharm::incident::IncidentField;
use biharm::kernels::{Direction, Point2, Wavenumber};
use biharm::oracle::{mie_farfield, mie_solve};
use biharm::solver::{farfield_biharmonic, Solver};

fn main() -> Result<()> {
    let kappa = Wavenumber::new(1.0)?;
    let dirs = Direction::grid(360);
    let series = mie_farfield(&mie_solve(1.0, kappa, 0.0, 40)?, &dirs);
    for n in [16, 32, 64, 128] {
        let solver = Solver::new(&Curve::circle(Point2::ORIGIN, 1.0)?, kappa, n)?;
        let ts = solver.solve(&IncidentField::plane(0.0))?;
        let far = farfield_biharmonic(&ts, solver.boundary(), &dirs);
        println!(
            "n={n:<4} max |u_inf - series| = {:.3e}  (max |u_inf| = {:.4})",
            far.max_abs_diff(&series),
            series.max_abs()
        );
    }
    Ok(())
}
