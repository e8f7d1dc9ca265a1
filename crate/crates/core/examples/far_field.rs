//! Far-field pattern of a kite for an incident plane wave.

use biharm::error::Result;
use biharm::geometry::Curve;
use biharm::incident::IncidentField;
use biharm::kernels::{Direction, Point2, Wavenumber};
use biharm::solver::Solver;
use biharm::verify::farfield_equivalence_residual;

fn main() -> Result<()> {
    let solver = Solver::new(&Curve::kite(Point2::ORIGIN, 1.0)?, Wavenumber::new(2.0)?, 64)?;
    let ts = solver.solve(&IncidentField::plane(0.0))?;
    let dirs = Direction::grid(12);
    let far = solver.farfield(&ts, &dirs);
    for (d, v) in far.directions.iter().zip(&far.values) {
        println!("theta={:7.4}  u_inf={:+.8}  |u_inf|={:.8}", d.theta(), v, v.norm());
    }
    // the biharmonic pattern equals the Helmholtz-part pattern of u_H
    println!(
        "condition {:.2e}, pattern equivalence residual {:.2e}",
        solver.condition(),
        farfield_equivalence_residual(&ts, solver.boundary(), &Direction::grid(360))
    );
    Ok(())
}
