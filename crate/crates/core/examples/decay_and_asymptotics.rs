//! Exponential decay of the modified part and the 1/r far-field remainder.

use biharm::error::Result;
use biharm::geometry::Curve;
use biharm::incident::IncidentField;
use biharm::kernels::{Direction, Point2, Wavenumber};
use biharm::solver::Solver;
use biharm::verify::{check_asymptotic_expansion, check_m_decay, Tolerances};

fn main() -> Result<()> {
    let tol = Tolerances::default();
    let solver = Solver::new(&Curve::circle(Point2::ORIGIN, 1.0)?, Wavenumber::new(1.0)?, 64)?;
    let ts = solver.solve(&IncidentField::plane(0.0))?;
    let xhat = Direction::new(0.0);
    let pts: Vec<Point2> = [3.0, 4.0, 5.0, 6.0].iter().map(|&r| Point2::new(r, 0.0)).collect();
    for f in solver.scattered(&ts, &pts)? {
        println!(
            "|x|={}  |u_H|={:.4e}  |u_M|={:.4e}",
            f.point.norm(),
            f.u_h.norm(),
            f.u_m.norm()
        );
    }
    println!(
        "{}",
        check_m_decay(&solver, &ts, xhat, &[3.0, 4.0, 5.0], tol.m_decay)?.summary()
    );
    let r = check_asymptotic_expansion(&solver, &ts, xhat, 50.0, &tol)?;
    println!(
        "{}  e(r)/e(2r) = {:.4}",
        r.summary(),
        r.details.get("ratio").copied().unwrap_or(f64::NAN)
    );
    Ok(())
}
