//! Evaluate the fundamental solutions and their far-field constant.

use biharm::error::Result;
use biharm::kernels::{eval_g, eval_gh, eval_gm, farfield_constant, Point2, Wavenumber};

fn main() -> Result<()> {
    let kappa = Wavenumber::new(1.0)?;
    let y = Point2::ORIGIN;
    for r in [0.1, 1.0, 5.0] {
        let x = Point2::new(r, 0.0);
        println!(
            "r={r:<4} G_H={:.10} G_M={:.10} G={:.10}",
            eval_gh(kappa, x, y)?,
            eval_gm(kappa, x, y)?,
            eval_g(kappa, x, y)?
        );
    }
    println!("far-field constant gamma = {:.10}", farfield_constant(kappa));
    Ok(())
}
