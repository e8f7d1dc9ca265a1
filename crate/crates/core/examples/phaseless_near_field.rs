//! Phaseless near-field data separates a kite from a circle of equal area.

use biharm::error::Result;
use biharm::geometry::{discretize, Curve};
use biharm::kernels::{Point2, Wavenumber};
use biharm::solver::Solver;
use biharm::verify::{check_phaseless, phaseless_data, Tolerances};
use std::f64::consts::PI;

fn main() -> Result<()> {
    let kappa = Wavenumber::new(1.0)?;
    let kite = Curve::kite(Point2::ORIGIN, 1.0)?;
    let area = discretize(&kite, 128)?.signed_area().abs();
    let circle = Curve::circle(Point2::ORIGIN, (area / PI).sqrt())?;
    let xi: Vec<Point2> = (0..8).map(|i| Point2::polar(3.0, 0.25 * PI * i as f64)).collect();
    let lambda: Vec<Point2> = (0..4).map(|i| Point2::polar(4.0, 0.4 + 0.5 * PI * i as f64)).collect();
    let z0 = Point2::new(-5.0, 0.5);

    let data = phaseless_data(&Solver::new(&kite, kappa, 64)?, z0, &xi, &lambda)?;
    println!("kite |v(x; z0)| at the first receivers:");
    for (x, v) in xi.iter().zip(&data.single).take(3) {
        println!("  x={x}  {v:.6e}");
    }
    println!(
        "{}",
        check_phaseless(&kite, &circle, kappa, 64, z0, &xi, &lambda, &Tolerances::default())?.summary()
    );
    Ok(())
}
