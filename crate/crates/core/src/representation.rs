//! Green representation functionals for biharmonic wave fields.
//!
//! For Cauchy data `(v, ∂_n v, Pv, Qv)` with `P = Δ`, `Q = −∂_n Δ`:
//!
//! ```text
//! W(x) = ∮ { P_yG(x,y) ∂_n v(y) + Q_yG(x,y) v(y) } ds(y)
//! U(x) = ∮ { G(x,y) Qv(y) + ∂G(x,y)/∂n(y) Pv(y) } ds(y)
//! ```
//!
//! A field solving `Δ²v = κ⁴v` inside D equals `W − U` there; a radiating
//! field outside D equals `U − W` there. Both vanish on the other side.

use crate::error::{Error, Result};
use crate::geometry::DiscreteBoundary;
use crate::kernels::{pq_from_radial, Complex, Direction, Point2, Radial, Wavenumber};
use crate::solver::{eval_scattered, TraceSolution};
use rayon::prelude::*;

/// Nodal values of `v`, `∂_n v`, `Pv = Δv` and `Qv = −∂_n Δv`.
#[derive(Clone, Debug, PartialEq)]
pub struct CauchyData4 {
    pub v: Vec<Complex>,
    pub dn_v: Vec<Complex>,
    pub pv: Vec<Complex>,
    pub qv: Vec<Complex>,
}

impl CauchyData4 {
    pub fn zeros(len: usize) -> Self {
        let z = vec![Complex::new(0.0, 0.0); len];
        CauchyData4 {
            v: z.clone(),
            dn_v: z.clone(),
            pv: z.clone(),
            qv: z,
        }
    }

    pub fn new(v: Vec<Complex>, dn_v: Vec<Complex>, pv: Vec<Complex>, qv: Vec<Complex>) -> Result<Self> {
        for other in [&dn_v, &pv, &qv] {
            if other.len() != v.len() {
                return Err(Error::LengthMismatch {
                    expected: v.len(),
                    found: other.len(),
                });
            }
        }
        Ok(CauchyData4 { v, dn_v, pv, qv })
    }

    /// Scattered-field data of a solved problem:
    /// `Pv = κ²(f1 − 2a)`, `Qv = −κ²(f2 − 2b)`.
    pub fn from_traces(ts: &TraceSolution) -> Self {
        CauchyData4 {
            v: ts.f1.clone(),
            dn_v: ts.f2.clone(),
            pv: ts.laplacian(),
            qv: ts.dn_laplacian().into_iter().map(|q| -q).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }
}

fn check_off_boundary(data: &CauchyData4, bd: &DiscreteBoundary, x: Point2) -> Result<()> {
    if data.len() != bd.len() {
        return Err(Error::LengthMismatch {
            expected: bd.len(),
            found: data.len(),
        });
    }
    let minimum = 1e-10 * bd.curve().scale();
    let distance = bd.distance(x);
    if distance <= minimum {
        return Err(Error::TooCloseToBoundary {
            point: x,
            distance,
            minimum,
        });
    }
    Ok(())
}

fn wu_unchecked(data: &CauchyData4, bd: &DiscreteBoundary, kappa: Wavenumber, x: Point2) -> (Complex, Complex) {
    let k = kappa.get();
    let mut w = Complex::new(0.0, 0.0);
    let mut u = Complex::new(0.0, 0.0);
    for (j, node) in bd.nodes().iter().enumerate() {
        let d = node.point - x;
        let r = d.norm();
        let rad = Radial::at(k, r);
        let cos = node.normal.dot(d) / r;
        let (p, q) = pq_from_radial(&rad, cos);
        let weight = bd.weight(j);
        w += (p * data.dn_v[j] + q * data.v[j]) * weight;
        u += (rad.g * data.qv[j] + rad.dg * cos * data.pv[j]) * weight;
    }
    (w, u)
}

/// `(W(x), U(x))` in one pass over the nodes.
pub fn eval_wu(data: &CauchyData4, bd: &DiscreteBoundary, kappa: Wavenumber, x: Point2) -> Result<(Complex, Complex)> {
    check_off_boundary(data, bd, x)?;
    Ok(wu_unchecked(data, bd, kappa, x))
}

/// `W(v, ∂_n v)` at `x`.
pub fn eval_w(data: &CauchyData4, bd: &DiscreteBoundary, kappa: Wavenumber, x: Point2) -> Result<Complex> {
    eval_wu(data, bd, kappa, x).map(|(w, _)| w)
}

/// `U(Pv, Qv)` at `x`.
pub fn eval_u(data: &CauchyData4, bd: &DiscreteBoundary, kappa: Wavenumber, x: Point2) -> Result<Complex> {
    eval_wu(data, bd, kappa, x).map(|(_, u)| u)
}

/// `(W, U)` at many points, in parallel.
pub fn eval_wu_many(
    data: &CauchyData4,
    bd: &DiscreteBoundary,
    kappa: Wavenumber,
    points: &[Point2],
) -> Result<Vec<(Complex, Complex)>> {
    for &x in points {
        check_off_boundary(data, bd, x)?;
    }
    Ok(points.par_iter().map(|&x| wu_unchecked(data, bd, kappa, x)).collect())
}

/// Minimum radius for `asymptotic_extract`, in multiples of the shape reach.
pub const MIN_ASYMPTOTIC_RADIUS: f64 = 10.0;

/// `√r e^{−iκr} u^s(r x̂)` for each radius, to compare with `u^∞(x̂)`.
pub fn asymptotic_extract(
    ts: &TraceSolution,
    bd: &DiscreteBoundary,
    xhat: Direction,
    radii: &[f64],
) -> Result<Vec<Complex>> {
    let minimum = MIN_ASYMPTOTIC_RADIUS * bd.curve().reach();
    if let Some(&r) = radii.iter().find(|&&r| !(r >= minimum)) {
        return Err(Error::invalid(
            "radius",
            format!("{r} is below the asymptotic minimum {minimum}"),
        ));
    }
    let k = ts.kappa.get();
    let points: Vec<Point2> = radii.iter().map(|&r| xhat.unit() * r).collect();
    let fields = eval_scattered(ts, bd, &points)?;
    Ok(radii
        .iter()
        .zip(fields)
        .map(|(&r, f)| f.u * Complex::from_polar(r.sqrt(), -k * r))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{discretize, Curve};
    use crate::incident::{interior_test_traces, IncidentField, InteriorTestField};
    use crate::solver::{farfield_h, Solver};

    fn k(v: f64) -> Wavenumber {
        Wavenumber::new(v).unwrap()
    }

    fn kite(n: usize) -> DiscreteBoundary {
        discretize(&Curve::kite(Point2::ORIGIN, 1.0).unwrap(), n).unwrap()
    }

    fn plane_data(bd: &DiscreteBoundary, kappa: Wavenumber) -> CauchyData4 {
        let f = InteriorTestField::EntirePlane {
            direction: Direction::new(0.4),
        };
        interior_test_traces(&f, bd, kappa)
    }

    #[test]
    fn zero_data_gives_zero() {
        let bd = kite(32);
        let (w, u) = eval_wu(&CauchyData4::zeros(bd.len()), &bd, k(1.0), Point2::new(0.1, 0.2)).unwrap();
        assert_eq!((w, u), (Complex::new(0.0, 0.0), Complex::new(0.0, 0.0)));
    }

    #[test]
    fn functionals_are_linear() {
        let bd = kite(32);
        let kappa = k(1.3);
        let d1 = plane_data(&bd, kappa);
        let d2 = interior_test_traces(
            &InteriorTestField::EntireModified {
                direction: Direction::new(-1.0),
            },
            &bd,
            kappa,
        );
        let c = Complex::new(0.3, -2.0);
        let comb = |a: &[Complex], b: &[Complex]| a.iter().zip(b).map(|(x, y)| x + c * y).collect::<Vec<_>>();
        let sum = CauchyData4::new(
            comb(&d1.v, &d2.v),
            comb(&d1.dn_v, &d2.dn_v),
            comb(&d1.pv, &d2.pv),
            comb(&d1.qv, &d2.qv),
        )
        .unwrap();
        let x = Point2::new(2.5, -1.0);
        let (w1, u1) = eval_wu(&d1, &bd, kappa, x).unwrap();
        let (w2, u2) = eval_wu(&d2, &bd, kappa, x).unwrap();
        let (w, u) = eval_wu(&sum, &bd, kappa, x).unwrap();
        assert!((w - w1 - c * w2).norm() < 1e-13 * w.norm().max(1.0));
        assert!((u - u1 - c * u2).norm() < 1e-13 * u.norm().max(1.0));
    }

    #[test]
    fn u_only_sees_the_higher_order_traces() {
        let bd = kite(32);
        let mut data = plane_data(&bd, k(1.0));
        data.pv
            .iter_mut()
            .chain(data.qv.iter_mut())
            .for_each(|z| *z = Complex::new(0.0, 0.0));
        let (w, u) = eval_wu(&data, &bd, k(1.0), Point2::new(0.0, 0.3)).unwrap();
        assert_eq!(u, Complex::new(0.0, 0.0));
        assert!(w.norm() > 1e-3);
    }

    #[test]
    fn entire_field_reproduced_inside_and_annihilated_outside() {
        let bd = discretize(&Curve::circle(Point2::ORIGIN, 1.0).unwrap(), 64).unwrap();
        let kappa = k(1.0);
        let f = InteriorTestField::EntirePlane {
            direction: Direction::new(0.0),
        };
        let data = interior_test_traces(&f, &bd, kappa);
        let x = Point2::new(0.2, 0.1);
        let (w, u) = eval_wu(&data, &bd, kappa, x).unwrap();
        assert!((w - u - f.value(kappa, x)).norm() < 1e-10);
        let outside = eval_wu_many(&data, &bd, kappa, &[Point2::new(2.0, 0.5), Point2::new(-3.0, 0.0)]).unwrap();
        for (w, u) in outside {
            assert!((u - w).norm() < 1e-10);
        }
    }

    #[test]
    fn boundary_points_and_bad_lengths_are_rejected() {
        let bd = kite(32);
        let data = plane_data(&bd, k(1.0));
        let on = bd.nodes()[5].point;
        assert!(matches!(
            eval_w(&data, &bd, k(1.0), on),
            Err(Error::TooCloseToBoundary { .. })
        ));
        assert!(matches!(
            eval_u(&CauchyData4::zeros(3), &bd, k(1.0), Point2::ORIGIN),
            Err(Error::LengthMismatch { expected, found: 3 }) if expected == bd.len()
        ));
        assert!(CauchyData4::new(vec![Complex::new(0.0, 0.0); 2], vec![], vec![], vec![]).is_err());
    }

    #[test]
    fn asymptotic_extract_approaches_far_field() {
        let solver = Solver::new(&Curve::circle(Point2::ORIGIN, 1.0).unwrap(), k(1.0), 64).unwrap();
        let bd = solver.boundary();
        let xhat = Direction::new(0.3);
        let zero = TraceSolution::zeros(k(1.0), bd.len());
        assert!(asymptotic_extract(&zero, bd, xhat, &[20.0]).unwrap()[0].norm() == 0.0);
        let ts = solver.solve(&IncidentField::plane(0.0)).unwrap();
        let far = farfield_h(&ts, bd, &[xhat]).values[0];
        let v = asymptotic_extract(&ts, bd, xhat, &[100.0, 200.0, 1600.0]).unwrap();
        let e: Vec<f64> = v.iter().map(|z| (z - far).norm()).collect();
        // remainder is O(1/r)
        assert!((e[0] / e[1] - 2.0).abs() < 0.1, "{e:?}");
        assert!(e[2] < e[0] / 10.0);
        assert!(asymptotic_extract(&ts, bd, xhat, &[5.0]).is_err());
    }
}
