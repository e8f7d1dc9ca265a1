//! Nyström solver for the clamped cavity.
//!
//! The scattered field splits as `u^s = u^s_H + u^s_M` with a radiating
//! Helmholtz part and an exponentially decaying modified-Helmholtz part. On Γ
//! the clamped conditions couple them through `u_M = f1 − u_H` and
//! `∂_n u_M = f2 − ∂_n u_H`. Taking boundary traces of the Green
//! representations of both parts gives, for `a = u_H|Γ` and `b = ∂_n u_H|Γ`,
//!
//! ```text
//! (I/2 − K_H) a + S_H b = 0
//! (I/2 − K_M) a + S_M b = (I/2 − K_M) f1 + S_M f2
//! ```
//!
//! with `S` the single layer `∫ G φ ds` and `K` the double layer
//! `∫ ∂G/∂n(y) φ ds`. Both are discretised with the logarithmic-splitting
//! trigonometric quadrature on `2n` equispaced parameter nodes.

use crate::bessel::{self, EULER_GAMMA};
use crate::error::{Error, Result};
use crate::geometry::{discretize, Curve, DiscreteBoundary};
use crate::incident::{boundary_data, BoundaryData, IncidentField};
use crate::kernels::{farfield_constant, farfield_plane_kernel, Complex, Direction, Point2, Radial, Wavenumber};
use crate::linalg::DenseLu;
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Systems whose condition estimate exceeds this are rejected.
pub const MAX_CONDITION: f64 = 1e12;

/// Minimum evaluation distance from Γ, relative to the shape scale.
pub const MIN_EVAL_DISTANCE: f64 = 0.05;

/// Discretised single- and double-layer operators of both kernels.
#[derive(Clone, Debug)]
pub struct BoundaryOperators {
    pub kappa: Wavenumber,
    pub s_h: DMatrix<Complex>,
    pub k_h: DMatrix<Complex>,
    pub s_m: DMatrix<Complex>,
    pub k_m: DMatrix<Complex>,
}

impl BoundaryOperators {
    pub fn dim(&self) -> usize {
        self.s_h.nrows()
    }
}

/// Weights `R_j(t_i)` of the log quadrature, indexed by `(i − j) mod 2n`.
fn log_weights(n: usize) -> Vec<f64> {
    let nf = n as f64;
    (0..2 * n)
        .map(|k| {
            let mut s = 0.0;
            for m in 1..n {
                s += (m as f64 * k as f64 * PI / nf).cos() / m as f64;
            }
            let alt = if k % 2 == 0 { 1.0 } else { -1.0 };
            -2.0 * PI / nf * s - PI / (nf * nf) * alt
        })
        .collect()
}

/// Assembles `S_H`, `K_H`, `S_M`, `K_M` on the node grid.
pub fn assemble(bd: &DiscreteBoundary, kappa: Wavenumber) -> BoundaryOperators {
    let n = bd.n();
    let m = bd.len();
    let k = kappa.get();
    let weights = log_weights(n);
    let h = PI / n as f64;
    let nodes = bd.nodes();
    let quarter_i = Complex::new(0.0, 0.25);
    let inv4pi = 1.0 / (4.0 * PI);

    let rows: Vec<[Vec<Complex>; 4]> = (0..m)
        .into_par_iter()
        .map(|i| {
            let xi = &nodes[i];
            let mut s_h = vec![Complex::new(0.0, 0.0); m];
            let mut k_h = s_h.clone();
            let mut s_m = s_h.clone();
            let mut k_m = s_h.clone();
            for j in 0..m {
                let yj = &nodes[j];
                let speed = yj.speed;
                let r_w = weights[(i + m - j) % m];
                if i == j {
                    let log_term = (0.5 * k * speed).ln() + EULER_GAMMA;
                    let sh1 = -inv4pi * speed;
                    let sh2 = (quarter_i - log_term / (2.0 * PI)) * speed;
                    s_h[j] = sh1 * r_w + sh2 * h;
                    let sm1 = -inv4pi * speed;
                    let sm2 = -log_term / (2.0 * PI) * speed;
                    s_m[j] = Complex::new(sm1 * r_w + sm2 * h, 0.0);
                    let diag = -inv4pi * yj.curvature * speed;
                    k_h[j] = Complex::new(diag * h, 0.0);
                    k_m[j] = Complex::new(diag * h, 0.0);
                    continue;
                }
                let diff = yj.point - xi.point;
                let r = diff.norm();
                let t = k * r;
                let log_sin = (4.0 * (0.5 * (xi.t - yj.t)).sin().powi(2)).ln();
                // ν·(y − x) / r with ν = n(y)|x'(τ)|
                let cos_nu = yj.normal.dot(diff) * speed / r;

                let jy = bessel::jy01(t);
                let (i0, i1) = bessel::i01(t);
                let (k0, k1) = bessel::k01(t);

                let sh = quarter_i * jy.h0() * speed;
                let sh1 = -inv4pi * jy.j0 * speed;
                s_h[j] = sh1 * r_w + (sh - sh1 * log_sin) * h;

                let kh = -quarter_i * k * jy.h1() * cos_nu;
                let kh1 = inv4pi * k * jy.j1 * cos_nu;
                k_h[j] = kh1 * r_w + (kh - kh1 * log_sin) * h;

                let sm = k0 / (2.0 * PI) * speed;
                let sm1 = -inv4pi * i0 * speed;
                s_m[j] = Complex::new(sm1 * r_w + (sm - sm1 * log_sin) * h, 0.0);

                let km = -k * k1 / (2.0 * PI) * cos_nu;
                let km1 = -inv4pi * k * i1 * cos_nu;
                k_m[j] = Complex::new(km1 * r_w + (km - km1 * log_sin) * h, 0.0);
            }
            [s_h, k_h, s_m, k_m]
        })
        .collect();

    let build = |which: usize| DMatrix::from_fn(m, m, |i, j| rows[i][which][j]);
    BoundaryOperators {
        kappa,
        s_h: build(0),
        k_h: build(1),
        s_m: build(2),
        k_m: build(3),
    }
}

fn system_matrix(ops: &BoundaryOperators) -> DMatrix<Complex> {
    let m = ops.dim();
    let half = Complex::new(0.5, 0.0);
    DMatrix::from_fn(2 * m, 2 * m, |i, j| {
        let (bi, ii) = (i / m, i % m);
        let (bj, jj) = (j / m, j % m);
        let id = if ii == jj { half } else { Complex::new(0.0, 0.0) };
        match (bi, bj) {
            (0, 0) => id - ops.k_h[(ii, jj)],
            (0, _) => ops.s_h[(ii, jj)],
            (_, 0) => id - ops.k_m[(ii, jj)],
            _ => ops.s_m[(ii, jj)],
        }
    })
}

/// Boundary traces of the scattered field.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceSolution {
    pub kappa: Wavenumber,
    /// `u^s|Γ = −u^i|Γ`.
    pub f1: Vec<Complex>,
    /// `∂_n u^s|Γ = −∂_n u^i|Γ`.
    pub f2: Vec<Complex>,
    /// `u^s_H|Γ`.
    pub a: Vec<Complex>,
    /// `∂_n u^s_H|Γ`.
    pub b: Vec<Complex>,
}

impl TraceSolution {
    pub fn zeros(kappa: Wavenumber, len: usize) -> Self {
        let z = vec![Complex::new(0.0, 0.0); len];
        TraceSolution {
            kappa,
            f1: z.clone(),
            f2: z.clone(),
            a: z.clone(),
            b: z,
        }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// `u^s_M|Γ = f1 − a`.
    pub fn u_m(&self) -> Vec<Complex> {
        self.f1.iter().zip(&self.a).map(|(f, a)| f - a).collect()
    }

    /// `∂_n u^s_M|Γ = f2 − b`.
    pub fn dn_u_m(&self) -> Vec<Complex> {
        self.f2.iter().zip(&self.b).map(|(f, b)| f - b).collect()
    }

    /// `Δu^s|Γ = κ²(f1 − 2a)`.
    pub fn laplacian(&self) -> Vec<Complex> {
        let k2 = self.kappa.get().powi(2);
        self.f1.iter().zip(&self.a).map(|(f, a)| (f - a * 2.0) * k2).collect()
    }

    /// `∂_n Δu^s|Γ = κ²(f2 − 2b)`.
    pub fn dn_laplacian(&self) -> Vec<Complex> {
        let k2 = self.kappa.get().powi(2);
        self.f2.iter().zip(&self.b).map(|(f, b)| (f - b * 2.0) * k2).collect()
    }
}

/// Solves the trace system once with a fresh factorisation.
pub fn solve_traces(ops: &BoundaryOperators, data: &BoundaryData) -> Result<TraceSolution> {
    let lu = factorize(ops)?;
    solve_with(ops, &lu, data)
}

fn factorize(ops: &BoundaryOperators) -> Result<(DenseLu, f64)> {
    let lu = DenseLu::new(system_matrix(ops));
    let condition = lu.condition_estimate();
    if !(condition <= MAX_CONDITION) {
        return Err(Error::IllConditioned {
            kappa: ops.kappa.get(),
            condition,
        });
    }
    Ok((lu, condition))
}

fn solve_with(ops: &BoundaryOperators, (lu, condition): &(DenseLu, f64), data: &BoundaryData) -> Result<TraceSolution> {
    let m = ops.dim();
    if data.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            found: data.len(),
        });
    }
    let f1 = DVector::from_column_slice(&data.f1);
    let f2 = DVector::from_column_slice(&data.f2);
    let rhs_m = &f1 * Complex::new(0.5, 0.0) - &ops.k_m * &f1 + &ops.s_m * &f2;
    let mut rhs = DVector::zeros(2 * m);
    rhs.rows_mut(m, m).copy_from(&rhs_m);
    let x = lu.solve(&rhs).ok_or(Error::IllConditioned {
        kappa: ops.kappa.get(),
        condition: *condition,
    })?;
    Ok(TraceSolution {
        kappa: ops.kappa,
        f1: data.f1.clone(),
        f2: data.f2.clone(),
        a: x.rows(0, m).iter().copied().collect(),
        b: x.rows(m, m).iter().copied().collect(),
    })
}

/// Assembled and factorised solver for one cavity and wavenumber; reusable
/// across incident fields.
pub struct Solver {
    bd: DiscreteBoundary,
    ops: BoundaryOperators,
    lu: (DenseLu, f64),
}

impl Solver {
    pub fn new(curve: &Curve, kappa: Wavenumber, n: usize) -> Result<Solver> {
        Solver::from_boundary(discretize(curve, n)?, kappa)
    }

    pub fn from_boundary(bd: DiscreteBoundary, kappa: Wavenumber) -> Result<Solver> {
        let ops = assemble(&bd, kappa);
        let lu = factorize(&ops)?;
        Ok(Solver { bd, ops, lu })
    }

    pub fn boundary(&self) -> &DiscreteBoundary {
        &self.bd
    }

    pub fn kappa(&self) -> Wavenumber {
        self.ops.kappa
    }

    pub fn operators(&self) -> &BoundaryOperators {
        &self.ops
    }

    /// 1-norm condition estimate of the trace system.
    pub fn condition(&self) -> f64 {
        self.lu.1
    }

    pub fn solve(&self, inc: &IncidentField) -> Result<TraceSolution> {
        let data = boundary_data(inc, &self.bd, self.kappa())?;
        self.solve_data(&data)
    }

    pub fn solve_data(&self, data: &BoundaryData) -> Result<TraceSolution> {
        solve_with(&self.ops, &self.lu, data)
    }

    pub fn scattered(&self, ts: &TraceSolution, points: &[Point2]) -> Result<Vec<FieldValue>> {
        eval_scattered(ts, &self.bd, points)
    }

    pub fn farfield(&self, ts: &TraceSolution, dirs: &[Direction]) -> FarField {
        farfield_h(ts, &self.bd, dirs)
    }
}

/// Scattered field components at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldValue {
    pub point: Point2,
    pub u_h: Complex,
    pub u_m: Complex,
    pub u: Complex,
    pub lap_u: Complex,
}

/// Rejects points inside the cavity or within `MIN_EVAL_DISTANCE · scale` of Γ.
pub fn check_evaluation_point(bd: &DiscreteBoundary, x: Point2) -> Result<()> {
    if bd.contains(x) {
        return Err(Error::InteriorPoint { point: x });
    }
    let minimum = MIN_EVAL_DISTANCE * bd.curve().scale();
    let distance = bd.distance(x);
    if distance < minimum {
        return Err(Error::TooCloseToBoundary {
            point: x,
            distance,
            minimum,
        });
    }
    Ok(())
}

/// Scattered field at exterior points from the Green representations of
/// both components.
pub fn eval_scattered(ts: &TraceSolution, bd: &DiscreteBoundary, points: &[Point2]) -> Result<Vec<FieldValue>> {
    if ts.len() != bd.len() {
        return Err(Error::LengthMismatch {
            expected: bd.len(),
            found: ts.len(),
        });
    }
    for &x in points {
        check_evaluation_point(bd, x)?;
    }
    let k = ts.kappa.get();
    let u_m = ts.u_m();
    let dn_u_m = ts.dn_u_m();
    Ok(points
        .par_iter()
        .map(|&x| {
            let mut u_h = Complex::new(0.0, 0.0);
            let mut um = Complex::new(0.0, 0.0);
            for (j, node) in bd.nodes().iter().enumerate() {
                let d = node.point - x;
                let r = d.norm();
                let rad = Radial::at(k, r);
                let cos = node.normal.dot(d) / r;
                let w = bd.weight(j);
                u_h += (ts.a[j] * (rad.dgh * cos) - ts.b[j] * rad.gh) * w;
                um += (u_m[j] * (rad.dgm * cos) - dn_u_m[j] * rad.gm) * w;
            }
            FieldValue {
                point: x,
                u_h,
                u_m: um,
                u: u_h + um,
                lap_u: (um - u_h) * (k * k),
            }
        })
        .collect())
}

/// Complex far-field samples on a direction grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FarField {
    pub directions: Vec<Direction>,
    pub values: Vec<Complex>,
}

impl FarField {
    /// Largest pointwise modulus of the difference.
    pub fn max_abs_diff(&self, other: &FarField) -> f64 {
        assert_eq!(self.values.len(), other.values.len(), "far fields on different grids");
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// `γ ∮ {a ∂_n e − e b} ds` with `e = e^{−iκ x̂·y}` and `γ = e^{iπ/4}/√(8κπ)`.
pub fn farfield_h(ts: &TraceSolution, bd: &DiscreteBoundary, dirs: &[Direction]) -> FarField {
    farfield_integral(ts.kappa, bd, dirs, |j, e, dn_e| ts.a[j] * dn_e - e * ts.b[j])
}

/// Far field from the full biharmonic traces `(u, ∂_n u, Δu, ∂_n Δu)`:
/// `γ/2 ∮ {u ∂_n e − e ∂_n u} ds − γ/(2κ²) ∮ {Δu ∂_n e − e ∂_n Δu} ds`.
pub fn farfield_biharmonic(ts: &TraceSolution, bd: &DiscreteBoundary, dirs: &[Direction]) -> FarField {
    let k2 = ts.kappa.get().powi(2);
    let lap = ts.laplacian();
    let dn_lap = ts.dn_laplacian();
    farfield_integral(ts.kappa, bd, dirs, |j, e, dn_e| {
        (ts.f1[j] * dn_e - e * ts.f2[j]) * 0.5 - (lap[j] * dn_e - e * dn_lap[j]) / (2.0 * k2)
    })
}

fn farfield_integral<F>(kappa: Wavenumber, bd: &DiscreteBoundary, dirs: &[Direction], integrand: F) -> FarField
where
    F: Fn(usize, Complex, Complex) -> Complex + Sync,
{
    let gamma = farfield_constant(kappa);
    let values = dirs
        .par_iter()
        .map(|&d| {
            let mut s = Complex::new(0.0, 0.0);
            for (j, node) in bd.nodes().iter().enumerate() {
                let (e, dn_e) = farfield_plane_kernel(kappa, d, node.point, node.normal);
                s += integrand(j, e, dn_e) * bd.weight(j);
            }
            gamma * s
        })
        .collect();
    FarField {
        directions: dirs.to_vec(),
        values,
    }
}

/// Plane-wave scattering on a fresh solver: traces and far field on `dirs`.
pub fn plane_wave_farfield(
    curve: &Curve,
    kappa: Wavenumber,
    n: usize,
    theta_d: f64,
    dirs: &[Direction],
) -> Result<FarField> {
    let solver = Solver::new(curve, kappa, n)?;
    let ts = solver.solve(&IncidentField::plane(theta_d))?;
    Ok(solver.farfield(&ts, dirs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::{bessel_j_seq, bessel_y_seq};
    use crate::kernels::{dn_y_kernel, eval_g, eval_gh, KernelKind};
    use crate::oracle::{mie_farfield, mie_solve};
    use std::f64::consts::PI;

    fn k(v: f64) -> Wavenumber {
        Wavenumber::new(v).unwrap()
    }

    fn circle() -> Curve {
        Curve::circle(Point2::ORIGIN, 1.0).unwrap()
    }

    fn kite() -> Curve {
        Curve::kite(Point2::ORIGIN, 1.0).unwrap()
    }

    fn apply(m: &DMatrix<Complex>, v: &[Complex]) -> Vec<Complex> {
        (m * DVector::from_column_slice(v)).iter().copied().collect()
    }

    fn max_diff(a: &[Complex], b: &[Complex]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn circle_matches_series_solution() {
        let dirs = Direction::grid(360);
        let exact = mie_farfield(&mie_solve(1.0, k(1.0), 0.0, 40).unwrap(), &dirs);
        for n in [16, 64, 128] {
            let ff = plane_wave_farfield(&circle(), k(1.0), n, 0.0, &dirs).unwrap();
            assert!(ff.max_abs_diff(&exact) < 1e-12, "n={n}: {:e}", ff.max_abs_diff(&exact));
        }
    }

    #[test]
    fn kite_manufactured_solution() {
        let kk = k(2.0);
        let solver = Solver::new(&kite(), kk, 128).unwrap();
        let bd = solver.boundary();
        let z = bd.centroid();
        let f1: Vec<Complex> = bd.nodes().iter().map(|nd| eval_g(kk, nd.point, z).unwrap()).collect();
        let f2: Vec<Complex> = bd
            .nodes()
            .iter()
            .map(|nd| dn_y_kernel(KernelKind::Biharmonic, kk, z, nd.point, nd.normal).unwrap())
            .collect();
        let ts = solver.solve_data(&BoundaryData::new(f1, f2).unwrap()).unwrap();
        for (j, nd) in bd.nodes().iter().enumerate() {
            let exact = -eval_gh(kk, nd.point, z).unwrap() / 8.0;
            assert!((ts.a[j] - exact).norm() <= 1e-6 * exact.norm());
        }
        for v in solver.scattered(&ts, &bd.exterior_samples(20)).unwrap() {
            let exact = eval_g(kk, v.point, z).unwrap();
            assert!((v.u - exact).norm() <= 1e-6 * exact.norm());
            assert!((v.lap_u - (v.u_m - v.u_h) * 4.0).norm() < 1e-15);
        }
    }

    #[test]
    fn single_layer_symbol_on_the_circle() {
        let bd = discretize(&circle(), 64).unwrap();
        let ops = assemble(&bd, k(1.0));
        let j = bessel_j_seq(5, 1.0);
        let y = bessel_y_seq(5, 1.0);
        for m in -5i32..=5 {
            let a = m.unsigned_abs() as usize;
            let symbol = Complex::new(0.0, PI / 2.0) * j[a] * Complex::new(j[a], y[a]);
            let density: Vec<Complex> = bd
                .nodes()
                .iter()
                .map(|nd| Complex::from_polar(1.0, m as f64 * nd.t))
                .collect();
            let image = apply(&ops.s_h, &density);
            let expected: Vec<Complex> = density.iter().map(|d| d * symbol).collect();
            assert!(max_diff(&image, &expected) < 1e-8, "m={m}");
        }
    }

    #[test]
    fn single_layers_are_symmetric_after_speed_reweighting() {
        let bd = discretize(&kite(), 32).unwrap();
        let ops = assemble(&bd, k(1.0));
        let speed: Vec<f64> = bd.nodes().iter().map(|nd| nd.speed).collect();
        for m in [&ops.s_h, &ops.s_m] {
            for i in 0..bd.len() {
                for j in 0..i {
                    let a = m[(i, j)] / speed[j];
                    let b = m[(j, i)] / speed[i];
                    assert!((a - b).norm() <= 1e-10 * a.norm().max(1e-3));
                }
            }
        }
    }

    #[test]
    fn operators_converge_on_a_smooth_density() {
        let coarse = discretize(&kite(), 64).unwrap();
        let fine = discretize(&kite(), 128).unwrap();
        let density = |bd: &DiscreteBoundary| -> Vec<Complex> {
            bd.nodes()
                .iter()
                .map(|nd| Complex::new(nd.t.cos().exp(), (2.0 * nd.t).sin()))
                .collect()
        };
        let (oc, of) = (assemble(&coarse, k(1.0)), assemble(&fine, k(1.0)));
        let pairs = [
            (&oc.s_h, &of.s_h),
            (&oc.k_h, &of.k_h),
            (&oc.s_m, &of.s_m),
            (&oc.k_m, &of.k_m),
        ];
        for (mc, mf) in pairs {
            let a = apply(mc, &density(&coarse));
            let b = apply(mf, &density(&fine));
            let b_on_coarse: Vec<Complex> = b.iter().step_by(2).copied().collect();
            assert!(max_diff(&a, &b_on_coarse) < 1e-9, "{:e}", max_diff(&a, &b_on_coarse));
        }
    }

    #[test]
    fn zero_data_gives_zero_traces() {
        let solver = Solver::new(&kite(), k(1.0), 32).unwrap();
        let ts = solver
            .solve_data(&BoundaryData::zeros(solver.boundary().len()))
            .unwrap();
        assert!(ts.a.iter().chain(&ts.b).all(|v| *v == Complex::new(0.0, 0.0)));
        let zero = TraceSolution::zeros(k(1.0), solver.boundary().len());
        for v in solver.scattered(&zero, &[Point2::new(3.0, 1.0)]).unwrap() {
            assert_eq!(
                (v.u, v.u_h, v.u_m, v.lap_u),
                (zero.a[0], zero.a[0], zero.a[0], zero.a[0])
            );
        }
        assert_eq!(
            farfield_biharmonic(&zero, solver.boundary(), &Direction::grid(8)).max_abs(),
            0.0
        );
    }

    #[test]
    fn traces_are_linear_in_the_data() {
        let solver = Solver::new(&kite(), k(1.0), 32).unwrap();
        let bd = solver.boundary();
        let f = boundary_data(&IncidentField::plane(0.3), bd, k(1.0)).unwrap();
        let g = boundary_data(
            &IncidentField::PointSourceBi {
                z: Point2::new(0.0, 3.0),
            },
            bd,
            k(1.0),
        )
        .unwrap();
        let (tf, tg, tfg) = (
            solver.solve_data(&f).unwrap(),
            solver.solve_data(&g).unwrap(),
            solver.solve_data(&(&f + &g)).unwrap(),
        );
        // rounding is amplified by the condition number (about 3e5 here)
        let scale = |v: &[Complex]| v.iter().map(|x| x.norm()).fold(0.0, f64::max);
        let sum: Vec<Complex> = tf.a.iter().zip(&tg.a).map(|(x, y)| x + y).collect();
        assert!(max_diff(&tfg.a, &sum) < 1e-11 * scale(&tfg.a));
        let sum: Vec<Complex> = tf.b.iter().zip(&tg.b).map(|(x, y)| x + y).collect();
        assert!(max_diff(&tfg.b, &sum) < 1e-11 * scale(&tfg.b));
        // doubling the data doubles the far field
        let dirs = Direction::grid(16);
        let doubled = solver.solve_data(&f.scaled(Complex::new(2.0, 0.0))).unwrap();
        let one = farfield_biharmonic(&tf, bd, &dirs);
        let two = farfield_biharmonic(&doubled, bd, &dirs);
        for (a, b) in one.values.iter().zip(&two.values) {
            assert!((b - a * 2.0).norm() < 1e-13);
        }
    }

    #[test]
    fn coupled_boundary_conditions_hold_on_the_traces() {
        let solver = Solver::new(&kite(), k(1.0), 32).unwrap();
        let ts = solver.solve(&IncidentField::plane(1.0)).unwrap();
        let eps = 4.0 * f64::EPSILON;
        for ((a, um), f1) in ts.a.iter().zip(ts.u_m()).zip(&ts.f1) {
            assert!((a + um - f1).norm() <= eps * a.norm().max(f1.norm()));
        }
        for ((b, dum), f2) in ts.b.iter().zip(ts.dn_u_m()).zip(&ts.f2) {
            assert!((b + dum - f2).norm() <= eps * b.norm().max(f2.norm()));
        }
    }

    #[test]
    fn plane_wave_far_field_reciprocity() {
        let solver = Solver::new(&kite(), k(1.0), 64).unwrap();
        let pairs = [(0.3, 2.0), (1.2, 4.5), (0.0, 3.0)];
        for (theta_x, theta_d) in pairs {
            let forward = solver.solve(&IncidentField::plane(theta_d)).unwrap();
            let lhs = solver.farfield(&forward, &[Direction::new(theta_x)]).values[0];
            let backward = solver.solve(&IncidentField::plane(theta_x + PI)).unwrap();
            let rhs = solver.farfield(&backward, &[Direction::new(theta_d + PI)]).values[0];
            assert!((lhs - rhs).norm() < 1e-6, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn far_field_fourier_coefficients_decay() {
        let count = 360;
        let ff = plane_wave_farfield(&kite(), k(1.0), 64, 0.0, &Direction::grid(count)).unwrap();
        for m in 41..=(count / 2) as i64 {
            let c: Complex = ff
                .directions
                .iter()
                .zip(&ff.values)
                .map(|(d, v)| v * Complex::from_polar(1.0, -(m as f64) * d.theta()))
                .sum::<Complex>()
                / count as f64;
            assert!(c.norm() < 1e-10, "mode {m}: {:e}", c.norm());
        }
    }

    #[test]
    fn modified_component_decays_exponentially() {
        let solver = Solver::new(&circle(), k(1.0), 32).unwrap();
        let ts = solver.solve(&IncidentField::plane(0.0)).unwrap();
        // leading K_m asymptotics: e^{-κ(8-4)} √(4/8), with 50% slack
        let envelope = (-4.0f64).exp() * 0.5f64.sqrt();
        for theta in [0.0, 1.0, PI] {
            let v = solver
                .scattered(&ts, &[Point2::polar(4.0, theta), Point2::polar(8.0, theta)])
                .unwrap();
            let ratio = v[1].u_m.norm() / v[0].u_m.norm();
            assert!(ratio <= 1.5 * envelope && ratio >= envelope / 1.5, "{ratio}");
        }
    }

    #[test]
    fn evaluation_points_are_screened() {
        let solver = Solver::new(&circle(), k(1.0), 16).unwrap();
        let ts = TraceSolution::zeros(k(1.0), solver.boundary().len());
        assert!(matches!(
            solver.scattered(&ts, &[Point2::new(0.2, 0.0)]),
            Err(Error::InteriorPoint { .. })
        ));
        assert!(matches!(
            solver.scattered(&ts, &[Point2::new(1.01, 0.0)]),
            Err(Error::TooCloseToBoundary { .. })
        ));
        assert!(solver.scattered(&ts, &[Point2::new(1.06, 0.0)]).is_ok());
    }

    #[test]
    fn interior_dirichlet_eigenvalue_is_reported() {
        // first zero of J0: the direct trace system degenerates there
        let j01 = 2.404_825_557_695_773;
        match Solver::new(&circle(), k(j01), 32) {
            Err(Error::IllConditioned { kappa, condition }) => {
                assert_eq!(kappa, j01);
                assert!(condition > MAX_CONDITION);
            }
            other => panic!(
                "expected an ill-conditioning error, got {:?}",
                other.map(|s| s.condition())
            ),
        }
        assert!(Solver::new(&circle(), k(2.5), 32).unwrap().condition() < 1e6);
    }

    #[test]
    fn mismatched_data_length_is_rejected() {
        let solver = Solver::new(&circle(), k(1.0), 16).unwrap();
        assert!(matches!(
            solver.solve_data(&BoundaryData::zeros(10)),
            Err(Error::LengthMismatch { .. })
        ));
    }
}
