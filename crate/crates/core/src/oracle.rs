//! Fourier–Bessel series solution for a plane wave on a clamped circle
//! centred at the origin.
//!
//! `u^s = Σ a_m H_m(κr) e^{imθ} + Σ b_m K_m(κr) e^{imθ}`, with each mode
//! matched to `e^{iκd·x} = Σ i^m J_m(κr) e^{im(θ−θ_d)}` through `u^s = −u^i`
//! and `∂_r u^s = −∂_r u^i` at `r = R`.

use crate::bessel::{bessel_j_seq, bessel_k_seq, bessel_y_seq};
use crate::error::{Error, Result};
use crate::kernels::{Complex, Direction, Point2, Wavenumber, I};
use crate::solver::FarField;
use std::f64::consts::PI;

/// Truncation margin above `κR` required by `mie_solve`.
pub const MIN_ORDER_MARGIN: f64 = 20.0;

/// Per-mode coefficients for `|m| ≤ order`.
#[derive(Clone, Debug, PartialEq)]
pub struct MieSolution {
    pub radius: f64,
    pub kappa: Wavenumber,
    pub theta_d: f64,
    pub order: usize,
    /// `a_m` for `m = −order..=order`.
    a: Vec<Complex>,
    /// `b_m` for `m = −order..=order`.
    b: Vec<Complex>,
    /// `a_m H_m(κR)` and `b_m K_m(κR)`; the raw coefficients over- or
    /// underflow less gracefully than these.
    alpha: Vec<Complex>,
    beta: Vec<Complex>,
}

/// `i^m` for any integer `m`.
fn i_pow(m: i64) -> Complex {
    match m.rem_euclid(4) {
        0 => Complex::new(1.0, 0.0),
        1 => I,
        2 => Complex::new(-1.0, 0.0),
        _ => -I,
    }
}

fn parity(m: i64) -> f64 {
    if m % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Value and argument-derivative of a cylinder function of order `m` from a
/// nonnegative-order table, using `C_{m−1} − (m/x) C_m` (or the K variant).
struct Family {
    values: Vec<f64>,
    x: f64,
}

impl Family {
    /// `(C_m, C_m')` for `m ≥ 0` with `C' = C_{m−1} − (m/x)C_m`, `C_{−1} = −C_1`.
    fn cyl(&self, m: usize) -> (f64, f64) {
        let prev = if m == 0 { -self.values[1] } else { self.values[m - 1] };
        let v = self.values[m];
        (v, prev - m as f64 / self.x * v)
    }

    /// `(K_m, K_m')` with `K' = −K_{m−1} − (m/x)K_m`, `K_{−1} = K_1`.
    fn modified(&self, m: usize) -> (f64, f64) {
        let prev = if m == 0 { self.values[1] } else { self.values[m - 1] };
        let v = self.values[m];
        (v, -prev - m as f64 / self.x * v)
    }
}

/// Solves each mode's 2×2 clamped system.
pub fn mie_solve(radius: f64, kappa: Wavenumber, theta_d: f64, order: usize) -> Result<MieSolution> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::invalid(
            "radius",
            format!("must be finite and > 0, got {radius}"),
        ));
    }
    let x = kappa.get() * radius;
    if (order as f64) < x + MIN_ORDER_MARGIN {
        return Err(Error::invalid(
            "order",
            format!(
                "truncation order {order} must be at least kR + {MIN_ORDER_MARGIN} = {}",
                x + MIN_ORDER_MARGIN
            ),
        ));
    }
    let top = order + 1;
    let j = Family {
        values: bessel_j_seq(top, x),
        x,
    };
    let y = Family {
        values: bessel_y_seq(top, x),
        x,
    };
    let k = Family {
        values: bessel_k_seq(top, x),
        x,
    };

    let count = 2 * order + 1;
    let mut sol = MieSolution {
        radius,
        kappa,
        theta_d,
        order,
        a: Vec::with_capacity(count),
        b: Vec::with_capacity(count),
        alpha: Vec::with_capacity(count),
        beta: Vec::with_capacity(count),
    };
    for m in -(order as i64)..=(order as i64) {
        let abs = m.unsigned_abs() as usize;
        let sign = if m < 0 { parity(m) } else { 1.0 };
        let (jm, djm) = j.cyl(abs);
        let (ym, dym) = y.cyl(abs);
        let (km, dkm) = k.modified(abs);
        let h = Complex::new(jm, ym) * sign;
        let dh = Complex::new(djm, dym) * sign;
        let (jm, djm) = (jm * sign, djm * sign);
        let c = -i_pow(m) * Complex::from_polar(1.0, -(m as f64) * theta_d);
        // α + β = cJ, α h'/h + β k'/k = cJ'
        let rh = dh / h;
        let rk = dkm / km;
        let det = rh - rk;
        if det.norm() == 0.0 || !det.is_finite() {
            return Err(Error::SingularMode { order: m });
        }
        let alpha = c * (djm - jm * rk) / det;
        let beta = c * jm - alpha;
        sol.alpha.push(alpha);
        sol.beta.push(beta);
        sol.a.push(alpha / h);
        sol.b.push(beta / km);
    }
    Ok(sol)
}

impl MieSolution {
    fn index(&self, m: i64) -> usize {
        assert!(m.unsigned_abs() as usize <= self.order, "mode {m} beyond truncation");
        (m + self.order as i64) as usize
    }

    /// `(a_m, b_m)`.
    pub fn coefficient(&self, m: i64) -> (Complex, Complex) {
        let i = self.index(m);
        (self.a[i], self.b[i])
    }

    pub fn modes(&self) -> impl Iterator<Item = i64> {
        -(self.order as i64)..=(self.order as i64)
    }

    /// Residuals of the two boundary equations of mode `m`, relative to the
    /// incident mode size.
    pub fn mode_residual(&self, m: i64) -> f64 {
        let x = self.kappa.get() * self.radius;
        let abs = m.unsigned_abs() as usize;
        let top = self.order + 1;
        let j = Family {
            values: bessel_j_seq(top, x),
            x,
        };
        let y = Family {
            values: bessel_y_seq(top, x),
            x,
        };
        let k = Family {
            values: bessel_k_seq(top, x),
            x,
        };
        let sign = if m < 0 { parity(m) } else { 1.0 };
        let (jm, djm) = j.cyl(abs);
        let (ym, dym) = y.cyl(abs);
        let (km, dkm) = k.modified(abs);
        let i = self.index(m);
        let c = -i_pow(m) * Complex::from_polar(1.0, -(m as f64) * self.theta_d);
        let (alpha, beta) = (self.alpha[i], self.beta[i]);
        let h = Complex::new(jm, ym);
        let dh = Complex::new(djm, dym);
        let r1 = alpha + beta - c * jm * sign;
        let r2 = alpha * (dh / h) + beta * (dkm / km) - c * djm * sign;
        let scale = (jm.abs() + djm.abs()).max(f64::MIN_POSITIVE);
        (r1.norm() + r2.norm()) / scale
    }

    /// `u^∞(x̂) = √(2/(πκ)) e^{−iπ/4} Σ a_m (−i)^m e^{imθ}`.
    pub fn farfield_at(&self, xhat: Direction) -> Complex {
        let k = self.kappa.get();
        let pref = Complex::from_polar((2.0 / (PI * k)).sqrt(), -PI / 4.0);
        let theta = xhat.theta();
        let mut s = Complex::new(0.0, 0.0);
        for m in self.modes() {
            let (a, _) = self.coefficient(m);
            s += a * i_pow(-m) * Complex::from_polar(1.0, m as f64 * theta);
        }
        pref * s
    }

    /// `(u_H, u_M)` of the scattered field at `p`, `|p| ≥ R`.
    pub fn field_at(&self, p: Point2) -> Result<(Complex, Complex)> {
        let r = p.norm();
        if r < self.radius * (1.0 - 1e-12) {
            return Err(Error::InteriorPoint { point: p });
        }
        let x = self.kappa.get() * r;
        let theta = p.x2.atan2(p.x1);
        let jr = bessel_j_seq(self.order, x);
        let yr = bessel_y_seq(self.order, x);
        let kr = bessel_k_seq(self.order, x);
        let xr = self.kappa.get() * self.radius;
        let j0 = bessel_j_seq(self.order, xr);
        let y0 = bessel_y_seq(self.order, xr);
        let k0 = bessel_k_seq(self.order, xr);
        let mut uh = Complex::new(0.0, 0.0);
        let mut um = Complex::new(0.0, 0.0);
        for m in self.modes() {
            let abs = m.unsigned_abs() as usize;
            let i = self.index(m);
            let e = Complex::from_polar(1.0, m as f64 * theta);
            // sign factors of H_{−m} cancel in the ratio
            let h_ratio = Complex::new(jr[abs], yr[abs]) / Complex::new(j0[abs], y0[abs]);
            let k_ratio = kr[abs] / k0[abs];
            uh += self.alpha[i] * h_ratio * e;
            um += self.beta[i] * k_ratio * e;
        }
        Ok((uh, um))
    }
}

/// Far field of the series on a direction grid.
pub fn mie_farfield(sol: &MieSolution, dirs: &[Direction]) -> FarField {
    FarField {
        directions: dirs.to_vec(),
        values: dirs.iter().map(|&d| sol.farfield_at(d)).collect(),
    }
}

/// Series field components at exterior points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MieField {
    pub point: Point2,
    pub u_h: Complex,
    pub u_m: Complex,
    pub u: Complex,
}

pub fn mie_field(sol: &MieSolution, points: &[Point2]) -> Result<Vec<MieField>> {
    points
        .iter()
        .map(|&p| {
            let (u_h, u_m) = sol.field_at(p)?;
            Ok(MieField {
                point: p,
                u_h,
                u_m,
                u: u_h + u_m,
            })
        })
        .collect()
}
