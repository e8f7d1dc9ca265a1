//! Fundamental solutions of the Helmholtz, modified Helmholtz and biharmonic
//! wave operators in the plane, with the normal derivatives and far-field
//! kernels used by the layer potentials.
//!
//! With `r = |x − y|` and `κ > 0`:
//!
//! ```text
//! G_H = (i/4) H0⁽¹⁾(κr)            (Δ + κ²) G_H = −δ
//! G_M = (i/4) H0⁽¹⁾(iκr) = K0(κr)/2π  (Δ − κ²) G_M = −δ
//! G   = (G_M − G_H) / (2κ²)        (Δ² − κ⁴) G = δ
//! ```
//!
//! `G` is bounded at the diagonal with limit `−i/(8κ²)`; it is evaluated
//! through a cancellation-free series for small `κr`.
//!
//! All derivatives are taken with respect to the second argument `y`.

use crate::bessel;
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

pub type Complex = Complex64;

pub(crate) const I: Complex = Complex::new(0.0, 1.0);

/// Positive wavenumber κ.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Wavenumber(f64);

impl Wavenumber {
    pub fn new(kappa: f64) -> Result<Self> {
        if kappa.is_finite() && kappa > 0.0 {
            Ok(Wavenumber(kappa))
        } else {
            Err(Error::invalid(
                "wavenumber",
                format!("must be finite and > 0, got {kappa}"),
            ))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Wavenumber {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Wavenumber::new(value)
    }
}

impl From<Wavenumber> for f64 {
    fn from(k: Wavenumber) -> f64 {
        k.0
    }
}

/// Cartesian point (or vector) in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x1: f64,
    pub x2: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x1: 0.0, x2: 0.0 };

    #[inline]
    pub const fn new(x1: f64, x2: f64) -> Self {
        Point2 { x1, x2 }
    }

    #[inline]
    pub fn dot(self, other: Point2) -> f64 {
        self.x1 * other.x1 + self.x2 * other.x2
    }

    /// z-component of the planar cross product.
    #[inline]
    pub fn cross(self, other: Point2) -> f64 {
        self.x1 * other.x2 - self.x2 * other.x1
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x1.hypot(self.x2)
    }

    #[inline]
    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }

    /// Rotation by −90°: maps a counterclockwise tangent to the outward normal.
    #[inline]
    pub fn rot_cw(self) -> Point2 {
        Point2::new(self.x2, -self.x1)
    }

    pub fn polar(radius: f64, theta: f64) -> Point2 {
        let (s, c) = theta.sin_cos();
        Point2::new(radius * c, radius * s)
    }
}

impl From<[f64; 2]> for Point2 {
    fn from(v: [f64; 2]) -> Self {
        Point2::new(v[0], v[1])
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x1, p.x2]
    }
}

/// Shortest round-trip form, switching to an exponent for tiny or huge values.
struct Coord(f64);

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.0.abs();
        if a != 0.0 && a.is_finite() && !(1e-4..1e16).contains(&a) {
            write!(f, "{:e}", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", Coord(self.x1), Coord(self.x2))
    }
}

impl Add for Point2 {
    type Output = Point2;
    #[inline]
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x1 + o.x1, self.x2 + o.x2)
    }
}

impl AddAssign for Point2 {
    fn add_assign(&mut self, o: Point2) {
        self.x1 += o.x1;
        self.x2 += o.x2;
    }
}

impl Sub for Point2 {
    type Output = Point2;
    #[inline]
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x1 - o.x1, self.x2 - o.x2)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    #[inline]
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x1 * s, self.x2 * s)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x1, -self.x2)
    }
}

/// A direction on the unit circle, stored by its angle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "f64", into = "f64")]
pub struct Direction {
    theta: f64,
}

impl Direction {
    /// Angle reduced to `[0, 2π)`.
    pub fn new(theta: f64) -> Self {
        let tau = 2.0 * PI;
        let mut t = theta % tau;
        if t < 0.0 {
            t += tau;
        }
        if t >= tau {
            t = 0.0;
        }
        Direction { theta: t }
    }

    #[inline]
    pub fn theta(self) -> f64 {
        self.theta
    }

    #[inline]
    pub fn unit(self) -> Point2 {
        let (s, c) = self.theta.sin_cos();
        Point2::new(c, s)
    }

    /// The antipodal direction.
    pub fn opposite(self) -> Direction {
        Direction::new(self.theta + PI)
    }

    /// `count` equispaced directions starting at angle 0.
    pub fn grid(count: usize) -> Vec<Direction> {
        (0..count)
            .map(|k| Direction::new(2.0 * PI * k as f64 / count as f64))
            .collect()
    }
}

impl From<f64> for Direction {
    fn from(theta: f64) -> Self {
        Direction::new(theta)
    }
}

impl From<Direction> for f64 {
    fn from(d: Direction) -> f64 {
        d.theta
    }
}

/// Which fundamental solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelKind {
    /// Helmholtz, `G_H`.
    #[serde(rename = "H")]
    Helmholtz,
    /// Modified Helmholtz, `G_M`.
    #[serde(rename = "M")]
    Modified,
    /// Biharmonic wave, `G`.
    #[serde(rename = "G")]
    Biharmonic,
}

/// Radial profiles of the three kernels and their r-derivatives at one `r`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Radial {
    pub gh: Complex,
    pub gm: f64,
    pub g: Complex,
    pub dgh: Complex,
    pub dgm: f64,
    pub dg: Complex,
}

impl Radial {
    pub fn at(kappa: f64, r: f64) -> Radial {
        let t = kappa * r;
        let jy = bessel::jy01(t);
        let (k0, k1) = bessel::k01(t);
        let quarter_i = Complex::new(0.0, 0.25);
        let gh = quarter_i * jy.h0();
        let dgh = -kappa * quarter_i * jy.h1();
        let gm = k0 / (2.0 * PI);
        let dgm = -kappa * k1 / (2.0 * PI);
        let (re_d, dre_d) = bessel::difference_kernel_real(t);
        let diff = Complex::new(re_d, -0.25 * jy.j0);
        let ddiff = Complex::new(dre_d, 0.25 * jy.j1);
        let scale = 1.0 / (2.0 * kappa * kappa);
        Radial {
            gh,
            gm,
            g: diff * scale,
            dgh,
            dgm,
            dg: ddiff * (kappa * scale),
        }
    }
}

fn separation(x: Point2, y: Point2) -> Result<(Point2, f64)> {
    let d = y - x;
    let r = d.norm();
    if r > 0.0 {
        Ok((d, r))
    } else {
        Err(Error::CoincidentPoints(x))
    }
}

/// `G_H(x, y) = (i/4) H0⁽¹⁾(κ|x−y|)`.
pub fn eval_gh(kappa: Wavenumber, x: Point2, y: Point2) -> Result<Complex> {
    let (_, r) = separation(x, y)?;
    let jy = bessel::jy01(kappa.get() * r);
    Ok(Complex::new(0.0, 0.25) * jy.h0())
}

/// `G_M(x, y) = (i/4) H0⁽¹⁾(iκ|x−y|) = K0(κ|x−y|)/2π`. Real valued.
pub fn eval_gm(kappa: Wavenumber, x: Point2, y: Point2) -> Result<Complex> {
    let (_, r) = separation(x, y)?;
    let (k0, _) = bessel::k01(kappa.get() * r);
    Ok(Complex::new(k0 / (2.0 * PI), 0.0))
}

/// Biharmonic wave fundamental solution `G = (G_M − G_H)/(2κ²)`.
pub fn eval_g(kappa: Wavenumber, x: Point2, y: Point2) -> Result<Complex> {
    let (_, r) = separation(x, y)?;
    let k = kappa.get();
    let t = k * r;
    let (re_d, _) = bessel::difference_kernel_real(t);
    let j0 = bessel::j0(t);
    Ok(Complex::new(re_d, -0.25 * j0) / (2.0 * k * k))
}

/// Any of the three kernels.
pub fn eval_kernel(kind: KernelKind, kappa: Wavenumber, x: Point2, y: Point2) -> Result<Complex> {
    match kind {
        KernelKind::Helmholtz => eval_gh(kappa, x, y),
        KernelKind::Modified => eval_gm(kappa, x, y),
        KernelKind::Biharmonic => eval_g(kappa, x, y),
    }
}

/// Normal derivative `∂G_σ(x, y)/∂n(y)` for a unit normal at `y`.
pub fn dn_y_kernel(kind: KernelKind, kappa: Wavenumber, x: Point2, y: Point2, normal_at_y: Point2) -> Result<Complex> {
    let (d, r) = separation(x, y)?;
    let k = kappa.get();
    let t = k * r;
    let dr = match kind {
        KernelKind::Helmholtz => {
            let jy = bessel::jy01(t);
            -k * Complex::new(0.0, 0.25) * jy.h1()
        }
        KernelKind::Modified => {
            let (_, k1) = bessel::k01(t);
            Complex::new(-k * k1 / (2.0 * PI), 0.0)
        }
        KernelKind::Biharmonic => {
            let (_, dre) = bessel::difference_kernel_real(t);
            let j1 = bessel::j1(t);
            Complex::new(dre, 0.25 * j1) / (2.0 * k)
        }
    };
    Ok(dr * (normal_at_y.dot(d) / r))
}

/// `(P_y G, Q_y G)` with `P = Δ_y` and `Q = −∂_{n(y)} Δ_y`.
///
/// Off the diagonal `Δ_y G = (G_M + G_H)/2`, so
/// `Q_y G = −(∂_n G_M + ∂_n G_H)/2`.
pub fn pq_y_g(kappa: Wavenumber, x: Point2, y: Point2, normal_at_y: Point2) -> Result<(Complex, Complex)> {
    let (d, r) = separation(x, y)?;
    let rad = Radial::at(kappa.get(), r);
    let (p, q) = pq_from_radial(&rad, normal_at_y.dot(d) / r);
    Ok((p, q))
}

#[inline]
pub(crate) fn pq_from_radial(rad: &Radial, cos_angle: f64) -> (Complex, Complex) {
    let p = (rad.gh + rad.gm) * 0.5;
    let q = -(rad.dgh + rad.dgm) * (0.5 * cos_angle);
    (p, q)
}

/// Far-field plane-wave kernel `e = exp(−iκ x̂·y)` and its normal derivative
/// `∂e/∂n(y) = −iκ (x̂·n) e`.
pub fn farfield_plane_kernel(kappa: Wavenumber, xhat: Direction, y: Point2, normal_at_y: Point2) -> (Complex, Complex) {
    let k = kappa.get();
    let u = xhat.unit();
    let e = Complex::from_polar(1.0, -k * u.dot(y));
    let dn_e = e * Complex::new(0.0, -k * u.dot(normal_at_y));
    (e, dn_e)
}

/// `e^{iπ/4} / √(8κπ)`, the far-field constant of `G_H`.
pub fn farfield_constant(kappa: Wavenumber) -> Complex {
    Complex::from_polar(1.0 / (8.0 * kappa.get() * PI).sqrt(), PI / 4.0)
}

/// Far-field pattern of the biharmonic point source `G(·, z)`:
/// `G^∞(x̂, z) = −(1/(2κ²)) e^{iπ/4}/√(8κπ) e^{−iκ x̂·z}`.
pub fn g_far(kappa: Wavenumber, xhat: Direction, z: Point2) -> Complex {
    let k = kappa.get();
    let phase = Complex::from_polar(1.0, -k * xhat.unit().dot(z));
    -farfield_constant(kappa) * phase / (2.0 * k * k)
}
