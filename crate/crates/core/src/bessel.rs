//! Cylinder functions of real positive argument.
//!
//! Orders 0 and 1 of J, Y, I, K, the first-kind Hankel function, and
//! integer-order families for the circle series. Accuracy target is a
//! relative error of 1e-12 on (1e-8, 1e3), measured against the envelope
//! for the oscillatory functions.
//!
//! Methods:
//! - J, Y for x < 25: Miller backward recurrence normalised by
//!   `J0 + 2 sum J_2k = 1`, with Y0 and Y1 from the Neumann series over the
//!   same recurrence values.
//! - J, Y for x >= 25: Hankel asymptotic expansion.
//! - I: power series, asymptotic expansion above 40.
//! - K: logarithmic power series below 2, Steed's continued fraction above.

use num_complex::Complex64;
use std::f64::consts::{FRAC_2_PI, PI};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const ASYMPTOTIC_SWITCH: f64 = 25.0;
const I_ASYMPTOTIC_SWITCH: f64 = 40.0;
const K_SERIES_SWITCH: f64 = 2.0;
const RESCALE_ABOVE: f64 = 1e200;

/// J0, J1, Y0, Y1 at a common argument.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BesselJY {
    pub j0: f64,
    pub j1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl BesselJY {
    pub fn h0(&self) -> Complex64 {
        Complex64::new(self.j0, self.y0)
    }

    pub fn h1(&self) -> Complex64 {
        Complex64::new(self.j1, self.y1)
    }
}

/// Evaluates J0, J1, Y0, Y1 at `x > 0`.
pub fn jy01(x: f64) -> BesselJY {
    debug_assert!(x > 0.0, "jy01 requires x > 0, got {x}");
    if x >= ASYMPTOTIC_SWITCH {
        let (j0, y0) = hankel_asymptotic(0.0, x);
        let (j1, y1) = hankel_asymptotic(1.0, x);
        BesselJY { j0, j1, y0, y1 }
    } else {
        miller_jy(x)
    }
}

pub fn j0(x: f64) -> f64 {
    jy01(x).j0
}

pub fn j1(x: f64) -> f64 {
    jy01(x).j1
}

pub fn y0(x: f64) -> f64 {
    jy01(x).y0
}

pub fn y1(x: f64) -> f64 {
    jy01(x).y1
}

/// Starting index for the backward recurrence.
fn miller_start(x: f64, max_order: usize) -> usize {
    let top = x.max(max_order as f64);
    let n = (top + 20.0 + 6.0 * x.cbrt()).ceil() as usize;
    n + (n % 2)
}

fn miller_jy(x: f64) -> BesselJY {
    let start = miller_start(x, 1);
    let two_over_x = 2.0 / x;
    // f_{k+1}, f_k
    let mut above = 0.0_f64;
    let mut current = 1e-30_f64;
    let mut even_sum = 0.0; // sum over k >= 1 of f_{2k}
    let mut y0_sum = 0.0; // sum over k >= 1 of (-1)^k f_{2k} / k
    let mut y1_sum = 0.0; // sum over k >= 1 of (-1)^k (f_{2k-1} - f_{2k+1}) / k
    let mut f1 = 0.0;
    let mut j = start;
    loop {
        if j.is_multiple_of(2) {
            if j >= 2 {
                let k = (j / 2) as f64;
                even_sum += current;
                let sign = if (j / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
                y0_sum += sign * current / k;
            }
        } else {
            // f_j enters term k = (j+1)/2 with +, and term k = (j-1)/2 with -.
            let kp = j.div_ceil(2);
            let sign_p = if kp.is_multiple_of(2) { 1.0 } else { -1.0 };
            let mut coeff = sign_p / kp as f64;
            let km = (j - 1) / 2;
            if km >= 1 {
                let sign_m = if km.is_multiple_of(2) { 1.0 } else { -1.0 };
                coeff -= sign_m / km as f64;
            }
            y1_sum += coeff * current;
        }
        if j == 1 {
            f1 = current;
        }
        if j == 0 {
            break;
        }
        let below = j as f64 * two_over_x * current - above;
        above = current;
        current = below;
        j -= 1;
        if current.abs() > RESCALE_ABOVE {
            let s = 1.0 / RESCALE_ABOVE;
            current *= s;
            above *= s;
            even_sum *= s;
            y0_sum *= s;
            y1_sum *= s;
            f1 *= s;
        }
    }
    let f0 = current;
    let norm = 1.0 / (f0 + 2.0 * even_sum);
    let j0 = f0 * norm;
    let j1 = f1 * norm;
    let log_term = (0.5 * x).ln() + EULER_GAMMA;
    let y0 = FRAC_2_PI * (log_term * j0 - 2.0 * y0_sum * norm);
    let y1 = FRAC_2_PI * (-j0 / x + log_term * j1 + y1_sum * norm);
    BesselJY { j0, j1, y0, y1 }
}

/// Hankel's expansion for order `nu`, returning (J, Y).
fn hankel_asymptotic(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let eight_x = 8.0 * x;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0_f64;
    let mut last = f64::INFINITY;
    for k in 1..200usize {
        let odd = (2 * k - 1) as f64;
        term *= (mu - odd * odd) / (k as f64 * eight_x);
        let mag = term.abs();
        if mag > last {
            break;
        }
        last = mag;
        // P takes even k with sign (-1)^{k/2}, Q odd k with (-1)^{(k-1)/2}.
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if mag < 1e-18 * p.abs().max(q.abs()) {
            break;
        }
    }
    let phase = (0.5 * nu + 0.25) * PI;
    let (sx, cx) = x.sin_cos();
    let (sp, cp) = phase.sin_cos();
    let cos_chi = cx * cp + sx * sp;
    let sin_chi = sx * cp - cx * sp;
    let amp = (FRAC_2_PI / x).sqrt();
    (amp * (p * cos_chi - q * sin_chi), amp * (p * sin_chi + q * cos_chi))
}

/// H0⁽¹⁾(x) and H1⁽¹⁾(x).
pub fn hankel1_01(x: f64) -> (Complex64, Complex64) {
    let jy = jy01(x);
    (jy.h0(), jy.h1())
}

/// Exponentially scaled `e^{-x} I0(x)`, `e^{-x} I1(x)`.
pub fn i01_scaled(x: f64) -> (f64, f64) {
    debug_assert!(x >= 0.0);
    if x < I_ASYMPTOTIC_SWITCH {
        let q = 0.25 * x * x;
        let mut t0 = 1.0;
        let mut t1 = 0.5 * x;
        let mut s0 = t0;
        let mut s1 = t1;
        let mut k = 1.0;
        loop {
            t0 *= q / (k * k);
            t1 *= q / (k * (k + 1.0));
            s0 += t0;
            s1 += t1;
            if t0 < 1e-17 * s0 && t1 <= 1e-17 * s1 {
                break;
            }
            k += 1.0;
        }
        let e = (-x).exp();
        (s0 * e, s1 * e)
    } else {
        let inv = 1.0 / (8.0 * x);
        let mut s0 = 1.0;
        let mut s1 = 1.0;
        let mut t0 = 1.0_f64;
        let mut t1 = 1.0_f64;
        for k in 1..60usize {
            let odd = (2 * k - 1) as f64;
            t0 *= -(0.0 - odd * odd) * inv / k as f64;
            t1 *= -(4.0 - odd * odd) * inv / k as f64;
            s0 += t0;
            s1 += t1;
            if t0.abs() < 1e-17 && t1.abs() < 1e-17 {
                break;
            }
        }
        let amp = 1.0 / (2.0 * PI * x).sqrt();
        (amp * s0, amp * s1)
    }
}

/// I0(x), I1(x). Overflows past x ≈ 709.
pub fn i01(x: f64) -> (f64, f64) {
    let (a, b) = i01_scaled(x);
    let e = x.exp();
    (a * e, b * e)
}

/// Exponentially scaled `e^{x} K0(x)`, `e^{x} K1(x)`.
pub fn k01_scaled(x: f64) -> (f64, f64) {
    debug_assert!(x > 0.0);
    if x <= K_SERIES_SWITCH {
        let (k0, k1) = k01_series(x);
        let e = x.exp();
        (k0 * e, k1 * e)
    } else {
        k01_steed(x)
    }
}

/// K0(x), K1(x). Underflow to zero past x ≈ 700.
pub fn k01(x: f64) -> (f64, f64) {
    debug_assert!(x > 0.0);
    if x <= K_SERIES_SWITCH {
        k01_series(x)
    } else {
        let (a, b) = k01_steed(x);
        let e = (-x).exp();
        (a * e, b * e)
    }
}

fn k01_series(x: f64) -> (f64, f64) {
    let q = 0.25 * x * x;
    let log_half = (0.5 * x).ln();
    // I0, I1 and the digamma-weighted sums share the same power terms.
    let mut t0 = 1.0; // q^k / k!^2
    let mut t1 = 1.0; // q^k / (k! (k+1)!)
    let mut harmonic = 0.0; // H_k
    let mut i0 = 1.0;
    let mut i1 = 1.0;
    let mut k0_sum = 0.0;
    // psi(k+1) + psi(k+2) = 2 H_k + 1/(k+1) - 2 gamma
    let mut k1_sum = 1.0 - 2.0 * EULER_GAMMA;
    let mut k = 1.0;
    loop {
        t0 *= q / (k * k);
        t1 *= q / (k * (k + 1.0));
        harmonic += 1.0 / k;
        i0 += t0;
        i1 += t1;
        k0_sum += harmonic * t0;
        k1_sum += (2.0 * harmonic + 1.0 / (k + 1.0) - 2.0 * EULER_GAMMA) * t1;
        if t0 < 1e-18 && k > 2.0 {
            break;
        }
        k += 1.0;
    }
    let i1 = 0.5 * x * i1;
    let k0 = -(log_half + EULER_GAMMA) * i0 + k0_sum;
    let k1 = 1.0 / x + log_half * i1 - 0.25 * x * k1_sum;
    (k0, k1)
}

/// Steed's continued fraction (Temme's CF2 form) for order zero, x > 2.
/// Returns the scaled pair `e^x K0`, `e^x K1`.
fn k01_steed(x: f64) -> (f64, f64) {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..10_000usize {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    h *= a1;
    let k0 = (PI / (2.0 * x)).sqrt() / s;
    let k1 = k0 * (x + 0.5 - h) / x;
    (k0, k1)
}

/// J_0 .. J_{max_order} at `x > 0` by backward recurrence.
pub fn bessel_j_seq(max_order: usize, x: f64) -> Vec<f64> {
    debug_assert!(x > 0.0);
    if x >= ASYMPTOTIC_SWITCH && max_order as f64 <= x {
        // Forward recurrence is stable while the order stays below x.
        let jy = jy01(x);
        let mut out = vec![0.0; max_order + 1];
        out[0] = jy.j0;
        if max_order >= 1 {
            out[1] = jy.j1;
        }
        for m in 1..max_order {
            out[m + 1] = 2.0 * m as f64 / x * out[m] - out[m - 1];
        }
        return out;
    }
    let start = miller_start(x, max_order + 10);
    let two_over_x = 2.0 / x;
    let mut vals = vec![0.0; max_order + 1];
    let mut above = 0.0_f64;
    let mut current = 1e-30_f64;
    let mut even_sum = 0.0;
    let mut j = start;
    loop {
        if j <= max_order {
            vals[j] = current;
        }
        if j.is_multiple_of(2) && j >= 2 {
            even_sum += current;
        }
        if j == 0 {
            break;
        }
        let below = j as f64 * two_over_x * current - above;
        above = current;
        current = below;
        j -= 1;
        if current.abs() > RESCALE_ABOVE {
            let s = 1.0 / RESCALE_ABOVE;
            current *= s;
            above *= s;
            even_sum *= s;
            for v in vals.iter_mut().skip(j + 1) {
                *v *= s;
            }
        }
    }
    let norm = 1.0 / (current + 2.0 * even_sum);
    vals.iter_mut().for_each(|v| *v *= norm);
    vals
}

/// Y_0 .. Y_{max_order} by forward recurrence.
pub fn bessel_y_seq(max_order: usize, x: f64) -> Vec<f64> {
    let jy = jy01(x);
    let mut out = vec![0.0; max_order + 1];
    out[0] = jy.y0;
    if max_order >= 1 {
        out[1] = jy.y1;
    }
    for m in 1..max_order {
        out[m + 1] = 2.0 * m as f64 / x * out[m] - out[m - 1];
    }
    out
}

/// K_0 .. K_{max_order} by forward recurrence.
pub fn bessel_k_seq(max_order: usize, x: f64) -> Vec<f64> {
    let (k0, k1) = k01(x);
    let mut out = vec![0.0; max_order + 1];
    out[0] = k0;
    if max_order >= 1 {
        out[1] = k1;
    }
    for m in 1..max_order {
        out[m + 1] = 2.0 * m as f64 / x * out[m] + out[m - 1];
    }
    out
}

/// Real part of `(1/2π) K0(t) − (i/4) H0⁽¹⁾(t)` together with its
/// t-derivative, for the biharmonic difference kernel.
///
/// Below t = 2 the logarithms of the two terms cancel analytically and
/// the odd-power series is used, which keeps full relative accuracy as
/// t → 0 where the value tends to zero like t² ln t.
pub(crate) fn difference_kernel_real(t: f64) -> (f64, f64) {
    if t < 2.0 {
        difference_kernel_series(t)
    } else {
        difference_kernel_bessel(t)
    }
}

fn difference_kernel_series(t: f64) -> (f64, f64) {
    let q = 0.25 * t * t;
    let log_term = (0.5 * t).ln() + EULER_GAMMA;
    let mut power = 1.0; // q^k / k!^2
    let mut harmonic = 0.0;
    let mut value = 0.0;
    let mut deriv = 0.0;
    let mut k = 1usize;
    loop {
        let fk = k as f64;
        power *= q / (fk * fk);
        harmonic += 1.0 / fk;
        if k % 2 == 1 {
            let diff = harmonic - log_term;
            value += power * diff;
            deriv += power * (2.0 * fk * diff - 1.0);
            if power < 1e-20 {
                break;
            }
        }
        k += 1;
    }
    (value / PI, deriv / (PI * t))
}

fn difference_kernel_bessel(t: f64) -> (f64, f64) {
    let jy = jy01(t);
    let (k0, k1) = k01(t);
    let value = k0 / (2.0 * PI) + 0.25 * jy.y0;
    let deriv = -k1 / (2.0 * PI) - 0.25 * jy.y1;
    (value, deriv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wronskian_jy() {
        for &x in &[1e-6, 0.3, 1.0, 7.5, 19.0, 24.99, 25.01, 60.0, 400.0] {
            let jy = jy01(x);
            let w = jy.j1 * jy.y0 - jy.j0 * jy.y1;
            let expected = 2.0 / (PI * x);
            assert!((w - expected).abs() <= 1e-13 * expected, "x={x}: {w} vs {expected}");
        }
    }

    #[test]
    fn wronskian_ik() {
        for &x in &[1e-6, 0.5, 1.99, 2.01, 10.0, 39.0, 41.0, 300.0] {
            let (i0, i1) = i01_scaled(x);
            let (k0, k1) = k01_scaled(x);
            let w = i0 * k1 + i1 * k0;
            assert!((w * x - 1.0).abs() < 1e-13, "x={x}: {}", w * x);
        }
    }

    #[test]
    fn k_branches_agree_at_switch() {
        let (a0, a1) = k01_series(2.0);
        let (s0, s1) = k01_steed(2.0);
        let e = (-2.0f64).exp();
        assert!((a0 - s0 * e).abs() < 1e-15);
        assert!((a1 - s1 * e).abs() < 1e-15);
    }

    #[test]
    fn difference_kernel_branches_agree() {
        let t = 2.0;
        let (v, d) = difference_kernel_series(t);
        let (vd, dd) = difference_kernel_bessel(t);
        assert!((v - vd).abs() < 1e-13, "{v} {vd}");
        assert!((d - dd).abs() < 1e-13, "{d} {dd}");
    }

    #[test]
    fn difference_kernel_small_argument_limit() {
        // value ~ (t^2 / 4π)(1 - ln(t/2) - γ)
        let t = 1e-4;
        let (v, _) = difference_kernel_real(t);
        let approx = t * t / (4.0 * PI) * (1.0 - (0.5 * t).ln() - EULER_GAMMA);
        assert!((v - approx).abs() < 1e-6 * approx.abs());
    }
}
