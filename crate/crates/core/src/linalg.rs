//! Dense complex LU with a 1-norm condition estimate.

use crate::kernels::Complex;
use nalgebra::{DMatrix, DVector, Dyn, LU};

/// LU factorisation with partial pivoting of a square complex matrix.
pub struct DenseLu {
    lu: LU<Complex, Dyn, Dyn>,
    l: DMatrix<Complex>,
    u: DMatrix<Complex>,
    norm1: f64,
}

/// Maximum absolute column sum.
pub fn norm1(a: &DMatrix<Complex>) -> f64 {
    a.column_iter()
        .map(|c| c.iter().map(|v| v.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

impl DenseLu {
    pub fn new(a: DMatrix<Complex>) -> Self {
        assert!(a.is_square(), "LU of a non-square matrix");
        let norm1 = norm1(&a);
        let lu = LU::new(a);
        let l = lu.l();
        let u = lu.u();
        DenseLu { lu, l, u, norm1 }
    }

    pub fn dim(&self) -> usize {
        self.l.nrows()
    }

    /// Solves `A x = b`; `None` when a pivot vanished.
    pub fn solve(&self, b: &DVector<Complex>) -> Option<DVector<Complex>> {
        self.lu.solve(b)
    }

    /// Solves `Aᴴ x = b` using `PA = LU`, so `Aᴴ = Uᴴ Lᴴ P`.
    pub fn solve_adjoint(&self, b: &DVector<Complex>) -> Option<DVector<Complex>> {
        let mut x = b.clone();
        if !self.u.ad_solve_upper_triangular_mut(&mut x) {
            return None;
        }
        if !self.l.ad_solve_lower_triangular_mut(&mut x) {
            return None;
        }
        self.lu.p().inv_permute_rows(&mut x);
        Some(x)
    }

    /// Hager–Higham estimate of `‖A‖₁ ‖A⁻¹‖₁`; infinite if singular.
    pub fn condition_estimate(&self) -> f64 {
        let n = self.dim();
        if n == 0 {
            return 1.0;
        }
        let Some(inv) = self.inverse_norm1_estimate() else {
            return f64::INFINITY;
        };
        self.norm1 * inv
    }

    fn inverse_norm1_estimate(&self) -> Option<f64> {
        let n = self.dim();
        let l1 = |v: &DVector<Complex>| v.iter().map(|c| c.norm()).sum::<f64>();
        let mut x = DVector::from_element(n, Complex::new(1.0 / n as f64, 0.0));
        let mut est = 0.0;
        let mut last_j = usize::MAX;
        for iter in 0..5 {
            let y = self.solve(&x)?;
            let new_est = l1(&y);
            if iter > 0 && new_est <= est {
                break;
            }
            est = new_est;
            let xi = y.map(|c| {
                let a = c.norm();
                if a > 0.0 {
                    c / a
                } else {
                    Complex::new(1.0, 0.0)
                }
            });
            let z = self.solve_adjoint(&xi)?;
            let (j, zmax) = z
                .iter()
                .enumerate()
                .map(|(j, c)| (j, c.norm()))
                .fold((0, -1.0), |acc, v| if v.1 > acc.1 { v } else { acc });
            let ztx = z.dotc(&x).re;
            if iter > 0 && (zmax <= ztx || j == last_j) {
                break;
            }
            last_j = j;
            x.fill(Complex::new(0.0, 0.0));
            x[j] = Complex::new(1.0, 0.0);
        }
        // alternating test vector guards against the estimator's blind spots
        let alt = DVector::from_fn(n, |i, _| {
            let s = if i % 2 == 0 { 1.0 } else { -1.0 };
            let t = if n > 1 { i as f64 / (n - 1) as f64 } else { 0.0 };
            Complex::new(s * (1.0 + t), 0.0)
        });
        let y = self.solve(&alt)?;
        Some(est.max(2.0 * l1(&y) / (3.0 * n as f64)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn sample(n: usize) -> DMatrix<Complex> {
        DMatrix::from_fn(n, n, |i, j| {
            let base = if i == j { 4.0 } else { 0.0 };
            c(
                base + ((i * 7 + j * 3) % 5) as f64 * 0.3,
                ((i + 2 * j) % 3) as f64 * 0.2 - 0.2,
            )
        })
    }

    #[test]
    fn solve_and_adjoint_solve() {
        let a = sample(9);
        let lu = DenseLu::new(a.clone());
        let b = DVector::from_fn(9, |i, _| c(i as f64, 1.0 - i as f64 * 0.5));
        let x = lu.solve(&b).unwrap();
        assert!((&a * &x - &b).norm() < 1e-12);
        let y = lu.solve_adjoint(&b).unwrap();
        assert!((a.adjoint() * &y - &b).norm() < 1e-12);
    }

    #[test]
    fn condition_estimate_is_close_to_exact() {
        let a = sample(12);
        let exact = norm1(&a) * norm1(&a.clone().try_inverse().unwrap());
        let est = DenseLu::new(a).condition_estimate();
        assert!(est <= exact * (1.0 + 1e-12) && est >= exact / 3.0, "{est} vs {exact}");
    }

    #[test]
    fn diagonal_condition() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![c(1.0, 0.0), c(0.0, 1e-6), c(2.0, 0.0)]));
        let est = DenseLu::new(a).condition_estimate();
        assert!((est - 2e6).abs() < 1e-3);
    }

    #[test]
    fn singular_matrix_is_flagged() {
        let mut a = sample(5);
        for j in 0..5 {
            a[(4, j)] = a[(3, j)] * 2.0;
        }
        let est = DenseLu::new(a).condition_estimate();
        assert!(est > 1e12);
    }
}
