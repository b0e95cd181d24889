//! Cyclic Jacobi eigenvalue iteration for complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a[p][q]` with a
//! diagonal unitary, then applies a real Givens rotation that zeroes it.
//! The combined 2×2 unitary acts on rows and columns `p`, `q` of the
//! working copy.

use num_complex::Complex;
use num_traits::Zero;

use super::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::{Real, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenConfig {
    pub hermitian_tol: f64,
    pub convergence: f64,
    pub max_sweeps: usize,
}

impl EigenConfig {
    pub fn from_tolerances(tol: &Tolerances) -> Self {
        Self {
            hermitian_tol: tol.hermitian,
            convergence: tol.convergence,
            max_sweeps: tol.max_sweeps,
        }
    }

    pub fn for_scalar<T: Real>() -> Self {
        Self::from_tolerances(&T::TOL)
    }
}

/// Eigenvalues of a Hermitian matrix in descending order, using the default
/// tolerances of `T`.
pub fn hermitian_eigenvalues<T: Real>(a: &ComplexMatrix<T>) -> Result<Vec<T>> {
    hermitian_eigenvalues_with(a, &EigenConfig::for_scalar::<T>())
}

pub fn hermitian_eigenvalues_with<T: Real>(a: &ComplexMatrix<T>, cfg: &EigenConfig) -> Result<Vec<T>> {
    let deviation = a.hermitian_deviation()?;
    if deviation > T::lit(cfg.hermitian_tol) {
        return Err(Error::NotHermitian {
            deviation: deviation.as_f64(),
        });
    }
    let n = a.rows();
    let mut w = a.data.clone();
    // Symmetrize so the iteration works on an exactly Hermitian matrix.
    for i in 0..n {
        w[i * n + i] = Complex::new(w[i * n + i].re, T::zero());
        for j in i + 1..n {
            let avg = (w[i * n + j] + w[j * n + i].conj()) / T::lit(2.0);
            w[i * n + j] = avg;
            w[j * n + i] = avg.conj();
        }
    }

    let threshold = T::lit(cfg.convergence);
    let mut off = off_diagonal_norm(&w, n);
    let mut sweeps = 0;
    while off >= threshold {
        if sweeps == cfg.max_sweeps {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off.as_f64(),
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut w, n, p, q);
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&w, n);
    }

    let mut eig: Vec<T> = (0..n).map(|i| w[i * n + i].re).collect();
    eig.sort_by(|x, y| y.partial_cmp(x).expect("finite eigenvalues"));
    Ok(eig)
}

fn off_diagonal_norm<T: Real>(w: &[Complex<T>], n: usize) -> T {
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s = s + w[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Zeroes `w[p][q]` (and `w[q][p]`) with `w ← G† w G`.
fn rotate<T: Real>(w: &mut [Complex<T>], n: usize, p: usize, q: usize) {
    let b = w[p * n + q];
    let r = b.norm();
    if r.is_zero() {
        return;
    }
    let app = w[p * n + p].re;
    let aqq = w[q * n + q].re;
    // After the phase fix the pivot block is the real symmetric [[app, r], [r, aqq]].
    let theta = (aqq - app) / (T::lit(2.0) * r);
    let t = {
        let mag = T::one() / (theta.abs() + (T::one() + theta * theta).sqrt());
        if theta < T::zero() {
            -mag
        } else {
            mag
        }
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;
    // phase = e^{-iφ} where b = r e^{iφ}
    let phase = b.conj() / r;
    let g_pp = Complex::new(c, T::zero());
    let g_pq = Complex::new(s, T::zero());
    let g_qp = phase * (-s);
    let g_qq = phase * c;

    // Columns: w ← w G
    for k in 0..n {
        let wkp = w[k * n + p];
        let wkq = w[k * n + q];
        w[k * n + p] = wkp * g_pp + wkq * g_qp;
        w[k * n + q] = wkp * g_pq + wkq * g_qq;
    }
    // Rows: w ← G† w
    for k in 0..n {
        let wpk = w[p * n + k];
        let wqk = w[q * n + k];
        w[p * n + k] = g_pp.conj() * wpk + g_qp.conj() * wqk;
        w[q * n + k] = g_pq.conj() * wpk + g_qq.conj() * wqk;
    }
    w[p * n + q] = Complex::zero();
    w[q * n + p] = Complex::zero();
    w[p * n + p] = Complex::new(app - t * r, T::zero());
    w[q * n + q] = Complex::new(aqq + t * r, T::zero());
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    type M = ComplexMatrix<f64>;

    #[test]
    fn pauli_z_and_half_identity() {
        let z = M::from_real(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap();
        assert_eq!(hermitian_eigenvalues(&z).unwrap(), vec![1.0, -1.0]);
        let half = M::identity(2).scale_real(0.5);
        assert_eq!(hermitian_eigenvalues(&half).unwrap(), vec![0.5, 0.5]);
    }

    #[test]
    fn two_by_two_against_characteristic_polynomial() {
        // λ² − tr·λ + det = 0 solved in closed form.
        let (a, b, d) = (0.75, 0.25, 0.25);
        let tr: f64 = a + d;
        let det = a * d - b * b;
        let disc = (tr * tr - 4.0 * det).sqrt();
        let expect = [(tr + disc) / 2.0, (tr - disc) / 2.0];
        assert_abs_diff_eq!(expect[0], (2.0 + 2f64.sqrt()) / 4.0, epsilon = 1e-15);

        let m = M::from_real(&[&[a, b], &[b, d]]).unwrap();
        let got = hermitian_eigenvalues(&m).unwrap();
        assert_abs_diff_eq!(got[0], expect[0], epsilon = 1e-14);
        assert_abs_diff_eq!(got[1], expect[1], epsilon = 1e-14);
    }

    #[test]
    fn complex_pivot() {
        // σ₂ has eigenvalues ±1.
        let y = M::from_rows(vec![
            vec![Complex::new(0.0, 0.0), Complex::new(0.0, -1.0)],
            vec![Complex::new(0.0, 1.0), Complex::new(0.0, 0.0)],
        ])
        .unwrap();
        let got = hermitian_eigenvalues(&y).unwrap();
        assert_abs_diff_eq!(got[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(got[1], -1.0, epsilon = 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = M::from_real(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(hermitian_eigenvalues(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn reports_non_convergence() {
        let m = M::from_real(&[&[1.0, 0.3, 0.2], &[0.3, 2.0, 0.1], &[0.2, 0.1, 3.0]]).unwrap();
        let cfg = EigenConfig {
            max_sweeps: 0,
            ..EigenConfig::for_scalar::<f64>()
        };
        assert!(matches!(
            hermitian_eigenvalues_with(&m, &cfg),
            Err(Error::NoConvergence { sweeps: 0, .. })
        ));
    }

    #[test]
    fn single_precision() {
        let m = ComplexMatrix::<f32>::from_real(&[&[0.75, 0.25], &[0.25, 0.25]]).unwrap();
        let got = hermitian_eigenvalues(&m).unwrap();
        assert!((got[0] - (2.0 + 2f32.sqrt()) / 4.0).abs() < 1e-6);
    }
}
