//! Seeded random test objects: states, unitaries and operators.

use num_complex::Complex;

use crate::error::Result;
use crate::linalg::ComplexMatrix;
use crate::rng::SplitMix64;
use crate::scalar::Real;
use crate::states::{DensityMatrix, PureState};

fn cplx<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

/// Random unit vector: `2·dim` normal-ish draws, normalized.
pub fn random_pure_state<T: Real>(rng: &mut SplitMix64, dim: usize) -> PureState<T> {
    loop {
        let amps: Vec<Complex<T>> = (0..dim)
            .map(|_| {
                let re = rng.next_normalish();
                let im = rng.next_normalish();
                cplx(re, im)
            })
            .collect();
        if let Ok(state) = PureState::normalized(amps) {
            return state;
        }
    }
}

/// Random unitary built as a product of random phases and complex Givens
/// (Jacobi) rotations, two passes over every index pair.
pub fn random_unitary<T: Real>(rng: &mut SplitMix64, dim: usize) -> ComplexMatrix<T> {
    let tau = std::f64::consts::TAU;
    let mut u = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        let a = rng.next_f64() * tau;
        u[(i, i)] = cplx(a.cos(), a.sin());
    }
    for _ in 0..2 {
        for p in 0..dim {
            for q in p + 1..dim {
                let theta = rng.next_f64() * tau;
                let phi = rng.next_f64() * tau;
                let (c, s) = (theta.cos(), theta.sin());
                let e = cplx::<T>(phi.cos(), phi.sin());
                let (cc, ss) = (cplx::<T>(c, 0.0), T::lit(s));
                for k in 0..dim {
                    let up = u[(p, k)];
                    let uq = u[(q, k)];
                    u[(p, k)] = cc * up - e * ss * uq;
                    u[(q, k)] = e.conj() * ss * up + cc * uq;
                }
            }
        }
    }
    u
}

/// Random mixed state: a mixture of `rank` random pure states with random weights.
pub fn random_density<T: Real>(rng: &mut SplitMix64, dim: usize, rank: usize) -> Result<DensityMatrix<T>> {
    let raw: Vec<f64> = (0..rank.max(1)).map(|_| rng.next_f64() + 1e-3).collect();
    let total: f64 = raw.iter().sum();
    let parts: Vec<(T, DensityMatrix<T>)> = raw
        .iter()
        .map(|w| (T::lit(w / total), random_pure_state::<T>(rng, dim).density()))
        .collect();
    DensityMatrix::mix(&parts)
}

/// Matrix with real and imaginary parts uniform in `[-1, 1]`.
pub fn random_matrix<T: Real>(rng: &mut SplitMix64, rows: usize, cols: usize) -> ComplexMatrix<T> {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re = 2.0 * rng.next_f64() - 1.0;
        let im = 2.0 * rng.next_f64() - 1.0;
        cplx(re, im)
    })
}
