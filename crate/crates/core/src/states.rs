//! Pure states, density matrices, named state families and entropies.
//!
//! Entropies are measured in bits.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, log2_exact, ComplexMatrix};
use crate::scalar::Real;

/// A unit vector in a `dim`-dimensional Hilbert space.
///
/// Global phase is kept; compare states with [`PureState::fidelity`].
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T> {
    amps: Vec<Complex<T>>,
}

impl<T: Real> PureState<T> {
    /// Accepts `amps` only if its Euclidean norm is one within the state tolerance.
    pub fn new(amps: Vec<Complex<T>>) -> Result<Self> {
        let norm = euclidean_norm(&amps);
        if amps.is_empty() || !norm.is_finite() || (norm - T::one()).abs() > T::lit(T::TOL.state) {
            return Err(Error::NotNormalized { norm: norm.as_f64() });
        }
        Ok(Self { amps })
    }

    /// Rescales `amps` to unit norm. Fails on the zero vector.
    pub fn normalized(amps: Vec<Complex<T>>) -> Result<Self> {
        let norm = euclidean_norm(&amps);
        if amps.is_empty() || !norm.is_finite() || norm <= T::epsilon() {
            return Err(Error::NotNormalized { norm: norm.as_f64() });
        }
        Ok(Self {
            amps: amps.into_iter().map(|a| a / norm).collect(),
        })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::OutOfRange(format!("basis index {index} >= dimension {dim}")));
        }
        let mut amps = vec![Complex::zero(); dim];
        amps[index] = Complex::new(T::one(), T::zero());
        Ok(Self { amps })
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::new(amps.iter().map(|&a| Complex::new(T::lit(a), T::zero())).collect())
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * *b)
    }

    /// `|⟨self|other⟩|`; equals one iff the states agree up to global phase.
    pub fn fidelity(&self, other: &Self) -> T {
        self.inner(other).norm()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| *a * *b))
            .collect();
        Self { amps }
    }

    /// Applies a unitary. The result is renormalized to absorb rounding.
    pub fn evolve(&self, u: &ComplexMatrix<T>) -> Result<Self> {
        Self::normalized(u.mul_vec(&self.amps)?)
    }

    /// `|φ⟩⟨φ|`.
    pub fn density(&self) -> DensityMatrix<T> {
        DensityMatrix::trusted(ComplexMatrix::outer(&self.amps, &self.amps))
    }
}

fn euclidean_norm<T: Real>(amps: &[Complex<T>]) -> T {
    amps.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt()
}

/// Density matrix of a pure state.
pub fn density_of<T: Real>(phi: &PureState<T>) -> DensityMatrix<T> {
    phi.density()
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    mat: ComplexMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn new(mat: ComplexMatrix<T>) -> Result<Self> {
        Self::with_tolerance(mat, T::lit(T::TOL.state))
    }

    /// Validates Hermiticity, trace and spectrum against `tol`.
    pub fn with_tolerance(mat: ComplexMatrix<T>, tol: T) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::InvalidDensity(format!("not square: {:?}", mat.shape())));
        }
        let dev = mat.hermitian_deviation()?;
        if dev > tol {
            return Err(Error::InvalidDensity(format!("not Hermitian (deviation {dev:e})")));
        }
        let tr = mat.trace()?;
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidDensity(format!("trace {} {:+}i", tr.re, tr.im)));
        }
        let min = hermitian_eigenvalues(&mat)?.last().copied().unwrap_or_else(T::zero);
        if min < -tol {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { mat })
    }

    /// Wraps a matrix known to be a state by construction.
    pub(crate) fn trusted(mat: ComplexMatrix<T>) -> Self {
        Self { mat }
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self::trusted(self.mat.tensor(&other.mat))
    }

    /// Conjugation `U ρ U†`.
    pub fn conjugate(&self, u: &ComplexMatrix<T>) -> Result<Self> {
        Ok(Self::trusted(u.matmul(&self.mat)?.matmul(&u.dagger())?))
    }

    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        hermitian_eigenvalues(&self.mat)
    }

    pub fn entropy(&self) -> Result<T> {
        von_neumann_entropy(self)
    }

    /// Convex combination `Σ λᵢ ρᵢ`.
    pub fn mix(parts: &[(T, DensityMatrix<T>)]) -> Result<Self> {
        let weights: Vec<T> = parts.iter().map(|(w, _)| *w).collect();
        check_distribution(&weights)?;
        let dim = parts[0].1.dim();
        let mut acc = ComplexMatrix::zeros(dim, dim);
        for (w, rho) in parts {
            acc.add_scaled(Complex::new(*w, T::zero()), &rho.mat)?;
        }
        Ok(Self::trusted(acc))
    }
}

/// `I_dim / dim`.
pub fn completely_mixed<T: Real>(dim: usize) -> DensityMatrix<T> {
    assert!(dim >= 1, "dimension must be positive");
    DensityMatrix::trusted(ComplexMatrix::identity(dim).scale_real(T::one() / T::from_usize(dim).unwrap()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [
        BellKind::PhiPlus,
        BellKind::PhiMinus,
        BellKind::PsiPlus,
        BellKind::PsiMinus,
    ];
}

/// The four maximally entangled two-qubit states.
pub fn bell_state<T: Real>(kind: BellKind) -> PureState<T> {
    let h = T::FRAC_1_SQRT_2();
    let z = T::zero();
    let amps = match kind {
        BellKind::PhiPlus => [h, z, z, h],
        BellKind::PhiMinus => [h, z, z, -h],
        BellKind::PsiPlus => [z, h, h, z],
        BellKind::PsiMinus => [z, h, -h, z],
    };
    PureState {
        amps: amps.iter().map(|&a| Complex::new(a, T::zero())).collect(),
    }
}

/// `⊗ᵢ (cos θᵢ|0⟩ + sin θᵢ|1⟩)`, a product of real-amplitude qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct RealProductState<T> {
    angles: Vec<T>,
}

impl<T: Real> RealProductState<T> {
    /// Angles must lie in `[0, 2π)`.
    pub fn new(angles: Vec<T>) -> Result<Self> {
        let tau = T::TAU();
        if angles.is_empty() {
            return Err(Error::OutOfRange("a real product state needs at least one qubit".into()));
        }
        if let Some(a) = angles.iter().find(|a| !(**a >= T::zero() && **a < tau)) {
            return Err(Error::OutOfRange(format!("angle {a} outside [0, 2π)")));
        }
        Ok(Self { angles })
    }

    /// Reduces every angle modulo 2π first.
    pub fn wrapped(angles: Vec<T>) -> Result<Self> {
        let tau = T::TAU();
        Self::new(
            angles
                .into_iter()
                .map(|a| {
                    let r = a % tau;
                    let r = if r < T::zero() { r + tau } else { r };
                    if r >= tau {
                        T::zero()
                    } else {
                        r
                    }
                })
                .collect(),
        )
    }

    pub fn angles(&self) -> &[T] {
        &self.angles
    }

    pub fn qubits(&self) -> usize {
        self.angles.len()
    }

    pub fn to_pure(&self) -> PureState<T> {
        let mut amps = vec![Complex::new(T::one(), T::zero())];
        for &theta in &self.angles {
            let (c, s) = (theta.cos(), theta.sin());
            amps = amps
                .iter()
                .flat_map(|a| [*a * c, *a * s])
                .collect();
        }
        PureState { amps }
    }
}

/// Von Neumann entropy `−Σ λ log₂ λ` over the spectrum of `rho`.
///
/// Eigenvalues in `[−tol, 0)` count as zero; anything more negative is an error.
pub fn von_neumann_entropy<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    let tol = T::lit(T::TOL.state);
    let eig = rho.eigenvalues()?;
    let mut s = T::zero();
    for l in eig {
        if l < -tol {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {l:e}")));
        }
        if l > T::zero() {
            s = s - l * l.log2();
        }
    }
    Ok(s)
}

/// Shannon entropy in bits, with `0 log 0 = 0`.
pub fn shannon_entropy<T: Real>(p: &[T]) -> Result<T> {
    check_distribution(p)?;
    Ok(p.iter()
        .filter(|x| **x > T::zero())
        .fold(T::zero(), |acc, &x| acc - x * x.log2()))
}

pub(crate) fn check_distribution<T: Real>(p: &[T]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::InvalidDistribution("empty".into()));
    }
    if let Some(x) = p.iter().find(|x| !(**x >= T::zero()) || !x.is_finite()) {
        return Err(Error::InvalidDistribution(format!("entry {x} is not a probability")));
    }
    let total: T = p.iter().copied().sum();
    if (total - T::one()).abs() > T::lit(T::TOL.probability) {
        return Err(Error::InvalidDistribution(format!("sums to {total}")));
    }
    Ok(())
}

/// Number of qubits of a `2^n`-dimensional state.
pub fn qubits_of<T: Real>(rho: &DensityMatrix<T>) -> Result<usize> {
    log2_exact(rho.dim())
}
