//! Mixed-unitary channels `E(ρ) = Σᵢ pᵢ Uᵢ (ρ ⊗ ρ_a) Uᵢ†`.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{log2_exact, ComplexMatrix};
use crate::pauli::PauliString;
use crate::scalar::Real;
use crate::states::{check_distribution, DensityMatrix, PureState};

/// One key of a channel: probability `p` and unitary `U` on all `m` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Term<T> {
    pub p: T,
    pub unitary: ComplexMatrix<T>,
    /// Set when `unitary` is exactly a Pauli string matrix.
    pub pauli: Option<PauliString>,
}

impl<T: Real> Term<T> {
    pub fn new(p: T, unitary: ComplexMatrix<T>) -> Self {
        Self {
            p,
            unitary,
            pauli: None,
        }
    }

    pub fn pauli(p: T, x: PauliString) -> Self {
        Self {
            p,
            unitary: x.matrix(),
            pauli: Some(x),
        }
    }
}

/// Where a fixed unitary `V` is attached in [`MixedUnitaryChannel::conjugate_terms`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `V Uᵢ`
    Left,
    /// `Uᵢ V`
    Right,
    /// `V Uᵢ V†`
    Both,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixedUnitaryChannel<T> {
    n: usize,
    m: usize,
    ancilla: Option<DensityMatrix<T>>,
    terms: Vec<Term<T>>,
    dropped: usize,
}

impl<T: Real> MixedUnitaryChannel<T> {
    /// Validates and builds a channel on `n` input qubits.
    ///
    /// The total register size `m` is read off the unitaries. An ancilla of
    /// `m − n` qubits is required iff `m > n`. Terms with probability below
    /// the prune tolerance are dropped and counted in
    /// [`dropped_terms`](Self::dropped_terms).
    pub fn new(n: usize, terms: Vec<Term<T>>, ancilla: Option<DensityMatrix<T>>) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::InvalidDistribution("channel has no terms".into()))?;
        let side = first.unitary.rows();
        let m = log2_exact(side)?;
        if n == 0 || m < n {
            return Err(Error::OutOfRange(format!("{n} input qubits with {m}-qubit unitaries")));
        }
        match (&ancilla, m > n) {
            (None, false) => {}
            (Some(a), true) if a.dim() == 1 << (m - n) => {}
            (a, _) => {
                return Err(Error::DimensionMismatch {
                    op: "channel ancilla",
                    left: (1 << (m - n), 1 << (m - n)),
                    right: a.as_ref().map_or((0, 0), |a| (a.dim(), a.dim())),
                })
            }
        }
        let probs: Vec<T> = terms.iter().map(|t| t.p).collect();
        check_distribution(&probs)?;
        let unitary_tol = T::lit(T::TOL.unitary);
        for t in &terms {
            if t.unitary.shape() != (side, side) {
                return Err(Error::DimensionMismatch {
                    op: "channel term",
                    left: (side, side),
                    right: t.unitary.shape(),
                });
            }
            let dev = t.unitary.unitary_deviation()?;
            if dev > unitary_tol {
                return Err(Error::NotUnitary { deviation: dev.as_f64() });
            }
        }
        let prune = T::lit(T::TOL.prune);
        let before = terms.len();
        let terms: Vec<Term<T>> = terms.into_iter().filter(|t| t.p >= prune).collect();
        let dropped = before - terms.len();
        Ok(Self {
            n,
            m,
            ancilla,
            terms,
            dropped,
        })
    }

    /// Uniform mixture over Pauli strings, no ancilla.
    pub fn uniform_pauli(strings: Vec<PauliString>) -> Result<Self> {
        let n = strings
            .first()
            .map(PauliString::qubits)
            .ok_or_else(|| Error::InvalidDistribution("channel has no terms".into()))?;
        let p = T::one() / T::from_usize(strings.len()).unwrap();
        Self::new(n, strings.into_iter().map(|x| Term::pauli(p, x)).collect(), None)
    }

    pub fn input_qubits(&self) -> usize {
        self.n
    }

    pub fn total_qubits(&self) -> usize {
        self.m
    }

    pub fn input_dim(&self) -> usize {
        1 << self.n
    }

    pub fn output_dim(&self) -> usize {
        1 << self.m
    }

    fn ancilla_dim(&self) -> usize {
        1 << (self.m - self.n)
    }

    pub fn ancilla(&self) -> Option<&DensityMatrix<T>> {
        self.ancilla.as_ref()
    }

    pub fn terms(&self) -> &[Term<T>] {
        &self.terms
    }

    pub fn probabilities(&self) -> Vec<T> {
        self.terms.iter().map(|t| t.p).collect()
    }

    /// Number of terms removed at construction for negligible probability.
    pub fn dropped_terms(&self) -> usize {
        self.dropped
    }

    /// `M ⊗ ρ_a`, or `M` without ancilla.
    pub fn extend(&self, op: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        match &self.ancilla {
            Some(a) => op.tensor(a.matrix()),
            None => op.clone(),
        }
    }

    fn check_input(&self, op: &ComplexMatrix<T>, name: &'static str) -> Result<()> {
        let d = self.input_dim();
        if op.shape() != (d, d) {
            return Err(Error::DimensionMismatch {
                op: name,
                left: (d, d),
                right: op.shape(),
            });
        }
        Ok(())
    }

    /// Linear action on an arbitrary `2ⁿ×2ⁿ` operator.
    pub fn apply_to_operator(&self, op: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
        self.check_input(op, "apply_to_operator")?;
        let ext = self.extend(op);
        let d = self.output_dim();
        let mut acc = ComplexMatrix::zeros(d, d);
        for t in &self.terms {
            let v = t.unitary.matmul(&ext)?.matmul(&t.unitary.dagger())?;
            acc.add_scaled(Complex::new(t.p, T::zero()), &v)?;
        }
        Ok(acc)
    }

    pub fn apply(&self, rho: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
        Ok(DensityMatrix::trusted(self.apply_to_operator(rho.matrix())?))
    }

    /// `E(|φ⟩⟨φ| ⊗ ρ_a)` without forming the input density matrix when there
    /// is no ancilla.
    pub fn apply_to_pure(&self, phi: &PureState<T>) -> Result<ComplexMatrix<T>> {
        if phi.dim() != self.input_dim() {
            return Err(Error::DimensionMismatch {
                op: "apply_to_pure",
                left: (self.input_dim(), 1),
                right: (phi.dim(), 1),
            });
        }
        if self.ancilla.is_some() {
            return self.apply_to_operator(phi.density().matrix());
        }
        let d = self.output_dim();
        let mut acc = ComplexMatrix::zeros(d, d);
        for t in &self.terms {
            let v = t.unitary.mul_vec(phi.amplitudes())?;
            acc.add_scaled(Complex::new(t.p, T::zero()), &ComplexMatrix::outer(&v, &v))?;
        }
        Ok(acc)
    }

    /// `E(|x⟩⟨y|)` for computational basis indices of the input space.
    ///
    /// Only the ancilla-sized column blocks of each unitary are touched, so
    /// this is much cheaper than [`apply_to_operator`](Self::apply_to_operator).
    pub fn apply_to_unit(&self, x: usize, y: usize) -> ComplexMatrix<T> {
        let d = self.output_dim();
        let a = self.ancilla_dim();
        let mut acc = ComplexMatrix::zeros(d, d);
        for t in &self.terms {
            let u = &t.unitary;
            let p = Complex::new(t.p, T::zero());
            match &self.ancilla {
                None => {
                    for r in 0..d {
                        let ur = u[(r, x)] * p;
                        if ur.is_zero() {
                            continue;
                        }
                        for s in 0..d {
                            acc[(r, s)] = acc[(r, s)] + ur * u[(s, y)].conj();
                        }
                    }
                }
                Some(anc) => {
                    let rho = anc.matrix();
                    // left[r][l] = Σ_k U[r, x·a + k] ρ_a[k, l]
                    let left = ComplexMatrix::from_fn(d, a, |r, l| {
                        (0..a).fold(Complex::<T>::zero(), |s, k| s + u[(r, x * a + k)] * rho[(k, l)])
                    });
                    for r in 0..d {
                        for s in 0..d {
                            let v = (0..a).fold(Complex::<T>::zero(), |acc, l| acc + left[(r, l)] * u[(s, y * a + l)].conj());
                            acc[(r, s)] = acc[(r, s)] + p * v;
                        }
                    }
                }
            }
        }
        acc
    }

    /// Block matrix whose `(x, y)` block is `E(|x⟩⟨y|)`.
    pub fn process_matrix(&self) -> ProcessMatrix<T> {
        let (din, dout) = (self.input_dim(), self.output_dim());
        let mut mat = ComplexMatrix::zeros(din * dout, din * dout);
        for x in 0..din {
            for y in 0..din {
                let block = self.apply_to_unit(x, y);
                for r in 0..dout {
                    for s in 0..dout {
                        mat[(x * dout + r, y * dout + s)] = block[(r, s)];
                    }
                }
            }
        }
        ProcessMatrix {
            input_dim: din,
            output_dim: dout,
            mat,
        }
    }

    /// Whether two channels act identically, up to `tol` in the max-entry
    /// distance of their process matrices.
    ///
    /// Channels of different shape, or with ancillas differing by more than
    /// `tol`, are reported as [`Error::ShapeMismatch`] rather than `false`.
    pub fn equals(&self, other: &Self, tol: T) -> Result<bool> {
        if (self.n, self.m) != (other.n, other.m) {
            return Err(Error::ShapeMismatch(format!(
                "({}, {}) qubits vs ({}, {})",
                self.n, self.m, other.n, other.m
            )));
        }
        if let (Some(a), Some(b)) = (&self.ancilla, &other.ancilla) {
            if a.matrix().max_abs_diff(b.matrix())? > tol {
                return Err(Error::ShapeMismatch("ancilla states differ".into()));
            }
        }
        let dist = self.process_matrix().mat.max_abs_diff(&other.process_matrix().mat)?;
        Ok(dist <= tol)
    }

    /// Attaches a fixed unitary `V` to every term.
    pub fn conjugate_terms(&self, v: &ComplexMatrix<T>, side: Side) -> Result<Self> {
        let d = self.output_dim();
        if v.shape() != (d, d) {
            return Err(Error::DimensionMismatch {
                op: "conjugate_terms",
                left: (d, d),
                right: v.shape(),
            });
        }
        let dev = v.unitary_deviation()?;
        if dev > T::lit(T::TOL.unitary) {
            return Err(Error::NotUnitary { deviation: dev.as_f64() });
        }
        let vd = v.dagger();
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let u = match side {
                    Side::Left => v.matmul(&t.unitary)?,
                    Side::Right => t.unitary.matmul(v)?,
                    Side::Both => v.matmul(&t.unitary)?.matmul(&vd)?,
                };
                Ok(Term::new(t.p, u))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            n: self.n,
            m: self.m,
            ancilla: self.ancilla.clone(),
            terms,
            dropped: self.dropped,
        })
    }
}

/// Process (Choi-type) matrix: side `input_dim · output_dim`, block `(x, y)`
/// equal to `E(|x⟩⟨y|)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProcessMatrix<T> {
    input_dim: usize,
    output_dim: usize,
    mat: ComplexMatrix<T>,
}

impl<T: Real> ProcessMatrix<T> {
    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn output_dim(&self) -> usize {
        self.output_dim
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.mat
    }

    pub fn block(&self, x: usize, y: usize) -> ComplexMatrix<T> {
        let d = self.output_dim;
        ComplexMatrix::from_fn(d, d, |r, s| self.mat[(x * d + r, y * d + s)])
    }
}
