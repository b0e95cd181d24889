//! n-qubit Pauli strings and decomposition of operators in the Pauli basis.
//!
//! Symbols are `0..=3` for `I, X, Y, Z`. A string `x = (x₁, …, xₙ)` is
//! indexed big-endian in base 4: `x₁` is the most significant digit, and in
//! the matrix `σ_{x₁} ⊗ … ⊗ σ_{xₙ}` qubit 1 is the leftmost tensor factor.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{log2_exact, ComplexMatrix};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    symbols: Vec<u8>,
}

impl PauliString {
    pub fn new(symbols: Vec<u8>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidPauli("empty string".into()));
        }
        if let Some(s) = symbols.iter().find(|s| **s > 3) {
            return Err(Error::InvalidPauli(format!("symbol {s} not in 0..=3")));
        }
        Ok(Self { symbols })
    }

    pub fn identity(n: usize) -> Self {
        Self { symbols: vec![0; n] }
    }

    /// Inverse of [`index`](Self::index) for `n`-qubit strings.
    pub fn from_index(index: usize, n: usize) -> Result<Self> {
        if n == 0 || n >= usize::BITS as usize / 2 || index >= 1 << (2 * n) {
            return Err(Error::OutOfRange(format!("Pauli index {index} for {n} qubits")));
        }
        let symbols = (0..n).map(|k| ((index >> (2 * (n - 1 - k))) & 3) as u8).collect();
        Ok(Self { symbols })
    }

    /// All `4ⁿ` strings in index order.
    pub fn all(n: usize) -> impl Iterator<Item = PauliString> {
        (0..1usize << (2 * n)).map(move |i| Self::from_index(i, n).expect("in range"))
    }

    /// Strings over a restricted alphabet, in index order.
    pub fn over(alphabet: &[u8], n: usize) -> Vec<PauliString> {
        let mut out = vec![Vec::with_capacity(n)];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u8>| {
                    alphabet.iter().map(move |&s| {
                        let mut p = prefix.clone();
                        p.push(s);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(|s| Self::new(s).expect("valid alphabet")).collect()
    }

    pub fn qubits(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn index(&self) -> usize {
        self.symbols.iter().fold(0, |acc, &s| acc * 4 + s as usize)
    }

    /// Bitmask of qubits whose factor flips the basis state (X or Y),
    /// qubit 1 in the most significant bit.
    fn flip_mask(&self) -> usize {
        self.symbols
            .iter()
            .fold(0, |acc, &s| (acc << 1) | usize::from(s == 1 || s == 2))
    }

    /// Nonzero entry of column `col`: the matrix maps `|col⟩` to
    /// `phase · |col ⊕ mask⟩`.
    fn column_entry<T: Real>(&self, col: usize) -> (usize, Complex<T>) {
        let n = self.symbols.len();
        let row = col ^ self.flip_mask();
        let mut phase = Complex::new(T::one(), T::zero());
        for (k, &s) in self.symbols.iter().enumerate() {
            let bit = (row >> (n - 1 - k)) & 1;
            let factor = match (s, bit) {
                (2, 0) => Complex::new(T::zero(), -T::one()),
                (2, _) => Complex::new(T::zero(), T::one()),
                (3, 1) => Complex::new(-T::one(), T::zero()),
                _ => continue,
            };
            phase = phase * factor;
        }
        (row, phase)
    }

    /// `σ_{x₁} ⊗ … ⊗ σ_{xₙ}` as a dense `2ⁿ×2ⁿ` matrix.
    pub fn matrix<T: Real>(&self) -> ComplexMatrix<T> {
        let d = 1usize << self.symbols.len();
        let mut m = ComplexMatrix::zeros(d, d);
        for col in 0..d {
            let (row, v) = self.column_entry(col);
            m[(row, col)] = v;
        }
        m
    }

    /// `hs_inner(σ̄ₓ, m)`, using the monomial structure of `σ̄ₓ`.
    fn coefficient<T: Real>(&self, m: &ComplexMatrix<T>) -> Complex<T> {
        let d = m.rows();
        let mut acc = Complex::zero();
        for col in 0..d {
            let (row, v) = self.column_entry::<T>(col);
            acc = acc + v.conj() * m[(row, col)];
        }
        acc / T::from_usize(d).unwrap()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            f.write_str(["I", "X", "Y", "Z"][*s as usize])?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses the compact `IXYZ` letter form; leftmost letter is qubit 1.
    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .map(|ch| match ch {
                'I' => Ok(0),
                'X' => Ok(1),
                'Y' => Ok(2),
                'Z' => Ok(3),
                other => Err(Error::InvalidPauli(format!("unknown letter {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(symbols)
    }
}

/// Coefficients of an operator in the orthonormal Pauli basis, indexed by
/// [`PauliString::index`].
#[derive(Debug, Clone, PartialEq)]
pub struct PauliCoefficients<T> {
    n: usize,
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> PauliCoefficients<T> {
    pub fn new(n: usize, coeffs: Vec<Complex<T>>) -> Result<Self> {
        if n == 0 || coeffs.len() != 1 << (2 * n) {
            return Err(Error::OutOfRange(format!(
                "{} coefficients for {n} qubits",
                coeffs.len()
            )));
        }
        Ok(Self { n, coeffs })
    }

    /// `coeffs[x] = hs_inner(σ̄ₓ, m)`. Cost is `O(8ⁿ)`.
    pub fn decompose(m: &ComplexMatrix<T>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                op: "pauli_decompose",
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let n = log2_exact(m.rows())?;
        if n == 0 {
            return Err(Error::NotPowerOfTwo(1));
        }
        let coeffs = PauliString::all(n).map(|x| x.coefficient(m)).collect();
        Ok(Self { n, coeffs })
    }

    /// `Σₓ coeffs[x] σ̄ₓ`.
    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        let d = 1usize << self.n;
        let mut m = ComplexMatrix::zeros(d, d);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = PauliString::from_index(i, self.n).expect("in range");
            for col in 0..d {
                let (row, v) = x.column_entry::<T>(col);
                m[(row, col)] = m[(row, col)] + *c * v;
            }
        }
        m
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    pub fn get(&self, x: &PauliString) -> Complex<T> {
        self.coeffs[x.index()]
    }

    /// `Σ |cₓ|²`, equal to the squared Hilbert–Schmidt norm of the operator.
    pub fn weight(&self) -> T {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Index of a Pauli string.
pub fn pauli_index(x: &PauliString) -> usize {
    x.index()
}

/// Inverse of [`pauli_index`].
pub fn pauli_decode(index: usize, n: usize) -> Result<PauliString> {
    PauliString::from_index(index, n)
}
