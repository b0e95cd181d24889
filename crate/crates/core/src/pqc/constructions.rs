use num_traits::Zero;

use super::{cplx, default_tol, verify_pqc, PqcInstance, StateSet};
use crate::channels::{MixedUnitaryChannel, Term};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::pauli::PauliString;
use crate::scalar::Real;
use crate::states::{completely_mixed, DensityMatrix, PureState};

/// Largest register the pad constructors accept.
pub const MAX_PAD_QUBITS: usize = 5;
/// Largest base register [`lift_to_classical`] accepts; the lifted channel
/// has `4ⁿ` dense `4ⁿ×4ⁿ` keys.
pub const MAX_LIFT_QUBITS: usize = 3;

fn check_pad_size(n: usize) -> Result<()> {
    if (1..=MAX_PAD_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("pad size n = {n} outside 1..={MAX_PAD_QUBITS}")))
    }
}

/// Quantum one-time pad: all `4ⁿ` Pauli strings with probability `4⁻ⁿ`,
/// hiding every `n`-qubit state behind `Ĩ_{2ⁿ}`.
pub fn build_pauli_otp<T: Real>(n: usize) -> Result<PqcInstance<T>> {
    check_pad_size(n)?;
    let channel = MixedUnitaryChannel::uniform_pauli(PauliString::all(n).collect())?;
    PqcInstance::new(StateSet::FullHilbert(n), channel, completely_mixed(1 << n))
}

/// Pad for products of real-amplitude qubits: strings over `{I, Y}` with
/// probability `2⁻ⁿ`.
pub fn build_real_otp<T: Real>(n: usize) -> Result<PqcInstance<T>> {
    check_pad_size(n)?;
    let channel = MixedUnitaryChannel::uniform_pauli(PauliString::over(&[0, 2], n))?;
    PqcInstance::new(StateSet::RealProduct(n), channel, completely_mixed(1 << n))
}

/// Classical one-time pad on `n` bits: strings over `{I, X}` acting on the
/// `2ⁿ` basis states.
pub fn build_classical_otp<T: Real>(n: usize) -> Result<PqcInstance<T>> {
    check_pad_size(n)?;
    let channel = MixedUnitaryChannel::uniform_pauli(PauliString::over(&[0, 1], n))?;
    PqcInstance::new(StateSet::ClassicalStates(1 << n), channel, completely_mixed(1 << n))
}

/// States `{|0⟩, |+⟩}` under `{I, H}` with equal weight; the common image
/// is `[[3/4, 1/4], [1/4, 1/4]]`, not the completely mixed state.
pub fn build_example_pqc<T: Real>() -> Result<PqcInstance<T>> {
    let h = T::FRAC_1_SQRT_2();
    let half = T::lit(0.5);
    let states = vec![
        PureState::basis(2, 0)?,
        PureState::new(vec![cplx(h), cplx(h)])?,
    ];
    let hadamard = ComplexMatrix::from_rows(vec![vec![cplx(h), cplx(h)], vec![cplx(h), cplx(-h)]])?;
    let channel = MixedUnitaryChannel::new(
        1,
        vec![Term::new(half, ComplexMatrix::identity(2)), Term::new(half, hadamard)],
        None,
    )?;
    let target = DensityMatrix::new(ComplexMatrix::from_real(&[&[0.75, 0.25], &[0.25, 0.25]])?)?;
    PqcInstance::new(StateSet::ExplicitList(states), channel, target)
}

/// The `4ⁿ×4ⁿ` unitary whose column `x` is `(σ̄ₓ ⊗ I) 2^{-n/2} Σᵢ |i⟩|i⟩`,
/// i.e. the Pauli-displaced maximally entangled states (a tensor product of
/// `n` Bell pairs between qubit `k` and qubit `n + k`).
pub fn bell_basis_unitary<T: Real>(n: usize) -> ComplexMatrix<T> {
    let d = 1usize << n;
    let norm = T::one() / T::from_usize(d).unwrap().sqrt();
    let mut u = ComplexMatrix::zeros(d * d, d * d);
    for (col, x) in PauliString::all(n).enumerate() {
        let sigma = x.matrix::<T>();
        for i in 0..d {
            for r in 0..d {
                let v = sigma[(r, i)];
                if !v.is_zero() {
                    u[(r * d + i, col)] = v * norm;
                }
            }
        }
    }
    u
}

/// `(I_d ⊗ B) A` for `d×d` blocks `B`, without forming the Kronecker product.
fn block_diag_mul<T: Real>(b: &ComplexMatrix<T>, a: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    let d = b.rows();
    let side = a.rows();
    let mut out = ComplexMatrix::zeros(side, a.cols());
    for blk in 0..side / d {
        for r in 0..d {
            for k in 0..d {
                let coef = b[(r, k)];
                if coef.is_zero() {
                    continue;
                }
                let src = a.row(blk * d + k).to_vec();
                for (c, v) in src.iter().enumerate() {
                    out[(blk * d + r, c)] = out[(blk * d + r, c)] + coef * *v;
                }
            }
        }
    }
    out
}

/// Turns a private channel for all `n`-qubit states into one for the `4ⁿ`
/// classical states of `2n` qubits, with the same key distribution.
///
/// Key `i` becomes `U'ᵢ = (I ⊗ Uᵢ) U` with `U` from [`bell_basis_unitary`],
/// and the common image becomes `Ĩ_{2ⁿ} ⊗ ρ₀`. The base must be ancilla-free,
/// over `FullHilbert(n)`, and pass [`verify_pqc`] at the default tolerance.
pub fn lift_to_classical<T: Real>(inst: &PqcInstance<T>) -> Result<PqcInstance<T>> {
    let n = match inst.states() {
        StateSet::FullHilbert(n) => *n,
        other => {
            return Err(Error::Precondition(format!(
                "lifting needs a full Hilbert space state set, got {}",
                describe(other)
            )))
        }
    };
    let base = inst.channel();
    if base.ancilla().is_some() {
        return Err(Error::Precondition("lifting needs an ancilla-free channel".into()));
    }
    if n > MAX_LIFT_QUBITS {
        return Err(Error::OutOfRange(format!("lifting supports base registers up to {MAX_LIFT_QUBITS} qubits, got {n}")));
    }
    let report = verify_pqc(inst, default_tol())?;
    if !report.ok {
        return Err(Error::Precondition(format!(
            "base instance is not private (worst deviation {:e})",
            report.worst_deviation
        )));
    }

    let u = bell_basis_unitary::<T>(n);
    let terms = base
        .terms()
        .iter()
        .map(|t| Term::new(t.p, block_diag_mul(&t.unitary, &u)))
        .collect();
    let channel = MixedUnitaryChannel::new(2 * n, terms, None)?;
    let target = completely_mixed::<T>(1 << n).tensor(inst.target());
    PqcInstance::new(StateSet::ClassicalStates(1 << (2 * n)), channel, target)
}

pub(crate) fn describe<T>(s: &StateSet<T>) -> String {
    match s {
        StateSet::FullHilbert(n) => format!("full Hilbert space of {n} qubits"),
        StateSet::RealProduct(n) => format!("real product states of {n} qubits"),
        StateSet::ClassicalStates(k) => format!("{k} classical states"),
        StateSet::ExplicitList(v) => format!("explicit list of {} states", v.len()),
    }
}
