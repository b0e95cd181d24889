use std::fmt;

use super::constructions::describe;
use super::{verify_pqc, PqcInstance, StateSet};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::pauli::PauliCoefficients;
use crate::scalar::Real;
use crate::states::{completely_mixed, shannon_entropy};

/// Checks that a private channel over a set whose mixtures reach `Ĩ_{2ⁿ}`
/// has `Ĩ_{2ⁿ}` as its image.
///
/// Accepted state sets are `FullHilbert(n)` and `ClassicalStates(2ⁿ)`; the
/// channel must be ancilla-free. Returns `Ok(false)` when the instance does not
/// verify. A verified instance whose target is not completely mixed would
/// contradict the underlying result and is reported as
/// [`Error::GuaranteeViolated`].
pub fn certify_mixed_target<T: Real>(inst: &PqcInstance<T>, tol: T) -> Result<bool> {
    let e = inst.channel();
    if e.ancilla().is_some() {
        return Err(Error::Precondition("completely mixed target check needs an ancilla-free channel".into()));
    }
    match inst.states() {
        StateSet::FullHilbert(_) => {}
        StateSet::ClassicalStates(k) if *k == e.input_dim() => {}
        other => {
            return Err(Error::Precondition(format!(
                "completely mixed target check needs the full Hilbert space or all {} classical states, got {}",
                e.input_dim(),
                describe(other)
            )))
        }
    }
    if !verify_pqc(inst, tol)?.ok {
        return Ok(false);
    }
    let mixed = completely_mixed::<T>(e.output_dim());
    let dev = inst.target().matrix().max_abs_diff(mixed.matrix())?;
    if dev <= tol {
        Ok(true)
    } else {
        Err(Error::GuaranteeViolated(format!(
            "verified instance has target {:e} away from the completely mixed state",
            dev
        )))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KeyBoundReport<T> {
    /// Largest key probability.
    pub max_p: T,
    /// Number of keys `N`.
    pub term_count: usize,
    /// `4⁻ⁿ`.
    pub bound: T,
    /// Largest `|Σₓ|cₓ|² − pᵢ|` over keys.
    pub parseval_deviation: T,
    /// `‖A†A − I‖_max` for the `N×4ⁿ` matrix `A` expressing each `√pᵢUᵢ`
    /// in the scaled Pauli basis `σ̄ₓ/2ⁿ`.
    pub isometry_deviation: T,
    pub parseval_ok: bool,
    pub isometry_ok: bool,
    pub bound_ok: bool,
    pub ok: bool,
}

impl<T: Real> fmt::Display for KeyBoundReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", if self.ok { "ok" } else { "fail" })?;
        writeln!(f, "max_p = {:?}", self.max_p)?;
        writeln!(f, "bound = {:?}", self.bound)?;
        writeln!(f, "term_count = {}", self.term_count)?;
        writeln!(f, "parseval_ok = {} (deviation {:e})", self.parseval_ok, self.parseval_deviation)?;
        writeln!(f, "isometry_ok = {} (deviation {:e})", self.isometry_ok, self.isometry_deviation)?;
        write!(f, "bound_ok = {}", self.bound_ok)
    }
}

/// Key-probability bound for channels that completely mix every `n`-qubit
/// state: every `pᵢ ≤ 4⁻ⁿ`, hence `N ≥ 4ⁿ` and `H(p) ≥ 2n`.
///
/// Such a channel equals the uniform Pauli channel, so each `√pᵢUᵢ` is
/// `Σₓ Aᵢₓ σ̄ₓ/2ⁿ` for a matrix `A` with orthonormal columns. Then
/// `pᵢ = ‖√pᵢUᵢ‖² = Σₓ|Aᵢₓ|²/4ⁿ ≤ 4⁻ⁿ`. The report checks each link:
/// Parseval for every key, the orthonormal columns of `A`, and the bound.
///
/// Requires an ancilla-free `FullHilbert(n)` instance with target `Ĩ_{2ⁿ}`
/// that passes [`verify_pqc`] at `tol`.
pub fn certify_key_bound<T: Real>(inst: &PqcInstance<T>, tol: T) -> Result<KeyBoundReport<T>> {
    let e = inst.channel();
    let n = match inst.states() {
        StateSet::FullHilbert(n) => *n,
        other => {
            return Err(Error::Precondition(format!(
                "key bound needs the full Hilbert space, got {}",
                describe(other)
            )))
        }
    };
    if e.ancilla().is_some() {
        return Err(Error::Precondition("key bound needs an ancilla-free channel".into()));
    }
    let d = e.input_dim();
    let dev = inst.target().matrix().max_abs_diff(completely_mixed::<T>(d).matrix())?;
    if !(dev <= tol) {
        return Err(Error::Precondition(format!(
            "key bound needs the completely mixed target, deviation {:e}",
            dev
        )));
    }
    let report = verify_pqc(inst, tol)?;
    if !report.ok {
        return Err(Error::Precondition(format!(
            "instance does not verify (worst deviation {:e})",
            report.worst_deviation
        )));
    }

    let scale = T::from_usize(d).unwrap();
    let bound = T::lit(0.25).powi(n as i32);
    let mut rows = Vec::with_capacity(e.terms().len());
    let mut parseval_deviation = T::zero();
    let mut max_p = T::zero();
    for t in e.terms() {
        let kraus = t.unitary.scale_real(t.p.sqrt());
        let coeffs = PauliCoefficients::decompose(&kraus)?;
        parseval_deviation = parseval_deviation.max((coeffs.weight() - t.p).abs());
        max_p = max_p.max(t.p);
        rows.push(coeffs.coeffs().iter().map(|c| c.scale(scale)).collect::<Vec<_>>());
    }
    let a = ComplexMatrix::from_rows(rows)?;
    let gram = a.dagger().matmul(&a)?;
    let isometry_deviation = gram.max_abs_diff(&ComplexMatrix::identity(d * d))?;

    let parseval_ok = parseval_deviation <= tol;
    let isometry_ok = isometry_deviation <= tol * scale * scale;
    let bound_ok = e.terms().iter().all(|t| t.p <= bound + tol);
    Ok(KeyBoundReport {
        max_p,
        term_count: e.terms().len(),
        bound,
        parseval_deviation,
        isometry_deviation,
        parseval_ok,
        isometry_ok,
        bound_ok,
        ok: parseval_ok && isometry_ok && bound_ok,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyBoundsReport<T> {
    /// `S(ρ₀)` in bits.
    pub s_rho0: T,
    /// `H(p)` in bits.
    pub h_p: T,
    /// `S(ρ_a)`, zero without an ancilla.
    pub s_ancilla: T,
    /// `m'` with `k = 2^{m'}` classical states.
    pub classical_bits: usize,
    /// `S(ρ₀) ≥ m' + S(ρ_a) − tol`.
    pub lower_ok: bool,
    /// `S(ρ₀) ≤ H(p) + S(ρ_a) + tol`.
    pub upper_ok: bool,
}

impl<T: Real> EntropyBoundsReport<T> {
    pub fn ok(&self) -> bool {
        self.lower_ok && self.upper_ok
    }

    /// `H(p) + S(ρ_a) − S(ρ₀)`.
    pub fn upper_gap(&self) -> T {
        self.h_p + self.s_ancilla - self.s_rho0
    }

    /// `S(ρ₀) − m' − S(ρ_a)`.
    pub fn lower_gap(&self) -> T {
        self.s_rho0 - T::from_usize(self.classical_bits).unwrap() - self.s_ancilla
    }
}

impl<T: Real> fmt::Display for EntropyBoundsReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", if self.ok() { "ok" } else { "fail" })?;
        writeln!(f, "S_rho0 = {:?}", self.s_rho0)?;
        writeln!(f, "H_p = {:?}", self.h_p)?;
        writeln!(f, "S_ancilla = {:?}", self.s_ancilla)?;
        writeln!(f, "classical_bits = {}", self.classical_bits)?;
        writeln!(f, "lower_ok = {}", self.lower_ok)?;
        write!(f, "upper_ok = {}", self.upper_ok)
    }
}

/// Entropy sandwich for a channel hiding `2^{m'}` classical states:
/// `m' + S(ρ_a) ≤ S(ρ₀) ≤ H(p) + S(ρ_a)`.
///
/// The upper side holds for any mixed-unitary image; the lower side holds
/// because the ciphertexts of distinct basis states are mutually orthogonal
/// before mixing. A verified instance violating either side is reported in
/// the flags rather than as an error so callers can inspect the numbers.
pub fn certify_entropy_bounds<T: Real>(inst: &PqcInstance<T>, tol: T) -> Result<EntropyBoundsReport<T>> {
    let classical_bits = match (inst.states(), inst.classical_bits()) {
        (StateSet::ClassicalStates(_), Some(bits)) => bits,
        (other, _) => {
            return Err(Error::Precondition(format!(
                "entropy bounds need a power-of-two classical state set, got {}",
                describe(other)
            )))
        }
    };
    let report = verify_pqc(inst, tol)?;
    if !report.ok {
        return Err(Error::Precondition(format!(
            "instance does not verify (worst deviation {:e})",
            report.worst_deviation
        )));
    }
    let s_rho0 = inst.target().entropy()?;
    let h_p = shannon_entropy(&inst.channel().probabilities())?;
    let s_ancilla = match inst.channel().ancilla() {
        Some(a) => a.entropy()?,
        None => T::zero(),
    };
    let bits = T::from_usize(classical_bits).unwrap();
    Ok(EntropyBoundsReport {
        s_rho0,
        h_p,
        s_ancilla,
        classical_bits,
        lower_ok: s_rho0 >= bits + s_ancilla - tol,
        upper_ok: s_rho0 <= h_p + s_ancilla + tol,
    })
}
