use std::fmt;

use rayon::prelude::*;

use super::{PqcInstance, StateSet};
use crate::error::Result;
use crate::linalg::ComplexMatrix;
use crate::rng::SplitMix64;
use crate::scalar::Real;
use crate::states::{PureState, RealProductState};

/// Angles per qubit on the full real-product grid (multiples of π/8).
const GRID_ANGLES: usize = 16;
const GRID_CAP: usize = 4096;
const RANDOM_TUPLES: usize = 100;
const RANDOM_SEED: u64 = 0x5EED_2BAD;

/// A checked input: an operator `|row⟩⟨col|` or a pure state.
#[derive(Debug, Clone, PartialEq)]
pub enum Input<T> {
    /// Basis operator; diagonal ones must map to `ρ₀`, the rest to zero.
    Unit { row: usize, col: usize },
    Basis(usize),
    Angles(Vec<T>),
    Listed(usize),
}

impl<T: Real> fmt::Display for Input<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Input::Unit { row, col } => write!(f, "|{row}><{col}|"),
            Input::Basis(i) => write!(f, "|{i}>"),
            Input::Angles(a) => {
                write!(f, "real product state with angles [")?;
                for (k, t) in a.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, "]")
            }
            Input::Listed(i) => write!(f, "listed state #{i}"),
        }
    }
}

/// First input (in check order) whose image misses its expected value.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness<T> {
    pub input: Input<T>,
    pub deviation: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport<T> {
    /// `worst_deviation <= tol`.
    pub ok: bool,
    /// Largest max-entry distance between an image and its expected value.
    pub worst_deviation: T,
    pub witness: Option<Witness<T>>,
    pub checked: usize,
    pub tol: T,
}

impl<T: Real> fmt::Display for VerificationReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", if self.ok { "ok" } else { "fail" })?;
        writeln!(f, "checked = {}", self.checked)?;
        writeln!(f, "worst_deviation = {:e}", self.worst_deviation)?;
        match &self.witness {
            Some(w) => write!(f, "witness = {} (deviation {:e})", w.input, w.deviation),
            None => write!(f, "witness = none"),
        }
    }
}

/// Checks `E(|φ⟩⟨φ| ⊗ ρ_a) = ρ₀` over the instance's state set.
///
/// * `FullHilbert(n)`: by linearity it suffices that every `|x⟩⟨x|` maps to
///   `ρ₀` and every `|x⟩⟨y|`, `x ≠ y`, maps to zero. This check is exact.
/// * `ClassicalStates(k)`: the `k` basis states.
/// * `RealProduct(n)`: a deterministic angle grid (multiples of π/8, thinned
///   per qubit to at most 4096 products) plus 100 seeded random angle tuples.
/// * `ExplicitList`: each listed state.
///
/// Inputs are checked in parallel; the witness is the first violator in
/// check order, so the report does not depend on scheduling.
pub fn verify_pqc<T: Real>(inst: &PqcInstance<T>, tol: T) -> Result<VerificationReport<T>> {
    let e = inst.channel();
    let target = inst.target().matrix();
    let d = e.input_dim();
    let zero = ComplexMatrix::<T>::zeros(e.output_dim(), e.output_dim());

    let deviations: Vec<(Input<T>, T)> = match inst.states() {
        StateSet::FullHilbert(_) => (0..d * d)
            .into_par_iter()
            .map(|k| {
                let (row, col) = (k / d, k % d);
                let img = e.apply_to_unit(row, col);
                let expect = if row == col { target } else { &zero };
                Ok((Input::Unit { row, col }, img.max_abs_diff(expect)?))
            })
            .collect::<Result<_>>()?,
        StateSet::ClassicalStates(k) => (0..*k)
            .into_par_iter()
            .map(|i| Ok((Input::Basis(i), e.apply_to_unit(i, i).max_abs_diff(target)?)))
            .collect::<Result<_>>()?,
        StateSet::RealProduct(n) => real_product_inputs::<T>(*n)
            .into_par_iter()
            .map(|angles| {
                let phi = RealProductState::new(angles.clone())?.to_pure();
                Ok((Input::Angles(angles), e.apply_to_pure(&phi)?.max_abs_diff(target)?))
            })
            .collect::<Result<_>>()?,
        StateSet::ExplicitList(states) => states
            .par_iter()
            .enumerate()
            .map(|(i, phi): (usize, &PureState<T>)| Ok((Input::Listed(i), e.apply_to_pure(phi)?.max_abs_diff(target)?)))
            .collect::<Result<_>>()?,
    };

    let checked = deviations.len();
    let worst_deviation = deviations.iter().map(|(_, dev)| *dev).fold(T::zero(), T::max);
    let witness = deviations
        .into_iter()
        .find(|(_, dev)| !(*dev <= tol))
        .map(|(input, deviation)| Witness { input, deviation });
    Ok(VerificationReport {
        ok: witness.is_none(),
        worst_deviation,
        witness,
        checked,
        tol,
    })
}

/// Grid angles first (odometer order, last qubit fastest), then random tuples.
fn real_product_inputs<T: Real>(n: usize) -> Vec<Vec<T>> {
    let mut per_qubit = GRID_ANGLES;
    while per_qubit > 1 && (per_qubit as f64).powi(n as i32) > GRID_CAP as f64 {
        per_qubit /= 2;
    }
    let stride = GRID_ANGLES / per_qubit;
    let step = std::f64::consts::PI / 8.0;
    let mut out = Vec::new();
    let total = per_qubit.pow(n as u32);
    for mut k in 0..total {
        let mut angles = vec![T::zero(); n];
        for slot in angles.iter_mut().rev() {
            *slot = T::lit((k % per_qubit * stride) as f64 * step);
            k /= per_qubit;
        }
        out.push(angles);
    }
    let mut rng = SplitMix64::new(RANDOM_SEED);
    let tau = T::TAU();
    for _ in 0..RANDOM_TUPLES {
        out.push(
            (0..n)
                .map(|_| {
                    let a = T::lit(rng.next_f64() * std::f64::consts::TAU);
                    if a >= tau {
                        T::zero()
                    } else {
                        a
                    }
                })
                .collect(),
        );
    }
    out
}
