//! Private quantum channels `[S, E, ρ_a, ρ₀]`: a state set, a keyed
//! mixed-unitary channel with optional ancilla, and the fixed output every
//! state in the set must map to.
//!
//! The same objects describe state randomization: a procedure that maps
//! every input from `S` to `ρ₀` using classical randomness with entropy
//! `H(p)`.

mod certify;
mod constructions;
mod search;
mod verify;

use num_complex::Complex;

use crate::channels::MixedUnitaryChannel;
use crate::error::{Error, Result};
use crate::linalg::log2_exact;
use crate::rng::SplitMix64;
use crate::scalar::Real;
use crate::states::{shannon_entropy, DensityMatrix, PureState, RealProductState};

pub use certify::{
    certify_entropy_bounds, certify_key_bound, certify_mixed_target, EntropyBoundsReport, KeyBoundReport,
};
pub use constructions::{
    bell_basis_unitary, build_classical_otp, build_example_pqc, build_pauli_otp, build_real_otp,
    lift_to_classical, MAX_LIFT_QUBITS, MAX_PAD_QUBITS,
};
pub use search::{search_three_term_depolarizers, SearchReport};
pub use verify::{verify_pqc, Input, VerificationReport, Witness};

/// Default tolerance for verifiers and certifiers at precision `T`
/// (`1e-9` for `f64`).
pub fn default_tol<T: Real>() -> T {
    T::lit(T::TOL.state * 10.0)
}

/// The set of pure input states a channel must hide.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSet<T> {
    /// Every state of `n` qubits.
    FullHilbert(usize),
    /// Products of `n` real-amplitude qubits `cos θ|0⟩ + sin θ|1⟩`.
    RealProduct(usize),
    /// The first `k` computational basis states.
    ClassicalStates(usize),
    ExplicitList(Vec<PureState<T>>),
}

impl<T: Real> StateSet<T> {
    fn validate(&self, input_dim: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::Precondition(msg));
        match self {
            StateSet::FullHilbert(n) | StateSet::RealProduct(n) => {
                if *n == 0 {
                    return bad("state set needs at least one qubit".into());
                }
                if *n >= usize::BITS as usize || 1usize << n != input_dim {
                    return Err(Error::DimensionMismatch {
                        op: "state set",
                        left: (input_dim, input_dim),
                        right: (1 << n, 1 << n),
                    });
                }
            }
            StateSet::ClassicalStates(k) => {
                if *k < 2 {
                    return bad(format!("classical state set needs k >= 2, got {k}"));
                }
                if *k > input_dim {
                    return Err(Error::DimensionMismatch {
                        op: "state set",
                        left: (input_dim, input_dim),
                        right: (*k, *k),
                    });
                }
            }
            StateSet::ExplicitList(states) => {
                if states.is_empty() {
                    return bad("explicit state list is empty".into());
                }
                if let Some(s) = states.iter().find(|s| s.dim() != input_dim) {
                    return Err(Error::DimensionMismatch {
                        op: "state set",
                        left: (input_dim, input_dim),
                        right: (s.dim(), s.dim()),
                    });
                }
            }
        }
        Ok(())
    }

    /// Draws a state from the set (or, for explicit lists, one of the listed states).
    pub fn sample(&self, rng: &mut SplitMix64, input_dim: usize) -> PureState<T> {
        match self {
            StateSet::FullHilbert(_) => crate::sampling::random_pure_state(rng, input_dim),
            StateSet::RealProduct(n) => {
                let angles = (0..*n).map(|_| T::lit(rng.next_f64() * std::f64::consts::TAU)).collect();
                RealProductState::wrapped(angles).expect("angles wrapped").to_pure()
            }
            StateSet::ClassicalStates(k) => PureState::basis(input_dim, rng.next_below(*k)).expect("k <= dim"),
            StateSet::ExplicitList(states) => states[rng.next_below(states.len())].clone(),
        }
    }

    /// A random density matrix in the convex hull of the set.
    pub fn sample_mixture(&self, rng: &mut SplitMix64, input_dim: usize, parts: usize) -> DensityMatrix<T> {
        let raw: Vec<f64> = (0..parts.max(1)).map(|_| rng.next_f64() + 1e-3).collect();
        let total: f64 = raw.iter().sum();
        let mix: Vec<(T, DensityMatrix<T>)> = raw
            .iter()
            .map(|w| (T::lit(w / total), self.sample(rng, input_dim).density()))
            .collect();
        DensityMatrix::mix(&mix).expect("normalized weights")
    }
}

/// `[S, E, ρ_a, ρ₀]`; the ancilla lives inside the channel.
#[derive(Debug, Clone, PartialEq)]
pub struct PqcInstance<T> {
    states: StateSet<T>,
    channel: MixedUnitaryChannel<T>,
    target: DensityMatrix<T>,
}

impl<T: Real> PqcInstance<T> {
    /// Checks that the state set fits the channel input and the target fits
    /// its output. Whether the instance is actually private is a separate
    /// question answered by [`verify_pqc`].
    pub fn new(states: StateSet<T>, channel: MixedUnitaryChannel<T>, target: DensityMatrix<T>) -> Result<Self> {
        states.validate(channel.input_dim())?;
        if target.dim() != channel.output_dim() {
            return Err(Error::DimensionMismatch {
                op: "target",
                left: (channel.output_dim(), channel.output_dim()),
                right: (target.dim(), target.dim()),
            });
        }
        Ok(Self {
            states,
            channel,
            target,
        })
    }

    pub fn states(&self) -> &StateSet<T> {
        &self.states
    }

    pub fn channel(&self) -> &MixedUnitaryChannel<T> {
        &self.channel
    }

    pub fn target(&self) -> &DensityMatrix<T> {
        &self.target
    }

    /// Same channel and target over a different state set.
    pub fn with_states(&self, states: StateSet<T>) -> Result<Self> {
        Self::new(states, self.channel.clone(), self.target.clone())
    }

    pub fn key_count(&self) -> usize {
        self.channel.terms().len()
    }

    /// `H(p₁, …, p_N)` in bits.
    pub fn key_entropy(&self) -> T {
        shannon_entropy(&self.channel.probabilities()).expect("channel probabilities validated")
    }

    /// Number of classical bits `m'` with `k = 2^{m'}` for a classical state set.
    pub fn classical_bits(&self) -> Option<usize> {
        match self.states {
            StateSet::ClassicalStates(k) => log2_exact(k).ok(),
            _ => None,
        }
    }
}

/// Shannon entropy of the key distribution.
pub fn key_entropy<T: Real>(inst: &PqcInstance<T>) -> T {
    inst.key_entropy()
}

pub(crate) fn cplx<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}
