//! Private quantum channels: dense complex linear algebra, density matrices,
//! Pauli bases, mixed-unitary channels, private-channel verification and
//! certification, and a one-way encryption protocol simulator.
//!
//! Everything is generic over the scalar `T: Real` (`f64` or `f32`); the
//! aliases at the bottom of this file fix the common choices.

pub mod channels;
pub mod error;
pub mod linalg;
pub mod pauli;
pub mod pqc;
pub mod protocol;
pub mod rng;
pub mod sampling;
pub mod scalar;
pub mod states;

pub use channels::{MixedUnitaryChannel, ProcessMatrix, Side, Term};
pub use error::{Error, Result};
pub use linalg::{hermitian_eigenvalues, ComplexMatrix, Keep};
pub use pauli::{pauli_decode, pauli_index, PauliCoefficients, PauliString};
pub use pqc::{
    bell_basis_unitary, build_classical_otp, build_example_pqc, build_pauli_otp, build_real_otp,
    certify_entropy_bounds, certify_key_bound, certify_mixed_target, default_tol, key_entropy, lift_to_classical,
    search_three_term_depolarizers, verify_pqc, PqcInstance, StateSet, VerificationReport,
};
pub use protocol::{decrypt, encrypt, estimate_eve_state, eve_view, run_protocol, KeySource, Transcript};
pub use rng::SplitMix64;
pub use scalar::{Real, Tolerances};
pub use states::{
    bell_state, completely_mixed, shannon_entropy, von_neumann_entropy, BellKind, DensityMatrix, PureState,
    RealProductState,
};

pub type Matrix64 = ComplexMatrix<f64>;
pub type Matrix32 = ComplexMatrix<f32>;
pub type Pure64 = PureState<f64>;
pub type Pure32 = PureState<f32>;
pub type Density64 = DensityMatrix<f64>;
pub type Density32 = DensityMatrix<f32>;
pub type Channel64 = MixedUnitaryChannel<f64>;
pub type Channel32 = MixedUnitaryChannel<f32>;
pub type Pqc64 = PqcInstance<f64>;
pub type Pqc32 = PqcInstance<f32>;
