//! Alice/Bob/Eve simulation of one-way encryption with a private channel.
//!
//! Alice and Bob share key `i` drawn with probability `pᵢ`. Alice appends the
//! ancilla and applies `Uᵢ`; Bob applies `Uᵢ†` and discards the ancilla. Eve,
//! without the key, sees `Σᵢ pᵢ Uᵢ(|φ⟩⟨φ| ⊗ ρ_a)Uᵢ† = ρ₀`.
//!
//! [`KeySource`] uses splitmix64 and is not a cryptographic key source.

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, Keep};
use crate::pqc::PqcInstance;
use crate::rng::SplitMix64;
use crate::scalar::Real;
use crate::states::{check_distribution, DensityMatrix, PureState};

/// Seeded sampler over key indices. Keep one per party.
#[derive(Debug, Clone)]
pub struct KeySource<T> {
    seed: u64,
    probabilities: Vec<T>,
    cdf: Vec<T>,
    rng: SplitMix64,
    draws: u64,
}

impl<T: Real> KeySource<T> {
    pub fn new(seed: u64, probabilities: Vec<T>) -> Result<Self> {
        check_distribution(&probabilities)?;
        let mut acc = T::zero();
        let cdf = probabilities
            .iter()
            .map(|p| {
                acc = acc + *p;
                acc
            })
            .collect();
        Ok(Self {
            seed,
            probabilities,
            cdf,
            rng: SplitMix64::new(seed),
            draws: 0,
        })
    }

    /// Source over the instance's key distribution.
    pub fn for_instance(inst: &PqcInstance<T>, seed: u64) -> Self {
        Self::new(seed, inst.channel().probabilities()).expect("channel probabilities validated")
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn probabilities(&self) -> &[T] {
        &self.probabilities
    }

    pub fn draws(&self) -> u64 {
        self.draws
    }

    /// Inverse-CDF draw: the first index whose cumulative probability
    /// exceeds `u ∈ [0, 1)`.
    pub fn next_key(&mut self) -> usize {
        self.draws += 1;
        let u = T::lit(self.rng.next_f64());
        match self.cdf.iter().position(|c| *c > u) {
            Some(i) => i,
            // Cumulative sums may fall just short of one.
            None => self
                .probabilities
                .iter()
                .rposition(|p| *p > T::zero())
                .expect("distribution has positive mass"),
        }
    }
}

fn check_key<T: Real>(inst: &PqcInstance<T>, key: usize) -> Result<()> {
    let count = inst.key_count();
    if key >= count {
        return Err(Error::KeyOutOfRange { key, count });
    }
    Ok(())
}

/// `Uᵢ(|φ⟩⟨φ| ⊗ ρ_a)Uᵢ†`.
pub fn encrypt<T: Real>(inst: &PqcInstance<T>, key: usize, phi: &PureState<T>) -> Result<DensityMatrix<T>> {
    check_key(inst, key)?;
    let e = inst.channel();
    if phi.dim() != e.input_dim() {
        return Err(Error::DimensionMismatch {
            op: "encrypt",
            left: (e.input_dim(), 1),
            right: (phi.dim(), 1),
        });
    }
    let u = &e.terms()[key].unitary;
    let joint = match e.ancilla() {
        None => return Ok(DensityMatrix::trusted(phi.evolve(u)?.density().into_matrix())),
        Some(a) => phi.density().tensor(a),
    };
    let out = u.matmul(joint.matrix())?.matmul(&u.dagger())?;
    Ok(DensityMatrix::trusted(out))
}

/// `Tr_a(Uᵢ† c Uᵢ)`.
pub fn decrypt<T: Real>(inst: &PqcInstance<T>, key: usize, cipher: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
    check_key(inst, key)?;
    let e = inst.channel();
    if cipher.dim() != e.output_dim() {
        return Err(Error::DimensionMismatch {
            op: "decrypt",
            left: (e.output_dim(), e.output_dim()),
            right: (cipher.dim(), cipher.dim()),
        });
    }
    let u = &e.terms()[key].unitary;
    let joint = u.dagger().matmul(cipher.matrix())?.matmul(u)?;
    let d = e.input_dim();
    let reduced = joint.partial_trace((d, e.output_dim() / d), Keep::First)?;
    Ok(DensityMatrix::trusted(reduced))
}

/// What Eve holds without the key: the instance's target.
pub fn eve_view<T: Real>(inst: &PqcInstance<T>) -> DensityMatrix<T> {
    inst.target().clone()
}

#[derive(Debug, Clone, PartialEq)]
pub struct EveEstimate<T> {
    pub estimate: DensityMatrix<T>,
    /// Max-entry distance from the target.
    pub distance: T,
}

/// Average ciphertext of `φ` over `samples` keys drawn from a source seeded
/// with `seed`, or the exact key mixture when `samples == 0`.
pub fn estimate_eve_state<T: Real>(
    inst: &PqcInstance<T>,
    phi: &PureState<T>,
    samples: usize,
    seed: u64,
) -> Result<EveEstimate<T>> {
    let dim = inst.channel().output_dim();
    let mut acc = ComplexMatrix::zeros(dim, dim);
    if samples == 0 {
        for (key, t) in inst.channel().terms().iter().enumerate() {
            acc.add_scaled(crate::pqc::cplx(t.p), encrypt(inst, key, phi)?.matrix())?;
        }
    } else {
        let mut counts = vec![0usize; inst.key_count()];
        let mut src = KeySource::for_instance(inst, seed);
        for _ in 0..samples {
            counts[src.next_key()] += 1;
        }
        let total = T::from_usize(samples).unwrap();
        for (key, c) in counts.iter().enumerate().filter(|(_, c)| **c > 0) {
            let w = T::from_usize(*c).unwrap() / total;
            acc.add_scaled(crate::pqc::cplx(w), encrypt(inst, key, phi)?.matrix())?;
        }
    }
    let distance = acc.max_abs_diff(inst.target().matrix())?;
    Ok(EveEstimate {
        estimate: DensityMatrix::trusted(acc),
        distance,
    })
}

/// One legal protocol run.
#[derive(Debug, Clone, PartialEq)]
pub struct Transcript<T> {
    pub key_index: usize,
    pub plaintext: DensityMatrix<T>,
    pub ciphertext: DensityMatrix<T>,
    pub recovered: DensityMatrix<T>,
}

impl<T: Real> Transcript<T> {
    /// `‖recovered − plaintext‖_max`.
    pub fn round_trip_deviation(&self) -> T {
        self.recovered
            .matrix()
            .max_abs_diff(self.plaintext.matrix())
            .expect("same dimension")
    }
}

/// Draws a key, encrypts `phi` and decrypts it with the same key.
pub fn run_protocol<T: Real>(inst: &PqcInstance<T>, keys: &mut KeySource<T>, phi: &PureState<T>) -> Result<Transcript<T>> {
    let key_index = keys.next_key();
    let ciphertext = encrypt(inst, key_index, phi)?;
    let recovered = decrypt(inst, key_index, &ciphertext)?;
    Ok(Transcript {
        key_index,
        plaintext: phi.density(),
        ciphertext,
        recovered,
    })
}
