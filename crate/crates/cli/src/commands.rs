use std::fmt::Write as _;
use std::path::Path;

use clap::ValueEnum;

use pqc_core::{
    build_classical_otp, build_example_pqc, build_pauli_otp, build_real_otp, certify_entropy_bounds,
    certify_key_bound, certify_mixed_target, estimate_eve_state, lift_to_classical, run_protocol, verify_pqc,
    KeySource, Pqc64, Pure64, SplitMix64,
};

use crate::document::Document;
use crate::{CliError, Outcome};

/// Largest round-trip deviation a protocol run may show.
pub const ROUND_TRIP_LIMIT: f64 = 1e-9;
const PLAINTEXT_STREAM: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BuildKind {
    PauliOtp,
    RealOtp,
    ClassicalOtp,
    Example,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    MixedTarget,
    KeyBound,
    EntropyBounds,
}

impl Certificate {
    /// Numbering used by the `--theorem` flag.
    pub fn from_number(k: u8) -> Result<Self, CliError> {
        match k {
            3 => Ok(Certificate::MixedTarget),
            4 => Ok(Certificate::KeyBound),
            6 => Ok(Certificate::EntropyBounds),
            other => Err(CliError::Usage(format!("--theorem must be 3, 4 or 6, got {other}"))),
        }
    }
}

pub enum Plaintext {
    Given(Pure64),
    Random,
}

pub fn read_document(path: &Path) -> Result<Document, CliError> {
    let text = std::fs::read_to_string(path)?;
    Document::parse(&text)
}

pub fn read_pqc(path: &Path) -> Result<Pqc64, CliError> {
    read_document(path)?.into_pqc()
}

pub fn check_tol(tol: f64) -> Result<f64, CliError> {
    if tol.is_finite() && tol >= 0.0 {
        Ok(tol)
    } else {
        Err(CliError::Usage(format!("--tol must be finite and non-negative, got {tol}")))
    }
}

pub fn build(kind: BuildKind, n: Option<usize>) -> Result<String, CliError> {
    let need_n = || n.ok_or_else(|| CliError::Usage("-n is required for this construction".into()));
    let inst = match kind {
        BuildKind::PauliOtp => build_pauli_otp(need_n()?),
        BuildKind::RealOtp => build_real_otp(need_n()?),
        BuildKind::ClassicalOtp => build_classical_otp(need_n()?),
        BuildKind::Example => {
            if n.is_some() {
                return Err(CliError::Usage("the example construction takes no -n".into()));
            }
            build_example_pqc()
        }
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Document::from_pqc(&inst).to_text())
}

pub fn verify(inst: &Pqc64, tol: f64) -> Result<Outcome, CliError> {
    let report = verify_pqc(inst, check_tol(tol)?)?;
    Ok(Outcome::new(format!("{report}\n"), report.ok))
}

pub fn certify(inst: &Pqc64, which: Certificate, tol: f64) -> Result<Outcome, CliError> {
    let tol = check_tol(tol)?;
    Ok(match which {
        Certificate::MixedTarget => {
            let ok = certify_mixed_target(inst, tol)?;
            let text = format!("{}\ncompletely_mixed_target = {ok}\n", if ok { "ok" } else { "fail" });
            Outcome::new(text, ok)
        }
        Certificate::KeyBound => {
            let r = certify_key_bound(inst, tol)?;
            Outcome::new(format!("{r}\n"), r.ok)
        }
        Certificate::EntropyBounds => {
            let r = certify_entropy_bounds(inst, tol)?;
            Outcome::new(format!("{r}\n"), r.ok())
        }
    })
}

pub fn lift(inst: &Pqc64) -> Result<String, CliError> {
    Ok(Document::from_pqc(&lift_to_classical(inst)?).to_text())
}

pub struct ProtocolRun {
    pub outcome: Outcome,
    pub transcript: String,
}

/// One key draw, encryption and decryption, plus Eve's averaged view.
pub fn protocol(inst: &Pqc64, seed: u64, plaintext: Plaintext, samples: usize) -> Result<ProtocolRun, CliError> {
    let check = verify_pqc(inst, pqc_core::default_tol())?;
    if !check.ok {
        return Err(CliError::Precondition(format!(
            "instance does not verify (worst deviation {:e})",
            check.worst_deviation
        )));
    }
    let phi = match plaintext {
        Plaintext::Given(phi) => phi,
        Plaintext::Random => {
            let mut rng = SplitMix64::new(seed ^ PLAINTEXT_STREAM);
            inst.states().sample(&mut rng, inst.channel().input_dim())
        }
    };
    let mut keys = KeySource::for_instance(inst, seed);
    let transcript = run_protocol(inst, &mut keys, &phi)?;
    let deviation = transcript.round_trip_deviation();
    let eve = estimate_eve_state(inst, &phi, samples, seed)?;

    let mut text = String::new();
    writeln!(text, "seed = {seed}").unwrap();
    writeln!(text, "key_index = {}", transcript.key_index).unwrap();
    writeln!(text, "round_trip_deviation = {deviation:e}").unwrap();
    writeln!(text, "eve_samples = {samples}").unwrap();
    writeln!(text, "eve_distance = {:e}", eve.distance).unwrap();
    writeln!(text, "H(p) = {:?}", inst.key_entropy()).unwrap();
    Ok(ProtocolRun {
        outcome: Outcome::new(text, deviation <= ROUND_TRIP_LIMIT),
        transcript: Document::from_transcript(seed, &transcript).to_text(),
    })
}
