//! Text documents for states, density matrices, channels, instances and
//! protocol transcripts.
//!
//! Complex numbers are `[re, im]` pairs; matrices are arrays of rows. Floats
//! are written in shortest round-trip form, so parsing a written document
//! recovers every `f64` exactly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use pqc_core::{
    Channel64, Density64, DensityMatrix, Matrix64, MixedUnitaryChannel, PauliString, Pqc64, PqcInstance, Pure64,
    PureState, StateSet, Term, Transcript,
};

use crate::CliError;

pub const VERSION: u32 = 1;

pub type ComplexDoc = [f64; 2];
pub type MatrixDoc = Vec<Vec<ComplexDoc>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Document {
    State {
        version: u32,
        amplitudes: Vec<ComplexDoc>,
    },
    Density {
        version: u32,
        matrix: MatrixDoc,
    },
    Channel {
        version: u32,
        channel: ChannelDoc,
    },
    Pqc {
        version: u32,
        states: StateSetDoc,
        channel: ChannelDoc,
        target: MatrixDoc,
    },
    Transcript {
        version: u32,
        seed: u64,
        key_index: usize,
        plaintext: MatrixDoc,
        ciphertext: MatrixDoc,
        recovered: MatrixDoc,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelDoc {
    /// Input qubits; the unitaries act on `n` plus the ancilla's qubits.
    pub n: usize,
    #[serde(default)]
    pub ancilla: Option<MatrixDoc>,
    pub terms: Vec<TermDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TermDoc {
    Pauli(PauliTermDoc),
    Unitary(UnitaryTermDoc),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PauliTermDoc {
    pub p: f64,
    pub pauli: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitaryTermDoc {
    pub p: f64,
    pub unitary: MatrixDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSetDoc {
    FullHilbert { n: usize },
    RealProduct { n: usize },
    Classical { k: usize },
    Explicit { states: Vec<Vec<ComplexDoc>> },
}

fn invalid(e: pqc_core::Error) -> CliError {
    CliError::Parse(e.to_string())
}

pub fn complex_to_doc(z: Complex64) -> ComplexDoc {
    [z.re, z.im]
}

pub fn complex_from_doc(z: &ComplexDoc) -> Complex64 {
    Complex64::new(z[0], z[1])
}

pub fn matrix_to_doc(m: &Matrix64) -> MatrixDoc {
    (0..m.rows())
        .map(|i| m.row(i).iter().copied().map(complex_to_doc).collect())
        .collect()
}

pub fn matrix_from_doc(doc: &MatrixDoc) -> Result<Matrix64, CliError> {
    let rows = doc
        .iter()
        .map(|r| r.iter().map(complex_from_doc).collect())
        .collect();
    Matrix64::from_rows(rows).map_err(invalid)
}

pub fn density_from_doc(doc: &MatrixDoc) -> Result<Density64, CliError> {
    DensityMatrix::new(matrix_from_doc(doc)?).map_err(invalid)
}

pub fn amplitudes_to_doc(phi: &Pure64) -> Vec<ComplexDoc> {
    phi.amplitudes().iter().copied().map(complex_to_doc).collect()
}

pub fn pure_from_doc(doc: &[ComplexDoc]) -> Result<Pure64, CliError> {
    PureState::new(doc.iter().map(complex_from_doc).collect()).map_err(invalid)
}

pub fn channel_to_doc(e: &Channel64) -> ChannelDoc {
    let terms = e
        .terms()
        .iter()
        .map(|t| match &t.pauli {
            Some(x) => TermDoc::Pauli(PauliTermDoc {
                p: t.p,
                pauli: x.to_string(),
            }),
            None => TermDoc::Unitary(UnitaryTermDoc {
                p: t.p,
                unitary: matrix_to_doc(&t.unitary),
            }),
        })
        .collect();
    ChannelDoc {
        n: e.input_qubits(),
        ancilla: e.ancilla().map(|a| matrix_to_doc(a.matrix())),
        terms,
    }
}

pub fn channel_from_doc(doc: &ChannelDoc) -> Result<Channel64, CliError> {
    let terms = doc
        .terms
        .iter()
        .map(|t| match t {
            TermDoc::Pauli(t) => Ok(Term::pauli(t.p, t.pauli.parse::<PauliString>().map_err(invalid)?)),
            TermDoc::Unitary(t) => Ok(Term::new(t.p, matrix_from_doc(&t.unitary)?)),
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let ancilla = doc.ancilla.as_ref().map(density_from_doc).transpose()?;
    MixedUnitaryChannel::new(doc.n, terms, ancilla).map_err(invalid)
}

pub fn states_to_doc(s: &StateSet<f64>) -> StateSetDoc {
    match s {
        StateSet::FullHilbert(n) => StateSetDoc::FullHilbert { n: *n },
        StateSet::RealProduct(n) => StateSetDoc::RealProduct { n: *n },
        StateSet::ClassicalStates(k) => StateSetDoc::Classical { k: *k },
        StateSet::ExplicitList(v) => StateSetDoc::Explicit {
            states: v.iter().map(amplitudes_to_doc).collect(),
        },
    }
}

pub fn states_from_doc(doc: &StateSetDoc) -> Result<StateSet<f64>, CliError> {
    Ok(match doc {
        StateSetDoc::FullHilbert { n } => StateSet::FullHilbert(*n),
        StateSetDoc::RealProduct { n } => StateSet::RealProduct(*n),
        StateSetDoc::Classical { k } => StateSet::ClassicalStates(*k),
        StateSetDoc::Explicit { states } => StateSet::ExplicitList(
            states
                .iter()
                .map(|s| pure_from_doc(s))
                .collect::<Result<_, _>>()?,
        ),
    })
}

impl Document {
    pub fn version(&self) -> u32 {
        match self {
            Document::State { version, .. }
            | Document::Density { version, .. }
            | Document::Channel { version, .. }
            | Document::Pqc { version, .. }
            | Document::Transcript { version, .. } => *version,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::State { .. } => "state",
            Document::Density { .. } => "density",
            Document::Channel { .. } => "channel",
            Document::Pqc { .. } => "pqc",
            Document::Transcript { .. } => "transcript",
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: Document = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        if doc.version() != VERSION {
            return Err(CliError::Parse(format!(
                "unsupported document version {} (expected {VERSION})",
                doc.version()
            )));
        }
        Ok(doc)
    }

    pub fn to_text(&self) -> String {
        crate::format::to_text(self)
    }

    pub fn from_state(phi: &Pure64) -> Self {
        Document::State {
            version: VERSION,
            amplitudes: amplitudes_to_doc(phi),
        }
    }

    pub fn from_density(rho: &Density64) -> Self {
        Document::Density {
            version: VERSION,
            matrix: matrix_to_doc(rho.matrix()),
        }
    }

    pub fn from_channel(e: &Channel64) -> Self {
        Document::Channel {
            version: VERSION,
            channel: channel_to_doc(e),
        }
    }

    pub fn from_pqc(inst: &Pqc64) -> Self {
        Document::Pqc {
            version: VERSION,
            states: states_to_doc(inst.states()),
            channel: channel_to_doc(inst.channel()),
            target: matrix_to_doc(inst.target().matrix()),
        }
    }

    pub fn from_transcript(seed: u64, t: &Transcript<f64>) -> Self {
        Document::Transcript {
            version: VERSION,
            seed,
            key_index: t.key_index,
            plaintext: matrix_to_doc(t.plaintext.matrix()),
            ciphertext: matrix_to_doc(t.ciphertext.matrix()),
            recovered: matrix_to_doc(t.recovered.matrix()),
        }
    }

    fn wrong_kind(&self, want: &str) -> CliError {
        CliError::Parse(format!("expected a {want} document, got {}", self.kind()))
    }

    pub fn into_state(self) -> Result<Pure64, CliError> {
        match self {
            Document::State { amplitudes, .. } => pure_from_doc(&amplitudes),
            other => Err(other.wrong_kind("state")),
        }
    }

    pub fn into_density(self) -> Result<Density64, CliError> {
        match self {
            Document::Density { matrix, .. } => density_from_doc(&matrix),
            other => Err(other.wrong_kind("density")),
        }
    }

    pub fn into_channel(self) -> Result<Channel64, CliError> {
        match self {
            Document::Channel { channel, .. } => channel_from_doc(&channel),
            other => Err(other.wrong_kind("channel")),
        }
    }

    pub fn into_pqc(self) -> Result<Pqc64, CliError> {
        match self {
            Document::Pqc {
                states,
                channel,
                target,
                ..
            } => PqcInstance::new(
                states_from_doc(&states)?,
                channel_from_doc(&channel)?,
                density_from_doc(&target)?,
            )
            .map_err(invalid),
            other => Err(other.wrong_kind("pqc")),
        }
    }
}
