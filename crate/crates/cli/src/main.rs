use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use pqc_cli::commands::{self, BuildKind, Certificate, Plaintext};
use pqc_cli::{CliError, Outcome};

#[derive(Parser)]
#[command(name = "pqc", version, about = "Private quantum channels: build, verify, certify, lift, simulate")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a constructed instance document.
    Build {
        #[arg(value_enum)]
        kind: BuildKind,
        /// Number of qubits (pads only).
        #[arg(short)]
        n: Option<usize>,
        /// Output path; standard output when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Check that every state in the set maps to the target.
    Verify {
        path: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Run a certificate: 3 completely mixed target, 4 key probability bound,
    /// 6 entropy sandwich.
    Certify {
        path: PathBuf,
        #[arg(long)]
        theorem: u8,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Turn a full-Hilbert-space instance into one over classical states.
    Lift {
        path: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Simulate one encryption round and Eve's averaged view.
    #[command(group(ArgGroup::new("input").required(true).args(["plaintext", "random_plaintext"])))]
    Protocol {
        path: PathBuf,
        #[arg(long)]
        seed: u64,
        /// State document to encrypt.
        #[arg(long)]
        plaintext: Option<PathBuf>,
        /// Draw the plaintext from the instance's state set.
        #[arg(long)]
        random_plaintext: bool,
        /// Keys drawn for Eve's estimate; 0 averages over all keys exactly.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        /// Also write the transcript document here.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
}

fn emit(text: &str, out: Option<&Path>) -> Result<Outcome, CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(Outcome::new(String::new(), true))
        }
        None => Ok(Outcome::new(text.to_string(), true)),
    }
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Build { kind, n, out } => emit(&commands::build(kind, n)?, out.as_deref()),
        Command::Verify { path, tol } => commands::verify(&commands::read_pqc(&path)?, tol),
        Command::Certify { path, theorem, tol } => {
            let which = Certificate::from_number(theorem)?;
            commands::certify(&commands::read_pqc(&path)?, which, tol)
        }
        Command::Lift { path, out } => emit(&commands::lift(&commands::read_pqc(&path)?)?, out.as_deref()),
        Command::Protocol {
            path,
            seed,
            plaintext,
            random_plaintext: _,
            samples,
            transcript,
        } => {
            let inst = commands::read_pqc(&path)?;
            let plaintext = match plaintext {
                Some(p) => Plaintext::Given(commands::read_document(&p)?.into_state()?),
                None => Plaintext::Random,
            };
            let run = commands::protocol(&inst, seed, plaintext, samples)?;
            if let Some(path) = transcript {
                std::fs::write(path, &run.transcript)?;
            }
            Ok(run.outcome)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("pqc: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
