//! Batch driver for the octorb verification suites.
//!
//! [`run`] executes one command and returns the exit code together with the
//! JSON report. The same configuration always yields the same bytes,
//! whatever the thread count, unless `timing` is set.

use std::path::PathBuf;
use std::time::Instant;

use clap::Subcommand;
use octorb::field::{FieldError, FieldTag};
use thiserror::Error;

pub mod report;
mod suites;

pub use report::{Finding, Report, Status};

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Composition law, conjugation, alternativity and the trace-zero space.
    VerifyAlgebra,
    /// The example automorphisms and antiautomorphisms, including the
    /// Example 14 completion over finite fields.
    VerifyMorphisms,
    /// R1, R2, the φ-transform, scaling and conjugation.
    VerifyOperators,
    /// The decomposition catalog and the splitting operators it induces.
    VerifyDecompositions,
    /// Totally isotropic subspaces of dimension 5 (and 4 over F2).
    IsotropicAudit,
    /// Rota-Baxter operators with a prescribed kernel.
    SearchKernel,
    /// Kernel searches plus orbit matching against R1.
    VerifyTheorem1,
    /// Orbit equivalence of two operator files.
    OrbitEquiv { a: PathBuf, b: PathBuf },
    /// Closure of the example morphisms under composition.
    GroupClosure,
    /// Export the named subspaces and decompositions.
    Catalog,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::VerifyAlgebra => "verify-algebra",
            Command::VerifyMorphisms => "verify-morphisms",
            Command::VerifyOperators => "verify-operators",
            Command::VerifyDecompositions => "verify-decompositions",
            Command::IsotropicAudit => "isotropic-audit",
            Command::SearchKernel => "search-kernel",
            Command::VerifyTheorem1 => "verify-theorem1",
            Command::OrbitEquiv { .. } => "orbit-equiv",
            Command::GroupClosure => "group-closure",
            Command::Catalog => "catalog",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub field: FieldTag,
    pub weight: String,
    /// Node cap for searches.
    pub budget: u64,
    /// Element cap for group closures.
    pub closure_cap: usize,
    /// Worker threads; 0 lets the pool decide.
    pub threads: usize,
    pub seed: u64,
    pub kernel: String,
    pub output: Option<PathBuf>,
    pub timing: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            field: FieldTag::Prime(2),
            weight: "1".to_string(),
            budget: 1_000_000_000,
            closure_cap: 1_000_000,
            threads: 0,
            seed: 0,
            kernel: "K3a".to_string(),
            output: None,
            timing: false,
        }
    }
}

#[derive(Debug, Error)]
pub enum UsageError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("{0}")]
    Invalid(String),
    #[error("cannot read {path}: {reason}")]
    Unreadable { path: PathBuf, reason: String },
    #[error("thread pool: {0}")]
    Threads(String),
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub json: String,
    pub report: Option<Report>,
}

pub fn run(config: &RunConfig) -> Result<Outcome, UsageError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| UsageError::Threads(e.to_string()))?;
    pool.install(|| {
        let start = Instant::now();
        if config.command == Command::Catalog {
            let json = suites::catalog(config)?;
            return Ok(Outcome {
                exit_code: 0,
                json,
                report: None,
            });
        }
        let mut report = suites::dispatch(config)?;
        if config.timing {
            report.wall_ms = Some(start.elapsed().as_millis() as u64);
        }
        let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
        json.push('\n');
        Ok(Outcome {
            exit_code: report.exit_code(),
            json,
            report: Some(report),
        })
    })
}
