use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use octorb::field::FieldTag;
use octorb_cli::{run, Command, RunConfig, Status};

/// Exact verification of Rota-Baxter operators on the split octonions.
#[derive(Parser, Debug)]
#[command(name = "octorb", version)]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Q, F2, F3, F5 or Fp:<p>.
    #[arg(long, global = true, default_value = "F2")]
    field: String,
    /// Operator weight, in the field's scalar syntax.
    #[arg(long, global = true, default_value = "1")]
    weight: String,
    /// Node cap for searches and enumerations.
    #[arg(long, global = true, default_value_t = 1_000_000_000)]
    budget: u64,
    /// Element cap for group closures.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    closure_cap: usize,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Prescribed kernel for search-kernel: K4, K3a or K3b.
    #[arg(long, global = true, default_value = "K3a")]
    kernel: String,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Add wall-clock time to the report (breaks byte-identical output).
    #[arg(long, global = true)]
    timing: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let field: FieldTag = match args.field.parse() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let config = RunConfig {
        command: args.command,
        field,
        weight: args.weight,
        budget: args.budget,
        closure_cap: args.closure_cap,
        threads: args.threads,
        seed: args.seed,
        kernel: args.kernel,
        output: args.output,
        timing: args.timing,
    };
    let outcome = match run(&config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(report) = &outcome.report {
        for f in &report.findings {
            let tag = match f.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            eprintln!("{tag}  {}", f.check);
        }
        if !report.complete {
            eprintln!("INCOMPLETE  budget or cap reached");
        }
    }
    match &config.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.json) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", outcome.json),
    }
    ExitCode::from(outcome.exit_code as u8)
}
