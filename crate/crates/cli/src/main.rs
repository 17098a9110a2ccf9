use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use bargmann_checks::{leakage_table, run_suite, CheckError, OutputFormat, SuiteConfig, CHECKS};
use bargmann_symbolic::descent_certificate;
use clap::{Parser, Subcommand};

/// Largest K accepted by `descent`.
const MAX_DESCENT_K: u32 = 200;

#[derive(Parser)]
#[command(name = "bargmann-lab", version, about = "Consistency checks for CCR fields, Fock-space truncations and the Bargmann mass")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the check suite and write a report.
    Run {
        /// TOML config; defaults are used for anything not given.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Comma-separated check names; overrides the config's include list.
        #[arg(long, value_delimiter = ',')]
        checks: Option<Vec<String>>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        format: Option<OutputFormat>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// List check names with a one-line description.
    ListChecks,
    /// Print the descent certificate for a^K.
    Descent {
        #[arg(long)]
        k: u32,
    },
    /// Print, as CSV, the leakage of a bump against shrinking centred regions on a relativistic chain.
    Leakage {
        #[arg(long)]
        mass: f64,
        /// Width in sites of the bump's support.
        #[arg(long)]
        window: usize,
        #[arg(long, default_value_t = 64)]
        sites: usize,
        #[arg(long, default_value_t = 1.0)]
        spacing: f64,
    },
}

enum Failure {
    Usage(String),
    ChecksFailed,
}

impl From<CheckError> for Failure {
    fn from(e: CheckError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::ChecksFailed) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<(), Failure> {
    match command {
        Command::Run { config, checks, out, format, seed } => {
            let mut cfg = match config {
                Some(path) => SuiteConfig::from_path(&path)?,
                None => SuiteConfig::default(),
            };
            if let Some(names) = checks {
                cfg.checks.include = names.into_iter().map(|n| n.trim().to_string()).filter(|n| !n.is_empty()).collect();
            }
            if let Some(f) = format {
                cfg.format = f;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let report = run_suite(&cfg)?;
            let text = match cfg.format {
                OutputFormat::Json => report.to_json()?,
                OutputFormat::Csv => report.to_csv()?,
                OutputFormat::Md => report.to_markdown(),
            };
            match out {
                Some(path) => std::fs::write(&path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
                None => emit(&text)?,
            }
            let s = &report.summary;
            eprintln!("{} passed, {} failed, {} skipped", s.pass, s.fail, s.skipped);
            if report.all_passed() {
                Ok(())
            } else {
                Err(Failure::ChecksFailed)
            }
        }
        Command::ListChecks => {
            let width = CHECKS.iter().map(|c| c.name.len()).max().unwrap_or(0);
            let text: String = CHECKS.iter().map(|c| format!("{:width$}  {}\n", c.name, c.summary)).collect();
            emit(&text)
        }
        Command::Descent { k } => {
            if k > MAX_DESCENT_K {
                return Err(Failure::Usage(format!("--k must be at most {MAX_DESCENT_K}")));
            }
            emit(&format!("{}\n", descent_certificate(k)))
        }
        Command::Leakage { mass, window, sites, spacing } => {
            let rows = leakage_table(sites, spacing, mass, window)?;
            let mut text = String::from("region_start,region_len,leakage_ratio\n");
            for r in rows {
                text.push_str(&format!("{},{},{:.16e}\n", r.region_start, r.region_len, r.leakage));
            }
            emit(&text)
        }
    }
}

fn emit(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
}
