//! `eqku`: divisor table, cohomology and Ext queries, the certified trace,
//! and chart checks from the command line.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Format, RunConfig};

#[derive(Debug, Parser)]
#[command(
    name = "eqku",
    version,
    about = "Equivariant Kuznetsov component toolkit"
)]
struct Cli {
    /// Output format; `json` prints one record per line.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// TOML file with cubic coefficients, primes, format and output directory.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Divisor classes of Ψ(O_M(i)⊗χj).
    Table {
        /// Also write the table as JSON lines to this path.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Character-graded cohomology of O(d) on a projective space or hypersurface.
    Cohomology {
        /// `pN`, the ambient projective space.
        #[arg(long)]
        space: String,
        /// Comma-separated weights, one per coordinate.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Vec<u32>,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        /// `e,j`: a degree-e hypersurface whose equation spans χj.
        #[arg(long)]
        hypersurface: Option<String>,
        /// Order of the cyclic group.
        #[arg(long, default_value_t = 3)]
        order: u32,
    },
    /// Ext^• between two terms, `Y:a,b,c` or `M:i,j`.
    Ext {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
    /// Replay the certified rewrite chain and validate every certificate.
    Trace {
        /// Write the certificates as JSON lines to this path.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Run against an oracle that misreports one Ext group.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Chart isomorphism checks and finite-field smoothness evidence.
    Charts {
        #[arg(long)]
        check_iso: bool,
        #[arg(long)]
        smoothness: bool,
        /// Comma-separated primes; overrides the config file.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = match &cli.config {
        Some(path) => match RunConfig::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("eqku: {e}");
                return ExitCode::from(2);
            }
        },
        None => RunConfig::default(),
    };
    if let Some(f) = cli.format {
        cfg.format = f;
    }

    let result = match cli.command {
        Command::Table { emit } => commands::table(&cfg, emit.as_deref()),
        Command::Cohomology {
            space,
            weights,
            degree,
            hypersurface,
            order,
        } => commands::cohomology(
            &cfg,
            &space,
            &weights,
            degree,
            hypersurface.as_deref(),
            order,
        ),
        Command::Ext { from, to } => commands::ext(&cfg, &from, &to),
        Command::Trace { emit, inject_fault } => {
            commands::trace(&cfg, emit.as_deref(), inject_fault)
        }
        Command::Charts {
            check_iso,
            smoothness,
            primes,
        } => {
            if !primes.is_empty() {
                cfg.primes = primes;
            }
            commands::charts(&cfg, check_iso, smoothness)
        }
    };

    match result {
        Ok(report) => {
            print!("{}", report.output);
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(commands::CliError::Usage(msg)) => {
            eprintln!("eqku: {msg}");
            ExitCode::from(2)
        }
        Err(commands::CliError::Failed(msg)) => {
            eprintln!("eqku: {msg}");
            ExitCode::from(1)
        }
    }
}
