use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use homtop::commands::{self, CommandError, CommandOutcome, Format, SeriesKind};
use homtop::stems;
use homtop_core::oracle::DEFAULT_COLUMN_BUDGET;

/// Rational and stable homotopy invariants of simply connected closed
/// 4-manifolds, computed exactly from the second Betti number.
#[derive(Parser)]
#[command(name = "homtop", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,

    /// Stable stems table to use instead of the bundled one.
    #[arg(long, global = true, value_name = "PATH")]
    stems_file: Option<PathBuf>,

    /// Column cap for the oracle matrices.
    #[arg(long, global = true, value_name = "COLUMNS", env = "HOMTOP_BUDGET", default_value_t = DEFAULT_COLUMN_BUDGET)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Tensor,
    Quotient,
    Pbw,
    FreeComm,
}

#[derive(Subcommand)]
enum Command {
    /// Ranks of pi_2 .. pi_{N+1} tensored with Q.
    Ranks {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        betti: u64,
        #[arg(long, default_value_t = 20)]
        max_degree: usize,
    },
    /// Raw coefficients of a generating series.
    Series {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        betti: u64,
        /// Number of coefficients.
        #[arg(long, default_value_t = 12)]
        terms: usize,
    },
    /// Stable homotopy group pi_n^s(M) in terms of the stable stems.
    Stable {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        betti: u64,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        /// Order of a finite fundamental group (then --betti is the rank of pi_2).
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        pi1_order: u64,
    },
    /// Elliptic/hyperbolic classification and growth of the ranks.
    Growth {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        betti: u64,
        #[arg(long, default_value_t = 60)]
        probe: usize,
    },
    /// Brute-force oracle for T(V)/I and the generating-series identities.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        betti: u64,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
}

fn run(cli: &Cli) -> CommandOutcome {
    match cli.command {
        Command::Ranks { betti, max_degree } => commands::cmd_ranks(betti, max_degree),
        Command::Series { kind, betti, terms } => {
            let kind = match kind {
                KindArg::Tensor => SeriesKind::Tensor,
                KindArg::Quotient => SeriesKind::Quotient,
                KindArg::Pbw => SeriesKind::Pbw,
                KindArg::FreeComm => SeriesKind::FreeComm,
            };
            commands::cmd_series(kind, betti, terms)
        }
        Command::Stable {
            betti,
            n,
            pi1_order,
        } => {
            let table = match &cli.stems_file {
                Some(path) => {
                    stems::load_stems_file(path).map_err(|e| CommandError::Usage(e.to_string()))?
                }
                None => stems::bundled(),
            };
            commands::cmd_stable(betti, n, pi1_order, &table)
        }
        Command::Growth { betti, probe } => commands::cmd_growth(betti, probe),
        Command::Verify { betti, max_degree } => {
            commands::cmd_verify(betti, max_degree, cli.budget)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        FormatArg::Table => Format::Table,
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
    };
    match run(&cli) {
        Ok(result) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(result.output(format).as_bytes());
            let _ = out.flush();
            for f in result.failing_checks() {
                eprintln!("homtop: {f}");
            }
            ExitCode::from(result.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("homtop: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
