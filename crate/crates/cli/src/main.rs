use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use slicekit_cli::commands::{cmd_analyze, cmd_construct, cmd_decompose, cmd_table, cmd_verify_exhaustive};
use slicekit_cli::input::{parse_polynomial, parse_set, parse_sets, read_source};
use slicekit_cli::{exit, exit_code, render, Failure, Format};

#[derive(Parser)]
#[command(name = "slicekit", version, about = "Junta thresholds and exact analysis of functions on the slice")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// W(A,d), k(A,d) and the attaining s for each value set and d <= dmax.
    Table {
        /// File with one set per line, or the sets themselves separated by ';'.
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 5)]
        dmax: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Degree, A-valuedness, sparse form and minimum junta of a polynomial.
    Analyze {
        /// File holding the polynomial, or the polynomial text.
        #[arg(long)]
        poly: String,
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "k")]
        k: usize,
        #[arg(long = "A")]
        set: Option<String>,
        #[arg(long = "d")]
        d: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// A certified A-valued degree-d function that is not an (m-1)-junta.
    Construct {
        #[arg(long = "A")]
        set: String,
        #[arg(long = "d")]
        d: usize,
        #[arg(long = "k")]
        k: usize,
        #[arg(long = "m")]
        m: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Check every A-valued degree-<=d table on the slice is a small junta.
    Verify {
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "k")]
        k: usize,
        #[arg(long = "d")]
        d: usize,
        #[arg(long = "A")]
        set: String,
        #[arg(long)]
        bound: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Split an A-valued function into Boolean indicators, one per value.
    Decompose {
        #[arg(long)]
        poly: String,
        #[arg(long = "n")]
        n: usize,
        #[arg(long = "k")]
        k: usize,
        #[arg(long = "A")]
        set: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Table { set, dmax, format } => {
            let sets = parse_sets(&read_source(&set)?)?;
            let rows = cmd_table(&sets, dmax)?;
            stdout.write_all(render::table(&rows, format).as_bytes())?;
        }
        Command::Analyze {
            poly,
            n,
            k,
            set,
            d,
            format,
        } => {
            let set = set.as_deref().map(parse_set).transpose()?;
            let p = parse_polynomial(&read_source(&poly)?, n)?;
            let analysis = cmd_analyze(&p, n, k, set.as_ref(), d)?;
            stdout.write_all(render::analysis(&analysis, format).as_bytes())?;
            if analysis.is_a_valued() == Some(false) {
                return Err(Failure::negative("the function is not A-valued").into());
            }
        }
        Command::Construct {
            set,
            d,
            k,
            m,
            format,
        } => {
            let set = parse_set(&set)?;
            let report = cmd_construct(&set, d, k, m)?;
            stdout.write_all(render::construct(&report, format).as_bytes())?;
            if !report.certified(m) {
                return Err(Failure::negative("the certificate checks failed").into());
            }
        }
        Command::Verify {
            n,
            k,
            d,
            set,
            bound,
            format,
        } => {
            let set = parse_set(&set)?;
            let report = cmd_verify_exhaustive(n, k, d, &set, bound, |done, total| {
                eprintln!("scanned {done}/{total} tables");
            })?;
            stdout.write_all(render::verification(&report, format).as_bytes())?;
            if !report.violations.is_empty() {
                return Err(Failure::negative(format!(
                    "{} tables exceed the junta bound {bound}",
                    report.violations.len()
                ))
                .into());
            }
        }
        Command::Decompose {
            poly,
            n,
            k,
            set,
            format,
        } => {
            let set = parse_set(&set)?;
            let p = parse_polynomial(&read_source(&poly)?, n)?;
            let dec = cmd_decompose(&p, n, k, &set)?;
            stdout.write_all(render::decomposition(&dec, format).as_bytes())?;
        }
    }
    Ok(exit::OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
