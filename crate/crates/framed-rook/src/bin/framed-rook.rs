use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use framed_rook::report::Format;
use framed_rook::ring::{parse_rational, PrimeField};
use framed_rook::suites::{default_points, run_suite, SuiteConfig, SUITES};
use framed_rook::tensor::EMode;
use framed_rook::Error;

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum EArg {
    Averaged,
    Explicit,
}

/// Run a verification suite and print its report.
#[derive(Parser)]
#[command(name = "framed-rook", version)]
struct Cli {
    /// One of: partitions, framed, enumerate, rook, cosets, coset-report,
    /// hecke, tensor, alt-presentations, basis, iso
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Prime field size
    #[arg(long, default_value_t = 3)]
    q: u32,
    /// Framing order for tensor suites (default q - 1)
    #[arg(long)]
    d: Option<u32>,
    #[arg(long, value_enum, default_value = "text")]
    format: OutFormat,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Sample size for comparisons too large to exhaust
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Comma-separated values of t = u^(1/2) for rank certificates, e.g. 7/3,13/5
    #[arg(long, value_delimiter = ',')]
    points: Vec<String>,
    /// Which E_i the tensor suites use
    #[arg(long, value_enum, default_value = "averaged")]
    e_mode: EArg,
    /// Lift the desk-scale envelope
    #[arg(long)]
    unsafe_scale: bool,
}

fn run(cli: &Cli) -> Result<bool, Error> {
    PrimeField::new(cli.q)?;
    let points = if cli.points.is_empty() {
        default_points()
    } else {
        cli.points.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?
    };
    let cfg = SuiteConfig {
        n: cli.n,
        q: cli.q,
        d: cli.d,
        seed: cli.seed,
        samples: cli.samples,
        points,
        mode: match cli.e_mode {
            EArg::Averaged => EMode::Averaged,
            EArg::Explicit => EMode::Explicit,
        },
        unsafe_scale: cli.unsafe_scale,
    };
    let report = run_suite(&cli.suite, &cfg)?;
    let text = report.render(match cli.format {
        OutFormat::Json => Format::Json,
        OutFormat::Csv => Format::Csv,
        OutFormat::Text => Format::Text,
    });
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ScaleGuard { .. } => eprintln!("(pass --unsafe-scale to lift the desk-scale envelope)"),
                Error::UnknownSuite(_) => eprintln!("suites: {}", SUITES.join(", ")),
                _ => {}
            }
            ExitCode::from(2)
        }
    }
}
