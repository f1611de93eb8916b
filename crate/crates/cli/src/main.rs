use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use monodromy_core::unipotent::Basis;
use monodromy_core::Error;

mod commands;

#[derive(Parser, Debug)]
#[command(name = "hgmono", version, about = "Monodromy of hypergeometric differential equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write output to this file instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cyclotomic recognition, quotient form, C and d
    Factor {
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
    },
    /// Exact monodromy triple (M0, M1, Minf) of the maximally unipotent case
    Monodromy {
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
        #[arg(long, default_value = "normalized-frobenius")]
        basis: Basis,
    },
    /// Summary table for n = 2, 3 or 4
    Table {
        #[arg(long)]
        n: usize,
        /// Also report which group element e^N + u v_W^T equals
        #[arg(long)]
        w_form: bool,
    },
    /// Numeric check against Mellin-Barnes quadrature: I = T F without
    /// --betas, I = V D f with them
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
        #[arg(long, allow_hyphen_values = true)]
        betas: Option<String>,
        /// Evaluation point, a fraction or decimal (real part)
        #[arg(long, allow_hyphen_values = true, default_value = "-1/2")]
        z: String,
        /// Imaginary part of the evaluation point
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        z_im: String,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 2000)]
        terms: usize,
    },
    /// Integer Taylor coefficients of the C-normalized holomorphic solution
    Series {
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
    /// Frobenius-basis matrices for distinct β (double precision)
    Nonresonant {
        #[arg(long, allow_hyphen_values = true)]
        alphas: String,
        #[arg(long, allow_hyphen_values = true)]
        betas: String,
    },
}

/// What a command produced: rendered output plus whether its checks held.
pub struct Output {
    pub text: String,
    pub ok: bool,
}

fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::NotCyclotomicProduct(_)
            | Error::IntegerExponent(_)
            | Error::NonIntegerC(_)
            | Error::NonIntegerFactorialRatio(_)
            | Error::ResonantInput(_)
            | Error::ContourInvalid(_)
            | Error::InvalidInput(_)
            | Error::NonMonic
    )
}

fn run(cli: &Cli) -> monodromy_core::Result<Output> {
    let f = cli.format;
    match &cli.command {
        Command::Factor { alphas } => commands::factor(alphas, f),
        Command::Monodromy { alphas, basis } => commands::monodromy(alphas, *basis, f),
        Command::Table { n, w_form } => commands::table(*n, *w_form, f),
        Command::Verify { alphas, betas, z, z_im, tol, terms } => {
            commands::verify(alphas, betas.as_deref(), z, z_im, *tol, *terms, f)
        }
        Command::Series { alphas, terms } => commands::series(alphas, *terms, f),
        Command::Nonresonant { alphas, betas } => commands::nonresonant(alphas, betas, f),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if is_input_error(&e) { 2 } else { 1 });
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &out.text),
        None => std::io::stdout().write_all(out.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(1);
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
