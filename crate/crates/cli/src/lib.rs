//! Command-line front end: argument model, dispatch and error reporting.
//!
//! [`run`] is deterministic: the same [`Cli`] always produces byte-identical
//! output.

use std::fmt;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use thiserror::Error;

use sturmian::cf::CfError;
use sturmian::generator::GenError;
use sturmian::singular::SingularError;
use sturmian::{MorphismError, PeriodicCf, WordError};

mod commands;
mod render;
pub mod verify;

/// Default cap on the number of letters a single run may print or verify.
pub const DEFAULT_CAP: usize = 1_000_000;
pub const CAP_ENV: &str = "STURMIAN_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "sturmian",
    version,
    about = "Characteristic Sturmian words and decompositions of their conjugates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write σ, ŝ and ε instead of their ASCII spellings in text output.
    #[arg(long, global = true)]
    pub unicode: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct SlopeArgs {
    /// Continued fraction `0;a1,...,(b1,...)`.
    #[arg(long, conflicts_with = "directive")]
    pub cf: Option<String>,

    /// Finite directive sequence `d1,d2,...`.
    #[arg(long)]
    pub directive: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a prefix of the characteristic word (or of a mechanical word).
    Gen {
        #[command(flatten)]
        slope: SlopeArgs,
        #[arg(long)]
        length: usize,
        /// Use the floor/ceiling definition with slope α and intercept ρ.
        #[arg(long)]
        mechanical: bool,
        /// Intercept `p/q` for `--mechanical`.
        #[arg(long, default_value = "0")]
        rho: String,
        /// Ceiling variant of the mechanical word.
        #[arg(long, requires = "mechanical")]
        ceiling: bool,
    },
    /// Inspect σ, σ̂ or a given morphism and its right conjugates.
    Morphism {
        #[arg(long)]
        cf: Option<String>,
        /// Morphism images `a->W1;b->W2`.
        #[arg(long)]
        images: Option<String>,
        /// Generator word over {E,p}, leftmost applied last.
        #[arg(long)]
        cert: Option<String>,
        #[arg(long, default_value_t = 1)]
        power: usize,
        /// Right conjugate index to print.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Singular words w_n and adjoining singular words v_n up to a depth.
    Singular {
        #[arg(long)]
        cf: String,
        #[arg(long, default_value_t = 4)]
        depth: i64,
    },
    /// Decompose the k-th conjugate of c_α (or of c_{1-α} with --hat).
    Decompose {
        #[arg(long)]
        cf: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long)]
        hat: bool,
    },
    /// Conjugate table for k = 0..=k_max.
    Table {
        #[arg(long)]
        cf: String,
        #[arg(long = "k_max", alias = "k-max")]
        k_max: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Letters of each row checked against the shifted word.
        #[arg(long = "max-len", default_value_t = 1000)]
        max_len: usize,
    },
    /// Run named verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        cf: String,
        #[arg(long = "max-len", default_value_t = 2000)]
        max_len: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("requested {requested} letters, cap is {cap} (set {CAP_ENV} to raise it)")]
    CapExceeded { requested: usize, cap: usize },
    /// Some verification failed; `output` is the full report to print first.
    #[error("{message}")]
    Verification { output: String, message: String },
    #[error(transparent)]
    Cf(#[from] CfError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Singular(#[from] SingularError),
    #[error(transparent)]
    Word(#[from] WordError),
}

impl CliError {
    /// Stable error kind used in the structured error line.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "ParseError",
            CliError::CapExceeded { .. } => "CapExceeded",
            CliError::Verification { .. } => "VerificationFailed",
            CliError::Cf(CfError::Parse { .. }) => "ParseError",
            CliError::Morphism(MorphismError::Parse { .. }) => "ParseError",
            CliError::Word(WordError::InvalidLetter(_)) => "ParseError",
            CliError::Cf(_) => "ContinuedFractionError",
            CliError::Gen(_) => "GeneratorError",
            CliError::Morphism(_) => "MorphismError",
            CliError::Singular(SingularError::UnsupportedShape(_)) => "UnsupportedShape",
            CliError::Singular(_) => "SingularError",
            CliError::Word(_) => "WordError",
        }
    }

    /// One-line report in the requested format.
    pub fn report(&self, format: Format) -> String {
        match format {
            Format::Text => format!("error[{}]: {}", self.kind(), self),
            Format::Json => serde_json::json!({
                "error": self.kind(),
                "message": self.to_string(),
            })
            .to_string(),
        }
    }
}

/// Output cap from `STURMIAN_CAP`, or [`DEFAULT_CAP`].
pub fn output_cap() -> Result<usize, CliError> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("{CAP_ENV}={v:?} is not a letter count"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

pub(crate) fn check_cap(requested: usize, cap: usize) -> Result<(), CliError> {
    if requested > cap {
        return Err(CliError::CapExceeded { requested, cap });
    }
    Ok(())
}

pub(crate) fn parse_cf(text: &str) -> Result<PeriodicCf, CliError> {
    Ok(text.parse()?)
}

pub(crate) fn parse_rho(text: &str) -> Result<Ratio<i64>, CliError> {
    let bad = || CliError::Parse(format!("cannot parse intercept {text:?}; expected p/q"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (
            n.trim().parse().map_err(|_| bad())?,
            d.trim().parse().map_err(|_| bad())?,
        ),
        None => (text.trim().parse().map_err(|_| bad())?, 1),
    };
    if den == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(num, den))
}

pub(crate) fn parse_directive(text: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Parse(format!("cannot parse directive entry {t:?}")))
        })
        .collect()
}

/// Executes one command and returns everything it prints on stdout.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let cap = output_cap()?;
    let style = render::Style::new(cli.format, cli.unicode);
    match &cli.command {
        Command::Gen {
            slope,
            length,
            mechanical,
            rho,
            ceiling,
        } => commands::gen(&style, slope, *length, *mechanical, rho, *ceiling, cap),
        Command::Morphism {
            cf,
            images,
            cert,
            power,
            k,
        } => commands::morphism(
            &style,
            cf.as_deref(),
            images.as_deref(),
            cert.as_deref(),
            *power,
            *k,
            cap,
        ),
        Command::Singular { cf, depth } => commands::singular(&style, cf, *depth, cap),
        Command::Decompose { cf, k, depth, hat } => {
            commands::decompose(&style, cf, *k, *depth, *hat, cap)
        }
        Command::Table {
            cf,
            k_max,
            depth,
            max_len,
        } => commands::table(&style, cf, *k_max, *depth, *max_len, cap),
        Command::Verify { suite, cf, max_len } => {
            commands::verify(&style, suite, cf, *max_len, cap)
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
        })
    }
}
