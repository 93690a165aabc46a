//! `ratdec`: condition analysis, decomposition certificates and Nevanlinna
//! tables from the command line.
//!
//! Exit codes: 0 success, 1 no certificate or a failed verdict, 2 parse or
//! usage error, 3 numerical failure (quadrature or precision budget),
//! 4 I/O error.

mod analyze;
mod certify;
mod nev;
mod out;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ratdec_core::critical::AnalysisOptions;
use ratdec_core::parser::parse_ratfun;
use ratdec_core::{ExprSource, RatFun, Variant, PRECISION_CAP};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "ratdec", version, about = "Decomposition certificates for F(f) = G(g) and Nevanlinna tables")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Working precision in bits for certified root isolation.
    #[arg(long, global = true, env = "RATDEC_PRECISION", default_value_t = 128)]
    pub precision: u32,
    /// Directory for report files. Without it, text goes to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output formats, comma separated [default: json,text; nev adds csv,svg].
    #[arg(long, global = true, value_delimiter = ',')]
    pub format: Vec<Format>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
    Text,
}

impl std::fmt::Display for Format {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Svg => "svg",
            Format::Text => "text",
        })
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide Condition M or M' for a pair and check the root factorization.
    Analyze(analyze::AnalyzeArgs),
    /// Evaluate the degree bounds and emit certificates where one is violated.
    Certify(certify::CertifyArgs),
    /// Nevanlinna functionals and asymptotic checks for `R(base)`.
    Nev(nev::NevArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    #[value(name = "M")]
    M,
    #[value(name = "M-prime")]
    MPrime,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::M => Variant::M,
            VariantArg::MPrime => Variant::MPrime,
        }
    }
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Failure {
        Failure { code: 2, message: message.into() }
    }

    pub fn numeric(message: impl Into<String>) -> Failure {
        Failure { code: 3, message: message.into() }
    }

    pub fn io(message: impl Into<String>) -> Failure {
        Failure { code: 4, message: message.into() }
    }
}

impl From<ratdec_core::Error> for Failure {
    fn from(e: ratdec_core::Error) -> Self {
        use ratdec_core::Error as E;
        match e {
            E::Parse(_) | E::ConstantFunction(_) | E::PrecisionTooLow(_) | E::Inapplicable(_) => Failure::usage(e.to_string()),
            E::PrecisionExhausted { .. } | E::NeedPrecision { .. } => Failure::numeric(e.to_string()),
            other => Failure::numeric(other.to_string()),
        }
    }
}

impl From<ratdec_nevanlinna::LabError> for Failure {
    fn from(e: ratdec_nevanlinna::LabError) -> Self {
        use ratdec_nevanlinna::LabError as E;
        match e {
            E::Quadrature { .. } | E::Winding(_) => Failure::numeric(e.to_string()),
            E::Algebra(inner) => inner.into(),
            other => Failure::usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::io(e.to_string())
    }
}

pub type CmdResult = Result<u8, Failure>;

impl Common {
    pub fn options(&self) -> Result<AnalysisOptions, Failure> {
        if self.precision < 64 {
            return Err(Failure::usage(format!("--precision must be at least 64 (got {})", self.precision)));
        }
        Ok(AnalysisOptions {
            precision: self.precision,
            cap: PRECISION_CAP.max(self.precision),
        })
    }

    /// Requested formats, or `defaults` when none were given.
    pub fn formats(&self, defaults: &[Format]) -> Vec<Format> {
        if self.format.is_empty() {
            defaults.to_vec()
        } else {
            self.format.clone()
        }
    }
}

/// Expression text, or the contents of a file when written as `@path`.
pub fn read_expr(arg: &str) -> Result<ExprSource, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => ExprSource::file(path).map_err(|e| Failure::io(format!("{path}: {e}"))),
        None => Ok(ExprSource::inline(arg)),
    }
}

pub fn parse_pair(f: &str, g: &str) -> Result<(RatFun, RatFun), Failure> {
    let parse = |s: &str, name: &str| -> Result<RatFun, Failure> {
        let src = read_expr(s)?;
        parse_ratfun(&src).map_err(|e| Failure::usage(format!("{name}: {e}")))
    };
    Ok((parse(f, "F")?, parse(g, "G")?))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Command::Analyze(a) => analyze::run(&cli.common, a),
        Command::Certify(a) => certify::run(&cli.common, a),
        Command::Nev(a) => nev::run(&cli.common, a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
