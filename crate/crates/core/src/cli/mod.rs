//! The `vprs` command-line tool.
//!
//! Exit codes: 0 success, 1 validation error, 2 parse or usage error,
//! 3 a property or lattice law failed.

mod render;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::approximation::{Approximator, Precision};
use crate::error::{Error, Result};
use crate::ingest::{
    indiscernibility, parse_instance, parse_table, target_from_decision, Instance,
};
use crate::lattice::{check_laws, closure, element_from, BetaGrid};
use crate::ratio::ExactRatio;
use crate::verify::run_checks;

pub use render::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PROPERTY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "vprs",
    version,
    about = "Rough set, variable-precision and variable-error approximations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct InputArgs {
    /// Instance document (JSON), or a CSV table with --table
    #[arg(short = 'i', long)]
    input: PathBuf,
    /// Read the input as an attribute-value table
    #[arg(long)]
    table: bool,
    /// Condition attributes inducing the partition (table mode)
    #[arg(long, value_delimiter = ',')]
    attrs: Vec<String>,
    /// Target as column=value (table mode)
    #[arg(long)]
    decision: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lower/upper approximations and D/BN/N regions at beta (and gamma)
    Regions {
        #[command(flatten)]
        input: InputArgs,
        /// Error admitted for the lower approximation, e.g. 1/4
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Error admitted for the upper approximation; defaults to beta
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
    },
    /// Overlap degree of every block and the critical precisions
    Thresholds {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Approximations at 0 and at every critical precision
    Sweep {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Family over a grid, its join/meet closure and the lattice laws
    Lattice {
        #[command(flatten)]
        input: InputArgs,
        /// Ascending precisions, e.g. 0,1/4,1/3,1/2; defaults to 0 and the critical values
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
    },
    /// Every structural property over the refined critical grid
    Check {
        #[command(flatten)]
        input: InputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Instance,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Regions,
    Thresholds,
    Sweep,
    Lattice,
    Check,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Regions => "regions",
            CommandKind::Thresholds => "thresholds",
            CommandKind::Sweep => "sweep",
            CommandKind::Lattice => "lattice",
            CommandKind::Check => "check",
        }
    }
}

/// A fully parsed invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub input: PathBuf,
    pub kind: InputKind,
    pub attributes: Vec<String>,
    pub decision: Option<(String, String)>,
    pub beta: Option<Precision>,
    pub gamma: Option<Precision>,
    pub grid: Option<BetaGrid>,
    pub format: Format,
    /// Notes for the error stream, e.g. inexact-looking decimal literals.
    pub warnings: Vec<String>,
}

impl RunConfig {
    fn from_cli(cli: Cli) -> Result<Self> {
        let mut warnings = Vec::new();
        let (command, input, beta, gamma, grid) = match cli.command {
            Command::Regions { input, beta, gamma } => {
                (CommandKind::Regions, input, Some(beta), gamma, None)
            }
            Command::Thresholds { input } => (CommandKind::Thresholds, input, None, None, None),
            Command::Sweep { input } => (CommandKind::Sweep, input, None, None, None),
            Command::Lattice { input, grid } => (CommandKind::Lattice, input, None, None, grid),
            Command::Check { input } => (CommandKind::Check, input, None, None, None),
        };
        let mut precision = |text: Option<String>| -> Result<Option<Precision>> {
            text.map(|t| {
                if let Some(w) = decimal_warning(&t) {
                    warnings.push(w);
                }
                Precision::parse(&t)
            })
            .transpose()
        };
        let beta = precision(beta)?;
        let gamma = precision(gamma)?;
        let grid = match grid {
            Some(text) => {
                for item in text.split(',') {
                    if let Some(w) = decimal_warning(item) {
                        warnings.push(w);
                    }
                }
                Some(BetaGrid::parse(&text)?)
            }
            None => None,
        };

        let kind = if input.table {
            InputKind::Table
        } else {
            InputKind::Instance
        };
        let decision = match (&kind, input.decision) {
            (InputKind::Table, None) => {
                return Err(Error::Usage(
                    "--table requires --decision column=value".into(),
                ))
            }
            (InputKind::Table, Some(spec)) => match spec.split_once('=') {
                Some((col, val)) if !col.is_empty() => Some((col.to_string(), val.to_string())),
                _ => {
                    return Err(Error::Usage(format!(
                        "--decision expects column=value, got {spec:?}"
                    )))
                }
            },
            (InputKind::Instance, Some(_)) => {
                return Err(Error::Usage("--decision is only valid with --table".into()))
            }
            (InputKind::Instance, None) => None,
        };
        if kind == InputKind::Table && input.attrs.is_empty() {
            return Err(Error::Usage("--table requires --attrs a,b,...".into()));
        }
        if kind == InputKind::Instance && !input.attrs.is_empty() {
            return Err(Error::Usage("--attrs is only valid with --table".into()));
        }
        Ok(RunConfig {
            command,
            input: input.input,
            kind,
            attributes: input.attrs,
            decision,
            beta,
            gamma,
            grid,
            format: input.format,
            warnings,
        })
    }

    pub fn load(&self) -> Result<Instance> {
        let path = self.input.display().to_string();
        let text = std::fs::read_to_string(&self.input).map_err(|e| Error::Io {
            path: path.clone(),
            message: e.to_string(),
        })?;
        match self.kind {
            InputKind::Instance => parse_instance(&text)?.build(),
            InputKind::Table => {
                let table = parse_table(&text)?;
                let partition = indiscernibility(&table, &self.attributes)?;
                let (column, value) = self.decision.as_ref().expect("validated in from_cli");
                let target = target_from_decision(&table, column, value)?;
                let stem = self
                    .input
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned());
                Ok(Instance {
                    name: stem.map(|s| format!("{s}: {column}={value}")),
                    partition,
                    target,
                })
            }
        }
    }
}

/// Flags decimal literals that sit suspiciously close to, but not on, a
/// simple fraction, such as `0.33` next to `1/3`.
fn decimal_warning(literal: &str) -> Option<String> {
    let literal = literal.trim();
    let (_, frac) = literal.split_once('.')?;
    if frac.len() < 2 {
        return None;
    }
    let value = ExactRatio::parse_literal(literal).ok()?;
    let tolerance =
        ExactRatio::new(1, num_traits::pow(num_bigint::BigInt::from(10), frac.len())).ok()?;
    for den in 2..=12i64 {
        let scaled = &value * &ExactRatio::from_integer(den);
        let rounded = (scaled.numer() + scaled.denom() / 2) / scaled.denom();
        let near = ExactRatio::new(rounded, den).ok()?;
        let gap = if near > value {
            &near - &value
        } else {
            &value - &near
        };
        if near != value && gap < tolerance {
            return Some(format!(
                "warning: {literal} is read exactly as {value}, which is not {near}; pass {near} if that is what you mean"
            ));
        }
        if near == value {
            return None;
        }
    }
    None
}

/// Runs one invocation, writing the report to `out` and diagnostics to
/// `err`, and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli, err) {
        Ok((report, code)) => {
            let _ = out.write_all(report.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_parse() {
                EXIT_PARSE
            } else {
                EXIT_INVALID
            }
        }
    }
}

fn execute(cli: Cli, err: &mut dyn Write) -> Result<(String, i32)> {
    let config = RunConfig::from_cli(cli)?;
    for w in &config.warnings {
        let _ = writeln!(err, "{w}");
    }
    let instance = config.load()?;
    let ctx = render::Context::new(&config, &instance);
    let approx = Approximator::new(&instance.partition, &instance.target)?;
    match config.command {
        CommandKind::Regions => {
            let beta = config.beta.clone().expect("regions requires beta");
            let report = match &config.gamma {
                Some(gamma) => {
                    ctx.regions(&approx.vprsve(&beta, gamma).regions, &beta, Some(gamma))
                }
                None => ctx.regions(&approx.vprs(&beta).regions, &beta, None),
            };
            Ok((report, EXIT_OK))
        }
        CommandKind::Thresholds => Ok((ctx.thresholds(&approx.thresholds()), EXIT_OK)),
        CommandKind::Sweep => Ok((ctx.sweep(&approx.sweep()), EXIT_OK)),
        CommandKind::Lattice => {
            let grid = config
                .grid
                .clone()
                .unwrap_or_else(|| BetaGrid::critical(&approx));
            let family: Vec<_> = grid
                .values()
                .iter()
                .map(|b| element_from(&approx, b, b))
                .collect();
            let family_report = check_laws(&family)?;
            let carrier = closure(&family)?;
            let report = check_laws(&carrier)?;
            let code = if report.all_hold() && report.closure.closed() {
                EXIT_OK
            } else {
                EXIT_PROPERTY
            };
            let text = ctx.lattice(
                &grid,
                &family,
                family_report.closure.closed(),
                &carrier,
                &report,
            )?;
            Ok((text, code))
        }
        CommandKind::Check => {
            let report = run_checks(&instance.partition, &instance.target)?;
            let code = if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_PROPERTY
            };
            Ok((ctx.check(&report), code))
        }
    }
}
