use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use krawx_core::bikraw::Route;
use krawx_core::EulerAngles64;

use crate::error::CliError;
use crate::suites::Suite;

/// Angles used when `--euler` is omitted.
pub const CANONICAL_ANGLES: (f64, f64, f64) = (0.3, 0.7, 0.2);

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// One polynomial value by the chosen route.
    Eval,
    /// Every P_{r,s}(i,k;N) at one level.
    Table,
    /// Named validation suite.
    Validate,
    /// Raw matrix element of the oscillator representation.
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "krawx", version, about = "Bivariate Krawtchouk polynomials and 3D oscillator overlaps")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,

    /// Suite name for `validate`.
    pub suite: Option<String>,

    /// Energy level N.
    #[arg(long = "N", value_name = "INT")]
    pub level: Option<u32>,

    /// Largest level swept by `validate`.
    #[arg(long = "N-max", value_name = "INT")]
    pub level_max: Option<u32>,

    /// Degree and variable indices.
    #[arg(long, value_name = "r,s,i,k")]
    pub indices: Option<String>,

    /// Euler angles alpha,beta,gamma (radians unless --degrees).
    #[arg(long, value_name = "a,b,c", allow_hyphen_values = true)]
    pub euler: Option<String>,

    #[arg(long)]
    pub degrees: bool,

    #[arg(long, value_name = "NAME", default_value = "genfun")]
    pub route: String,

    /// Pass threshold for `validate`; each suite has its own default.
    #[arg(long, value_name = "FLOAT", allow_negative_numbers = true)]
    pub tol: Option<f64>,

    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Single-threaded, byte-reproducible output.
    #[arg(long)]
    pub serial: bool,

    /// Write the output here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Indices {
    pub r: u32,
    pub s: u32,
    pub i: u32,
    pub k: u32,
}

impl FromStr for Indices {
    type Err = CliError;

    fn from_str(text: &str) -> Result<Self, CliError> {
        let parts = parse_list::<u32>(text, "indices")?;
        match parts[..] {
            [r, s, i, k] => Ok(Indices { r, s, i, k }),
            _ => Err(CliError::Usage(format!("--indices expects four integers r,s,i,k, got {text:?}"))),
        }
    }
}

fn parse_list<T: FromStr>(text: &str, what: &str) -> Result<Vec<T>, CliError> {
    text.split(',').map(|p| p.trim().parse::<T>().map_err(|_| CliError::Usage(format!("bad {what} component {p:?}")))).collect()
}

fn parse_angles(text: &str, degrees: bool) -> Result<EulerAngles64, CliError> {
    let parts = parse_list::<f64>(text, "angle")?;
    let [a, b, c] = parts[..] else {
        return Err(CliError::Usage(format!("--euler expects three angles a,b,c, got {text:?}")));
    };
    if !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(CliError::Usage("angles must be finite".into()));
    }
    let scale = if degrees { std::f64::consts::PI / 180.0 } else { 1.0 };
    Ok(EulerAngles64::new(a * scale, b * scale, c * scale))
}

/// Validated command-line configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub suite: Option<Suite>,
    pub level: Option<u32>,
    pub level_max: Option<u32>,
    pub indices: Option<Indices>,
    pub angles: EulerAngles64,
    pub route: Route,
    pub tolerance: Option<f64>,
    pub format: OutputFormat,
    pub seed: u64,
    pub serial: bool,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let route = cli.route.parse::<Route>().map_err(|e| CliError::Usage(e.to_string()))?;
        let angles = match &cli.euler {
            Some(text) => parse_angles(text, cli.degrees)?,
            None => {
                let (a, b, c) = CANONICAL_ANGLES;
                EulerAngles64::new(a, b, c)
            }
        };
        let indices = cli.indices.as_deref().map(str::parse::<Indices>).transpose()?;
        if let Some(t) = cli.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Usage(format!("--tol must be positive, got {t}")));
            }
        }
        let suite = match (cli.command, &cli.suite) {
            (Command::Validate, Some(name)) => Some(name.parse::<Suite>()?),
            (Command::Validate, None) => {
                return Err(CliError::Usage(format!("validate needs a suite: {}", Suite::names().join(", "))))
            }
            (_, Some(extra)) => return Err(CliError::Usage(format!("unexpected argument {extra:?}"))),
            (_, None) => None,
        };
        if matches!(cli.command, Command::Eval | Command::Table | Command::Oracle) && cli.level.is_none() {
            return Err(CliError::Usage("--N is required".into()));
        }
        if let (Some(n), Some(ix)) = (cli.level, indices) {
            if ix.r + ix.s > n || ix.i + ix.k > n {
                return Err(CliError::Usage(format!(
                    "indices {},{},{},{} need r+s <= N and i+k <= N (N = {n})",
                    ix.r, ix.s, ix.i, ix.k
                )));
            }
        }
        let format = cli.format.unwrap_or(match cli.command {
            Command::Validate => OutputFormat::Json,
            _ => OutputFormat::Csv,
        });
        Ok(RunConfig {
            command: cli.command,
            suite,
            level: cli.level,
            level_max: cli.level_max,
            indices,
            angles,
            route,
            tolerance: cli.tol,
            format,
            seed: cli.seed,
            serial: cli.serial,
            out: cli.out.clone(),
        })
    }

    pub fn indices_or_origin(&self) -> Indices {
        self.indices.unwrap_or(Indices { r: 0, s: 0, i: 0, k: 0 })
    }
}
