//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on a domain error (one diagnostic line on
//! stderr), 2 on a usage error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::dimension::box_count_estimate;
use crate::error::Error;
use crate::fractal::{generate, member, prefractal_by_digits, DEFAULT_MAX_SQUARES};
use crate::radix::{
    add, carry_free, int_to_digits, parse_rational, DigitString, DigitSystem, Rational,
};
use crate::render::{rasterize, write_pbm, write_svg};

#[derive(Debug, Parser)]
#[command(
    name = "digit-fractals",
    version,
    about = "Digit systems, triangle and hexagon fractals"
)]
struct Cli {
    /// Refuse to build prefractals with more squares than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SQUARES)]
    max_squares: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SystemArgs {
    /// Radix m.
    #[arg(long)]
    base: i64,
    /// Balance offset b (0 for the standard base).
    #[arg(long, default_value_t = 0)]
    balance: i64,
}

impl SystemArgs {
    fn system(&self) -> Result<DigitSystem, Error> {
        DigitSystem::new(self.base, self.balance)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integer to numeral (--int) or numeral to exact value (--x).
    Convert {
        #[arg(
            long,
            allow_hyphen_values = true,
            conflicts_with = "x",
            required_unless_present = "x"
        )]
        int: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long)]
        base: Option<i64>,
        #[arg(long, default_value_t = 0)]
        balance: i64,
    },
    /// Sum of two numerals.
    Add {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Whether two numerals add without carries.
    Carryfree {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Exact membership of a rational point `p/q,r/s`.
    Member {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Depth-n prefractal as JSON or a text bitmap.
    Gen {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        depth: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Box-counting report at depth n.
    Dim {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        depth: u32,
    },
    /// Depth-n prefractal as PBM or SVG.
    Render {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        depth: u32,
        #[arg(long, value_enum, default_value_t = Format::Pbm)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the IFS and digit constructions at depth n.
    Verify {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        depth: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Pbm,
    Svg,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::Domain(err)
    }
}

impl From<io::Error> for Failure {
    fn from(err: io::Error) -> Self {
        Failure::Domain(err.into())
    }
}

/// Parses `argv` (including the program name) and runs one subcommand.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = err.exit_code();
            let rendered = err.render().to_string();
            let sink: &mut dyn Write = if err.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Domain(err)) => {
            let _ = writeln!(stderr, "error: {err}");
            1
        }
    }
}

fn numeral(text: &str) -> Result<DigitString, Failure> {
    Ok(text.parse()?)
}

fn parse_point(text: &str) -> Result<(Rational, Rational), Failure> {
    let (x, y) = text
        .split_once(',')
        .ok_or_else(|| Failure::Domain(Error::Parse(format!("point `{text}` is not `x,y`"))))?;
    Ok((parse_rational(x)?, parse_rational(y)?))
}

fn emit(out: Option<&Path>, stdout: &mut dyn Write, body: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            file.write_all(body)?;
            file.flush()?;
        }
        None => stdout.write_all(body)?,
    }
    Ok(())
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), Failure> {
    let cap = cli.max_squares;
    match &cli.command {
        Command::Convert {
            int,
            x,
            base,
            balance,
        } => {
            if let Some(int) = int {
                let base =
                    base.ok_or_else(|| Failure::Usage("convert --int needs --base".into()))?;
                let n: BigInt = int
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("malformed integer `{int}`")))?;
                let sys = DigitSystem::new(base, *balance)?;
                writeln!(stdout, "{}", int_to_digits(&n, sys)?)?;
            } else if let Some(x) = x {
                writeln!(stdout, "{}", numeral(x)?.value())?;
            }
        }
        Command::Add { x, y } => {
            writeln!(stdout, "{}", add(&numeral(x)?, &numeral(y)?)?)?;
        }
        Command::Carryfree { x, y } => {
            writeln!(stdout, "{}", carry_free(&numeral(x)?, &numeral(y)?)?)?;
        }
        Command::Member { system, point } => {
            let sys = system.system()?;
            let (x, y) = parse_point(point)?;
            writeln!(stdout, "{}", member(&x, &y, sys)?)?;
        }
        Command::Gen {
            system,
            depth,
            format,
            out,
        } => {
            if !matches!(format, Format::Json | Format::Text) {
                return Err(Failure::Usage("gen supports --format json or text".into()));
            }
            let p = generate(system.system()?, *depth, cap)?;
            let body = match format {
                Format::Json => format!("{}\n", p.to_json()),
                _ => rasterize(&p)?.to_text('#', '.'),
            };
            emit(out.as_deref(), stdout, body.as_bytes())?;
        }
        Command::Dim { system, depth } => {
            let report = box_count_estimate(system.system()?, *depth, cap)?;
            writeln!(stdout, "{}", report.to_json_line())?;
        }
        Command::Render {
            system,
            depth,
            format,
            out,
        } => {
            if !matches!(format, Format::Pbm | Format::Svg) {
                return Err(Failure::Usage("render supports --format pbm or svg".into()));
            }
            let p = generate(system.system()?, *depth, cap)?;
            let mut body = Vec::new();
            match format {
                Format::Pbm => write_pbm(&rasterize(&p)?, &mut body)?,
                _ => write_svg(&p, &mut body)?,
            }
            emit(out.as_deref(), stdout, &body)?;
        }
        Command::Verify { system, depth } => {
            let sys = system.system()?;
            let ifs = generate(sys, *depth, cap)?;
            let digits = prefractal_by_digits(sys, *depth);
            if ifs == digits {
                writeln!(stdout, "equivalence: ok ({} squares)", ifs.len())?;
            } else {
                writeln!(
                    stdout,
                    "equivalence: FAILED (ifs {} squares, digits {} squares)",
                    ifs.len(),
                    digits.len()
                )?;
                return Err(Failure::Domain(Error::Internal(
                    "IFS and digit prefractals differ".into(),
                )));
            }
        }
    }
    Ok(())
}
