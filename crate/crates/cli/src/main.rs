//! `pyramids`: counts, conversions, property checks and report tables for
//! pyramids of one-dimensional pieces.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 bad usage or input,
//! 3 a budget cap was hit.

mod convert;
mod output;
mod report;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use pyramids::lego::{count_flat_exhaustive, count_flat_rows};
use pyramids::series::{count_a, count_b};
use pyramids::{heap, PieceLength, PyramidClass, DEFAULT_BUDGET};

use crate::output::{parse_range, Format, Range, SCHEMA_VERSION};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Failed(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<pyramids::Error> for CliError {
    fn from(e: pyramids::Error) -> Self {
        match e {
            pyramids::Error::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "pyramids",
    version,
    about = "Pyramids of one-dimensional pieces: counts, bijections, series and checks"
)]
struct Cli {
    /// Worker threads for parallel work (1 gives bit-exact baselines; results
    /// are identical for every value).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact number of pyramids, right/left pyramids or flat structures.
    Count(CountArgs),
    /// Convert between strings, walks, paths, trees, pyramids and
    /// admissible compositions.
    Convert(convert::ConvertArgs),
    /// Run a named property suite; exits 1 if any check fails.
    Verify(verify::VerifyArgs),
    /// Write tables of series, width ratios, asymptotics, transfer matrices
    /// or growth estimates.
    Report(report::ReportArgs),
    /// List every pyramid of one size.
    Enumerate(EnumerateArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassArg {
    /// All pyramids
    General,
    /// Right s-pyramids
    Right,
    /// Left s-pyramids
    Left,
    /// Flat LEGO structures
    Flat,
}

impl ClassArg {
    fn pyramid_class(self, s: i64) -> Option<PyramidClass> {
        match self {
            ClassArg::General => Some(PyramidClass::General),
            ClassArg::Right => Some(PyramidClass::RightS(s)),
            ClassArg::Left => Some(PyramidClass::LeftS(s)),
            ClassArg::Flat => None,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum VerifyMethod {
    /// Compare with exhaustive enumeration.
    Enum,
}

#[derive(Args, Debug)]
struct CountArgs {
    /// Piece length, or an inclusive range such as 2..5.
    #[arg(long, value_parser = parse_range)]
    a: Range,
    /// Size, or an inclusive range such as 1..10.
    #[arg(long, value_parser = parse_range)]
    m: Range,
    #[arg(long, value_enum, default_value_t = ClassArg::General)]
    class: ClassArg,
    /// Anchor s for right/left classes (does not change the count).
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    s: i64,
    /// Cross-check every value.
    #[arg(long, value_enum)]
    verify: Option<VerifyMethod>,
    /// Largest number of objects an enumeration may produce.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long)]
    a: u32,
    #[arg(long)]
    m: usize,
    #[arg(long, value_enum, default_value_t = ClassArg::General)]
    class: ClassArg,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    s: i64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// json: one document with every pyramid; text: ASCII drawings.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn piece_length(a: u32) -> CliResult<PieceLength> {
    Ok(PieceLength::new(a)?)
}

#[derive(Serialize)]
struct CountRow {
    a: u32,
    m: usize,
    count: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

fn run_count(args: &CountArgs) -> CliResult<String> {
    let mut rows = Vec::new();
    for av in args.a.iter() {
        let a = piece_length(av as u32)?;
        for m in args.m.iter() {
            let m = m as usize;
            if m == 0 {
                return Err(CliError::Usage("size must be at least 1".into()));
            }
            let count = match args.class.pyramid_class(args.s) {
                Some(PyramidClass::General) => count_b(a, m),
                Some(_) => count_a(a, m),
                None => count_flat_rows(a, m)?,
            };
            let verified = match args.verify {
                None => None,
                Some(VerifyMethod::Enum) => {
                    let other = match args.class.pyramid_class(args.s) {
                        Some(class) => {
                            let mut n = 0u64;
                            heap::visit_pyramids(a, m, class, args.budget, |_| n += 1)?;
                            BigUint::from(n)
                        }
                        None => count_flat_exhaustive(a, m, args.budget)?,
                    };
                    Some(other == count)
                }
            };
            rows.push(CountRow {
                a: av as u32,
                m,
                count: count.to_string(),
                verified,
            });
        }
    }
    let failed = rows.iter().any(|r| r.verified == Some(false));
    let text = match args.format {
        Format::Json => output::json(&serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "class": args.class,
            "counts": rows,
        })),
        Format::Csv => {
            let mut s = String::from("a,m,count,verified\n");
            for r in &rows {
                let v = r.verified.map(|v| v.to_string()).unwrap_or_default();
                s.push_str(&format!("{},{},{},{}\n", r.a, r.m, r.count, v));
            }
            s
        }
        Format::Bfile => rows.iter().map(|r| format!("{} {}\n", r.m, r.count)).collect(),
        Format::Text => {
            let single = rows.len() == 1;
            rows.iter()
                .map(|r| {
                    let tag = match r.verified {
                        Some(true) => " verified",
                        Some(false) => " MISMATCH",
                        None => "",
                    };
                    if single {
                        format!("{}{}\n", r.count, tag)
                    } else {
                        format!("a={} m={} {}{}\n", r.a, r.m, r.count, tag)
                    }
                })
                .collect()
        }
    };
    if failed {
        print!("{text}");
        return Err(CliError::Failed("enumeration disagrees with the closed form".into()));
    }
    Ok(text)
}

fn run_enumerate(args: &EnumerateArgs) -> CliResult<String> {
    let a = piece_length(args.a)?;
    let Some(class) = args.class.pyramid_class(args.s) else {
        let all = pyramids::lego::enumerate_flat(a, args.m, args.budget)?;
        let pieces: Vec<_> = all.iter().map(|s| output::piece_list(&s.pieces)).collect();
        return Ok(output::json(&serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "a": args.a,
            "m": args.m,
            "class": "flat",
            "structures": pieces,
        })));
    };
    let mut out = String::new();
    let mut docs = Vec::new();
    heap::visit_pyramids(a, args.m, class, args.budget, |p| match args.format {
        Format::Text => {
            out.push_str(&p.render_ascii());
            out.push('\n');
        }
        _ => docs.push(output::piece_list(p.pieces())),
    })?;
    if args.format == Format::Text {
        return Ok(out);
    }
    Ok(output::json(&serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "a": args.a,
        "m": args.m,
        "class": args.class,
        "s": args.s,
        "pyramids": docs,
    })))
}

pub fn emit(text: &str, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.max(1))
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    match &cli.command {
        Command::Count(args) => emit(&run_count(args)?, None),
        Command::Enumerate(args) => emit(&run_enumerate(args)?, args.out.as_ref()),
        Command::Convert(args) => emit(&convert::run(args)?, None),
        Command::Verify(args) => verify::run(args),
        Command::Report(args) => report::run(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
