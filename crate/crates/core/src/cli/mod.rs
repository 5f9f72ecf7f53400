//! Command-line front end. `run_command` is the whole program; `main` only
//! forwards the process arguments.

mod files;
mod layout;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::extension::{
    builtin_example, check_restriction, extend_bundle, verify_cocycle, BundleSpec,
    DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TOL,
};

pub use files::{
    ExtensionFile, ReportFile, SpecFile, Timing, EXTENSION_FORMAT, FILE_VERSION, REPORT_FORMAT,
    SPEC_FORMAT, WORD_ORDER,
};
pub use layout::{layout_rows, LayoutRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const SEED_ENV: &str = "BUNDLEX_SEED";

#[derive(Debug, Parser)]
#[command(name = "bundlex", version, about = "Extend C^n bundles over holes and check the gluing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a built-in bundle spec.
    Example {
        name: String,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the extension and write it.
    Extend {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the extension, sample every gluing identity and write a report.
    Verify {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        report: PathBuf,
    },
    /// Write the holes, collars and sub-holes as CSV circles.
    Layout {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Failure with its exit code and message.
struct Failure(i32, String);

fn bad(msg: impl std::fmt::Display) -> Failure {
    Failure(EXIT_BAD_INPUT, msg.to_string())
}

/// Runs the program on `argv` (program name first), reading the default seed
/// from `BUNDLEX_SEED`. Diagnostics go to stderr.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env_seed = std::env::var(SEED_ENV).ok();
    run_with(argv, env_seed.as_deref(), &mut std::io::stderr())
}

/// [`run_command`] with the environment seed and the diagnostic sink passed
/// in.
pub fn run_with<I, T>(argv: I, env_seed: Option<&str>, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, env_seed, err) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(cmd: Command, env_seed: Option<&str>, err: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Example { name, k, out } => {
            if name != "demailly" && k.is_some() {
                return Err(bad(format!("--k only applies to demailly, not {name:?}")));
            }
            let spec = builtin_example(&name, k).map_err(bad)?;
            write_json(&out, &SpecFile::from_spec(&spec))?;
        }
        Command::Extend { spec, out } => {
            let spec = load_spec(&spec)?;
            let ext = extend_bundle(&spec).map_err(bad)?;
            write_json(&out, &ExtensionFile::new(ext))?;
        }
        Command::Verify {
            spec,
            samples,
            tol,
            seed,
            report,
        } => {
            if samples == 0 {
                return Err(bad("--samples must be positive"));
            }
            if !(tol.is_finite() && tol > 0.0) {
                return Err(bad("--tol must be a positive number"));
            }
            let seed = match (seed, env_seed) {
                (Some(s), _) => s,
                (None, Some(v)) => v
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("{SEED_ENV}={v:?} is not an unsigned integer")))?,
                (None, None) => DEFAULT_SEED,
            };
            let spec = load_spec(&spec)?;
            let started = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs_f64())
                .unwrap_or(0.0);
            let clock = Instant::now();
            let ext = extend_bundle(&spec).map_err(bad)?;
            let mut rep = verify_cocycle(&ext, samples, tol, seed);
            rep.push(check_restriction(&spec, &ext));
            let timing = Timing {
                started_unix_seconds: started,
                elapsed_seconds: clock.elapsed().as_secs_f64(),
            };
            let file = ReportFile::new(rep, timing);
            write_json(&report, &file)?;
            if !file.pass {
                for r in file.report.failing() {
                    let site = r.site.map(|s| format!("{s}, ")).unwrap_or_default();
                    let _ = writeln!(
                        err,
                        "FAIL {} [{}{}]: max residual {:e} > tol {:e}{}",
                        r.identity,
                        site,
                        r.location,
                        r.max_residual,
                        r.tolerance,
                        r.error.as_ref().map(|e| format!(" ({e})")).unwrap_or_default()
                    );
                }
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Layout { spec, out } => {
            let spec = load_spec(&spec)?;
            let ext = extend_bundle(&spec).map_err(bad)?;
            let mut csv = String::from(LayoutRow::HEADER);
            csv.push('\n');
            for row in layout_rows(&spec, &ext) {
                csv.push_str(&row.to_csv());
                csv.push('\n');
            }
            fs::write(&out, csv).map_err(|e| bad(format!("{}: {e}", out.display())))?;
        }
    }
    Ok(EXIT_OK)
}

/// Reads and validates a spec file.
pub fn read_spec_file(path: &Path) -> Result<BundleSpec, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: SpecFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    file.into_spec().map_err(|e| format!("{}: {e}", path.display()))
}

fn load_spec(path: &Path) -> Result<BundleSpec, Failure> {
    read_spec_file(path).map_err(bad)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(bad)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| bad(format!("{}: {e}", path.display())))
}
