//! The `fialg` command line. Reports go to `--out` (or standard output) as
//! canonical JSON; a one-line summary goes to standard error.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails (the report is
//! still written), 2 for unreadable input or a violated precondition.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use crate::algebra::IncidenceAlgebra;
use crate::error::{Error, Result};
use crate::io;
use crate::jordan::{decompose, random_jordan_iso, verify_near_sum, verify_paper_identities, IdentityOptions};
use crate::poset::{generate_random_poset, EdgeProbability};
use crate::report::Report;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fialg", version, about = "Jordan isomorphisms of finite incidence algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a poset file and print it in canonical form (covering relations).
    ValidatePoset {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random poset on `1..n`: each edge i<j with probability p, then closure.
    GenPoset {
        #[arg(long)]
        n: usize,
        /// `p/q` or a decimal in [0, 1].
        #[arg(long)]
        p: String,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random Jordan automorphism of FI(X, R).
    GenJordan {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Homomorphism (default), anti-homomorphism or Jordan check of a map.
    CheckMap {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        map: MapArg,
        #[arg(long, conflicts_with = "jordan")]
        anti: bool,
        #[arg(long)]
        jordan: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split a Jordan isomorphism into homomorphism and anti-homomorphism.
    Decompose {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        map: MapArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Near-sum verification, optionally with the full identity suite.
    Verify {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        map: MapArg,
        #[arg(long)]
        identities: bool,
        /// Seed for the identity corpus.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = IdentityOptions::default().samples)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct Input {
    #[arg(long)]
    poset: PathBuf,
    /// Ring file, or inline: `rationals`, `integers`, `modular(9)`.
    #[arg(long)]
    ring: String,
    /// Run over a ring with 2-torsion.
    #[arg(long)]
    allow_torsion: bool,
}

#[derive(Debug, Args)]
struct MapArg {
    #[arg(long)]
    map: PathBuf,
}

/// Blames torsion on `--ring` and other precondition failures on `--map`.
fn attribute(e: Error, input: &Input, map: Option<&Path>) -> Error {
    let (flag, value) = match (&e, map) {
        (Error::TorsionRefused(_), _) => ("--ring", input.ring.clone()),
        (Error::File { .. } | Error::Io { .. }, _) | (_, None) => return e,
        (_, Some(m)) => ("--map", m.display().to_string()),
    };
    Error::Input {
        flag,
        value,
        source: Box::new(e),
    }
}

impl Input {
    fn load(&self) -> Result<IncidenceAlgebra> {
        let poset = io::load_poset(&self.poset)?;
        let ring = io::resolve_ring(&self.ring)?;
        Ok(IncidenceAlgebra::new(Arc::new(poset), ring))
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS };
        }
    };
    configure_threads();
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.kind());
            EXIT_ERROR
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("FIALG_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        // a pool may already exist when called from a test harness
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn execute(command: Command) -> Result<i32> {
    match command {
        Command::ValidatePoset { file, out } => {
            let p = io::load_poset(&file)?;
            eprintln!(
                "{}: valid poset, {} elements, {} strict pairs",
                file.display(),
                p.len(),
                p.strict_pairs().len()
            );
            emit(&io::poset_to_json(&p), out.as_deref())?;
            Ok(EXIT_PASS)
        }
        Command::GenPoset { n, p, seed, out } => {
            let prob = EdgeProbability::parse(&p)?;
            let poset = generate_random_poset(n, prob, seed)?;
            eprintln!(
                "generated poset: {} elements, {} strict pairs",
                poset.len(),
                poset.strict_pairs().len()
            );
            emit(&io::poset_to_json(&poset), out.as_deref())?;
            Ok(EXIT_PASS)
        }
        Command::GenJordan { input, seed, out } => {
            let fi = input.load()?;
            fi.ring()
                .require_two_torsionfree(input.allow_torsion)
                .map_err(|e| attribute(e, &input, None))?;
            let phi = random_jordan_iso(&fi, seed)?;
            eprintln!("generated Jordan automorphism of dimension {}", fi.dim());
            emit(&io::linmap_to_json(&phi), out.as_deref())?;
            Ok(EXIT_PASS)
        }
        Command::CheckMap {
            input,
            map,
            anti,
            jordan,
            out,
        } => {
            let fi = input.load()?;
            let phi = io::load_endomorphism(&map.map, &fi)?;
            let report = if jordan {
                phi.check_jordan(input.allow_torsion)
                    .map_err(|e| attribute(e, &input, Some(&map.map)))?
            } else {
                phi.check_homomorphism(anti)
            };
            finish("check-map", &report, &io::report_to_json(&report), out.as_deref())
        }
        Command::Decompose { input, map, out } => {
            let fi = input.load()?;
            let phi = io::load_endomorphism(&map.map, &fi)?;
            let d = decompose(&fi, &phi, input.allow_torsion).map_err(|e| attribute(e, &input, Some(&map.map)))?;
            finish(
                "decompose",
                &d.report,
                &io::decomposition_to_json(&d.report, &d.psi_tilde, &d.theta_tilde),
                out.as_deref(),
            )
        }
        Command::Verify {
            input,
            map,
            identities,
            seed,
            samples,
            out,
        } => {
            let fi = input.load()?;
            let phi = io::load_endomorphism(&map.map, &fi)?;
            let d = decompose(&fi, &phi, input.allow_torsion).map_err(|e| attribute(e, &input, Some(&map.map)))?;
            let mut report = verify_near_sum(&d);
            if identities {
                let opts = IdentityOptions {
                    seed,
                    samples,
                    ..IdentityOptions::default()
                };
                let identities = verify_paper_identities(&fi, &phi, input.allow_torsion, &opts)
                    .map_err(|e| attribute(e, &input, Some(&map.map)))?;
                report.extend(identities);
            }
            finish("verify", &report, &io::report_to_json(&report), out.as_deref())
        }
    }
}

fn finish(command: &str, report: &Report, json: &Value, out: Option<&Path>) -> Result<i32> {
    emit(json, out)?;
    let passed = report.checks.iter().filter(|c| c.pass).count();
    eprintln!("{command}: {passed}/{} checks pass", report.checks.len());
    for c in report.failing() {
        eprintln!("  {} failed ({} witnesses)", c.name, c.witnesses.len());
    }
    Ok(if report.all_pass() { EXIT_PASS } else { EXIT_FAIL })
}

fn emit(v: &Value, out: Option<&Path>) -> Result<()> {
    let text = io::to_canonical_string(v);
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
