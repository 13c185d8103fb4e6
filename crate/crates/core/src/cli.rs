//! Command-line front end. Exit codes: 0 all checks pass, 1 a check failed,
//! 2 usage or parse error, 3 I/O error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{bdf_classify, build_family, ActionDescriptor, Family, LambdaValue, Rotation};
use crate::field::{format_rational, EisensteinNumber};
use crate::torus::{GraphCurve, ProductTorus, TorusCurve, VerticalFiber};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ballq", version, about = "Certify ball-quotient compactification families with exact arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Gamma,
    Lambda,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Gamma => Family::Gamma,
            FamilyArg::Lambda => Family::Lambda,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RotationArg {
    #[value(name = "neg", alias = "-1")]
    Neg,
    I,
    #[value(alias = "r")]
    Rho,
    Zeta6,
}

impl From<RotationArg> for Rotation {
    fn from(r: RotationArg) -> Self {
        match r {
            RotationArg::Neg => Rotation::MinusOne,
            RotationArg::I => Rotation::I,
            RotationArg::Rho => Rotation::Rho,
            RotationArg::Zeta6 => Rotation::Zeta6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LambdaArg {
    I,
    #[value(alias = "r")]
    Rho,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a family for each n and print one report per n.
    Verify {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// A single n or an inclusive range `a..b`.
        #[arg(long, value_parser = parse_n_range)]
        n: RangeInclusive<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Write the reports to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads; output order does not depend on it.
        #[arg(long, env = "BALLQ_JOBS")]
        jobs: Option<usize>,
        /// Print a pass/fail line per n on stderr.
        #[arg(short, long)]
        verbose: bool,
    },
    /// Tabulate the volumes of X1 … XN and check they fill the spectrum.
    Spectrum {
        /// Largest n to tabulate.
        #[arg(value_parser = clap::value_parser!(u64).range(1..))]
        max_n: u64,
        #[arg(long, value_enum, default_value = "markdown")]
        format: Format,
    },
    /// Intersect two curves on An, given as `graph:α,β` (w = αz + β) or `fiber:z0`.
    Intersect {
        first: String,
        second: String,
        /// Selects the torus `C/Z[ρ] × C/Δn`.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Match an action descriptor against the bielliptic catalog.
    Classify {
        /// Order of the group K.
        #[arg(long)]
        order: u32,
        /// Root of unity acting on the first factor.
        #[arg(long, value_enum)]
        rotation: Option<RotationArg>,
        /// Modulus of the first factor.
        #[arg(long, value_enum)]
        lambda: Option<LambdaArg>,
        /// Order of an extra translation on the first factor.
        #[arg(long)]
        translation: Option<u32>,
        /// Order of the translation by which the rotation acts on the second factor.
        #[arg(long)]
        tau_translation: Option<u32>,
    },
}

pub fn parse_n_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let parse = |t: &str| -> Result<u64, String> {
        let v: u64 = t.trim().parse().map_err(|_| format!("`{t}` is not a nonnegative integer"))?;
        if v == 0 {
            return Err("n must be at least 1".into());
        }
        Ok(v)
    };
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok(a..=b)
}

/// Output of a command: bytes for stdout plus an exit code.
struct Outcome {
    stdout: String,
    code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let (outcome, out_path) = match cli.command {
        Command::Verify {
            family,
            n,
            format,
            out,
            jobs,
            verbose,
        } => match verify(family.into(), n, format, jobs, verbose) {
            Ok(o) => (o, out),
            Err(msg) => {
                eprintln!("error: {msg}");
                return EXIT_USAGE;
            }
        },
        Command::Spectrum { max_n, format } => (spectrum(max_n, format), None),
        Command::Intersect { first, second, n } => match intersect(&first, &second, n) {
            Ok(o) => (o, None),
            Err(msg) => {
                eprintln!("error: {msg}");
                return EXIT_USAGE;
            }
        },
        Command::Classify {
            order,
            rotation,
            lambda,
            translation,
            tau_translation,
        } => {
            let desc = ActionDescriptor {
                group_order: order,
                rotation: rotation.map(Into::into),
                lambda_translation_order: translation,
                tau_translation_order: tau_translation,
                lambda: lambda.map(|l| match l {
                    LambdaArg::I => LambdaValue::I,
                    LambdaArg::Rho => LambdaValue::Rho,
                }),
            };
            (classify(&desc), None)
        }
    };
    match write_output(&outcome.stdout, out_path) {
        Ok(()) => outcome.code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_IO
        }
    }
}

fn write_output(text: &str, path: Option<PathBuf>) -> io::Result<()> {
    match path {
        Some(p) => {
            let mut f = File::create(&p).map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", p.display())))?;
            f.write_all(text.as_bytes())?;
            f.flush()
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

fn verify(
    family: Family,
    range: RangeInclusive<u64>,
    format: Format,
    jobs: Option<usize>,
    verbose: bool,
) -> Result<Outcome, String> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err("--jobs must be at least 1".into());
        }
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| e.to_string())?;
    // Indexed parallel collect keeps the reports in order of n.
    let reports: Vec<_> = pool.install(|| range.into_par_iter().map(|n| build_family(family, n)).collect());

    let mut stdout = String::new();
    for (i, r) in reports.iter().enumerate() {
        match format {
            Format::Json => {
                stdout.push_str(&r.to_json_line());
                stdout.push('\n');
            }
            Format::Markdown => {
                if i > 0 {
                    stdout.push('\n');
                }
                stdout.push_str(&r.to_markdown());
            }
        }
        if verbose || !r.pass {
            let failed: Vec<&str> = r.failed_checks().iter().map(|c| c.name.as_str()).collect();
            if r.pass {
                eprintln!("{family} n={}: pass", r.n);
            } else {
                eprintln!("{family} n={}: FAIL ({})", r.n, failed.join(", "));
            }
        }
    }
    let code = if reports.iter().all(|r| r.pass) {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    Ok(Outcome { stdout, code })
}

#[derive(Serialize)]
struct SpectrumRow {
    n: u64,
    volume: String,
    coefficient_of_pi_squared: String,
}

fn spectrum(max_n: u64, format: Format) -> Outcome {
    let mut rows = Vec::new();
    let mut saturated = true;
    for n in 1..=max_n {
        let report = build_family(Family::Gamma, n);
        let Some(inv) = report.invariants.filter(|_| report.pass) else {
            saturated = false;
            continue;
        };
        let expected = crate::field::rational(8 * n as i64, 3);
        saturated &= inv.volume.coefficient == expected;
        rows.push(SpectrumRow {
            n,
            volume: inv.volume.exact_string(),
            coefficient_of_pi_squared: format_rational(&inv.volume.coefficient),
        });
    }
    saturated &= rows.len() as u64 == max_n;
    let stdout = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Spectrum<'a> {
                rows: &'a [SpectrumRow],
                saturated: bool,
            }
            let mut s = serde_json::to_string(&Spectrum { rows: &rows, saturated }).expect("serializes");
            s.push('\n');
            s
        }
        Format::Markdown => {
            let mut s = String::from("| n | volume |\n|---|---|\n");
            for r in &rows {
                let _ = writeln!(s, "| {} | {} |", r.n, r.volume);
            }
            let _ = writeln!(
                s,
                "\nsaturated: {saturated} (volumes are (8/3)π²·k for every k = 1..{max_n})"
            );
            s
        }
    };
    Outcome {
        stdout,
        code: if saturated { EXIT_OK } else { EXIT_CHECK_FAILED },
    }
}

fn parse_curve(spec: &str, amb: &ProductTorus) -> Result<TorusCurve, String> {
    let (kind, body) = spec
        .split_once(':')
        .ok_or_else(|| format!("`{spec}`: expected `graph:α,β` or `fiber:z0`"))?;
    let num = |s: &str| s.parse::<EisensteinNumber>().map_err(|e| format!("`{spec}`: {e}"));
    match kind {
        "graph" => {
            let (alpha, beta) = body
                .split_once(',')
                .ok_or_else(|| format!("`{spec}`: a graph needs `slope,offset`"))?;
            GraphCurve::new(num(alpha)?, &num(beta)?, amb)
                .map(TorusCurve::Graph)
                .map_err(|e| e.to_string())
        }
        "fiber" => Ok(TorusCurve::Fiber(VerticalFiber::new(&num(body)?, amb))),
        other => Err(format!("unknown curve kind `{other}`")),
    }
}

fn intersect(first: &str, second: &str, n: u64) -> Result<Outcome, String> {
    let amb = ProductTorus::a_n(n).map_err(|e| e.to_string())?;
    let (c1, c2) = (parse_curve(first, &amb)?, parse_curve(second, &amb)?);
    let result = c1.intersect(&c2).map_err(|e| e.to_string())?;
    let mut stdout = serde_json::to_string(&result).expect("serializes");
    stdout.push('\n');
    Ok(Outcome { stdout, code: EXIT_OK })
}

fn classify(desc: &ActionDescriptor) -> Outcome {
    match bdf_classify(desc) {
        Ok(t) => Outcome {
            stdout: format!("{t}\n"),
            code: EXIT_OK,
        },
        Err(v) => Outcome {
            stdout: format!("invalid: {v}\n"),
            code: EXIT_CHECK_FAILED,
        },
    }
}
