//! sclcalc: exact stable commutator length in free products of cyclic groups.
//!
//! Exit codes: 0 success, 1 invalid input, 2 internal assertion failure
//! (solver or assembly contract breach).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::Signed;

use scl_core::experiments::{
    check_finite_approx, histogram, random_chains, sweep, write_histogram_csv, write_sweep_csv,
    RandomChainSpec, SweepSpec,
};
use scl_core::simplex::certify;
use scl_core::surface::{assemble, export_dot, export_json, verify_extremal, SurfaceComplex};
use scl_core::{
    scl_of_chain, Chain, GroupSpec, PivotRule, Rational, SclError, SolverOptions,
};

#[derive(Parser)]
#[command(
    name = "sclcalc",
    about = "Exact stable commutator length in free products of cyclic groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ChainArgs {
    /// Group spec: (letter order)+, e.g. a3b2; order 0 means infinite.
    #[arg(short, long)]
    group: String,
    /// Words of the chain (uppercase letter = inverse).
    #[arg(value_name = "WORD")]
    words: Vec<String>,
    /// The chain as a single '+'-separated string, e.g. "abAABB+ab".
    #[arg(long, conflicts_with = "words")]
    chain: Option<String>,
}

impl ChainArgs {
    fn parse_chain(&self) -> Result<(GroupSpec, Chain), SclError> {
        let group = GroupSpec::parse(&self.group).map_err(SclError::Input)?;
        let chain = match &self.chain {
            Some(joined) => Chain::parse_joined(&group, joined),
            None => Chain::parse(&group, &self.words),
        }
        .map_err(SclError::Input)?;
        Ok((group, chain))
    }
}

#[derive(Args)]
struct SolverArgs {
    /// Propose a starting basis with a floating-point run; the basis is
    /// re-checked in exact arithmetic, so results stay exact.
    #[arg(long)]
    warm_start: bool,
    /// Use Bland's pivot rule throughout instead of the default.
    #[arg(long)]
    bland: bool,
    /// Diagnostics (LP dimensions, pivot count) on stderr.
    #[arg(short, long)]
    verbose: bool,
}

impl SolverArgs {
    fn options(&self) -> SolverOptions {
        SolverOptions {
            pivot_rule: if self.bland {
                PivotRule::Bland
            } else {
                PivotRule::Lexicographic
            },
            warm_start: self.warm_start,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute scl; the final stdout line is the exact rational.
    Scl {
        #[command(flatten)]
        chain: ChainArgs,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Compute scl and write the extremal surface (JSON and/or DOT).
    Surface {
        #[command(flatten)]
        chain: ChainArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Write the surface complex as JSON here.
        #[arg(long)]
        surface: Option<PathBuf>,
        /// Write the spine graph in DOT format here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Sweep factor orders over a grid and emit CSV.
    Sweep {
        #[command(flatten)]
        chain: ChainArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Per-factor order lists, comma-separated: "2:6,2:6" sweeps both
        /// factors over 2..=6; a single number fixes the order (0 = infinite).
        #[arg(long)]
        ranges: String,
        /// Output CSV path (stdout when omitted).
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// scl histogram of seeded random words.
    Histogram {
        /// Group spec, e.g. a3b2.
        #[arg(short, long)]
        group: String,
        /// Word length before normalization.
        #[arg(long, default_value_t = 8)]
        length: usize,
        /// Number of sampled chains.
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Exact bin width, e.g. 1/24.
        #[arg(long, default_value = "1/24")]
        bin_width: String,
        /// Output CSV path (stdout when omitted).
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Verify the extremal surface and the finite-order approximation bound.
    Check {
        #[command(flatten)]
        chain: ChainArgs,
        #[command(flatten)]
        solver: SolverArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                AppError::Input(_) => ExitCode::from(1),
                AppError::Internal(_) | AppError::Io(_) => ExitCode::from(2),
            }
        }
    }
}

#[derive(Debug)]
enum AppError {
    Input(String),
    Internal(String),
    Io(std::io::Error),
}

impl std::fmt::Display for AppError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AppError::Input(m) => write!(f, "{m}"),
            AppError::Internal(m) => write!(f, "internal: {m}"),
            AppError::Io(e) => write!(f, "io: {e}"),
        }
    }
}

impl From<SclError> for AppError {
    fn from(e: SclError) -> Self {
        match e {
            SclError::Input(inner) => AppError::Input(inner.to_string()),
            SclError::Internal(inner) => AppError::Internal(inner.to_string()),
        }
    }
}

impl From<scl_core::InternalError> for AppError {
    fn from(e: scl_core::InternalError) -> Self {
        AppError::Internal(e.to_string())
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e)
    }
}

fn run(command: Command) -> Result<(), AppError> {
    match command {
        Command::Scl { chain, solver } => {
            let (_, parsed) = chain.parse_chain()?;
            let options = solver.options();
            let result = scl_of_chain(parsed, &options)?;
            if solver.verbose {
                let (rows, cols, nnz) = result.lp_dims;
                eprintln!("chain: {}", result.chain);
                eprintln!("lp: {rows} rows, {cols} cols, {nnz} nonzeros");
                eprintln!("pivots: {}", result.pivots);
            }
            println!("{}", result.value);
            Ok(())
        }
        Command::Surface {
            chain,
            solver,
            surface,
            dot,
        } => {
            let (_, parsed) = chain.parse_chain()?;
            let options = solver.options();
            let result = scl_of_chain(parsed, &options)?;
            let complex = match &result.lp {
                Some(lp) => assemble(&result.chain, lp, &result.vertex)?,
                None => SurfaceComplex::empty(),
            };
            if solver.verbose {
                eprintln!(
                    "surface: {} pieces, {} gluings, chi = {}, k = {}, {} boundary cycles",
                    complex.instances.len(),
                    complex.gluings.len(),
                    complex.euler,
                    complex.scale,
                    complex.boundary.len()
                );
            }
            if let Some(path) = surface {
                let doc = export_json(&result.chain, &complex);
                fs::write(path, serde_json::to_string_pretty(&doc).unwrap())?;
            }
            if let Some(path) = dot {
                fs::write(path, export_dot(&result.chain, &complex))?;
            }
            println!("{}", result.value);
            Ok(())
        }
        Command::Sweep {
            chain,
            solver,
            ranges,
            csv,
        } => {
            let group =
                GroupSpec::parse(&chain.group).map_err(|e| AppError::Input(e.to_string()))?;
            let words: Vec<String> = match &chain.chain {
                Some(joined) => joined.split('+').map(|w| w.trim().to_string()).collect(),
                None => chain.words.clone(),
            };
            if words.is_empty() {
                return Err(AppError::Input("no words given".into()));
            }
            let orders = parse_ranges(&ranges, group.len())?;
            let spec = SweepSpec {
                symbols: group.factors().iter().map(|f| f.symbol).collect(),
                orders,
                words,
            };
            let rows = sweep(&spec, &solver.options());
            write_csv_out(csv, |mut out| write_sweep_csv(&spec, &rows, &mut out))?;
            Ok(())
        }
        Command::Histogram {
            group,
            length,
            count,
            seed,
            bin_width,
            csv,
            solver,
        } => {
            let group = GroupSpec::parse(&group).map_err(|e| AppError::Input(e.to_string()))?;
            let width = parse_rational(&bin_width)?;
            if !width.is_positive() {
                return Err(AppError::Input("bin width must be positive".into()));
            }
            let spec = RandomChainSpec {
                group,
                word_len: length,
                count,
                seed,
            };
            let options = solver.options();
            let mut values = Vec::with_capacity(count);
            for c in random_chains(&spec) {
                values.push(scl_of_chain(c, &options)?.value);
            }
            let rows = histogram(&values, &width);
            write_csv_out(csv, |mut out| write_histogram_csv(&rows, &mut out))?;
            Ok(())
        }
        Command::Check { chain, solver } => {
            // The finite-approximation bound compares against the free cover,
            // so it needs the words as written, not the normalized quotient
            // form.
            let words: Vec<String> = match &chain.chain {
                Some(joined) => joined.split('+').map(|w| w.trim().to_string()).collect(),
                None => chain.words.clone(),
            };
            let (group, parsed) = chain.parse_chain()?;
            let options = solver.options();
            let result = scl_of_chain(parsed, &options)?;
            println!("scl = {}", result.value);

            let mut all_ok = true;
            match (&result.lp, &result.solution) {
                (Some(lp), Some(sol)) => {
                    let certified = certify(lp, sol);
                    println!("certificate: {}", pass_str(certified));
                    all_ok &= certified;
                    let complex = assemble(&result.chain, lp, &result.vertex)?;
                    let report = verify_extremal(&result.chain, &complex, &result.value);
                    println!(
                        "extremal surface: {} (-chi/2k = {}, k = {})",
                        pass_str(report.pass()),
                        report.surface_value,
                        complex.scale
                    );
                    all_ok &= report.pass();
                }
                _ => println!("empty chain: scl = 0, nothing to assemble"),
            }

            match check_finite_approx(&group, &words, &options) {
                Ok(report) => {
                    println!(
                        "finite approximation: {} ({} <= {} <= {})",
                        pass_str(report.pass()),
                        report.scl_quotient,
                        report.scl_free,
                        report.bound
                    );
                    if report.tight {
                        println!("finite approximation bound is tight");
                    }
                    all_ok &= report.pass();
                }
                Err(SclError::Input(e)) => {
                    println!("finite approximation: skipped ({e})");
                }
                Err(e) => return Err(e.into()),
            }
            if all_ok {
                Ok(())
            } else {
                Err(AppError::Internal("a check failed".into()))
            }
        }
    }
}

fn pass_str(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

/// "2:6,0" -> [[2,3,4,5,6],[0]]
fn parse_ranges(text: &str, factors: usize) -> Result<Vec<Vec<u32>>, AppError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != factors {
        return Err(AppError::Input(format!(
            "--ranges needs {factors} comma-separated entries, got {}",
            parts.len()
        )));
    }
    let mut orders = Vec::with_capacity(parts.len());
    for part in parts {
        let part = part.trim();
        let range: Vec<u32> = if let Some((lo, hi)) = part.split_once(':') {
            let lo: u32 = lo
                .parse()
                .map_err(|_| AppError::Input(format!("bad range bound '{lo}'")))?;
            let hi: u32 = hi
                .parse()
                .map_err(|_| AppError::Input(format!("bad range bound '{hi}'")))?;
            if lo > hi {
                return Err(AppError::Input(format!("empty range '{part}'")));
            }
            (lo..=hi).collect()
        } else {
            vec![part
                .parse()
                .map_err(|_| AppError::Input(format!("bad order '{part}'")))?]
        };
        orders.push(range);
    }
    Ok(orders)
}

fn parse_rational(text: &str) -> Result<Rational, AppError> {
    let parse_int = |s: &str| {
        s.trim()
            .parse::<scl_core::Integer>()
            .map_err(|_| AppError::Input(format!("bad rational '{text}'")))
    };
    match text.split_once('/') {
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den == 0.into() {
                return Err(AppError::Input("zero denominator".into()));
            }
            Ok(Rational::new(parse_int(num)?, den))
        }
        None => Ok(Rational::from_integer(parse_int(text)?)),
    }
}

fn write_csv_out<F>(path: Option<PathBuf>, write: F) -> Result<(), AppError>
where
    F: FnOnce(&mut dyn std::io::Write) -> std::io::Result<()>,
{
    match path {
        Some(p) => {
            let mut file = fs::File::create(p)?;
            write(&mut file)?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)?;
        }
    }
    Ok(())
}
