use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use turankit::bounds::{partite_lower_bound, sandwich_table, upper_bound, BoundReport};
use turankit::certificate::{self, OReading, Verdict};
use turankit::combinatorics::{format_rational, parse_rational, to_f64};
use turankit::tridiagonal::{positivity_threshold, TridiagonalSystem};
use turankit::{ClassFilter, EpsilonMode, Exec};

mod cache;
mod render;
mod verify;

use render::{emit, Format};

/// Exact generalized hypergraph Turán bounds and certificate checks.
#[derive(Debug, Parser)]
#[command(name = "turankit", version)]
struct Cli {
    /// Output format; `table` defaults to csv, everything else to json.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Directory for HGR1 class lists (default: $TURANKIT_CACHE or ./.hgr-cache).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Run single-threaded.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Finite-n upper bound on the K_g density of K_r-free k-graphs.
    Bound {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "paper-literal")]
        mode: EpsilonMode,
    },
    /// Bounds for every g in k..r-1, one row each.
    Table {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "paper-literal")]
        mode: EpsilonMode,
    },
    /// Balanced partite lower-bound construction.
    Lower {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        r: u32,
    },
    /// Enumerate isomorphism classes and store them in the cache.
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// `none` or `no-empty-<m>`.
        #[arg(long, default_value = "none")]
        filter: ClassFilter,
    },
    /// Check the 3/8 certificate over the 6-vertex class list.
    Certificate {
        /// Type the O flags are averaged over: p4 or t4.
        #[arg(long, default_value = "p4")]
        o_type: OReading,
        /// Include every per-graph slack and square value.
        #[arg(long)]
        details: bool,
    },
    /// Run a relation suite and report counterexamples.
    Verify {
        #[arg(long, value_enum)]
        suite: verify::Suite,
        /// Random 6-vertex hosts for the claims suite.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Solve (D - eps I) delta = e_g and print the recurrence tables.
    Solve {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        g: u32,
        #[arg(long, default_value = "0", value_parser = parse_rational)]
        eps: turankit::Rational,
    },
}

/// A mathematical statement checked by the run turned out false.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct Refuted(String);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match dispatch(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<Refuted>().is_some() {
        return 1;
    }
    match e.downcast_ref::<turankit::Error>() {
        Some(turankit::Error::Singular { .. }) => 1,
        _ => 2,
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let format = cli.format.unwrap_or(match cli.command {
        Command::Table { .. } => Format::Csv,
        _ => Format::Json,
    });
    if format == Format::Csv && !matches!(cli.command, Command::Table { .. }) {
        bail!(turankit::Error::InvalidParameters("csv output is only available for `table`".into()));
    }
    let cache_dir = cache::resolve_dir(cli.cache_dir);

    match cli.command {
        Command::Bound { k, g, r, n, mode } => emit(out, format, &upper_bound(k, g, r, n, mode)?),
        Command::Table { k, r, n, mode } => table(out, format, k, r, n, mode),
        Command::Lower { k, g, r } => lower(out, format, k, g, r),
        Command::Enumerate { k, n, filter } => {
            let path = cache::path_for(&cache_dir, n, k, filter);
            let catalog = turankit::Catalog::with_exec(exec, n, k, filter)?;
            cache::write(&path, &catalog)?;
            emit(
                out,
                format,
                &json!({
                    "k": k,
                    "n": n,
                    "filter": filter.tag(),
                    "count": catalog.len(),
                    "path": path.display().to_string(),
                }),
            )
        }
        Command::Certificate { o_type, details } => {
            let (catalog, _, _) = cache::load_or_build(
                exec,
                &cache_dir,
                certificate::HOST_SIZE,
                certificate::K,
                ClassFilter::NoEmptySet(certificate::FORBIDDEN_EMPTY),
            )?;
            let report = certificate::verify_certificate_reading(exec, o_type, &catalog)?;
            let verdict = report.verdict;
            let min = format_rational(&report.min_slack);
            let report = if details { report } else { report.without_graphs() };
            emit(out, format, &report)?;
            if verdict == Verdict::Fail {
                return Err(Refuted(format!("certificate fails: minimum slack {min}")).into());
            }
            Ok(())
        }
        Command::Verify { suite, samples, seed } => {
            let report = verify::run(suite, samples, seed)?;
            emit(out, format, &report)?;
            if !report.passed {
                return Err(Refuted(format!("{} failures in suite {}", report.failures.len(), report.suite)).into());
            }
            Ok(())
        }
        Command::Solve { k, r, g, eps } => solve(out, format, k, r, g, eps),
    }
}

fn table(out: &mut dyn Write, format: Format, k: u32, r: u32, n: u64, mode: EpsilonMode) -> Result<()> {
    if k < 2 || r <= k {
        bail!(turankit::Error::InvalidParameters(format!("need 2 <= k < r, got k = {k}, r = {r}")));
    }
    let rows: Vec<BoundReport> = (k..r).map(|g| upper_bound(k, g, r, n, mode)).collect::<Result<_, _>>()?;
    if format != Format::Csv {
        return emit(out, format, &rows);
    }
    let opt = |v: &Option<turankit::Rational>| v.as_ref().map(format_rational).unwrap_or_default();
    let approx = |v: &turankit::Rational| format!("{:.9}", to_f64(v));
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record([
        "k", "g", "r", "n", "mode", "finite_bound", "finite_bound_approx", "solved_bound", "asymptotic",
        "asymptotic_approx", "de_caen", "lower_bound",
    ])?;
    for row in &rows {
        csv.write_record([
            row.k.to_string(),
            row.g.to_string(),
            row.r.to_string(),
            row.n.to_string(),
            row.mode.to_string(),
            format_rational(&row.finite_bound),
            approx(&row.finite_bound),
            format_rational(&row.solved_bound),
            format_rational(&row.asymptotic),
            approx(&row.asymptotic),
            opt(&row.de_caen),
            opt(&row.lower_bound),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct LowerReport {
    k: u32,
    g: u32,
    r: u32,
    partite: turankit::bounds::PartiteLowerBound,
    sandwich: Option<turankit::bounds::SandwichTable>,
}

fn lower(out: &mut dyn Write, format: Format, k: u32, g: u32, r: u32) -> Result<()> {
    if k < 2 || g < k || r <= g {
        bail!(turankit::Error::InvalidParameters(format!(
            "need 2 <= k <= g < r, got k = {k}, g = {g}, r = {r}"
        )));
    }
    // the largest part count that keeps the construction K_r-free
    let l = (r - 1) / (k - 1);
    let sandwich = (r - 1).is_multiple_of(k - 1).then(|| sandwich_table(k, r)).transpose()?;
    let report = LowerReport {
        k,
        g,
        r,
        partite: partite_lower_bound(k, g, l)?,
        sandwich,
    };
    emit(out, format, &report)
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SolveReport {
    k: u32,
    r: u32,
    g: u32,
    #[serde(with = "turankit::combinatorics::serde_rational")]
    epsilon: turankit::Rational,
    #[serde(with = "turankit::combinatorics::serde_rational")]
    positivity_threshold: turankit::Rational,
    #[serde(with = "turankit::combinatorics::serde_rational::vec")]
    delta: Vec<turankit::Rational>,
    all_positive: bool,
    recurrences: turankit::tridiagonal::RecurrenceTables,
}

fn solve(out: &mut dyn Write, format: Format, k: u32, r: u32, g: u32, eps: turankit::Rational) -> Result<()> {
    if k < 2 || g < k || r <= g {
        bail!(turankit::Error::InvalidParameters(format!(
            "need 2 <= k <= g < r, got k = {k}, g = {g}, r = {r}"
        )));
    }
    let sys = TridiagonalSystem::new(k, r)?;
    let delta = sys.solve_column(&eps, g)?;
    let report = SolveReport {
        k,
        r,
        g,
        positivity_threshold: positivity_threshold(k, r),
        all_positive: delta.iter().all(|d| *d > num_traits::Zero::zero()),
        recurrences: sys.recurrences(&eps),
        delta,
        epsilon: eps,
    };
    emit(out, format, &report)
}
