//! Command-line front end. [`run`] takes the arguments and output streams so
//! it can be driven from tests; the `partrank` binary is a thin wrapper.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a verification or
//! certification failure, 3 a cap was exceeded or a search was inconclusive.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::certify::{certify_lower_bound, certify_minimality, Certificate};
use crate::closure::{minimal_genset_search, verify_generation, SearchBudget, SearchOutcome};
use crate::error::Error;
use crate::generators::full_generating_set_seeded;
use crate::invariant::j_invariant;
use crate::partition::Partition;
use crate::rank::{rank_total, SpecialCase};
use crate::tables::comparison_table;
use crate::transformation::Transformation;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "partrank", version, about = "Rank and generating sets of monoids of partition-preserving maps")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Element cap for closures (verify) or largest |T| searched (search).
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Seed for the randomized fallback in the unit generator construction.
    #[arg(long, global = true, default_value_t = crate::generators::DEFAULT_SEED)]
    seed: u64,
    /// Print nothing on success; the exit code carries the result.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank of T(X,P) and of its three layers.
    Rank { partition: Partition },
    /// Orders of T(X,P), Sigma(X,P) and S(X,P).
    Size { partition: Partition },
    /// A generating set of minimum size.
    Gens { partition: Partition },
    /// Checks by enumeration that a set generates T(X,P).
    Verify {
        partition: Partition,
        /// File with one transformation per line; defaults to the built-in set.
        file: Option<PathBuf>,
    },
    /// Checks the necessary conditions on a generating set.
    Certify {
        partition: Partition,
        /// File with one transformation per line; defaults to the built-in
        /// set, which is also certified minimal.
        file: Option<PathBuf>,
    },
    /// Exhaustive search for the rank of a small T(X,P).
    Search {
        partition: Partition,
        /// Largest number of closures computed before giving up.
        #[arg(long, default_value_t = SearchBudget::default().max_closures)]
        max_closures: u64,
    },
    /// Computed values next to the published rank and size tables.
    Table {
        #[arg(value_parser = clap::value_parser!(u64).range(3..=12))]
        max_degree: u64,
    },
    /// Double-coset invariant of a transformation.
    Jinv { partition: Partition, transformation: Transformation },
}

/// Result of one command: what to print and the exit code.
struct Report {
    json: serde_json::Value,
    text: Vec<String>,
    code: i32,
}

impl Report {
    fn ok(json: impl Serialize, text: Vec<String>) -> Self {
        Report { json: serde_json::to_value(json).expect("serializable"), text, code: EXIT_OK }
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{rendered}");
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            if !cli.quiet {
                if cli.json {
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report.json).expect("valid json"));
                } else {
                    for line in &report.text {
                        let _ = writeln!(out, "{line}");
                    }
                }
            }
            report.code
        }
        Err(e) => {
            let code = match e {
                Error::OverCap { .. } => EXIT_INCONCLUSIVE,
                _ => EXIT_USAGE,
            };
            if cli.json && !cli.quiet {
                let _ = writeln!(out, "{}", json!({ "error": e.to_string(), "exit_code": code }));
            }
            let _ = writeln!(err, "error: {e}");
            code
        }
    }
}

fn execute(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Rank { partition } => Ok(rank_report(partition)),
        Command::Size { partition } => Ok(size_report(partition)),
        Command::Gens { partition } => {
            let set = full_generating_set_seeded(partition, cli.seed)?;
            let mut text = vec![format!("# {} generators of T({partition})", set.len())];
            text.extend(set.to_lines());
            Ok(Report::ok(&set, text))
        }
        Command::Verify { partition, file } => {
            let gens = load_or_build(partition, file.as_deref(), cli.seed)?;
            let report = verify_generation(partition, &gens, cli.cap)?;
            let verdict = if report.generates() { "PASS" } else { "FAIL" };
            let text = vec![
                format!("partition     {partition}"),
                format!("generators    {}", report.generator_count),
                format!("closure order {}", report.closure_order),
                format!("oracle order  {}", report.oracle_order),
                format!("wall time     {:.3}s", report.elapsed.as_secs_f64()),
                verdict.to_string(),
            ];
            let mut value = serde_json::to_value(&report).expect("serializable");
            value["verdict"] = json!(verdict);
            let code = if report.generates() { EXIT_OK } else { EXIT_FAILED };
            Ok(Report { json: value, text, code })
        }
        Command::Certify { partition, file } => {
            let cert = match file {
                Some(path) => certify_lower_bound(partition, &read_transformations(path)?)?,
                None if SpecialCase::of(partition).is_some() => {
                    certify_lower_bound(partition, &full_generating_set_seeded(partition, cli.seed)?.elements)?
                }
                None => certify_minimality(partition)?,
            };
            Ok(certificate_report(&cert))
        }
        Command::Search { partition, max_closures } => {
            let mut budget = SearchBudget { max_closures: *max_closures, ..SearchBudget::default() };
            if let Some(cap) = cli.cap {
                budget.max_order = cap;
            }
            let outcome = minimal_genset_search(partition, &budget)?;
            let (text, code) = match &outcome {
                SearchOutcome::Exact { rank, witness, closures, certificate_skips } => {
                    let mut text = vec![
                        format!("partition {partition}"),
                        format!("rank      {rank}"),
                        format!("closures  {closures} ({certificate_skips} candidates skipped by certificate)"),
                        "witness:".to_string(),
                    ];
                    text.extend(witness.iter().map(|t| format!("  {t}")));
                    (text, EXIT_OK)
                }
                SearchOutcome::Inconclusive { reason, lower_bound, closures } => (
                    vec![format!("INCONCLUSIVE: {reason}; no set smaller than {lower_bound}; {closures} closures")],
                    EXIT_INCONCLUSIVE,
                ),
            };
            Ok(Report { json: serde_json::to_value(&outcome).expect("serializable"), text, code })
        }
        Command::Table { max_degree } => {
            let rows = comparison_table(*max_degree as usize);
            let mut text = vec![format!(
                "{:<14} {:>4} {:>4} {:<9} {:>16} {:>10} {:<9}",
                "partition", "rank", "ref", "", "|T|", "ref", ""
            )];
            for r in &rows {
                let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
                let mut line = format!(
                    "{:<14} {:>4} {:>4} {:<9} {:>16} {:>10} {:<9}",
                    r.partition.to_string(),
                    r.rank,
                    opt(r.reference_rank.map(|v| v.to_string())),
                    r.rank_check.marker(),
                    r.order_t.to_string(),
                    opt(r.reference_order_t.map(|v| v.to_string())),
                    r.order_check.marker(),
                );
                if r.special_case {
                    line.push_str(" (|S| <= 2)");
                }
                text.push(line.trim_end().to_string());
            }
            Ok(Report::ok(&rows, text))
        }
        Command::Jinv { partition, transformation } => {
            let inv = j_invariant(partition, transformation)?;
            let mut text = Vec::new();
            for (&(a, b), kernels) in inv.entries() {
                text.push(format!("J({a},{b}) = {kernels:?}"));
            }
            if text.is_empty() {
                text.push("no block-to-block pairs".into());
            }
            Ok(Report::ok(json!({ "partition": partition, "transformation": transformation, "invariant": inv }), text))
        }
    }
}

fn rank_report(partition: &Partition) -> Report {
    let b = rank_total(partition);
    let prm = b.params;
    let mut text = vec![
        format!("partition        {partition}"),
        format!("rank S(X,P)      {}", b.rank_units),
        format!("rank(T : Sigma)  {}", b.relrank_t_over_sigma),
        format!("rank(Sigma : S)  {}", b.relrank_sigma_over_s),
        format!("total            {}", b.total),
        format!(
            "parameters       p={} q={} t={} s={} r={} l={} g={} g'={} h={}",
            prm.p, prm.q, prm.t, prm.s, prm.r_rep, prm.l, prm.g, prm.g_prime, prm.h
        ),
    ];
    if b.special_case.is_some() {
        text.push("note             |S(X,P)| <= 2; the total is tabulated".into());
    }
    Report::ok(&b, text)
}

fn size_report(partition: &Partition) -> Report {
    let (t, sigma, s) = (partition.order_t(), partition.order_sigma(), partition.order_s());
    let text = vec![
        format!("partition  {partition}"),
        format!("|T(X,P)|   {t}"),
        format!("|Sigma|    {sigma}"),
        format!("|S(X,P)|   {s}"),
    ];
    Report::ok(
        json!({
            "partition": partition,
            "order_t": t.to_string(),
            "order_sigma": sigma.to_string(),
            "order_s": s.to_string(),
        }),
        text,
    )
}

fn certificate_report(cert: &Certificate) -> Report {
    let verdict = if cert.passed() { "PASS" } else { "FAIL" };
    let mut text = vec![
        format!("partition {}  ({} elements, parity rank {}/{})", cert.partition, cert.set_size, cert.parity_rank, cert.parity_dimension),
    ];
    text.extend(cert.table());
    text.extend(cert.problems.iter().map(|p| format!("problem: {p}")));
    text.push(verdict.to_string());
    Report {
        json: serde_json::to_value(cert).expect("serializable"),
        text,
        code: if cert.passed() { EXIT_OK } else { EXIT_FAILED },
    }
}

fn load_or_build(partition: &Partition, file: Option<&Path>, seed: u64) -> Result<Vec<Transformation>, Error> {
    match file {
        Some(path) => read_transformations(path),
        None => Ok(full_generating_set_seeded(partition, seed)?.elements),
    }
}

/// One transformation per line. Blank lines and `#` comments are skipped,
/// and a `tag:` prefix (as printed by `gens`) is ignored.
pub fn parse_transformations(content: &str) -> Result<Vec<Transformation>, Error> {
    content
        .lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|line| !line.is_empty())
        .map(|line| line.rsplit(':').next().unwrap_or(line).trim().parse())
        .collect()
}

fn read_transformations(path: &Path) -> Result<Vec<Transformation>, Error> {
    let content = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    parse_transformations(&content)
}
