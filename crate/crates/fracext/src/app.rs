//! Command-line front end. Every invocation ends with exit code 0, 1 or 2
//! and prints one JSON document on stdout.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use fracext_core::classification::{family_census, Parity, ScanConfig, ScanMode, ScanReport};
use fracext_core::extendability::{check, ExtConfig, ExtendabilityReport, GraphSummary, Mode, Symmetry};
use fracext_core::graph::{Graph, IsoConfig};
use fracext_core::groups::DedupOptions;
use fracext_core::matching::{
    fpm_no_witness, fpm_yes_witness, has_fpm, nu_fractional, perfect_matching_without, tutte_barrier,
    DeficiencyWitness, FpmCertificate, Halves, MatchingSpec, TutteBarrier,
};
use serde::{Deserialize, Serialize};

use crate::driver::{
    available_workers, dedup_cross_check, elapsed_ms, explore, run_scan, spot_check, worker_count, CrossCheck,
    ExploreConfig, Question, SpotConfig, SpotReport,
};
use crate::error::CliError;
use crate::io::{to_dot, to_edge_list, to_json, write_text};
use crate::source::{GraphSource, SourceArgs};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fracext", version, about = "Fractional matching extendability of graphs and Abelian Cayley graphs")]
pub struct Cli {
    /// Worker threads; overrides FRACEXT_THREADS
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for randomized corpora
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Also write the JSON report (or the exported graph) to this file
    #[arg(long, short, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// Fractional perfect matching
    Fpm,
    /// Perfect matching
    Pm,
    /// Fractional t-extendability (classical with --classical)
    Ext,
    /// t½-extendability of an odd-order graph
    Near,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ExportFormat {
    Dot,
    Json,
    Edgelist,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    F1e,
    F2e,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    All,
    Odd,
    Even,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide a matching property, with a certificate either way
    Check {
        property: Property,
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Classical instead of fractional extendability (with `ext`)
        #[arg(long)]
        classical: bool,
        /// Enumerate every matching even for Cayley graphs
        #[arg(long)]
        no_symmetry: bool,
    },
    /// Scan Abelian Cayley graphs and compare with the classification
    Verify {
        mode: ModeArg,
        /// Inclusive order range `a..b`
        #[arg(long, value_parser = parse_range)]
        orders: (u32, u32),
        #[arg(long, value_enum, default_value_t = ParityArg::All)]
        parity: ParityArg,
        /// Only connection sets with at most this many elements
        #[arg(long)]
        degree_cap: Option<usize>,
        /// Enumerate every connection set instead of one per automorphism orbit
        #[arg(long)]
        no_dedup: bool,
        /// Rerun without dedup up to this order and compare
        #[arg(long, value_name = "ORDER")]
        cross_check: Option<u32>,
        /// Also check that t½-extendability implies the fractional notion
        #[arg(long)]
        probe: bool,
        /// Spot-check family members and random sets at these orders (f2e)
        #[arg(long, value_delimiter = ',', value_name = "N,..")]
        spot: Vec<u32>,
        /// Random sets per spot order
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Family members per order and the isomorphic pairs among them
    Census {
        #[arg(long, value_parser = parse_range)]
        orders: (u32, u32),
    },
    /// Write a graph as DOT, JSON or an edge list
    Export {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_enum)]
        format: ExportFormat,
    },
    /// Search for graphs bearing on the open questions
    Explore {
        question: Question,
        #[arg(long, value_parser = parse_range)]
        orders: (u32, u32),
        #[arg(long, default_value_t = 2)]
        t_max: usize,
        #[arg(long)]
        degree_cap: Option<usize>,
        #[arg(long)]
        no_dedup: bool,
    },
}

/// `a..b` or `a..=b`, both inclusive; a single number is a one-order range.
pub fn parse_range(text: &str) -> Result<(u32, u32), String> {
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (text, text),
    };
    let parse = |s: &str| s.trim().parse::<u32>().map_err(|_| format!("'{s}' is not an order"));
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

/// Everything needed to reproduce a run; embedded in every report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<GraphSource>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orders: Option<[u32; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<usize>,
    pub workers: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    pub seed: u64,
}

/// One JSON document per run.
#[derive(Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub run: RunConfig,
    pub exit_code: i32,
    pub result: T,
    /// Wall time; the only field allowed to differ between identical runs.
    pub elapsed_ms: f64,
}

#[derive(Debug, Serialize)]
struct ErrorEnvelope {
    #[serde(skip_serializing_if = "Option::is_none")]
    run: Option<RunConfig>,
    exit_code: i32,
    error: crate::error::ErrorReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FpmResult {
    pub graph: GraphSummary,
    pub holds: bool,
    pub nu_f: Halves,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<FpmCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<DeficiencyWitness>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PmResult {
    pub graph: GraphSummary,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matching: Option<MatchingSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub barrier: Option<TutteBarrier>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyResult {
    pub scan: ScanReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spot: Option<SpotReport>,
    pub verified: bool,
}

/// What the binary prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    /// Human-readable extras such as the scan summary table.
    pub stderr: String,
}

/// Runs parsed arguments to completion.
pub fn run(cli: Cli) -> Outcome {
    let start = Instant::now();
    let mut run_config = None;
    match execute(&cli, start, &mut run_config) {
        Ok(outcome) => outcome,
        Err(err) => error_outcome(run_config, &err),
    }
}

/// Parses `args` (program name first) and runs them. Help and version
/// requests exit 0 with plain text; every other parse failure is a usage
/// error reported as JSON.
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => match e.kind() {
            clap::error::ErrorKind::DisplayHelp
            | clap::error::ErrorKind::DisplayVersion
            | clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => Outcome {
                code: if e.use_stderr() { EXIT_USAGE } else { EXIT_HOLDS },
                stdout: e.to_string(),
                stderr: String::new(),
            },
            _ => error_outcome(None, &CliError::Usage(e.kind().to_string() + ": " + &first_line(&e.to_string()))),
        },
    }
}

fn first_line(text: &str) -> String {
    text.lines()
        .find(|l| !l.trim().is_empty())
        .unwrap_or("")
        .trim_start_matches("error: ")
        .to_string()
}

fn error_outcome(run: Option<RunConfig>, err: &CliError) -> Outcome {
    let envelope = ErrorEnvelope {
        run,
        exit_code: EXIT_USAGE,
        error: err.report(),
    };
    Outcome {
        code: EXIT_USAGE,
        stdout: json_line(&envelope),
        stderr: format!("error: {err}\n"),
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports always serialize");
    text.push('\n');
    text
}

fn finish<T: Serialize>(run: RunConfig, code: i32, result: T, start: Instant, stderr: String) -> Result<Outcome, CliError> {
    let envelope = Envelope {
        run,
        exit_code: code,
        result,
        elapsed_ms: elapsed_ms(start),
    };
    let stdout = json_line(&envelope);
    if let Some(path) = &envelope.run.output {
        write_text(path, &stdout)?;
    }
    Ok(Outcome { code, stdout, stderr })
}

fn verdict_code(holds: bool) -> i32 {
    if holds {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    }
}

fn execute(cli: &Cli, start: Instant, run_config: &mut Option<RunConfig>) -> Result<Outcome, CliError> {
    let base = |command: &str, workers: usize| RunConfig {
        command: command.to_string(),
        source: None,
        t: None,
        mode: None,
        orders: None,
        degree_cap: None,
        workers,
        output: cli.output.clone(),
        seed: cli.seed,
    };
    match &cli.command {
        Command::Check {
            property,
            source,
            t,
            classical,
            no_symmetry,
        } => {
            let workers = worker_count(cli.threads, 1)?;
            let src = source.source()?;
            let mut rc = base("check", workers);
            rc.source = Some(src.clone());
            rc.mode = Some(property_name(*property, *classical).to_string());
            if matches!(property, Property::Ext | Property::Near) {
                rc.t = Some(*t);
            }
            *run_config = Some(rc.clone());
            let g = src.load()?;
            match property {
                Property::Fpm => {
                    let result = check_fpm(&g)?;
                    let code = verdict_code(result.holds);
                    finish(rc, code, result, start, String::new())
                }
                Property::Pm => {
                    let result = check_pm(&g);
                    let code = verdict_code(result.holds);
                    finish(rc, code, result, start, String::new())
                }
                Property::Ext | Property::Near => {
                    let mode = match (property, classical) {
                        (Property::Near, _) => Mode::NearHalf,
                        (_, true) => Mode::Classical,
                        _ => Mode::Fractional,
                    };
                    let mut ext = ExtConfig::for_graph(&g);
                    if *no_symmetry {
                        ext.symmetry = Symmetry::None;
                    }
                    let report = timed_check(&g, *t, mode, &ext)?;
                    let code = verdict_code(report.verdict);
                    finish(rc, code, report, start, String::new())
                }
            }
        }
        Command::Verify {
            mode,
            orders,
            parity,
            degree_cap,
            no_dedup,
            cross_check,
            probe,
            spot,
            samples,
        } => {
            let workers = worker_count(cli.threads, available_workers())?;
            let scan_mode = match mode {
                ModeArg::F1e => ScanMode::F1e,
                ModeArg::F2e => ScanMode::F2e,
            };
            let mut rc = base("verify", workers);
            rc.mode = Some(format!("{mode:?}").to_lowercase());
            rc.t = Some(scan_mode.t());
            rc.orders = Some([orders.0, orders.1]);
            rc.degree_cap = *degree_cap;
            *run_config = Some(rc.clone());
            if !spot.is_empty() && scan_mode != ScanMode::F2e {
                return Err(CliError::Usage("--spot applies to f2e only".into()));
            }
            let mut config = ScanConfig::new(scan_mode, orders.0, orders.1);
            config.parity = match parity {
                ParityArg::All => Parity::All,
                ParityArg::Odd => Parity::Odd,
                ParityArg::Even => Parity::Even,
            };
            config.degree_cap = *degree_cap;
            config.probe_near = *probe;
            if *no_dedup {
                config.dedup = DedupOptions::disabled();
            }
            let scan = run_scan(&config, workers)?;
            let cross = match cross_check {
                Some(hi) if config.dedup.enabled => dedup_cross_check(&config, &scan, *hi, workers)?,
                Some(_) => return Err(CliError::Usage("--cross-check needs dedup enabled".into())),
                None => None,
            };
            let spot = if spot.is_empty() {
                None
            } else {
                let spot_config = SpotConfig {
                    orders: spot.clone(),
                    samples: *samples,
                    seed: cli.seed,
                    max_pairs: 4,
                };
                Some(spot_check(&spot_config, &IsoConfig::default(), workers)?)
            };
            let verified = scan.verified
                && cross.as_ref().is_none_or(|c| c.agrees && c.plain_verified)
                && spot.as_ref().is_none_or(|s| s.verified);
            let table = summary_table(&scan);
            let result = VerifyResult {
                scan,
                cross_check: cross,
                spot,
                verified,
            };
            finish(rc, verdict_code(verified), result, start, table)
        }
        Command::Census { orders } => {
            let workers = worker_count(cli.threads, available_workers())?;
            let mut rc = base("census", workers);
            rc.orders = Some([orders.0, orders.1]);
            *run_config = Some(rc.clone());
            if orders.1 > 64 {
                return Err(CliError::Usage(format!("census orders are capped at 64, got {}", orders.1)));
            }
            let rows = family_census(orders.0..=orders.1, &IsoConfig::default())?;
            finish(rc, EXIT_HOLDS, rows, start, String::new())
        }
        Command::Export { source, format } => {
            let src = source.source()?;
            let mut rc = base("export", 1);
            rc.source = Some(src.clone());
            rc.mode = Some(format!("{format:?}").to_lowercase());
            *run_config = Some(rc.clone());
            let g = src.load()?;
            let text = match format {
                ExportFormat::Dot => to_dot(&g),
                ExportFormat::Json => to_json(&g),
                ExportFormat::Edgelist => to_edge_list(&g),
            };
            if let Some(path) = &cli.output {
                write_text(path, &text)?;
            }
            Ok(Outcome {
                code: EXIT_HOLDS,
                stdout: text,
                stderr: String::new(),
            })
        }
        Command::Explore {
            question,
            orders,
            t_max,
            degree_cap,
            no_dedup,
        } => {
            let workers = worker_count(cli.threads, available_workers())?;
            let mut rc = base("explore", workers);
            rc.mode = Some(format!("{question:?}").to_lowercase());
            rc.t = Some(*t_max);
            rc.orders = Some([orders.0, orders.1]);
            rc.degree_cap = *degree_cap;
            *run_config = Some(rc.clone());
            let config = ExploreConfig {
                question: *question,
                min_order: orders.0,
                max_order: orders.1,
                t_max: *t_max,
                degree_cap: *degree_cap,
                dedup: !no_dedup,
            };
            let report = explore(&config, workers)?;
            finish(rc, EXIT_HOLDS, report, start, String::new())
        }
    }
}

fn property_name(p: Property, classical: bool) -> &'static str {
    match (p, classical) {
        (Property::Fpm, _) => "fpm",
        (Property::Pm, _) => "pm",
        (Property::Ext, false) => "fractional",
        (Property::Ext, true) => "classical",
        (Property::Near, _) => "near_half",
    }
}

pub fn check_fpm(g: &Graph) -> Result<FpmResult, CliError> {
    let holds = has_fpm(g);
    let (certificate, witness) = if holds {
        (Some(fpm_yes_witness(g, &MatchingSpec::default())?), None)
    } else {
        (None, Some(fpm_no_witness(g, 0)?))
    };
    Ok(FpmResult {
        graph: GraphSummary::of(g),
        holds,
        nu_f: nu_fractional(g),
        certificate,
        witness,
    })
}

pub fn check_pm(g: &Graph) -> PmResult {
    let matching = perfect_matching_without(g, 0);
    let barrier = if matching.is_none() { tutte_barrier(g) } else { None };
    PmResult {
        graph: GraphSummary::of(g),
        holds: matching.is_some(),
        matching,
        barrier,
    }
}

/// `check` with the wall time recorded in the report.
pub fn timed_check(g: &Graph, t: usize, mode: Mode, ext: &ExtConfig) -> Result<ExtendabilityReport, CliError> {
    let start = Instant::now();
    let mut report = check(g, t, mode, ext)?;
    report.stats.elapsed_ms = Some(elapsed_ms(start));
    Ok(report)
}

/// Orders by instances, dedup factor and discrepancies.
pub fn summary_table(report: &ScanReport) -> String {
    let mut out = format!("{:>5} {:>9} {:>9} {:>8} {:>13}\n", "order", "instances", "sets", "dedup", "discrepancies");
    for row in &report.per_order {
        out += &format!(
            "{:>5} {:>9} {:>9} {:>8.2} {:>13}\n",
            row.order, row.instances, row.sets_covered, row.dedup_factor, row.discrepancies
        );
    }
    out += &format!(
        "{:>5} {:>9} {:>9} {:>8.2} {:>13}\n",
        "all",
        report.instances,
        report.sets_covered,
        report.dedup_factor,
        report.discrepancies.len()
    );
    out
}

/// Removes every `elapsed_ms` field, leaving what must be reproducible.
pub fn strip_timing(value: &mut serde_json::Value) {
    match value {
        serde_json::Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_timing);
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}
