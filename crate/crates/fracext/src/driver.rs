//! Parallel scans. Workers evaluate independent instances; results are
//! collected in canonical instance order before aggregation, so reports do
//! not depend on the worker count.

use std::time::Instant;

use fracext_core::classification::{
    aggregate, construct_family, evaluate_instance, predict, scan_instances, ClassificationError, FamilyId,
    FamilyList, FamilyMember, ScanConfig, ScanInstance, ScanMode, ScanReport,
};
use fracext_core::extendability::{check, ExtConfig, ExtendabilityReport, Mode, Symmetry};
use fracext_core::graph::{cayley_graph, IsoConfig};
use fracext_core::groups::{enumerate_abelian_groups, AbelianGroup, ConnectionSet, DedupOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const THREADS_ENV: &str = "FRACEXT_THREADS";

pub fn available_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Worker count: the flag, else `FRACEXT_THREADS`, else `default`.
pub fn worker_count(flag: Option<usize>, default: usize) -> Result<usize, CliError> {
    let chosen = match flag {
        Some(n) => n,
        None => match std::env::var(THREADS_ENV) {
            Ok(text) => text
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{THREADS_ENV}='{text}' is not a worker count")))?,
            Err(_) => default,
        },
    };
    if chosen == 0 {
        return Err(CliError::Usage("worker count must be at least 1".into()));
    }
    Ok(chosen)
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {workers} workers: {e}")))
}

/// Parallel counterpart of `verify_theorem`, with identical output.
pub fn run_scan(config: &ScanConfig, workers: usize) -> Result<ScanReport, CliError> {
    let (instances, notes) = scan_instances(config)?;
    let outcomes = pool(workers)?.install(|| {
        instances
            .par_iter()
            .map(|inst| evaluate_instance(inst, config))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(aggregate(config, &outcomes, notes))
}

/// Per-order comparison of a deduplicated scan against a plain one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheckRow {
    pub order: u32,
    pub dedup_instances: u64,
    pub plain_instances: u64,
    /// Non-extendable connection sets, weighted by orbit size on the dedup side.
    pub dedup_non_extendable: u64,
    pub plain_non_extendable: u64,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub orders: [u32; 2],
    pub rows: Vec<CrossCheckRow>,
    pub plain_verified: bool,
    pub agrees: bool,
}

/// Reruns `config` without dedup on orders up to `max_order` and compares
/// covered sets and weighted verdict counts with `deduped`.
pub fn dedup_cross_check(
    config: &ScanConfig,
    deduped: &ScanReport,
    max_order: u32,
    workers: usize,
) -> Result<Option<CrossCheck>, CliError> {
    let hi = max_order.min(config.max_order);
    if hi < config.min_order {
        return Ok(None);
    }
    let plain_config = ScanConfig {
        max_order: hi,
        dedup: DedupOptions::disabled(),
        ..config.clone()
    };
    let plain = run_scan(&plain_config, workers)?;
    let rows: Vec<CrossCheckRow> = plain
        .per_order
        .iter()
        .filter_map(|p| {
            let d = deduped.per_order.iter().find(|d| d.order == p.order)?;
            Some(CrossCheckRow {
                order: p.order,
                dedup_instances: d.instances,
                plain_instances: p.instances,
                dedup_non_extendable: d.non_extendable_sets,
                plain_non_extendable: p.non_extendable_sets,
                agrees: d.sets_covered == p.instances && d.non_extendable_sets == p.non_extendable_sets,
            })
        })
        .collect();
    Ok(Some(CrossCheck {
        orders: [config.min_order, hi],
        agrees: rows.iter().all(|r| r.agrees),
        plain_verified: plain.verified,
        rows,
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpotConfig {
    pub orders: Vec<u32>,
    /// Random non-family connection sets per order.
    pub samples: usize,
    pub seed: u64,
    /// Random sets use between 2 and this many `±` pairs.
    pub max_pairs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemberCheck {
    pub member: FamilyMember,
    pub verdict: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleCheck {
    pub group: AbelianGroup,
    pub connection_set: ConnectionSet,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<ExtendabilityReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpotReport {
    pub config: SpotConfig,
    pub members: Vec<MemberCheck>,
    pub samples: Vec<SampleCheck>,
    /// Members found extendable plus samples found non-extendable.
    pub discrepancies: usize,
    pub verified: bool,
}

/// Fractional 2-extendability of every main-list member of the given orders
/// and of seeded random generating sets that match no member.
pub fn spot_check(config: &SpotConfig, iso: &IsoConfig, workers: usize) -> Result<SpotReport, CliError> {
    let ext = ExtConfig {
        symmetry: Symmetry::Cayley,
        ..ExtConfig::default()
    };
    let members: Vec<FamilyMember> = config
        .orders
        .iter()
        .flat_map(|&n| FamilyList::Main.ids().iter().filter_map(move |id| id.member_of_order(n)))
        .collect();
    let mut candidates = Vec::new();
    for &n in &config.orders {
        candidates.extend(random_non_family_sets(n, config, iso)?);
    }
    let pool = pool(workers)?;
    let member_checks = pool.install(|| {
        members
            .par_iter()
            .map(|&member| -> Result<MemberCheck, CliError> {
                let g = construct_family(member)?;
                let report = check(&g, 2, Mode::Fractional, &ext)?;
                Ok(MemberCheck {
                    member,
                    verdict: report.verdict,
                })
            })
            .collect::<Result<Vec<_>, _>>()
    })?;
    let samples = pool.install(|| {
        candidates
            .par_iter()
            .map(|(group, set)| -> Result<SampleCheck, CliError> {
                let g = cayley_graph(group, set)?;
                let report = check(&g, 2, Mode::Fractional, &ext)?;
                Ok(SampleCheck {
                    group: group.clone(),
                    connection_set: set.clone(),
                    verdict: report.verdict,
                    certificate: (!report.verdict).then_some(report),
                })
            })
            .collect::<Result<Vec<_>, _>>()
    })?;
    let discrepancies =
        member_checks.iter().filter(|m| m.verdict).count() + samples.iter().filter(|s| !s.verdict).count();
    Ok(SpotReport {
        config: config.clone(),
        members: member_checks,
        samples,
        discrepancies,
        verified: discrepancies == 0,
    })
}

/// Seeded draw of distinct generating connection sets of order `n` that the
/// recognizer places in no family. Deterministic in `(seed, n)`.
fn random_non_family_sets(
    n: u32,
    config: &SpotConfig,
    iso: &IsoConfig,
) -> Result<Vec<(AbelianGroup, ConnectionSet)>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ (u64::from(n) << 32));
    let groups = enumerate_abelian_groups(n);
    let mut chosen: Vec<(AbelianGroup, ConnectionSet)> = Vec::new();
    let max_pairs = config.max_pairs.max(2);
    for _ in 0..config.samples.saturating_mul(200) {
        if chosen.len() == config.samples {
            break;
        }
        let group = &groups[rng.random_range(0..groups.len())];
        let pairs = rng.random_range(2..=max_pairs);
        let elements = (0..pairs)
            .map(|_| group.element(rng.random_range(1..group.order())))
            .collect();
        let set = ConnectionSet::closure(group, elements)?;
        if !group.generates(&set) || chosen.iter().any(|(h, s)| h == group && *s == set) {
            continue;
        }
        let g = cayley_graph(group, &set)?;
        if predict(&g, FamilyList::Main, iso)?.family.is_none() {
            chosen.push((group.clone(), set));
        }
    }
    if chosen.len() < config.samples {
        return Err(CliError::Usage(format!(
            "found only {} of {} non-family sets at order {n}",
            chosen.len(),
            config.samples
        )));
    }
    Ok(chosen)
}

/// Main-list members (vii) to (x), the ones the spot check must cover.
pub const SPOT_FAMILIES: [FamilyId; 4] = [FamilyId::MainVII, FamilyId::MainVIII, FamilyId::MainIX, FamilyId::MainX];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Question {
    /// Even order: fractional t-extendable but not t-extendable.
    Q1,
    /// Odd order: fractional t-extendable but not t½-extendable.
    Q2,
}

impl Question {
    fn stronger_mode(self) -> Mode {
        match self {
            Question::Q1 => Mode::Classical,
            Question::Q2 => Mode::NearHalf,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExploreConfig {
    pub question: Question,
    pub min_order: u32,
    pub max_order: u32,
    pub t_max: usize,
    pub degree_cap: Option<usize>,
    pub dedup: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Separation {
    pub t: usize,
    pub group: AbelianGroup,
    pub connection_set: ConnectionSet,
    pub stronger: ExtendabilityReport,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ExploreRow {
    pub t: usize,
    /// Instances where both notions are defined.
    pub instances: u64,
    pub fractional: u64,
    pub stronger: u64,
    /// Stronger notion holds but the fractional one fails.
    pub implication_violations: u64,
    pub separations: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExploreReport {
    pub config: ExploreConfig,
    pub instances: u64,
    pub rows: Vec<ExploreRow>,
    /// Separating examples in canonical order, smallest `t` first.
    pub examples: Vec<Separation>,
}

/// Searches the scanned range for graphs separating the fractional notion
/// from its classical (even order) or near (odd order) counterpart.
pub fn explore(config: &ExploreConfig, workers: usize) -> Result<ExploreReport, CliError> {
    if config.t_max == 0 {
        return Err(CliError::Usage("--t-max must be at least 1".into()));
    }
    let mut scan = ScanConfig::new(ScanMode::F1e, config.min_order, config.max_order);
    scan.parity = match config.question {
        Question::Q1 => fracext_core::classification::Parity::Even,
        Question::Q2 => fracext_core::classification::Parity::Odd,
    };
    scan.degree_cap = config.degree_cap;
    if !config.dedup {
        scan.dedup = DedupOptions::disabled();
    }
    let (instances, _) = scan_instances(&scan)?;
    let ext = ExtConfig {
        symmetry: Symmetry::Cayley,
        max_t: config.t_max,
        count_matchings: false,
    };
    let mode = config.question.stronger_mode();
    let per_instance = pool(workers)?.install(|| {
        instances
            .par_iter()
            .map(|inst| explore_instance(inst, config.t_max, mode, &ext))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let mut rows: Vec<ExploreRow> = (1..=config.t_max)
        .map(|t| ExploreRow {
            t,
            ..ExploreRow::default()
        })
        .collect();
    let mut examples = Vec::new();
    for (inst, results) in instances.iter().zip(per_instance) {
        for (t, frac, stronger) in results {
            let row = &mut rows[t - 1];
            row.instances += 1;
            row.fractional += frac as u64;
            row.stronger += stronger.verdict as u64;
            row.implication_violations += (stronger.verdict && !frac) as u64;
            if frac && !stronger.verdict {
                row.separations += 1;
                examples.push(Separation {
                    t,
                    group: inst.group.clone(),
                    connection_set: inst.connection_set.clone(),
                    stronger,
                });
            }
        }
    }
    examples.sort_by_key(|s| s.t);
    Ok(ExploreReport {
        config: config.clone(),
        instances: instances.len() as u64,
        rows,
        examples,
    })
}

type TResult = (usize, bool, ExtendabilityReport);

fn explore_instance(
    inst: &ScanInstance,
    t_max: usize,
    mode: Mode,
    ext: &ExtConfig,
) -> Result<Vec<TResult>, ClassificationError> {
    let g = cayley_graph(&inst.group, &inst.connection_set)?;
    let mut out = Vec::new();
    for t in 1..=t_max {
        let stronger = check(&g, t, mode, ext)?;
        if stronger.reason.is_some() && stronger.counterexample.is_none() {
            // too small for the stronger notion, and larger t only gets worse
            break;
        }
        let frac = check(&g, t, Mode::Fractional, ext)?;
        out.push((t, frac.verdict, stronger));
    }
    Ok(out)
}

/// Wall time in milliseconds since `start`.
pub fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}
