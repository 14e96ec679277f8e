//! Fractional, classical and near extendability of matchings.
//!
//! Every `false` verdict backed by a matching carries that matching and is
//! re-checked before the report is returned: fractional counterexamples by a
//! validated deficiency witness, classical ones by the blossom engine and,
//! when the remainder has at most 20 vertices, by the exhaustive oracle.
//! Verdicts that fail a size precondition carry a [`Reason`] instead.

mod enumerate;

pub use enumerate::{count_t_matchings, enumerate_t_matchings, for_each_t_matching, Symmetry, TMatchings};

use alloc::format;
use alloc::string::String;
use core::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::graph::{mask_vertices, Graph, Provenance, VertexMask};
use crate::matching::{
    fpm_exists_without, fpm_no_witness, perfect_matching_without, pm_oracle, tutte_barrier_without,
    DeficiencyWitness, MatchingError, MatchingSpec, TutteBarrier, ORACLE_MAX_VERTICES,
};

pub const DEFAULT_MAX_T: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtendabilityError {
    #[error("t = {t} exceeds the configured cap of {cap}")]
    TooLarge { t: usize, cap: usize },
    #[error("symmetry reduction needs a Cayley provenance")]
    NotCayley,
    #[error("the implication probe needs a graph of odd order, got {0}")]
    EvenOrder(usize),
    #[error(transparent)]
    Matching(#[from] MatchingError),
    #[error("engines disagree: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Fractional,
    Classical,
    NearHalf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtConfig {
    pub symmetry: Symmetry,
    pub max_t: usize,
    /// Also count all size-`t` matchings to report the reduction factor.
    pub count_matchings: bool,
}

impl Default for ExtConfig {
    fn default() -> Self {
        ExtConfig {
            symmetry: Symmetry::None,
            max_t: DEFAULT_MAX_T,
            count_matchings: false,
        }
    }
}

impl ExtConfig {
    /// Cayley symmetry when the graph records a Cayley provenance.
    pub fn for_graph(g: &Graph) -> Self {
        let symmetry = if g.provenance().cayley_spec().is_some() {
            Symmetry::Cayley
        } else {
            Symmetry::None
        };
        ExtConfig {
            symmetry,
            ..ExtConfig::default()
        }
    }
}

/// Why a verdict is `false` without a counterexample matching.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum Reason {
    OrderTooSmall { order: usize, required: usize },
    OddOrder { order: usize },
    EvenOrder { order: usize },
    NoMatchingOfSizeT,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    /// `g - V(matching)` has no fractional perfect matching.
    Fractional {
        matching: MatchingSpec,
        witness: DeficiencyWitness,
    },
    /// `g - V(matching)` has no perfect matching, as the Tutte barrier
    /// shows. The witness is present when even a fractional one is missing;
    /// `oracle_confirmed` is `None` when the remainder is too large for the
    /// exhaustive oracle.
    Classical {
        matching: MatchingSpec,
        barrier: TutteBarrier,
        witness: Option<DeficiencyWitness>,
        oracle_confirmed: Option<bool>,
    },
    /// `g - vertex - V(matching)` has no perfect matching.
    NearHalf {
        vertex: usize,
        matching: MatchingSpec,
        barrier: TutteBarrier,
        witness: Option<DeficiencyWitness>,
        oracle_confirmed: Option<bool>,
    },
}

impl Counterexample {
    pub fn matching(&self) -> &MatchingSpec {
        match self {
            Counterexample::Fractional { matching, .. }
            | Counterexample::Classical { matching, .. }
            | Counterexample::NearHalf { matching, .. } => matching,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n: usize,
    pub edges: usize,
    pub provenance: Provenance,
}

impl GraphSummary {
    pub fn of(g: &Graph) -> Self {
        GraphSummary {
            n: g.order(),
            edges: g.edge_count(),
            provenance: g.provenance().clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    /// Matchings examined before the verdict was reached.
    pub matchings_checked: u64,
    /// Matchings the enumeration would emit in total, when counted.
    pub matchings_enumerated: Option<u64>,
    /// Vertices deleted, for the near mode.
    pub vertices_checked: u64,
    pub symmetry: Symmetry,
    /// All size-`t` matchings divided by the reduced enumeration, when counted.
    pub reduction_factor: Option<f64>,
    /// Filled in by callers that measure time.
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtendabilityReport {
    pub graph: GraphSummary,
    pub t: usize,
    pub mode: Mode,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<Reason>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    pub stats: Stats,
}

impl ExtendabilityReport {
    fn new(g: &Graph, t: usize, mode: Mode, config: &ExtConfig) -> Self {
        ExtendabilityReport {
            graph: GraphSummary::of(g),
            t,
            mode,
            verdict: false,
            reason: None,
            counterexample: None,
            stats: Stats {
                matchings_checked: 0,
                matchings_enumerated: None,
                vertices_checked: 0,
                symmetry: config.symmetry,
                reduction_factor: None,
                elapsed_ms: None,
            },
        }
    }

    fn refuse(mut self, reason: Reason) -> Self {
        self.verdict = false;
        self.reason = Some(reason);
        self
    }
}

pub fn check(
    g: &Graph,
    t: usize,
    mode: Mode,
    config: &ExtConfig,
) -> Result<ExtendabilityReport, ExtendabilityError> {
    if t > config.max_t {
        return Err(ExtendabilityError::TooLarge { t, cap: config.max_t });
    }
    if config.symmetry == Symmetry::Cayley && g.provenance().cayley_spec().is_none() {
        return Err(ExtendabilityError::NotCayley);
    }
    match mode {
        Mode::Fractional => fractional(g, t, config),
        Mode::Classical => classical(g, t, config),
        Mode::NearHalf => near(g, t, config),
    }
}

pub fn is_fractional_t_extendable(g: &Graph, t: usize) -> Result<ExtendabilityReport, ExtendabilityError> {
    check(g, t, Mode::Fractional, &ExtConfig::for_graph(g))
}

pub fn is_t_extendable_classical(g: &Graph, t: usize) -> Result<ExtendabilityReport, ExtendabilityError> {
    check(g, t, Mode::Classical, &ExtConfig::for_graph(g))
}

pub fn is_t_near_extendable(g: &Graph, t: usize) -> Result<ExtendabilityReport, ExtendabilityError> {
    check(g, t, Mode::NearHalf, &ExtConfig::for_graph(g))
}

fn count_into(report: &mut ExtendabilityReport, g: &Graph, t: usize, config: &ExtConfig) -> Result<(), ExtendabilityError> {
    if !config.count_matchings {
        return Ok(());
    }
    let reduced = count_t_matchings(g, t, config.symmetry)?;
    report.stats.matchings_enumerated = Some(reduced);
    if config.symmetry == Symmetry::Cayley && reduced > 0 {
        let all = count_t_matchings(g, t, Symmetry::None)?;
        report.stats.reduction_factor = Some(all as f64 / reduced as f64);
    }
    Ok(())
}

/// First matching (in enumeration order) for which `fails` holds.
fn first_failure<F>(
    g: &Graph,
    t: usize,
    symmetry: Symmetry,
    checked: &mut u64,
    mut fails: F,
) -> Result<Option<MatchingSpec>, ExtendabilityError>
where
    F: FnMut(VertexMask) -> bool,
{
    let mut found = None;
    let _ = for_each_t_matching(g, t, symmetry, &mut |edges| {
        *checked += 1;
        let mask = edges.iter().fold(0u64, |m, &(u, v)| m | 1 << u | 1 << v);
        if fails(mask) {
            found = Some(MatchingSpec::new(edges.to_vec()));
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

fn fractional(g: &Graph, t: usize, config: &ExtConfig) -> Result<ExtendabilityReport, ExtendabilityError> {
    let mut report = ExtendabilityReport::new(g, t, Mode::Fractional, config);
    let n = g.order();
    if n < 2 * t + 1 {
        return Ok(report.refuse(Reason::OrderTooSmall { order: n, required: 2 * t + 1 }));
    }
    count_into(&mut report, g, t, config)?;
    let mut checked = 0;
    let failure = first_failure(g, t, config.symmetry, &mut checked, |mask| {
        !fpm_exists_without(g, mask)
    })?;
    report.stats.matchings_checked = checked;
    if checked == 0 {
        return Ok(report.refuse(Reason::NoMatchingOfSizeT));
    }
    match failure {
        None => report.verdict = true,
        Some(matching) => {
            revalidate_matching(g, &matching)?;
            let witness = fpm_no_witness(g, matching.vertex_mask())?;
            report.counterexample = Some(Counterexample::Fractional { matching, witness });
        }
    }
    Ok(report)
}

fn revalidate_matching(g: &Graph, matching: &MatchingSpec) -> Result<(), ExtendabilityError> {
    matching
        .validate(g)
        .map_err(|e| ExtendabilityError::Inconsistent(format!("counterexample matching: {e}")))
}

/// Evidence that `g - removed` has no perfect matching.
struct NoPmEvidence {
    barrier: TutteBarrier,
    witness: Option<DeficiencyWitness>,
    oracle_confirmed: Option<bool>,
}

/// Certificates that `g - removed` has no perfect matching, re-checked.
fn no_pm_evidence(g: &Graph, removed: VertexMask) -> Result<NoPmEvidence, ExtendabilityError> {
    let inconsistent = |what: &str| {
        ExtendabilityError::Inconsistent(format!(
            "blossom found no perfect matching after removing {:?} but {what}",
            mask_vertices(removed).collect::<alloc::vec::Vec<_>>()
        ))
    };
    let barrier = tutte_barrier_without(g, removed).ok_or_else(|| inconsistent("no barrier exists"))?;
    barrier
        .validate(g, removed)
        .map_err(|e| inconsistent(&format!("the barrier is invalid: {e}")))?;
    let witness = fpm_no_witness(g, removed).ok();
    let alive = g.vertex_mask() & !removed;
    let oracle_confirmed = if (alive.count_ones() as usize) <= ORACLE_MAX_VERTICES {
        let (rest, _) = g.delete_vertices(removed);
        if pm_oracle(&rest)? {
            return Err(inconsistent("the oracle found one"));
        }
        Some(true)
    } else {
        None
    };
    Ok(NoPmEvidence {
        barrier,
        witness,
        oracle_confirmed,
    })
}

fn classical(g: &Graph, t: usize, config: &ExtConfig) -> Result<ExtendabilityReport, ExtendabilityError> {
    let mut report = ExtendabilityReport::new(g, t, Mode::Classical, config);
    let n = g.order();
    if n % 2 == 1 {
        return Ok(report.refuse(Reason::OddOrder { order: n }));
    }
    if n < 2 * t + 2 {
        return Ok(report.refuse(Reason::OrderTooSmall { order: n, required: 2 * t + 2 }));
    }
    count_into(&mut report, g, t, config)?;
    let mut checked = 0;
    let failure = first_failure(g, t, config.symmetry, &mut checked, |mask| {
        perfect_matching_without(g, mask).is_none()
    })?;
    report.stats.matchings_checked = checked;
    if checked == 0 {
        return Ok(report.refuse(Reason::NoMatchingOfSizeT));
    }
    match failure {
        None => report.verdict = true,
        Some(matching) => {
            revalidate_matching(g, &matching)?;
            let evidence = no_pm_evidence(g, matching.vertex_mask())?;
            report.counterexample = Some(Counterexample::Classical {
                matching,
                barrier: evidence.barrier,
                witness: evidence.witness,
                oracle_confirmed: evidence.oracle_confirmed,
            });
        }
    }
    Ok(report)
}

/// `g` with every edge at `v` removed; ids are kept.
fn isolate(g: &Graph, v: usize) -> Graph {
    let rows = g
        .rows()
        .iter()
        .enumerate()
        .map(|(u, &row)| if u == v { 0 } else { row & !(1 << v) })
        .collect();
    Graph::from_rows(rows, Provenance::AdHoc)
}

fn near(g: &Graph, t: usize, config: &ExtConfig) -> Result<ExtendabilityReport, ExtendabilityError> {
    let mut report = ExtendabilityReport::new(g, t, Mode::NearHalf, config);
    let n = g.order();
    if n.is_multiple_of(2) {
        return Ok(report.refuse(Reason::EvenOrder { order: n }));
    }
    if n < 2 * t + 3 {
        return Ok(report.refuse(Reason::OrderTooSmall { order: n, required: 2 * t + 3 }));
    }
    // vertex-transitivity: deleting 0 stands for deleting any vertex
    let vertices: alloc::vec::Vec<usize> = match config.symmetry {
        Symmetry::Cayley => alloc::vec![0],
        Symmetry::None => (0..n).collect(),
    };
    let mut checked = 0;
    for v in vertices {
        report.stats.vertices_checked += 1;
        let h = isolate(g, v);
        let before = checked;
        let failure = first_failure(&h, t, Symmetry::None, &mut checked, |mask| {
            perfect_matching_without(g, mask | 1 << v).is_none()
        })?;
        if checked == before {
            report.stats.matchings_checked = checked;
            return Ok(report.refuse(Reason::NoMatchingOfSizeT));
        }
        if let Some(matching) = failure {
            report.stats.matchings_checked = checked;
            revalidate_matching(g, &matching)?;
            let evidence = no_pm_evidence(g, matching.vertex_mask() | 1 << v)?;
            report.counterexample = Some(Counterexample::NearHalf {
                vertex: v,
                matching,
                barrier: evidence.barrier,
                witness: evidence.witness,
                oracle_confirmed: evidence.oracle_confirmed,
            });
            return Ok(report);
        }
    }
    report.stats.matchings_checked = checked;
    report.verdict = true;
    Ok(report)
}

/// Both verdicts for an odd-order graph. A graph that is near-extendable but
/// not fractionally extendable would be inconsistent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRecord {
    pub t: usize,
    pub near_half: bool,
    pub fractional: bool,
    pub consistent: bool,
    /// The near verdict was derived from the fractional counterexample.
    pub near_from_witness: bool,
    pub fractional_report: ExtendabilityReport,
    pub near_report: ExtendabilityReport,
}

/// Decides both properties. When the fractional check fails with witness
/// `(I, U)` in `G' = g - V(M)`, deleting one well-chosen vertex `v` of `G'`
/// leaves a remainder that still has more isolated vertices than blockers,
/// so `g - v` is not `t`-extendable either: `v` is taken from `U`, else from
/// `V(G') \ I`, else from `I`. The choice is confirmed by the blossom engine.
pub fn implication_probe(g: &Graph, t: usize, config: &ExtConfig) -> Result<ProbeRecord, ExtendabilityError> {
    let n = g.order();
    if n.is_multiple_of(2) {
        return Err(ExtendabilityError::EvenOrder(n));
    }
    let fractional_report = check(g, t, Mode::Fractional, config)?;
    let mut near_from_witness = false;
    let near_report = match (&fractional_report.counterexample, n >= 2 * t + 3) {
        (Some(Counterexample::Fractional { matching, witness }), true) => {
            near_from_witness = true;
            let removed = matching.vertex_mask();
            let rest = g.vertex_mask() & !removed;
            let i_mask = witness.independent_mask();
            let u_mask = witness.blocker_mask();
            let v = if u_mask != 0 {
                u_mask.trailing_zeros()
            } else if rest & !i_mask != 0 {
                (rest & !i_mask).trailing_zeros()
            } else {
                i_mask.trailing_zeros()
            } as usize;
            if perfect_matching_without(g, removed | 1 << v).is_some() {
                return Err(ExtendabilityError::Inconsistent(format!(
                    "deleting {v} from the fractional counterexample left a perfectly matchable graph"
                )));
            }
            let evidence = no_pm_evidence(g, removed | 1 << v)?;
            let mut report = ExtendabilityReport::new(g, t, Mode::NearHalf, config);
            report.stats.vertices_checked = 1;
            report.stats.matchings_checked = 1;
            report.counterexample = Some(Counterexample::NearHalf {
                vertex: v,
                matching: matching.clone(),
                barrier: evidence.barrier,
                witness: evidence.witness,
                oracle_confirmed: evidence.oracle_confirmed,
            });
            report
        }
        _ => check(g, t, Mode::NearHalf, config)?,
    };
    let near_half = near_report.verdict;
    let fractional = fractional_report.verdict;
    Ok(ProbeRecord {
        t,
        near_half,
        fractional,
        consistent: !(near_half && !fractional),
        near_from_witness,
        fractional_report,
        near_report,
    })
}
