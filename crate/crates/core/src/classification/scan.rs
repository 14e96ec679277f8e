use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::families::{FamilyList, FamilyMember};
use super::predict::{predict, Prediction};
use super::ClassificationError;
use crate::extendability::{check, implication_probe, ExtConfig, ExtendabilityReport, Mode, Symmetry};
use crate::graph::{cayley_graph, IsoConfig, MAX_VERTICES};
use crate::groups::{
    connection_set_orbit_reps, enumerate_abelian_groups, AbelianGroup, ConnectionSet, DedupOptions,
    DedupStatus,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    /// Fractional 1-extendability against the odd-cycle exception.
    F1e,
    /// Fractional 2-extendability against the even list (even orders) and
    /// the main list (odd orders).
    F2e,
}

impl ScanMode {
    pub fn t(self) -> usize {
        match self {
            ScanMode::F1e => 1,
            ScanMode::F2e => 2,
        }
    }

    pub fn min_order(self) -> u32 {
        match self {
            ScanMode::F1e => 3,
            ScanMode::F2e => 5,
        }
    }

    fn list(self, order: usize) -> FamilyList {
        match self {
            ScanMode::F1e => FamilyList::OddCycles,
            ScanMode::F2e if order.is_multiple_of(2) => FamilyList::Even,
            ScanMode::F2e => FamilyList::Main,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    #[default]
    All,
    Odd,
    Even,
}

impl Parity {
    pub fn admits(self, n: u32) -> bool {
        match self {
            Parity::All => true,
            Parity::Odd => n % 2 == 1,
            Parity::Even => n.is_multiple_of(2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub mode: ScanMode,
    pub min_order: u32,
    pub max_order: u32,
    pub parity: Parity,
    /// Only connection sets with at most this many elements.
    pub degree_cap: Option<usize>,
    pub dedup: DedupOptions,
    pub symmetry: Symmetry,
    /// Also run the near/fractional implication probe on odd orders.
    pub probe_near: bool,
    #[serde(skip)]
    pub iso: IsoConfig,
}

impl ScanConfig {
    pub fn new(mode: ScanMode, min_order: u32, max_order: u32) -> Self {
        ScanConfig {
            mode,
            min_order,
            max_order,
            parity: Parity::All,
            degree_cap: None,
            dedup: DedupOptions::default(),
            symmetry: Symmetry::Cayley,
            probe_near: false,
            iso: IsoConfig::default(),
        }
    }

    fn orders(&self) -> impl Iterator<Item = u32> + '_ {
        (self.min_order..=self.max_order).filter(|&n| self.parity.admits(n))
    }
}

/// One connection-set orbit representative to evaluate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanInstance {
    pub group: AbelianGroup,
    pub connection_set: ConnectionSet,
    /// Number of connection sets the representative stands for.
    pub orbit_size: u64,
}

/// Instances in canonical order (order, group, representative), and one note
/// per group whose dedup was not applied.
pub fn scan_instances(config: &ScanConfig) -> Result<(Vec<ScanInstance>, Vec<String>), ClassificationError> {
    let max = MAX_VERTICES as u32;
    for order in [config.min_order, config.max_order] {
        if order < config.mode.min_order() || order > max {
            return Err(ClassificationError::OrderCap {
                order,
                min: config.mode.min_order(),
                max,
            });
        }
    }
    let mut instances = Vec::new();
    let mut notes = Vec::new();
    for n in config.orders() {
        for group in enumerate_abelian_groups(n) {
            let cap = config.degree_cap;
            let reps = connection_set_orbit_reps(
                &group,
                |s| cap.is_none_or(|c| s.len() <= c) && group.generates(s),
                &config.dedup,
            )?;
            match &reps.dedup {
                DedupStatus::Applied { .. } => {}
                DedupStatus::Disabled => notes.push(format!("{group}: dedup disabled")),
                DedupStatus::Unavailable { reason } => {
                    notes.push(format!("{group}: dedup unavailable, returning all sets ({reason})"))
                }
            }
            for rep in reps.reps {
                instances.push(ScanInstance {
                    group: group.clone(),
                    connection_set: rep.set,
                    orbit_size: rep.orbit_size,
                });
            }
        }
    }
    Ok((instances, notes))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceOutcome {
    pub instance: ScanInstance,
    pub engine_verdict: bool,
    pub prediction: Prediction,
    pub report: ExtendabilityReport,
    /// `(near_half, fractional)` from the implication probe.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub probe: Option<(bool, bool)>,
}

impl InstanceOutcome {
    pub fn agrees(&self) -> bool {
        self.engine_verdict == self.prediction.extendable
    }
}

pub fn evaluate_instance(instance: &ScanInstance, config: &ScanConfig) -> Result<InstanceOutcome, ClassificationError> {
    let g = cayley_graph(&instance.group, &instance.connection_set)?;
    let t = config.mode.t();
    let ext = ExtConfig {
        symmetry: config.symmetry,
        count_matchings: true,
        ..ExtConfig::default()
    };
    let prediction = predict(&g, config.mode.list(g.order()), &config.iso)?;
    let (report, probe) = if config.probe_near && g.order() % 2 == 1 {
        let record = implication_probe(&g, t, &ext)?;
        (record.fractional_report, Some((record.near_half, record.fractional)))
    } else {
        (check(&g, t, Mode::Fractional, &ext)?, None)
    };
    Ok(InstanceOutcome {
        instance: instance.clone(),
        engine_verdict: report.verdict,
        prediction,
        report,
        probe,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub group: AbelianGroup,
    pub connection_set: ConnectionSet,
    pub engine_verdict: bool,
    pub theorem_verdict: bool,
    pub prediction: Prediction,
    pub certificate: ExtendabilityReport,
}

/// A scanned graph that is not extendable, with the family it belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exception {
    pub group: AbelianGroup,
    pub connection_set: ConnectionSet,
    pub family: Option<FamilyMember>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OrderRow {
    pub order: u32,
    pub groups: usize,
    pub instances: u64,
    /// Connection sets covered, counting each orbit with its size.
    pub sets_covered: u64,
    pub non_extendable: u64,
    pub non_extendable_sets: u64,
    pub discrepancies: u64,
    pub dedup_factor: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeTally {
    pub instances: u64,
    pub near_half: u64,
    pub fractional: u64,
    /// Near-extendable but not fractionally extendable.
    pub violations: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub mode: ScanMode,
    pub t: usize,
    pub orders: [u32; 2],
    pub parity: Parity,
    pub degree_cap: Option<usize>,
    pub dedup: bool,
    pub instances: u64,
    pub sets_covered: u64,
    pub dedup_factor: f64,
    pub per_order: Vec<OrderRow>,
    pub exceptions: Vec<Exception>,
    pub discrepancies: Vec<Discrepancy>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub probe: Option<ProbeTally>,
    pub coverage_notes: Vec<String>,
    /// No discrepancies on the scanned range.
    pub verified: bool,
}

/// Folds outcomes, given in canonical instance order, into a report.
pub fn aggregate(config: &ScanConfig, outcomes: &[InstanceOutcome], notes: Vec<String>) -> ScanReport {
    let mut rows: BTreeMap<u32, OrderRow> = config
        .orders()
        .map(|n| {
            let row = OrderRow {
                order: n,
                groups: enumerate_abelian_groups(n).len(),
                ..OrderRow::default()
            };
            (n, row)
        })
        .collect();
    let mut exceptions = Vec::new();
    let mut discrepancies = Vec::new();
    let mut probe = config.probe_near.then(ProbeTally::default);
    for outcome in outcomes {
        let inst = &outcome.instance;
        let row = rows.entry(inst.group.order() as u32).or_default();
        row.instances += 1;
        row.sets_covered += inst.orbit_size;
        if !outcome.engine_verdict {
            row.non_extendable += 1;
            row.non_extendable_sets += inst.orbit_size;
            exceptions.push(Exception {
                group: inst.group.clone(),
                connection_set: inst.connection_set.clone(),
                family: outcome.prediction.family,
            });
        }
        if !outcome.agrees() {
            row.discrepancies += 1;
            discrepancies.push(Discrepancy {
                group: inst.group.clone(),
                connection_set: inst.connection_set.clone(),
                engine_verdict: outcome.engine_verdict,
                theorem_verdict: outcome.prediction.extendable,
                prediction: outcome.prediction.clone(),
                certificate: outcome.report.clone(),
            });
        }
        if let (Some(tally), Some((near, frac))) = (probe.as_mut(), outcome.probe) {
            tally.instances += 1;
            tally.near_half += near as u64;
            tally.fractional += frac as u64;
            tally.violations += (near && !frac) as u64;
        }
    }
    let mut per_order: Vec<OrderRow> = rows.into_values().collect();
    for row in &mut per_order {
        row.dedup_factor = ratio(row.sets_covered, row.instances);
    }
    let instances = outcomes.len() as u64;
    let sets_covered = outcomes.iter().map(|o| o.instance.orbit_size).sum();
    ScanReport {
        mode: config.mode,
        t: config.mode.t(),
        orders: [config.min_order, config.max_order],
        parity: config.parity,
        degree_cap: config.degree_cap,
        dedup: config.dedup.enabled,
        instances,
        sets_covered,
        dedup_factor: ratio(sets_covered, instances),
        per_order,
        exceptions,
        verified: discrepancies.is_empty(),
        discrepancies,
        probe,
        coverage_notes: notes,
    }
}

fn ratio(a: u64, b: u64) -> f64 {
    if b == 0 {
        1.0
    } else {
        a as f64 / b as f64
    }
}

/// Sequential scan; see the std companion for the parallel driver.
pub fn verify_theorem(config: &ScanConfig) -> Result<ScanReport, ClassificationError> {
    let (instances, notes) = scan_instances(config)?;
    let outcomes = instances
        .iter()
        .map(|inst| evaluate_instance(inst, config))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(aggregate(config, &outcomes, notes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_f1e_scan() {
        let report = verify_theorem(&ScanConfig::new(ScanMode::F1e, 3, 9)).unwrap();
        assert!(report.verified, "{:?}", report.discrepancies);
        // the odd cycles C3, C5, C7, C9 are the only exceptions
        assert_eq!(report.exceptions.len(), 4);
        assert!(report.per_order.iter().all(|r| r.instances > 0));
    }

    #[test]
    fn small_f2e_scan_with_probe() {
        let mut config = ScanConfig::new(ScanMode::F2e, 5, 9);
        config.probe_near = true;
        let report = verify_theorem(&config).unwrap();
        assert!(report.verified, "{:?}", report.discrepancies);
        assert_eq!(report.probe.as_ref().unwrap().violations, 0);
    }

    #[test]
    fn dedup_preserves_weighted_counts() {
        let mut config = ScanConfig::new(ScanMode::F2e, 6, 10);
        let dedup = verify_theorem(&config).unwrap();
        config.dedup = DedupOptions::disabled();
        let full = verify_theorem(&config).unwrap();
        assert_eq!(dedup.sets_covered, full.sets_covered);
        assert_eq!(full.instances, full.sets_covered);
        for (a, b) in dedup.per_order.iter().zip(&full.per_order) {
            assert_eq!(a.non_extendable_sets, b.non_extendable_sets);
        }
    }

    #[test]
    fn order_caps() {
        assert!(matches!(
            scan_instances(&ScanConfig::new(ScanMode::F2e, 4, 9)),
            Err(ClassificationError::OrderCap { order: 4, .. })
        ));
    }
}
