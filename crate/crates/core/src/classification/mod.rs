//! The exceptional families, theorem-predicted verdicts, exhaustive scans
//! comparing predictions with the engine, and a census of family overlaps.

mod census;
mod families;
mod predict;
mod scan;

pub use census::{family_census, CensusRow, Overlap};
pub use families::{construct_family, members_in, FamilyId, FamilyList, FamilyMember};
pub use predict::{predict, recognize, theorem_f1e_verdict, theorem_f2e_verdict, Prediction, Recognition};
pub use scan::{
    aggregate, evaluate_instance, scan_instances, verify_theorem, Discrepancy, Exception,
    InstanceOutcome, OrderRow, Parity, ProbeTally, ScanConfig, ScanInstance, ScanMode, ScanReport,
};

use crate::extendability::ExtendabilityError;
use crate::graph::{GraphError, IsoError};
use crate::groups::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassificationError {
    #[error("{family} requires {range}, got {} = {param}", family.parameter())]
    OutOfRange {
        family: FamilyId,
        param: u32,
        range: &'static str,
    },
    #[error("{0}")]
    Parse(alloc::string::String),
    #[error("prediction needs a connected Cayley graph of order at least {min}, got order {order}{}", if *.connected { "" } else { ", disconnected" })]
    Precondition { order: usize, min: usize, connected: bool },
    #[error("scan order {order} is outside the supported range {min}..={max}")]
    OrderCap { order: u32, min: u32, max: u32 },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error(transparent)]
    Extendability(#[from] ExtendabilityError),
}
