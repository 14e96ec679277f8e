//! Exhaustive references for small graphs, independent of the fast paths.

use alloc::collections::BTreeSet;

use super::MatchingError;
use crate::graph::{mask_vertices, Graph, VertexMask};

pub const ORACLE_MAX_VERTICES: usize = 20;

fn check_size(g: &Graph) -> Result<(), MatchingError> {
    if g.order() > ORACLE_MAX_VERTICES {
        return Err(MatchingError::OracleBudget {
            n: g.order(),
            cap: ORACLE_MAX_VERTICES,
        });
    }
    Ok(())
}

/// Fractional perfect matching by the isolated-vertex criterion: one exists
/// iff `i(G - U) <= |U|` for every vertex subset `U`.
pub fn fpm_oracle(g: &Graph) -> Result<bool, MatchingError> {
    check_size(g)?;
    let all = g.vertex_mask();
    for u in 0..=all {
        if u & !all != 0 {
            continue;
        }
        let rest = all & !u;
        let isolated = mask_vertices(rest)
            .filter(|&v| g.neighbors(v) & rest == 0)
            .count();
        if isolated > u.count_ones() as usize {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Perfect matching by branching on the partner of the lowest vertex, with
/// failed vertex sets memoized.
pub fn pm_oracle(g: &Graph) -> Result<bool, MatchingError> {
    check_size(g)?;
    let mut failed = BTreeSet::new();
    Ok(pm_rec(g, g.vertex_mask(), &mut failed))
}

fn pm_rec(g: &Graph, rest: VertexMask, failed: &mut BTreeSet<VertexMask>) -> bool {
    if rest == 0 {
        return true;
    }
    if rest.count_ones() % 2 == 1 || failed.contains(&rest) {
        return false;
    }
    let v = rest.trailing_zeros() as usize;
    for u in mask_vertices(g.neighbors(v) & rest) {
        if pm_rec(g, rest & !(1 << v | 1 << u), failed) {
            return true;
        }
    }
    failed.insert(rest);
    false
}
