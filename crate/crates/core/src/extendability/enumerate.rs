use alloc::vec::Vec;
use core::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::ExtendabilityError;
use crate::graph::{full_mask, mask_vertices, Graph, VertexMask};
use crate::matching::MatchingSpec;

/// Which automorphisms the enumeration may quotient by.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    #[default]
    None,
    /// Translations plus inversion of a Cayley graph of an Abelian group:
    /// every matching is equivalent to one containing `{0, s}` with `s` the
    /// smaller of `s` and `-s`.
    Cayley,
}

/// Collected enumeration, with the size precondition reported explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TMatchings {
    pub matchings: Vec<MatchingSpec>,
    /// Set when `2t` exceeds the order, so no matching can exist.
    pub order_too_small: bool,
}

pub fn enumerate_t_matchings(
    g: &Graph,
    t: usize,
    symmetry: Symmetry,
) -> Result<TMatchings, ExtendabilityError> {
    let mut matchings = Vec::new();
    let order_too_small = 2 * t > g.order();
    if !order_too_small {
        let _ = for_each_t_matching(g, t, symmetry, &mut |edges| {
            matchings.push(MatchingSpec::new(edges.to_vec()));
            ControlFlow::Continue(())
        })?;
    }
    Ok(TMatchings {
        matchings,
        order_too_small,
    })
}

/// Calls `visit` on each size-`t` matching as a lexicographically increasing
/// edge list; stops early on `Break`.
///
/// Under [`Symmetry::Cayley`] the first edge is `{0, s}`, one `s` per
/// `±` class of the connection set, and the remaining `t - 1` edges range
/// over all matchings disjoint from it.
pub fn for_each_t_matching<F>(
    g: &Graph,
    t: usize,
    symmetry: Symmetry,
    visit: &mut F,
) -> Result<ControlFlow<()>, ExtendabilityError>
where
    F: FnMut(&[(usize, usize)]) -> ControlFlow<()>,
{
    let mut stack = Vec::with_capacity(t);
    if 2 * t > g.order() {
        return Ok(ControlFlow::Continue(()));
    }
    match symmetry {
        Symmetry::None => Ok(extend(g, 0, 0, t, &mut stack, visit)),
        Symmetry::Cayley => {
            let spec = g
                .provenance()
                .cayley_spec()
                .ok_or(ExtendabilityError::NotCayley)?;
            if t == 0 {
                return Ok(visit(&[]));
            }
            let group = &spec.group;
            let mut firsts: Vec<usize> = spec
                .connection_set
                .indices(group)
                .into_iter()
                .filter(|&s| s <= group.neg_idx(s))
                .collect();
            firsts.sort_unstable();
            for s in firsts {
                stack.clear();
                stack.push((0, s));
                let used = 1u64 | 1 << s;
                if extend(g, used, 0, t - 1, &mut stack, visit).is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            }
            Ok(ControlFlow::Continue(()))
        }
    }
}

/// Adds `left` more edges avoiding `used`, each edge lexicographically after
/// the previously added one. A fixed Cayley edge `{0, s}` precedes every
/// edge avoiding 0, so the stack stays sorted.
fn extend<F>(
    g: &Graph,
    used: VertexMask,
    start: usize,
    left: usize,
    stack: &mut Vec<(usize, usize)>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[(usize, usize)]) -> ControlFlow<()>,
{
    if left == 0 {
        return visit(stack);
    }
    let free = g.vertex_mask() & !used;
    // edges (u, v), u < v, with u >= start; the next edge starts after u
    for u in mask_vertices(free & !full_mask(start)) {
        let higher = free & !full_mask(u + 1);
        for v in mask_vertices(g.neighbors(u) & higher) {
            stack.push((u, v));
            let flow = extend(g, used | 1 << u | 1 << v, u + 1, left - 1, stack, visit);
            stack.pop();
            flow?;
        }
    }
    ControlFlow::Continue(())
}

/// Number of size-`t` matchings under the given symmetry.
pub fn count_t_matchings(g: &Graph, t: usize, symmetry: Symmetry) -> Result<u64, ExtendabilityError> {
    let mut count = 0u64;
    let _ = for_each_t_matching(g, t, symmetry, &mut |_| {
        count += 1;
        ControlFlow::Continue(())
    })?;
    Ok(count)
}
