use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::graph::{mask_of, Graph, VertexMask};

/// Why a certificate does not check out against its host graph.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("vertex {0} is out of range")]
    OutOfRange(usize),
    #[error("vertex {0} is used twice")]
    Repeated(usize),
    #[error("vertex {0} was removed from the host graph")]
    Removed(usize),
    #[error("{{{0},{1}}} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("vertex {0} is not covered")]
    Uncovered(usize),
    #[error("cycle of length {0} is not an odd cycle of length at least 3")]
    BadCycle(usize),
    #[error("forced edge {{{0},{1}}} is missing from the factor")]
    MissingForced(usize, usize),
    #[error("half-unit value {value} on {{{u},{v}}} is not in 0..=2")]
    BadValue { u: usize, v: usize, value: u8 },
    #[error("vertex {vertex} carries {sum} half-units, at most 2 allowed")]
    Overloaded { vertex: usize, sum: u32 },
    #[error("vertex {vertex} carries {sum} half-units, a perfect assignment needs 2")]
    NotPerfect { vertex: usize, sum: u32 },
    #[error("independent set and blocker share vertex {0}")]
    Overlap(usize),
    #[error("{0} and {1} are adjacent inside the independent set")]
    NotIndependent(usize, usize),
    #[error("neighbor {1} of {0} lies outside the blocker")]
    Escapes(usize, usize),
    #[error("|I| = {i} does not exceed |U| = {u}")]
    NotDeficient { i: usize, u: usize },
    #[error("claimed {claimed} odd components, found {found}")]
    OddCount { claimed: usize, found: usize },
    #[error("{odd} odd components do not exceed the barrier size {barrier}")]
    NotABarrier { odd: usize, barrier: usize },
}

/// A matching as a sorted list of edges `(u, v)` with `u < v`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<[usize; 2]>", into = "Vec<[usize; 2]>")]
pub struct MatchingSpec {
    edges: Vec<(usize, usize)>,
}

impl From<Vec<[usize; 2]>> for MatchingSpec {
    fn from(edges: Vec<[usize; 2]>) -> Self {
        MatchingSpec::new(edges.into_iter().map(|[u, v]| (u, v)).collect())
    }
}

impl From<MatchingSpec> for Vec<[usize; 2]> {
    fn from(m: MatchingSpec) -> Self {
        m.edges.into_iter().map(|(u, v)| [u, v]).collect()
    }
}

impl MatchingSpec {
    pub fn new(edges: Vec<(usize, usize)>) -> Self {
        let mut edges: Vec<_> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        MatchingSpec { edges }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Endpoints of all edges.
    pub fn vertex_mask(&self) -> VertexMask {
        self.edges.iter().fold(0, |m, &(u, v)| m | 1 << u | 1 << v)
    }

    /// Checks that the edges are pairwise disjoint edges of `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), WitnessError> {
        let mut used: VertexMask = 0;
        for &(u, v) in &self.edges {
            for w in [u, v] {
                if w >= g.order() {
                    return Err(WitnessError::OutOfRange(w));
                }
                if used >> w & 1 == 1 {
                    return Err(WitnessError::Repeated(w));
                }
                used |= 1 << w;
            }
            if !g.has_edge(u, v) {
                return Err(WitnessError::NotAnEdge(u, v));
            }
        }
        Ok(())
    }
}

/// A spanning subgraph whose components are single edges or odd cycles.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeOddCycleFactor {
    #[serde(rename = "edges")]
    pub matched_edges: Vec<(usize, usize)>,
    pub odd_cycles: Vec<Vec<usize>>,
}

impl EdgeOddCycleFactor {
    /// Checks that the factor spans `g`, is vertex-disjoint, uses only graph
    /// edges, has only odd cycles, and contains every forced edge.
    pub fn validate(&self, g: &Graph, forced: &MatchingSpec) -> Result<(), WitnessError> {
        let mut used: VertexMask = 0;
        let mut take = |w: usize| {
            if w >= g.order() {
                return Err(WitnessError::OutOfRange(w));
            }
            if used >> w & 1 == 1 {
                return Err(WitnessError::Repeated(w));
            }
            used |= 1 << w;
            Ok(())
        };
        for &(u, v) in &self.matched_edges {
            take(u)?;
            take(v)?;
            if !g.has_edge(u, v) {
                return Err(WitnessError::NotAnEdge(u, v));
            }
        }
        for cycle in &self.odd_cycles {
            if cycle.len() < 3 || cycle.len() % 2 == 0 {
                return Err(WitnessError::BadCycle(cycle.len()));
            }
            for (i, &u) in cycle.iter().enumerate() {
                take(u)?;
                let v = cycle[(i + 1) % cycle.len()];
                if !g.has_edge(u, v) {
                    return Err(WitnessError::NotAnEdge(u, v));
                }
            }
        }
        if let Some(missing) = (0..g.order()).find(|&v| used >> v & 1 == 0) {
            return Err(WitnessError::Uncovered(missing));
        }
        for &(u, v) in forced.edges() {
            let present = self
                .matched_edges
                .iter()
                .any(|&(a, b)| (a, b) == (u, v) || (b, a) == (u, v));
            if !present {
                return Err(WitnessError::MissingForced(u, v));
            }
        }
        Ok(())
    }

    /// Value 2 (one whole) on matched edges, 1 (a half) on cycle edges.
    pub fn to_assignment(&self) -> HalfIntegralAssignment {
        let mut values = BTreeMap::new();
        for &(u, v) in &self.matched_edges {
            values.insert((u.min(v), u.max(v)), 2);
        }
        for cycle in &self.odd_cycles {
            for (i, &u) in cycle.iter().enumerate() {
                let v = cycle[(i + 1) % cycle.len()];
                values.insert((u.min(v), u.max(v)), 1);
            }
        }
        HalfIntegralAssignment { values }
    }
}

/// A fractional matching with values in `{0, 1/2, 1}`, stored as half-units
/// `{0, 1, 2}`. Edges not listed carry 0.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<[usize; 3]>", into = "Vec<[usize; 3]>")]
pub struct HalfIntegralAssignment {
    values: BTreeMap<(usize, usize), u8>,
}

impl From<Vec<[usize; 3]>> for HalfIntegralAssignment {
    fn from(entries: Vec<[usize; 3]>) -> Self {
        HalfIntegralAssignment {
            values: entries
                .into_iter()
                .map(|[u, v, x]| ((u.min(v), u.max(v)), x.min(u8::MAX as usize) as u8))
                .collect(),
        }
    }
}

impl From<HalfIntegralAssignment> for Vec<[usize; 3]> {
    fn from(a: HalfIntegralAssignment) -> Self {
        a.values
            .into_iter()
            .map(|((u, v), x)| [u, v, x as usize])
            .collect()
    }
}

impl HalfIntegralAssignment {
    pub fn get(&self, u: usize, v: usize) -> u8 {
        self.values.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    pub fn set(&mut self, u: usize, v: usize, halves: u8) {
        let key = (u.min(v), u.max(v));
        if halves == 0 {
            self.values.remove(&key);
        } else {
            self.values.insert(key, halves);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u8)> + '_ {
        self.values.iter().map(|(&e, &x)| (e, x))
    }

    /// Half-units meeting each vertex of a graph on `n` vertices.
    pub fn vertex_sums(&self, n: usize) -> Vec<u32> {
        let mut sums = vec![0u32; n];
        for (&(u, v), &x) in &self.values {
            if u < n && v < n {
                sums[u] += x as u32;
                sums[v] += x as u32;
            }
        }
        sums
    }

    /// Total weight in half-units.
    pub fn total_halves(&self) -> u32 {
        self.values.values().map(|&x| x as u32).sum()
    }

    /// Checks the fractional-matching constraints in `g`, and exact
    /// saturation when `perfect` is set.
    pub fn validate(&self, g: &Graph, perfect: bool) -> Result<(), WitnessError> {
        for (&(u, v), &x) in &self.values {
            if x > 2 {
                return Err(WitnessError::BadValue { u, v, value: x });
            }
            if !g.has_edge(u, v) {
                return Err(WitnessError::NotAnEdge(u, v));
            }
        }
        for (vertex, &sum) in self.vertex_sums(g.order()).iter().enumerate() {
            if sum > 2 {
                return Err(WitnessError::Overloaded { vertex, sum });
            }
            if perfect && sum != 2 {
                return Err(WitnessError::NotPerfect { vertex, sum });
            }
        }
        Ok(())
    }
}

/// Proof of non-existence: every vertex of `I` has all its neighbors in `U`,
/// so deleting `U` leaves at least `|I| > |U|` isolated vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeficiencyWitness {
    #[serde(rename = "I")]
    pub independent_set: Vec<usize>,
    #[serde(rename = "U")]
    pub blocker: Vec<usize>,
}

impl DeficiencyWitness {
    /// Checks the witness in `g - removed`; vertex ids refer to `g`.
    pub fn validate(&self, g: &Graph, removed: VertexMask) -> Result<(), WitnessError> {
        let n = g.order();
        let mut seen_i: VertexMask = 0;
        let mut seen_u: VertexMask = 0;
        for (list, seen) in [
            (&self.independent_set, &mut seen_i),
            (&self.blocker, &mut seen_u),
        ] {
            for &v in list {
                if v >= n {
                    return Err(WitnessError::OutOfRange(v));
                }
                if removed >> v & 1 == 1 {
                    return Err(WitnessError::Removed(v));
                }
                if *seen >> v & 1 == 1 {
                    return Err(WitnessError::Repeated(v));
                }
                *seen |= 1 << v;
            }
        }
        if seen_i & seen_u != 0 {
            return Err(WitnessError::Overlap(seen_i.trailing_zeros() as usize));
        }
        let alive = g.vertex_mask() & !removed;
        for &v in &self.independent_set {
            let nbrs = g.neighbors(v) & alive;
            if nbrs & seen_i != 0 {
                return Err(WitnessError::NotIndependent(v, (nbrs & seen_i).trailing_zeros() as usize));
            }
            if nbrs & !seen_u != 0 {
                return Err(WitnessError::Escapes(v, (nbrs & !seen_u).trailing_zeros() as usize));
            }
        }
        if self.independent_set.len() <= self.blocker.len() {
            return Err(WitnessError::NotDeficient {
                i: self.independent_set.len(),
                u: self.blocker.len(),
            });
        }
        Ok(())
    }

    pub fn independent_mask(&self) -> VertexMask {
        mask_of(&self.independent_set)
    }

    pub fn blocker_mask(&self) -> VertexMask {
        mask_of(&self.blocker)
    }
}

/// Proof that no perfect matching exists: `G - A` has more odd components
/// than `|A|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TutteBarrier {
    #[serde(rename = "A")]
    pub barrier: Vec<usize>,
    pub odd_components: usize,
}

impl TutteBarrier {
    /// Checks the barrier in `g - removed`; vertex ids refer to `g`.
    pub fn validate(&self, g: &Graph, removed: VertexMask) -> Result<(), WitnessError> {
        let n = g.order();
        let mut a: VertexMask = 0;
        for &v in &self.barrier {
            if v >= n {
                return Err(WitnessError::OutOfRange(v));
            }
            if removed >> v & 1 == 1 {
                return Err(WitnessError::Removed(v));
            }
            if a >> v & 1 == 1 {
                return Err(WitnessError::Repeated(v));
            }
            a |= 1 << v;
        }
        let found = odd_components(g, g.vertex_mask() & !removed & !a);
        if found != self.odd_components {
            return Err(WitnessError::OddCount {
                claimed: self.odd_components,
                found,
            });
        }
        if found <= self.barrier.len() {
            return Err(WitnessError::NotABarrier {
                odd: found,
                barrier: self.barrier.len(),
            });
        }
        Ok(())
    }
}

/// Number of odd components of the subgraph induced on `alive`.
pub(crate) fn odd_components(g: &Graph, alive: VertexMask) -> usize {
    let mut left = alive;
    let mut odd = 0;
    while left != 0 {
        let mut comp: VertexMask = 1 << left.trailing_zeros();
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = g.neighbors(v) & alive & !comp;
            comp |= fresh;
            frontier |= fresh;
        }
        odd += comp.count_ones() as usize % 2;
        left &= !comp;
    }
    odd
}

/// A fractional perfect matching in factor form and as an assignment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpmCertificate {
    pub factor: EdgeOddCycleFactor,
    pub assignment: HalfIntegralAssignment,
}

impl FpmCertificate {
    pub fn validate(&self, g: &Graph, forced: &MatchingSpec) -> Result<(), WitnessError> {
        self.factor.validate(g, forced)?;
        self.assignment.validate(g, true)?;
        for &(u, v) in forced.edges() {
            if self.assignment.get(u, v) != 2 {
                return Err(WitnessError::MissingForced(u, v));
            }
        }
        Ok(())
    }
}
