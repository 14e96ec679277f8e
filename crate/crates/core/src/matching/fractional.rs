use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use super::bipartite::{hopcroft_karp, koenig_cover, BipartiteMatching};
use super::certificate::{
    DeficiencyWitness, EdgeOddCycleFactor, FpmCertificate, MatchingSpec, WitnessError,
};
use super::MatchingError;
use crate::graph::{mask_vertices, BipartiteGraph, Graph, VertexMask};

const NONE: usize = usize::MAX;

/// A count in half-units, so `Halves(5)` is 5/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Halves(pub u32);

impl fmt::Display for Halves {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// Double cover of `g - removed`, keeping the ids of `g`. Removed vertices
/// have empty rows and columns.
fn masked_double_cover(g: &Graph, alive: VertexMask) -> BipartiteGraph {
    let rows = (0..g.order())
        .map(|v| if alive >> v & 1 == 1 { g.neighbors(v) & alive } else { 0 })
        .collect();
    BipartiteGraph::from_rows(g.order(), rows)
}

/// Outcome of the double-cover matching on `g - removed`.
enum Search {
    /// `succ[v]` is the partner of `v+`, a permutation of the alive set.
    Perfect(Vec<usize>),
    Deficient(DeficiencyWitness),
}

fn search(g: &Graph, removed: VertexMask) -> Search {
    let alive = g.vertex_mask() & !removed;
    let b = masked_double_cover(g, alive);
    let (ml, mr) = hopcroft_karp(&b);
    let matched = mask_vertices(alive).filter(|&v| ml[v] != NONE).count();
    if matched == alive.count_ones() as usize {
        return Search::Perfect(ml);
    }
    let wrap = |xs: &[usize]| xs.iter().map(|&x| (x != NONE).then_some(x)).collect();
    let matching = BipartiteMatching {
        left_to_right: wrap(&ml),
        right_to_left: wrap(&mr),
        size: matched,
    };
    let cover = koenig_cover(&b, &matching).expect("Hopcroft-Karp output is maximum");
    // c(v) = (in(v+) + in(v-)) / 2: U is c = 1, I is c = 0
    let in_both = cover.left & cover.right & alive;
    let in_neither = !cover.left & !cover.right & alive;
    Search::Deficient(DeficiencyWitness {
        independent_set: mask_vertices(in_neither).collect(),
        blocker: mask_vertices(in_both).collect(),
    })
}

/// Hot-path decision: does `g - removed` have a fractional perfect matching?
pub fn fpm_exists_without(g: &Graph, removed: VertexMask) -> bool {
    let alive = g.vertex_mask() & !removed;
    let b = masked_double_cover(g, alive);
    let (ml, _) = hopcroft_karp(&b);
    mask_vertices(alive).all(|v| ml[v] != NONE)
}

pub fn has_fpm(g: &Graph) -> bool {
    fpm_exists_without(g, 0)
}

/// Fractional matching number, twice the maximum matching of the double
/// cover divided by two, reported in half-units.
pub fn nu_fractional(g: &Graph) -> Halves {
    let (ml, _) = hopcroft_karp(&g.bipartite_double_cover());
    Halves(ml.iter().filter(|&&v| v != NONE).count() as u32)
}

/// Splits a successor permutation into a factor: 2-cycles become matched
/// edges, longer even orbits are cut into alternate edges starting at their
/// smallest vertex, odd orbits stay as odd cycles.
fn factor_from_successor(succ: &[usize], alive: VertexMask) -> EdgeOddCycleFactor {
    let mut factor = EdgeOddCycleFactor::default();
    let mut seen: VertexMask = !alive;
    for start in mask_vertices(alive) {
        if seen >> start & 1 == 1 {
            continue;
        }
        let mut orbit = Vec::new();
        let mut v = start;
        while seen >> v & 1 == 0 {
            seen |= 1 << v;
            orbit.push(v);
            v = succ[v];
        }
        // start is the smallest unseen vertex, so each orbit begins at its minimum
        if orbit.len() % 2 == 0 {
            for pair in orbit.chunks(2) {
                factor.matched_edges.push((pair[0].min(pair[1]), pair[0].max(pair[1])));
            }
        } else {
            factor.odd_cycles.push(orbit);
        }
    }
    factor.matched_edges.sort_unstable();
    factor
}

/// A fractional perfect matching of `g` that puts weight 1 on every forced
/// edge, or the reason none exists.
///
/// The search runs on `g - V(forced)`. On failure the deficiency witness is
/// re-validated in that subgraph and returned inside
/// [`MatchingError::NotExtendable`].
pub fn fpm_yes_witness(g: &Graph, forced: &MatchingSpec) -> Result<FpmCertificate, MatchingError> {
    validate_forced(g, forced)?;
    let removed = forced.vertex_mask();
    match search(g, removed) {
        Search::Perfect(succ) => {
            let mut factor = factor_from_successor(&succ, g.vertex_mask() & !removed);
            factor.matched_edges.extend_from_slice(forced.edges());
            factor.matched_edges.sort_unstable();
            let certificate = FpmCertificate {
                assignment: factor.to_assignment(),
                factor,
            };
            certificate.validate(g, forced)?;
            Ok(certificate)
        }
        Search::Deficient(witness) => {
            witness.validate(g, removed)?;
            Err(MatchingError::NotExtendable(witness))
        }
    }
}

/// A validated deficiency witness for `g - removed`, or
/// [`MatchingError::FpmExists`].
pub fn fpm_no_witness(g: &Graph, removed: VertexMask) -> Result<DeficiencyWitness, MatchingError> {
    match search(g, removed) {
        Search::Perfect(_) => Err(MatchingError::FpmExists),
        Search::Deficient(witness) => {
            witness.validate(g, removed)?;
            Ok(witness)
        }
    }
}

fn validate_forced(g: &Graph, forced: &MatchingSpec) -> Result<(), MatchingError> {
    forced.validate(g).map_err(|e| match e {
        WitnessError::NotAnEdge(u, v) => MatchingError::NotAnEdge(u, v),
        WitnessError::Repeated(v) => MatchingError::NotDisjoint(v),
        WitnessError::OutOfRange(v) => MatchingError::NotAnEdge(v, v),
        other => MatchingError::InvalidCertificate(other),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circulant, named};
    use crate::matching::HalfIntegralAssignment;

    /// Largest total over all `{0,1,2}` edge assignments meeting the vertex
    /// bound of 2 half-units.
    fn brute_nu_fractional(g: &Graph) -> u32 {
        let edges: Vec<_> = g.edges().collect();
        let mut best = 0;
        let total = 3u32.pow(edges.len() as u32);
        for code in 0..total {
            let mut a = HalfIntegralAssignment::default();
            let mut c = code;
            for &(u, v) in &edges {
                a.set(u, v, (c % 3) as u8);
                c /= 3;
            }
            if a.validate(g, false).is_ok() {
                best = best.max(a.total_halves());
            }
        }
        best
    }

    #[test]
    fn path_on_three_vertices() {
        let p3 = named::path(3);
        assert_eq!(nu_fractional(&p3), Halves(2));
        assert_eq!(brute_nu_fractional(&p3), 2);
        assert!(!has_fpm(&p3));
        let w = fpm_no_witness(&p3, 0).unwrap();
        assert_eq!(w.validate(&p3, 0), Ok(()));
    }

    #[test]
    fn nu_fractional_matches_brute_force_on_small_graphs() {
        for g in [
            named::cycle(5),
            named::star(3),
            named::path(4),
            named::complete(4),
            circulant(6, &[2]).unwrap(),
        ] {
            assert_eq!(nu_fractional(&g).0, brute_nu_fractional(&g));
        }
        assert_eq!(Halves(5).to_string(), "5/2");
        assert_eq!(Halves(4).to_string(), "2");
    }

    #[test]
    fn odd_cycle_certificate() {
        let c7 = named::cycle(7);
        let cert = fpm_yes_witness(&c7, &MatchingSpec::default()).unwrap();
        assert_eq!(cert.validate(&c7, &MatchingSpec::default()), Ok(()));
        let forced = MatchingSpec::new(vec![(0, 1)]);
        // C7 minus an edge is P5, which has no fractional perfect matching
        match fpm_yes_witness(&c7, &forced) {
            Err(MatchingError::NotExtendable(w)) => {
                assert_eq!(w.validate(&c7, forced.vertex_mask()), Ok(()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn four_cycle_plus_diameters_is_not_two_extendable() {
        let g = circulant(8, &[1, 4]).unwrap();
        let forced = MatchingSpec::new(vec![(0, 1), (3, 4)]);
        let Err(MatchingError::NotExtendable(w)) = fpm_yes_witness(&g, &forced) else {
            panic!("expected a deficiency witness");
        };
        assert!(w.independent_set.len() > w.blocker.len());
        assert_eq!(w.validate(&g, forced.vertex_mask()), Ok(()));
        assert!(!fpm_exists_without(&g, forced.vertex_mask()));
    }

    #[test]
    fn forced_edges_are_checked() {
        let c6 = named::cycle(6);
        assert_eq!(
            fpm_yes_witness(&c6, &MatchingSpec::new(vec![(0, 2)])),
            Err(MatchingError::NotAnEdge(0, 2))
        );
        assert_eq!(
            fpm_yes_witness(&c6, &MatchingSpec::new(vec![(0, 1), (1, 2)])),
            Err(MatchingError::NotDisjoint(1))
        );
        let cert = fpm_yes_witness(&c6, &MatchingSpec::new(vec![(1, 2)])).unwrap();
        assert!(cert.factor.matched_edges.contains(&(1, 2)));
        assert!(cert.factor.odd_cycles.is_empty());
    }

    #[test]
    fn witness_refuses_when_fpm_exists() {
        assert_eq!(fpm_no_witness(&named::cycle(5), 0), Err(MatchingError::FpmExists));
    }

    #[test]
    fn empty_remainder_is_trivially_matched() {
        let k2 = named::complete(2);
        let cert = fpm_yes_witness(&k2, &MatchingSpec::new(vec![(0, 1)])).unwrap();
        assert_eq!(cert.factor.matched_edges, vec![(0, 1)]);
    }
}
