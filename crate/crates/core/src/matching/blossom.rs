//! Edmonds' blossom algorithm on bitset adjacency, one BFS per free root.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::certificate::odd_components;
use super::{MatchingSpec, TutteBarrier};
use crate::graph::{mask_vertices, Graph, VertexMask};

const NONE: usize = usize::MAX;

struct Blossom<'a> {
    adj: &'a [VertexMask],
    alive: VertexMask,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
}

impl Blossom<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut on_path: VertexMask = 0;
        loop {
            a = self.base[a];
            on_path |= 1 << a;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if on_path >> b & 1 == 1 {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize, blossom: &mut VertexMask) {
        while self.base[v] != b {
            *blossom |= 1 << self.base[v] | 1 << self.base[self.mate[v]];
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// End of an augmenting path from `root`, with `parent` links set.
    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        let mut used: VertexMask = 1 << root;
        let mut queue = VecDeque::with_capacity(n);
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            for to in mask_vertices(self.adj[v] & self.alive) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let b = self.lca(v, to);
                    let mut blossom: VertexMask = 0;
                    self.mark_path(v, b, to, &mut blossom);
                    self.mark_path(to, b, v, &mut blossom);
                    for i in mask_vertices(self.alive) {
                        if blossom >> self.base[i] & 1 == 1 {
                            self.base[i] = b;
                            if used >> i & 1 == 0 {
                                used |= 1 << i;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    used |= 1 << next;
                    queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}

/// Maximum matching of the subgraph induced on `alive`, as a mate array.
fn maximum_matching(adj: &[VertexMask], alive: VertexMask) -> Vec<usize> {
    let n = adj.len();
    let mut state = Blossom {
        adj,
        alive,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n).collect(),
    };
    for v in mask_vertices(alive) {
        if state.mate[v] == NONE {
            if let Some(u) = mask_vertices(adj[v] & alive).find(|&u| state.mate[u] == NONE) {
                state.mate[v] = u;
                state.mate[u] = v;
            }
        }
    }
    for root in mask_vertices(alive) {
        if state.mate[root] == NONE {
            if let Some(end) = state.find_path(root) {
                state.augment(end);
            }
        }
    }
    state.mate
}

/// A perfect matching of `g - removed` in the ids of `g`, if one exists.
pub fn perfect_matching_without(g: &Graph, removed: VertexMask) -> Option<MatchingSpec> {
    let alive = g.vertex_mask() & !removed;
    if alive.count_ones() % 2 == 1 {
        return None;
    }
    let mate = maximum_matching(g.rows(), alive);
    let mut edges = Vec::new();
    for v in mask_vertices(alive) {
        match mate[v] {
            NONE => return None,
            u if v < u => edges.push((v, u)),
            _ => {}
        }
    }
    Some(MatchingSpec::new(edges))
}

pub fn has_perfect_matching(g: &Graph) -> bool {
    perfect_matching_without(g, 0).is_some()
}

/// A maximum matching of `g - removed` in the ids of `g`.
pub fn maximum_matching_without(g: &Graph, removed: VertexMask) -> MatchingSpec {
    let alive = g.vertex_mask() & !removed;
    let mate = maximum_matching(g.rows(), alive);
    let edges = mask_vertices(alive)
        .filter(|&v| mate[v] != NONE && v < mate[v])
        .map(|v| (v, mate[v]))
        .collect();
    MatchingSpec::new(edges)
}

/// A Tutte barrier when `g` has no perfect matching. The barrier is the
/// Gallai-Edmonds set `A`: neighbors of the vertices missed by some maximum
/// matching, which attains the Tutte-Berge deficiency `n - 2 nu`.
pub fn tutte_barrier(g: &Graph) -> Option<TutteBarrier> {
    tutte_barrier_without(g, 0)
}

/// [`tutte_barrier`] for `g - removed`, in the ids of `g`.
pub fn tutte_barrier_without(g: &Graph, removed: VertexMask) -> Option<TutteBarrier> {
    let alive = g.vertex_mask() & !removed;
    let nu = maximum_matching_without(g, removed).len();
    if 2 * nu == alive.count_ones() as usize {
        return None;
    }
    let d: VertexMask = mask_vertices(alive)
        .filter(|&v| maximum_matching_without(g, removed | 1 << v).len() == nu)
        .fold(0, |m, v| m | 1 << v);
    let a: VertexMask = mask_vertices(d).fold(0, |m, v| m | g.neighbors(v)) & alive & !d;
    let barrier = TutteBarrier {
        barrier: mask_vertices(a).collect(),
        odd_components: odd_components(g, alive & !a),
    };
    debug_assert_eq!(
        barrier.odd_components - barrier.barrier.len(),
        alive.count_ones() as usize - 2 * nu
    );
    Some(barrier)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{circulant, named};
    use crate::matching::WitnessError;

    #[test]
    fn petersen_has_a_perfect_matching() {
        let p = named::petersen();
        let m = perfect_matching_without(&p, 0).unwrap();
        assert_eq!(m.len(), 5);
        assert_eq!(m.validate(&p), Ok(()));
    }

    #[test]
    fn needs_blossoms() {
        // two triangles joined by an edge
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(has_perfect_matching(&g));
        // two triangles sharing a vertex plus a pendant vertex
        let h = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)]).unwrap();
        assert!(has_perfect_matching(&h));
        assert!(!has_perfect_matching(&named::star(3)));
        assert!(!has_perfect_matching(&named::cycle(5)));
    }

    #[test]
    fn barriers_attain_the_deficiency() {
        let star = named::star(3);
        let b = tutte_barrier(&star).unwrap();
        assert_eq!(b.barrier, vec![0]);
        assert_eq!(b.odd_components, 3);
        assert_eq!(b.validate(&star, 0), Ok(()));
        let c5 = named::cycle(5);
        assert_eq!(
            tutte_barrier(&c5),
            Some(TutteBarrier {
                barrier: vec![],
                odd_components: 1
            })
        );
        assert!(tutte_barrier(&named::petersen()).is_none());
        // two triangles hanging off a path of length 2 share the middle vertex
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 6)]).unwrap();
        let b = tutte_barrier(&g).unwrap();
        assert_eq!(b.validate(&g, 0), Ok(()));
        assert_eq!(maximum_matching_without(&g, 0).len(), 3);
        // deleting the bridge ends of the K4 pair leaves two triangles
        let k = named::k4_bridge();
        let b = tutte_barrier_without(&k, 1 << 3 | 1 << 4).unwrap();
        assert_eq!((b.barrier.len(), b.odd_components), (0, 2));
        assert_eq!(b.validate(&k, 1 << 3 | 1 << 4), Ok(()));
        assert_eq!(b.validate(&k, 1 << 3), Err(WitnessError::OddCount { claimed: 2, found: 1 }));
    }

    #[test]
    fn removal_respects_ids() {
        let c8 = circulant(8, &[1]).unwrap();
        let m = perfect_matching_without(&c8, 1 << 0 | 1 << 1).unwrap();
        assert_eq!(m.vertex_mask(), 0b1111_1100);
        assert!(perfect_matching_without(&c8, 1 << 0 | 1 << 2).is_none());
    }
}
