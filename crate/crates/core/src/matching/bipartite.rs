use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::MatchingError;
use crate::graph::{mask_vertices, BipartiteGraph, VertexMask};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMatching {
    pub left_to_right: Vec<Option<usize>>,
    pub right_to_left: Vec<Option<usize>>,
    pub size: usize,
}

impl BipartiteMatching {
    pub fn is_perfect(&self) -> bool {
        self.size == self.left_to_right.len() && self.size == self.right_to_left.len()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left_to_right
            .iter()
            .enumerate()
            .filter_map(|(u, v)| v.map(|v| (u, v)))
    }
}

/// Vertex cover as bitmasks over the two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexCover {
    pub left: VertexMask,
    pub right: VertexMask,
}

impl VertexCover {
    pub fn size(&self) -> usize {
        (self.left.count_ones() + self.right.count_ones()) as usize
    }

    pub fn covers(&self, b: &BipartiteGraph) -> bool {
        b.edges()
            .all(|(u, v)| self.left >> u & 1 == 1 || self.right >> v & 1 == 1)
    }
}

/// Maximum matching by Hopcroft-Karp: BFS layers from the free left
/// vertices, then vertex-disjoint shortest augmenting paths by DFS.
pub fn max_bipartite_matching(b: &BipartiteGraph) -> BipartiteMatching {
    let (ml, mr) = hopcroft_karp(b);
    let size = ml.iter().filter(|&&v| v != NONE).count();
    let wrap = |xs: Vec<usize>| xs.into_iter().map(|x| (x != NONE).then_some(x)).collect();
    BipartiteMatching {
        left_to_right: wrap(ml),
        right_to_left: wrap(mr),
        size,
    }
}

pub(crate) fn hopcroft_karp(b: &BipartiteGraph) -> (Vec<usize>, Vec<usize>) {
    let nl = b.n_left();
    let mut ml = vec![NONE; nl];
    let mut mr = vec![NONE; b.n_right()];
    // greedy start
    let mut free_right: VertexMask = if b.n_right() == 64 {
        u64::MAX
    } else {
        (1u64 << b.n_right()) - 1
    };
    for (u, slot) in ml.iter_mut().enumerate() {
        let avail = b.neighbors(u) & free_right;
        if avail != 0 {
            let v = avail.trailing_zeros() as usize;
            *slot = v;
            mr[v] = u;
            free_right &= !(1 << v);
        }
    }
    let mut dist = vec![0usize; nl];
    let mut queue = VecDeque::with_capacity(nl);
    loop {
        queue.clear();
        for u in 0..nl {
            if ml[u] == NONE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = NONE;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for v in mask_vertices(b.neighbors(u)) {
                let w = mr[v];
                if w == NONE {
                    found = true;
                } else if dist[w] == NONE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            break;
        }
        let mut augmented = false;
        for u in 0..nl {
            if ml[u] == NONE && augment(b, u, &mut ml, &mut mr, &mut dist) {
                augmented = true;
            }
        }
        if !augmented {
            break;
        }
    }
    (ml, mr)
}

fn augment(
    b: &BipartiteGraph,
    u: usize,
    ml: &mut [usize],
    mr: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for v in mask_vertices(b.neighbors(u)) {
        let w = mr[v];
        if w == NONE || (dist[w] == dist[u] + 1 && augment(b, w, ml, mr, dist)) {
            ml[u] = v;
            mr[v] = u;
            return true;
        }
    }
    dist[u] = NONE;
    false
}

/// Minimum vertex cover from a maximum matching: with `Z` the vertices
/// reachable from free left vertices by alternating paths, the cover is
/// `(L \ Z) ∪ (R ∩ Z)`.
pub fn koenig_cover(
    b: &BipartiteGraph,
    matching: &BipartiteMatching,
) -> Result<VertexCover, MatchingError> {
    let mut z_left: VertexMask = 0;
    let mut z_right: VertexMask = 0;
    let mut stack: Vec<usize> = Vec::new();
    for (u, m) in matching.left_to_right.iter().enumerate() {
        if m.is_none() {
            z_left |= 1 << u;
            stack.push(u);
        }
    }
    while let Some(u) = stack.pop() {
        for v in mask_vertices(b.neighbors(u) & !z_right) {
            z_right |= 1 << v;
            match matching.right_to_left[v] {
                // a free right vertex reachable this way ends an augmenting path
                None => return Err(MatchingError::NotMaximum),
                Some(w) => {
                    if z_left >> w & 1 == 0 {
                        z_left |= 1 << w;
                        stack.push(w);
                    }
                }
            }
        }
    }
    let all_left = if b.n_left() == 64 {
        u64::MAX
    } else {
        (1u64 << b.n_left()) - 1
    };
    let cover = VertexCover {
        left: all_left & !z_left,
        right: z_right,
    };
    debug_assert_eq!(cover.size(), matching.size);
    Ok(cover)
}
