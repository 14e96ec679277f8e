use alloc::vec;
use alloc::vec::Vec;

use super::{mask_vertices, VertexMask, MAX_VERTICES};

/// A bipartite graph stored as left-indexed bitsets over the right side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n_left: usize,
    n_right: usize,
    adj: Vec<VertexMask>,
}

impl BipartiteGraph {
    pub fn new(n_left: usize, n_right: usize) -> Self {
        assert!(n_left <= MAX_VERTICES && n_right <= MAX_VERTICES);
        BipartiteGraph {
            n_left,
            n_right,
            adj: vec![0; n_left],
        }
    }

    pub(crate) fn from_rows(n_right: usize, adj: Vec<VertexMask>) -> Self {
        BipartiteGraph {
            n_left: adj.len(),
            n_right,
            adj,
        }
    }

    pub fn add_edge(&mut self, left: usize, right: usize) {
        assert!(left < self.n_left && right < self.n_right);
        self.adj[left] |= 1 << right;
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    pub fn neighbors(&self, left: usize) -> VertexMask {
        self.adj[left]
    }

    pub fn has_edge(&self, left: usize, right: usize) -> bool {
        self.adj[left] >> right & 1 == 1
    }

    pub fn left_degree(&self, left: usize) -> usize {
        self.adj[left].count_ones() as usize
    }

    pub fn right_degree(&self, right: usize) -> usize {
        self.adj.iter().filter(|&&m| m >> right & 1 == 1).count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n_left).flat_map(move |u| mask_vertices(self.adj[u]).map(move |v| (u, v)))
    }

    /// The same graph with the two sides exchanged.
    pub fn swapped(&self) -> BipartiteGraph {
        let mut out = BipartiteGraph::new(self.n_right, self.n_left);
        for (u, v) in self.edges() {
            out.add_edge(v, u);
        }
        out
    }

    /// Number of connected components, counting isolated vertices.
    pub fn component_count(&self) -> usize {
        let mut seen_left: VertexMask = 0;
        let mut seen_right: VertexMask = 0;
        let mut count = 0;
        for start in 0..self.n_left {
            if seen_left >> start & 1 == 1 {
                continue;
            }
            count += 1;
            let mut frontier_left: VertexMask = 1 << start;
            seen_left |= frontier_left;
            while frontier_left != 0 {
                let mut right = 0;
                for u in mask_vertices(frontier_left) {
                    right |= self.adj[u];
                }
                right &= !seen_right;
                seen_right |= right;
                let mut left = 0;
                for (u, &m) in self.adj.iter().enumerate() {
                    if m & right != 0 {
                        left |= 1 << u;
                    }
                }
                frontier_left = left & !seen_left;
                seen_left |= frontier_left;
            }
        }
        let right_all = if self.n_right == 64 { u64::MAX } else { (1u64 << self.n_right) - 1 };
        count + (right_all & !seen_right).count_ones() as usize
    }
}
