//! Exact isomorphism testing by individualization and refinement.
//!
//! Both graphs are colored jointly: a vertex's new color is the rank of its
//! signature (old color, neighbor counts per color) among the signatures
//! occurring in either graph, so color names agree across the two graphs. A
//! mismatch in color-class sizes refutes the current branch. The search
//! individualizes one vertex of the smallest nontrivial cell of the first
//! graph against every vertex of the matching cell of the second. Leaves are
//! checked edge by edge before a bijection is returned.

use alloc::vec;
use alloc::vec::Vec;

use super::{mask_vertices, Graph};
use crate::groups::gcd;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoConfig {
    pub max_vertices: usize,
    /// Search-tree nodes allowed before giving up.
    pub max_nodes: u64,
}

impl Default for IsoConfig {
    fn default() -> Self {
        IsoConfig {
            max_vertices: 64,
            max_nodes: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IsoError {
    #[error("iso budget exceeded: graph on {n} vertices is above the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("iso budget exceeded: more than {0} search nodes")]
    NodeBudget(u64),
}

/// A bijection `phi` with `uv ∈ E(g) <=> phi(u)phi(v) ∈ E(h)`, if one exists.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>, IsoError> {
    are_isomorphic_with(g, h, &IsoConfig::default())
}

pub fn are_isomorphic_with(
    g: &Graph,
    h: &Graph,
    config: &IsoConfig,
) -> Result<Option<Vec<usize>>, IsoError> {
    let n = g.order();
    for size in [g.order(), h.order()] {
        if size > config.max_vertices {
            return Err(IsoError::TooLarge {
                n: size,
                cap: config.max_vertices,
            });
        }
    }
    if n != h.order() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let mut dg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(None);
    }
    let mut search = Search {
        g,
        h,
        nodes: 0,
        max_nodes: config.max_nodes,
    };
    let Some((cg, ch, k)) = refine(g, h, vec![0; n], vec![0; n], 1) else {
        return Ok(None);
    };
    let found = search.run(cg, ch, k)?;
    if let Some(phi) = &found {
        debug_assert!(is_isomorphism(g, h, phi));
    }
    Ok(found)
}

/// Checks a claimed isomorphism edge by edge.
pub(crate) fn is_isomorphism(g: &Graph, h: &Graph, phi: &[usize]) -> bool {
    let n = g.order();
    if h.order() != n || phi.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &x in phi {
        if x >= n || hit[x] {
            return false;
        }
        hit[x] = true;
    }
    (0..n).all(|u| {
        let image = mask_vertices(g.neighbors(u)).fold(0u64, |m, v| m | 1 << phi[v]);
        image == h.neighbors(phi[u])
    })
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    nodes: u64,
    max_nodes: u64,
}

impl Search<'_> {
    fn run(&mut self, cg: Vec<u32>, ch: Vec<u32>, k: u32) -> Result<Option<Vec<usize>>, IsoError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(IsoError::NodeBudget(self.max_nodes));
        }
        let n = cg.len();
        let mut sizes = vec![0usize; k as usize];
        for &c in &cg {
            sizes[c as usize] += 1;
        }
        let target = (0..k as usize)
            .filter(|&c| sizes[c] > 1)
            .min_by_key(|&c| (sizes[c], c));
        let Some(target) = target else {
            let mut phi = vec![0usize; n];
            let mut by_color = vec![0usize; k as usize];
            for (v, &c) in ch.iter().enumerate() {
                by_color[c as usize] = v;
            }
            for (u, &c) in cg.iter().enumerate() {
                phi[u] = by_color[c as usize];
            }
            return Ok(is_isomorphism(self.g, self.h, &phi).then_some(phi));
        };
        let target = target as u32;
        let u = cg.iter().position(|&c| c == target).expect("nonempty cell");
        for v in (0..n).filter(|&v| ch[v] == target) {
            let mut cg2 = cg.clone();
            let mut ch2 = ch.clone();
            cg2[u] = k;
            ch2[v] = k;
            if let Some((cg3, ch3, k3)) = refine(self.g, self.h, cg2, ch2, k + 1) {
                if let Some(phi) = self.run(cg3, ch3, k3)? {
                    return Ok(Some(phi));
                }
            }
        }
        Ok(None)
    }
}

/// Joint color refinement to a stable coloring. Returns `None` as soon as
/// the color-class sizes of the two graphs differ.
fn refine(
    g: &Graph,
    h: &Graph,
    mut cg: Vec<u32>,
    mut ch: Vec<u32>,
    mut k: u32,
) -> Option<(Vec<u32>, Vec<u32>, u32)> {
    let n = cg.len();
    loop {
        let width = k as usize + 1;
        let signature = |graph: &Graph, colors: &[u32], v: usize, out: &mut Vec<u32>| {
            let start = out.len();
            out.resize(start + width, 0);
            out[start] = colors[v];
            for w in mask_vertices(graph.neighbors(v)) {
                out[start + 1 + colors[w] as usize] += 1;
            }
        };
        let mut sg = Vec::with_capacity(n * width);
        let mut sh = Vec::with_capacity(n * width);
        for v in 0..n {
            signature(g, &cg, v, &mut sg);
            signature(h, &ch, v, &mut sh);
        }
        let mut keys: Vec<&[u32]> = sg.chunks(width).chain(sh.chunks(width)).collect();
        keys.sort_unstable();
        keys.dedup();
        let rank = |sig: &[u32]| keys.binary_search(&sig).expect("key present") as u32;
        let new_k = keys.len() as u32;
        let ng: Vec<u32> = sg.chunks(width).map(rank).collect();
        let nh: Vec<u32> = sh.chunks(width).map(rank).collect();
        let mut balance = vec![0i32; new_k as usize];
        for (&a, &b) in ng.iter().zip(&nh) {
            balance[a as usize] += 1;
            balance[b as usize] -= 1;
        }
        if balance.iter().any(|&x| x != 0) {
            return None;
        }
        cg = ng;
        ch = nh;
        if new_k == k {
            return Some((cg, ch, k));
        }
        k = new_k;
    }
}

/// A unit `k` of `Z_n` with `k * S = T`, if any. Both sets are given as full
/// (inverse-closed) residue lists.
pub fn multiplier_isomorphism(n: u32, s: &[u32], t: &[u32]) -> Option<u32> {
    if s.len() != t.len() {
        return None;
    }
    let mut target = t.to_vec();
    target.sort_unstable();
    (1..n.max(2)).filter(|&k| gcd(k, n) == 1).find(|&k| {
        let mut image: Vec<u32> = s.iter().map(|&x| (x as u64 * k as u64 % n as u64) as u32).collect();
        image.sort_unstable();
        image == target
    })
}
