//! Small named graphs used in examples and tests.

use alloc::vec::Vec;

use super::Graph;

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).expect("cycle")
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("path")
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edges(n, &edges).expect("complete graph")
}

/// `K_{1,k}` with centre 0.
pub fn star(k: usize) -> Graph {
    let edges: Vec<_> = (1..=k).map(|v| (0, v)).collect();
    Graph::from_edges(k + 1, &edges).expect("star")
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges).expect("petersen")
}

/// Two copies of `K_4` on `{0..3}` and `{4..7}` joined by the bridge `{3,4}`.
pub fn k4_bridge() -> Graph {
    let mut edges = Vec::new();
    for base in [0, 4] {
        for u in 0..4 {
            for v in u + 1..4 {
                edges.push((base + u, base + v));
            }
        }
    }
    edges.push((3, 4));
    Graph::from_edges(8, &edges).expect("k4 bridge")
}

/// The bridge edge of [`k4_bridge`].
pub const K4_BRIDGE_EDGE: (usize, usize) = (3, 4);
