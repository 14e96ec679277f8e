//! Simple undirected graphs on at most 64 vertices with bitset adjacency.

mod bipartite;
mod iso;
pub mod named;

pub use bipartite::BipartiteGraph;
pub use iso::{are_isomorphic, are_isomorphic_with, multiplier_isomorphism, IsoConfig, IsoError};

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::classification::FamilyMember;
use crate::groups::{AbelianGroup, ConnectionSet, GroupError};

/// Largest supported vertex count; adjacency rows are `u64` bitsets.
pub const MAX_VERTICES: usize = 64;

/// A set of vertices as a bitmask.
pub type VertexMask = u64;

pub fn mask_of(vertices: &[usize]) -> VertexMask {
    vertices.iter().fold(0, |m, &v| m | 1 << v)
}

pub fn mask_vertices(mask: VertexMask) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    core::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v)
        }
    })
}

pub(crate) fn full_mask(n: usize) -> VertexMask {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("{0} vertices exceed the supported maximum of 64")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0},{1}}}")]
    DuplicateEdge(usize, usize),
    #[error("invalid Cayley data: {0}")]
    Group(#[from] GroupError),
    #[error("edges do not match the declared provenance")]
    ProvenanceMismatch,
}

/// A group together with a connection set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CayleySpec {
    pub group: AbelianGroup,
    pub connection_set: ConnectionSet,
}

/// Where a graph came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    AdHoc,
    Cayley(CayleySpec),
    /// A Cayley graph of a cyclic group, given by one residue per `±` pair.
    Circulant(CayleySpec),
    Family {
        family: FamilyMember,
        #[serde(flatten)]
        spec: CayleySpec,
    },
}

impl Provenance {
    pub fn cayley_spec(&self) -> Option<&CayleySpec> {
        match self {
            Provenance::AdHoc => None,
            Provenance::Cayley(spec) | Provenance::Circulant(spec) => Some(spec),
            Provenance::Family { spec, .. } => Some(spec),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexMask>,
    provenance: Provenance,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
            provenance: Provenance::AdHoc,
        })
    }

    /// Builds a graph from an edge list; loops and repeated edges are errors.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    /// Builds a graph from symmetric adjacency rows.
    pub(crate) fn from_rows(adj: Vec<VertexMask>, provenance: Provenance) -> Self {
        debug_assert!(adj.len() <= MAX_VERTICES);
        Graph {
            n: adj.len(),
            adj,
            provenance,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertex_mask(&self) -> VertexMask {
        full_mask(self.n)
    }

    pub fn neighbors(&self, v: usize) -> VertexMask {
        self.adj[v]
    }

    pub fn rows(&self) -> &[VertexMask] {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            mask_vertices(self.adj[u] & !full_mask(u + 1)).map(move |v| (u, v))
        })
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, |m| m.count_ones() as usize);
        (0..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// Label of a vertex: its group element for Cayley provenance, otherwise
    /// the index.
    pub fn vertex_label(&self, v: usize) -> String {
        match self.provenance.cayley_spec() {
            Some(spec) => spec.group.element(v).to_string(),
            None => v.to_string(),
        }
    }

    /// Whether every vertex is reachable from vertex 0.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen: VertexMask = 1;
        let mut frontier: VertexMask = 1;
        while frontier != 0 {
            let mut next = 0;
            for v in mask_vertices(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == self.vertex_mask()
    }

    /// Subgraph induced on the vertices outside `removed`, renumbered in
    /// increasing order. The returned map sends new indices to old ones.
    pub fn delete_vertices(&self, removed: VertexMask) -> (Graph, Vec<usize>) {
        let keep = self.vertex_mask() & !removed;
        let map: Vec<usize> = mask_vertices(keep).collect();
        let rows = map
            .iter()
            .map(|&old| compress(self.adj[old] & keep, keep))
            .collect();
        (Graph::from_rows(rows, Provenance::AdHoc), map)
    }

    /// Image of the graph under `perm` (vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0; self.n];
        for (u, v) in self.edges() {
            adj[perm[u]] |= 1 << perm[v];
            adj[perm[v]] |= 1 << perm[u];
        }
        Graph::from_rows(adj, Provenance::AdHoc)
    }

    /// Bipartite double cover: left copy `v+`, right copy `v-`, and edges
    /// `u+ v-`, `v+ u-` for each edge `uv`.
    pub fn bipartite_double_cover(&self) -> BipartiteGraph {
        BipartiteGraph::from_rows(self.n, self.adj.clone())
    }
}

/// Packs the bits of `bits` that lie inside `keep` into the low positions.
fn compress(bits: VertexMask, keep: VertexMask) -> VertexMask {
    mask_vertices(keep)
        .enumerate()
        .filter(|&(_, v)| bits >> v & 1 == 1)
        .fold(0, |out, (pos, _)| out | 1 << pos)
}

/// `Cay(A; S)`: vertex `i` is the `i`-th element in lexicographic order and
/// `i ~ j` iff `element(j) - element(i)` lies in `S`.
pub fn cayley_graph(group: &AbelianGroup, set: &ConnectionSet) -> Result<Graph, GraphError> {
    let set = ConnectionSet::new(group, set.elements().to_vec())?;
    let n = group.order();
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n));
    }
    let offsets = set.indices(group);
    let adj = (0..n)
        .map(|v| offsets.iter().fold(0, |m, &s| m | 1 << group.add_idx(v, s)))
        .collect();
    Ok(Graph::from_rows(
        adj,
        Provenance::Cayley(CayleySpec {
            group: group.clone(),
            connection_set: set,
        }),
    ))
}

/// `Circ(n; S)` with `S` closed under negation; residues may be given one per
/// `±` pair.
pub fn circulant(n: u32, residues: &[i64]) -> Result<Graph, GraphError> {
    let group = AbelianGroup::cyclic(n)?;
    let set = ConnectionSet::from_residues(&group, residues)?;
    let g = cayley_graph(&group, &set)?;
    let spec = g.provenance.cayley_spec().cloned().expect("cayley provenance");
    Ok(g.with_provenance(Provenance::Circulant(spec)))
}

/// Wire form used by serde: `{"n", "edges", "provenance"}`.
#[derive(Serialize, Deserialize)]
struct GraphWire {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default = "adhoc")]
    provenance: Provenance,
}

fn adhoc() -> Provenance {
    Provenance::AdHoc
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphWire {
            n: self.n,
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
            provenance: self.provenance.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = GraphWire::deserialize(deserializer)?;
        let edges: Vec<(usize, usize)> = wire.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_parts(wire.n, &edges, wire.provenance).map_err(serde::de::Error::custom)
    }
}

impl Graph {
    /// Rebuilds a graph from an edge list and a claimed provenance, checking
    /// that Cayley provenance agrees with the edges.
    pub fn from_parts(
        n: usize,
        edges: &[(usize, usize)],
        provenance: Provenance,
    ) -> Result<Graph, GraphError> {
        let g = Graph::from_edges(n, edges)?;
        if let Some(spec) = provenance.cayley_spec() {
            let expected = cayley_graph(&spec.group, &spec.connection_set)?;
            if expected.adj != g.adj {
                return Err(GraphError::ProvenanceMismatch);
            }
        }
        Ok(g.with_provenance(provenance))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupElement;

    #[test]
    fn cycle_from_circulant() {
        let c5 = circulant(5, &[1]).unwrap();
        assert_eq!(c5.order(), 5);
        assert_eq!(c5.regular_degree(), Some(2));
        assert!(c5.is_connected());
        assert_eq!(c5.edge_count(), 5);
    }

    #[test]
    fn cayley_degrees() {
        let g9 = circulant(9, &[1, 2, 4]).unwrap();
        assert_eq!(g9.regular_degree(), Some(6));
        let z33 = AbelianGroup::new(vec![3, 3]).unwrap();
        let s = ConnectionSet::closure(
            &z33,
            vec![GroupElement::new(vec![1, 0]), GroupElement::new(vec![0, 1])],
        )
        .unwrap();
        let torus = cayley_graph(&z33, &s).unwrap();
        assert_eq!(torus.regular_degree(), Some(4));
        assert_eq!(torus.vertex_label(5), "(1,2)");
        assert!(torus.has_edge(0, 3)); // (0,0) ~ (1,0)
        let c6 = circulant(6, &[1, 3]).unwrap();
        assert_eq!(c6.regular_degree(), Some(3));
        let mobius = circulant(8, &[1, 4]).unwrap();
        assert_eq!(mobius.regular_degree(), Some(3));
    }

    #[test]
    fn cayley_rejects_foreign_elements() {
        let z9 = AbelianGroup::cyclic(9).unwrap();
        let z33 = AbelianGroup::new(vec![3, 3]).unwrap();
        let s = ConnectionSet::from_residues(&z9, &[1]).unwrap();
        assert!(matches!(cayley_graph(&z33, &s), Err(GraphError::Group(_))));
    }

    #[test]
    fn connectivity() {
        assert!(!circulant(9, &[3]).unwrap().is_connected());
        assert!(circulant(9, &[1]).unwrap().is_connected());
    }

    #[test]
    fn deleting_vertices() {
        let c5 = circulant(5, &[1]).unwrap();
        let (p4, map) = c5.delete_vertices(mask_of(&[0]));
        assert_eq!(map, vec![1, 2, 3, 4]);
        assert_eq!(p4.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);

        let g = circulant(9, &[1, 2]).unwrap();
        let (h, map) = g.delete_vertices(mask_of(&[0, 1, 3, 4]));
        assert_eq!(h.order(), 5);
        let isolated: Vec<usize> = (0..h.order()).filter(|&v| h.degree(v) == 0).map(|v| map[v]).collect();
        assert_eq!(isolated, vec![2]);

        let (same, _) = g.delete_vertices(0);
        assert_eq!(same.rows(), g.rows());
    }

    #[test]
    fn double_cover_shapes() {
        // C3 doubles to C6: 2-regular and connected as a bipartite graph.
        let c3 = named::cycle(3);
        let b = c3.bipartite_double_cover();
        assert!((0..3).all(|v| b.left_degree(v) == 2 && b.right_degree(v) == 2));
        assert_eq!(b.component_count(), 1);
        // C4 doubles to two copies of C4.
        assert_eq!(named::cycle(4).bipartite_double_cover().component_count(), 2);
        // K2 doubles to two disjoint edges.
        let k2 = named::complete(2).bipartite_double_cover();
        assert_eq!(k2.edge_count(), 2);
        assert_eq!(k2.component_count(), 2);
    }

    #[test]
    fn edge_list_errors() {
        assert_eq!(Graph::from_edges(2, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::from_edges(2, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(Graph::empty(65), Err(GraphError::TooManyVertices(65)));
    }

    #[test]
    fn provenance_must_match_edges() {
        let c5 = circulant(5, &[1]).unwrap();
        let prov = c5.provenance().clone();
        let edges: Vec<_> = c5.edges().collect();
        assert!(Graph::from_parts(5, &edges, prov.clone()).is_ok());
        assert_eq!(
            Graph::from_parts(5, &edges[..4], prov),
            Err(GraphError::ProvenanceMismatch)
        );
    }
}
