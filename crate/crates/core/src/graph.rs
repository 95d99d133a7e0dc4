//! Simple undirected graphs on at most 64 vertices.
//!
//! Vertices are the dense identifiers `0..n`. Each vertex owns a `u64`
//! neighbourhood mask, so set predicates such as independence or common
//! neighbourhoods reduce to a handful of bitwise operations.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest vertex count the bitset representation supports.
pub const MAX_VERTICES: usize = 64;

pub type Vertex = usize;

/// An undirected edge, always stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(pub Vertex, pub Vertex);

impl Edge {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has {0} vertices; at most {MAX_VERTICES} are supported")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    Loop(Vertex),
    #[error("edge {0} is not present")]
    EdgeNotPresent(Edge),
    #[error("edge {0} is already present")]
    EdgeAlreadyPresent(Edge),
}

/// Bit mask with the lowest `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates over the indices of set bits in ascending order.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = Vertex;

    #[inline]
    fn next(&mut self) -> Option<Vertex> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as Vertex;
        self.0 &= self.0 - 1;
        Some(v)
    }
}

/// Packs a list of vertices into a mask.
pub fn mask_of<I: IntoIterator<Item = Vertex>>(vertices: I) -> u64 {
    vertices.into_iter().fold(0, |m, v| m | (1u64 << v))
}

/// Immutable simple graph. The null graph (`n = 0`) is allowed because the
/// core of a generalized complete bipartite graph may be empty.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "EdgeListDoc", try_from = "EdgeListDoc")]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.check_pair(u, v)?;
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    /// Builds a graph from neighbourhood masks, symmetrising and dropping
    /// any bits beyond `n` or on the diagonal.
    pub fn from_adjacency(rows: Vec<u64>) -> Result<Self, GraphError> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let full = full_mask(n);
        let mut adj = vec![0u64; n];
        for (u, row) in rows.iter().enumerate() {
            for v in Bits(row & full & !(1 << u)) {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        Ok(Graph { n, adj })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        let full = full_mask(n);
        for u in 0..n {
            g.adj[u] = full & !(1 << u);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)).filter(|&(u, v)| u != v))
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self, GraphError> {
        Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
    }

    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("static graph")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> u64 {
        self.adj[v]
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| Bits(self.adj[u] & !full_mask(u + 1)).map(move |v| Edge(u, v)))
    }

    /// Unordered non-adjacent pairs `u < v`, in lexicographic order.
    pub fn non_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let full = self.vertex_mask();
        (0..self.n).flat_map(move |u| Bits(!self.adj[u] & full & !full_mask(u + 1)).map(move |v| Edge(u, v)))
    }

    pub fn complement(&self) -> Graph {
        let full = self.vertex_mask();
        Graph {
            n: self.n,
            adj: (0..self.n).map(|u| !self.adj[u] & full & !(1 << u)).collect(),
        }
    }

    /// Returns a copy with `remove` deleted and `add` inserted.
    pub fn edit(&self, remove: Option<Edge>, add: Option<Edge>) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        if let Some(e) = remove {
            g.check_pair(e.0, e.1)?;
            if !g.has_edge(e.0, e.1) {
                return Err(GraphError::EdgeNotPresent(e));
            }
            g.toggle(e);
        }
        if let Some(e) = add {
            g.check_pair(e.0, e.1)?;
            if g.has_edge(e.0, e.1) {
                return Err(GraphError::EdgeAlreadyPresent(e));
            }
            g.toggle(e);
        }
        Ok(g)
    }

    /// `G - e` without validation; the caller guarantees `e` is present.
    pub(crate) fn without_edge(&self, e: Edge) -> Graph {
        debug_assert!(self.has_edge(e.0, e.1));
        let mut g = self.clone();
        g.toggle(e);
        g
    }

    /// `G + e` without validation; the caller guarantees `e` is absent.
    pub(crate) fn with_edge(&self, e: Edge) -> Graph {
        debug_assert!(!self.has_edge(e.0, e.1) && e.0 != e.1);
        let mut g = self.clone();
        g.toggle(e);
        g
    }

    #[inline]
    pub(crate) fn toggle(&mut self, e: Edge) {
        self.adj[e.0] ^= 1 << e.1;
        self.adj[e.1] ^= 1 << e.0;
    }

    /// Subgraph induced on `vertices`, relabelled `0..len` in the given order.
    pub fn induced(&self, vertices: &[Vertex]) -> Graph {
        let rows = vertices
            .iter()
            .map(|&u| {
                vertices
                    .iter()
                    .enumerate()
                    .filter(|&(_, &v)| self.has_edge(u, v))
                    .fold(0u64, |m, (i, _)| m | 1 << i)
            })
            .collect();
        Graph {
            n: vertices.len(),
            adj: rows,
        }
    }

    /// Relabels so that old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            for v in Bits(self.adj[u]) {
                adj[perm[u]] |= 1 << perm[v];
            }
        }
        Graph { n: self.n, adj }
    }

    /// True iff no edge joins two members of `set`.
    pub fn is_independent(&self, set: u64) -> bool {
        Bits(set).all(|v| self.adj[v] & set == 0)
    }

    /// Greedily extends `seed` to an independent set that is maximal within
    /// `allowed`, scanning candidates in the given order.
    pub fn extend_independent(&self, seed: u64, allowed: u64, order: &[Vertex]) -> u64 {
        debug_assert!(self.is_independent(seed));
        let mut set = seed;
        let mut blocked = seed | Bits(seed).fold(0, |m, v| m | self.adj[v]);
        for &v in order {
            if allowed >> v & 1 == 1 && blocked >> v & 1 == 0 {
                set |= 1 << v;
                blocked |= 1 << v | self.adj[v];
            }
        }
        set
    }

    /// Vertex sets of the connected components, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut parts = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let next = Bits(frontier).fold(0, |m, v| m | self.adj[v]) & !comp;
                comp |= next;
                frontier = next;
            }
            seen |= comp;
            parts.push(comp);
        }
        parts
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.connected_components().len() == 1
    }

    /// The centre of the induced star on `component`, if it is `K_{1,m}`
    /// with `m >= 1`. For `K_{1,1}` the smaller endpoint is reported.
    pub fn star_center(&self, component: u64) -> Option<Vertex> {
        let size = component.count_ones() as usize;
        if size < 2 {
            return None;
        }
        let center = Bits(component).find(|&v| (self.adj[v] & component).count_ones() as usize == size - 1)?;
        let leaves = component & !(1 << center);
        Bits(leaves)
            .all(|v| self.adj[v] & component == 1 << center)
            .then_some(center)
    }

    pub fn is_star(&self, component: u64) -> bool {
        self.star_center(component).is_some()
    }

    /// Triangles as sorted triples, in lexicographic order.
    pub fn triangles(&self) -> Vec<[Vertex; 3]> {
        let mut out = Vec::new();
        for u in 0..self.n {
            let higher = !full_mask(u + 1);
            for v in Bits(self.adj[u] & higher) {
                for w in Bits(self.adj[u] & self.adj[v] & !full_mask(v + 1)) {
                    out.push([u, v, w]);
                }
            }
        }
        out
    }

    pub fn triangle_count(&self) -> usize {
        self.edges()
            .map(|Edge(u, v)| (self.adj[u] & self.adj[v] & !full_mask(v + 1)).count_ones() as usize)
            .sum()
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges().all(|Edge(u, v)| self.adj[u] & self.adj[v] == 0)
    }

    fn check_pair(&self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        Ok(())
    }
}

/// Serialized shape of a graph: `{"n": 4, "edges": [[0, 1], ...]}`.
#[derive(Serialize, Deserialize)]
struct EdgeListDoc {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl From<Graph> for EdgeListDoc {
    fn from(g: Graph) -> Self {
        EdgeListDoc {
            n: g.n,
            edges: g.edges().map(|Edge(u, v)| (u, v)).collect(),
        }
    }
}

impl TryFrom<EdgeListDoc> for Graph {
    type Error = GraphError;

    fn try_from(doc: EdgeListDoc) -> Result<Self, GraphError> {
        Graph::from_edges(doc.n, doc.edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}
