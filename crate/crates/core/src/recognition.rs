//! Recognition of 2-self-centered graphs and their extremal variants.
//!
//! A graph is 2-self-centered when every vertex has eccentricity exactly 2.
//! The local test used throughout: every degree lies in `2..=n-2` and every
//! non-adjacent pair has a common neighbour.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Bits, Edge, Graph, Vertex};
use crate::metric::DistanceProfile;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecognitionError {
    #[error("input graph is not 2-self-centered")]
    NotTwoSelfCentered,
}

/// Verdict of the local test, with the first violation found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwoScVerdict {
    pub is_2sc: bool,
    /// A vertex whose degree falls outside `2..=n-2`.
    pub violating_vertex: Option<Vertex>,
    /// A non-adjacent pair without a common neighbour.
    pub violating_pair: Option<Edge>,
}

fn degree_violation(g: &Graph) -> Option<Vertex> {
    let n = g.n();
    (0..n).find(|&v| {
        let d = g.degree(v);
        d < 2 || d + 2 > n
    })
}

fn pair_violation(g: &Graph) -> Option<Edge> {
    g.non_edges().find(|&Edge(u, v)| g.neighbors(u) & g.neighbors(v) == 0)
}

/// Fast boolean form of [`is_two_self_centered`].
#[inline]
pub fn is_2sc(g: &Graph) -> bool {
    g.n() > 0 && degree_violation(g).is_none() && pair_violation(g).is_none()
}

pub fn is_two_self_centered(g: &Graph) -> TwoScVerdict {
    let violating_vertex = degree_violation(g);
    let violating_pair = pair_violation(g);
    // the null graph has no eccentricities at all, so it cannot qualify
    let verdict = TwoScVerdict {
        is_2sc: g.n() > 0 && violating_vertex.is_none() && violating_pair.is_none(),
        violating_vertex,
        violating_pair,
    };
    debug_assert_eq!(
        verdict.is_2sc,
        is_2sc_by_distances(g),
        "local test disagrees with BFS on {g:?}"
    );
    verdict
}

/// Radius and diameter both equal to 2, computed from all-pairs BFS.
pub fn is_2sc_by_distances(g: &Graph) -> bool {
    let p = DistanceProfile::of(g);
    g.n() > 0 && p.radius == 2 && p.diameter == 2
}

fn require_2sc(g: &Graph) -> Result<(), RecognitionError> {
    if is_2sc(g) {
        Ok(())
    } else {
        Err(RecognitionError::NotTwoSelfCentered)
    }
}

/// One component of the complement, with its star centre when it is a star.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplementComponent {
    pub vertices: Vec<Vertex>,
    pub star_center: Option<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeMaximalCertificate {
    pub is_edge_maximal: bool,
    pub complement_connected: bool,
    pub components: Vec<ComplementComponent>,
}

/// Edge-maximality via the complement: it must be disconnected with every
/// component a star on at least two vertices.
pub fn is_edge_maximal(g: &Graph) -> Result<EdgeMaximalCertificate, RecognitionError> {
    require_2sc(g)?;
    let co = g.complement();
    let components: Vec<ComplementComponent> = co
        .connected_components()
        .into_iter()
        .map(|c| ComplementComponent {
            vertices: Bits(c).collect(),
            star_center: co.star_center(c),
        })
        .collect();
    let complement_connected = components.len() == 1;
    let is_edge_maximal = !complement_connected && components.iter().all(|c| c.star_center.is_some());
    debug_assert_eq!(is_edge_maximal, is_edge_maximal_by_definition(g));
    Ok(EdgeMaximalCertificate {
        is_edge_maximal,
        complement_connected,
        components,
    })
}

/// No absent edge can be added while staying 2-self-centered.
pub fn is_edge_maximal_by_definition(g: &Graph) -> bool {
    g.non_edges().all(|e| !is_2sc(&g.with_edge(e)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeMinimalCertificate {
    pub is_edge_minimal: bool,
    /// An edge whose removal keeps the graph 2-self-centered.
    pub removable_edge: Option<Edge>,
}

pub fn is_edge_minimal(g: &Graph) -> Result<EdgeMinimalCertificate, RecognitionError> {
    require_2sc(g)?;
    let removable_edge = removable_edge(g);
    Ok(EdgeMinimalCertificate {
        is_edge_minimal: removable_edge.is_none(),
        removable_edge,
    })
}

/// First edge, in lexicographic order, whose deletion preserves the
/// property. Only edges lying on a triangle can qualify, since the
/// endpoints of any other edge lose their only short path.
pub(crate) fn removable_edge(g: &Graph) -> Option<Edge> {
    g.edges()
        .filter(|&Edge(u, v)| g.neighbors(u) & g.neighbors(v) != 0)
        .find(|&e| is_2sc(&g.without_edge(e)))
}

pub(crate) fn is_edge_minimal_unchecked(g: &Graph) -> bool {
    removable_edge(g).is_none()
}

/// `critical` is the unique common neighbour of the non-adjacent pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CriticalTriple {
    pub critical: Vertex,
    pub pair: Edge,
}

pub fn critical_triples(g: &Graph) -> Result<Vec<CriticalTriple>, RecognitionError> {
    require_2sc(g)?;
    Ok(critical_triples_unchecked(g))
}

pub(crate) fn critical_triples_unchecked(g: &Graph) -> Vec<CriticalTriple> {
    let mut out: Vec<CriticalTriple> = g
        .non_edges()
        .filter_map(|pair| {
            let common = g.neighbors(pair.0) & g.neighbors(pair.1);
            (common.count_ones() == 1).then(|| CriticalTriple {
                critical: common.trailing_zeros() as Vertex,
                pair,
            })
        })
        .collect();
    out.sort();
    out
}

/// Vertices `w` for which `x` is critical with respect to `partner`: `w` is
/// not adjacent to `partner` and `x` is their only common neighbour.
pub fn critical_partners(g: &Graph, x: Vertex, partner: Vertex) -> u64 {
    let mut out = 0u64;
    let candidates = g.vertex_mask() & !g.neighbors(partner) & !(1 << partner);
    for w in Bits(candidates) {
        if g.neighbors(w) & g.neighbors(partner) == 1 << x {
            out |= 1 << w;
        }
    }
    out
}

/// `K_{a,b}` with `a, b >= 2`: the complement splits into exactly two
/// cliques of size at least 2.
pub fn is_complete_bipartite_2_2(g: &Graph) -> Option<(usize, usize)> {
    let co = g.complement();
    let parts = co.connected_components();
    if parts.len() != 2 {
        return None;
    }
    let clique = |c: u64| Bits(c).all(|v| co.neighbors(v) == c & !(1 << v));
    let (a, b) = (parts[0].count_ones() as usize, parts[1].count_ones() as usize);
    (a >= 2 && b >= 2 && clique(parts[0]) && clique(parts[1])).then_some((a, b))
}

/// Checks, on one graph, that "edge-minimal 2-self-centered with
/// disconnected complement" holds exactly when the graph is `K_{k,l}` with
/// `k, l >= 2`.
pub fn check_bipartite_proposition(g: &Graph) -> bool {
    let lhs = is_2sc(g) && is_edge_minimal_unchecked(g) && !g.complement().is_connected();
    lhs == is_complete_bipartite_2_2(g).is_some()
}

/// Triangle-free implies edge-minimal, for a 2-self-centered `g`.
pub fn check_triangle_free_lemma(g: &Graph) -> Result<bool, RecognitionError> {
    require_2sc(g)?;
    Ok(!g.is_triangle_free() || is_edge_minimal_unchecked(g))
}

/// Edge-minimal with no critical triple implies triangle-free.
pub fn check_triangle_free_lemma_converse(g: &Graph) -> Result<bool, RecognitionError> {
    require_2sc(g)?;
    let applies = is_edge_minimal_unchecked(g) && critical_triples_unchecked(g).is_empty();
    Ok(!applies || g.is_triangle_free())
}

/// Spanning subgraph and supergraph bracketing a 2-self-centered graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sandwich {
    pub minimal: Graph,
    pub maximal: Graph,
}

/// Greedy search: delete edges in lexicographic order while the property
/// survives, restarting after each deletion; then add absent edges the same
/// way starting from the input.
pub fn sandwich(g: &Graph) -> Result<Sandwich, RecognitionError> {
    require_2sc(g)?;
    let mut minimal = g.clone();
    loop {
        let next = minimal.edges().map(|e| minimal.without_edge(e)).find(is_2sc);
        match next {
            Some(h) => minimal = h,
            None => break,
        }
    }
    let mut maximal = g.clone();
    loop {
        let next = maximal.non_edges().map(|e| maximal.with_edge(e)).find(is_2sc);
        match next {
            Some(h) => maximal = h,
            None => break,
        }
    }
    Ok(Sandwich { minimal, maximal })
}
