//! The star procedure and the classification of edge-minimal
//! 2-self-centered graphs that contain triangles.
//!
//! For a triangle edge `uv`: if `u` is the only common neighbour of `v` and
//! each of `u_1..u_q`, and/or `v` is the only common neighbour of `u` and
//! each of `v_1..v_p`, the procedure deletes `uv` and adds `v u_i` and
//! `u v_j`.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Bits, Edge, Graph, Vertex};
use crate::recognition::{critical_partners, is_2sc};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("input graph is not 2-self-centered")]
    NotTwoSelfCentered,
    #[error("input graph has no triangle")]
    TriangleFree,
    #[error("{0} is not an edge of any triangle")]
    EdgeNotInTriangle(Edge),
    #[error("neither endpoint of {0} is critical for the other")]
    NoCriticalEndpoint(Edge),
}

/// Which endpoint was critical, and for which partners.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalRole {
    /// The critical endpoint.
    pub critical: Vertex,
    /// The other endpoint of the removed edge.
    pub partner: Vertex,
    /// Vertices whose only common neighbour with `partner` is `critical`.
    pub others: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub removed_edge: Edge,
    pub roles: Vec<CriticalRole>,
    pub added_edges: Vec<Edge>,
    pub triangles_before: usize,
    pub triangles_after: usize,
    /// Triangles of the result that did not exist before the step.
    pub created_triangles: Vec<[Vertex; 3]>,
    pub result_is_2sc: bool,
}

impl ReductionStep {
    /// The two guarantees each step is expected to keep.
    pub fn is_sound(&self) -> bool {
        self.result_is_2sc && self.created_triangles.is_empty() && self.triangles_after < self.triangles_before
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub final_graph: Graph,
    pub succeeded: bool,
}

fn in_triangle(g: &Graph, e: Edge) -> bool {
    g.has_edge(e.0, e.1) && g.neighbors(e.0) & g.neighbors(e.1) != 0
}

/// Applies one star step to the edge `uv`.
pub fn apply_star_procedure(g: &Graph, u: Vertex, v: Vertex) -> Result<(Graph, ReductionStep), ReductionError> {
    let e = Edge::new(u, v);
    if u >= g.n() || v >= g.n() || u == v || !in_triangle(g, e) {
        return Err(ReductionError::EdgeNotInTriangle(e));
    }
    let u_others = critical_partners(g, u, v);
    let v_others = critical_partners(g, v, u);
    if u_others == 0 && v_others == 0 {
        return Err(ReductionError::NoCriticalEndpoint(e));
    }
    let mut next = g.without_edge(e);
    let mut roles = Vec::new();
    let mut added = Vec::new();
    for (critical, partner, others) in [(u, v, u_others), (v, u, v_others)] {
        if others == 0 {
            continue;
        }
        roles.push(CriticalRole {
            critical,
            partner,
            others: Bits(others).collect(),
        });
        for w in Bits(others) {
            let new = Edge::new(partner, w);
            // partner lists are non-adjacent to the partner by construction
            debug_assert!(!next.has_edge(new.0, new.1));
            next.toggle(new);
            added.push(new);
        }
    }
    added.sort();
    let before = g.triangles();
    let after = next.triangles();
    let created_triangles: Vec<[Vertex; 3]> = after
        .iter()
        .filter(|t| before.binary_search(t).is_err())
        .copied()
        .collect();
    let step = ReductionStep {
        removed_edge: e,
        roles,
        added_edges: added,
        triangles_before: before.len(),
        triangles_after: after.len(),
        created_triangles,
        result_is_2sc: is_2sc(&next),
    };
    Ok((next, step))
}

/// Triangle edges with a critical endpoint, in the default selection
/// order: triangles lexicographically, then each triangle's edges
/// lexicographically.
pub fn qualifying_edges(g: &Graph) -> Vec<Edge> {
    let mut out = Vec::new();
    for [a, b, c] in g.triangles() {
        for e in [Edge(a, b), Edge(a, c), Edge(b, c)] {
            if !out.contains(&e) && has_critical_endpoint(g, e) {
                out.push(e);
            }
        }
    }
    out
}

fn has_critical_endpoint(g: &Graph, e: Edge) -> bool {
    critical_partners(g, e.0, e.1) != 0 || critical_partners(g, e.1, e.0) != 0
}

/// Iterates the procedure, always on the first qualifying edge, until the
/// graph is triangle-free or no triangle edge has a critical endpoint. The
/// run also stops if it exceeds the initial triangle count or a step leaves
/// the class.
pub fn reduce_to_triangle_free(g: &Graph) -> Result<ReductionTrace, ReductionError> {
    if !is_2sc(g) {
        return Err(ReductionError::NotTwoSelfCentered);
    }
    let budget = g.triangle_count();
    let mut current = g.clone();
    let mut steps = Vec::new();
    while !current.is_triangle_free() && steps.len() < budget {
        let Some(&e) = qualifying_edges(&current).first() else {
            break;
        };
        let (next, step) = apply_star_procedure(&current, e.0, e.1)?;
        let ok = step.result_is_2sc;
        steps.push(step);
        current = next;
        if !ok {
            break;
        }
    }
    let succeeded = current.is_triangle_free() && is_2sc(&current);
    Ok(ReductionTrace {
        steps,
        final_graph: current,
        succeeded,
    })
}

/// Evidence for the triangle classification of one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleClassification {
    /// Every triangle edge has an endpoint critical for the other.
    pub every_triangle_edge_critical: bool,
    /// First triangle edge without a critical endpoint.
    pub uncritical_edge: Option<Edge>,
    pub trace: ReductionTrace,
    pub is_edge_minimal: bool,
}

/// Edge-minimality of a 2-self-centered graph with triangles, decided by
/// the critical-endpoint condition together with a successful reduction.
pub fn classify_edge_minimal_with_triangles(g: &Graph) -> Result<TriangleClassification, ReductionError> {
    if !is_2sc(g) {
        return Err(ReductionError::NotTwoSelfCentered);
    }
    if g.is_triangle_free() {
        return Err(ReductionError::TriangleFree);
    }
    let uncritical_edge = g
        .triangles()
        .into_iter()
        .flat_map(|[a, b, c]| [Edge(a, b), Edge(a, c), Edge(b, c)])
        .find(|&e| !has_critical_endpoint(g, e));
    let trace = reduce_to_triangle_free(g)?;
    let every_triangle_edge_critical = uncritical_edge.is_none();
    Ok(TriangleClassification {
        every_triangle_edge_critical,
        uncritical_edge,
        is_edge_minimal: every_triangle_edge_critical && trace.succeeded,
        trace,
    })
}

/// Outcome of trying every edge order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OrderOutcome {
    pub some_order_succeeds: bool,
    pub every_order_succeeds: bool,
}

/// Explores every sequence of qualifying-edge choices.
pub fn explore_orders(g: &Graph) -> OrderOutcome {
    fn go(g: &Graph, memo: &mut HashMap<Graph, OrderOutcome>) -> OrderOutcome {
        if let Some(&o) = memo.get(g) {
            return o;
        }
        let outcome = if g.is_triangle_free() {
            let ok = is_2sc(g);
            OrderOutcome {
                some_order_succeeds: ok,
                every_order_succeeds: ok,
            }
        } else {
            let edges = qualifying_edges(g);
            if edges.is_empty() {
                OrderOutcome::default()
            } else {
                let mut acc = OrderOutcome {
                    some_order_succeeds: false,
                    every_order_succeeds: true,
                };
                for e in edges {
                    let (next, step) = apply_star_procedure(g, e.0, e.1).expect("qualifying edge");
                    let child = if step.result_is_2sc && step.triangles_after < step.triangles_before {
                        go(&next, memo)
                    } else {
                        OrderOutcome::default()
                    };
                    acc.some_order_succeeds |= child.some_order_succeeds;
                    acc.every_order_succeeds &= child.every_order_succeeds;
                }
                acc
            }
        };
        memo.insert(g.clone(), outcome);
        outcome
    }
    go(g, &mut HashMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::recognition::is_edge_minimal;

    #[test]
    fn example1_step_on_6_7() {
        let (g, _) = fixtures::example1_corrected();
        let (next, step) = apply_star_procedure(&g, 6, 7).unwrap();
        assert_eq!(step.removed_edge, Edge(6, 7));
        assert!(step
            .roles
            .iter()
            .any(|r| r.critical == 6 && r.partner == 7 && r.others.contains(&4)));
        assert!(step.added_edges.contains(&Edge(4, 7)));
        assert!(is_2sc(&next));
        assert!(next.triangle_count() < g.triangle_count());
    }

    #[test]
    fn example1_reduces() {
        let (g, _) = fixtures::example1_corrected();
        let trace = reduce_to_triangle_free(&g).unwrap();
        assert!(trace.succeeded);
        assert!(!trace.steps.is_empty());
        assert!(trace.steps.iter().all(ReductionStep::is_sound));
        let c = classify_edge_minimal_with_triangles(&g).unwrap();
        assert!(c.is_edge_minimal);
    }

    #[test]
    fn precondition_errors() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(
            apply_star_procedure(&c4, 0, 1),
            Err(ReductionError::EdgeNotInTriangle(Edge(0, 1)))
        );
        // K_5 minus {01, 23}: every non-adjacent pair has three common
        // neighbours
        let g = Graph::complete(5).unwrap().edit(Some(Edge(0, 1)), None).unwrap();
        let g = g.edit(Some(Edge(2, 3)), None).unwrap();
        assert_eq!(
            apply_star_procedure(&g, 0, 2),
            Err(ReductionError::NoCriticalEndpoint(Edge(0, 2)))
        );
        assert_eq!(
            reduce_to_triangle_free(&Graph::path(4).unwrap()),
            Err(ReductionError::NotTwoSelfCentered)
        );
        assert_eq!(
            classify_edge_minimal_with_triangles(&c4),
            Err(ReductionError::TriangleFree)
        );
    }

    #[test]
    fn triangle_free_input_is_a_fixed_point() {
        let p = Graph::petersen();
        let trace = reduce_to_triangle_free(&p).unwrap();
        assert!(trace.succeeded && trace.steps.is_empty());
        assert_eq!(trace.final_graph, p);
    }

    #[test]
    fn chorded_pentagon() {
        let g = Graph::cycle(5).unwrap().with_edge(Edge(0, 2));
        assert!(!is_edge_minimal(&g).unwrap().is_edge_minimal);
        let c = classify_edge_minimal_with_triangles(&g).unwrap();
        assert!(!c.is_edge_minimal);
        assert_eq!(c.uncritical_edge, Some(Edge(0, 2)));
    }
}
