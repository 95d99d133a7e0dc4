//! Named graphs used as worked examples.

use crate::graph::{Graph, Vertex};

/// Names for the dense vertex ids of a fixture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexLabels(pub Vec<String>);

impl VertexLabels {
    pub fn numeric(n: usize) -> Self {
        VertexLabels((0..n).map(|v| v.to_string()).collect())
    }

    /// Panics if `name` is unknown; fixtures are static.
    pub fn id(&self, name: &str) -> Vertex {
        self.0
            .iter()
            .position(|l| l == name)
            .unwrap_or_else(|| panic!("no vertex labelled {name:?}"))
    }
}

/// The edge list exactly as printed for the eight-vertex example with a
/// triangle on 3, 6, 7. It repeats `23` and leaves vertex 0 with degree 1,
/// so it is not 2-self-centered.
pub const EXAMPLE1_PRINTED: [(Vertex, Vertex); 11] = [
    (0, 1),
    (2, 3),
    (1, 2),
    (1, 4),
    (1, 5),
    (2, 3),
    (3, 6),
    (3, 7),
    (4, 6),
    (5, 7),
    (6, 7),
];

/// Printed list with the duplicate `23` replaced by `03`.
pub const EXAMPLE1_CORRECTED: [(Vertex, Vertex); 11] = [
    (0, 1),
    (2, 3),
    (1, 2),
    (1, 4),
    (1, 5),
    (0, 3),
    (3, 6),
    (3, 7),
    (4, 6),
    (5, 7),
    (6, 7),
];

pub fn example1_printed() -> (Graph, VertexLabels) {
    let g = Graph::from_edges(8, EXAMPLE1_PRINTED).expect("static graph");
    (g, VertexLabels::numeric(8))
}

pub fn example1_corrected() -> (Graph, VertexLabels) {
    let g = Graph::from_edges(8, EXAMPLE1_CORRECTED).expect("static graph");
    (g, VertexLabels::numeric(8))
}

/// `K_{3,3}` on parts `{p0, p1, y}` and `{q0, q1, z}` with the edge `yz`
/// replaced by the path `y - x - z`.
pub fn example2() -> (Graph, VertexLabels) {
    let names = ["p0", "p1", "y", "q0", "q1", "z", "x"];
    let mut edges: Vec<(Vertex, Vertex)> = (0..3)
        .flat_map(|a| (3..6).map(move |b| (a, b)))
        .filter(|&e| e != (2, 5))
        .collect();
    edges.extend([(6, 2), (6, 5)]);
    let g = Graph::from_edges(7, edges).expect("static graph");
    (g, VertexLabels(names.iter().map(|s| s.to_string()).collect()))
}
