use serde::Serialize;

use crate::graph::{Bits, Graph, Vertex};

pub const INFINITY: usize = usize::MAX;

/// All-pairs shortest-path lengths with derived eccentricities.
///
/// Unreachable pairs carry [`INFINITY`], which exceeds every finite
/// distance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceProfile {
    n: usize,
    distances: Vec<usize>,
    pub eccentricities: Vec<usize>,
    pub radius: usize,
    pub diameter: usize,
}

impl DistanceProfile {
    pub fn of(g: &Graph) -> Self {
        let n = g.n();
        let mut distances = vec![INFINITY; n * n];
        for s in 0..n {
            let row = &mut distances[s * n..(s + 1) * n];
            let mut seen = 1u64 << s;
            let mut frontier = seen;
            let mut depth = 0;
            while frontier != 0 {
                for v in Bits(frontier) {
                    row[v] = depth;
                }
                let next = Bits(frontier).fold(0, |m, v| m | g.neighbors(v)) & !seen;
                seen |= next;
                frontier = next;
                depth += 1;
            }
        }
        let eccentricities: Vec<usize> = (0..n)
            .map(|u| distances[u * n..(u + 1) * n].iter().copied().max().unwrap_or(0))
            .collect();
        let radius = eccentricities.iter().copied().min().unwrap_or(0);
        let diameter = eccentricities.iter().copied().max().unwrap_or(0);
        DistanceProfile {
            n,
            distances,
            eccentricities,
            radius,
            diameter,
        }
    }

    pub fn infinity(&self) -> usize {
        INFINITY
    }

    #[inline]
    pub fn distance(&self, u: Vertex, v: Vertex) -> usize {
        self.distances[u * self.n + v]
    }

    pub fn is_finite(&self, d: usize) -> bool {
        d != INFINITY
    }

    /// Minimum distance from `u` to a member of `set`; infinity for the
    /// empty set.
    pub fn distance_to_set(&self, u: Vertex, set: u64) -> usize {
        Bits(set).map(|v| self.distance(u, v)).min().unwrap_or(INFINITY)
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.diameter != INFINITY
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Floyd-Warshall over the edge list, independent of the BFS path.
    fn floyd(g: &Graph) -> Vec<Vec<usize>> {
        let n = g.n();
        let mut d = vec![vec![INFINITY; n]; n];
        for (u, row) in d.iter_mut().enumerate() {
            row[u] = 0;
        }
        for e in g.edges() {
            d[e.0][e.1] = 1;
            d[e.1][e.0] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = d[i][k].saturating_add(d[k][j]);
                    if via < d[i][j] {
                        d[i][j] = via;
                    }
                }
            }
        }
        d
    }

    #[test]
    fn small_examples() {
        let k4 = DistanceProfile::of(&Graph::complete(4).unwrap());
        assert_eq!((k4.radius, k4.diameter), (1, 1));
        let c4 = DistanceProfile::of(&Graph::cycle(4).unwrap());
        assert_eq!((c4.radius, c4.diameter), (2, 2));
        let p4 = DistanceProfile::of(&Graph::path(4).unwrap());
        assert_eq!((p4.radius, p4.diameter), (2, 3));
        assert_eq!(p4.eccentricities, vec![3, 2, 2, 3]);
    }

    #[test]
    fn disconnected_pairs_are_infinite() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let p = DistanceProfile::of(&g);
        assert_eq!(p.distance(0, 2), p.infinity());
        assert!(!p.is_finite(p.diameter));
        assert!(!p.is_connected());
        assert_eq!(p.distance_to_set(2, 0b011), INFINITY);
        assert_eq!(p.distance_to_set(0, 0), INFINITY);
        // two isolated vertices must not look like eccentricity 2
        let e2 = DistanceProfile::of(&Graph::empty(2).unwrap());
        assert_eq!((e2.radius, e2.diameter), (INFINITY, INFINITY));
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn agrees_with_floyd_on_all_graphs_up_to_six_vertices() {
        for n in 1..=6usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for bits in 0u32..(1 << pairs.len()) {
                let g = Graph::from_edges(
                    n,
                    pairs
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| bits >> i & 1 == 1)
                        .map(|(_, &p)| p),
                )
                .unwrap();
                let p = DistanceProfile::of(&g);
                let d = floyd(&g);
                for u in 0..n {
                    for v in 0..n {
                        assert_eq!(p.distance(u, v), d[u][v]);
                    }
                }
                if p.is_connected() {
                    assert!(p.radius <= p.diameter && p.diameter <= 2 * p.radius);
                }
            }
        }
    }
}
