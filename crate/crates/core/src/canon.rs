//! Canonical labelling by partition refinement and individualisation.
//!
//! The search explores the individualisation tree below an equitable
//! partition and keeps the lexicographically largest relabelled adjacency.
//! Interchangeable twins (same neighbourhood outside the pair) lead to
//! isomorphic subtrees, so only one representative per twin class is
//! expanded at each node. That keeps complete and edgeless graphs linear.

use crate::graph::{Graph, Vertex};

type Partition = Vec<Vec<Vertex>>;

/// Canonical relabelling of `g`: isomorphic inputs yield identical graphs.
pub fn canonical_form(g: &Graph) -> Graph {
    canonical_labeling(g).0
}

/// The canonical graph together with the labelling `old -> new` that
/// produces it.
pub fn canonical_labeling(g: &Graph) -> (Graph, Vec<Vertex>) {
    let n = g.n();
    if n == 0 {
        return (g.clone(), Vec::new());
    }
    let mut cells: Partition = vec![(0..n).collect()];
    refine(g, &mut cells);
    let mut best: Option<(Graph, Vec<Vertex>)> = None;
    search(g, cells, &mut best);
    best.expect("search visits at least one leaf")
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

fn search(g: &Graph, cells: Partition, best: &mut Option<(Graph, Vec<Vertex>)>) {
    let Some(target) = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i)
    else {
        let mut perm = vec![0; g.n()];
        for (pos, cell) in cells.iter().enumerate() {
            perm[cell[0]] = pos;
        }
        let candidate = g.relabel(&perm);
        if best.as_ref().is_none_or(|(b, _)| candidate.rows() > b.rows()) {
            *best = Some((candidate, perm));
        }
        return;
    };

    let mut tried: Vec<Vertex> = Vec::new();
    for &v in &cells[target] {
        if tried.iter().any(|&u| are_twins(g, u, v)) {
            continue;
        }
        tried.push(v);
        let mut child = Vec::with_capacity(cells.len() + 1);
        child.extend_from_slice(&cells[..target]);
        child.push(vec![v]);
        child.push(cells[target].iter().copied().filter(|&u| u != v).collect());
        child.extend_from_slice(&cells[target + 1..]);
        refine(g, &mut child);
        search(g, child, best);
    }
}

#[inline]
fn are_twins(g: &Graph, u: Vertex, v: Vertex) -> bool {
    (g.neighbors(u) ^ g.neighbors(v)) & !(1u64 << u | 1u64 << v) == 0
}

/// Splits cells by neighbour counts into every current cell until stable.
/// Sub-cells are ordered by their count signature, which keeps the result
/// invariant under relabelling.
fn refine(g: &Graph, cells: &mut Partition) {
    loop {
        let masks: Vec<u64> = cells.iter().map(|c| c.iter().fold(0, |m, &v| m | 1 << v)).collect();
        let mut next: Partition = Vec::with_capacity(cells.len());
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, Vertex)> = cell
                .iter()
                .map(|&v| {
                    let row = g.neighbors(v);
                    (masks.iter().map(|m| (row & m).count_ones()).collect(), v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        let stable = next.len() == cells.len();
        *cells = next;
        if stable {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // maximum relabelled adjacency over all n! permutations
    fn brute_force_canonical(g: &Graph) -> Vec<u64> {
        fn permute(k: usize, perm: &mut Vec<usize>, g: &Graph, best: &mut Vec<u64>) {
            if k == perm.len() {
                let rows = g.relabel(perm).rows().to_vec();
                if rows > *best {
                    *best = rows;
                }
                return;
            }
            for i in k..perm.len() {
                perm.swap(k, i);
                permute(k + 1, perm, g, best);
                perm.swap(k, i);
            }
        }
        let mut perm: Vec<usize> = (0..g.n()).collect();
        let mut best = Vec::new();
        permute(0, &mut perm, g, &mut best);
        best
    }

    fn random_graph(n: usize, bits: u64) -> Graph {
        let mut k = 0;
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if bits >> (k % 64) & 1 == 1 {
                    edges.push((u, v));
                }
                k += 1;
            }
        }
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn symmetric_graphs() {
        for n in 1..=10 {
            let k = Graph::complete(n).unwrap();
            assert_eq!(canonical_form(&k), k);
            let e = Graph::empty(n).unwrap();
            assert_eq!(canonical_form(&e), e);
        }
        let p = Graph::petersen();
        let shuffled = p.relabel(&[3, 7, 1, 9, 0, 2, 8, 5, 6, 4]);
        assert_eq!(canonical_form(&p), canonical_form(&shuffled));
        assert!(!are_isomorphic(&p, &Graph::cycle(10).unwrap()));
    }

    #[test]
    fn labeling_reproduces_form() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5)]).unwrap();
        let (c, perm) = canonical_labeling(&g);
        assert_eq!(g.relabel(&perm), c);
    }

    proptest! {
        #[test]
        fn invariant_under_relabelling(n in 1usize..=8, bits in any::<u64>(), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let g = random_graph(n, bits);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(canonical_form(&g), canonical_form(&g.relabel(&perm)));
        }

        #[test]
        fn separates_like_brute_force(n in 1usize..=6, a in any::<u64>(), b in any::<u64>()) {
            let (ga, gb) = (random_graph(n, a), random_graph(n, b));
            let same_brute = brute_force_canonical(&ga) == brute_force_canonical(&gb);
            prop_assert_eq!(canonical_form(&ga) == canonical_form(&gb), same_brute);
        }
    }
}
