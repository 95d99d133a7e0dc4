//! Oracle checks over every enumerated connected graph.

use selfcentered::canon::{canonical_form, canonical_labeling};
use selfcentered::enumeration::enumerate_connected_up_to;
use selfcentered::io::{from_graph6, to_graph6};
use selfcentered::sbic::{construct_sbic, verify_sbic};
use selfcentered::{DistanceProfile, Graph};

#[allow(clippy::needless_range_loop)]
fn floyd(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let inf = usize::MAX / 2;
    let mut d = vec![vec![inf; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for v in 0..n {
            if g.has_edge(u, v) {
                d[u][v] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d
}

#[test]
#[allow(clippy::needless_range_loop)]
fn distances_match_floyd_warshall() {
    for g in enumerate_connected_up_to(7).unwrap().iter().flatten() {
        let p = DistanceProfile::of(g);
        let d = floyd(g);
        for u in 0..g.n() {
            for v in 0..g.n() {
                assert_eq!(p.distance(u, v), d[u][v], "{} {u} {v}", to_graph6(g));
            }
            assert_eq!(p.eccentricities[u], *d[u].iter().max().unwrap());
        }
        assert_eq!(p.radius, *p.eccentricities.iter().min().unwrap());
        assert_eq!(p.diameter, *p.eccentricities.iter().max().unwrap());
    }
}

#[test]
fn sbic_construction_on_every_triangle_free_graph() {
    let mut checked = 0;
    for g in enumerate_connected_up_to(8).unwrap().iter().flatten() {
        if !g.is_triangle_free() {
            assert!(construct_sbic(g).is_err());
            continue;
        }
        let w = construct_sbic(g).unwrap();
        let report = verify_sbic(g, &w).unwrap();
        assert!(report.passes(), "{}: {:?}", to_graph6(g), report.first_failure());
        checked += 1;
    }
    // connected triangle-free graphs on 1..=8 vertices
    assert_eq!(checked, 1 + 1 + 1 + 3 + 6 + 19 + 59 + 267);
}

#[test]
fn canonical_forms_are_fixed_points() {
    for g in enumerate_connected_up_to(7).unwrap().iter().flatten() {
        assert_eq!(&canonical_form(g), g);
        let (c, perm) = canonical_labeling(g);
        assert_eq!(g.relabel(&perm), c);
        let reversed: Vec<usize> = (0..g.n()).rev().collect();
        assert_eq!(canonical_form(&g.relabel(&reversed)), c);
    }
}

#[test]
fn graph6_round_trip() {
    for g in enumerate_connected_up_to(7).unwrap().iter().flatten() {
        assert_eq!(&from_graph6(&to_graph6(g)).unwrap(), g);
    }
}
