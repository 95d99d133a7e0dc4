//! Exhaustive generation of connected graphs up to isomorphism.
//!
//! Every connected graph on `n + 1` vertices has a non-cut vertex, so it is
//! some connected graph on `n` vertices plus one vertex joined to a
//! non-empty neighbour set. Level `n + 1` is therefore produced by
//! augmenting each canonical representative of level `n` in every possible
//! way and keeping one canonical form per isomorphism class.

use std::collections::HashSet;
use std::path::Path;

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::canonical_form;
use crate::graph::Graph;
use crate::io::{parse_graph6_stream, ParseError};

/// Largest order the built-in generator accepts.
pub const MAX_ENUMERATED: usize = 8;

/// Number of connected graphs on `n = 1..=8` vertices up to isomorphism.
pub const CONNECTED_COUNTS: [usize; 8] = [1, 1, 2, 6, 21, 112, 853, 11117];

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error("vertex count {0} is outside 1..={MAX_ENUMERATED}")]
    OutOfRange(usize),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
}

/// Canonical representatives of every connected graph on `n` vertices,
/// sorted by canonical adjacency.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>, EnumerationError> {
    Ok(enumerate_connected_up_to(n)?.pop().unwrap_or_default())
}

/// Levels `1..=n_max`; entry `i` holds the graphs on `i + 1` vertices.
pub fn enumerate_connected_up_to(n_max: usize) -> Result<Vec<Vec<Graph>>, EnumerationError> {
    if !(1..=MAX_ENUMERATED).contains(&n_max) {
        return Err(EnumerationError::OutOfRange(n_max));
    }
    let mut levels = vec![vec![Graph::empty(1).expect("one vertex")]];
    for _ in 1..n_max {
        let next = augment(levels.last().expect("non-empty"));
        levels.push(next);
    }
    Ok(levels)
}

fn augment(parents: &[Graph]) -> Vec<Graph> {
    let found: HashSet<Graph> = parents
        .par_iter()
        .flat_map_iter(|g| {
            let n = g.n();
            (1u64..1 << n).map(move |nbrs| {
                let mut rows = g.rows().to_vec();
                rows.push(nbrs);
                canonical_form(&Graph::from_adjacency(rows).expect("at most 8 vertices"))
            })
        })
        .collect();
    let mut out: Vec<Graph> = found.into_iter().collect();
    out.sort();
    out
}

/// Reads newline-separated graph6 records from a file.
pub fn ingest_graph6(path: impl AsRef<Path>) -> Result<Vec<Graph>, EnumerationError> {
    let path = path.as_ref();
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| EnumerationError::Io {
        path: shown.clone(),
        source,
    })?;
    parse_graph6_stream(&text).map_err(|source| EnumerationError::Parse { path: shown, source })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_levels() {
        let levels = enumerate_connected_up_to(6).unwrap();
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, CONNECTED_COUNTS[..6]);
        assert!(levels.iter().flatten().all(Graph::is_connected));
        let three = enumerate_connected(3).unwrap();
        assert!(three.contains(&canonical_form(&Graph::path(3).unwrap())));
        assert!(three.contains(&Graph::complete(3).unwrap()));
    }

    #[test]
    fn range_checked() {
        assert!(matches!(enumerate_connected(0), Err(EnumerationError::OutOfRange(0))));
        assert!(matches!(enumerate_connected(9), Err(EnumerationError::OutOfRange(9))));
    }

    #[test]
    fn ingest_reports_lines() {
        let dir = std::env::temp_dir().join(format!("selfcentered-ingest-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let empty = dir.join("empty.g6");
        std::fs::write(&empty, "").unwrap();
        assert!(ingest_graph6(&empty).unwrap().is_empty());
        let bad = dir.join("bad.g6");
        std::fs::write(&bad, "Cl\nE?\n").unwrap();
        let err = ingest_graph6(&bad).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let good = dir.join("good.g6");
        std::fs::write(&good, "Cl\n").unwrap();
        assert_eq!(ingest_graph6(&good).unwrap(), vec![Graph::cycle(4).unwrap()]);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
