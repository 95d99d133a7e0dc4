//! Text formats: graph6, a plain edge list, and DOT export.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Edge, Graph, GraphError, MAX_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("graph6: empty record")]
    Empty,
    #[error("graph6: byte {byte:#04x} at offset {offset} is outside the printable range 63..=126")]
    BadByte { offset: usize, byte: u8 },
    #[error("graph6: record has {found} data bytes, expected {expected}")]
    Length { expected: usize, found: usize },
    #[error("graph6: non-zero padding bits in final byte")]
    Padding,
    #[error("graph6: vertex count {0} exceeds the supported maximum of {MAX_VERTICES}")]
    TooLarge(usize),
    #[error("edge list line {line}: {msg}")]
    EdgeList { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Record { line: usize, source: Box<ParseError> },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Encodes `g` in graph6: a size header followed by the upper triangle of
/// the adjacency matrix in column order, packed six bits per byte.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Decodes a single graph6 record. An optional `>>graph6<<` header is
/// accepted; trailing whitespace is not part of the record.
pub fn from_graph6(record: &str) -> Result<Graph, ParseError> {
    let record = record.strip_prefix(GRAPH6_HEADER).unwrap_or(record);
    let bytes = record.as_bytes();
    if bytes.is_empty() {
        return Err(ParseError::Empty);
    }
    if let Some((offset, &byte)) = bytes.iter().enumerate().find(|(_, b)| !(63..=126).contains(*b)) {
        return Err(ParseError::BadByte { offset, byte });
    }
    let (n, body) = if bytes[0] < 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 {
            return Err(ParseError::Length {
                expected: 4,
                found: bytes.len(),
            });
        }
        if bytes[1] == 126 {
            return Err(ParseError::TooLarge(258_048));
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, &bytes[4..])
    };
    if n > MAX_VERTICES {
        return Err(ParseError::TooLarge(n));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(ParseError::Length {
            expected,
            found: body.len(),
        });
    }
    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = body[expected - 1] - 63;
        if last & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(ParseError::Padding);
        }
    }
    Ok(Graph::from_adjacency(rows)?)
}

/// Parses newline-separated graph6 records. Blank lines are skipped; a bad
/// record is reported with its 1-based line number.
pub fn parse_graph6_stream(text: &str) -> Result<Vec<Graph>, ParseError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            from_graph6(l.trim_end()).map_err(|e| ParseError::Record {
                line: i + 1,
                source: Box::new(e),
            })
        })
        .collect()
}

/// Edge list: first non-comment line holds `n`, then one `u v` pair per
/// line. `#` starts a comment.
pub fn from_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, head) = lines.next().ok_or(ParseError::EdgeList {
        line: 1,
        msg: "missing vertex count".into(),
    })?;
    let n: usize = head.parse().map_err(|_| ParseError::EdgeList {
        line,
        msg: format!("expected vertex count, found {head:?}"),
    })?;
    let mut g = Graph::empty(n)?;
    for (line, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| ParseError::EdgeList {
                line,
                msg: format!("bad vertex {s:?}"),
            })
        };
        let (u, v) = match fields.as_slice() {
            [u, v] => (parse(u)?, parse(v)?),
            _ => {
                return Err(ParseError::EdgeList {
                    line,
                    msg: format!("expected two vertices, found {l:?}"),
                })
            }
        };
        if u < n && v < n && u != v && g.has_edge(u, v) {
            continue;
        }
        g = g
            .edit(None, Some(Edge::new(u, v)))
            .map_err(|err| ParseError::EdgeList {
                line,
                msg: err.to_string(),
            })?;
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.n());
    for e in g.edges() {
        let _ = writeln!(s, "{} {}", e.0, e.1);
    }
    s
}

/// Graphviz export. `labels` optionally names vertices.
pub fn to_dot(g: &Graph, labels: Option<&[String]>) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..g.n() {
        match labels.and_then(|l| l.get(v)) {
            Some(label) => {
                let _ = writeln!(s, "  {v} [label=\"{}\"];", label.replace('"', "\\\""));
            }
            None => {
                let _ = writeln!(s, "  {v};");
            }
        }
    }
    for e in g.edges() {
        let _ = writeln!(s, "  {} -- {};", e.0, e.1);
    }
    s.push_str("}\n");
    s
}

/// True when the first meaningful line is a bare integer, which graph6
/// can never produce.
pub fn looks_like_edge_list(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.parse::<usize>().is_ok())
}
