//! Graph interchange formats: graph6 (short form, n ≤ 62), edge-list text,
//! and vertex-set specs.

use crate::graph::{Graph, GraphError, VertexSet};
use thiserror::Error;

const GRAPH6_HEADER: &[u8] = b">>graph6<<";

#[derive(Debug, Error, PartialEq)]
pub enum FormatError {
    #[error("graph6 input is empty")]
    Empty,
    #[error("graph6 byte {byte:#x} at position {position} outside [63, 126]")]
    BadByte { byte: u8, position: usize },
    #[error("graph6 size form for n > 62 is not supported")]
    UnsupportedSizeForm,
    #[error("graph6 body has {actual} bytes, expected {expected}")]
    WrongLength { expected: usize, actual: usize },
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("missing \"n <count>\" header line")]
    MissingHeader,
    #[error("vertex index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("duplicate vertex index {0}")]
    DuplicateIndex(usize),
    #[error("binary vertex-set string has length {actual}, expected {expected}")]
    WrongBinaryLength { expected: usize, actual: usize },
    #[error("empty vertex-set entry")]
    EmptySetEntry,
    #[error("invalid vertex-set entry {0:?}")]
    BadSetEntry(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Decodes the short graph6 form: optional `>>graph6<<` header, one size
/// byte n+63 with n ≤ 62, then ⌈n(n−1)/2 / 6⌉ body bytes holding the upper
/// adjacency triangle column-major, 6 bits per byte offset by 63.
pub fn parse_graph6(text: &[u8]) -> Result<Graph, FormatError> {
    let text = text.strip_prefix(GRAPH6_HEADER).unwrap_or(text);
    let text: &[u8] = match text.last() {
        Some(b'\n') => &text[..text.len() - 1],
        _ => text,
    };
    if text.is_empty() {
        return Err(FormatError::Empty);
    }
    for (position, &byte) in text.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(FormatError::BadByte { byte, position });
        }
    }
    if text[0] == 126 {
        return Err(FormatError::UnsupportedSizeForm);
    }
    let n = (text[0] - 63) as usize;
    let body = &text[1..];
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(FormatError::WrongLength { expected, actual: body.len() });
    }
    let mut edges = Vec::new();
    let mut bit_index = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[bit_index / 6] - 63;
            if byte >> (5 - bit_index % 6) & 1 == 1 {
                edges.push((i, j));
            }
            bit_index += 1;
        }
    }
    // padding bits past the triangle must be zero for a canonical string,
    // but nauty tools do not enforce that on read; neither do we
    Ok(Graph::build(n.max(1), &edges)?)
}

pub fn emit_graph6(g: &Graph) -> Result<Vec<u8>, FormatError> {
    let n = g.n();
    if n > 62 {
        return Err(FormatError::UnsupportedSizeForm);
    }
    let mut out = vec![63 + n as u8];
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(out)
}

/// Edge-list text: `#` comments, a `n <count>` header, then `u v` lines with
/// 0-based vertices.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        if n.is_none() {
            if fields.next() != Some("n") {
                return Err(FormatError::MalformedLine {
                    line: idx + 1,
                    reason: "expected \"n <count>\"".into(),
                });
            }
            let count = fields
                .next()
                .and_then(|f| f.parse::<usize>().ok())
                .ok_or_else(|| FormatError::MalformedLine {
                    line: idx + 1,
                    reason: "expected \"n <count>\"".into(),
                })?;
            n = Some(count);
        } else {
            let parse = |field: Option<&str>| {
                field
                    .and_then(|f| f.parse::<usize>().ok())
                    .ok_or_else(|| FormatError::MalformedLine {
                        line: idx + 1,
                        reason: format!("expected \"u v\", got {raw:?}"),
                    })
            };
            let u = parse(fields.next())?;
            let v = parse(fields.next())?;
            if fields.next().is_some() {
                return Err(FormatError::MalformedLine {
                    line: idx + 1,
                    reason: format!("trailing fields in {raw:?}"),
                });
            }
            edges.push((u, v));
        }
    }
    let n = n.ok_or(FormatError::MissingHeader)?;
    Ok(Graph::build(n, &edges)?)
}

/// Vertex-set spec: either comma-separated 0-based indices or a binary
/// string of length n.
pub fn parse_vertex_set(text: &str, n: usize) -> Result<VertexSet, FormatError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(FormatError::EmptySetEntry);
    }
    let looks_binary = !text.contains(',') && text.chars().all(|c| c == '0' || c == '1');
    if looks_binary && text.len() == n {
        return Ok(VertexSet::from_indices(
            n,
            text.chars().enumerate().filter(|(_, c)| *c == '1').map(|(i, _)| i),
        ));
    }
    let mut indices = Vec::new();
    for entry in text.split(',') {
        let entry = entry.trim();
        if entry.is_empty() {
            return Err(FormatError::EmptySetEntry);
        }
        let i: usize = entry
            .parse()
            .map_err(|_| FormatError::BadSetEntry(entry.to_string()))?;
        if i >= n {
            // a 0/1 string of the wrong length reads as a bad index list
            return if looks_binary && text.len() > 1 {
                Err(FormatError::WrongBinaryLength { expected: n, actual: text.len() })
            } else {
                Err(FormatError::IndexOutOfRange(i))
            };
        }
        if indices.contains(&i) {
            return Err(FormatError::DuplicateIndex(i));
        }
        indices.push(i);
    }
    Ok(VertexSet::from_indices(n, indices))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate_family, Family};

    #[test]
    fn graph6_hand_encoded_examples() {
        let k3 = parse_graph6(b"Bw").unwrap();
        assert_eq!(k3.n(), 3);
        assert_eq!(k3.edge_count(), 3);
        assert_eq!(emit_graph6(&k3).unwrap(), b"Bw");

        let edge = parse_graph6(b"A_").unwrap();
        assert_eq!(edge.n(), 2);
        assert!(edge.has_edge(0, 1));
        assert_eq!(emit_graph6(&edge).unwrap(), b"A_");

        let edgeless = parse_graph6(b"A?").unwrap();
        assert_eq!(edgeless.edge_count(), 0);
        assert_eq!(emit_graph6(&edgeless).unwrap(), b"A?");
    }

    #[test]
    fn graph6_header_and_errors() {
        assert!(parse_graph6(b">>graph6<<Bw").is_ok());
        assert_eq!(
            parse_graph6(b"B\x20w").unwrap_err(),
            FormatError::BadByte { byte: 0x20, position: 1 }
        );
        assert_eq!(
            parse_graph6(b"Bww").unwrap_err(),
            FormatError::WrongLength { expected: 1, actual: 2 }
        );
        assert_eq!(parse_graph6(b"~??"), Err(FormatError::UnsupportedSizeForm));
        assert_eq!(parse_graph6(b""), Err(FormatError::Empty));
    }

    #[test]
    fn graph6_round_trip_on_generated_graphs() {
        for g in [
            generate_family(Family::Petersen, &[]).unwrap(),
            generate_family(Family::Hypercube, &[4]).unwrap(),
            generate_family(Family::Hamming, &[2, 3]).unwrap(),
            generate_family(Family::CompleteBipartite, &[3, 3]).unwrap(),
        ] {
            let encoded = emit_graph6(&g).unwrap();
            assert_eq!(parse_graph6(&encoded).unwrap(), g);
        }
        let petersen = generate_family(Family::Petersen, &[]).unwrap();
        assert_eq!(emit_graph6(&petersen).unwrap().len(), 1 + 8);
    }

    #[test]
    fn edge_list_examples() {
        let k3 = parse_edge_list("n 3\n0 1\n1 2\n0 2").unwrap();
        assert_eq!(k3.edge_count(), 3);
        let empty = parse_edge_list("n 2\n# empty").unwrap();
        assert_eq!(empty.edge_count(), 0);
        assert!(matches!(
            parse_edge_list("n 2\n0 2"),
            Err(FormatError::Graph(GraphError::VertexOutOfRange { .. }))
        ));
        assert!(matches!(
            parse_edge_list("n 3\n0 1 2"),
            Err(FormatError::MalformedLine { line: 2, .. })
        ));
        assert_eq!(parse_edge_list("0 1"), Err(FormatError::MalformedLine {
            line: 1,
            reason: "expected \"n <count>\"".into(),
        }));
    }

    #[test]
    fn edge_list_order_insensitive() {
        let a = parse_edge_list("n 4\n0 1\n2 3\n1 2").unwrap();
        let b = parse_edge_list("n 4\n1 2\n0 1\n2 3").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn vertex_set_specs() {
        let s = parse_vertex_set("0,2,5", 6).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2, 5]);
        let s = parse_vertex_set("101", 3).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(parse_vertex_set("0,0", 3), Err(FormatError::DuplicateIndex(0)));
        assert_eq!(parse_vertex_set("7", 3), Err(FormatError::IndexOutOfRange(7)));
        assert_eq!(
            parse_vertex_set("10", 3),
            Err(FormatError::WrongBinaryLength { expected: 3, actual: 2 })
        );
    }
}
