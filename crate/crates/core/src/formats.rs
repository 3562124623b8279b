//! Text formats for graphs: short-form graph6 and a plain edge list.
//!
//! graph6 (no `>>graph6<<` header, n <= 62): one byte `n + 63`, then the
//! upper triangle bits `x(0,1), x(0,2), x(1,2), x(0,3), ...` packed six to a
//! byte, most significant bit first, each byte offset by 63. Padding bits in
//! the final byte must be zero.
//!
//! Edge list: whitespace-separated tokens, the vertex count first, then pairs
//! `i j`. Duplicate edges collapse.

use crate::error::ParseError;
use crate::graph::Graph;

pub const GRAPH6_MAX_ORDER: usize = 62;

fn graph6_body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(line: &str) -> Result<Graph, ParseError> {
    let bytes = line.as_bytes();
    let (&head, body) = bytes.split_first().ok_or(ParseError::Empty)?;
    for (pos, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(ParseError::Graph6BadByte { pos, byte });
        }
    }
    if head == 126 {
        return Err(ParseError::Graph6TooLarge);
    }
    let n = (head - 63) as usize;
    let expected = graph6_body_len(n);
    if body.len() != expected {
        return Err(ParseError::Graph6BadLength {
            n,
            expected: expected + 1,
            found: bytes.len(),
        });
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.insert_edge(i, j)?;
            }
            k += 1;
        }
    }
    let total_bits = expected * 6;
    if (k..total_bits).any(bit) {
        return Err(ParseError::Graph6Padding);
    }
    Ok(g)
}

/// Encodes a graph of order at most 62.
pub fn to_graph6(g: &Graph) -> Result<String, ParseError> {
    let n = g.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(ParseError::Graph6TooLarge);
    }
    let mut out = vec![n as u8 + 63];
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut tokens = text.split_whitespace().map(|t| {
        t.parse::<usize>().map_err(|_| ParseError::BadToken {
            token: t.to_string(),
        })
    });
    let n = tokens.next().ok_or(ParseError::Empty)??;
    let mut g = Graph::empty(n)?;
    while let Some(a) = tokens.next() {
        let a = a?;
        let b = tokens.next().ok_or(ParseError::UnpairedVertex)??;
        g.insert_edge(a, b)?;
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.order());
    for p in g.edges() {
        s.push_str(&format!("{} {}\n", p.lo(), p.hi()));
    }
    s
}
