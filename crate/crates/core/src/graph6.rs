//! graph6 encoding (one graph per ASCII line).
//!
//! Layout: `N(n)` followed by the upper triangle of the adjacency matrix in
//! column order `(0,1), (0,2), (1,2), (0,3), ...`, packed six bits per byte
//! (most significant first) with each byte offset by 63. `N(n)` is one byte
//! for `n <= 62`, `~` plus three bytes for `n <= 258047`, and `~~` plus six
//! bytes beyond that.

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";
const SMALL_MAX: usize = 62;
const MEDIUM_MAX: usize = 258_047;

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u64> {
    let b = *bytes
        .get(offset)
        .ok_or_else(|| err(offset, "unexpected end of input"))?;
    if !(63..=126).contains(&b) {
        return Err(err(offset, format!("byte {b:#04x} outside the printable range 63..=126")));
    }
    Ok(u64::from(b - 63))
}

/// Returns `(n, offset of the first adjacency byte)`.
fn read_order(bytes: &[u8], start: usize) -> Result<(usize, usize)> {
    let first = *bytes
        .get(start)
        .ok_or_else(|| err(start, "missing vertex count"))?;
    if first != b'~' {
        return Ok((sextet(bytes, start)? as usize, start + 1));
    }
    let (width, from) = if bytes.get(start + 1) == Some(&b'~') {
        (6, start + 2)
    } else {
        (3, start + 1)
    };
    let mut n = 0u64;
    for i in 0..width {
        n = (n << 6) | sextet(bytes, from + i)?;
    }
    let n = usize::try_from(n).map_err(|_| err(start, "vertex count does not fit in memory"))?;
    let canonical = if width == 3 { n > SMALL_MAX } else { n > MEDIUM_MAX };
    if !canonical {
        return Err(err(start, format!("non-canonical length prefix for n = {n}")));
    }
    Ok((n, from + width))
}

/// Decodes a single graph6 line. A leading `>>graph6<<` header and trailing
/// whitespace are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let line = text.trim_end();
    let start = if line.starts_with(HEADER) { HEADER.len() } else { 0 };
    let bytes = line.as_bytes();
    let (n, body) = read_order(bytes, start)?;
    let pairs = n * n.saturating_sub(1) / 2;
    let expected = pairs.div_ceil(6);
    let found = bytes.len() - body;
    if found != expected {
        return Err(err(
            body + found.min(expected),
            format!("expected {expected} adjacency bytes for n = {n}, found {found}"),
        ));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let offset = body + k / 6;
            if sextet(bytes, offset)? >> (5 - k % 6) & 1 == 1 {
                g.add_edge_unchecked(i, j);
            }
            k += 1;
        }
    }
    if pairs % 6 != 0 {
        let last = body + expected - 1;
        let pad_bits = 6 - pairs % 6;
        if sextet(bytes, last)? & ((1 << pad_bits) - 1) != 0 {
            return Err(err(last, "nonzero padding bits"));
        }
    }
    Ok(g)
}

/// Canonical graph6 line (no header, no newline) under the identity order.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    let push_wide = |out: &mut Vec<u8>, width: usize| {
        for i in (0..width).rev() {
            out.push(((n as u64 >> (6 * i)) & 63) as u8 + 63);
        }
    };
    if n <= SMALL_MAX {
        out.push(n as u8 + 63);
    } else if n <= MEDIUM_MAX {
        out.push(b'~');
        push_wide(&mut out, 3);
    } else {
        out.extend_from_slice(b"~~");
        push_wide(&mut out, 6);
    }
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
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Parses every non-empty, non-comment line of a graph6 corpus.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_graph6)
        .collect()
}
