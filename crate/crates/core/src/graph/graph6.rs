//! graph6 encoding: vertex count header followed by the upper triangle of the
//! adjacency matrix, column by column, packed six bits per byte with offset 63.

use super::Graph;

const OFFSET: u8 = 63;
const MAX_BYTE: u8 = 126;
const HEADER: &str = ">>graph6<<";

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 input")]
    Empty,
    #[error("malformed graph6 header at byte {offset}")]
    MalformedHeader { offset: usize },
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    ByteOutOfRange { offset: usize, byte: u8 },
    #[error("truncated graph6 input: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("unexpected trailing data at byte {offset}")]
    TrailingData { offset: usize },
    #[error("nonzero padding bits in final byte at offset {offset}")]
    NonzeroPadding { offset: usize },
}

fn check_byte(bytes: &[u8], offset: usize) -> Result<u8, Graph6Error> {
    let byte = bytes[offset];
    if (OFFSET..=MAX_BYTE).contains(&byte) {
        Ok(byte - OFFSET)
    } else {
        Err(Graph6Error::ByteOutOfRange { offset, byte })
    }
}

/// Decodes the vertex-count header; returns `(n, header_len)`.
fn parse_order(bytes: &[u8], start: usize) -> Result<(usize, usize), Graph6Error> {
    let rest = &bytes[start..];
    let Some(&first) = rest.first() else {
        return Err(Graph6Error::Empty);
    };
    if first != MAX_BYTE {
        return Ok((check_byte(bytes, start)? as usize, 1));
    }
    let (skip, width) = if rest.get(1) == Some(&MAX_BYTE) { (2, 6) } else { (1, 3) };
    if rest.len() < skip + width {
        return Err(Graph6Error::MalformedHeader {
            offset: start + rest.len(),
        });
    }
    let mut n = 0usize;
    for k in 0..width {
        n = (n << 6) | check_byte(bytes, start + skip + k)? as usize;
    }
    let valid = if width == 3 { n >= 63 } else { n > 258_047 };
    if !valid {
        return Err(Graph6Error::MalformedHeader { offset: start });
    }
    Ok((n, skip + width))
}

pub(super) fn parse(text: &str) -> Result<Graph, Graph6Error> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let bytes = trimmed.as_bytes();
    let start = if trimmed.starts_with(HEADER) { HEADER.len() } else { 0 };
    let (n, header_len) = parse_order(bytes, start)?;
    let body = start + header_len;
    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    let found = bytes.len() - body;
    if found < needed {
        return Err(Graph6Error::Truncated {
            expected: needed,
            found,
        });
    }
    if found > needed {
        return Err(Graph6Error::TrailingData { offset: body + needed });
    }

    let mut adj = vec![Vec::new(); n];
    let mut k = 0usize;
    for v in 1..n {
        for u in 0..v {
            let offset = body + k / 6;
            let chunk = check_byte(bytes, offset)?;
            if chunk >> (5 - k % 6) & 1 == 1 {
                adj[u].push(v);
                adj[v].push(u);
            }
            k += 1;
        }
    }
    if needed > 0 {
        let offset = body + needed - 1;
        let last = check_byte(bytes, offset)?;
        let pad = needed * 6 - bits;
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding { offset });
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    Ok(Graph::from_sorted_adjacency(adj))
}

pub(super) fn serialize(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else if n <= 258_047 {
        out.push(MAX_BYTE);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + OFFSET);
        }
    } else {
        out.extend([MAX_BYTE, MAX_BYTE]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + OFFSET);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}
