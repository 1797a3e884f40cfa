//! graph6 text encoding (one graph per line).
//!
//! Header N(n) is a single byte n+63 for n ≤ 62, or '~' followed by three
//! bytes carrying an 18-bit big-endian value. The upper triangle is emitted
//! column by column — x(0,1), x(0,2), x(1,2), x(0,3), … — packed into 6-bit
//! groups offset by 63, with zero padding bits at the end.

use thiserror::Error;

use super::{Graph, GraphError, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    EmptyInput,
    #[error("malformed size header")]
    BadHeader,
    #[error("byte {byte:#x} at position {pos} outside the graph6 range 63..=126")]
    ByteOutOfRange { pos: usize, byte: u8 },
    #[error("encoding has {got} payload bytes, expected {expected}")]
    WrongLength { got: usize, expected: usize },
    #[error("nonzero trailing padding bits")]
    TrailingBits,
    #[error("graph on {0} vertices exceeds the {MAX_VERTICES}-vertex limit")]
    TooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Number of payload bytes for the n-vertex bit triangle.
fn payload_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else {
        out.push(126);
        out.push(63 + ((n >> 12) & 0x3f) as u8);
        out.push(63 + ((n >> 6) & 0x3f) as u8);
        out.push(63 + (n & 0x3f) as u8);
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            nbits += 1;
            if nbits == 6 {
                out.push(63 + acc);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push(63 + (acc << (6 - nbits)));
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

pub fn from_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::EmptyInput);
    }
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::ByteOutOfRange { pos, byte: b });
        }
    }
    let (n, payload) = if bytes[0] == 126 {
        // '~~' introduces the 36-bit form; out of scope either way
        if bytes.len() >= 2 && bytes[1] == 126 {
            return Err(Graph6Error::BadHeader);
        }
        if bytes.len() < 4 {
            return Err(Graph6Error::BadHeader);
        }
        let n = (((bytes[1] - 63) as usize) << 12)
            | (((bytes[2] - 63) as usize) << 6)
            | ((bytes[3] - 63) as usize);
        (n, &bytes[4..])
    } else {
        ((bytes[0] - 63) as usize, &bytes[1..])
    };
    if n == 0 {
        return Err(Graph6Error::Graph(GraphError::Empty));
    }
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooLarge(n));
    }
    let expected = payload_len(n);
    if payload.len() != expected {
        return Err(Graph6Error::WrongLength {
            got: payload.len(),
            expected,
        });
    }
    let mut g = Graph::empty(n)?;
    let mut bit_index = 0usize;
    let total_bits = n * (n - 1) / 2;
    for &b in payload {
        let group = b - 63;
        for k in 0..6 {
            let bit = (group >> (5 - k)) & 1;
            if bit_index >= total_bits {
                if bit != 0 {
                    return Err(Graph6Error::TrailingBits);
                }
                bit_index += 1;
                continue;
            }
            if bit == 1 {
                let (i, j) = triangle_coords(bit_index);
                g.add_edge(i, j)?;
            }
            bit_index += 1;
        }
    }
    Ok(g)
}

/// Inverse of the column-major upper-triangle enumeration.
fn triangle_coords(index: usize) -> (usize, usize) {
    // column j contains j bits, preceded by j(j−1)/2 of them
    let mut j = 1;
    while j * (j + 1) / 2 <= index {
        j += 1;
    }
    let i = index - j * (j - 1) / 2;
    (i, j)
}

/// Parses a multi-line graph6 document, skipping blank lines and tolerating
/// an optional ">>graph6<<" header on any line. Returns per-line results so
/// callers can keep going past bad records.
pub fn read_graph6_lines(text: &str) -> Vec<(usize, Result<Graph, Graph6Error>)> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(idx, line)| (idx + 1, from_graph6(line)))
        .collect()
}
