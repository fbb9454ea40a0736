use super::{Graph, MAX_ORDER};
use crate::error::Graph6Error;

const HEADER: &str = ">>graph6<<";

/// Decode one graph6 record. A leading `>>graph6<<` header and surrounding
/// whitespace are ignored.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::IllegalChar { ch: b as char, pos });
        }
    }

    let (n, body) = decode_order(bytes)?;
    if n == 0 || n > MAX_ORDER {
        return Err(Graph6Error::OrderOutOfRange(n));
    }
    let nbits = n * (n - 1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() < expected {
        return Err(Graph6Error::Truncated {
            expected: expected + (bytes.len() - body.len()),
            got: bytes.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingData { extra: body.len() - expected });
    }

    let mut adj = vec![0u128; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = body[expected - 1] - 63;
        if last & ((1u8 << (6 - nbits % 6)) - 1) != 0 {
            return Err(Graph6Error::NonZeroPadding);
        }
    }
    Ok(Graph { n, adj })
}

fn decode_order(bytes: &[u8]) -> Result<(usize, &[u8]), Graph6Error> {
    if bytes[0] != 126 {
        return Ok(((bytes[0] - 63) as usize, &bytes[1..]));
    }
    let width = if bytes.get(1) == Some(&126) { 6 } else { 3 };
    let start = if width == 6 { 2 } else { 1 };
    let digits = bytes.get(start..start + width).ok_or(Graph6Error::Truncated {
        expected: start + width,
        got: bytes.len(),
    })?;
    let n = digits.iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
    Ok((n, &bytes[start + width..]))
}

/// Encode `g` as a graph6 record without header or newline.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n;
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | (g.adj[i] >> j & 1) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}
