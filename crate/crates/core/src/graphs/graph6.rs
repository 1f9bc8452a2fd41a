use alloc::string::String;
use alloc::vec::Vec;

use super::Graph;
use crate::{Error, Result};

const HEADER: &str = ">>graph6<<";

fn parse_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse { offset, message: message.into() }
}

/// Decodes one graph in graph6 format (optional `>>graph6<<` header,
/// surrounding whitespace ignored).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let lead = text.len() - text.trim_start().len();
    let mut body = text.trim();
    let mut base = lead;
    if let Some(rest) = body.strip_prefix(HEADER) {
        body = rest;
        base += HEADER.len();
    }
    let bytes = body.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(parse_err(base + i, alloc::format!("byte {b:#04x} outside graph6 range")));
        }
    }
    let (n, header_len) = decode_size(bytes).map_err(|off| parse_err(base + off, "truncated size header"))?;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let data = &bytes[header_len..];
    if data.len() != expected {
        return Err(parse_err(
            base + header_len + data.len().min(expected),
            alloc::format!("expected {expected} data bytes for {n} vertices, found {}", data.len()),
        ));
    }
    let mut g = Graph::new(n);
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = data[expected - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(parse_err(base + header_len + expected - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}

fn decode_size(bytes: &[u8]) -> core::result::Result<(usize, usize), usize> {
    let first = *bytes.first().ok_or(0usize)?;
    if first != 126 {
        return Ok(((first - 63) as usize, 1));
    }
    let (width, start) = if bytes.get(1) == Some(&126) { (6, 2) } else { (3, 1) };
    let chunk = bytes.get(start..start + width).ok_or(bytes.len())?;
    let n = chunk.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    Ok((n, start + width))
}

/// Encodes `g` in graph6 format (no header, no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for s in [12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for s in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Parses a whitespace-separated `u v` edge list (0-indexed, `#` comments).
/// The vertex count is one more than the largest index seen.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut n = 0usize;
    let mut offset = 0usize;
    for line in text.split_inclusive('\n') {
        let content = line.split('#').next().unwrap_or("").trim();
        if !content.is_empty() {
            let mut it = content.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<usize> {
                tok.ok_or_else(|| parse_err(offset, "expected two vertex indices"))?
                    .parse::<usize>()
                    .map_err(|_| parse_err(offset, alloc::format!("bad vertex index in `{content}`")))
            };
            let u = parse(it.next())?;
            let v = parse(it.next())?;
            if it.next().is_some() {
                return Err(parse_err(offset, "trailing tokens on edge line"));
            }
            n = n.max(u + 1).max(v + 1);
            edges.push((u, v));
        }
        offset += line.len();
    }
    Graph::from_edges(n, edges)
}
