//! Short-form graph6 encoding (orders 1..=62).
//!
//! The first byte is `n + 63`. The upper triangle of the adjacency matrix
//! follows in column order `(0,1), (0,2), (1,2), (0,3), ...`, packed
//! big-endian into 6-bit groups, zero padded, each group offset by 63.

use std::io::BufRead;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

/// Optional header line emitted by some tools.
pub const HEADER: &str = ">>graph6<<";

fn body_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

pub fn encode_graph6(g: &Graph) -> String {
    encode_rows(g.rows())
}

pub(crate) fn encode_rows(rows: &[u64]) -> String {
    let n = rows.len();
    debug_assert!((1..=MAX_ORDER).contains(&n));
    let mut out = Vec::with_capacity(1 + body_len(n));
    out.push(n as u8 + 63);
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for row in &rows[..j] {
            group = group << 1 | (row >> j & 1) as u8;
            filled += 1;
            if filled == 6 {
                out.push(group + 63);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + 63);
    }
    // every byte is in 63..=126
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

pub fn decode_graph6(bytes: &[u8]) -> Result<Graph> {
    let bad = |msg: String| Error::Graph6(msg);
    let (&first, body) = bytes
        .split_first()
        .ok_or_else(|| bad("empty input".into()))?;
    if !(63..=126).contains(&first) {
        return Err(bad(format!("byte {first} outside 63..=126")));
    }
    if first == 126 {
        return Err(bad("long-form orders (n > 62) are not supported".into()));
    }
    let n = (first - 63) as usize;
    if n == 0 {
        return Err(bad("order 0".into()));
    }
    let expected = body_len(n);
    if body.len() != expected {
        return Err(bad(format!(
            "expected {expected} data bytes for n = {n}, found {}",
            body.len()
        )));
    }
    let mut rows = vec![0u64; n];
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[bit / 6];
            if !(63..=126).contains(&byte) {
                return Err(bad(format!("byte {byte} outside 63..=126")));
            }
            if (byte - 63) >> (5 - bit % 6) & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    if let Some(&last) = body.last() {
        if !(63..=126).contains(&last) {
            return Err(bad(format!("byte {last} outside 63..=126")));
        }
        let used = bit - (body.len() - 1) * 6;
        let padding = (last - 63) & ((1u8 << (6 - used)) - 1);
        if padding != 0 {
            return Err(bad("nonzero padding bits".into()));
        }
    }
    Graph::from_rows(rows)
}

/// Line-oriented graph6 reader. Blank lines and the optional header are
/// skipped; each item carries its 1-based line number.
pub struct Graph6Reader<R> {
    input: R,
    line: usize,
    buf: String,
}

impl<R: BufRead> Graph6Reader<R> {
    pub fn new(input: R) -> Self {
        Graph6Reader {
            input,
            line: 0,
            buf: String::new(),
        }
    }
}

impl<R: BufRead> Iterator for Graph6Reader<R> {
    type Item = (usize, Result<Graph>);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.buf.clear();
            match self.input.read_line(&mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(e) => {
                    self.line += 1;
                    return Some((self.line, Err(e.into())));
                }
            }
            self.line += 1;
            let mut text = self.buf.trim_end_matches(['\n', '\r']);
            if let Some(rest) = text.strip_prefix(HEADER) {
                text = rest;
            }
            if text.is_empty() {
                continue;
            }
            let parsed = decode_graph6(text.as_bytes()).map_err(|e| match e {
                Error::Graph6(reason) => Error::Graph6Line {
                    line: self.line,
                    reason,
                },
                other => Error::Graph6Line {
                    line: self.line,
                    reason: other.to_string(),
                },
            });
            return Some((self.line, parsed));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_encodings() {
        let k2 = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(encode_graph6(&k2), "A_");
        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(encode_graph6(&c5), "Dhc");
        assert_eq!(encode_graph6(&Graph::new(1, &[]).unwrap()), "@");
        // the five-vertex example shipped with petgraph's graph6 tests
        let g = Graph::new(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode_graph6(&g), "DQc");
    }

    #[test]
    fn decode_known() {
        let c5 = decode_graph6(b"Dhc").unwrap();
        assert_eq!(
            c5.edges().collect::<Vec<_>>(),
            vec![(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]
        );
        assert_eq!(decode_graph6(b"A_").unwrap().edge_count(), 1);
    }

    #[test]
    fn decode_errors() {
        assert!(matches!(decode_graph6(b""), Err(Error::Graph6(_))));
        assert!(matches!(decode_graph6(b"Dh"), Err(Error::Graph6(_))));
        assert!(matches!(decode_graph6(b"Dhcc"), Err(Error::Graph6(_))));
        assert!(matches!(decode_graph6(b"D h"), Err(Error::Graph6(_))));
        // K2 with a padding bit set: 0b100001
        assert!(matches!(
            decode_graph6(&[65, 63 + 0b100001]),
            Err(Error::Graph6(_))
        ));
        assert!(matches!(decode_graph6(b"?"), Err(Error::Graph6(_))));
        assert!(matches!(decode_graph6(b"~"), Err(Error::Graph6(_))));
    }

    #[test]
    fn reader_skips_header_and_blank_lines() {
        let text = ">>graph6<<A_\n\nDhc\nbad!\n";
        let items: Vec<_> = Graph6Reader::new(text.as_bytes()).collect();
        assert_eq!(items.len(), 3);
        assert_eq!(items[0].0, 1);
        assert_eq!(items[1].0, 3);
        assert!(items[1].1.is_ok());
        assert!(matches!(
            items[2],
            (4, Err(Error::Graph6Line { line: 4, .. }))
        ));
    }
}
