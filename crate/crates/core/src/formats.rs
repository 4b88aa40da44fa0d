//! graph6 / sparse6 text encodings and DOT export.

use std::fmt::Write as _;

use crate::coloring::EdgeColoring;
use crate::error::{Error, Result};
use crate::flow::FlowAssignment;
use crate::graph::{EdgeId, Pseudograph};
use crate::matching::PerfectMatching;

const GRAPH6_HEADER: &str = ">>graph6<<";
const SPARSE6_HEADER: &str = ">>sparse6<<";

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Reads the vertex count starting at `at`; returns `(n, next offset)`.
fn read_size(bytes: &[u8], at: usize) -> Result<(usize, usize)> {
    let digit = |i: usize| -> Result<usize> {
        match bytes.get(i) {
            Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as usize),
            Some(_) => Err(Error::parse(i, "byte outside the printable range 63..=126")),
            None => Err(Error::parse(i, "line ends inside the vertex count")),
        }
    };
    let fold = |from: usize, len: usize| -> Result<usize> {
        (from..from + len).try_fold(0usize, |acc, i| Ok((acc << 6) | digit(i)?))
    };
    if digit(at)? != 63 {
        return Ok((digit(at)?, at + 1));
    }
    if bytes.get(at + 1) == Some(&126) {
        Ok((fold(at + 2, 6)?, at + 8))
    } else {
        Ok((fold(at + 1, 3)?, at + 4))
    }
}

/// Data bytes as a bit stream, most significant bit first.
struct Bits<'a> {
    bytes: &'a [u8],
    start: usize,
    pos: usize,
}

impl<'a> Bits<'a> {
    fn new(bytes: &'a [u8], start: usize) -> Result<Self> {
        if let Some(i) = (start..bytes.len()).find(|&i| !(63..=126).contains(&bytes[i])) {
            return Err(Error::parse(i, "byte outside the printable range 63..=126"));
        }
        Ok(Bits { bytes, start, pos: 0 })
    }

    fn remaining(&self) -> usize {
        (self.bytes.len() - self.start) * 6 - self.pos
    }

    fn offset(&self) -> usize {
        self.start + self.pos / 6
    }

    fn next(&mut self) -> u32 {
        let b = self.bytes[self.start + self.pos / 6] - 63;
        let bit = (b >> (5 - self.pos % 6)) & 1;
        self.pos += 1;
        bit as u32
    }

    fn read(&mut self, k: usize) -> usize {
        (0..k).fold(0, |acc, _| (acc << 1) | self.next() as usize)
    }
}

#[derive(Default)]
struct BitWriter {
    out: Vec<u8>,
    acc: u8,
    len: u8,
}

impl BitWriter {
    fn push(&mut self, bit: bool) {
        self.acc = (self.acc << 1) | bit as u8;
        self.len += 1;
        if self.len == 6 {
            self.out.push(self.acc + 63);
            self.acc = 0;
            self.len = 0;
        }
    }

    fn push_bits(&mut self, value: usize, k: usize) {
        for i in (0..k).rev() {
            self.push((value >> i) & 1 == 1);
        }
    }

    fn pending(&self) -> usize {
        self.len as usize
    }
}

fn strip<'a>(line: &'a str, header: &str) -> (&'a [u8], usize) {
    let line = line.trim_end_matches(['\n', '\r']);
    match line.strip_prefix(header) {
        Some(rest) => (rest.as_bytes(), header.len()),
        None => (line.as_bytes(), 0),
    }
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { offset, message } => Error::Parse {
            offset: offset + by,
            message,
        },
        other => other,
    }
}

/// Parses one graph6 line (an optional `>>graph6<<` header is accepted).
pub fn parse_graph6(line: &str) -> Result<Pseudograph> {
    let (bytes, skip) = strip(line, GRAPH6_HEADER);
    parse_graph6_bytes(bytes).map_err(|e| shift(e, skip))
}

fn parse_graph6_bytes(bytes: &[u8]) -> Result<Pseudograph> {
    if bytes.first() == Some(&b':') || bytes.first() == Some(&b'&') {
        return Err(Error::parse(0, "not a graph6 line"));
    }
    let (n, start) = read_size(bytes, 0)?;
    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if bytes.len() != start + needed {
        return Err(Error::parse(
            bytes.len().min(start + needed),
            format!("expected {needed} data bytes for {n} vertices"),
        ));
    }
    let mut bits = Bits::new(bytes, start)?;
    let mut pairs = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if bits.next() == 1 {
                pairs.push((i, j));
            }
        }
    }
    while bits.remaining() > 0 {
        let at = bits.offset();
        if bits.next() != 0 {
            return Err(Error::parse(at, "non-zero padding bit"));
        }
    }
    Pseudograph::new(n, &pairs)
}

/// graph6 encoding (simple graphs only), without header or newline.
pub fn encode_graph6(g: &Pseudograph) -> Result<String> {
    if !g.is_simple() {
        return Err(Error::Unsupported(
            "graph6 encodes simple graphs only; use sparse6".into(),
        ));
    }
    let n = g.vertex_count();
    let mut w = BitWriter::default();
    push_size(&mut w.out, n);
    for j in 1..n {
        for i in 0..j {
            w.push(g.adjacent(i, j));
        }
    }
    while w.pending() != 0 {
        w.push(false);
    }
    Ok(String::from_utf8(w.out).expect("printable bytes"))
}

fn sparse6_width(n: usize) -> usize {
    let mut k = 0;
    let mut x = n.saturating_sub(1);
    while x > 0 {
        x >>= 1;
        k += 1;
    }
    k
}

/// Parses one sparse6 line (leading `:`; an optional `>>sparse6<<` header
/// is accepted). Loops and parallel edges are preserved.
pub fn parse_sparse6(line: &str) -> Result<Pseudograph> {
    let (bytes, skip) = strip(line, SPARSE6_HEADER);
    parse_sparse6_bytes(bytes).map_err(|e| shift(e, skip))
}

fn parse_sparse6_bytes(bytes: &[u8]) -> Result<Pseudograph> {
    if bytes.first() != Some(&b':') {
        return Err(Error::parse(0, "sparse6 lines start with ':'"));
    }
    let (n, start) = read_size(bytes, 1)?;
    let k = sparse6_width(n);
    let mut bits = Bits::new(bytes, start)?;
    let mut pairs = Vec::new();
    let mut v = 0usize;
    while bits.remaining() > k {
        let at = bits.offset();
        let b = bits.next();
        let x = bits.read(k);
        if b == 1 {
            v += 1;
        }
        if v >= n || x >= n {
            // End of data: only all-ones padding may follow.
            while bits.remaining() > 0 {
                if bits.next() != 1 {
                    return Err(Error::parse(at, "vertex index out of range"));
                }
            }
            break;
        }
        if x > v {
            v = x;
        } else {
            pairs.push((x, v));
        }
    }
    Pseudograph::new(n, &pairs)
}

/// sparse6 encoding with edges sorted by larger then smaller endpoint.
pub fn encode_sparse6(g: &Pseudograph) -> String {
    let n = g.vertex_count();
    let k = sparse6_width(n);
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|e| (e.u.max(e.v), e.u.min(e.v)))
        .collect();
    edges.sort_unstable();
    let mut w = BitWriter::default();
    w.out.push(b':');
    push_size(&mut w.out, n);
    let mut last = 0usize;
    for (j, i) in edges {
        if j == last {
            w.push(false);
        } else {
            w.push(true);
            if j > last + 1 {
                w.push_bits(j, k);
                w.push(false);
            }
            last = j;
        }
        w.push_bits(i, k);
    }
    if w.pending() != 0 {
        let pad = 6 - w.pending();
        if n == (1 << k) && last + 2 == n && pad > k {
            w.push(false);
            w.push_bits(usize::MAX, pad - 1);
        } else {
            w.push_bits(usize::MAX, pad);
        }
    }
    String::from_utf8(w.out).expect("printable bytes")
}

/// Parses a graph6 or sparse6 line, choosing by its first byte.
pub fn parse_line(line: &str) -> Result<Pseudograph> {
    let trimmed = line.trim();
    if trimmed.starts_with(':') || trimmed.starts_with(SPARSE6_HEADER) {
        parse_sparse6(trimmed)
    } else {
        parse_graph6(trimmed)
    }
}

/// graph6 for simple graphs, sparse6 otherwise.
pub fn encode_auto(g: &Pseudograph) -> String {
    encode_graph6(g).unwrap_or_else(|_| encode_sparse6(g))
}

/// What to draw on top of the graph in [`export_dot`].
#[derive(Debug, Clone, Copy, Default)]
pub struct DotStyle<'a> {
    pub coloring: Option<&'a EdgeColoring>,
    /// Flow values of the matching edges, indexed like the matching.
    pub flow: Option<(&'a PerfectMatching, &'a FlowAssignment)>,
    pub conflicts: &'a [EdgeId],
}

/// Graphviz rendering. Coloured edges get `class="cK"`, flow edges are
/// labelled `α`, `β` or `α+β`, and conflict edges are drawn red and bold.
pub fn export_dot(g: &Pseudograph, style: &DotStyle<'_>) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  {v};");
    }
    for e in g.edges() {
        let mut attrs = vec![format!("id=\"e{}\"", e.id)];
        let mut label = Vec::new();
        if let Some(c) = style.coloring {
            let k = c.colors[e.id];
            attrs.push(format!("class=\"c{k}\""));
            label.push(k.to_string());
        }
        if let Some((f, theta)) = style.flow {
            if let Ok(q) = f.edge_ids().binary_search(&e.id) {
                label.push(theta.get(q).to_string());
                attrs.push("penwidth=2".into());
            }
        }
        if style.conflicts.contains(&e.id) {
            attrs.push("color=red".into());
            attrs.push("style=bold".into());
            attrs.push("conflict=true".into());
        }
        if !label.is_empty() {
            attrs.push(format!("label=\"{}\"", label.join(" ")));
        }
        let _ = writeln!(out, "  {} -- {} [{}];", e.u, e.v, attrs.join(", "));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn edge_multiset(g: &Pseudograph) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = g.edges().iter().map(|e| (e.u.min(e.v), e.u.max(e.v))).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn graph6_hand_decoded() {
        let k4 = parse_graph6("C~").unwrap();
        assert_eq!(k4.vertex_count(), 4);
        assert_eq!(edge_multiset(&k4), edge_multiset(&generators::k4()));
        let empty = parse_graph6("D??").unwrap();
        assert_eq!((empty.vertex_count(), empty.edge_count()), (5, 0));
        let k2 = parse_graph6(">>graph6<<A_").unwrap();
        assert_eq!(edge_multiset(&k2), vec![(0, 1)]);
        assert_eq!(encode_graph6(&generators::k4()).unwrap(), "C~");
    }

    #[test]
    fn graph6_long_size() {
        let g = Pseudograph::empty(100);
        let s = encode_graph6(&g).unwrap();
        assert_eq!(&s[..4], "~?@c");
        assert_eq!(parse_graph6(&s).unwrap().vertex_count(), 100);
    }

    #[test]
    fn graph6_errors_carry_offsets() {
        assert!(matches!(parse_graph6("B}"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(parse_graph6("C~~"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph6("C\u{7}"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(parse_graph6(""), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(encode_graph6(&generators::fig4_graph()), Err(Error::Unsupported(_))));
    }

    #[test]
    fn sparse6_reference_example() {
        let g = parse_sparse6(":Fa@x^").unwrap();
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(edge_multiset(&g), vec![(0, 1), (0, 2), (1, 2), (5, 6)]);
        assert_eq!(encode_sparse6(&g), ":Fa@x^");
    }

    #[test]
    fn matches_an_independent_encoder() {
        // Strings produced by a separate implementation of both formats.
        assert_eq!(encode_graph6(&generators::petersen()).unwrap(), "IheA@GUAo");
        assert_eq!(encode_sparse6(&generators::petersen()), ":I`ES@obGkqegW~");
        assert_eq!(encode_sparse6(&generators::fig4_graph()), ":I`?GYBeOdrUM]?r^");
        let k2_cubed = Pseudograph::new(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(encode_sparse6(&k2_cubed), ":A_");
    }

    #[test]
    fn sparse6_multigraphs_round_trip() {
        let loops = Pseudograph::new(1, &[(0, 0), (0, 0)]).unwrap();
        for g in [
            generators::fig4_graph(),
            generators::petersen(),
            loops,
            Pseudograph::new(2, &[(0, 1), (0, 1), (0, 1)]).unwrap(),
            Pseudograph::new(4, &[(2, 2), (0, 3), (3, 3)]).unwrap(),
        ] {
            let s = encode_sparse6(&g);
            let back = parse_sparse6(&s).unwrap();
            assert_eq!(back.vertex_count(), g.vertex_count());
            assert_eq!(edge_multiset(&back), edge_multiset(&g), "{s}");
            assert_eq!(encode_sparse6(&back), s);
        }
    }

    #[test]
    fn sparse6_padding_special_case() {
        // n = 2^k and the last edge ends at n - 2: padding must not read as a loop.
        let g = Pseudograph::new(4, &[(0, 1), (1, 2)]).unwrap();
        let back = parse_sparse6(&encode_sparse6(&g)).unwrap();
        assert_eq!(edge_multiset(&back), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn sparse6_rejects_missing_colon() {
        assert!(matches!(parse_sparse6("Fa@x^"), Err(Error::Parse { offset: 0, .. })));
        assert!(parse_line(":Fa@x^").is_ok());
        assert!(parse_line("C~").is_ok());
    }

    #[test]
    fn dot_marks_flow_and_conflicts() {
        let g = generators::petersen();
        let f = crate::matching::enumerate_perfect_matchings(&g).next().unwrap();
        let theta = FlowAssignment::constant(f.len(), crate::flow::KleinValue::AlphaBeta);
        let dot = export_dot(
            &g,
            &DotStyle {
                flow: Some((&f, &theta)),
                conflicts: &[0],
                ..Default::default()
            },
        );
        assert_eq!(dot.matches(" -- ").count(), 15);
        assert_eq!(dot.matches("α+β").count(), 5);
        assert_eq!(dot.matches("conflict=true").count(), 1);
    }

    #[test]
    fn dot_colour_classes() {
        let g = generators::k4();
        let c = EdgeColoring::new(3, crate::coloring::three_edge_coloring(&g).unwrap().iter().map(|&x| x as u32).collect()).unwrap();
        let dot = export_dot(&g, &DotStyle { coloring: Some(&c), ..Default::default() });
        let classes: std::collections::BTreeSet<_> = (1..=3).filter(|k| dot.contains(&format!("class=\"c{k}\""))).collect();
        assert_eq!(classes.len(), 3);
    }
}
