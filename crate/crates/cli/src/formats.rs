//! graph6, sparse6 and edge-list encodings.
//!
//! graph6 and sparse6 follow the published byte formats bit for bit: 6-bit
//! groups offset by 63, the `N(n)` size header, and for sparse6 the
//! `(1 + k)`-bit groups with `k` the bit length of `n - 1`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use hamconn_core::multigraph::{GraphError, Multigraph, SimpleGraph};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Graph6,
    Sparse6,
    EdgeList,
}

impl FromStr for Format {
    type Err = FormatError;

    fn from_str(s: &str) -> Result<Self, FormatError> {
        match s {
            "g6" | "graph6" => Ok(Format::Graph6),
            "s6" | "sparse6" => Ok(Format::Sparse6),
            "el" | "edgelist" => Ok(Format::EdgeList),
            _ => Err(FormatError::UnknownFormat(s.to_string())),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Graph6 => "g6",
            Format::Sparse6 => "s6",
            Format::EdgeList => "el",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("unknown format {0:?}")]
    UnknownFormat(String),
    #[error("byte {0:#04x} outside the printable range 63..=126")]
    BadByte(u8),
    #[error("malformed size header")]
    BadHeader,
    #[error("expected {expected} data bytes, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("padding bits are not zero")]
    NonzeroPadding,
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: u64, n: usize },
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("cannot parse {0:?}")]
    Syntax(String),
    #[error("graph6 holds only simple graphs")]
    NotSimple,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A decoding failure with its location.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{file}:{line}: {error}")]
    Parse {
        file: String,
        line: usize,
        error: FormatError,
    },
    #[error("{file}: {error}")]
    Io { file: String, error: std::io::Error },
}

/// Where a corpus graph came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    /// One-based line of the record's first line.
    File {
        file: String,
        line: usize,
    },
    Enumeration {
        n: usize,
        index: u64,
    },
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::File { file, line } => write!(f, "{file}:{line}"),
            Origin::Enumeration { n, index } => write!(f, "n={n}#{index}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusRecord {
    pub graph: Multigraph,
    pub origin: Origin,
    pub encoding: Format,
}

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((n >> shift & 63) as u8 + 63);
        }
    }
}

/// Splits `N(n)` off the front of `data` (already shifted down by 63).
fn take_size(data: &[u8]) -> Result<(usize, &[u8]), FormatError> {
    let word = |bytes: &[u8]| bytes.iter().fold(0usize, |acc, &b| acc << 6 | b as usize);
    match data {
        [63, 63, rest @ ..] if rest.len() >= 6 => Ok((word(&rest[..6]), &rest[6..])),
        [63, 63, ..] => Err(FormatError::BadHeader),
        [63, rest @ ..] if rest.len() >= 3 => Ok((word(&rest[..3]), &rest[3..])),
        [63, ..] => Err(FormatError::BadHeader),
        [b, rest @ ..] => Ok((*b as usize, rest)),
        [] => Err(FormatError::BadHeader),
    }
}

fn shifted(text: &str) -> Result<Vec<u8>, FormatError> {
    text.bytes()
        .map(|b| {
            if (63..=126).contains(&b) {
                Ok(b - 63)
            } else {
                Err(FormatError::BadByte(b))
            }
        })
        .collect()
}

/// Packs bits into 6-bit groups, padding the last group with `pad`.
struct BitWriter {
    out: Vec<u8>,
    cur: u8,
    used: u32,
}

impl BitWriter {
    fn new(out: Vec<u8>) -> Self {
        BitWriter {
            out,
            cur: 0,
            used: 0,
        }
    }

    fn push(&mut self, bit: bool) {
        self.cur = self.cur << 1 | bit as u8;
        self.used += 1;
        if self.used == 6 {
            self.out.push(self.cur + 63);
            self.cur = 0;
            self.used = 0;
        }
    }

    fn push_bits(&mut self, value: u64, width: u32) {
        for i in (0..width).rev() {
            self.push(value >> i & 1 == 1);
        }
    }

    /// Bits still free in the current group (6 when it is empty).
    fn free(&self) -> u32 {
        6 - self.used
    }

    fn finish(mut self, pad: impl Fn(u32) -> bool) -> String {
        let mut i = 0;
        while self.used != 0 {
            self.push(pad(i));
            i += 1;
        }
        String::from_utf8(self.out).expect("printable bytes")
    }
}

/// graph6 line (no newline) for `g`.
pub fn encode_graph6(g: &SimpleGraph) -> String {
    let n = g.vertex_count();
    let mut head = Vec::new();
    push_size(&mut head, n);
    let mut w = BitWriter::new(head);
    for j in 1..n {
        for i in 0..j {
            w.push(g.adj(i) >> j & 1 == 1);
        }
    }
    w.finish(|_| false)
}

pub fn decode_graph6(text: &str) -> Result<SimpleGraph, FormatError> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let data = shifted(text)?;
    let (n, body) = take_size(&data)?;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(FormatError::WrongLength {
            expected,
            found: body.len(),
        });
    }
    let bit = |k: usize| body[k / 6] >> (5 - k % 6) & 1 == 1;
    if (bits..expected * 6).any(bit) {
        return Err(FormatError::NonzeroPadding);
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i as u32, j as u32));
            }
            k += 1;
        }
    }
    Ok(SimpleGraph::from_edges(n, &edges)?)
}

fn bit_length(x: usize) -> u32 {
    usize::BITS - x.leading_zeros()
}

/// sparse6 line (no newline) for `g`; parallel edges and loops are kept.
pub fn encode_sparse6(g: &Multigraph) -> String {
    let n = g.vertex_count();
    let k = bit_length(n.saturating_sub(1));
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(_, [a, b])| (a.index().min(b.index()), a.index().max(b.index())))
        .collect();
    edges.sort_unstable_by_key(|&(i, j)| (j, i));
    let mut head = vec![b':'];
    push_size(&mut head, n);
    let mut w = BitWriter::new(head);
    let mut last = 0usize;
    for &(i, j) in &edges {
        if j == last {
            w.push(false);
        } else {
            w.push(true);
            if j > last + 1 {
                w.push_bits(j as u64, k);
                w.push(false);
            }
            last = j;
        }
        w.push_bits(i as u64, k);
    }
    let free = w.free();
    // a padding group of 1 + all-ones would read as a spurious edge here
    let special = free != 6 && free > k && n > 1 && last == n - 2 && n == 1 << k;
    w.finish(|i| !(special && i == 0))
}

pub fn decode_sparse6(text: &str) -> Result<Multigraph, FormatError> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(">>sparse6<<").unwrap_or(text);
    let text = text.strip_prefix(':').ok_or(FormatError::BadHeader)?;
    let data = shifted(text)?;
    let (n, body) = take_size(&data)?;
    let k = bit_length(n.saturating_sub(1)) as usize;
    let total = body.len() * 6;
    let bit = |p: usize| body[p / 6] >> (5 - p % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut v = 0usize;
    let mut p = 0;
    while p + 1 + k <= total {
        let b = bit(p);
        let x = (0..k).fold(0usize, |acc, i| acc << 1 | bit(p + 1 + i) as usize);
        p += 1 + k;
        if b {
            v += 1;
        }
        if v >= n {
            break;
        }
        if x > v {
            // only the final, padding group may point past the last vertex
            if x >= n && p + 1 + k <= total {
                return Err(FormatError::VertexOutOfRange {
                    vertex: x as u64,
                    n,
                });
            }
            v = x;
        } else {
            edges.push((x as u32, v as u32));
        }
    }
    Ok(Multigraph::from_edges(n, &edges)?)
}

/// `n m` header, then one `u v` line per edge.
pub fn encode_edgelist(g: &Multigraph) -> String {
    let mut s = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (_, [u, v]) in g.edges() {
        s.push_str(&format!("{} {}\n", u.0, v.0));
    }
    s
}

fn content(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn two_numbers(line: &str) -> Result<(u64, u64), FormatError> {
    let mut it = line.split_whitespace().map(str::parse::<u64>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(FormatError::Syntax(line.to_string())),
    }
}

/// Every graph in an edge-list text, with the one-based line of its header.
pub fn decode_edgelists(text: &str) -> Result<Vec<(usize, Multigraph)>, (usize, FormatError)> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, content(l)))
        .filter(|(_, l)| !l.is_empty());
    let mut out = Vec::new();
    while let Some((at, header)) = lines.next() {
        let (n, m) = two_numbers(header).map_err(|e| (at, e))?;
        let n = n as usize;
        let mut edges = Vec::with_capacity(m as usize);
        for found in 0..m as usize {
            let (line, text) = lines.next().ok_or((
                at,
                FormatError::EdgeCount {
                    expected: m as usize,
                    found,
                },
            ))?;
            let (u, v) = two_numbers(text).map_err(|e| (line, e))?;
            for x in [u, v] {
                if x as usize >= n {
                    return Err((line, FormatError::VertexOutOfRange { vertex: x, n }));
                }
            }
            edges.push((u as u32, v as u32));
        }
        out.push((
            at,
            Multigraph::from_edges(n, &edges).map_err(|e| (at, e.into()))?,
        ));
    }
    Ok(out)
}

/// The single graph of an edge-list text.
pub fn decode_edgelist(text: &str) -> Result<Multigraph, FormatError> {
    let mut all = decode_edgelists(text).map_err(|(_, e)| e)?;
    match all.len() {
        1 => Ok(all.pop().expect("one graph").1),
        found => Err(FormatError::Syntax(format!(
            "expected one graph, found {found}"
        ))),
    }
}

pub fn encode(g: &Multigraph, format: Format) -> Result<String, FormatError> {
    match format {
        Format::Graph6 => {
            let s = SimpleGraph::from_multigraph(g.clone()).map_err(|_| FormatError::NotSimple)?;
            Ok(encode_graph6(&s))
        }
        Format::Sparse6 => Ok(encode_sparse6(g)),
        Format::EdgeList => Ok(encode_edgelist(g)),
    }
}

/// Every record of `text`; `file` labels origins and errors.
pub fn parse_corpus(
    text: &str,
    format: Format,
    file: &str,
) -> Result<Vec<CorpusRecord>, CorpusError> {
    let parse_err = |line: usize, error: FormatError| CorpusError::Parse {
        file: file.to_string(),
        line,
        error,
    };
    let record = |line: usize, graph: Multigraph| CorpusRecord {
        graph,
        origin: Origin::File {
            file: file.to_string(),
            line,
        },
        encoding: format,
    };
    match format {
        Format::EdgeList => Ok(decode_edgelists(text)
            .map_err(|(line, e)| parse_err(line, e))?
            .into_iter()
            .map(|(line, g)| record(line, g))
            .collect()),
        Format::Graph6 | Format::Sparse6 => {
            let mut out = Vec::new();
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let g = match format {
                    Format::Graph6 => decode_graph6(line).map(SimpleGraph::into_multigraph),
                    _ => decode_sparse6(line),
                }
                .map_err(|e| parse_err(i + 1, e))?;
                out.push(record(i + 1, g));
            }
            Ok(out)
        }
    }
}

pub fn read_corpus(path: &Path, format: Format) -> Result<Vec<CorpusRecord>, CorpusError> {
    let file = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|error| CorpusError::Io {
        file: file.clone(),
        error,
    })?;
    parse_corpus(&text, format, &file)
}
