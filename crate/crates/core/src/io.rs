//! graph6, JSON and DOT encodings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::label::VertexLabel;

const BIAS: u8 = 63;

fn encode_size(n: usize, out: &mut Vec<u8>) {
    if n < 63 {
        out.push(n as u8 + BIAS);
    } else if n < 258_048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + BIAS);
        }
    }
}

/// Standard graph6 encoding (no header, no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_size(n, &mut out);
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push(acc + BIAS);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse("graph6 byte outside 63..=126".into()));
    }
    let value = |slice: &[u8]| slice.iter().fold(0usize, |acc, &b| acc << 6 | (b - BIAS) as usize);
    let (n, body) = match bytes {
        [] => return Err(Error::Parse("empty graph6 string".into())),
        [126, 126, rest @ ..] if rest.len() >= 6 => (value(&rest[..6]), &rest[6..]),
        [126, rest @ ..] if rest.len() >= 3 && rest[0] != 126 => (value(&rest[..3]), &rest[3..]),
        [126, ..] => return Err(Error::Parse("truncated graph6 size".into())),
        [b, rest @ ..] => ((b - BIAS) as usize, rest),
    };
    let nbits = n * n.saturating_sub(1) / 2;
    if body.len() != nbits.div_ceil(6) {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {} for n={n}",
            body.len(),
            nbits.div_ceil(6)
        )));
    }
    let bit = |k: usize| (body[k / 6] - BIAS) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges)
}

/// JSON graph document; field order and edge order are canonical.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
    #[serde(default)]
    pub labels: BTreeMap<Vertex, VertexLabel>,
}

impl GraphDocument {
    pub fn from_graph(g: &Graph) -> Self {
        GraphDocument {
            n: g.n(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            labels: g.labels().clone(),
        }
    }

    pub fn into_graph(self) -> Result<Graph> {
        Graph::from_edges(self.n, self.edges.into_iter().map(|[u, v]| (u, v)))?
            .with_labels(self.labels)
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphDocument::from_graph(g)).expect("graph document serializes")
}

pub fn from_json(s: &str) -> Result<Graph> {
    let doc: GraphDocument = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    doc.into_graph()
}

pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        let name = g.vertex_name(v).replace('"', "\\\"");
        writeln!(out, "  {v} [label=\"{name}\"];").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Graph6,
    Json,
    Dot,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" | "g6" => Ok(Format::Graph6),
            "json" => Ok(Format::Json),
            "dot" => Ok(Format::Dot),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

pub fn encode(g: &Graph, format: Format) -> String {
    match format {
        Format::Graph6 => to_graph6(g),
        Format::Json => to_json(g),
        Format::Dot => to_dot(g),
    }
}

/// Reads graph6 or a JSON document, guessing from the first character.
pub fn decode(s: &str) -> Result<Graph> {
    if s.trim_start().starts_with('{') {
        from_json(s)
    } else {
        from_graph6(s)
    }
}
