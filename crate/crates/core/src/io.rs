//! Interchange formats: JSON trigraphs (canonical), graph6, DIMACS, DOT.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Label, Trigraph};

/// `{ "n": …, "black": [[u,v],…], "red": [[u,v],…] }`, with an optional
/// `labels` array; edges are given in label space (labels default to `0..n`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrigraphFile {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Label>>,
    #[serde(default)]
    pub black: Vec<[Label; 2]>,
    #[serde(default)]
    pub red: Vec<[Label; 2]>,
}

impl TrigraphFile {
    pub fn from_trigraph(t: &Trigraph) -> Self {
        let identity = t.labels().iter().enumerate().all(|(i, &l)| l as usize == i);
        TrigraphFile {
            n: t.n(),
            labels: (!identity).then(|| t.labels().to_vec()),
            black: t.black_edges().into_iter().map(|(a, b)| [a, b]).collect(),
            red: t.red_edges().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        Self::from_trigraph(&Trigraph::from_graph(g))
    }

    pub fn to_trigraph(&self) -> Result<Trigraph> {
        let labels = match &self.labels {
            Some(l) if l.len() != self.n => {
                return Err(Error::Parse(format!("labels has {} entries but n = {}", l.len(), self.n)))
            }
            Some(l) => l.clone(),
            None => (0..self.n as Label).collect(),
        };
        let pairs = |v: &[[Label; 2]]| v.iter().map(|&[a, b]| (a, b)).collect::<Vec<_>>();
        Trigraph::with_labels(labels, &pairs(&self.black), &pairs(&self.red))
    }
}

pub fn trigraph_to_json(t: &Trigraph) -> String {
    serde_json::to_string_pretty(&TrigraphFile::from_trigraph(t)).expect("serializable")
}

pub fn trigraph_from_json(s: &str) -> Result<Trigraph> {
    let f: TrigraphFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    f.to_trigraph()
}

/// Parses either a JSON trigraph (its black edges become the graph) or a
/// single graph6 line.
pub fn graph_from_text(s: &str) -> Result<Graph> {
    let trimmed = s.trim();
    if trimmed.starts_with('{') {
        let t = trigraph_from_json(trimmed)?;
        if t.red_count() > 0 {
            return Err(Error::Parse("expected a graph, found red edges".into()));
        }
        Ok(t.real_graph())
    } else {
        from_graph6(trimmed)
    }
}

fn push_n(out: &mut Vec<u8>, n: usize) {
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

/// graph6 encoding of `g`, vertices in index order.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    push_n(&mut out, n);
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push(acc + 63);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((acc << (6 - bits)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

pub fn from_graph6(s: &str) -> Result<Graph> {
    let bytes = s.trim().as_bytes();
    let bad = || Error::Parse("malformed graph6".into());
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad());
    }
    let val = |b: u8| (b - 63) as usize;
    let (n, rest) = match bytes {
        [126, 126, r @ ..] if r.len() >= 6 => (r[..6].iter().fold(0, |a, &b| (a << 6) | val(b)), &r[6..]),
        [126, r @ ..] if r.len() >= 3 => (r[..3].iter().fold(0, |a, &b| (a << 6) | val(b)), &r[3..]),
        [b, r @ ..] if *b != 126 => (val(*b), r),
        _ => return Err(bad()),
    };
    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if rest.len() != needed {
        return Err(bad());
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = val(rest[k / 6]);
            if (byte >> (5 - k % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_index_edges((0..n as Label).collect(), edges)
}

/// DIMACS `col` format: 1-indexed by vertex index, `p edge n m` header.
pub fn to_dimacs(g: &Graph) -> String {
    let mut s = String::new();
    let identity = g.labels().iter().enumerate().all(|(i, &l)| l as usize == i);
    if !identity {
        let labels: Vec<String> = g.labels().iter().map(|l| l.to_string()).collect();
        let _ = writeln!(s, "c labels {}", labels.join(" "));
    }
    let _ = writeln!(s, "p edge {} {}", g.n(), g.m());
    for (a, b) in g.edges() {
        let _ = writeln!(s, "e {} {}", a + 1, b + 1);
    }
    s
}

/// DOT view of a trigraph; red edges carry `color=red`.
pub fn trigraph_to_dot(t: &Trigraph) -> String {
    let mut s = String::from("graph G {\n");
    for &l in t.labels() {
        let _ = writeln!(s, "  {l};");
    }
    for (a, b) in t.black_edges() {
        let _ = writeln!(s, "  {a} -- {b};");
    }
    for (a, b) in t.red_edges() {
        let _ = writeln!(s, "  {a} -- {b} [color=red];");
    }
    s.push_str("}\n");
    s
}

pub fn graph_to_dot(g: &Graph) -> String {
    trigraph_to_dot(&Trigraph::from_graph(g))
}
