//! Partition sequences, their red quotients, and the bottom-up folding
//! sequence of wheel prefixes.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Label};
use crate::wheel::WheelPrefix;

/// A sequence of `n - 1` merges taking the singleton partition of `vertices`
/// to a single part. Each merge names one member of each of the two parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionSequence {
    pub vertices: Vec<Label>,
    pub merges: Vec<(Label, Label)>,
}

/// Part bookkeeping for replaying merges.
struct Parts {
    pid: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl Parts {
    fn singletons(n: usize) -> Self {
        Parts { pid: (0..n).collect(), members: (0..n).map(|v| vec![v]).collect() }
    }

    /// Joins the parts of `a` and `b`; false if they already coincide.
    fn merge(&mut self, a: usize, b: usize) -> bool {
        let (pa, pb) = (self.pid[a], self.pid[b]);
        if pa == pb {
            return false;
        }
        let (keep, gone) = if self.members[pa].len() >= self.members[pb].len() { (pa, pb) } else { (pb, pa) };
        let moved = std::mem::take(&mut self.members[gone]);
        for &v in &moved {
            self.pid[v] = keep;
        }
        self.members[keep].extend(moved);
        true
    }

    fn live(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.members.len()).filter(|&p| !self.members[p].is_empty())
    }
}

impl PartitionSequence {
    pub fn len(&self) -> usize {
        self.merges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.merges.is_empty()
    }

    fn indices(&self, g: &Graph) -> Result<Vec<(usize, usize)>> {
        let mine: BTreeSet<Label> = self.vertices.iter().copied().collect();
        let theirs: BTreeSet<Label> = g.labels().iter().copied().collect();
        if mine != theirs || mine.len() != self.vertices.len() {
            return Err(Error::Inconsistent("sequence and graph have different vertex sets".into()));
        }
        let n = g.n();
        if n > 0 && self.merges.len() != n - 1 {
            return Err(Error::Inconsistent(format!("{} merges for {n} vertices", self.merges.len())));
        }
        let pairs: Vec<(usize, usize)> = self
            .merges
            .iter()
            .map(|&(a, b)| match (g.index_of(a), g.index_of(b)) {
                (Some(a), Some(b)) => Ok((a, b)),
                _ => Err(Error::Inconsistent(format!("merge {a}+{b} names an unknown vertex"))),
            })
            .collect::<Result<_>>()?;
        let mut parts = Parts::singletons(n);
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if !parts.merge(a, b) {
                return Err(Error::Inconsistent(format!("merge {} joins a part with itself", i + 1)));
            }
        }
        Ok(pairs)
    }

    /// Checks that the sequence is a full partition sequence of `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        self.indices(g).map(|_| ())
    }

    /// All partitions `𝒫_n, …, 𝒫_1`, parts sorted.
    pub fn partitions(&self) -> Vec<Vec<Vec<Label>>> {
        let idx: BTreeMap<Label, usize> = self.vertices.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut parts = Parts::singletons(self.vertices.len());
        let snapshot = |p: &Parts| {
            let mut out: Vec<Vec<Label>> = p
                .live()
                .map(|q| {
                    let mut m: Vec<Label> = p.members[q].iter().map(|&v| self.vertices[v]).collect();
                    m.sort_unstable();
                    m
                })
                .collect();
            out.sort();
            out
        };
        let mut out = vec![snapshot(&parts)];
        for &(a, b) in &self.merges {
            parts.merge(idx[&a], idx[&b]);
            out.push(snapshot(&parts));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RedQuotient {
    pub parts: Vec<Vec<Label>>,
    /// Pairs of part indices `i < j` with mixed adjacency.
    pub red_edges: Vec<(usize, usize)>,
    /// `(i, j)`: some vertex of part `j` sees some but not all of part `i`.
    pub arcs: Vec<(usize, usize)>,
    pub max_red_degree: usize,
    pub max_outdegree: usize,
}

/// Red edges and arcs of one part towards the others, from neighbour counts.
fn part_links(g: &Graph, parts: &Parts, p: usize) -> (Vec<usize>, Vec<usize>) {
    let size = parts.members[p].len();
    let mut seen: HashMap<usize, usize> = HashMap::new();
    for &v in &parts.members[p] {
        for &w in g.neighbors(v) {
            if parts.pid[w] != p {
                *seen.entry(w).or_default() += 1;
            }
        }
    }
    let mut edges: HashMap<usize, usize> = HashMap::new();
    let mut out: BTreeSet<usize> = BTreeSet::new();
    for (&w, &c) in &seen {
        *edges.entry(parts.pid[w]).or_default() += c;
        if c < size {
            out.insert(parts.pid[w]);
        }
    }
    let mut red: Vec<usize> =
        edges.into_iter().filter(|&(q, e)| e < size * parts.members[q].len()).map(|(q, _)| q).collect();
    red.sort_unstable();
    (red, out.into_iter().collect())
}

fn degrees(g: &Graph, parts: &Parts) -> (usize, usize) {
    parts.live().fold((0, 0), |(r, o), p| {
        let (red, out) = part_links(g, parts, p);
        (r.max(red.len()), o.max(out.len()))
    })
}

/// Red graph and oriented red digraph of `g` for the partition `parts`.
pub fn quotient(g: &Graph, parts: &[Vec<Label>]) -> Result<RedQuotient> {
    let n = g.n();
    let mut pid = vec![usize::MAX; n];
    let mut members = Vec::with_capacity(parts.len());
    for (i, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(Error::Inconsistent(format!("part {i} is empty")));
        }
        let mut m = Vec::with_capacity(part.len());
        for &l in part {
            let v = g.index_of(l).ok_or(Error::UnknownVertex(l))?;
            if pid[v] != usize::MAX {
                return Err(Error::Inconsistent(format!("vertex {l} lies in two parts")));
            }
            pid[v] = i;
            m.push(v);
        }
        members.push(m);
    }
    if let Some(v) = pid.iter().position(|&p| p == usize::MAX) {
        return Err(Error::Inconsistent(format!("vertex {} lies in no part", g.label(v))));
    }
    let state = Parts { pid, members };
    let mut red_edges = Vec::new();
    let mut arcs = Vec::new();
    let mut red_deg = vec![0; parts.len()];
    let mut out_deg = vec![0; parts.len()];
    for p in 0..parts.len() {
        let (red, out) = part_links(g, &state, p);
        red_deg[p] = red.len();
        out_deg[p] = out.len();
        red_edges.extend(red.into_iter().filter(|&q| q > p).map(|q| (p, q)));
        arcs.extend(out.into_iter().map(|q| (p, q)));
    }
    Ok(RedQuotient {
        parts: parts.to_vec(),
        red_edges,
        arcs,
        max_red_degree: red_deg.into_iter().max().unwrap_or(0),
        max_outdegree: out_deg.into_iter().max().unwrap_or(0),
    })
}

/// Degrees of the quotient right after one merge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    /// Number of merges done so far (`1 ..= n-1`).
    pub step: usize,
    pub merged_a: Label,
    pub merged_b: Label,
    pub red_degree: usize,
    pub outdegree: usize,
}

const REPLAY_CHUNK: usize = 32;

/// Per-step maxima for every partition after the first. Chunks of steps are
/// replayed independently in parallel.
pub fn step_records(g: &Graph, s: &PartitionSequence) -> Result<Vec<StepRecord>> {
    let pairs = s.indices(g)?;
    let chunks: Vec<Vec<StepRecord>> = (0..pairs.len())
        .step_by(REPLAY_CHUNK)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|start| {
            let mut parts = Parts::singletons(g.n());
            for &(a, b) in &pairs[..start] {
                parts.merge(a, b);
            }
            let end = (start + REPLAY_CHUNK).min(pairs.len());
            (start..end)
                .map(|i| {
                    let (a, b) = pairs[i];
                    parts.merge(a, b);
                    let (red_degree, outdegree) = degrees(g, &parts);
                    StepRecord { step: i + 1, merged_a: s.merges[i].0, merged_b: s.merges[i].1, red_degree, outdegree }
                })
                .collect()
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// `(max red degree, max outdegree)` over all partitions of the sequence.
pub fn sequence_width(g: &Graph, s: &PartitionSequence) -> Result<(usize, usize)> {
    Ok(step_records(g, s)?.iter().fold((0, 0), |(r, o), x| (r.max(x.red_degree), o.max(x.outdegree))))
}

/// From the last layer upwards: for each parent of the layer, left to right,
/// fold its children together left to right; then merge each folded block
/// into its parent.
pub fn wheel_contraction_sequence(w: &WheelPrefix) -> PartitionSequence {
    let tree = w.tree();
    let mut merges = Vec::with_capacity(w.n().saturating_sub(1));
    for layer in w.layers().iter().skip(1).rev() {
        let mut parents: Vec<usize> = layer.iter().filter_map(|&v| tree.parent(v)).collect();
        parents.dedup();
        for &p in &parents {
            let kids = tree.children(p);
            for &q in &kids[1..] {
                merges.push((kids[0] as Label, q as Label));
            }
        }
        for &p in &parents {
            merges.push((p as Label, tree.children(p)[0] as Label));
        }
    }
    PartitionSequence { vertices: (0..w.n() as Label).collect(), merges }
}
