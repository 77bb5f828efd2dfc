//! Finite graphs and trigraphs with stable vertex labels.
//!
//! Vertices live in a dense index space `0..n` for the algorithms, and each
//! index carries an opaque [`Label`] that survives induced-subgraph
//! extraction. All public constructors that take edges take them in label
//! space; the `*_by_index` helpers are for callers that already work with
//! indices.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Opaque, stable vertex identifier.
pub type Label = u32;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdjacencyType {
    Black,
    Red,
    NonEdge,
}

/// Read-only adjacency queries shared by graphs and trigraphs.
///
/// A plain [`Graph`] reports every edge as [`AdjacencyType::Black`].
pub trait TypedAdjacency {
    fn order(&self) -> usize;
    fn adjacency(&self, i: usize, j: usize) -> AdjacencyType;
    /// Neighbors in the total graph, sorted by index.
    fn total_neighbors(&self, i: usize) -> &[usize];
    fn label_of(&self, i: usize) -> Label;
}

#[inline]
fn key(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct VertexSet {
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
}

impl VertexSet {
    fn new(labels: Vec<Label>) -> Result<Self> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, &l) in labels.iter().enumerate() {
            if index.insert(l, i).is_some() {
                return Err(Error::DuplicateVertex(l));
            }
        }
        Ok(VertexSet { labels, index })
    }

    fn resolve(&self, l: Label) -> Result<usize> {
        self.index.get(&l).copied().ok_or(Error::UnknownVertex(l))
    }

    fn resolve_all(&self, s: &[Label]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(s.len());
        let mut seen = HashSet::with_capacity(s.len());
        for &l in s {
            let i = self.resolve(l)?;
            if seen.insert(i) {
                out.push(i);
            }
        }
        Ok(out)
    }
}

fn adjacency_lists(n: usize, edges: &HashSet<(usize, usize)>) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

fn collect_edges(vs: &VertexSet, edges: &[(Label, Label)]) -> Result<HashSet<(usize, usize)>> {
    let mut set = HashSet::with_capacity(edges.len());
    for &(a, b) in edges {
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        set.insert(key(vs.resolve(a)?, vs.resolve(b)?));
    }
    Ok(set)
}

/// A simple undirected graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    vertices: VertexSet,
    adj: Vec<Vec<usize>>,
    edges: HashSet<(usize, usize)>,
}

impl Graph {
    /// Edgeless graph on labels `0..n`.
    pub fn empty(n: usize) -> Self {
        Self::from_edges(n, &[]).expect("edgeless graph is valid")
    }

    /// Graph on labels `0..n` with the given edges (in label space).
    pub fn from_edges(n: usize, edges: &[(Label, Label)]) -> Result<Self> {
        Self::with_labels((0..n as Label).collect(), edges)
    }

    pub fn with_labels(labels: Vec<Label>, edges: &[(Label, Label)]) -> Result<Self> {
        let vertices = VertexSet::new(labels)?;
        let edges = collect_edges(&vertices, edges)?;
        Ok(Self::assemble(vertices, edges))
    }

    /// Builds from index-space edges; panics on out-of-range indices.
    pub fn from_index_edges(labels: Vec<Label>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let vertices = VertexSet::new(labels)?;
        let n = vertices.labels.len();
        let mut set = HashSet::new();
        for (a, b) in edges {
            assert!(a < n && b < n, "edge index out of range");
            if a == b {
                return Err(Error::SelfLoop(vertices.labels[a]));
            }
            set.insert(key(a, b));
        }
        Ok(Self::assemble(vertices, set))
    }

    fn assemble(vertices: VertexSet, edges: HashSet<(usize, usize)>) -> Self {
        let adj = adjacency_lists(vertices.labels.len(), &edges);
        Graph { vertices, adj, edges }
    }

    pub fn n(&self) -> usize {
        self.vertices.labels.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.vertices.labels
    }

    pub fn label(&self, i: usize) -> Label {
        self.vertices.labels[i]
    }

    pub fn index_of(&self, l: Label) -> Option<usize> {
        self.vertices.index.get(&l).copied()
    }

    pub fn resolve(&self, l: Label) -> Result<usize> {
        self.vertices.resolve(l)
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&key(i, j))
    }

    pub fn has_edge_labels(&self, a: Label, b: Label) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.has_edge(i, j),
            _ => false,
        }
    }

    /// Index-space edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self.edges.iter().copied().collect();
        e.sort_unstable();
        e
    }

    /// Label-space edges sorted by label pair, each as `(min, max)`.
    pub fn edge_labels(&self) -> Vec<(Label, Label)> {
        let mut e: Vec<_> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (self.label(a), self.label(b));
                (x.min(y), x.max(y))
            })
            .collect();
        e.sort_unstable();
        e
    }

    pub fn induced_subgraph(&self, s: &[Label]) -> Result<Graph> {
        let idx = self.vertices.resolve_all(s)?;
        Ok(self.induced_by_indices(&idx))
    }

    /// Induced subgraph on the given indices, in the given order.
    pub fn induced_by_indices(&self, idx: &[usize]) -> Graph {
        let labels: Vec<Label> = idx.iter().map(|&i| self.label(i)).collect();
        let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let mut edges = HashSet::new();
        for (p, &i) in idx.iter().enumerate() {
            for &j in &self.adj[i] {
                if let Some(&q) = pos.get(&j) {
                    if p < q {
                        edges.insert((p, q));
                    }
                }
            }
        }
        Graph::assemble(VertexSet::new(labels).expect("distinct indices"), edges)
    }

    /// Connected components as index lists; each sorted, and components
    /// ordered by their smallest label.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut stack = vec![s];
            let mut members = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out.sort_by_key(|c| c.iter().map(|&i| self.label(i)).min());
        out
    }

    pub fn is_connected_subset(&self, subset: &[usize]) -> bool {
        if subset.is_empty() {
            return false;
        }
        let inside: HashSet<usize> = subset.iter().copied().collect();
        let mut seen = HashSet::new();
        let mut stack = vec![subset[0]];
        seen.insert(subset[0]);
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if inside.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == inside.len()
    }

    /// Number of triangles.
    pub fn triangle_count(&self) -> usize {
        let mut count = 0;
        for &(a, b) in &self.edges {
            let (na, nb) = (&self.adj[a], &self.adj[b]);
            let (mut i, mut j) = (0, 0);
            while i < na.len() && j < nb.len() {
                match na[i].cmp(&nb[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        if na[i] > b {
                            count += 1;
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
        count
    }
}

impl TypedAdjacency for Graph {
    fn order(&self) -> usize {
        self.n()
    }
    fn adjacency(&self, i: usize, j: usize) -> AdjacencyType {
        if i != j && self.has_edge(i, j) {
            AdjacencyType::Black
        } else {
            AdjacencyType::NonEdge
        }
    }
    fn total_neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }
    fn label_of(&self, i: usize) -> Label {
        self.label(i)
    }
}

/// Connected components of `g` as label lists, ordered by smallest label.
pub fn connected_components(g: &Graph) -> Vec<Vec<Label>> {
    g.components()
        .into_iter()
        .map(|c| {
            let mut l: Vec<Label> = c.into_iter().map(|i| g.label(i)).collect();
            l.sort_unstable();
            l
        })
        .collect()
}

/// A graph with two disjoint edge sets: black (real) and red (virtual).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trigraph {
    vertices: VertexSet,
    adj: Vec<Vec<usize>>,
    black: HashSet<(usize, usize)>,
    red: HashSet<(usize, usize)>,
}

impl Trigraph {
    pub fn from_edges(n: usize, black: &[(Label, Label)], red: &[(Label, Label)]) -> Result<Self> {
        Self::with_labels((0..n as Label).collect(), black, red)
    }

    pub fn with_labels(labels: Vec<Label>, black: &[(Label, Label)], red: &[(Label, Label)]) -> Result<Self> {
        let vertices = VertexSet::new(labels)?;
        let black = collect_edges(&vertices, black)?;
        let red = collect_edges(&vertices, red)?;
        Self::assemble(vertices, black, red)
    }

    pub(crate) fn from_index_sets(
        labels: Vec<Label>,
        black: HashSet<(usize, usize)>,
        red: HashSet<(usize, usize)>,
    ) -> Result<Self> {
        Self::assemble(VertexSet::new(labels)?, black, red)
    }

    fn assemble(vertices: VertexSet, black: HashSet<(usize, usize)>, red: HashSet<(usize, usize)>) -> Result<Self> {
        if let Some(&(a, b)) = black.intersection(&red).next() {
            return Err(Error::ConflictingEdge(vertices.labels[a], vertices.labels[b]));
        }
        let all: HashSet<(usize, usize)> = black.union(&red).copied().collect();
        let adj = adjacency_lists(vertices.labels.len(), &all);
        Ok(Trigraph { vertices, adj, black, red })
    }

    /// A trigraph whose black edges are the edges of `g` and with no red edges.
    pub fn from_graph(g: &Graph) -> Self {
        Trigraph {
            vertices: g.vertices.clone(),
            adj: g.adj.clone(),
            black: g.edges.clone(),
            red: HashSet::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.vertices.labels.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.vertices.labels
    }

    pub fn label(&self, i: usize) -> Label {
        self.vertices.labels[i]
    }

    pub fn index_of(&self, l: Label) -> Option<usize> {
        self.vertices.index.get(&l).copied()
    }

    pub fn resolve(&self, l: Label) -> Result<usize> {
        self.vertices.resolve(l)
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn adjacency_type(&self, i: usize, j: usize) -> AdjacencyType {
        let k = key(i, j);
        if self.black.contains(&k) {
            AdjacencyType::Black
        } else if self.red.contains(&k) {
            AdjacencyType::Red
        } else {
            AdjacencyType::NonEdge
        }
    }

    pub fn black_count(&self) -> usize {
        self.black.len()
    }

    pub fn red_count(&self) -> usize {
        self.red.len()
    }

    fn sorted_labels(&self, set: &HashSet<(usize, usize)>) -> Vec<(Label, Label)> {
        let mut e: Vec<_> = set
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (self.label(a), self.label(b));
                (x.min(y), x.max(y))
            })
            .collect();
        e.sort_unstable();
        e
    }

    pub fn black_edges(&self) -> Vec<(Label, Label)> {
        self.sorted_labels(&self.black)
    }

    pub fn red_edges(&self) -> Vec<(Label, Label)> {
        self.sorted_labels(&self.red)
    }

    pub fn black_index_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.black.iter().copied()
    }

    pub fn red_index_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.red.iter().copied()
    }

    /// Graph whose edges are black ∪ red.
    pub fn total_graph(&self) -> Graph {
        let edges: HashSet<_> = self.black.union(&self.red).copied().collect();
        Graph { vertices: self.vertices.clone(), adj: self.adj.clone(), edges }
    }

    /// Graph of black edges only.
    pub fn real_graph(&self) -> Graph {
        Graph::assemble(self.vertices.clone(), self.black.clone())
    }

    pub fn induced_subgraph(&self, s: &[Label]) -> Result<Trigraph> {
        let idx = self.vertices.resolve_all(s)?;
        Ok(self.induced_by_indices(&idx))
    }

    pub fn induced_by_indices(&self, idx: &[usize]) -> Trigraph {
        let labels: Vec<Label> = idx.iter().map(|&i| self.label(i)).collect();
        let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let mut black = HashSet::new();
        let mut red = HashSet::new();
        for (p, &i) in idx.iter().enumerate() {
            for &j in &self.adj[i] {
                if let Some(&q) = pos.get(&j) {
                    if p < q {
                        match self.adjacency_type(i, j) {
                            AdjacencyType::Black => black.insert((p, q)),
                            AdjacencyType::Red => red.insert((p, q)),
                            AdjacencyType::NonEdge => unreachable!(),
                        };
                    }
                }
            }
        }
        Trigraph::from_index_sets(labels, black, red).expect("induced trigraph is valid")
    }
}

impl TypedAdjacency for Trigraph {
    fn order(&self) -> usize {
        self.n()
    }
    fn adjacency(&self, i: usize, j: usize) -> AdjacencyType {
        if i == j {
            AdjacencyType::NonEdge
        } else {
            self.adjacency_type(i, j)
        }
    }
    fn total_neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }
    fn label_of(&self, i: usize) -> Label {
        self.label(i)
    }
}

/// Small named graphs used across tests, the CLI, and the demo.
pub mod named {
    use super::{Graph, Label};

    pub fn path(n: usize) -> Graph {
        let e: Vec<(Label, Label)> = (1..n as Label).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let mut e: Vec<(Label, Label)> = (1..n as Label).map(|i| (i - 1, i)).collect();
        e.push((n as Label - 1, 0));
        Graph::from_edges(n, &e).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for a in 0..n as Label {
            for b in a + 1..n as Label {
                e.push((a, b));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    pub fn grid(rows: usize, cols: usize) -> Graph {
        let id = |r: usize, c: usize| (r * cols + c) as Label;
        let mut e = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    e.push((id(r, c), id(r, c + 1)));
                }
                if r + 1 < rows {
                    e.push((id(r, c), id(r + 1, c)));
                }
            }
        }
        Graph::from_edges(rows * cols, &e).unwrap()
    }

    pub fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((i, i + 5));
            e.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, &e).unwrap()
    }

    /// The Robertson graph: 19 vertices, 4-regular, girth 5.
    pub fn robertson() -> Graph {
        let mut e: Vec<(Label, Label)> = (0..19).map(|i| (i, (i + 1) % 19)).collect();
        let chords = [
            (0, 8), (0, 12), (1, 5), (1, 16), (2, 9), (2, 13), (3, 7), (3, 18),
            (4, 12), (4, 15), (5, 10), (6, 13), (6, 17), (7, 11), (8, 15), (9, 17),
            (10, 14), (11, 16), (14, 18),
        ];
        e.extend(chords);
        Graph::from_edges(19, &e).unwrap()
    }
}
