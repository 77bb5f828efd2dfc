//! Validation of the abstract layered-wheel conditions on a finite prefix.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Label};
use crate::tree::RootedTree;
use crate::wheel::{child_bound, WheelFile, WheelPrefix};

/// Which edges of a wheel trigraph form the graph under test.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum View {
    #[default]
    Total,
    Real,
}

/// A graph together with a rooted tree on the same vertices and the
/// left-to-right order of every layer. Nothing beyond basic consistency is
/// assumed, so corrupted data can be validated.
#[derive(Clone, Debug)]
pub struct LayeredWheel {
    graph: Graph,
    tree: RootedTree,
    layers: Vec<Vec<usize>>,
    layer_of: Vec<usize>,
}

impl LayeredWheel {
    /// `parent` maps every non-root label to its parent; `layers` lists the
    /// layers top-down, each left to right.
    pub fn new(graph: Graph, parent: &BTreeMap<Label, Label>, layers: &[Vec<Label>]) -> Result<Self> {
        let n = graph.n();
        let mut layer_of = vec![usize::MAX; n];
        let mut idx_layers = Vec::with_capacity(layers.len());
        for (i, layer) in layers.iter().enumerate() {
            let mut idx = Vec::with_capacity(layer.len());
            for &l in layer {
                let v = graph
                    .index_of(l)
                    .ok_or_else(|| Error::Inconsistent(format!("layer vertex {l} is not in the graph")))?;
                if layer_of[v] != usize::MAX {
                    return Err(Error::Inconsistent(format!("vertex {l} appears in two layers")));
                }
                layer_of[v] = i;
                idx.push(v);
            }
            idx_layers.push(idx);
        }
        if let Some(v) = layer_of.iter().position(|&x| x == usize::MAX) {
            return Err(Error::Inconsistent(format!("vertex {} belongs to no layer", graph.label(v))));
        }
        let mut parents = vec![None; n];
        for (&c, &p) in parent {
            let ci = graph.index_of(c).ok_or_else(|| Error::Inconsistent(format!("tree vertex {c} not in graph")))?;
            let pi = graph.index_of(p).ok_or_else(|| Error::Inconsistent(format!("tree vertex {p} not in graph")))?;
            parents[ci] = Some(pi);
        }
        let tree = RootedTree::from_parents(parents)?;
        for v in 0..n {
            if tree.depth(v) != layer_of[v] {
                return Err(Error::Inconsistent(format!(
                    "vertex {} is at tree depth {} but listed in layer {}",
                    graph.label(v),
                    tree.depth(v),
                    layer_of[v]
                )));
            }
        }
        Ok(LayeredWheel { graph, tree, layers: idx_layers, layer_of })
    }

    pub fn from_prefix(w: &WheelPrefix, view: View) -> Self {
        let graph = match view {
            View::Total => w.total_graph(),
            View::Real => w.real_graph(),
        };
        LayeredWheel {
            graph,
            tree: w.tree().clone(),
            layers: w.layers().to_vec(),
            layer_of: (0..w.n()).map(|v| w.layer_of(v)).collect(),
        }
    }

    /// Reads the raw data of a wheel file without checking that it is a
    /// canonical prefix.
    pub fn from_wheel_file(f: &WheelFile, view: View) -> Result<Self> {
        let labels: Vec<Label> = f.layers.iter().flatten().copied().collect();
        let mut edges: Vec<(Label, Label)> = f.black.iter().map(|&[a, b]| (a, b)).collect();
        if view == View::Total {
            edges.extend(f.red.iter().map(|&[a, b]| (a, b)));
        }
        let graph = Graph::with_labels(labels, &edges)?;
        Self::new(graph, &f.parent, &f.layers)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn layer_of(&self, v: usize) -> usize {
        self.layer_of[v]
    }

    pub fn is_layer_edge(&self, a: usize, b: usize) -> bool {
        self.layer_of[a] == self.layer_of[b]
    }

    fn non_layer_edges(&self) -> Vec<(usize, usize)> {
        self.graph.edges().into_iter().filter(|&(a, b)| !self.is_layer_edge(a, b)).collect()
    }

    fn label(&self, v: usize) -> Label {
        self.graph.label(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    Vertex(Label),
    Edge(Label, Label),
    /// `(ancestor, middle, descendant)`.
    Triple(Label, Label, Label),
    LayerPair(usize, usize),
    Path(Vec<Label>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum Verdict {
    Holds,
    Fails { witness: Witness },
    /// Asymptotic condition: only the measured quantity on the prefix is
    /// meaningful.
    PrefixLimited { measured: usize, threshold: usize, within: bool, witness: Option<Witness> },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        match self {
            Verdict::Holds => true,
            Verdict::Fails { .. } => false,
            Verdict::PrefixLimited { within, .. } => *within,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails { witness } => Some(witness),
            Verdict::PrefixLimited { witness, .. } => witness.as_ref(),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Condition {
    #[serde(rename = "1")]
    Layer,
    #[serde(rename = "2")]
    Treedepth,
    #[serde(rename = "2'")]
    Stroll,
    #[serde(rename = "3")]
    Degree2,
    #[serde(rename = "4")]
    Proper,
    #[serde(rename = "5")]
    Neat,
    #[serde(rename = "6")]
    Bounded,
    #[serde(rename = "7")]
    FBounded,
    #[serde(rename = "8")]
    UpwardRestricted,
    #[serde(rename = "9")]
    UpwardSimplicial,
    #[serde(rename = "10")]
    UpwardNested,
}

impl Condition {
    pub const ALL: [Condition; 11] = [
        Condition::Layer,
        Condition::Treedepth,
        Condition::Stroll,
        Condition::Degree2,
        Condition::Proper,
        Condition::Neat,
        Condition::Bounded,
        Condition::FBounded,
        Condition::UpwardRestricted,
        Condition::UpwardSimplicial,
        Condition::UpwardNested,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::Layer => "1",
            Condition::Treedepth => "2",
            Condition::Stroll => "2'",
            Condition::Degree2 => "3",
            Condition::Proper => "4",
            Condition::Neat => "5",
            Condition::Bounded => "6",
            Condition::FBounded => "7",
            Condition::UpwardRestricted => "8",
            Condition::UpwardSimplicial => "9",
            Condition::UpwardNested => "10",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomParams {
    /// Stroll width for Condition 2'.
    pub stroll_t: usize,
    /// Bound on children for Condition 6; unchecked when absent.
    pub d: Option<usize>,
    /// `f(n)` for Condition 7, indexed by layer; unchecked when absent.
    pub f: Option<Vec<usize>>,
    /// Bound on `|X_v|` for Condition 8; unchecked when absent.
    pub upward_bound: Option<usize>,
    /// Longest tolerated run of tree-degree-2 vertices (Condition 3).
    pub degree2_threshold: usize,
}

impl Default for AxiomParams {
    fn default() -> Self {
        AxiomParams { stroll_t: 1, d: None, f: None, upward_bound: None, degree2_threshold: 2 }
    }
}

impl AxiomParams {
    /// The bounds a canonical prefix with parameter `t` must meet.
    pub fn for_prefix(w: &WheelPrefix) -> Self {
        AxiomParams {
            d: Some(child_bound(w.t(), w.variant()) - 1),
            upward_bound: Some(w.t() + 1),
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub conditions: BTreeMap<Condition, Verdict>,
    pub max_upward_restriction: Option<usize>,
    pub max_children: usize,
    pub max_degree2_run: usize,
    pub stroll_t: usize,
}

impl AxiomReport {
    pub fn verdict(&self, c: Condition) -> &Verdict {
        &self.conditions[&c]
    }
}

pub fn validate_axioms(w: &LayeredWheel, params: &AxiomParams) -> AxiomReport {
    let mut conditions = BTreeMap::new();
    conditions.insert(Condition::Layer, check_layer(w));
    conditions.insert(Condition::Treedepth, check_treedepth(w));
    conditions.insert(Condition::Stroll, check_stroll(w, params.stroll_t));
    let (run, run_witness) = longest_degree2_run(w);
    conditions.insert(
        Condition::Degree2,
        Verdict::PrefixLimited {
            measured: run.len(),
            threshold: params.degree2_threshold,
            within: run.len() <= params.degree2_threshold,
            witness: run_witness,
        },
    );
    conditions.insert(Condition::Proper, check_proper(w));
    conditions.insert(Condition::Neat, check_neat(w));
    let max_children = (0..w.graph.n()).map(|v| w.tree.children(v).len()).max().unwrap_or(0);
    conditions.insert(Condition::Bounded, check_bounded(w, |_| params.d));
    conditions.insert(
        Condition::FBounded,
        check_bounded(w, |layer| params.f.as_ref().map(|f| f.get(layer).copied().unwrap_or(usize::MAX))),
    );
    let (verdict8, max_x) = match compute_upward_restriction(w) {
        Ok(x) => {
            let max = x.values().map(Vec::len).max().unwrap_or(0);
            let too_big = params
                .upward_bound
                .and_then(|b| x.iter().find(|(_, s)| s.len() > b).map(|(&v, _)| Witness::Vertex(v)));
            (too_big.map_or(Verdict::Holds, |witness| Verdict::Fails { witness }), Some(max))
        }
        Err(_) => (conditions[&Condition::Treedepth].clone(), None),
    };
    conditions.insert(Condition::UpwardRestricted, verdict8);
    conditions.insert(Condition::UpwardSimplicial, check_upward_simplicial(w));
    conditions.insert(Condition::UpwardNested, check_upward_nested(w));
    AxiomReport {
        conditions,
        max_upward_restriction: max_x,
        max_children,
        max_degree2_run: run.len(),
        stroll_t: params.stroll_t,
    }
}

fn fails(witness: Witness) -> Verdict {
    Verdict::Fails { witness }
}

fn check_layer(w: &LayeredWheel) -> Verdict {
    for layer in &w.layers {
        for pair in layer.windows(2) {
            if !w.graph.has_edge(pair[0], pair[1]) {
                return fails(Witness::Path(vec![w.label(pair[0]), w.label(pair[1])]));
            }
        }
    }
    let mut pos = vec![0usize; w.graph.n()];
    for layer in &w.layers {
        for (p, &v) in layer.iter().enumerate() {
            pos[v] = p;
        }
    }
    for (a, b) in w.graph.edges() {
        if w.is_layer_edge(a, b) && pos[a].abs_diff(pos[b]) != 1 {
            return fails(Witness::Edge(w.label(a), w.label(b)));
        }
    }
    Verdict::Holds
}

fn check_treedepth(w: &LayeredWheel) -> Verdict {
    w.non_layer_edges()
        .into_iter()
        .find(|&(a, b)| !w.tree.related(a, b))
        .map_or(Verdict::Holds, |(a, b)| fails(Witness::Edge(w.label(a), w.label(b))))
}

fn check_stroll(w: &LayeredWheel, t: usize) -> Verdict {
    w.non_layer_edges()
        .into_par_iter()
        .find_first(|&(a, b)| !stroll_indices(w, a, b, t))
        .map_or(Verdict::Holds, |(a, b)| fails(Witness::Edge(w.label(a), w.label(b))))
}

/// Longest path of tree-degree-2 vertices, in order.
fn longest_degree2_run(w: &LayeredWheel) -> (Vec<usize>, Option<Witness>) {
    let n = w.graph.n();
    let tdeg = |v: usize| w.tree.children(v).len() + w.tree.parent(v).is_some() as usize;
    // Degree-2 vertices induce paths in T; walk each from an end.
    let is2: Vec<bool> = (0..n).map(|v| tdeg(v) == 2).collect();
    let tree_nbrs = |v: usize| w.tree.children(v).iter().copied().chain(w.tree.parent(v));
    let mut seen = vec![false; n];
    let mut best: Vec<usize> = Vec::new();
    for start in 0..n {
        if !is2[start] || seen[start] {
            continue;
        }
        if tree_nbrs(start).filter(|&x| is2[x]).count() > 1 {
            continue;
        }
        let mut run = vec![start];
        seen[start] = true;
        let mut cur = start;
        while let Some(next) = tree_nbrs(cur).find(|&x| is2[x] && !seen[x]) {
            seen[next] = true;
            run.push(next);
            cur = next;
        }
        if run.len() > best.len() {
            best = run;
        }
    }
    let witness = (!best.is_empty()).then(|| Witness::Path(best.iter().map(|&v| w.label(v)).collect()));
    (best, witness)
}

fn check_proper(w: &LayeredWheel) -> Verdict {
    let k = w.layers.len();
    let mut touched = vec![vec![false; k]; k];
    for (a, b) in w.graph.edges() {
        let (la, lb) = (w.layer_of[a], w.layer_of[b]);
        touched[la][lb] = true;
        touched[lb][la] = true;
    }
    for i in 0..k {
        for j in i + 1..k {
            if !touched[i][j] {
                return fails(Witness::LayerPair(i, j));
            }
        }
    }
    Verdict::Holds
}

fn check_neat(w: &LayeredWheel) -> Verdict {
    let last = w.layers.len().saturating_sub(1);
    let leaves: Vec<usize> =
        (0..w.graph.n()).filter(|&v| w.layer_of[v] < last && w.tree.children(v).is_empty()).collect();
    Verdict::PrefixLimited {
        measured: leaves.len(),
        threshold: 0,
        within: leaves.is_empty(),
        witness: leaves.first().map(|&v| Witness::Vertex(w.label(v))),
    }
}

fn check_bounded(w: &LayeredWheel, bound: impl Fn(usize) -> Option<usize>) -> Verdict {
    (0..w.graph.n())
        .find(|&v| bound(w.layer_of[v]).is_some_and(|b| w.tree.children(v).len() > b))
        .map_or(Verdict::Holds, |v| fails(Witness::Vertex(w.label(v))))
}

fn check_upward_simplicial(w: &LayeredWheel) -> Verdict {
    for v in 0..w.graph.n() {
        let up: Vec<usize> =
            w.graph.neighbors(v).iter().copied().filter(|&a| a != v && w.tree.is_ancestor(a, v)).collect();
        for (i, &a) in up.iter().enumerate() {
            if let Some(&b) = up[i + 1..].iter().find(|&&b| !w.graph.has_edge(a, b)) {
                let (a, b) = if w.tree.depth(a) < w.tree.depth(b) { (a, b) } else { (b, a) };
                return fails(Witness::Triple(w.label(a), w.label(b), w.label(v)));
            }
        }
    }
    Verdict::Holds
}

fn check_upward_nested(w: &LayeredWheel) -> Verdict {
    for (a, b) in w.graph.edges() {
        let (u, x) = if w.tree.is_ancestor(a, b) {
            (a, b)
        } else if w.tree.is_ancestor(b, a) {
            (b, a)
        } else {
            continue;
        };
        let mut mid = w.tree.parent(x);
        while let Some(v) = mid {
            if v == u {
                break;
            }
            if !w.graph.has_edge(u, v) {
                return fails(Witness::Triple(w.label(u), w.label(v), w.label(x)));
            }
            mid = w.tree.parent(v);
        }
    }
    Verdict::Holds
}

impl LayeredWheel {
    /// Re-runs the check of `condition` restricted to `witness`; true when
    /// the witness does exhibit a violation.
    pub fn confirms(&self, condition: Condition, witness: &Witness, params: &AxiomParams) -> bool {
        let idx = |l: &Label| self.graph.index_of(*l);
        match (condition, witness) {
            (Condition::Layer, Witness::Path(p)) if p.len() == 2 => match (idx(&p[0]), idx(&p[1])) {
                (Some(a), Some(b)) => {
                    let layer = &self.layers[self.layer_of[a]];
                    let adjacent_in_order = layer.windows(2).any(|x| x == [a, b]);
                    adjacent_in_order && !self.graph.has_edge(a, b)
                }
                _ => false,
            },
            (Condition::Layer, Witness::Edge(x, y)) => match (idx(x), idx(y)) {
                (Some(a), Some(b)) => {
                    let layer = &self.layers[self.layer_of[a]];
                    let pa = layer.iter().position(|&v| v == a);
                    let pb = layer.iter().position(|&v| v == b);
                    self.graph.has_edge(a, b)
                        && self.is_layer_edge(a, b)
                        && matches!((pa, pb), (Some(pa), Some(pb)) if pa.abs_diff(pb) != 1)
                }
                _ => false,
            },
            (Condition::Treedepth | Condition::UpwardRestricted, Witness::Edge(x, y)) => match (idx(x), idx(y)) {
                (Some(a), Some(b)) => self.graph.has_edge(a, b) && !self.is_layer_edge(a, b) && !self.tree.related(a, b),
                _ => false,
            },
            (Condition::Stroll, Witness::Edge(x, y)) => match (idx(x), idx(y)) {
                (Some(a), Some(b)) => {
                    self.graph.has_edge(a, b) && !self.is_layer_edge(a, b) && !stroll_indices(self, a, b, params.stroll_t)
                }
                _ => false,
            },
            (Condition::Proper, &Witness::LayerPair(i, j)) => {
                i < self.layers.len()
                    && j < self.layers.len()
                    && self.layers[i].iter().all(|&a| self.layers[j].iter().all(|&b| !self.graph.has_edge(a, b)))
            }
            (Condition::Neat, Witness::Vertex(x)) => idx(x).is_some_and(|v| {
                self.tree.children(v).is_empty() && self.layer_of[v] + 1 < self.layers.len()
            }),
            (Condition::Bounded, Witness::Vertex(x)) => {
                idx(x).is_some_and(|v| params.d.is_some_and(|d| self.tree.children(v).len() > d))
            }
            (Condition::FBounded, Witness::Vertex(x)) => idx(x).is_some_and(|v| {
                let bound = params.f.as_ref().and_then(|f| f.get(self.layer_of[v]).copied());
                bound.is_some_and(|b| self.tree.children(v).len() > b)
            }),
            (Condition::UpwardRestricted, Witness::Vertex(x)) => match (idx(x), params.upward_bound) {
                (Some(v), Some(bound)) => upward_set(self, v).is_some_and(|s| s.len() > bound),
                _ => false,
            },
            (Condition::UpwardSimplicial, Witness::Triple(x, y, z)) => match (idx(x), idx(y), idx(z)) {
                (Some(a), Some(b), Some(v)) => {
                    a != b
                        && self.tree.is_ancestor(a, v)
                        && self.tree.is_ancestor(b, v)
                        && a != v
                        && b != v
                        && self.graph.has_edge(a, v)
                        && self.graph.has_edge(b, v)
                        && !self.graph.has_edge(a, b)
                }
                _ => false,
            },
            (Condition::UpwardNested, Witness::Triple(x, y, z)) => match (idx(x), idx(y), idx(z)) {
                (Some(u), Some(v), Some(x)) => {
                    u != v
                        && v != x
                        && self.tree.is_ancestor(u, v)
                        && self.tree.is_ancestor(v, x)
                        && self.graph.has_edge(u, x)
                        && !self.graph.has_edge(u, v)
                }
                _ => false,
            },
            _ => false,
        }
    }
}

/// Minimal `X_v` for every vertex `v`: the outer endpoints of non-layer edges
/// leaving the subtree of `v`. Fails when such an endpoint is not an
/// ancestor of `v`.
pub fn compute_upward_restriction(w: &LayeredWheel) -> Result<BTreeMap<Label, Vec<Label>>> {
    if let Verdict::Fails { witness } = check_treedepth(w) {
        return Err(Error::Precondition(format!("non-layer edge between unrelated vertices: {witness:?}")));
    }
    let n = w.graph.n();
    let mut sets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &v in w.tree.preorder().iter().rev() {
        let mut s: BTreeSet<usize> =
            w.graph.neighbors(v).iter().copied().filter(|&y| !w.is_layer_edge(v, y)).collect();
        for &c in w.tree.children(v) {
            s.extend(sets[c].iter().copied());
        }
        s.retain(|&y| !w.tree.is_ancestor(v, y));
        sets[v] = s;
    }
    Ok((0..n)
        .map(|v| {
            let mut labels: Vec<Label> = sets[v].iter().map(|&y| w.label(y)).collect();
            labels.sort_unstable();
            (w.label(v), labels)
        })
        .collect())
}

fn upward_set(w: &LayeredWheel, v: usize) -> Option<Vec<usize>> {
    let mut out = BTreeSet::new();
    for &x in w.tree.descendants(v) {
        for &y in w.graph.neighbors(x) {
            if !w.is_layer_edge(x, y) && !w.tree.is_ancestor(v, y) {
                out.insert(y);
            }
        }
    }
    out.iter().all(|&y| w.tree.is_ancestor(y, v)).then(|| out.into_iter().collect())
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrollQuery {
    pub u: Label,
    pub v: Label,
    pub t: usize,
}

/// Whether a `t`-stroll joins `q.u` and `q.v`.
pub fn t_stroll_exists(w: &LayeredWheel, q: StrollQuery) -> Result<bool> {
    let a = w.graph.resolve(q.u)?;
    let b = w.graph.resolve(q.v)?;
    Ok(stroll_indices(w, a, b, q.t))
}

/// A stroll never re-enters a layer and tree edges move one layer, so the
/// layers it visits are monotone: horizontal runs of at most `t` layer edges
/// separated by single tree edges towards the target layer.
fn stroll_indices(w: &LayeredWheel, a: usize, b: usize, t: usize) -> bool {
    if a == b {
        return true;
    }
    let (top, bottom) = if w.layer_of[a] <= w.layer_of[b] { (a, b) } else { (b, a) };
    let target_layer = w.layer_of[bottom];
    let mut frontier: Vec<usize> = vec![top];
    let mut dist: HashMap<usize, usize> = HashMap::new();
    loop {
        // Everything within `t` layer edges of the entry points.
        dist.clear();
        let mut queue: std::collections::VecDeque<usize> = std::collections::VecDeque::new();
        for &e in &frontier {
            if dist.insert(e, 0).is_none() {
                queue.push_back(e);
            }
        }
        while let Some(x) = queue.pop_front() {
            let d = dist[&x];
            if d == t {
                continue;
            }
            for &y in w.graph.neighbors(x) {
                if w.is_layer_edge(x, y) && !dist.contains_key(&y) {
                    dist.insert(y, d + 1);
                    queue.push_back(y);
                }
            }
        }
        let layer = w.layer_of[frontier[0]];
        if layer == target_layer {
            return dist.contains_key(&bottom);
        }
        let mut next: Vec<usize> = dist.keys().flat_map(|&x| w.tree.children(x).iter().copied()).collect();
        if next.is_empty() {
            return false;
        }
        next.sort_unstable();
        frontier = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wheel::{build_trianglefree_wheel, build_wheel};

    fn lw(w: &WheelPrefix) -> LayeredWheel {
        LayeredWheel::from_prefix(w, View::Total)
    }

    /// Every simple path in `(V, E(T) ∪ E_L)` from `a` to `b`, filtered by the
    /// stroll rules.
    fn brute_stroll(w: &LayeredWheel, a: usize, b: usize, t: usize) -> bool {
        fn go(w: &LayeredWheel, path: &mut Vec<usize>, b: usize, t: usize) -> bool {
            let x = *path.last().unwrap();
            if x == b {
                let mut run = 0;
                for p in path.windows(2) {
                    run = if w.is_layer_edge(p[0], p[1]) { run + 1 } else { 0 };
                    if run > t {
                        return false;
                    }
                }
                let mut closed = BTreeSet::new();
                for p in path.windows(2) {
                    if w.layer_of[p[0]] != w.layer_of[p[1]] {
                        if !closed.insert(w.layer_of[p[0]]) {
                            return false;
                        }
                        if closed.contains(&w.layer_of[p[1]]) {
                            return false;
                        }
                    }
                }
                return true;
            }
            let mut nbrs: Vec<usize> = w.tree.children(x).to_vec();
            nbrs.extend(w.tree.parent(x));
            nbrs.extend(w.graph.neighbors(x).iter().copied().filter(|&y| w.is_layer_edge(x, y)));
            for y in nbrs {
                if !path.contains(&y) {
                    path.push(y);
                    if go(w, path, b, t) {
                        return true;
                    }
                    path.pop();
                }
            }
            false
        }
        go(w, &mut vec![a], b, t)
    }

    #[test]
    fn standard_prefixes_satisfy_core_conditions() {
        for t in 1..=3 {
            for depth in 0..=3 {
                if t == 3 && depth == 3 {
                    continue;
                }
                let w = build_wheel(t, depth).unwrap();
                let r = validate_axioms(&lw(&w), &AxiomParams::for_prefix(&w));
                for c in [
                    Condition::Layer,
                    Condition::Treedepth,
                    Condition::Stroll,
                    Condition::Proper,
                    Condition::Bounded,
                    Condition::UpwardRestricted,
                    Condition::UpwardNested,
                ] {
                    assert!(r.verdict(c).holds(), "t={t} depth={depth} condition {}: {:?}", c.name(), r.verdict(c));
                }
                assert!(r.verdict(Condition::Neat).holds());
                assert!(r.max_upward_restriction.unwrap() <= t + 1);
            }
        }
    }

    #[test]
    fn upward_simplicial_fails_for_t2() {
        let w = build_wheel(2, 3).unwrap();
        let params = AxiomParams::for_prefix(&w);
        // upward neighbourhoods are cliques of the total graph
        assert!(validate_axioms(&lw(&w), &params).verdict(Condition::UpwardSimplicial).holds());
        let l = LayeredWheel::from_prefix(&w, View::Real);
        let r = validate_axioms(&l, &params);
        let v = r.verdict(Condition::UpwardSimplicial);
        assert!(!v.holds());
        assert!(l.confirms(Condition::UpwardSimplicial, v.witness().unwrap(), &params));
    }

    #[test]
    fn single_vertex_is_vacuous() {
        let w = build_wheel(1, 0).unwrap();
        let r = validate_axioms(&lw(&w), &AxiomParams::default());
        assert!(r.conditions.values().all(Verdict::holds), "{r:?}");
    }

    #[test]
    fn rewired_edge_breaks_treedepth() {
        let w = build_wheel(1, 2).unwrap();
        let mut f = w.to_file();
        // move a cross edge from L2 so that its upper end is an unrelated L1 vertex
        let (k, [a, b]) = f
            .black
            .iter()
            .copied()
            .enumerate()
            .find(|(_, [a, b])| w.layer_of(*a as usize) != w.layer_of(*b as usize) && w.layer_of((*a).max(*b) as usize) == 2)
            .unwrap();
        let low = a.max(b);
        let other = w.layers()[1]
            .iter()
            .map(|&x| x as Label)
            .find(|&x| !w.tree().is_ancestor(x as usize, low as usize))
            .unwrap();
        f.black[k] = [other, low];
        let l = LayeredWheel::from_wheel_file(&f, View::Total).unwrap();
        let params = AxiomParams::default();
        let r = validate_axioms(&l, &params);
        let v = r.verdict(Condition::Treedepth);
        assert_eq!(v.witness(), Some(&Witness::Edge(other.min(low), other.max(low))));
        assert!(l.confirms(Condition::Treedepth, v.witness().unwrap(), &params));
        assert!(compute_upward_restriction(&l).is_err());
    }

    #[test]
    fn strolls_match_brute_force() {
        let w = build_wheel(1, 2).unwrap();
        let l = lw(&w);
        for t in 0..=2 {
            for a in 0..w.n() {
                for b in 0..w.n() {
                    assert_eq!(stroll_indices(&l, a, b, t), brute_stroll(&l, a, b, t), "a={a} b={b} t={t}");
                }
            }
        }
    }

    #[test]
    fn stroll_basics() {
        let w = build_wheel(1, 2).unwrap();
        let l = lw(&w);
        let q = |u, v, t| t_stroll_exists(&l, StrollQuery { u, v, t }).unwrap();
        assert!(q(5, 5, 0));
        assert!(q(5, 1, 0));
        // L1 = [1,2,3]: 1 and 3 are two layer edges apart
        assert!(!q(1, 3, 1));
        assert!(q(1, 3, 2));
        assert!(t_stroll_exists(&l, StrollQuery { u: 0, v: 999, t: 0 }).is_err());
    }

    #[test]
    fn stroll_zero_is_ancestry() {
        let w = build_wheel(2, 2).unwrap();
        let l = lw(&w);
        for a in 0..w.n() {
            for b in 0..w.n() {
                assert_eq!(stroll_indices(&l, a, b, 0), w.tree().related(a, b));
            }
        }
    }

    #[test]
    fn upward_restriction_examples() {
        let w = build_wheel(2, 3).unwrap();
        let x = compute_upward_restriction(&lw(&w)).unwrap();
        assert!(x[&0].is_empty());
        for v in 0..w.n() {
            let strict: Vec<Label> = w.upward_strict(v).map(|y| y as Label).collect();
            assert!(x[&(v as Label)].iter().all(|y| strict.contains(y)));
            if w.in_last_layer(v) {
                let b = w.birth(v).unwrap();
                let mut br: Vec<Label> = b.targets().collect();
                br.sort_unstable();
                assert_eq!(x[&(v as Label)], br);
            }
        }
    }

    #[test]
    fn trianglefree_prefix_conditions() {
        let w = build_trianglefree_wheel(2, 3).unwrap();
        let l = LayeredWheel::from_prefix(&w, View::Real);
        let r = validate_axioms(&l, &AxiomParams::for_prefix(&w));
        for c in [Condition::Layer, Condition::Treedepth, Condition::Proper, Condition::Bounded, Condition::UpwardRestricted] {
            assert!(r.verdict(c).holds(), "condition {}", c.name());
        }
    }

    #[test]
    fn inconsistent_inputs_rejected() {
        let w = build_wheel(1, 1).unwrap();
        let mut f = w.to_file();
        f.layers[1].pop();
        assert!(LayeredWheel::from_wheel_file(&f, View::Total).is_err());
        let mut f = w.to_file();
        f.layers.swap(0, 1);
        assert!(LayeredWheel::from_wheel_file(&f, View::Total).is_err());
    }
}
