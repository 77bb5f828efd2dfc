//! Chordal graphs and trigraphs: recognition, tree representations with the
//! sibling condition, and chordal completion.

use std::collections::{BTreeMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{AdjacencyType, Graph, Label, Trigraph};
use crate::oracles::exact_treewidth;
use crate::tree::RootedTree;

/// A perfect elimination order, by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationOrder {
    pub ordering: Vec<Label>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chordality {
    Chordal(EliminationOrder),
    /// An induced cycle of length at least 4.
    Cycle(Vec<Label>),
}

/// Whether `order` (indices) is a perfect elimination order of `g`.
pub fn is_perfect_elimination_order(g: &Graph, order: &[usize]) -> bool {
    let n = g.n();
    if order.len() != n {
        return false;
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return false;
        }
        pos[v] = i;
    }
    order.iter().all(|&v| {
        let later: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| pos[u] > pos[v]).collect();
        later.iter().enumerate().all(|(i, &a)| later[i + 1..].iter().all(|&b| g.has_edge(a, b)))
    })
}

/// Maximum cardinality search; the reverse visit order is a perfect
/// elimination order exactly when `g` is chordal.
fn mcs_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut done = vec![false; n];
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    buckets[0] = (0..n).rev().collect();
    let mut top = 0usize;
    let mut visit = Vec::with_capacity(n);
    while visit.len() < n {
        let v = loop {
            match buckets[top].pop() {
                Some(v) if !done[v] && weight[v] == top => break v,
                Some(_) => {}
                None => top -= 1,
            }
        };
        done[v] = true;
        visit.push(v);
        for &u in g.neighbors(v) {
            if !done[u] {
                weight[u] += 1;
                buckets[weight[u]].push(u);
                top = top.max(weight[u]);
            }
        }
    }
    visit.reverse();
    visit
}

pub fn chordality(g: &Graph) -> Chordality {
    let order = mcs_order(g);
    if is_perfect_elimination_order(g, &order) {
        Chordality::Chordal(EliminationOrder { ordering: order.iter().map(|&v| g.label(v)).collect() })
    } else {
        Chordality::Cycle(
            induced_long_cycle(g).expect("a graph without a perfect elimination order has a long induced cycle"),
        )
    }
}

pub fn is_chordal(g: &Graph) -> bool {
    matches!(chordality(g), Chordality::Chordal(_))
}

/// For some vertex `v` with non-adjacent neighbours `x, y`, a shortest
/// `x–y` path avoiding the rest of `N[v]` closes an induced cycle through `v`.
fn induced_long_cycle(g: &Graph) -> Option<Vec<Label>> {
    let n = g.n();
    for v in 0..n {
        let nb = g.neighbors(v);
        for (i, &x) in nb.iter().enumerate() {
            for &y in &nb[i + 1..] {
                if g.has_edge(x, y) {
                    continue;
                }
                let blocked = |z: usize| z == v || (z != x && z != y && g.has_edge(z, v));
                let mut prev = vec![usize::MAX; n];
                prev[x] = x;
                let mut q = VecDeque::from([x]);
                while let Some(a) = q.pop_front() {
                    if a == y {
                        break;
                    }
                    for &b in g.neighbors(a) {
                        if prev[b] == usize::MAX && !blocked(b) {
                            prev[b] = a;
                            q.push_back(b);
                        }
                    }
                }
                if prev[y] != usize::MAX {
                    let mut cycle = vec![g.label(v)];
                    let mut cur = y;
                    let mut path = vec![y];
                    while cur != x {
                        cur = prev[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    cycle.extend(path.into_iter().map(|z| g.label(z)));
                    return Some(cycle);
                }
            }
        }
    }
    None
}

fn is_simplicial_in(adj: &[HashSet<usize>], v: usize) -> bool {
    let nb: Vec<usize> = adj[v].iter().copied().collect();
    nb.iter().enumerate().all(|(i, a)| nb[i + 1..].iter().all(|b| adj[*a].contains(b)))
}

/// The smallest-label simplicial vertex.
pub fn find_simplicial(g: &Graph) -> Result<Label> {
    if g.n() == 0 {
        return Err(Error::Precondition("empty graph has no simplicial vertex".into()));
    }
    let adj: Vec<HashSet<usize>> = (0..g.n()).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut by_label: Vec<usize> = (0..g.n()).collect();
    by_label.sort_by_key(|&v| g.label(v));
    match by_label.into_iter().find(|&v| is_simplicial_in(&adj, v)) {
        Some(v) => Ok(g.label(v)),
        None => Err(Error::NotChordal(induced_long_cycle(g).unwrap_or_default())),
    }
}

/// Rooted tree over the indices of `trigraph`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeRepresentation {
    pub trigraph: Trigraph,
    pub tree: RootedTree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeRepFile {
    pub root: Option<Label>,
    pub parent: BTreeMap<Label, Label>,
}

impl TreeRepresentation {
    pub fn to_file(&self) -> TreeRepFile {
        let l = |v: usize| self.trigraph.label(v);
        TreeRepFile {
            root: self.tree.root().map(l),
            parent: (0..self.tree.len()).filter_map(|v| self.tree.parent(v).map(|p| (l(v), l(p)))).collect(),
        }
    }

    pub fn from_file(trigraph: Trigraph, f: &TreeRepFile) -> Result<Self> {
        let mut parent = vec![None; trigraph.n()];
        for (&c, &p) in &f.parent {
            let (ci, pi) = (trigraph.index_of(c), trigraph.index_of(p));
            match (ci, pi) {
                (Some(ci), Some(pi)) => parent[ci] = Some(pi),
                _ => return Err(Error::Inconsistent(format!("tree edge {c}-{p} leaves the trigraph"))),
            }
        }
        let tree = RootedTree::from_parents(parent)?;
        if tree.root().map(|r| trigraph.label(r)) != f.root {
            return Err(Error::Inconsistent("declared root does not match the parent map".into()));
        }
        Ok(TreeRepresentation { trigraph, tree })
    }
}

/// Builds a tree representation by peeling smallest-label simplicial
/// vertices of the total graph and re-inserting them in reverse.
pub fn tree_representation(h: &Trigraph) -> Result<TreeRepresentation> {
    let n = h.n();
    let total = h.total_graph();
    let mut adj: Vec<HashSet<usize>> = (0..n).map(|v| total.neighbors(v).iter().copied().collect()).collect();
    let mut by_label: Vec<usize> = (0..n).collect();
    by_label.sort_by_key(|&v| h.label(v));
    let mut alive = vec![true; n];
    let mut peel = Vec::with_capacity(n);
    for _ in 0..n {
        let v = by_label
            .iter()
            .copied()
            .find(|&v| alive[v] && is_simplicial_in(&adj, v))
            .ok_or_else(|| Error::NotChordal(induced_long_cycle(&total).unwrap_or_default()))?;
        alive[v] = false;
        for u in std::mem::take(&mut adj[v]) {
            adj[u].remove(&v);
        }
        peel.push(v);
    }

    // Re-insert in reverse peeling order.
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut depth = vec![0usize; n];
    let mut present = vec![false; n];
    let mut root = None;
    let strict_ancestors = |parent: &[Option<usize>], v: usize| {
        std::iter::successors(parent[v], move |&x| parent[x]).collect::<Vec<usize>>()
    };
    for &v in peel.iter().rev() {
        let Some(r) = root else {
            root = Some(v);
            present[v] = true;
            continue;
        };
        let nbrs: Vec<usize> = total.neighbors(v).iter().copied().filter(|&u| present[u]).collect();
        let attach = if nbrs.is_empty() {
            // leftmost deepest leaf
            let mut best: Option<usize> = None;
            let mut stack = vec![r];
            while let Some(x) = stack.pop() {
                if children[x].is_empty() && best.is_none_or(|b| depth[x] > depth[b]) {
                    best = Some(x);
                }
                stack.extend(children[x].iter().rev());
            }
            best.expect("a nonempty tree has a leaf")
        } else {
            let u = *nbrs.iter().max_by_key(|&&x| depth[x]).expect("nonempty");
            if nbrs.iter().any(|&x| !strict_ancestors(&parent, u).contains(&x) && x != u) {
                return Err(Error::Internal("neighbourhood of a simplicial vertex is not a chain".into()));
            }
            let agrees = |w: usize| {
                strict_ancestors(&parent, w)
                    .into_iter()
                    .all(|x| h.adjacency_type(w, x) == h.adjacency_type(v, x))
            };
            let matching: Vec<usize> = children[u].iter().copied().filter(|&w| agrees(w)).collect();
            match matching.as_slice() {
                [] => u,
                [w] => {
                    // deepest agreeing descendant, first in preorder
                    let mut best = (depth[*w], *w);
                    let mut stack = vec![*w];
                    while let Some(x) = stack.pop() {
                        if depth[x] > best.0 && agrees(x) {
                            best = (depth[x], x);
                        }
                        for &c in children[x].iter().rev() {
                            stack.push(c);
                        }
                    }
                    best.1
                }
                _ => {
                    return Err(Error::Internal(format!(
                        "sibling condition broken: {} children of {} match {}",
                        matching.len(),
                        h.label(u),
                        h.label(v)
                    )))
                }
            }
        };
        parent[v] = Some(attach);
        children[attach].push(v);
        depth[v] = depth[attach] + 1;
        present[v] = true;
    }
    let tree = RootedTree::from_parents(parent)?;
    let rep = TreeRepresentation { trigraph: h.clone(), tree };
    match validate_representation(&rep) {
        RepVerdict::Holds => Ok(rep),
        bad => Err(Error::Internal(format!("constructed representation is invalid: {bad:?}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum RepVerdict {
    Holds,
    /// Condition (1): two upward neighbours of `v` are non-adjacent.
    UpwardNotClique { v: Label, a: Label, b: Label },
    /// Condition (2): neighbour `x` of `v` is neither a descendant nor an
    /// ancestor in the closed neighbourhood of `parent(v)`.
    NeighbourEscapes { v: Label, x: Label },
    /// Condition (3): siblings with identical types towards all ancestors.
    SiblingClash { u: Label, v: Label },
    VertexMismatch,
}

impl RepVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, RepVerdict::Holds)
    }
}

pub fn validate_representation(rep: &TreeRepresentation) -> RepVerdict {
    let h = &rep.trigraph;
    let t = &rep.tree;
    if h.n() != t.len() {
        return RepVerdict::VertexMismatch;
    }
    let l = |v: usize| h.label(v);
    for v in 0..h.n() {
        let up: Vec<usize> = h.neighbors(v).iter().copied().filter(|&x| t.is_ancestor(x, v)).collect();
        for (i, &a) in up.iter().enumerate() {
            if let Some(&b) = up[i + 1..].iter().find(|&&b| h.adjacency_type(a, b) == AdjacencyType::NonEdge) {
                return RepVerdict::UpwardNotClique { v: l(v), a: l(a), b: l(b) };
            }
        }
    }
    for p in 0..h.n() {
        let kids = t.children(p);
        let anc: Vec<usize> = t.ancestors(p).collect();
        for (i, &a) in kids.iter().enumerate() {
            for &b in &kids[i + 1..] {
                if anc.iter().all(|&x| h.adjacency_type(a, x) == h.adjacency_type(b, x)) {
                    return RepVerdict::SiblingClash { u: l(a), v: l(b) };
                }
            }
        }
    }
    for v in 0..h.n() {
        let Some(p) = t.parent(v) else { continue };
        for &x in h.neighbors(v) {
            let ok = t.is_ancestor(v, x)
                || (t.is_ancestor(x, v) && (x == p || h.adjacency_type(x, p) != AdjacencyType::NonEdge));
            if !ok {
                return RepVerdict::NeighbourEscapes { v: l(v), x: l(x) };
            }
        }
    }
    RepVerdict::Holds
}

/// Trigraph with black edges `E(h)` and red edges the fill of an optimal
/// tree decomposition, so the total graph is chordal with clique number
/// `tw(h) + 1 ≤ t + 1`.
pub fn chordal_complete(h: &Graph, t: usize) -> Result<Trigraph> {
    let black: Vec<(Label, Label)> = h.edge_labels();
    if let Chordality::Chordal(_) = chordality(h) {
        let omega = crate::oracles::clique_number(h)?;
        if omega <= t + 1 {
            return Trigraph::with_labels(h.labels().to_vec(), &black, &[]);
        }
        return Err(Error::TreewidthTooLarge { found: omega.saturating_sub(1), allowed: t });
    }
    let exact = exact_treewidth(h)?;
    if exact.width > t {
        return Err(Error::TreewidthTooLarge { found: exact.width, allowed: t });
    }
    let mut red: HashSet<(Label, Label)> = HashSet::new();
    for bag in &exact.decomposition.bags {
        for (i, &a) in bag.iter().enumerate() {
            for &b in &bag[i + 1..] {
                if !h.has_edge_labels(a, b) {
                    red.insert((a.min(b), a.max(b)));
                }
            }
        }
    }
    let mut red: Vec<(Label, Label)> = red.into_iter().collect();
    red.sort_unstable();
    let out = Trigraph::with_labels(h.labels().to_vec(), &black, &red)?;
    if !is_chordal(&out.total_graph()) {
        return Err(Error::Internal("completion is not chordal".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::random_chordal_trigraph;
    use crate::graph::named;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn recognition_basics() {
        assert!(is_chordal(&named::path(5)));
        assert!(is_chordal(&named::complete(5)));
        assert!(is_chordal(&Graph::empty(0)));
        match chordality(&named::cycle(4)) {
            Chordality::Cycle(c) => assert_eq!(c.len(), 4),
            other => panic!("{other:?}"),
        }
        match chordality(&named::grid(3, 3)) {
            Chordality::Cycle(c) => {
                let g = named::grid(3, 3);
                assert!(c.len() >= 4);
                let sub = g.induced_subgraph(&c).unwrap();
                assert_eq!(sub.m(), c.len());
                assert!((0..sub.n()).all(|v| sub.degree(v) == 2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn interval_graphs_are_chordal() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let iv: Vec<(u32, u32)> = (0..12)
                .map(|_| {
                    let a = rng.gen_range(0..30);
                    (a, a + rng.gen_range(0..8))
                })
                .collect();
            let mut edges = Vec::new();
            for i in 0..12 {
                for j in i + 1..12 {
                    if iv[i].0 <= iv[j].1 && iv[j].0 <= iv[i].1 {
                        edges.push((i as Label, j as Label));
                    }
                }
            }
            let g = Graph::from_edges(12, &edges).unwrap();
            let Chordality::Chordal(o) = chordality(&g) else { panic!("interval graph rejected") };
            // independent check: later neighbours form a clique
            let pos: Vec<usize> = {
                let mut p = vec![0; 12];
                for (i, &v) in o.ordering.iter().enumerate() {
                    p[v as usize] = i;
                }
                p
            };
            for v in 0..12 {
                let later: Vec<usize> = (0..12).filter(|&u| g.has_edge(u, v) && pos[u] > pos[v]).collect();
                for &a in &later {
                    for &b in &later {
                        assert!(a == b || g.has_edge(a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn simplicial_vertices() {
        assert_eq!(find_simplicial(&Graph::empty(1)).unwrap(), 0);
        assert_eq!(find_simplicial(&named::path(3)).unwrap(), 0);
        let g = Graph::with_labels(vec![7, 3, 9], &[(7, 3), (3, 9)]).unwrap();
        assert_eq!(find_simplicial(&g).unwrap(), 7);
        assert!(matches!(find_simplicial(&named::cycle(5)), Err(Error::NotChordal(c)) if c.len() == 5));
    }

    fn all_parent_arrays(n: usize) -> Vec<Vec<Option<usize>>> {
        let mut out = Vec::new();
        let mut cur = vec![None; n];
        fn rec(i: usize, n: usize, cur: &mut Vec<Option<usize>>, out: &mut Vec<Vec<Option<usize>>>) {
            if i == n {
                out.push(cur.clone());
                return;
            }
            for p in (0..n).map(Some).chain([None]) {
                if p != Some(i) {
                    cur[i] = p;
                    rec(i + 1, n, cur, out);
                }
            }
        }
        rec(0, n, &mut cur, &mut out);
        out.into_iter().filter(|p| RootedTree::from_parents(p.clone()).is_ok()).collect()
    }

    #[test]
    fn black_triangle_only_chains() {
        let h = Trigraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)], &[]).unwrap();
        let mut valid = 0;
        for p in all_parent_arrays(3) {
            let tree = RootedTree::from_parents(p).unwrap();
            let is_chain = (0..3).all(|v| tree.children(v).len() <= 1);
            let ok = validate_representation(&TreeRepresentation { trigraph: h.clone(), tree }).holds();
            assert_eq!(ok, is_chain);
            valid += ok as usize;
        }
        assert_eq!(valid, 6);
        let rep = tree_representation(&h).unwrap();
        assert!((0..3).all(|v| rep.tree.children(v).len() <= 1));
    }

    #[test]
    fn representation_small_cases() {
        let one = Trigraph::from_edges(1, &[], &[]).unwrap();
        assert_eq!(tree_representation(&one).unwrap().tree.len(), 1);
        // isolated vertex 2 next to a black edge 0-1: peeling 0, 1, 2 leaves
        // 2 as the root, 1 is isolated in {1, 2} and hangs below the leaf 2
        let h = Trigraph::from_edges(3, &[(0, 1)], &[]).unwrap();
        let rep = tree_representation(&h).unwrap();
        assert_eq!(rep.tree.parents(), &[Some(1), Some(2), None]);
        assert!(validate_representation(&rep).holds());
        let clash = TreeRepresentation {
            trigraph: Trigraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)], &[]).unwrap(),
            tree: RootedTree::from_parents(vec![None, Some(0), Some(0)]).unwrap(),
        };
        assert_eq!(validate_representation(&clash), RepVerdict::SiblingClash { u: 1, v: 2 });
    }

    #[test]
    fn representation_exists_iff_brute_force_finds_one() {
        // every 4-vertex chordal trigraph with at most 2 red edges
        let pairs: Vec<(Label, Label)> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        let trees = all_parent_arrays(4);
        let mut code = vec![0u8; pairs.len()];
        loop {
            let black: Vec<_> = pairs.iter().zip(&code).filter(|(_, &c)| c == 1).map(|(p, _)| *p).collect();
            let red: Vec<_> = pairs.iter().zip(&code).filter(|(_, &c)| c == 2).map(|(p, _)| *p).collect();
            let h = Trigraph::from_edges(4, &black, &red).unwrap();
            if is_chordal(&h.total_graph()) {
                let rep = tree_representation(&h).unwrap();
                assert!(validate_representation(&rep).holds());
                let some = trees.iter().any(|p| {
                    let tree = RootedTree::from_parents(p.clone()).unwrap();
                    validate_representation(&TreeRepresentation { trigraph: h.clone(), tree }).holds()
                });
                assert!(some);
            } else {
                assert!(tree_representation(&h).is_err());
            }
            let mut j = 0;
            while j < code.len() && code[j] == 2 {
                code[j] = 0;
                j += 1;
            }
            if j == code.len() {
                break;
            }
            code[j] += 1;
        }
    }

    #[test]
    fn file_roundtrip() {
        let h = random_chordal_trigraph(10, 3, 0.5, 1);
        let rep = tree_representation(&h).unwrap();
        let f = rep.to_file();
        assert_eq!(TreeRepresentation::from_file(h, &f).unwrap(), rep);
    }

    #[test]
    fn completion_examples() {
        assert_eq!(chordal_complete(&named::path(3), 1).unwrap().red_count(), 0);
        let c4 = chordal_complete(&named::cycle(4), 2).unwrap();
        assert_eq!(c4.red_count(), 1);
        assert!(matches!(chordal_complete(&named::cycle(4), 1), Err(Error::TreewidthTooLarge { found: 2, allowed: 1 })));
        let g = named::grid(3, 3);
        let c = chordal_complete(&g, 3).unwrap();
        assert!(is_chordal(&c.total_graph()));
        assert_eq!(crate::oracles::clique_number(&c.total_graph()).unwrap(), 4);
        assert_eq!(c.real_graph(), g);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn random_chordal_roundtrip(n in 1usize..=12, k in 1usize..5, p in 0.0f64..1.0, seed in any::<u64>()) {
            let h = random_chordal_trigraph(n, k, p, seed);
            prop_assert!(is_chordal(&h.total_graph()));
            let rep = tree_representation(&h).unwrap();
            prop_assert!(validate_representation(&rep).holds());
            for (a, b) in h.total_graph().edges() {
                prop_assert!(rep.tree.related(a, b));
            }
        }
    }
}
