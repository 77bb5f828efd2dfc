//! Exact, exhaustive verifiers. Caps are hard errors.

use std::collections::{HashMap, HashSet, VecDeque};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Label};
use crate::td::{Bramble, TreeDecomposition};
use crate::wheel::WheelPrefix;

pub const TREEWIDTH_CAP: usize = 18;
pub const HITTING_SET_MAX_SETS: usize = 20;
pub const HITTING_SET_MAX_ELEMENTS: usize = 25;
pub const CLIQUE_CAP: usize = 200_000;
pub const TWIN_WIDTH_CAP: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactTreewidthResult {
    pub width: usize,
    pub decomposition: TreeDecomposition,
    /// Elimination order realising `width`.
    pub order: Vec<Label>,
}

#[derive(Copy, Clone, Debug)]
pub struct ExactOptions {
    pub cap: usize,
    pub deadline: Option<Instant>,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions { cap: TREEWIDTH_CAP, deadline: None }
    }
}

pub fn exact_treewidth(g: &Graph) -> Result<ExactTreewidthResult> {
    exact_treewidth_with(g, ExactOptions::default())
}

/// Dynamic programming over vertex subsets: `TW(S)` is the best max-degree
/// at elimination over orders that eliminate `S` first, and
/// `TW(S) = min_{v ∈ S} max(TW(S - v), |Q(S - v, v)|)` where `Q(S, v)` is the
/// set of vertices outside `S ∪ {v}` reachable from `v` through `S`.
pub fn exact_treewidth_with(g: &Graph, opts: ExactOptions) -> Result<ExactTreewidthResult> {
    let n = g.n();
    if n > opts.cap || n > 30 {
        return Err(Error::SizeCap { what: "exact treewidth vertex count", size: n, cap: opts.cap.min(30) });
    }
    if n == 0 {
        return Ok(ExactTreewidthResult { width: 0, decomposition: TreeDecomposition::default(), order: vec![] });
    }
    let adj: Vec<u32> =
        (0..n).map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u))).collect();
    let q_size = |s: u32, v: usize| -> u32 {
        let mut comp = 1u32 << v;
        let mut frontier = comp;
        let mut reach = 0u32;
        while frontier != 0 {
            let mut nb = 0u32;
            let mut f = frontier;
            while f != 0 {
                let x = f.trailing_zeros() as usize;
                f &= f - 1;
                nb |= adj[x];
            }
            reach |= nb;
            frontier = nb & s & !comp;
            comp |= frontier;
        }
        (reach & !s & !(1u32 << v)).count_ones()
    };
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut tw = vec![u8::MAX; 1usize << n];
    tw[0] = 0;
    // S - v < S numerically, so increasing order is a valid DP order.
    for s in 1..=full {
        if s & 0xFFF == 0 {
            if let Some(d) = opts.deadline {
                if Instant::now() > d {
                    return Err(Error::Deadline);
                }
            }
        }
        let mut best = u8::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let sub = tw[prev as usize];
            if sub >= best {
                continue;
            }
            let q = q_size(prev, v) as u8;
            let val = sub.max(q);
            if val < best {
                best = val;
            }
        }
        tw[s as usize] = best;
    }
    // Recover an order: peel the last-eliminated vertex of the full set.
    let mut order_rev = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let mut rest = s;
        let target = tw[s as usize];
        let mut chosen = None;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            if tw[prev as usize].max(q_size(prev, v) as u8) == target {
                chosen = Some(v);
                break;
            }
        }
        let v = chosen.ok_or_else(|| Error::Internal("treewidth table inconsistent".into()))?;
        order_rev.push(v);
        s &= !(1 << v);
    }
    order_rev.reverse();
    let decomposition = decomposition_from_order(g, &order_rev);
    let width = tw[full as usize] as usize;
    debug_assert_eq!(decomposition.width(), width);
    Ok(ExactTreewidthResult { width, decomposition, order: order_rev.iter().map(|&v| g.label(v)).collect() })
}

/// Tree decomposition induced by an elimination order (indices of `g`):
/// bag of `v` is `v` plus its later neighbours in the filled graph.
pub fn decomposition_from_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut nbrs: Vec<HashSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut parent: Vec<Option<usize>> = vec![None; n];
    for &v in order {
        let later: Vec<usize> = nbrs[v].iter().copied().filter(|&u| pos[u] > pos[v]).collect();
        for (i, &a) in later.iter().enumerate() {
            for &b in &later[i + 1..] {
                nbrs[a].insert(b);
                nbrs[b].insert(a);
            }
        }
        parent[pos[v]] = later.iter().min_by_key(|&&u| pos[u]).map(|&u| pos[u]);
        let mut bag: Vec<Label> = std::iter::once(v).chain(later).map(|x| g.label(x)).collect();
        bag.sort_unstable();
        bags.push(bag);
    }
    let mut links: Vec<(usize, usize)> = Vec::new();
    let mut prev_root = None;
    for i in 0..n {
        match parent[i] {
            Some(p) => links.push((i, p)),
            None => {
                if let Some(r) = prev_root {
                    links.push((r, i));
                }
                prev_root = Some(i);
            }
        }
    }
    TreeDecomposition { bags, links }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "verdict")]
pub enum TdVerdict {
    Valid { width: usize },
    NotATree,
    UnknownVertex { vertex: Label },
    MissingVertex { vertex: Label },
    UncoveredEdge { u: Label, v: Label },
    DisconnectedBags { vertex: Label },
}

impl TdVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, TdVerdict::Valid { .. })
    }
}

pub fn verify_tree_decomposition(g: &Graph, td: &TreeDecomposition) -> TdVerdict {
    let k = td.bags.len();
    if k == 0 {
        return match g.labels().first() {
            None => TdVerdict::Valid { width: 0 },
            Some(&l) => TdVerdict::MissingVertex { vertex: l },
        };
    }
    if td.links.len() != k - 1 || td.links.iter().any(|&(a, b)| a >= k || b >= k || a == b) {
        return TdVerdict::NotATree;
    }
    let mut tree_adj = vec![Vec::new(); k];
    for &(a, b) in &td.links {
        tree_adj[a].push(b);
        tree_adj[b].push(a);
    }
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &tree_adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return TdVerdict::NotATree;
    }
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, bag) in td.bags.iter().enumerate() {
        for &l in bag {
            match g.index_of(l) {
                Some(v) => holders[v].push(i),
                None => return TdVerdict::UnknownVertex { vertex: l },
            }
        }
    }
    for v in 0..g.n() {
        if holders[v].is_empty() {
            return TdVerdict::MissingVertex { vertex: g.label(v) };
        }
    }
    for (a, b) in g.edges() {
        let hb: HashSet<usize> = holders[b].iter().copied().collect();
        if !holders[a].iter().any(|i| hb.contains(i)) {
            return TdVerdict::UncoveredEdge { u: g.label(a), v: g.label(b) };
        }
    }
    for v in 0..g.n() {
        let mine: HashSet<usize> = holders[v].iter().copied().collect();
        let start = holders[v][0];
        let mut reached = HashSet::from([start]);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &y in &tree_adj[x] {
                if mine.contains(&y) && reached.insert(y) {
                    stack.push(y);
                }
            }
        }
        if reached.len() != mine.len() {
            return TdVerdict::DisconnectedBags { vertex: g.label(v) };
        }
    }
    TdVerdict::Valid { width: td.width() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "problem")]
pub enum BrambleProblem {
    EmptySet { index: usize },
    UnknownVertex { vertex: Label },
    Disconnected { index: usize },
    NotTouching { first: usize, second: usize },
}

/// Checks that every set is non-empty and connected and all pairs touch.
pub fn check_bramble(g: &Graph, b: &Bramble) -> Result<(), BrambleProblem> {
    let mut idx_sets = Vec::with_capacity(b.sets.len());
    for (i, s) in b.sets.iter().enumerate() {
        if s.is_empty() {
            return Err(BrambleProblem::EmptySet { index: i });
        }
        let mut idx = Vec::with_capacity(s.len());
        for &l in s {
            idx.push(g.index_of(l).ok_or(BrambleProblem::UnknownVertex { vertex: l })?);
        }
        if !g.is_connected_subset(&idx) {
            return Err(BrambleProblem::Disconnected { index: i });
        }
        idx_sets.push(idx.into_iter().collect::<HashSet<usize>>());
    }
    for i in 0..idx_sets.len() {
        for j in i + 1..idx_sets.len() {
            let touch = idx_sets[i]
                .iter()
                .any(|&v| idx_sets[j].contains(&v) || g.neighbors(v).iter().any(|u| idx_sets[j].contains(u)));
            if !touch {
                return Err(BrambleProblem::NotTouching { first: i, second: j });
            }
        }
    }
    Ok(())
}

/// The layers `L_0 … L_i` of the real graph restricted to `L_{≤i}`.
pub fn layer_bramble(w: &WheelPrefix, i: usize) -> Result<Bramble> {
    if i > w.depth() {
        return Err(Error::InvalidParameter(format!("layer {i} not built (depth {})", w.depth())));
    }
    let sets: Vec<Vec<Label>> =
        w.layers()[..=i].iter().map(|l| l.iter().map(|&v| v as Label).collect()).collect();
    let host_vertices: Vec<Label> = sets.iter().flatten().copied().collect();
    let host = w.real_graph().induced_subgraph(&host_vertices)?;
    let b = Bramble::new(sets);
    check_bramble(&host, &b).map_err(|p| Error::Internal(format!("layer family is not a bramble: {p:?}")))?;
    Ok(b)
}

/// Minimum hitting set of `sets` (exact branch and bound with a disjoint
/// packing lower bound).
pub fn min_hitting_set(sets: &[Vec<Label>]) -> Result<Vec<Label>> {
    let mut elems: Vec<Label> = sets.iter().flatten().copied().collect();
    elems.sort_unstable();
    elems.dedup();
    if sets.len() > HITTING_SET_MAX_SETS && elems.len() > HITTING_SET_MAX_ELEMENTS {
        return Err(Error::SizeCap { what: "hitting set instance (sets)", size: sets.len(), cap: HITTING_SET_MAX_SETS });
    }
    if sets.iter().any(Vec::is_empty) {
        return Err(Error::Precondition("an empty set cannot be hit".into()));
    }
    let pos: HashMap<Label, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let isets: Vec<Vec<usize>> = sets
        .iter()
        .map(|s| {
            let mut v: Vec<usize> = s.iter().map(|e| pos[e]).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    let mut hits: Vec<Vec<usize>> = vec![Vec::new(); elems.len()];
    for (i, s) in isets.iter().enumerate() {
        for &e in s {
            hits[e].push(i);
        }
    }

    struct Search<'a> {
        sets: &'a [Vec<usize>],
        hits: &'a [Vec<usize>],
        cover: Vec<usize>,
        chosen: Vec<usize>,
        best: Vec<usize>,
    }
    impl Search<'_> {
        fn lower_bound(&self) -> usize {
            let mut used = HashSet::new();
            let mut count = 0;
            for (i, s) in self.sets.iter().enumerate() {
                if self.cover[i] == 0 && s.iter().all(|e| !used.contains(e)) {
                    used.extend(s.iter().copied());
                    count += 1;
                }
            }
            count
        }
        fn go(&mut self) {
            if self.chosen.len() + self.lower_bound() >= self.best.len() {
                return;
            }
            let open = (0..self.sets.len()).filter(|&i| self.cover[i] == 0).min_by_key(|&i| self.sets[i].len());
            let Some(i) = open else {
                self.best = self.chosen.clone();
                return;
            };
            let mut options = self.sets[i].clone();
            options.sort_by_key(|&e| std::cmp::Reverse(self.hits[e].iter().filter(|&&j| self.cover[j] == 0).count()));
            for e in options {
                for &j in &self.hits[e] {
                    self.cover[j] += 1;
                }
                self.chosen.push(e);
                self.go();
                self.chosen.pop();
                for &j in &self.hits[e] {
                    self.cover[j] -= 1;
                }
            }
        }
    }
    // any set system is hit by one element per set
    let mut s = Search {
        sets: &isets,
        hits: &hits,
        cover: vec![0; isets.len()],
        chosen: Vec::new(),
        best: (0..=isets.len()).collect(),
    };
    s.go();
    let mut out: Vec<Label> = s.best.iter().map(|&e| elems[e]).collect();
    out.sort_unstable();
    Ok(out)
}

/// Exact order of a bramble; fills in its certificate.
pub fn bramble_order(g: &Graph, b: &mut Bramble) -> Result<usize> {
    check_bramble(g, b).map_err(|p| Error::Precondition(format!("not a bramble: {p:?}")))?;
    let hs = min_hitting_set(&b.sets)?;
    let k = hs.len();
    b.order_certificate = Some(hs);
    Ok(k)
}

/// Length of a shortest cycle; `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut par = vec![usize::MAX; n];
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            if 2 * dist[x] + 1 >= best {
                break;
            }
            for &y in g.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    par[y] = x;
                    q.push_back(y);
                } else if par[x] != y {
                    best = best.min(dist[x] + dist[y] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

/// Exact clique number (Bron–Kerbosch with pivoting along a degeneracy
/// order).
pub fn clique_number(g: &Graph) -> Result<usize> {
    Ok(max_clique(g)?.len())
}

pub fn max_clique(g: &Graph) -> Result<Vec<Label>> {
    let n = g.n();
    if n > CLIQUE_CAP {
        return Err(Error::SizeCap { what: "clique search vertex count", size: n, cap: CLIQUE_CAP });
    }
    // degeneracy order
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let maxd = deg.iter().copied().max().unwrap_or(0);
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); maxd + 1];
    for v in 0..n {
        buckets[deg[v]].push(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut d = 0usize;
    while order.len() < n {
        d = d.saturating_sub(1);
        while buckets[d].is_empty() {
            d += 1;
        }
        let v = buckets[d].pop().expect("nonempty");
        if removed[v] || deg[v] != d {
            continue;
        }
        removed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
                buckets[deg[u]].push(u);
            }
        }
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }

    fn bk(g: &Graph, r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, best: &mut Vec<usize>) {
        if p.is_empty() {
            if x.is_empty() && r.len() > best.len() {
                *best = r.clone();
            }
            return;
        }
        if r.len() + p.len() <= best.len() {
            return;
        }
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&w| g.has_edge(u, w)).count())
            .expect("nonempty");
        let cands: Vec<usize> = p.iter().copied().filter(|&v| !g.has_edge(pivot, v)).collect();
        let mut p = p;
        let mut x = x;
        for v in cands {
            let np: Vec<usize> = p.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            let nx: Vec<usize> = x.iter().copied().filter(|&w| g.has_edge(v, w)).collect();
            r.push(v);
            bk(g, r, np, nx, best);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }

    let mut best: Vec<usize> = Vec::new();
    for &v in &order {
        let p: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| pos[u] > pos[v]).collect();
        let x: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| pos[u] < pos[v]).collect();
        if p.len() < best.len() {
            continue;
        }
        bk(g, &mut vec![v], p, x, &mut best);
    }
    let mut out: Vec<Label> = best.iter().map(|&v| g.label(v)).collect();
    out.sort_unstable();
    Ok(out)
}

/// Exact twin-width by exhaustive search over partition sequences.
pub fn exact_twin_width(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > TWIN_WIDTH_CAP {
        return Err(Error::SizeCap { what: "exact twin-width vertex count", size: n, cap: TWIN_WIDTH_CAP });
    }
    if n <= 1 {
        return Ok(0);
    }
    fn red_degree(g: &Graph, part: &[u8]) -> usize {
        let k = part.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut members = vec![Vec::new(); k];
        for (v, &p) in part.iter().enumerate() {
            members[p as usize].push(v);
        }
        let mut deg = vec![0usize; k];
        for a in 0..k {
            for b in a + 1..k {
                let adj = members[a].iter().map(|&x| members[b].iter().filter(|&&y| g.has_edge(x, y)).count()).sum::<usize>();
                if adj != 0 && adj != members[a].len() * members[b].len() {
                    deg[a] += 1;
                    deg[b] += 1;
                }
            }
        }
        deg.into_iter().max().unwrap_or(0)
    }
    fn canonical(part: &[u8]) -> Vec<u8> {
        let mut map = [u8::MAX; 32];
        let mut next = 0u8;
        part.iter()
            .map(|&p| {
                if map[p as usize] == u8::MAX {
                    map[p as usize] = next;
                    next += 1;
                }
                map[p as usize]
            })
            .collect()
    }
    fn solve(g: &Graph, part: Vec<u8>, memo: &mut HashMap<Vec<u8>, usize>) -> usize {
        if let Some(&v) = memo.get(&part) {
            return v;
        }
        let here = red_degree(g, &part);
        let k = part.iter().copied().max().unwrap_or(0) + 1;
        let mut best = usize::MAX;
        if k == 1 {
            best = 0;
        }
        for a in 0..k {
            for b in a + 1..k {
                let merged: Vec<u8> = part.iter().map(|&p| if p == b { a } else { p }).collect();
                best = best.min(solve(g, canonical(&merged), memo));
            }
        }
        let v = here.max(best);
        memo.insert(part, v);
        v
    }
    let start: Vec<u8> = (0..n as u8).collect();
    Ok(solve(g, start, &mut HashMap::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;
    use crate::wheel::build_wheel;

    fn star(k: usize) -> Graph {
        let edges: Vec<(Label, Label)> = (1..=k as Label).map(|i| (0, i)).collect();
        Graph::from_edges(k + 1, &edges).unwrap()
    }

    #[test]
    fn treewidth_closed_forms() {
        assert_eq!(exact_treewidth(&star(6)).unwrap().width, 1);
        assert_eq!(exact_treewidth(&named::path(9)).unwrap().width, 1);
        assert_eq!(exact_treewidth(&named::cycle(4)).unwrap().width, 2);
        assert_eq!(exact_treewidth(&named::cycle(11)).unwrap().width, 2);
        assert_eq!(exact_treewidth(&named::complete(5)).unwrap().width, 4);
        for k in 2..=4 {
            assert_eq!(exact_treewidth(&named::grid(k, k)).unwrap().width, k, "grid {k}");
        }
        assert_eq!(exact_treewidth(&named::petersen()).unwrap().width, 4);
        assert_eq!(exact_treewidth(&Graph::empty(3)).unwrap().width, 0);
    }

    #[test]
    fn treewidth_witness_is_valid() {
        for g in [named::petersen(), named::grid(3, 4), named::cycle(7), Graph::empty(4)] {
            let r = exact_treewidth(&g).unwrap();
            assert_eq!(verify_tree_decomposition(&g, &r.decomposition), TdVerdict::Valid { width: r.width });
        }
    }

    #[test]
    fn treewidth_cap_and_deadline() {
        assert!(matches!(exact_treewidth(&named::path(19)), Err(Error::SizeCap { .. })));
        let opts = ExactOptions { cap: 18, deadline: Some(Instant::now()) };
        assert_eq!(exact_treewidth_with(&named::grid(4, 4), opts), Err(Error::Deadline));
    }

    #[test]
    fn td_verifier_catches_mutations() {
        let g = named::path(4);
        let td = TreeDecomposition { bags: vec![vec![0, 1], vec![1, 2], vec![2, 3]], links: vec![(0, 1), (1, 2)] };
        assert!(verify_tree_decomposition(&g, &td).is_valid());
        let mut missing_edge = td.clone();
        missing_edge.bags[1] = vec![1];
        assert_eq!(verify_tree_decomposition(&g, &missing_edge), TdVerdict::UncoveredEdge { u: 1, v: 2 });
        let disc = TreeDecomposition {
            bags: vec![vec![0, 1, 3], vec![1, 2], vec![2, 3]],
            links: vec![(0, 1), (1, 2)],
        };
        assert_eq!(verify_tree_decomposition(&g, &disc), TdVerdict::DisconnectedBags { vertex: 3 });
        let cyc = TreeDecomposition { bags: td.bags.clone(), links: vec![(0, 1), (1, 0)] };
        assert_eq!(verify_tree_decomposition(&g, &cyc), TdVerdict::NotATree);
    }

    #[test]
    fn hitting_sets() {
        assert_eq!(min_hitting_set(&[vec![1], vec![2], vec![3]]).unwrap().len(), 3);
        assert_eq!(min_hitting_set(&[vec![1, 2, 3], vec![2, 3], vec![2]]).unwrap(), vec![2]);
        assert_eq!(min_hitting_set(&[vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 1]]).unwrap().len(), 2);
    }

    /// Exhaustive: smallest k such that some k-subset of the universe hits all.
    fn brute_hitting(sets: &[Vec<Label>]) -> usize {
        let mut univ: Vec<Label> = sets.iter().flatten().copied().collect();
        univ.sort_unstable();
        univ.dedup();
        (0u32..1 << univ.len())
            .filter(|m| sets.iter().all(|s| s.iter().any(|e| m & (1 << univ.binary_search(e).unwrap()) != 0)))
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn hitting_set_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let k = rng.gen_range(1..8);
            let sets: Vec<Vec<Label>> = (0..k)
                .map(|_| {
                    let mut s: Vec<Label> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(0..10)).collect();
                    s.sort_unstable();
                    s.dedup();
                    s
                })
                .collect();
            let hs = min_hitting_set(&sets).unwrap();
            assert!(sets.iter().all(|s| s.iter().any(|e| hs.contains(e))));
            assert_eq!(hs.len(), brute_hitting(&sets));
        }
    }

    #[test]
    fn layer_brambles() {
        let w = build_wheel(1, 3).unwrap();
        let g = w.real_graph();
        for i in 0..=3 {
            let mut b = layer_bramble(&w, i).unwrap();
            assert_eq!(b.sets.len(), i + 1);
            assert_eq!(bramble_order(&g, &mut b).unwrap(), i + 1);
            assert!(b.order_certificate.is_some());
        }
        assert!(layer_bramble(&w, 4).is_err());
    }

    #[test]
    fn bramble_checks() {
        let g = named::cycle(6);
        let bad = Bramble::new(vec![vec![0], vec![3]]);
        assert_eq!(check_bramble(&g, &bad), Err(BrambleProblem::NotTouching { first: 0, second: 1 }));
        let disc = Bramble::new(vec![vec![0, 3]]);
        assert_eq!(check_bramble(&g, &disc), Err(BrambleProblem::Disconnected { index: 0 }));
    }

    #[test]
    fn bramble_order_bounded_by_treewidth() {
        // Brambles on small graphs: the touching family of grid crosses.
        let g = named::grid(3, 3);
        let idx = |r: Label, c: Label| r * 3 + c;
        let mut sets = Vec::new();
        for r in 0..3 {
            for c in 0..3 {
                let mut cross: Vec<Label> = (0..3).map(|k| idx(r, k)).chain((0..3).map(|k| idx(k, c))).collect();
                cross.sort_unstable();
                cross.dedup();
                sets.push(cross);
            }
        }
        let mut b = Bramble::new(sets);
        let order = bramble_order(&g, &mut b).unwrap();
        assert!(order - 1 <= exact_treewidth(&g).unwrap().width);
        assert_eq!(order, 3);
    }

    #[test]
    fn girth_values() {
        assert_eq!(girth(&star(4)), None);
        assert_eq!(girth(&named::complete(3)), Some(3));
        assert_eq!(girth(&named::cycle(9)), Some(9));
        assert_eq!(girth(&named::petersen()), Some(5));
        assert_eq!(girth(&named::robertson()), Some(5));
        assert_eq!(girth(&named::grid(3, 3)), Some(4));
    }

    #[test]
    fn clique_values() {
        assert_eq!(clique_number(&Graph::empty(0)).unwrap(), 0);
        assert_eq!(clique_number(&Graph::empty(4)).unwrap(), 1);
        assert_eq!(clique_number(&named::complete(6)).unwrap(), 6);
        assert_eq!(clique_number(&named::petersen()).unwrap(), 2);
        for t in 1..=3 {
            let w = build_wheel(t, 3).unwrap();
            assert!(clique_number(&w.real_graph()).unwrap() <= t + 1);
        }
    }

    #[test]
    fn twin_width_small() {
        assert_eq!(exact_twin_width(&named::path(5)).unwrap(), 1);
        assert_eq!(exact_twin_width(&named::complete(5)).unwrap(), 0);
        assert_eq!(exact_twin_width(&named::cycle(5)).unwrap(), 2);
        assert_eq!(exact_twin_width(&star(5)).unwrap(), 0);
        assert!(exact_twin_width(&named::path(8)).is_err());
    }
}
