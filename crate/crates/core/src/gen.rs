//! Seeded generators for test inputs and experiment fixtures.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use std::collections::{BTreeMap, VecDeque};

use crate::axioms::LayeredWheel;
use crate::error::{Error, Result};
use crate::graph::{Graph, Label, Trigraph};
use crate::hfree::{hfree_check_with, SearchOptions};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A chordal trigraph on `0..n` with clique number at most `max_clique`.
///
/// Vertices are added one at a time, each adjacent to a random clique of the
/// current graph (so the reverse insertion order is a perfect elimination
/// order); each edge is red with probability `red_prob`.
pub fn random_chordal_trigraph(n: usize, max_clique: usize, red_prob: f64, seed: u64) -> Trigraph {
    let mut rng = rng(seed);
    let mut adj: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut black = Vec::new();
    let mut red = Vec::new();
    for v in 0..n {
        let mut nbrs: Vec<usize> = Vec::new();
        if v > 0 && max_clique > 1 && rng.gen_bool(0.85) {
            let x = rng.gen_range(0..v);
            nbrs.push(x);
            let mut cands = adj[x].clone();
            cands.shuffle(&mut rng);
            let want = rng.gen_range(0..max_clique - 1);
            for c in cands {
                if nbrs.len() > want {
                    break;
                }
                if nbrs.iter().all(|&y| adj[y].contains(&c)) {
                    nbrs.push(c);
                }
            }
        }
        adj.push(nbrs.clone());
        for &u in &nbrs {
            adj[u].push(v);
            let e = (u as Label, v as Label);
            if rng.gen_bool(red_prob) {
                red.push(e);
            } else {
                black.push(e);
            }
        }
    }
    Trigraph::from_edges(n, &black, &red).expect("generated edges are well formed")
}

/// Grows a set of vertices of `g` in seeded random order, keeping a vertex
/// only if no induced copy of `h` goes through it. Stops at `target` vertices
/// when given. Returns sorted labels.
pub fn greedy_hfree_subset(g: &Graph, h: &Graph, target: Option<usize>, seed: u64) -> Result<Vec<Label>> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.shuffle(&mut rng(seed));
    let connected = h.n() > 0 && h.components().len() == 1;
    let radius = h.n().saturating_sub(1);
    let mut in_x = vec![false; g.n()];
    let mut taken = 0;
    for v in order {
        if target.is_some_and(|t| taken >= t) {
            break;
        }
        in_x[v] = true;
        // A connected copy through `v` stays within distance |V(h)| - 1.
        let local: Vec<usize> = if connected { ball(g, &in_x, v, radius) } else { (0..g.n()).filter(|&u| in_x[u]).collect() };
        let anchor = local.iter().position(|&u| u == v);
        let opts = SearchOptions { cap: h.n().max(crate::hfree::DEFAULT_PATTERN_CAP), anchor };
        if hfree_check_with(&g.induced_by_indices(&local), h, opts)?.is_some() {
            in_x[v] = false;
        } else {
            taken += 1;
        }
    }
    Ok((0..g.n()).filter(|&u| in_x[u]).map(|u| g.label(u)).collect())
}

/// Sorted vertices of `mask` within distance `r` of `v` inside `mask`.
fn ball(g: &Graph, mask: &[bool], v: usize, r: usize) -> Vec<usize> {
    let mut dist: BTreeMap<usize, usize> = BTreeMap::from([(v, 0)]);
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if d == r {
            continue;
        }
        for &y in g.neighbors(x) {
            if mask[y] && !dist.contains_key(&y) {
                dist.insert(y, d + 1);
                queue.push_back(y);
            }
        }
    }
    dist.into_keys().collect()
}

fn within(adj: &[Vec<usize>], a: usize, b: usize, r: usize) -> bool {
    let mut frontier = vec![a];
    let mut seen = vec![a];
    for _ in 0..r {
        let mut next = Vec::new();
        for &x in &frontier {
            for &y in &adj[x] {
                if y == b {
                    return true;
                }
                if !seen.contains(&y) {
                    seen.push(y);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    false
}

/// A proper layered wheel of girth at least 5 on a complete `branching`-ary
/// tree with layers `L_0 … L_depth`.
///
/// Layers are induced paths. Ancestor–descendant edges are added in seeded
/// order, each only between vertices at distance at least 4, first one per
/// pair of layers (so the wheel is proper), then `extra` more attempts.
pub fn girth5_layered_wheel(depth: usize, branching: usize, extra: usize, seed: u64) -> Result<LayeredWheel> {
    if branching < 2 {
        return Err(Error::InvalidParameter("branching must be at least 2".into()));
    }
    let mut rng = rng(seed);
    let mut layers: Vec<Vec<usize>> = vec![vec![0]];
    let mut parent: Vec<Option<usize>> = vec![None];
    for d in 0..depth {
        let mut next = Vec::new();
        for &p in &layers[d] {
            for _ in 0..branching {
                next.push(parent.len());
                parent.push(Some(p));
            }
        }
        layers.push(next);
    }
    let n = parent.len();
    let layer_of: Vec<usize> = {
        let mut l = vec![0; n];
        for (i, layer) in layers.iter().enumerate() {
            layer.iter().for_each(|&v| l[v] = i);
        }
        l
    };
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut connect = |adj: &mut Vec<Vec<usize>>, a: usize, b: usize| {
        adj[a].push(b);
        adj[b].push(a);
        edges.push((a, b));
    };
    for layer in &layers {
        for p in layer.windows(2) {
            connect(&mut adj, p[0], p[1]);
        }
    }
    let ancestor_at = |mut v: usize, level: usize| {
        while layer_of[v] > level {
            v = parent[v].expect("non-root");
        }
        v
    };
    let mut try_pair = |adj: &mut Vec<Vec<usize>>, i: usize, j: usize, rng: &mut ChaCha8Rng, attempts: usize| {
        for _ in 0..attempts {
            let b = *layers[j].choose(rng).expect("non-empty layer");
            let a = ancestor_at(b, i);
            if !within(adj, a, b, 3) {
                connect(adj, a, b);
                return true;
            }
        }
        false
    };
    for j in 1..=depth {
        for i in 0..j {
            if !try_pair(&mut adj, i, j, &mut rng, 200) {
                return Err(Error::Internal(format!("could not join layers {i} and {j} at girth 5")));
            }
        }
    }
    for _ in 0..extra {
        let j = rng.gen_range(1..=depth.max(1));
        if depth > 0 {
            let i = rng.gen_range(0..j);
            try_pair(&mut adj, i, j, &mut rng, 1);
        }
    }
    let labels: Vec<Label> = (0..n as Label).collect();
    let graph = Graph::from_index_edges(labels, edges)?;
    let parent_map: BTreeMap<Label, Label> =
        parent.iter().enumerate().filter_map(|(v, p)| p.map(|p| (v as Label, p as Label))).collect();
    let layer_labels: Vec<Vec<Label>> = layers.iter().map(|l| l.iter().map(|&v| v as Label).collect()).collect();
    LayeredWheel::new(graph, &parent_map, &layer_labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::is_chordal;
    use crate::graph::named;
    use crate::oracles::clique_number;

    #[test]
    fn chordal_generator_respects_bounds() {
        for seed in 0..50 {
            let h = random_chordal_trigraph(15, 3, 0.4, seed);
            let g = h.total_graph();
            assert!(is_chordal(&g));
            assert!(clique_number(&g).unwrap() <= 3);
        }
        assert_eq!(random_chordal_trigraph(9, 4, 0.5, 7), random_chordal_trigraph(9, 4, 0.5, 7));
    }

    #[test]
    fn greedy_subsets_are_pattern_free_and_maximal() {
        let g = crate::wheel::build_wheel(1, 3).unwrap().real_graph();
        let p4 = named::path(4);
        let x = greedy_hfree_subset(&g, &p4, None, 3).unwrap();
        let idx: Vec<usize> = x.iter().map(|&l| l as usize).collect();
        assert!(crate::hfree::hfree_check(&g.induced_by_indices(&idx), &p4).unwrap().is_none());
        // maximal: every outside vertex would create a copy
        for v in (0..g.n()).filter(|v| !idx.contains(v)).take(15) {
            let mut more = idx.clone();
            more.push(v);
            more.sort_unstable();
            assert!(crate::hfree::hfree_check(&g.induced_by_indices(&more), &p4).unwrap().is_some());
        }
        assert_eq!(greedy_hfree_subset(&g, &p4, Some(10), 3).unwrap().len(), 10);
    }

    #[test]
    fn girth5_fixture_is_proper_with_high_girth() {
        use crate::axioms::{validate_axioms, AxiomParams, Condition};
        let w = girth5_layered_wheel(6, 2, 150, 1).unwrap();
        assert!(crate::oracles::girth(w.graph()).is_none_or(|g| g >= 5));
        let report = validate_axioms(&w, &AxiomParams::default());
        for c in [Condition::Layer, Condition::Treedepth, Condition::Proper] {
            assert!(report.verdict(c).holds(), "{c:?}: {:?}", report.verdict(c));
        }
    }
}
