//! The bounded-branch search: grow an embedded copy of a chordal trigraph
//! below `u` one tree-representation leaf at a time, or return a downward
//! path meeting `X` in few vertices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::chordal::TreeRepresentation;
use crate::error::{Error, Result};
use crate::graph::{AdjacencyType, Label, TypedAdjacency};
use crate::oracles::clique_number;
use crate::tree::RootedTree;
use crate::wheel::{Variant, WheelPrefix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum BranchSearchResult {
    Embedding {
        /// Pattern vertices in insertion order `v_1 … v_h`.
        order: Vec<Label>,
        /// Pattern label → wheel label.
        images: BTreeMap<Label, Label>,
        /// Vertices of the subtree `S_h`, sorted.
        subtree: Vec<Label>,
    },
    Path {
        /// Downward path from `u` to the last built layer.
        path: Vec<Label>,
        hits: usize,
    },
    /// The walk needed a child that the prefix does not provide.
    PrefixExhausted { at: Label },
    /// The walk reached `at ∈ X`, but `at` is joined by a layer edge to the
    /// image `with` of a pattern vertex that is not adjacent to the one being
    /// placed. The inductive step only controls types towards ancestors.
    LayerClash { at: Label, with: Label },
}

pub(crate) fn membership(w: &WheelPrefix, x: &[Label]) -> Result<Vec<bool>> {
    let mut in_x = vec![false; w.n()];
    for &l in x {
        if !w.contains(l) {
            return Err(Error::UnknownVertex(l));
        }
        in_x[l as usize] = true;
    }
    Ok(in_x)
}

fn leftmost_descent(tree: &RootedTree, from: usize) -> Vec<usize> {
    let mut path = vec![from];
    let mut cur = from;
    while let Some(&c) = tree.children(cur).first() {
        path.push(c);
        cur = c;
    }
    path
}

/// Path in the tree from ancestor `a` down to `b`, both included.
fn tree_path(tree: &RootedTree, a: usize, b: usize) -> Vec<usize> {
    let mut p: Vec<usize> = tree.ancestors(b).take_while(|&v| v != a).collect();
    p.push(a);
    p.reverse();
    p
}

pub fn bounded_branch_search(
    w: &WheelPrefix,
    hrep: &TreeRepresentation,
    x: &[Label],
    u: Label,
) -> Result<BranchSearchResult> {
    let h = &hrep.trigraph;
    let th = &hrep.tree;
    if !w.contains(u) {
        return Err(Error::UnknownVertex(u));
    }
    let omega = clique_number(&h.total_graph())?;
    if omega > w.t() + 1 {
        return Err(Error::Precondition(format!(
            "pattern total graph has clique number {omega} > t+1 = {}",
            w.t() + 1
        )));
    }
    if w.variant() == Variant::TriangleFree && h.real_graph().triangle_count() > 0 {
        return Err(Error::Precondition("pattern real graph must be triangle-free".into()));
    }
    let in_x = membership(w, x)?;
    let tree = w.tree();
    let u = u as usize;
    let hits = |path: &[usize]| path.iter().filter(|&&v| in_x[v]).count();
    let labels = |path: &[usize]| path.iter().map(|&v| v as Label).collect::<Vec<Label>>();

    let order = th.preorder().to_vec();
    if order.is_empty() {
        let path = leftmost_descent(tree, u);
        return Ok(BranchSearchResult::Path { hits: hits(&path), path: labels(&path) });
    }
    let mut images = vec![usize::MAX; h.n()];
    let mut in_s = vec![false; w.n()];

    // Base case: shallowest, then leftmost, descendant of u in X.
    let first = tree.descendants(u).iter().copied().filter(|&v| in_x[v]).min_by_key(|&v| (w.layer_of(v), v));
    let Some(first) = first else {
        let path = leftmost_descent(tree, u);
        return Ok(BranchSearchResult::Path { hits: hits(&path), path: labels(&path) });
    };
    for v in tree_path(tree, u, first) {
        in_s[v] = true;
    }
    images[order[0]] = first;

    for &p in &order[1..] {
        let parent_h = th.parent(p).ok_or_else(|| Error::Internal("non-root pattern vertex without parent".into()))?;
        let anchor = images[parent_h];
        let mut black = Vec::new();
        let mut red = Vec::new();
        for a in th.ancestors(p).skip(1) {
            match h.adjacency_type(p, a) {
                AdjacencyType::Black => black.push(images[a] as Label),
                AdjacencyType::Red => red.push(images[a] as Label),
                AdjacencyType::NonEdge => {}
            }
        }
        black.sort_unstable();
        red.sort_unstable();
        // Walk Q down from the parent's image along children born with
        // exactly the required types.
        let mut q = vec![anchor];
        let mut cur = anchor;
        let found = loop {
            if w.in_last_layer(cur) {
                break None;
            }
            let next = tree.children(cur).iter().copied().find(|&c| {
                w.birth(c).is_some_and(|b| b.black == black && b.red == red)
            });
            let Some(c) = next else {
                return Ok(BranchSearchResult::PrefixExhausted { at: cur as Label });
            };
            q.push(c);
            cur = c;
            if in_x[c] {
                break Some(c);
            }
        };
        match found {
            Some(c) => {
                let clash = (0..h.n()).find(|&j| {
                    images[j] != usize::MAX && w.trigraph().adjacency(c, images[j]) != h.adjacency(p, j)
                });
                if let Some(j) = clash {
                    return Ok(BranchSearchResult::LayerClash { at: c as Label, with: images[j] as Label });
                }
                for &v in &q {
                    in_s[v] = true;
                }
                images[p] = c;
            }
            None => {
                let mut path = tree_path(tree, u, anchor);
                path.extend_from_slice(&q[1..]);
                return Ok(BranchSearchResult::Path { hits: hits(&path), path: labels(&path) });
            }
        }
    }

    let result = BranchSearchResult::Embedding {
        order: order.iter().map(|&p| h.label(p)).collect(),
        images: (0..h.n()).map(|p| (h.label(p), images[p] as Label)).collect(),
        subtree: (0..w.n()).filter(|&v| in_s[v]).map(|v| v as Label).collect(),
    };
    verify_embedding(w, hrep, x, &result)?;
    Ok(result)
}

/// Checks the three properties of an embedding outcome: types preserved,
/// `X ∩ S` equals the image, and ancestry mirrored between the two trees.
pub fn verify_embedding(
    w: &WheelPrefix,
    hrep: &TreeRepresentation,
    x: &[Label],
    result: &BranchSearchResult,
) -> Result<()> {
    let BranchSearchResult::Embedding { images, subtree, .. } = result else {
        return Ok(());
    };
    let h = &hrep.trigraph;
    let img: Vec<usize> = (0..h.n()).map(|p| images[&h.label(p)] as usize).collect();
    let bad = |m: String| Err(Error::Internal(format!("embedding check failed: {m}")));
    for p in 0..h.n() {
        for q in 0..h.n() {
            if p == q {
                continue;
            }
            if w.trigraph().adjacency(img[p], img[q]) != h.adjacency(p, q) {
                return bad(format!("types differ on {}-{}", h.label(p), h.label(q)));
            }
            if hrep.tree.is_ancestor(p, q) != w.tree().is_ancestor(img[p], img[q]) {
                return bad(format!("ancestry differs on {}-{}", h.label(p), h.label(q)));
            }
        }
    }
    let in_x = membership(w, x)?;
    let mut hit: Vec<usize> = subtree.iter().map(|&v| v as usize).filter(|&v| in_x[v]).collect();
    let mut want = img.clone();
    hit.sort_unstable();
    want.sort_unstable();
    if hit != want {
        return bad("X ∩ S differs from the image".into());
    }
    Ok(())
}

/// Exact minimum of `|P ∩ X|` over downward paths `P` from `v` to a leaf of
/// the prefix tree, with the leftmost optimal path.
pub fn min_branch_hits(w: &WheelPrefix, x: &[Label], v: Label) -> Result<(usize, Vec<Label>)> {
    if !w.contains(v) {
        return Err(Error::UnknownVertex(v));
    }
    let in_x = membership(w, x)?;
    let (count, path) = min_hits_in_tree(w.tree(), &in_x, v as usize);
    Ok((count, path.into_iter().map(|v| v as Label).collect()))
}

pub(crate) fn min_hits_in_tree(tree: &RootedTree, in_x: &[bool], v: usize) -> (usize, Vec<usize>) {
    let mut best = vec![0usize; tree.len()];
    for &y in tree.descendants(v).iter().rev() {
        best[y] = in_x[y] as usize + tree.children(y).iter().map(|&c| best[c]).min().unwrap_or(0);
    }
    let mut path = vec![v];
    let mut cur = v;
    while let Some(&c) = tree.children(cur).iter().min_by_key(|&&c| best[c]) {
        path.push(c);
        cur = c;
    }
    (best[v], path)
}
