//! Balanced separators in wheel prefixes, the recursive tree decompositions
//! they yield, the matching bound formulas, and greedy selection of
//! pattern-free layer unions in high-girth wheels.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::axioms::LayeredWheel;
use crate::bbp::{bounded_branch_search, membership, min_hits_in_tree, BranchSearchResult};
use crate::chordal::{chordal_complete, tree_representation, TreeRepresentation};
use crate::error::{Error, Result};
use crate::graph::{Graph, Label};
use crate::hfree::{hfree_check, hfree_check_with, SearchOptions};
use crate::oracles::{exact_treewidth, girth};
use crate::td::TreeDecomposition;
use crate::tree::RootedTree;
use crate::wheel::{child_bound, WheelPrefix};

/// Parts smaller than this become a single bag.
pub const BASE_PART: usize = 8;

/// Balance of the bounded variant: `1 - 1/(8·b)` with `b` the exclusive
/// children bound of the construction.
pub fn bounded_alpha(w: &WheelPrefix) -> f64 {
    1.0 - 1.0 / (8.0 * child_bound(w.t(), w.variant()) as f64)
}

pub const UNBOUNDED_ALPHA: f64 = 15.0 / 16.0;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BalanceRule {
    /// Layer scan with the children bound.
    #[default]
    Bounded,
    /// Layer scan falling back to a block of consecutive children.
    Unbounded,
}

#[derive(Clone, Debug, Default)]
pub enum PathSource {
    /// Optimal downward paths.
    #[default]
    MinHits,
    /// Paths from the bounded-branch search for a tree representation.
    BoundedBranch(TreeRepresentation),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BalancedSplit {
    Vertex { u: Label },
    /// `middle` are the children of `u` strictly between the leftmost child
    /// and `u_plus`.
    Block { u: Label, u_minus: Label, u_plus: Option<Label>, middle: Vec<Label> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DownwardPath {
    pub from: Label,
    pub path: Vec<Label>,
    pub hits: usize,
    /// `min-hits`, `bounded-branch`, or `min-hits-after-clash`.
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub split: BalancedSplit,
    pub u_minus: Option<Label>,
    pub u_plus: Option<Label>,
    pub paths: Vec<DownwardPath>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparatorCertificate {
    /// Sorted, inside the host set.
    pub separator: Vec<Label>,
    /// Host vertices cut off below the separator, sorted.
    pub side_below: Vec<Label>,
    pub host_size: usize,
    /// `max(|side_below|, |rest|) / host_size`.
    pub balance: f64,
    pub alpha: f64,
    pub provenance: Provenance,
}

impl SeparatorCertificate {
    pub fn rest_size(&self) -> usize {
        self.host_size - self.separator.len() - self.side_below.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SeparatorViolation {
    /// `a` (below) and `b` (rest) are adjacent.
    Crossing { a: Label, b: Label },
    Unbalanced { largest: usize, allowed: f64 },
    Overlap { vertex: Label },
}

/// Independent check of a certificate against `g[x]`: nothing below is
/// adjacent to the rest, and every component of `g[x] - S` has at most
/// `alpha · |x|` vertices.
pub fn check_separator(g: &Graph, x: &[Label], cert: &SeparatorCertificate) -> Result<(), SeparatorViolation> {
    check_separation(g, x, cert)?;
    check_balance(g, x, cert)
}

/// Only the separation half of [`check_separator`].
pub fn check_separation(g: &Graph, x: &[Label], cert: &SeparatorCertificate) -> Result<(), SeparatorViolation> {
    let sep: BTreeSet<Label> = cert.separator.iter().copied().collect();
    let below: BTreeSet<Label> = cert.side_below.iter().copied().collect();
    if let Some(&v) = sep.intersection(&below).next() {
        return Err(SeparatorViolation::Overlap { vertex: v });
    }
    let inside: BTreeSet<Label> = x.iter().copied().filter(|l| !sep.contains(l)).collect();
    for &a in &below {
        let ai = g.index_of(a).expect("host vertex");
        for &b in g.neighbors(ai) {
            let bl = g.label(b);
            if inside.contains(&bl) && !below.contains(&bl) {
                return Err(SeparatorViolation::Crossing { a, b: bl });
            }
        }
    }
    Ok(())
}

/// Only the balance half of [`check_separator`].
pub fn check_balance(g: &Graph, x: &[Label], cert: &SeparatorCertificate) -> Result<(), SeparatorViolation> {
    let sep: BTreeSet<Label> = cert.separator.iter().copied().collect();
    let rest: Vec<usize> =
        x.iter().filter(|l| !sep.contains(l)).map(|&l| g.index_of(l).expect("host vertex")).collect();
    let largest = g.induced_by_indices(&rest).components().iter().map(Vec::len).max().unwrap_or(0);
    let allowed = cert.alpha * x.len() as f64;
    if largest as f64 > allowed + 1e-9 {
        return Err(SeparatorViolation::Unbalanced { largest, allowed });
    }
    Ok(())
}

fn positions(layers: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut pos = vec![0; n];
    for layer in layers {
        for (i, &v) in layer.iter().enumerate() {
            pos[v] = i;
        }
    }
    pos
}

fn ordered_children(tree: &RootedTree, pos: &[usize], v: usize) -> Vec<usize> {
    let mut kids = tree.children(v).to_vec();
    kids.sort_by_key(|&c| pos[c]);
    kids
}

/// First layer whose nodes all have at most `n/4` descendants in `x`, and its
/// heaviest node (leftmost on ties).
fn layer_scan(layers: &[Vec<usize>], counts: &[usize], n: usize) -> Option<(usize, usize)> {
    layers.iter().enumerate().find_map(|(i, layer)| {
        if layer.iter().all(|&v| 4 * counts[v] <= n) {
            let best = layer.iter().copied().rev().max_by_key(|&v| counts[v])?;
            Some((i, best))
        } else {
            None
        }
    })
}

fn split_scan(tree: &RootedTree, layers: &[Vec<usize>], in_x: &[bool], rule: BalanceRule) -> Result<BalancedSplit> {
    let n = in_x.iter().filter(|&&b| b).count();
    if n < BASE_PART {
        return Err(Error::Precondition(format!("balanced split needs at least {BASE_PART} vertices, got {n}")));
    }
    let counts = tree.subtree_counts(|v| in_x[v]);
    let (layer, u) = layer_scan(layers, &counts, n).ok_or_else(|| Error::Internal("no light layer".into()))?;
    if rule == BalanceRule::Bounded || 16 * counts[u] >= n {
        return Ok(BalancedSplit::Vertex { u: u as Label });
    }
    // All children of a heavy node in the previous layer are light.
    let p = layers[layer - 1]
        .iter()
        .copied()
        .find(|&v| 4 * counts[v] > n)
        .ok_or_else(|| Error::Internal("layer scan stopped at the root".into()))?;
    let pos = positions(layers, in_x.len());
    let kids = ordered_children(tree, &pos, p);
    let mut sum = 0;
    for (i, &c) in kids.iter().enumerate().skip(1) {
        sum += counts[c];
        if 16 * sum >= n {
            return Ok(BalancedSplit::Block {
                u: p as Label,
                u_minus: kids[0] as Label,
                u_plus: kids.get(i + 1).map(|&c| c as Label),
                middle: kids[1..=i].iter().map(|&c| c as Label).collect(),
            });
        }
    }
    Err(Error::Internal(format!("children of {p} never reach n/16")))
}

/// A node `u` with between `n/(8b)` and `n/4` descendants in `x` (`b` the
/// children bound) such that every node of its layer has at most `n/4`.
pub fn find_balanced_vertex(w: &WheelPrefix, x: &[Label]) -> Result<Label> {
    let in_x = membership(w, x)?;
    let BalancedSplit::Vertex { u } = split_scan(w.tree(), w.layers(), &in_x, BalanceRule::Bounded)? else {
        unreachable!("bounded scan returns a vertex")
    };
    let n = x.len();
    let c = w.tree().subtree_counts(|v| in_x[v])[u as usize];
    if 8 * child_bound(w.t(), w.variant()) * c < n {
        return Err(Error::Internal(format!("balanced vertex {u} has only {c} of {n} below")));
    }
    Ok(u)
}

/// The two-way split for wheels without a children bound: a node with
/// between `n/16` and `n/4` descendants in `x` (and a light layer), or a
/// block of consecutive children holding between `n/16` and `n/8`.
pub fn find_balanced_split(w: &LayeredWheel, x: &[Label]) -> Result<BalancedSplit> {
    let g = w.graph();
    let mut in_x = vec![false; g.n()];
    for &l in x {
        in_x[g.index_of(l).ok_or(Error::UnknownVertex(l))?] = true;
    }
    let relabel = |v: Label| g.label(v as usize);
    Ok(match split_scan(w.tree(), w.layers(), &in_x, BalanceRule::Unbounded)? {
        BalancedSplit::Vertex { u } => BalancedSplit::Vertex { u: relabel(u) },
        BalancedSplit::Block { u, u_minus, u_plus, middle } => BalancedSplit::Block {
            u: relabel(u),
            u_minus: relabel(u_minus),
            u_plus: u_plus.map(relabel),
            middle: middle.into_iter().map(relabel).collect(),
        },
    })
}

fn downward_path(w: &WheelPrefix, x: &[Label], in_x: &[bool], v: usize, source: &PathSource) -> Result<DownwardPath> {
    let min_hits = |tag: &str| {
        let (hits, path) = min_hits_in_tree(w.tree(), in_x, v);
        DownwardPath { from: v as Label, path: path.into_iter().map(|p| p as Label).collect(), hits, source: tag.into() }
    };
    let p = match source {
        PathSource::MinHits => min_hits("min-hits"),
        PathSource::BoundedBranch(rep) => match bounded_branch_search(w, rep, x, v as Label)? {
            BranchSearchResult::Path { path, hits } => {
                DownwardPath { from: v as Label, path, hits, source: "bounded-branch".into() }
            }
            BranchSearchResult::LayerClash { .. } => min_hits("min-hits-after-clash"),
            BranchSearchResult::Embedding { .. } => {
                return Err(Error::Precondition("the host set contains the pattern".into()))
            }
            BranchSearchResult::PrefixExhausted { at } => {
                return Err(Error::PrefixExhausted(format!("bounded-branch walk from {v} stopped at {at}")))
            }
        },
    };
    match p.path.last() {
        Some(&l) if w.in_last_layer(l as usize) => Ok(p),
        _ => Err(Error::Internal(format!("downward path from {v} stops above the last layer"))),
    }
}

/// Vertices of the subtree of `root` strictly on one side of `path` in
/// their layer (`right` selects the right side).
fn beside_path(w: &WheelPrefix, root: usize, path: &[Label], right: bool) -> Vec<usize> {
    let base = w.layer_of(root);
    w.tree()
        .descendants(root)
        .iter()
        .copied()
        .filter(|&d| {
            let on = path[w.layer_of(d) - base] as usize;
            if right {
                w.position(d) > w.position(on)
            } else {
                w.position(d) < w.position(on)
            }
        })
        .collect()
}

/// The separator of a balanced vertex `u`: the upward neighbourhoods of `u`
/// and of its boundary siblings, plus downward paths from the siblings, all
/// intersected with `x`.
pub fn build_separator(w: &WheelPrefix, x: &[Label], u: Label, source: &PathSource) -> Result<SeparatorCertificate> {
    if !w.contains(u) {
        return Err(Error::UnknownVertex(u));
    }
    separator_for(w, x, &BalancedSplit::Vertex { u }, source, bounded_alpha(w))
}

/// Separator for either kind of split.
pub fn build_split_separator(
    w: &WheelPrefix,
    x: &[Label],
    split: &BalancedSplit,
    source: &PathSource,
) -> Result<SeparatorCertificate> {
    let alpha = match split {
        BalancedSplit::Vertex { .. } => bounded_alpha(w),
        BalancedSplit::Block { .. } => UNBOUNDED_ALPHA,
    };
    separator_for(w, x, split, source, alpha)
}

fn separator_for(
    w: &WheelPrefix,
    x: &[Label],
    split: &BalancedSplit,
    source: &PathSource,
    alpha: f64,
) -> Result<SeparatorCertificate> {
    let in_x = membership(w, x)?;
    let mut sep: BTreeSet<usize> = BTreeSet::new();
    let mut below: Vec<usize> = Vec::new();
    let mut paths = Vec::new();
    let (u, minus, plus) = match split {
        BalancedSplit::Vertex { u } => {
            let u = *u as usize;
            below.extend_from_slice(w.tree().descendants(u));
            let (m, p) = if w.tree().children(u).is_empty() {
                (None, None)
            } else {
                w.boundary_siblings(u as Label)?
            };
            (u, m.map(|l| l as usize), p.map(|l| l as usize))
        }
        BalancedSplit::Block { u, u_minus, u_plus, middle } => {
            for &c in middle {
                below.extend_from_slice(w.tree().descendants(c as usize));
            }
            (*u as usize, Some(*u_minus as usize), u_plus.map(|l| l as usize))
        }
    };
    sep.extend(w.upward(u).iter().copied());
    for (side, right) in [(minus, true), (plus, false)] {
        let Some(s) = side else { continue };
        sep.extend(w.upward(s).iter().copied());
        let p = downward_path(w, x, &in_x, s, source)?;
        sep.extend(p.path.iter().map(|&l| l as usize));
        below.extend(beside_path(w, s, &p.path, right));
        paths.push(p);
    }
    let separator: Vec<Label> = sep.iter().copied().filter(|&v| in_x[v]).map(|v| v as Label).collect();
    let mut side_below: Vec<Label> =
        below.into_iter().filter(|&v| in_x[v] && !sep.contains(&v)).map(|v| v as Label).collect();
    side_below.sort_unstable();
    side_below.dedup();
    let n = x.len();
    let rest = n - separator.len() - side_below.len();
    let balance = if n == 0 { 0.0 } else { side_below.len().max(rest) as f64 / n as f64 };
    Ok(SeparatorCertificate {
        separator,
        side_below,
        host_size: n,
        balance,
        alpha,
        provenance: Provenance {
            split: split.clone(),
            u_minus: minus.map(|v| v as Label),
            u_plus: plus.map(|v| v as Label),
            paths,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoreticalBounds {
    /// `15 · log(2/3)/log α · (3t + 2|V(H)| + 1)` with `α = 1 - 1/(8·3^{t+1})`.
    pub main_lemma: f64,
    /// `15 · log(2/3)/log(15/16) · (3(t+1) + 2h)`.
    pub bounded_branch: f64,
    /// `15 · log(2/3)/log(15/16) · (3(t+1) + 2h·log₂ n)`.
    pub log_upper: f64,
    /// `c` with `log_upper ≤ c · log₂ n` for `n ≥ 2`.
    pub log_coefficient: f64,
    /// `log₂ n / log₂ d - 1`.
    pub log_lower: f64,
}

pub fn theoretical_bounds(t: usize, hsize: usize, n: usize, d: usize, h_branch: usize) -> Result<TheoreticalBounds> {
    if hsize == 0 || n == 0 {
        return Err(Error::InvalidParameter("pattern size and n must be positive".into()));
    }
    if d <= 1 {
        return Err(Error::InvalidParameter(format!("children bound d = {d}; the lower bound needs d ≥ 2")));
    }
    let ratio = |alpha: f64| (2.0f64 / 3.0).ln() / alpha.ln();
    let alpha = 1.0 - 1.0 / (8.0 * 3f64.powi(t as i32 + 1));
    let unb = 15.0 * ratio(UNBOUNDED_ALPHA);
    let (t, h, lg) = (t as f64, h_branch as f64, (n as f64).log2());
    Ok(TheoreticalBounds {
        main_lemma: 15.0 * ratio(alpha) * (3.0 * t + 2.0 * hsize as f64 + 1.0),
        bounded_branch: unb * (3.0 * (t + 1.0) + 2.0 * h),
        log_upper: unb * (3.0 * (t + 1.0) + 2.0 * h * lg),
        log_coefficient: unb * (3.0 * (t + 1.0) + 2.0 * h),
        log_lower: lg / (d as f64).log2() - 1.0,
    })
}

#[derive(Clone, Debug, Default)]
pub struct DecomposeOptions {
    pub balance: BalanceRule,
    /// Use bounded-branch paths for a completion of `h` instead of optimal
    /// ones.
    pub bounded_branch_paths: bool,
    /// Skip the (possibly slow) induced-subgraph precondition check.
    pub trust_hfree: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceNode {
    /// The vertices of this part, sorted.
    pub part: Vec<Label>,
    /// Index of the bag created for this part.
    pub bag: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<SeparatorCertificate>,
    /// Set when no separator shrank the part and it became one bag.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub stalled: bool,
    pub children: Vec<TraceNode>,
}

impl TraceNode {
    /// Every `(part, certificate)` pair of the recursion, preorder.
    pub fn certificates(&self) -> Vec<(&[Label], &SeparatorCertificate)> {
        let mut out: Vec<(&[Label], &SeparatorCertificate)> =
            self.certificate.iter().map(|c| (self.part.as_slice(), c)).collect();
        for c in &self.children {
            out.extend(c.certificates());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionTrace {
    pub root: TraceNode,
    pub decomposition: TreeDecomposition,
    pub width: usize,
    /// `3t + 2|V(H)| + 1`.
    pub separator_bound: usize,
    /// Width guaranteed by the bag rule: separators along a recursion branch
    /// plus a base part.
    pub constructive_bound: usize,
    pub bounds: TheoreticalBounds,
}

/// Width bound of the bag rule: a part at recursion level `ℓ` has at most
/// `α^ℓ·n` vertices, so at most `L + 1` levels split (`L = ⌊log(n/8)/log(1/α)⌋`)
/// and a bag holds one separator per level plus at most `BASE_PART - 1`
/// vertices.
pub fn constructive_bound(n: usize, alpha: f64, separator_bound: usize) -> usize {
    let levels = if n < BASE_PART { 0 } else { ((n as f64 / BASE_PART as f64).ln() / (1.0 / alpha).ln()).floor() as usize + 1 };
    separator_bound * levels + BASE_PART - 2
}

struct Ctx<'a> {
    w: &'a WheelPrefix,
    g: Graph,
    source: PathSource,
    balance: BalanceRule,
    separator_bound: usize,
}

struct Sub {
    bags: Vec<Vec<usize>>,
    links: Vec<(usize, usize)>,
    trace: TraceNode,
}

impl Ctx<'_> {
    fn components(&self, verts: &[usize], mask: &[bool]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; mask.len()];
        let mut out = Vec::new();
        for &s in verts {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                for &y in self.g.neighbors(comp[i]) {
                    if mask[y] && !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// A base part below a separator becomes an optimal decomposition of the
    /// part with the carried vertices added to every bag; a stalled part, or
    /// a small input, becomes one bag.
    fn leaf(&self, part: &[usize], carried: &[usize], stalled: bool) -> Result<Sub> {
        let (bags, links) = if stalled || carried.is_empty() || part.len() < 2 {
            (vec![part.to_vec()], Vec::new())
        } else {
            let td = exact_treewidth(&self.g.induced_by_indices(part))?.decomposition;
            (td.bags.iter().map(|b| b.iter().map(|&l| l as usize).collect()).collect(), td.links)
        };
        let bags = bags
            .into_iter()
            .map(|b: Vec<usize>| {
                let mut bag: Vec<usize> = carried.iter().chain(&b).copied().collect();
                bag.sort_unstable();
                bag
            })
            .collect();
        Ok(Sub {
            bags,
            links,
            trace: TraceNode { part: labels_of(part), bag: 0, certificate: None, stalled, children: Vec::new() },
        })
    }

    fn recurse(&self, part: Vec<usize>, carried: Vec<usize>) -> Result<Sub> {
        if part.len() < BASE_PART {
            return self.leaf(&part, &carried, false);
        }
        let w = self.w;
        let labels: Vec<Label> = part.iter().map(|&v| v as Label).collect();
        let in_part = membership(w, &labels)?;
        let split = split_scan(w.tree(), w.layers(), &in_part, self.balance)?;
        let alpha = match (&split, self.balance) {
            (_, BalanceRule::Unbounded) => UNBOUNDED_ALPHA,
            _ => bounded_alpha(w),
        };
        let cert = separator_for(w, &labels, &split, &self.source, alpha)?;
        if cert.separator.len() > self.separator_bound {
            return Err(Error::SeparatorLaw { size: cert.separator.len(), bound: self.separator_bound });
        }
        let mut mask = in_part;
        for &s in &cert.separator {
            mask[s as usize] = false;
        }
        let remaining: Vec<usize> = part.iter().copied().filter(|&v| mask[v]).collect();
        let comps = self.components(&remaining, &mask);
        if comps.iter().any(|c| c.len() == part.len()) {
            return self.leaf(&part, &carried, true);
        }
        let largest = comps.iter().map(Vec::len).max().unwrap_or(0);
        if largest as f64 > cert.alpha * part.len() as f64 + 1e-9 {
            return Err(Error::Internal(format!(
                "separator at {:?} leaves a component of {largest} out of {}",
                cert.provenance.split,
                part.len()
            )));
        }
        let sep: Vec<usize> = cert.separator.iter().map(|&l| l as usize).collect();
        let mut bag: Vec<usize> = carried.iter().chain(&sep).copied().collect();
        bag.sort_unstable();
        let mut in_bag = vec![false; w.n()];
        bag.iter().for_each(|&v| in_bag[v] = true);
        let jobs: Vec<(Vec<usize>, Vec<usize>)> = comps
            .into_iter()
            .map(|c| {
                let mut touch: Vec<usize> =
                    c.iter().flat_map(|&v| self.g.neighbors(v)).copied().filter(|&y| in_bag[y]).collect();
                touch.sort_unstable();
                touch.dedup();
                (c, touch)
            })
            .collect();
        let subs: Vec<Sub> = jobs.into_par_iter().map(|(c, a)| self.recurse(c, a)).collect::<Result<_>>()?;
        let mut out = Sub {
            bags: vec![bag],
            links: Vec::new(),
            trace: TraceNode { part: labels, bag: 0, certificate: Some(cert), stalled: false, children: Vec::new() },
        };
        for mut s in subs {
            let off = out.bags.len();
            out.links.push((0, off));
            out.links.extend(s.links.iter().map(|&(a, b)| (a + off, b + off)));
            out.bags.append(&mut s.bags);
            shift(&mut s.trace, off);
            out.trace.children.push(s.trace);
        }
        Ok(out)
    }
}

fn labels_of(vs: &[usize]) -> Vec<Label> {
    vs.iter().map(|&v| v as Label).collect()
}

fn shift(node: &mut TraceNode, off: usize) {
    node.bag += off;
    for c in &mut node.children {
        shift(c, off);
    }
}

/// Tree decomposition of the real graph on `x` by recursive balanced
/// separation, for `x` inducing no copy of `h` with `tw(h) ≤ t ≤ w.t()`.
pub fn decompose(w: &WheelPrefix, x: &[Label], h: &Graph, t: usize, opts: &DecomposeOptions) -> Result<DecompositionTrace> {
    if t > w.t() {
        return Err(Error::InvalidParameter(format!("t = {t} exceeds the wheel parameter {}", w.t())));
    }
    let in_x = membership(w, x)?;
    let part: Vec<usize> = (0..w.n()).filter(|&v| in_x[v]).collect();
    if part.len() != x.len() {
        return Err(Error::InvalidParameter("x contains duplicates".into()));
    }
    if h.n() == 0 {
        return Err(Error::InvalidParameter("pattern graph is empty".into()));
    }
    let tw = exact_treewidth(h)?.width;
    if tw > t {
        return Err(Error::TreewidthTooLarge { found: tw, allowed: t });
    }
    let g = w.real_graph();
    if !opts.trust_hfree {
        if let Some(e) = hfree_check(&g.induced_by_indices(&part), h)? {
            return Err(Error::Precondition(format!("x induces a copy of the pattern: {e:?}")));
        }
    }
    let source = if opts.bounded_branch_paths {
        PathSource::BoundedBranch(tree_representation(&chordal_complete(h, t)?)?)
    } else {
        PathSource::MinHits
    };
    let separator_bound = 3 * w.t() + 2 * h.n() + 1;
    let alpha = match opts.balance {
        BalanceRule::Bounded => bounded_alpha(w),
        BalanceRule::Unbounded => UNBOUNDED_ALPHA,
    };
    let ctx = Ctx { w, g, source, balance: opts.balance, separator_bound };
    let sub = ctx.recurse(part, Vec::new())?;
    let decomposition = TreeDecomposition {
        bags: sub.bags.into_iter().map(|b| b.into_iter().map(|v| v as Label).collect()).collect(),
        links: sub.links,
    };
    let width = decomposition.width();
    let h_branch = h.n() - 1;
    let bounds = theoretical_bounds(w.t(), h.n(), x.len().max(1), w.max_children().max(2), h_branch)?;
    Ok(DecompositionTrace {
        root: sub.trace,
        width,
        separator_bound,
        constructive_bound: constructive_bound(x.len(), alpha, separator_bound),
        decomposition,
        bounds,
    })
}

/// Greedy layer selection: start from `L_0` and repeatedly add the first
/// later layer keeping the union free of induced copies of `h`.
pub fn select_hfree_layers(w: &LayeredWheel, h: &Graph, k: usize) -> Result<Vec<usize>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let g = w.graph();
    if let Some(gi) = girth(g) {
        if gi < 5 {
            return Err(Error::Precondition(format!("wheel has girth {gi} < 5")));
        }
    }
    match girth(h) {
        Some(gi) if gi < 5 => return Err(Error::Precondition(format!("pattern has girth {gi} < 5"))),
        _ => {}
    }
    if let Some(v) = (0..h.n()).find(|&v| h.degree(v) < 4) {
        return Err(Error::Precondition(format!("pattern vertex {} has degree {} < 4", h.label(v), h.degree(v))));
    }
    let layers = w.layers();
    for i in 0..layers.len() {
        for j in i + 1..layers.len() {
            let joined = layers[i].iter().any(|&a| g.neighbors(a).iter().any(|&b| w.layer_of(b) == j));
            if !joined {
                return Err(Error::Precondition(format!("no edge between layers {i} and {j}")));
            }
        }
    }
    let opts = SearchOptions { cap: h.n().max(crate::hfree::DEFAULT_PATTERN_CAP), anchor: None };
    let mut chosen = vec![0usize];
    let mut union: Vec<usize> = layers[0].clone();
    let mut next = 1;
    while chosen.len() < k {
        let found = (next..layers.len()).find_map(|j| {
            let mut cand = union.clone();
            cand.extend_from_slice(&layers[j]);
            match hfree_check_with(&g.induced_by_indices(&cand), h, opts) {
                Ok(None) => Some(Ok((j, cand))),
                Ok(Some(_)) => None,
                Err(e) => Some(Err(e)),
            }
        });
        match found {
            Some(r) => {
                let (j, cand) = r?;
                chosen.push(j);
                union = cand;
                next = j + 1;
            }
            None => {
                return Err(Error::PrefixExhausted(format!(
                    "only {} of {k} layers selected from {} built",
                    chosen.len(),
                    layers.len()
                )))
            }
        }
    }
    Ok(chosen)
}
