//! Finite prefixes of the layered wheels `G_t / T_t / W_t` and of their
//! triangle-free counterparts.
//!
//! Vertices are numbered in creation order, so labels coincide with indices,
//! every layer is a contiguous label range, and the left-to-right order of a
//! layer is increasing label order.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{AdjacencyType, Graph, Label, Trigraph};
use crate::tree::RootedTree;

pub const DEFAULT_VERTEX_CAP: usize = 1_000_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Standard,
    TriangleFree,
}

/// How a non-root vertex was born: black targets `B`, red targets `R`, and
/// whether it is the plain twin appended after a spec in the triangle-free
/// construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChildSpec {
    pub parent: Label,
    pub black: Vec<Label>,
    pub red: Vec<Label>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub twin: bool,
}

impl ChildSpec {
    pub fn targets(&self) -> impl Iterator<Item = Label> + '_ {
        self.black.iter().chain(&self.red).copied()
    }
}

/// Number of children of a vertex with `|N↑[u]| = s` in the standard
/// construction: `Σ_{k ≤ min(t, s)} C(s, k) 2^k`.
pub fn standard_child_count(s: usize, t: usize) -> usize {
    let mut total = 0usize;
    let mut binom = 1usize;
    for k in 0..=s.min(t) {
        total += binom << k;
        binom = binom * (s - k) / (k + 1);
    }
    total
}

/// Upper bound (exclusive) on children per node: `3^{t+1}` for the standard
/// construction, twice that for the triangle-free one.
pub fn child_bound(t: usize, variant: Variant) -> usize {
    let b = 3usize.pow(t as u32 + 1);
    match variant {
        Variant::Standard => b,
        Variant::TriangleFree => 2 * b,
    }
}

/// All child specs of `u`, given `upward = N↑[u]` listed in (layer, position)
/// order.
///
/// Specs are sorted by `|B ∪ R|`, then by the membership vector of `B`
/// (lexicographically, first upward vertex first), then by that of `R`. In
/// the triangle-free variant `B` must be a red clique of `upward`
/// (`red_pairs` lists the red pairs among `upward`; sets of size ≤ 1 always
/// qualify) and every spec is followed by its plain twin.
pub fn enumerate_children(
    u: Label,
    upward: &[Label],
    t: usize,
    variant: Variant,
    red_pairs: Option<&[(Label, Label)]>,
) -> Result<Vec<ChildSpec>> {
    let s = upward.len();
    if s > t + 1 {
        return Err(Error::Precondition(format!("|N↑[{u}]| = {s} exceeds t+1 = {}", t + 1)));
    }
    let red: HashSet<(Label, Label)> = match (variant, red_pairs) {
        (Variant::TriangleFree, None) => {
            return Err(Error::InvalidParameter("triangle-free enumeration needs the red pairs".into()))
        }
        (_, pairs) => pairs.unwrap_or(&[]).iter().map(|&(a, b)| (a.min(b), a.max(b))).collect(),
    };
    let is_red_clique = |members: &[Label]| {
        members
            .iter()
            .enumerate()
            .all(|(i, &a)| members[i + 1..].iter().all(|&b| red.contains(&(a.min(b), a.max(b)))))
    };

    // colour per upward position: 0 = none, 1 = black, 2 = red
    let mut keyed: Vec<((usize, Vec<bool>, Vec<bool>), ChildSpec)> = Vec::new();
    let mut colour = vec![0u8; s];
    loop {
        let size = colour.iter().filter(|&&c| c != 0).count();
        if size <= t {
            let bmask: Vec<bool> = colour.iter().map(|&c| c == 1).collect();
            let rmask: Vec<bool> = colour.iter().map(|&c| c == 2).collect();
            let black: Vec<Label> = (0..s).filter(|&j| bmask[j]).map(|j| upward[j]).collect();
            let red_t: Vec<Label> = (0..s).filter(|&j| rmask[j]).map(|j| upward[j]).collect();
            if variant == Variant::Standard || is_red_clique(&black) {
                keyed.push(((size, bmask, rmask), ChildSpec { parent: u, black, red: red_t, twin: false }));
            }
        }
        // odometer over {0,1,2}^s
        let mut j = 0;
        while j < s && colour[j] == 2 {
            colour[j] = 0;
            j += 1;
        }
        if j == s {
            break;
        }
        colour[j] += 1;
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out = Vec::with_capacity(keyed.len() * 2);
    for (_, spec) in keyed {
        out.push(spec);
        if variant == Variant::TriangleFree {
            out.push(ChildSpec { parent: u, black: vec![], red: vec![], twin: true });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WheelPrefix {
    t: usize,
    variant: Variant,
    trigraph: Trigraph,
    layers: Vec<Vec<usize>>,
    layer_of: Vec<usize>,
    position: Vec<usize>,
    tree: RootedTree,
    births: Vec<Option<ChildSpec>>,
    upward: Vec<Vec<usize>>,
}

/// Builds layers `L_0 … L_depth` of the standard construction.
pub fn build_wheel(t: usize, depth: usize) -> Result<WheelPrefix> {
    WheelPrefix::build(t, depth, Variant::Standard, DEFAULT_VERTEX_CAP)
}

/// Builds layers `L_0 … L_depth` of the triangle-free construction.
pub fn build_trianglefree_wheel(t: usize, depth: usize) -> Result<WheelPrefix> {
    WheelPrefix::build(t, depth, Variant::TriangleFree, DEFAULT_VERTEX_CAP)
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl WheelPrefix {
    pub fn build(t: usize, depth: usize, variant: Variant, cap: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidParameter("t must be at least 1".into()));
        }
        if cap == 0 {
            return Err(Error::VertexBudget { cap, needed: 1 });
        }
        let mut layers: Vec<Vec<usize>> = vec![vec![0]];
        let mut parent: Vec<Option<usize>> = vec![None];
        let mut births: Vec<Option<ChildSpec>> = vec![None];
        let mut upward: Vec<Vec<usize>> = vec![vec![0]];
        let mut black: HashSet<(usize, usize)> = HashSet::new();
        let mut red: HashSet<(usize, usize)> = HashSet::new();

        for _ in 0..depth {
            let current = layers.last().expect("nonempty");
            let mut planned: Vec<Vec<ChildSpec>> = Vec::with_capacity(current.len());
            let mut total = parent.len();
            for &u in current {
                let up_labels: Vec<Label> = upward[u].iter().map(|&x| x as Label).collect();
                let red_pairs: Vec<(Label, Label)> = match variant {
                    Variant::Standard => Vec::new(),
                    Variant::TriangleFree => {
                        let mut p = Vec::new();
                        for (i, &a) in upward[u].iter().enumerate() {
                            for &b in &upward[u][i + 1..] {
                                if red.contains(&ordered(a, b)) {
                                    p.push((a as Label, b as Label));
                                }
                            }
                        }
                        p
                    }
                };
                let specs = enumerate_children(u as Label, &up_labels, t, variant, Some(&red_pairs))?;
                total += specs.len();
                if total > cap {
                    return Err(Error::VertexBudget { cap, needed: total });
                }
                planned.push(specs);
            }
            let mut next = Vec::with_capacity(total - parent.len());
            for specs in planned {
                for spec in specs {
                    let v = parent.len();
                    if let Some(&left) = next.last() {
                        black.insert(ordered(left, v));
                    }
                    for &b in &spec.black {
                        black.insert(ordered(v, b as usize));
                    }
                    for &r in &spec.red {
                        red.insert(ordered(v, r as usize));
                    }
                    let mut up: Vec<usize> = spec.targets().map(|x| x as usize).collect();
                    up.push(v);
                    up.sort_unstable();
                    upward.push(up);
                    parent.push(Some(spec.parent as usize));
                    births.push(Some(spec));
                    next.push(v);
                }
            }
            layers.push(next);
        }

        let n = parent.len();
        let mut layer_of = vec![0; n];
        let mut position = vec![0; n];
        for (i, layer) in layers.iter().enumerate() {
            for (p, &v) in layer.iter().enumerate() {
                layer_of[v] = i;
                position[v] = p;
            }
        }
        let trigraph = Trigraph::from_index_sets((0..n as Label).collect(), black, red)?;
        let tree = RootedTree::from_parents(parent)?;
        Ok(WheelPrefix { t, variant, trigraph, layers, layer_of, position, tree, births, upward })
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Index of the last built layer.
    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn n(&self) -> usize {
        self.layer_of.len()
    }

    pub fn trigraph(&self) -> &Trigraph {
        &self.trigraph
    }

    pub fn total_graph(&self) -> Graph {
        self.trigraph.total_graph()
    }

    /// The layered wheel proper: black edges only.
    pub fn real_graph(&self) -> Graph {
        self.trigraph.real_graph()
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    pub fn layer_of(&self, v: usize) -> usize {
        self.layer_of[v]
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn tree(&self) -> &RootedTree {
        &self.tree
    }

    pub fn birth(&self, v: usize) -> Option<&ChildSpec> {
        self.births[v].as_ref()
    }

    pub fn in_last_layer(&self, v: usize) -> bool {
        self.layer_of[v] == self.depth()
    }

    pub fn contains(&self, l: Label) -> bool {
        (l as usize) < self.n()
    }

    fn check(&self, l: Label) -> Result<usize> {
        if self.contains(l) {
            Ok(l as usize)
        } else {
            Err(Error::UnknownVertex(l))
        }
    }

    /// `N↑[v]` as recorded at birth (sorted).
    pub fn upward(&self, v: usize) -> &[usize] {
        &self.upward[v]
    }

    /// `N↑[v] \ {v}`: the ancestors that edges leaving the subtree of `v` can
    /// reach.
    pub fn upward_strict(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.upward[v].iter().copied().filter(move |&x| x != v)
    }

    /// `u` plus its total-graph neighbours in strictly earlier layers,
    /// recomputed from the trigraph.
    pub fn upward_neighborhood(&self, u: Label) -> Result<Vec<Label>> {
        let ui = self.check(u)?;
        let li = self.layer_of[ui];
        let mut out: Vec<Label> = self
            .trigraph
            .neighbors(ui)
            .iter()
            .filter(|&&x| self.layer_of[x] < li)
            .map(|&x| x as Label)
            .collect();
        out.push(u);
        out.sort_unstable();
        Ok(out)
    }

    /// Vertices immediately left of `u`'s leftmost child and immediately right
    /// of its rightmost child, in the next layer.
    pub fn boundary_siblings(&self, u: Label) -> Result<(Option<Label>, Option<Label>)> {
        let ui = self.check(u)?;
        let kids = self.tree.children(ui);
        let (Some(&first), Some(&last)) = (kids.first(), kids.last()) else {
            return Err(Error::Precondition(format!("vertex {u} has no built children")));
        };
        let layer = &self.layers[self.layer_of[first]];
        let pf = self.position[first];
        let pl = self.position[last];
        let minus = (pf > 0).then(|| layer[pf - 1] as Label);
        let plus = layer.get(pl + 1).map(|&x| x as Label);
        Ok((minus, plus))
    }

    pub fn max_children(&self) -> usize {
        (0..self.n()).map(|v| self.tree.children(v).len()).max().unwrap_or(0)
    }

    pub fn to_file(&self) -> WheelFile {
        let parent = (0..self.n())
            .filter_map(|v| self.tree.parent(v).map(|p| (v as Label, p as Label)))
            .collect();
        let birth = self
            .births
            .iter()
            .enumerate()
            .filter_map(|(v, b)| {
                b.as_ref().map(|b| {
                    (v as Label, BirthRecord { black: b.black.clone(), red: b.red.clone(), twin: b.twin })
                })
            })
            .collect();
        WheelFile {
            t: self.t,
            variant: self.variant,
            layers: self.layers.iter().map(|l| l.iter().map(|&x| x as Label).collect()).collect(),
            parent,
            birth,
            black: self.trigraph.black_edges().into_iter().map(|(a, b)| [a, b]).collect(),
            red: self.trigraph.red_edges().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    /// Accepts a wheel file only if it is exactly the canonical prefix it
    /// claims to be.
    pub fn from_file(f: &WheelFile) -> Result<Self> {
        let n: usize = f.layers.iter().map(Vec::len).sum();
        if f.layers.is_empty() {
            return Err(Error::Inconsistent("wheel file has no layers".into()));
        }
        let w = WheelPrefix::build(f.t, f.layers.len() - 1, f.variant, n.max(1))
            .map_err(|e| Error::Inconsistent(format!("cannot rebuild canonical prefix: {e}")))?;
        let canonical = w.to_file();
        for (name, same) in [
            ("layers", canonical.layers == f.layers),
            ("parent", canonical.parent == f.parent),
            ("birth", canonical.birth == f.birth),
            ("black", sorted_pairs(&canonical.black) == sorted_pairs(&f.black)),
            ("red", sorted_pairs(&canonical.red) == sorted_pairs(&f.red)),
        ] {
            if !same {
                return Err(Error::Inconsistent(format!("field `{name}` differs from the canonical prefix")));
            }
        }
        Ok(w)
    }

    /// Adjacency type between two vertices of the wheel trigraph.
    pub fn adjacency(&self, a: usize, b: usize) -> AdjacencyType {
        self.trigraph.adjacency_type(a, b)
    }
}

fn sorted_pairs(v: &[[Label; 2]]) -> Vec<[Label; 2]> {
    let mut out: Vec<[Label; 2]> = v.iter().map(|&[a, b]| [a.min(b), a.max(b)]).collect();
    out.sort_unstable();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BirthRecord {
    #[serde(rename = "B")]
    pub black: Vec<Label>,
    #[serde(rename = "R")]
    pub red: Vec<Label>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub twin: bool,
}

/// JSON wheel format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WheelFile {
    pub t: usize,
    pub variant: Variant,
    pub layers: Vec<Vec<Label>>,
    pub parent: BTreeMap<Label, Label>,
    pub birth: BTreeMap<Label, BirthRecord>,
    pub black: Vec<[Label; 2]>,
    pub red: Vec<[Label; 2]>,
}

/// DOT export: one rank per layer, `T_t` edges dotted, red edges red.
pub fn wheel_to_dot(w: &WheelPrefix) -> String {
    use std::fmt::Write as _;
    let mut s = String::from("graph W {\n  node [shape=point];\n");
    for (i, layer) in w.layers().iter().enumerate() {
        let names: Vec<String> = layer.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "  {{ rank=same; /* L{i} */ {}; }}", names.join("; "));
    }
    for v in 0..w.n() {
        if let Some(p) = w.tree().parent(v) {
            let _ = writeln!(s, "  {p} -- {v} [style=dotted];");
        }
    }
    for (a, b) in w.trigraph().black_edges() {
        let _ = writeln!(s, "  {a} -- {b};");
    }
    for (a, b) in w.trigraph().red_edges() {
        let _ = writeln!(s, "  {a} -- {b} [color=red];");
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(b: &[Label], r: &[Label]) -> (Vec<Label>, Vec<Label>) {
        (b.to_vec(), r.to_vec())
    }

    fn pairs(specs: &[ChildSpec]) -> Vec<(Vec<Label>, Vec<Label>)> {
        specs.iter().map(|s| (s.black.clone(), s.red.clone())).collect()
    }

    #[test]
    fn enumerate_singleton_t1() {
        let specs = enumerate_children(0, &[0], 1, Variant::Standard, None).unwrap();
        assert_eq!(pairs(&specs), vec![spec(&[], &[]), spec(&[], &[0]), spec(&[0], &[])]);
    }

    #[test]
    fn enumerate_counts_match_formula() {
        assert_eq!(enumerate_children(5, &[0, 5], 1, Variant::Standard, None).unwrap().len(), 5);
        assert_eq!(enumerate_children(9, &[0, 3, 9], 2, Variant::Standard, None).unwrap().len(), 19);
        for t in 1..=4 {
            for s in 1..=t + 1 {
                let up: Vec<Label> = (0..s as Label).collect();
                let got = enumerate_children(0, &up, t, Variant::Standard, None).unwrap().len();
                assert_eq!(got, standard_child_count(s, t));
                assert!(got < child_bound(t, Variant::Standard));
            }
        }
    }

    #[test]
    fn enumerate_rejects_oversized_upward() {
        assert!(enumerate_children(0, &[0, 1, 2], 1, Variant::Standard, None).is_err());
        assert!(enumerate_children(0, &[0], 1, Variant::TriangleFree, None).is_err());
    }

    #[test]
    fn enumerate_trianglefree_filters_black_sets() {
        // {1, 2} is not red: no spec may put both in B.
        let specs = enumerate_children(2, &[1, 2], 2, Variant::TriangleFree, Some(&[])).unwrap();
        assert!(specs.iter().all(|s| s.black.len() <= 1));
        assert!(specs.chunks(2).all(|c| !c[0].twin && c[1].twin));
        let with_red = enumerate_children(2, &[1, 2], 2, Variant::TriangleFree, Some(&[(1, 2)])).unwrap();
        assert!(with_red.iter().any(|s| s.black == vec![1, 2]));
    }

    #[test]
    fn tiny_prefixes() {
        let w = build_wheel(1, 0).unwrap();
        assert_eq!(w.n(), 1);
        assert_eq!(w.trigraph().total_graph().m(), 0);
        assert_eq!(build_wheel(1, 1).unwrap().layer_sizes(), vec![1, 3]);
        assert_eq!(build_wheel(1, 2).unwrap().layer_sizes(), vec![1, 3, 13]);
        assert_eq!(build_trianglefree_wheel(1, 1).unwrap().layer_sizes(), vec![1, 6]);
        assert_eq!(build_trianglefree_wheel(2, 0).unwrap().n(), 1);
    }

    #[test]
    fn upward_neighbourhoods_t1() {
        let w = build_wheel(1, 2).unwrap();
        assert_eq!(w.upward_neighborhood(0).unwrap(), vec![0]);
        // children of the root in canonical order: (∅,∅), (∅,{r}), ({r},∅)
        assert_eq!(w.upward_neighborhood(1).unwrap(), vec![1]);
        assert_eq!(w.birth(3).unwrap().black, vec![0]);
        assert_eq!(w.upward_neighborhood(3).unwrap(), vec![0, 3]);
        assert!(w.upward_neighborhood(99).is_err());
        for v in 0..w.n() {
            let recorded: Vec<Label> = w.upward(v).iter().map(|&x| x as Label).collect();
            assert_eq!(w.upward_neighborhood(v as Label).unwrap(), recorded);
        }
    }

    #[test]
    fn boundary_siblings_depth2() {
        let w = build_wheel(1, 2).unwrap();
        assert_eq!(w.boundary_siblings(0).unwrap(), (None, None));
        // L1 = [1,2,3]; children blocks in L2: 1 -> 3 kids, 2 -> 5, 3 -> 5
        let l2 = &w.layers()[2];
        let first_of = |u: usize| w.tree().children(u)[0] as Label;
        let last_of = |u: usize| *w.tree().children(u).last().unwrap() as Label;
        assert_eq!(w.boundary_siblings(1).unwrap(), (None, Some(first_of(2))));
        assert_eq!(w.boundary_siblings(2).unwrap(), (Some(last_of(1)), Some(first_of(3))));
        assert_eq!(w.boundary_siblings(3).unwrap(), (Some(last_of(2)), None));
        assert!(w.boundary_siblings(l2[0] as Label).is_err());
    }

    #[test]
    fn vertex_budget_enforced() {
        let e = WheelPrefix::build(1, 2, Variant::Standard, 10).unwrap_err();
        assert!(matches!(e, Error::VertexBudget { cap: 10, .. }));
    }

    #[test]
    fn file_roundtrip_and_tamper_detection() {
        let w = build_trianglefree_wheel(1, 2).unwrap();
        let f = w.to_file();
        let json = serde_json::to_string(&f).unwrap();
        let back: WheelFile = serde_json::from_str(&json).unwrap();
        assert_eq!(WheelPrefix::from_file(&back).unwrap(), w);
        let mut bad = back.clone();
        bad.black.pop();
        assert!(WheelPrefix::from_file(&bad).is_err());
    }

    #[test]
    fn deterministic() {
        assert_eq!(build_wheel(2, 3).unwrap(), build_wheel(2, 3).unwrap());
    }
}
