//! Browser bindings: wheel layout, contraction profile and separator
//! highlighting. The plain functions are usable natively; the `js_*` wrappers
//! convert results for JavaScript.

use layered_wheels::decomposer::{build_separator, find_balanced_vertex, PathSource};
use layered_wheels::gen::greedy_hfree_subset;
use layered_wheels::graph::{named, Graph, Label};
use layered_wheels::twinwidth::{step_records, wheel_contraction_sequence, StepRecord};
use layered_wheels::{Variant, WheelPrefix};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest prefix the page will build.
pub const MAX_VERTICES: usize = 6000;

#[derive(Debug, Serialize)]
pub struct Node {
    pub id: Label,
    pub layer: usize,
    /// Horizontal position in `[0, 1]`.
    pub x: f64,
    pub parent: Option<Label>,
}

#[derive(Debug, Serialize)]
pub struct Edge {
    pub a: Label,
    pub b: Label,
    pub red: bool,
}

#[derive(Debug, Serialize)]
pub struct Layout {
    pub t: usize,
    pub depth: usize,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Serialize)]
pub struct Highlight {
    pub subset: Vec<Label>,
    pub apex: Label,
    pub separator: Vec<Label>,
    pub side_below: Vec<Label>,
    pub balance: f64,
}

fn prefix(t: usize, depth: usize, triangle_free: bool) -> Result<WheelPrefix, String> {
    let variant = if triangle_free { Variant::TriangleFree } else { Variant::Standard };
    WheelPrefix::build(t, depth, variant, MAX_VERTICES).map_err(|e| e.to_string())
}

/// Leaves spread evenly; every other vertex sits above the mean of its
/// children.
pub fn wheel_layout(t: usize, depth: usize, triangle_free: bool) -> Result<Layout, String> {
    let w = prefix(t, depth, triangle_free)?;
    let tree = w.tree();
    let mut x = vec![0.0; w.n()];
    let last = w.layers().last().map_or(0, Vec::len);
    for layer in w.layers().iter().rev() {
        for &v in layer {
            let kids = tree.children(v);
            x[v] = if kids.is_empty() {
                (w.position(v) as f64 + 0.5) / last.max(1) as f64
            } else {
                kids.iter().map(|&c| x[c]).sum::<f64>() / kids.len() as f64
            };
        }
    }
    let nodes = (0..w.n())
        .map(|v| Node { id: v as Label, layer: w.layer_of(v), x: x[v], parent: tree.parent(v).map(|p| p as Label) })
        .collect();
    let tg = w.trigraph();
    let edges = tg
        .black_edges()
        .into_iter()
        .map(|(a, b)| Edge { a, b, red: false })
        .chain(tg.red_edges().into_iter().map(|(a, b)| Edge { a, b, red: true }))
        .collect();
    Ok(Layout { t, depth, nodes, edges })
}

pub fn contraction_profile(t: usize, depth: usize) -> Result<Vec<StepRecord>, String> {
    let w = prefix(t, depth, false)?;
    step_records(&w.real_graph(), &wheel_contraction_sequence(&w)).map_err(|e| e.to_string())
}

fn pattern(name: &str) -> Result<Graph, String> {
    Ok(match name {
        "P4" => named::path(4),
        "claw" => Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).map_err(|e| e.to_string())?,
        "K3" => named::complete(3),
        "C4" => named::cycle(4),
        other => return Err(format!("unknown pattern {other}")),
    })
}

/// A greedy pattern-free subset of the real graph, its balanced vertex and
/// the separator built there.
pub fn separator_highlight(t: usize, depth: usize, pattern_name: &str, seed: u64) -> Result<Highlight, String> {
    let w = prefix(t, depth, false)?;
    let h = pattern(pattern_name)?;
    let subset = greedy_hfree_subset(&w.real_graph(), &h, None, seed).map_err(|e| e.to_string())?;
    let apex = find_balanced_vertex(&w, &subset).map_err(|e| e.to_string())?;
    let cert = build_separator(&w, &subset, apex, &PathSource::MinHits).map_err(|e| e.to_string())?;
    Ok(Highlight { subset, apex, separator: cert.separator, side_below: cert.side_below, balance: cert.balance })
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<JsValue, JsValue> {
    let v = r.map_err(|e| JsValue::from_str(&e))?;
    serde_wasm_bindgen::to_value(&v).map_err(|e| JsValue::from_str(&e.to_string()))
}

#[wasm_bindgen(js_name = wheelLayout)]
pub fn js_wheel_layout(t: usize, depth: usize, triangle_free: bool) -> Result<JsValue, JsValue> {
    to_js(wheel_layout(t, depth, triangle_free))
}

#[wasm_bindgen(js_name = contractionProfile)]
pub fn js_contraction_profile(t: usize, depth: usize) -> Result<JsValue, JsValue> {
    to_js(contraction_profile(t, depth))
}

#[wasm_bindgen(js_name = separatorHighlight)]
pub fn js_separator_highlight(t: usize, depth: usize, pattern: &str, seed: u32) -> Result<JsValue, JsValue> {
    to_js(separator_highlight(t, depth, pattern, seed as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_places_parents_between_children() {
        let l = wheel_layout(1, 2, false).unwrap();
        assert_eq!(l.nodes.len(), 17);
        assert!(l.nodes.iter().all(|n| (0.0..=1.0).contains(&n.x)));
        let root = &l.nodes[0];
        assert!(root.parent.is_none());
        let kids: Vec<&Node> = l.nodes.iter().filter(|n| n.parent == Some(0)).collect();
        let lo = kids.iter().map(|n| n.x).fold(f64::INFINITY, f64::min);
        let hi = kids.iter().map(|n| n.x).fold(0.0, f64::max);
        assert!(lo <= root.x && root.x <= hi);
        assert!(l.edges.iter().any(|e| e.red));
    }

    #[test]
    fn oversized_prefix_is_refused() {
        assert!(wheel_layout(3, 4, false).is_err());
    }

    #[test]
    fn profile_has_one_record_per_merge() {
        let p = contraction_profile(1, 2).unwrap();
        assert_eq!(p.len(), 16);
        assert!(p.iter().all(|r| r.outdegree <= 4));
    }

    #[test]
    fn highlight_separates_subset() {
        let h = separator_highlight(1, 3, "P4", 2).unwrap();
        assert!(h.separator.contains(&h.apex));
        assert!(h.separator.iter().all(|v| h.subset.binary_search(v).is_ok()));
        assert!(h.side_below.iter().all(|v| !h.separator.contains(v)));
        assert!(h.balance < 1.0);
        assert!(separator_highlight(1, 3, "K5", 2).is_err());
    }
}
