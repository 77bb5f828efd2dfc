//! Induced sub(tri)graph search preserving adjacency types.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Label, TypedAdjacency};

pub const DEFAULT_PATTERN_CAP: usize = 10;

/// Pattern label → host label.
pub type Embedding = BTreeMap<Label, Label>;

#[derive(Copy, Clone, Debug)]
pub struct SearchOptions {
    pub cap: usize,
    /// Host index that must be in the image.
    pub anchor: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { cap: DEFAULT_PATTERN_CAP, anchor: None }
    }
}

/// An induced copy of `h` in `g` (all adjacency types preserved), or `None`
/// after exhaustive search.
pub fn hfree_check<G: TypedAdjacency, H: TypedAdjacency>(g: &G, h: &H) -> Result<Option<Embedding>> {
    hfree_check_with(g, h, SearchOptions::default())
}

pub fn hfree_check_with<G: TypedAdjacency, H: TypedAdjacency>(
    g: &G,
    h: &H,
    opts: SearchOptions,
) -> Result<Option<Embedding>> {
    let hn = h.order();
    if hn > opts.cap {
        return Err(Error::SizeCap { what: "pattern vertex count", size: hn, cap: opts.cap });
    }
    if hn == 0 {
        return Ok(Some(Embedding::new()));
    }
    let gn = g.order();
    let hdeg: Vec<usize> = (0..hn).map(|p| h.total_neighbors(p).len()).collect();
    let min_deg = hdeg.iter().copied().min().unwrap_or(0);

    // Every vertex of a copy keeps at least `min_deg` neighbours inside the
    // copy, so the copy survives in the `min_deg`-core.
    let mut alive = vec![true; gn];
    let mut deg: Vec<usize> = (0..gn).map(|v| g.total_neighbors(v).len()).collect();
    let mut stack: Vec<usize> = (0..gn).filter(|&v| deg[v] < min_deg).collect();
    for &v in &stack {
        alive[v] = false;
    }
    while let Some(v) = stack.pop() {
        for &u in g.total_neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
                if deg[u] < min_deg {
                    alive[u] = false;
                    stack.push(u);
                }
            }
        }
    }
    if let Some(a) = opts.anchor {
        if a >= gn {
            return Err(Error::InvalidParameter(format!("anchor index {a} out of range")));
        }
        if !alive[a] {
            return Ok(None);
        }
    }
    let starts: Vec<Option<usize>> = match opts.anchor {
        Some(_) => (0..hn).map(Some).collect(),
        None => vec![None],
    };
    for start in starts {
        let order = pattern_order(h, &hdeg, start);
        let mut s = Search { g, h, alive: &alive, deg: &deg, hdeg: &hdeg, order, img: vec![usize::MAX; hn], used: vec![false; gn] };
        if let (Some(p), Some(a)) = (start, opts.anchor) {
            if deg[a] < hdeg[p] {
                continue;
            }
            s.img[p] = a;
            s.used[a] = true;
            if !s.go(1) {
                continue;
            }
        } else if !s.go(0) {
            continue;
        }
        return Ok(Some((0..hn).map(|p| (h.label_of(p), g.label_of(s.img[p]))).collect()));
    }
    Ok(None)
}

/// Pattern vertices ordered so that each one (after the first of its
/// component) has an earlier neighbour; ties go to higher degree.
fn pattern_order<H: TypedAdjacency>(h: &H, hdeg: &[usize], start: Option<usize>) -> Vec<usize> {
    let hn = h.order();
    let mut placed = vec![false; hn];
    let mut links = vec![0usize; hn];
    let mut order = Vec::with_capacity(hn);
    while order.len() < hn {
        let next = match (order.is_empty(), start) {
            (true, Some(s)) => s,
            _ => (0..hn)
                .filter(|&p| !placed[p])
                .max_by_key(|&p| (links[p], hdeg[p], std::cmp::Reverse(p)))
                .expect("unplaced vertex"),
        };
        placed[next] = true;
        order.push(next);
        for &q in h.total_neighbors(next) {
            links[q] += 1;
        }
    }
    order
}

struct Search<'a, G, H> {
    g: &'a G,
    h: &'a H,
    alive: &'a [bool],
    deg: &'a [usize],
    hdeg: &'a [usize],
    order: Vec<usize>,
    img: Vec<usize>,
    used: Vec<bool>,
}

impl<G: TypedAdjacency, H: TypedAdjacency> Search<'_, G, H> {
    fn fits(&self, i: usize, p: usize, c: usize) -> bool {
        if !self.alive[c] || self.used[c] || self.deg[c] < self.hdeg[p] {
            return false;
        }
        self.order[..i].iter().all(|&r| self.g.adjacency(c, self.img[r]) == self.h.adjacency(p, r))
    }

    fn go(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let p = self.order[i];
        let anchor = self.order[..i].iter().copied().find(|&r| self.h.adjacency(p, r) != crate::graph::AdjacencyType::NonEdge);
        let cands: Vec<usize> = match anchor {
            Some(r) => self.g.total_neighbors(self.img[r]).to_vec(),
            None => (0..self.g.order()).collect(),
        };
        for c in cands {
            if self.fits(i, p, c) {
                self.img[p] = c;
                self.used[c] = true;
                if self.go(i + 1) {
                    return true;
                }
                self.used[c] = false;
                self.img[p] = usize::MAX;
            }
        }
        false
    }
}
