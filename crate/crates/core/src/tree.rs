//! Rooted trees over a dense index space, with O(1) ancestor queries.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    root: Option<usize>,
    depth: Vec<usize>,
    tin: Vec<usize>,
    tout: Vec<usize>,
    preorder: Vec<usize>,
}

impl RootedTree {
    /// Builds a tree from a parent array; children are ordered by index.
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n {
                    return Err(Error::Inconsistent(format!("parent index {p} out of range")));
                }
                children[p].push(v);
            }
        }
        Self::from_children(parent, children)
    }

    pub fn from_children(parent: Vec<Option<usize>>, children: Vec<Vec<usize>>) -> Result<Self> {
        let n = parent.len();
        let roots: Vec<usize> = (0..n).filter(|&v| parent[v].is_none()).collect();
        let root = match roots.as_slice() {
            [] if n == 0 => None,
            [r] => Some(*r),
            [] => return Err(Error::Inconsistent("tree has no root".into())),
            _ => return Err(Error::Inconsistent(format!("tree has {} roots", roots.len()))),
        };
        let mut depth = vec![0; n];
        let mut tin = vec![0; n];
        let mut tout = vec![0; n];
        let mut preorder = Vec::with_capacity(n);
        if let Some(r) = root {
            let mut clock = 0;
            let mut stack = vec![(r, 0usize)];
            tin[r] = clock;
            preorder.push(r);
            clock += 1;
            while let Some(top) = stack.last_mut() {
                let v = top.0;
                if top.1 < children[v].len() {
                    let c = children[v][top.1];
                    top.1 += 1;
                    if parent[c] != Some(v) {
                        return Err(Error::Inconsistent(format!("child list of {v} contains {c}")));
                    }
                    depth[c] = depth[v] + 1;
                    tin[c] = clock;
                    clock += 1;
                    preorder.push(c);
                    stack.push((c, 0));
                } else {
                    tout[v] = clock;
                    stack.pop();
                }
            }
        }
        if preorder.len() != n {
            return Err(Error::Inconsistent("parent links contain a cycle or unreachable node".into()));
        }
        Ok(RootedTree { parent, children, root, depth, tin, tout, preorder })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Nodes in depth-first preorder, children visited in stored order.
    pub fn preorder(&self) -> &[usize] {
        &self.preorder
    }

    /// Reflexive: every node is its own ancestor.
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        self.tin[a] <= self.tin[b] && self.tout[b] <= self.tout[a]
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.is_ancestor(a, b) || self.is_ancestor(b, a)
    }

    /// Ancestors of `v` from `v` itself up to the root.
    pub fn ancestors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::successors(Some(v), move |&x| self.parent[x])
    }

    /// Descendants of `v` (including `v`), in preorder.
    pub fn descendants(&self, v: usize) -> &[usize] {
        let start = self.tin[v];
        &self.preorder[start..self.tout[v]]
    }

    /// Count of nodes in the subtree of every node that satisfy `weight`.
    pub fn subtree_counts(&self, weight: impl Fn(usize) -> bool) -> Vec<usize> {
        let mut count = vec![0usize; self.len()];
        for &v in self.preorder.iter().rev() {
            count[v] += weight(v) as usize;
            if let Some(p) = self.parent[v] {
                count[p] += count[v];
            }
        }
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ancestor_queries() {
        // 0 -> 1 -> 3, 0 -> 2
        let t = RootedTree::from_parents(vec![None, Some(0), Some(0), Some(1)]).unwrap();
        assert!(t.is_ancestor(0, 3));
        assert!(t.is_ancestor(3, 3));
        assert!(!t.is_ancestor(2, 3));
        assert_eq!(t.ancestors(3).collect::<Vec<_>>(), vec![3, 1, 0]);
        assert_eq!(t.descendants(1), &[1, 3]);
        assert_eq!(t.subtree_counts(|_| true), vec![4, 2, 1, 1]);
        assert_eq!(t.depth(3), 2);
    }

    #[test]
    fn rejects_bad_parents() {
        assert!(RootedTree::from_parents(vec![None, None]).is_err());
        assert!(RootedTree::from_parents(vec![Some(1), Some(0)]).is_err());
        assert!(RootedTree::from_parents(vec![None, Some(2), Some(1)]).is_err());
        assert!(RootedTree::from_parents(vec![]).unwrap().is_empty());
    }
}
