//! Tree decompositions and brambles over a host graph, stored in label space.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::Label;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<Label>>,
    pub links: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn single_bag(mut bag: Vec<Label>) -> Self {
        bag.sort_unstable();
        TreeDecomposition { bags: vec![bag], links: Vec::new() }
    }

    /// Max bag size minus one; 0 for a decomposition without bags.
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn to_json(&self) -> TdFile {
        TdFile {
            bags: self.bags.iter().enumerate().map(|(i, b)| (i, b.clone())).collect(),
            links: self.links.iter().map(|&(a, b)| [a, b]).collect(),
            width: self.width(),
        }
    }

    pub fn from_json(file: &TdFile) -> Self {
        // Node ids in the file may be sparse; renumber densely.
        let ids: BTreeMap<usize, usize> = file.bags.keys().enumerate().map(|(i, &k)| (k, i)).collect();
        let bags = file.bags.values().cloned().collect();
        let links = file
            .links
            .iter()
            .map(|&[a, b]| (ids.get(&a).copied().unwrap_or(usize::MAX), ids.get(&b).copied().unwrap_or(usize::MAX)))
            .collect();
        TreeDecomposition { bags, links }
    }
}

/// On-disk form: `{ "bags": {node: [labels]}, "links": [[a,b],…], "width": W }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TdFile {
    pub bags: BTreeMap<usize, Vec<Label>>,
    pub links: Vec<[usize; 2]>,
    #[serde(default)]
    pub width: usize,
}

/// A family of connected, pairwise touching vertex sets.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bramble {
    pub sets: Vec<Vec<Label>>,
    /// A minimum hitting set, once computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_certificate: Option<Vec<Label>>,
}

impl Bramble {
    pub fn new(sets: Vec<Vec<Label>>) -> Self {
        Bramble { sets, order_certificate: None }
    }
}
