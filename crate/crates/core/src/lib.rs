//! Layered wheels: construction, axiom checking, tree representations of
//! chordal trigraphs, balanced separators, polylogarithmic tree
//! decompositions, contraction sequences and exact oracles.

pub mod axioms;
pub mod bbp;
pub mod chordal;
pub mod decomposer;
pub mod error;
pub mod gen;
pub mod graph;
pub mod hfree;
pub mod io;
pub mod oracles;
pub mod td;
pub mod tree;
pub mod twinwidth;
pub mod wheel;

pub use error::{Error, Result};
pub use graph::{AdjacencyType, Graph, Label, Trigraph, TypedAdjacency};
pub use td::{Bramble, TreeDecomposition};
pub use tree::RootedTree;
pub use wheel::{build_trianglefree_wheel, build_wheel, ChildSpec, Variant, WheelPrefix};
