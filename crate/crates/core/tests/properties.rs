//! Property suites for the structural invariants of each module.

use std::collections::{BTreeSet, HashSet};

use layered_wheels::axioms::{compute_upward_restriction, t_stroll_exists, LayeredWheel, StrollQuery, View};
use layered_wheels::bbp::min_branch_hits;
use layered_wheels::chordal::{chordal_complete, tree_representation, validate_representation};
use layered_wheels::decomposer::{check_separator, decompose, DecomposeOptions};
use layered_wheels::gen::{greedy_hfree_subset, random_chordal_trigraph};
use layered_wheels::graph::{named, AdjacencyType, Graph, Label, Trigraph};
use layered_wheels::oracles::{
    bramble_order, check_bramble, clique_number, exact_treewidth, exact_twin_width, max_clique,
    verify_tree_decomposition,
};
use layered_wheels::td::Bramble;
use layered_wheels::twinwidth::{sequence_width, PartitionSequence};
use layered_wheels::wheel::{build_trianglefree_wheel, build_wheel, enumerate_children, Variant, WheelPrefix};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if bits[k] {
                        edges.push((i as Label, j as Label));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

/// Pairs coloured 0 (none), 1 (black) or 2 (red).
fn trigraph_strategy(max_n: usize) -> impl Strategy<Value = Trigraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(0u8..3, n * (n - 1) / 2).prop_map(move |colours| {
            let (mut black, mut red) = (Vec::new(), Vec::new());
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    match colours[k] {
                        1 => black.push((i as Label, j as Label)),
                        2 => red.push((i as Label, j as Label)),
                        _ => {}
                    }
                    k += 1;
                }
            }
            Trigraph::from_edges(n, &black, &red).unwrap()
        })
    })
}

fn edge_set(g: &Graph) -> BTreeSet<(Label, Label)> {
    g.edge_labels().into_iter().collect()
}

fn prefixes() -> Vec<WheelPrefix> {
    let mut out = Vec::new();
    for t in 1..=2 {
        for depth in 0..=3 {
            out.push(build_wheel(t, depth).unwrap());
        }
    }
    out.push(build_wheel(3, 2).unwrap());
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn total_graph_is_disjoint_union(t in trigraph_strategy(9)) {
        let black: BTreeSet<_> = t.black_edges().into_iter().collect();
        let red: BTreeSet<_> = t.red_edges().into_iter().collect();
        prop_assert!(black.is_disjoint(&red));
        let total = edge_set(&t.total_graph());
        prop_assert_eq!(&total, &black.union(&red).copied().collect::<BTreeSet<_>>());
        prop_assert!(edge_set(&t.real_graph()).is_subset(&total));
    }

    #[test]
    fn induced_subgraph_commutes(t in trigraph_strategy(9), mask in any::<u16>()) {
        let s: Vec<Label> = t.labels().iter().copied().filter(|&l| mask >> l & 1 == 1).collect();
        let once = t.induced_subgraph(&s).unwrap();
        prop_assert_eq!(&once.induced_subgraph(&s).unwrap(), &once);
        prop_assert_eq!(edge_set(&once.total_graph()), edge_set(&t.total_graph().induced_subgraph(&s).unwrap()));
        prop_assert_eq!(edge_set(&once.real_graph()), edge_set(&t.real_graph().induced_subgraph(&s).unwrap()));
    }

    #[test]
    fn exact_decomposition_is_valid_and_fragile(g in graph_strategy(9), pick in any::<prop::sample::Index>()) {
        let r = exact_treewidth(&g).unwrap();
        prop_assert_eq!(verify_tree_decomposition(&g, &r.decomposition).is_valid(), true);
        prop_assert_eq!(r.decomposition.width(), r.width);
        let edges = g.edge_labels();
        if !edges.is_empty() {
            // Removing one endpoint of an edge from every bag holding both uncovers it.
            let (a, b) = edges[pick.index(edges.len())];
            let mut td = r.decomposition.clone();
            for bag in &mut td.bags {
                if bag.contains(&a) && bag.contains(&b) {
                    bag.retain(|&v| v != a);
                }
            }
            prop_assert!(!verify_tree_decomposition(&g, &td).is_valid());
        }
        if r.decomposition.links.len() >= 1 {
            let mut td = r.decomposition.clone();
            td.links.pop();
            prop_assert!(!verify_tree_decomposition(&g, &td).is_valid());
        }
    }

    #[test]
    fn clique_bramble_is_below_treewidth(g in graph_strategy(10)) {
        // Singletons of a clique pairwise touch: a bramble of order ω.
        let clique = max_clique(&g).unwrap();
        let mut b = Bramble::new(clique.iter().map(|&v| vec![v]).collect());
        prop_assert!(check_bramble(&g, &b).is_ok());
        let order = bramble_order(&g, &mut b).unwrap();
        prop_assert_eq!(order, clique.len());
        prop_assert!(order - 1 <= exact_treewidth(&g).unwrap().width);
    }

    #[test]
    fn chordal_completion_meets_width(g in graph_strategy(9)) {
        let tw = exact_treewidth(&g).unwrap().width;
        let c = chordal_complete(&g, tw).unwrap();
        prop_assert_eq!(clique_number(&c.total_graph()).unwrap(), tw + 1);
        prop_assert_eq!(edge_set(&c.real_graph()), edge_set(&g));
        if tw > 0 {
            prop_assert!(chordal_complete(&g, tw - 1).is_err());
        }
    }

    #[test]
    fn representations_respect_ancestry(seed in any::<u64>(), n in 1usize..=12, k in 1usize..=4) {
        let h = random_chordal_trigraph(n, k, 0.4, seed);
        let rep = tree_representation(&h).unwrap();
        prop_assert!(validate_representation(&rep).holds());
        for a in 0..h.n() {
            for b in a + 1..h.n() {
                if h.adjacency_type(a, b) != AdjacencyType::NonEdge {
                    prop_assert!(rep.tree.related(a, b), "edge {a}-{b} is not ancestor-descendant");
                }
            }
        }
    }

    #[test]
    fn twin_width_below_any_sequence(g in graph_strategy(6), choices in proptest::collection::vec(any::<prop::sample::Index>(), 10)) {
        let n = g.n();
        let mut part: Vec<usize> = (0..n).collect();
        let mut merges = Vec::new();
        for i in 0..n.saturating_sub(1) {
            let reps: Vec<usize> = (0..n).filter(|&v| part[v] == v).collect();
            let a = reps[choices[i].index(reps.len())];
            let rest: Vec<usize> = reps.into_iter().filter(|&r| r != a).collect();
            let b = rest[choices[i + 1].index(rest.len())];
            for p in part.iter_mut() {
                if *p == b {
                    *p = a;
                }
            }
            merges.push((a as Label, b as Label));
        }
        let s = PartitionSequence { vertices: g.labels().to_vec(), merges };
        let (red, out) = sequence_width(&g, &s).unwrap();
        prop_assert!(out <= red);
        prop_assert!(exact_twin_width(&g).unwrap() <= red);
    }

    #[test]
    fn twin_width_is_hereditary(g in graph_strategy(7), drop in any::<prop::sample::Index>()) {
        let v = g.label(drop.index(g.n()));
        let keep: Vec<Label> = g.labels().iter().copied().filter(|&l| l != v).collect();
        let sub = g.induced_subgraph(&keep).unwrap();
        prop_assert!(exact_twin_width(&sub).unwrap() <= exact_twin_width(&g).unwrap());
    }

    #[test]
    fn min_branch_hits_matches_enumeration(mask in proptest::collection::vec(any::<bool>(), 76), v in 0usize..17) {
        let w = build_wheel(1, 3).unwrap();
        let x: Vec<Label> = (0..w.n()).filter(|&i| mask[i]).map(|i| i as Label).collect();
        let (hits, path) = min_branch_hits(&w, &x, v as Label).unwrap();
        let tree = w.tree();
        let mut best = usize::MAX;
        let mut stack = vec![(v, mask[v] as usize)];
        while let Some((u, c)) = stack.pop() {
            if tree.children(u).is_empty() {
                best = best.min(c);
            }
            for &ch in tree.children(u) {
                stack.push((ch, c + mask[ch] as usize));
            }
        }
        prop_assert_eq!(hits, best);
        prop_assert_eq!(path.iter().filter(|&&l| mask[l as usize]).count(), hits);
        prop_assert_eq!(path[0], v as Label);
        prop_assert!(w.in_last_layer(*path.last().unwrap() as usize));
    }

    #[test]
    fn decompose_certificates_check_out(seed in any::<u64>(), which in 0usize..3) {
        let w = build_wheel(1, 3).unwrap();
        let real = w.real_graph();
        let h = [named::path(4), named::path(5), Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()][which].clone();
        let x = greedy_hfree_subset(&real, &h, None, seed).unwrap();
        let tr = decompose(&w, &x, &h, 1, &DecomposeOptions::default()).unwrap();
        let host = real.induced_subgraph(&x).unwrap();
        prop_assert!(verify_tree_decomposition(&host, &tr.decomposition).is_valid());
        prop_assert!(tr.width <= tr.constructive_bound);
        for (part, cert) in tr.root.certificates() {
            prop_assert!(cert.separator.len() <= tr.separator_bound);
            prop_assert!(check_separator(&real, part, cert).is_ok());
        }
    }

    #[test]
    fn small_hosts_decompose_above_exact_width(seed in any::<u64>(), size in 8usize..=18) {
        let w = build_wheel(1, 3).unwrap();
        let real = w.real_graph();
        let h = named::path(4);
        let x = greedy_hfree_subset(&real, &h, Some(size), seed).unwrap();
        let tr = decompose(&w, &x, &h, 1, &DecomposeOptions::default()).unwrap();
        let exact = exact_treewidth(&real.induced_subgraph(&x).unwrap()).unwrap().width;
        prop_assert!(tr.width >= exact);
    }
}

#[test]
fn closed_form_treewidths() {
    for n in 2..=8 {
        assert_eq!(exact_treewidth(&named::path(n)).unwrap().width, 1);
        assert_eq!(exact_treewidth(&named::complete(n)).unwrap().width, n - 1);
    }
    for n in 3..=9 {
        assert_eq!(exact_treewidth(&named::cycle(n)).unwrap().width, 2);
    }
    for n in 2..=4 {
        assert_eq!(exact_treewidth(&named::grid(n, n)).unwrap().width, n);
    }
}

#[test]
fn siblings_see_ancestors_differently() {
    for w in prefixes() {
        let tree = w.tree();
        for p in 0..w.n() {
            let kids = tree.children(p);
            let anc: Vec<usize> = std::iter::once(p).chain(tree.ancestors(p)).collect();
            let mut seen = HashSet::new();
            for &c in kids {
                let types: Vec<AdjacencyType> = anc.iter().map(|&a| w.adjacency(c, a)).collect();
                assert!(seen.insert(types), "t={} vertex {p}: two children with equal types", w.t());
            }
        }
    }
}

#[test]
fn layer_sizes_follow_child_counts() {
    for variant in [Variant::Standard, Variant::TriangleFree] {
        for t in 1..=2 {
            let w = WheelPrefix::build(t, 3, variant, 1_000_000).unwrap();
            for i in 0..w.depth() {
                let expected: usize = w.layers()[i]
                    .iter()
                    .map(|&u| {
                        let up = w.upward_neighborhood(u as Label).unwrap();
                        let red: Vec<(Label, Label)> = w
                            .trigraph()
                            .red_edges()
                            .into_iter()
                            .filter(|(a, b)| up.contains(a) && up.contains(b))
                            .collect();
                        enumerate_children(u as Label, &up, t, variant, Some(&red)).unwrap().len()
                    })
                    .sum();
                assert_eq!(w.layers()[i + 1].len(), expected, "{variant:?} t={t} layer {i}");
            }
        }
    }
}

#[test]
fn upward_restriction_lands_in_upward_neighbourhood() {
    for w in prefixes() {
        let xs = compute_upward_restriction(&LayeredWheel::from_prefix(&w, View::Total)).unwrap();
        for (&v, xv) in &xs {
            let up: BTreeSet<Label> = w.upward_neighborhood(v).unwrap().into_iter().collect();
            assert!(xv.iter().all(|a| up.contains(a)), "t={} X_{v} = {xv:?}", w.t());
        }
        assert!(xs[&0].is_empty());
    }
}

#[test]
fn trianglefree_black_ancestors_form_red_cliques() {
    for t in 1..=2 {
        let w = build_trianglefree_wheel(t, 3).unwrap();
        assert_eq!(w.real_graph().triangle_count(), 0);
        for v in 0..w.n() {
            let black: Vec<usize> =
                w.tree().ancestors(v).filter(|&a| w.adjacency(v, a) == AdjacencyType::Black).collect();
            for (i, &a) in black.iter().enumerate() {
                for &b in &black[i + 1..] {
                    assert_eq!(w.adjacency(a, b), AdjacencyType::Red, "t={t}: {v} sees {a}, {b}");
                }
            }
        }
    }
}

#[test]
fn zero_stroll_is_ancestry() {
    for w in [build_wheel(1, 2).unwrap(), build_wheel(2, 2).unwrap()] {
        let lw = LayeredWheel::from_prefix(&w, View::Total);
        for u in 0..w.n() {
            for v in 0..w.n() {
                let q = StrollQuery { u: u as Label, v: v as Label, t: 0 };
                assert_eq!(t_stroll_exists(&lw, q).unwrap(), w.tree().related(u, v), "{u} {v}");
            }
        }
    }
}
