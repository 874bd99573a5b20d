mod common;

use common::*;
use irsearch::{
    are_isomorphic, are_isomorphic_with, automorphism_group, brute_force_canonical, canonical_form,
    canonical_form_with, ColoredGraph, SearchOptions,
};
use num_bigint::BigUint;
use proptest::prelude::*;

fn relabel(g: &ColoredGraph, p: &irsearch::Permutation) -> ColoredGraph {
    g.apply_permutation(p).unwrap()
}

#[test]
fn random_small_graphs_match_brute_force() {
    let mut r = rng(11);
    let mut graphs = Vec::new();
    for _ in 0..300 {
        let n = 1 + (rand::Rng::gen_range(&mut r, 0..9usize));
        graphs.push(random_colored_graph(n, &mut r));
    }
    for (i, g1) in graphs.iter().enumerate() {
        let (_, _, count) = brute_canonical(g1);
        let c1 = canonical_form(g1);
        assert_eq!(c1.group.order(), BigUint::from(count), "graph {i}: {:?}", g1.edges());
        assert_eq!(automorphism_group(g1).group.order(), BigUint::from(count), "graph {i}");
        let g2 = relabel(g1, &random_perm(g1.n(), &mut r));
        assert_eq!(canonical_form(&g2).encoding(), c1.encoding(), "graph {i}");
        let w = are_isomorphic(g1, &g2).expect("relabeled copy is isomorphic");
        assert!(g1.is_isomorphism(&g2, &w));
    }
    for pair in graphs.windows(2) {
        let same = brute_canonical(&pair[0]).0 == brute_canonical(&pair[1]).0
            && brute_canonical(&pair[0]).1 == brute_canonical(&pair[1]).1;
        assert_eq!(canonical_form(&pair[0]).encoding() == canonical_form(&pair[1]).encoding(), same);
        assert_eq!(are_isomorphic(&pair[0], &pair[1]).is_some(), same);
    }
}

#[test]
fn options_do_not_change_canonical_form() {
    let mut r = rng(5);
    for _ in 0..200 {
        let n = 2 + rand::Rng::gen_range(&mut r, 0..8usize);
        let g = random_colored_graph(n, &mut r);
        let base = canonical_form(&g);
        for opts in [
            SearchOptions { prune: false, trace_shortcut: true },
            SearchOptions { prune: true, trace_shortcut: false },
            SearchOptions { prune: false, trace_shortcut: false },
        ] {
            let other = canonical_form_with(&g, opts);
            assert_eq!(other.encoding(), base.encoding());
            assert_eq!(other.group.order(), base.group.order());
            assert!(other.stats.multirefine_calls >= base.stats.multirefine_calls);
            assert_eq!(are_isomorphic_with(&g, &g, opts).is_some(), true);
        }
    }
}

#[test]
fn library_brute_force_agrees_with_independent_oracle() {
    let mut r = rng(9);
    for _ in 0..60 {
        let n = 1 + rand::Rng::gen_range(&mut r, 0..7usize);
        let g = random_colored_graph(n, &mut r);
        let (enc, order) = brute_force_canonical(&g).unwrap();
        assert_eq!(order, BigUint::from(brute_canonical(&g).2));
        let h = relabel(&g, &random_perm(n, &mut r));
        assert_eq!(brute_force_canonical(&h).unwrap().0, enc);
    }
    let big = graph(10, &[(1, 2)]);
    assert!(brute_force_canonical(&big).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn canonical_form_is_label_invariant(seed in any::<u64>(), n in 1usize..12) {
        let mut r = rng(seed);
        let g = random_colored_graph(n, &mut r);
        let h = relabel(&g, &random_perm(n, &mut r));
        let (cg, ch) = (canonical_form(&g), canonical_form(&h));
        prop_assert_eq!(cg.hash(), ch.hash());
        prop_assert_eq!(cg.group.order(), ch.group.order());
        for gen in cg.group.generators() {
            prop_assert!(g.is_automorphism(gen));
        }
        prop_assert_eq!(cg.canonical.clone(), relabel(&g, &cg.labeling));
    }
}

fn factorial(n: u32) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

#[test]
fn automorphism_group_examples() {
    let p4 = graph(4, &[(1, 2), (2, 3), (3, 4)]);
    let a = automorphism_group(&p4);
    assert_eq!(a.group.order(), BigUint::from(2u32));
    assert_eq!(a.group.generators().len(), 1);
    assert_eq!(a.group.generators()[0].images(), vec![4, 3, 2, 1]);
    let k4 = graph(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
    assert_eq!(automorphism_group(&k4).group.order(), BigUint::from(24u32));
    let c4 = graph(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
    assert_eq!(automorphism_group(&c4).group.order(), BigUint::from(8u32));
}

#[test]
fn example_tree_graph_search() {
    let g = example_tree_graph();
    let c = canonical_form(&g);
    assert_eq!(c.group.order(), BigUint::from(brute_canonical(&g).2));
    assert!(c.group.membership(&perm(6, &[&[2, 3], &[5, 6]])).unwrap());
    let a = automorphism_group(&g);
    assert_eq!(a.group.order(), c.group.order());
}

#[test]
fn complete_graph_order() {
    let n = 30u32;
    let edges: Vec<(u32, u32)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    let c = canonical_form(&graph(n as usize, &edges));
    assert_eq!(c.group.order(), factorial(n));
    assert!(c.stats.max_depth < n as usize);
}

#[test]
fn isomorphism_screens_and_brute_force_examples() {
    let k3 = graph(3, &[(1, 2), (1, 3), (2, 3)]);
    let p3 = graph(3, &[(1, 2), (2, 3)]);
    assert!(are_isomorphic(&k3, &p3).is_none());
    assert_eq!(brute_force_canonical(&k3).unwrap().1, BigUint::from(6u32));
    assert_eq!(brute_force_canonical(&p3).unwrap().1, BigUint::from(2u32));
    let g = example_tree_graph();
    let (_, order) = brute_force_canonical(&g).unwrap();
    assert_eq!(order, automorphism_group(&g).group.order());
    // Same shape, colors swapped between the cells.
    let h = colored(6, &g.edges(), &[vec![1, 2, 3], vec![4, 5, 6]]);
    assert!(are_isomorphic(&g, &h).is_none());
    assert_ne!(canonical_form(&g).hash(), canonical_form(&h).hash());
}

#[test]
fn residuals_are_leaf_labelings() {
    let mut r = rng(17);
    for _ in 0..100 {
        let g = random_colored_graph(10, &mut r);
        let a = automorphism_group(&g);
        assert_eq!(a.residuals.len(), a.stats.residual_count);
        for res in &a.residuals {
            assert_eq!(res.degree(), 10);
        }
    }
}
