mod common;

use common::*;
use irsearch::refine::{
    compare_traces, encode_quotient, is_equitable, quotient, refine, refine_with_budget, BudgetOutcome,
    QuotientGraph, RefinementTrace, TraceOrder, Which,
};
use irsearch::{ColoredGraph, Error, OrderedPartition};
use proptest::prelude::*;

/// Direct check: cellmates have equal neighbor counts in every cell.
fn equitable_oracle(g: &ColoredGraph) -> bool {
    let cells = g.coloring().cells();
    let mut cell_of = vec![0usize; g.n() + 1];
    for (k, c) in cells.iter().enumerate() {
        for &v in c {
            cell_of[v as usize] = k;
        }
    }
    let profile = |v: u32| {
        let mut counts = vec![0usize; cells.len()];
        for w in g.neighbors(v) {
            counts[cell_of[w as usize]] += 1;
        }
        counts
    };
    cells.iter().all(|c| c.iter().all(|&v| profile(v) == profile(c[0])))
}

fn with_cells(g: &ColoredGraph, cells: &[Vec<u32>]) -> ColoredGraph {
    g.with_coloring(OrderedPartition::new(g.n(), cells).unwrap()).unwrap()
}

#[test]
fn refine_examples() {
    let g = example_tree_graph();
    let left = with_cells(&g, &[vec![4], vec![5, 6], vec![1, 2, 3]]);
    assert_eq!(refine(&left).0.coloring().cells(), vec![vec![4], vec![5, 6], vec![2, 3], vec![1]]);
    let unit = with_cells(&g, &[vec![1, 2, 3, 4, 5, 6]]);
    assert_eq!(refine(&unit).0.coloring().cells(), vec![vec![4, 5, 6], vec![1, 2, 3]]);
    let k = ColoredGraph::uncolored(6, &(1..=6u32).flat_map(|u| (u + 1..=6).map(move |v| (u, v))).collect::<Vec<_>>()).unwrap();
    let (r, t) = refine(&k);
    assert_eq!(r.coloring().num_cells(), 1);
    assert!(t.is_empty());
}

#[test]
fn equitable_examples() {
    let fig = with_cells(
        &example_equitable_graph(),
        &[vec![9], vec![4], vec![1, 7], vec![2, 6], vec![3, 5], vec![8, 10]],
    );
    assert!(is_equitable(&fig));
    assert!(equitable_oracle(&fig));
    let discrete = with_cells(&example_tree_graph(), &(1..=6).map(|v| vec![v]).collect::<Vec<_>>());
    assert!(is_equitable(&discrete));
    let bad = with_cells(&example_tree_graph(), &[vec![4, 5, 6], vec![1, 2], vec![3]]);
    assert!(!is_equitable(&bad));
    assert!(matches!(quotient(&bad), Err(Error::NotEquitable)));
}

#[test]
fn quotient_examples() {
    let c4 = graph(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
    let q = quotient(&c4).unwrap();
    assert_eq!(q.num_vertices(), 1);
    assert_eq!(q.multiplicity(1, 1), 4);

    let g = with_cells(&example_tree_graph(), &[vec![4], vec![5, 6], vec![2, 3], vec![1]]);
    let q = quotient(&g).unwrap();
    assert_eq!(q.edges, vec![((1, 6), 1), ((2, 4), 2), ((4, 4), 1), ((4, 6), 2)]);

    // Discrete: the quotient is the graph itself on positions.
    let order = [3u32, 1, 6, 2, 5, 4];
    let d = example_tree_graph().with_coloring(OrderedPartition::discrete(&order).unwrap()).unwrap();
    let q = quotient(&d).unwrap();
    let pos = |v: u32| order.iter().position(|&x| x == v).unwrap() as u32 + 1;
    let mut expected: Vec<((u32, u32), u64)> = d
        .edges()
        .iter()
        .map(|&(u, v)| ((pos(u).min(pos(v)), pos(u).max(pos(v))), 1))
        .collect();
    expected.sort();
    assert_eq!(q.edges, expected);
}

#[test]
fn encoding_examples() {
    let g = example_tree_graph();
    let child = |v: u32| {
        let p = g.coloring().individualize(v).unwrap();
        encode_quotient(&quotient(&refine(&g.with_coloring(p).unwrap()).0).unwrap())
    };
    assert_eq!(child(5), child(6));
    assert_eq!(child(5), child(5));
    let loops = |m| QuotientGraph { cells: vec![(1, 4)], edges: vec![((1, 1), m)] };
    assert!(encode_quotient(&loops(3)) < encode_quotient(&loops(4)));
}

#[test]
fn trace_comparison_examples() {
    let t = |v: &[u32]| RefinementTrace(v.to_vec());
    assert_eq!(compare_traces(&t(&[3, 5]), &t(&[3, 5])), TraceOrder::Equal);
    assert_eq!(compare_traces(&t(&[3, 5]), &t(&[3, 4])), TraceOrder::SecondSmaller);
    assert_eq!(compare_traces(&t(&[3]), &t(&[3, 5])), TraceOrder::Prefix(Which::First));
}

#[test]
fn budget_examples() {
    let mut r = rng(4);
    for _ in 0..50 {
        let g = random_colored_graph(9, &mut r);
        let (refined, trace) = refine(&g);
        match refine_with_budget(&g, &trace) {
            BudgetOutcome::Completed(h, t) => {
                assert_eq!(t, trace);
                assert_eq!(h.coloring(), refined.coloring());
            }
            other => panic!("self comparison gave {other:?}"),
        }
        let h = g.apply_permutation(&random_perm(9, &mut r)).unwrap();
        assert!(matches!(refine_with_budget(&h, &trace), BudgetOutcome::Completed(_, t) if t == trace));
    }
}

#[test]
fn budget_stops_on_non_isomorphic_pairs() {
    let mut r = rng(21);
    let mut found = 0;
    for _ in 0..20000 {
        let g1 = graph(8, &random_graph(8, 0.4, &mut r));
        let g2 = graph(8, &random_graph(8, 0.4, &mut r));
        let degs = |g: &ColoredGraph| {
            let mut d: Vec<usize> = (1..=8).map(|v| g.degree(v)).collect();
            d.sort();
            d
        };
        if degs(&g1) != degs(&g2) || brute_canonical(&g1).1 == brute_canonical(&g2).1 {
            continue;
        }
        let (t1, t2) = (refine(&g1).1, refine(&g2).1);
        if t1 == t2 || t1.0.first() != t2.0.first() {
            continue;
        }
        match refine_with_budget(&g2, &t1) {
            BudgetOutcome::AbortedWorse(i) => assert!(i < t2.len()),
            BudgetOutcome::CompletedBetter(_, t) => assert_eq!(t, t2),
            BudgetOutcome::Completed(..) => panic!("differing traces reported as equal"),
        }
        found += 1;
        if found == 20 {
            break;
        }
    }
    assert!(found > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn refine_is_equitable_idempotent_and_invariant(seed in any::<u64>(), n in 1usize..20) {
        let mut r = rng(seed);
        let g = random_colored_graph(n, &mut r);
        let (refined, trace) = refine(&g);
        prop_assert!(equitable_oracle(&refined));
        prop_assert!(is_equitable(&refined));
        prop_assert!(refined.coloring().is_finer(g.coloring()).unwrap());
        let (again, t2) = refine(&refined);
        prop_assert_eq!(again.coloring(), refined.coloring());
        prop_assert!(t2.is_empty());
        let sigma = random_perm(n, &mut r);
        let (moved, t3) = refine(&g.apply_permutation(&sigma).unwrap());
        prop_assert_eq!(t3, trace);
        prop_assert_eq!(moved, refined.apply_permutation(&sigma).unwrap());
    }
}
