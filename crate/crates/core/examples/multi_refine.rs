//! Multi-refinement splits cells that plain refinement leaves alone.
//!
//! cargo run --example multi_refine

use irsearch::refine::{is_equitable, refine};
use irsearch::{multi_refine, respects_individualizations, select_target_cell, ColoredGraph, PermutationGroup};

fn main() -> irsearch::Result<()> {
    // A triangle beside a 4-cycle: 2-regular, so the unit coloring is
    // already equitable.
    let g = ColoredGraph::uncolored(7, &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (6, 7), (4, 7)])?;
    let (refined, _) = refine(&g);
    println!("after refinement:       {}", refined.coloring());
    println!("equitable: {}, respects individualizations: {}", is_equitable(&refined), respects_individualizations(&refined));

    let r = multi_refine(&g, &PermutationGroup::new(7))?;
    println!("after multi-refinement: {}", r.graph.coloring());
    println!("respects individualizations: {}", respects_individualizations(&r.graph));
    println!("trace {:?}", r.trace.elements());
    println!("child cell counts by position {:?}", r.child_stats);
    println!("target cell at position {:?}", select_target_cell(&r));

    // A path on 5 vertices: individualizing an end vertex is discrete, so
    // the discrete child with the smallest quotient is taken directly.
    let path = ColoredGraph::uncolored(5, &[(1, 2), (2, 3), (3, 4), (4, 5)])?;
    let r = multi_refine(&path, &PermutationGroup::new(5))?;
    println!("path: {} (shortcut: {})", r.graph.coloring(), r.discrete_shortcut.is_some());
    for a in &r.new_automorphisms {
        println!("  automorphism found between discrete children: {a}");
    }
    Ok(())
}
