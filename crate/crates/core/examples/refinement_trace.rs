//! Equitable refinement, its trace, and early stops against a reference.
//!
//! cargo run --example refinement_trace

use irsearch::refine::{compare_traces, encode_quotient, quotient, refine, refine_with_budget, BudgetOutcome};
use irsearch::{ColoredGraph, OrderedPartition};

fn main() -> irsearch::Result<()> {
    // A triangle with a pendant vertex at every corner.
    let edges = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 5), (3, 6)];
    let g = ColoredGraph::uncolored(6, &edges)?;
    let (r, trace) = refine(&g);
    println!("degree split: {} with trace {:?}", r.coloring(), trace.elements());

    let child = r.with_coloring(r.coloring().individualize(4)?)?;
    let (c, t) = refine(&child);
    println!("individualize 4: {} with trace {:?}", c.coloring(), t.elements());
    let q = quotient(&c)?;
    println!("quotient edges (positions, multiplicity): {:?}", q.edges);
    println!("quotient encoding: {} bytes", encode_quotient(&q).len());

    // Individualizing a corner instead gives a different trace; refining
    // against the first trace stops as soon as the difference shows.
    let other = r.with_coloring(r.coloring().individualize(1)?)?;
    let (_, t2) = refine(&other);
    println!("individualize 1: trace {:?}, {:?} against the first", t2.elements(), compare_traces(&t2, &t));
    match refine_with_budget(&other, &t) {
        BudgetOutcome::AbortedWorse(i) => println!("budgeted run aborted at index {i}"),
        BudgetOutcome::CompletedBetter(_, t) => println!("budgeted run finished with smaller trace {:?}", t.elements()),
        BudgetOutcome::Completed(..) => println!("budgeted run matched the reference"),
    }

    let unit = g.with_coloring(OrderedPartition::unit(6))?;
    println!("unit coloring refines to {}", refine(&unit).0.coloring());
    Ok(())
}
