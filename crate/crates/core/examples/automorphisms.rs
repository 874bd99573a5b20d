//! Automorphism group of the Petersen graph and of a rook's graph.
//!
//! cargo run --example automorphisms

use irsearch::generators::lattice;
use irsearch::{automorphism_group, ColoredGraph};

fn main() -> irsearch::Result<()> {
    let outer = (1..=5).map(|v| (v, v % 5 + 1));
    let spokes = (1..=5).map(|v| (v, v + 5));
    let inner = (1..=5).map(|v| (v + 5, (v + 1) % 5 + 6));
    let edges: Vec<(u32, u32)> = outer.chain(spokes).chain(inner).collect();
    let petersen = ColoredGraph::uncolored(10, &edges)?;

    let a = automorphism_group(&petersen);
    println!("Petersen graph");
    for g in a.group.generators() {
        println!("  generator {g}");
    }
    println!("  order {} with base {:?}", a.group.order(), a.group.base());
    println!("  orbits {:?}", a.group.orbits(&(1..=10).collect::<Vec<_>>()));

    let rook = lattice(8)?;
    let a = automorphism_group(&rook);
    println!("rook's graph on an 8x8 board");
    println!("  order {} from {} generators", a.group.order(), a.group.generators().len());
    println!("  {} multi-refinements, {:.3}s in group code", a.stats.multirefine_calls, a.stats.group_time);
    Ok(())
}
