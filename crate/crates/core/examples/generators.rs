//! The benchmark families and their automorphism group orders.
//!
//! cargo run --release --example generators

use std::time::Instant;

use irsearch::generators::{cfi, complete, cycle, grid, lattice, paley, torus};
use irsearch::{automorphism_group, write_graph, ColoredGraph};

fn report(name: &str, g: &ColoredGraph) {
    let t = Instant::now();
    let a = automorphism_group(g);
    println!(
        "{name:<14} V={:<6} E={:<7} |Aut|={} ({:.2}s)",
        g.n(),
        g.m(),
        a.group.order(),
        t.elapsed().as_secs_f64()
    );
}

fn main() -> irsearch::Result<()> {
    print!("{}", write_graph(&paley(5)?));
    report("complete 40", &complete(40)?);
    report("cycle 50", &cycle(50)?);
    report("grid 3 6", &grid(3, 6)?);
    report("torus 2 12", &torus(2, 12)?);
    report("lattice 12", &lattice(12)?);
    report("paley 101", &paley(101)?);
    let prism = ColoredGraph::uncolored(6, &[(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (1, 4), (2, 5), (3, 6)])?;
    report("cfi prism", &cfi(&prism, false)?);
    report("cfi prism tw", &cfi(&prism, true)?);
    Ok(())
}
