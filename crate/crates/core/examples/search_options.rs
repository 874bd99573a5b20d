//! Pruning switches change the work done, never the canonical form.
//!
//! cargo run --release --example search_options

use irsearch::generators::{lattice, torus};
use irsearch::{canonical_form_with, ColoredGraph, SearchOptions};

fn compare(name: &str, g: &ColoredGraph) {
    for (label, opts) in [
        ("default", SearchOptions::default()),
        ("no prune", SearchOptions { prune: false, trace_shortcut: true }),
        ("no trace shortcut", SearchOptions { prune: true, trace_shortcut: false }),
        ("neither", SearchOptions { prune: false, trace_shortcut: false }),
    ] {
        let c = canonical_form_with(g, opts);
        println!(
            "{name:<10} {label:<18} hash {}..  mref calls {:>6}  |Aut| {}",
            &c.hash()[..16],
            c.stats.multirefine_calls,
            c.group.order()
        );
    }
}

fn main() -> irsearch::Result<()> {
    compare("lattice 5", &lattice(5)?);
    compare("torus 2 6", &torus(2, 6)?);
    Ok(())
}
