//! Canonical form of a graph and of a relabeled copy.
//!
//! cargo run --example canonical_form

use irsearch::generators::paley;
use irsearch::{canonical_form, Permutation};

fn main() -> irsearch::Result<()> {
    let g = paley(13)?;
    let shift: Vec<u32> = (1..=13).map(|v| v % 13 + 1).collect();
    let mut scramble: Vec<u32> = (1..=13).map(|v| (v * 5) % 13 + 1).collect();
    scramble.dedup();
    let h = g.apply_permutation(&Permutation::from_images(&shift)?)?;
    let k = h.apply_permutation(&Permutation::from_images(&scramble)?)?;

    let cg = canonical_form(&g);
    let ck = canonical_form(&k);
    println!("labeling of g: {}", cg.labeling);
    println!("labeling of k: {}", ck.labeling);
    println!("hash of g:     {}", cg.hash());
    println!("hash of k:     {}", ck.hash());
    assert_eq!(cg.canonical, ck.canonical);
    println!("canonical graphs agree; |Aut| = {}", cg.group.order());
    println!("depth {} with {} multi-refinements", cg.stats.max_depth, cg.stats.multirefine_calls);
    Ok(())
}
