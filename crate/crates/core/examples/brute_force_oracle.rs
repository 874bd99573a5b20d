//! Cross-check the search against exhaustive enumeration on small graphs.
//!
//! cargo run --release --example brute_force_oracle

use irsearch::{automorphism_group, brute_force_canonical, canonical_form, ColoredGraph, OrderedPartition};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> irsearch::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut agree = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=8);
        let edges: Vec<(u32, u32)> = (1..=n as u32)
            .flat_map(|u| (u + 1..=n as u32).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(0.4))
            .collect();
        let split = rng.gen_range(1..=n as u32);
        let cells: Vec<Vec<u32>> =
            [(1..split).collect::<Vec<_>>(), (split..=n as u32).collect()].into_iter().filter(|c| !c.is_empty()).collect();
        let g = ColoredGraph::new(n, &edges, OrderedPartition::new(n, &cells)?)?;
        let (_, order) = brute_force_canonical(&g)?;
        assert_eq!(order, automorphism_group(&g).group.order());
        assert_eq!(order, canonical_form(&g).group.order());
        agree += 1;
    }
    println!("{agree} random colored graphs: group orders agree with brute force");
    let big = ColoredGraph::uncolored(10, &[])?;
    println!("ten vertices: {}", brute_force_canonical(&big).unwrap_err());
    Ok(())
}
