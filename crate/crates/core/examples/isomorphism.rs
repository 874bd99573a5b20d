//! Isomorphism tests on Cai-Fürer-Immerman graphs: a twisted copy is not
//! isomorphic, a relabeled copy is and comes with a witness.
//!
//! cargo run --example isomorphism

use irsearch::generators::{cfi, complete};
use irsearch::refine::refine;
use irsearch::{are_isomorphic, Permutation};

fn main() -> irsearch::Result<()> {
    let base = complete(4)?;
    let plain = cfi(&base, false)?;
    let twisted = cfi(&base, true)?;

    // Plain color refinement cannot tell them apart.
    let (rp, tp) = refine(&plain);
    let (rt, tt) = refine(&twisted);
    println!("refined cells: {} vs {}, equal traces: {}", rp.coloring().num_cells(), rt.coloring().num_cells(), tp == tt);

    match are_isomorphic(&plain, &twisted) {
        Some(w) => println!("twisted copy: isomorphic via {w}"),
        None => println!("twisted copy: non-isomorphic"),
    }

    let images: Vec<u32> = (1..=40).map(|v| (v * 7) % 41).collect();
    let shuffled = plain.apply_permutation(&Permutation::from_images(&images)?)?;
    let w = are_isomorphic(&plain, &shuffled).expect("a relabeled copy is isomorphic");
    println!("relabeled copy: isomorphic, witness verifies: {}", plain.is_isomorphism(&shuffled, &w));
    Ok(())
}
