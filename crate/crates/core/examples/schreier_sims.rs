//! Permutation groups: orders, membership, orbits and stabilizers.
//!
//! cargo run --example schreier_sims

use irsearch::{Permutation, PermutationGroup};

fn main() -> irsearch::Result<()> {
    let n = 100;
    let cycle: Vec<u32> = (1..=n as u32).collect();
    let sym = PermutationGroup::from_generators(
        n,
        &[Permutation::from_cycles(n, &[&[1, 2]])?, Permutation::from_cycles(n, &[&cycle])?],
    )?;
    println!("S_100 has order {}", sym.order());
    println!("base length {}", sym.base().len());

    let mut g = PermutationGroup::new(6);
    g.extend(&Permutation::parse_cycles(6, "(1 2)(3 4)")?)?;
    g.extend(&Permutation::parse_cycles(6, "(1 3)(2 4)")?)?;
    println!("Klein four-group: order {}", g.order());
    println!("orbits {:?}", g.orbits(&[1, 2, 3, 4, 5, 6]));
    println!("contains (1 4)(2 3): {}", g.membership(&Permutation::parse_cycles(6, "(1 4)(2 3)")?)?);
    println!("contains (1 2): {}", g.membership(&Permutation::parse_cycles(6, "(1 2)")?)?);

    let s4 = PermutationGroup::from_generators(
        4,
        &[Permutation::parse_cycles(4, "(1 2)")?, Permutation::parse_cycles(4, "(1 2 3 4)")?],
    )?;
    let st = s4.stabilizer(&[1])?;
    println!("S_4 fixing 1: order {}, transversal lengths {:?}", st.order(), st.transversal_lengths());
    Ok(())
}
