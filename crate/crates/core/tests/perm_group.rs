mod common;

use std::collections::BTreeSet;

use common::*;
use irsearch::{Permutation, PermutationGroup};
use num_bigint::BigUint;
use proptest::prelude::*;

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(k))
}

#[test]
fn trivial_group() {
    let g = PermutationGroup::new(5);
    assert_eq!(g.order(), BigUint::from(1u32));
    assert_eq!(g.orbits(&[1, 2, 3, 4, 5]), vec![vec![1], vec![2], vec![3], vec![4], vec![5]]);
    assert!(g.membership(&Permutation::identity(5)).unwrap());
}

#[test]
fn extend_examples() {
    let mut g = PermutationGroup::new(4);
    assert!(g.extend(&perm(4, &[&[1, 2]])).unwrap());
    assert_eq!(g.order(), BigUint::from(2u32));
    assert!(!g.extend(&perm(4, &[&[1, 2]])).unwrap());
    assert_eq!(g.order(), BigUint::from(2u32));
    assert!(g.extend(&perm(4, &[&[1, 2, 3, 4]])).unwrap());
    assert_eq!(g.order(), BigUint::from(24u32));
    let gens = vec![perm(4, &[&[1, 2]]), perm(4, &[&[1, 2, 3, 4]])];
    assert_eq!(closure(4, &gens).len(), 24);
}

#[test]
fn extend_rejects_wrong_degree() {
    let mut g = PermutationGroup::new(4);
    assert!(g.extend(&Permutation::identity(3)).is_err());
    assert!(g.membership(&Permutation::identity(5)).is_err());
}

#[test]
fn membership_examples() {
    let g = PermutationGroup::from_generators(3, &[perm(3, &[&[1, 2]])]).unwrap();
    assert!(!g.membership(&perm(3, &[&[1, 3]])).unwrap());
    let gens = [perm(3, &[&[1, 2]]), perm(3, &[&[1, 2, 3]])];
    let g = PermutationGroup::from_generators(3, &gens).unwrap();
    let target = perm(3, &[&[1, 3, 2]]);
    assert!(g.membership(&target).unwrap());
    assert!(closure(3, &gens).contains(&target.images()));
}

#[test]
fn orbit_examples() {
    let g = PermutationGroup::from_generators(4, &[perm(4, &[&[1, 2], &[3, 4]])]).unwrap();
    assert_eq!(g.orbits(&[1, 2, 3, 4]), vec![vec![1, 2], vec![3, 4]]);
    let gens = [perm(4, &[&[1, 2]]), perm(4, &[&[1, 2, 3, 4]])];
    let g = PermutationGroup::from_generators(4, &gens).unwrap();
    assert_eq!(g.orbits(&[1, 2, 3, 4]), vec![vec![1, 2, 3, 4]]);
    let expected: Vec<Vec<u32>> = bfs_orbits(4, &gens).into_iter().collect();
    assert_eq!(g.orbits(&[1, 2, 3, 4]), expected);
}

#[test]
fn stabilizer_examples() {
    let s4 = PermutationGroup::from_generators(4, &[perm(4, &[&[1, 2]]), perm(4, &[&[1, 2, 3, 4]])]).unwrap();
    let st = s4.stabilizer(&[1]).unwrap();
    assert_eq!(st.order(), BigUint::from(6u32));
    let brute = closure(4, &[perm(4, &[&[1, 2]]), perm(4, &[&[1, 2, 3, 4]])])
        .into_iter()
        .filter(|p| p[0] == 1)
        .count();
    assert_eq!(brute, 6);
    assert_eq!(s4.stabilizer(&[]).unwrap().order(), s4.order());
    let k = PermutationGroup::from_generators(4, &[perm(4, &[&[1, 2], &[3, 4]])]).unwrap();
    assert_eq!(k.stabilizer(&[1]).unwrap().order(), BigUint::from(1u32));
}

#[test]
fn symmetric_group_100_order() {
    let n = 100;
    let cycle: Vec<u32> = (1..=n).collect();
    let g = PermutationGroup::from_generators(n as usize, &[perm(n as usize, &[&[1, 2]]), perm(n as usize, &[&cycle])])
        .unwrap();
    assert_eq!(g.order(), factorial(100));
    assert_eq!(
        g.order().to_string(),
        "93326215443944152681699238856266700490715968264381621468592963895217599993229915608941463976156518286253697920827223758251185210916864000000000000000000000000"
    );
}

#[test]
fn klein_four_order() {
    let gens = [perm(4, &[&[1, 2], &[3, 4]]), perm(4, &[&[1, 3], &[2, 4]])];
    let g = PermutationGroup::from_generators(4, &gens).unwrap();
    assert_eq!(g.order(), BigUint::from(4u32));
    assert_eq!(closure(4, &gens).len(), 4);
}

#[test]
fn known_base_keeps_order() {
    let gens = [perm(6, &[&[1, 2, 3]]), perm(6, &[&[4, 5], &[1, 2]])];
    let mut g = PermutationGroup::new(6);
    g.set_known_base(&[1, 2, 4, 3, 5]).unwrap();
    for p in &gens {
        g.extend(p).unwrap();
    }
    assert_eq!(g.order(), BigUint::from(closure(6, &gens).len()));
    assert!(g.set_known_base(&[6]).is_err());
}

#[test]
fn random_groups_match_closure() {
    let mut r = rng(7);
    for case in 0..200 {
        let n = 2 + case % 7;
        let k = 1 + case % 3;
        let gens: Vec<Permutation> = (0..k).map(|_| random_perm(n, &mut r)).collect();
        let g = PermutationGroup::from_generators(n, &gens).unwrap();
        let all = closure(n, &gens);
        assert_eq!(g.order(), BigUint::from(all.len()), "case {case}");
        for _ in 0..100 {
            let p = random_perm(n, &mut r);
            assert_eq!(g.membership(&p).unwrap(), all.contains(&p.images()));
        }
        let got: BTreeSet<Vec<u32>> = g.orbits(&(1..=n as u32).collect::<Vec<_>>()).into_iter().collect();
        assert_eq!(got, bfs_orbits(n, &gens));
        for p in &g.strong_generators() {
            assert!(all.contains(&p.images()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orbit_stabilizer(seed in any::<u64>(), n in 2usize..9, k in 1usize..4) {
        let mut r = rng(seed);
        let gens: Vec<Permutation> = (0..k).map(|_| random_perm(n, &mut r)).collect();
        let g = PermutationGroup::from_generators(n, &gens).unwrap();
        let b = 1 + (seed % n as u64) as u32;
        let orbit = g.orbits(&(1..=n as u32).collect::<Vec<_>>()).into_iter().find(|o| o.contains(&b)).unwrap();
        let st = g.stabilizer(&[b]).unwrap();
        prop_assert_eq!(st.order() * BigUint::from(orbit.len()), g.order());
        for p in st.strong_generators() {
            prop_assert_eq!(p.image(b), b);
            prop_assert!(g.membership(&p).unwrap());
        }
    }

    #[test]
    fn extend_is_idempotent(seed in any::<u64>(), n in 2usize..9) {
        let mut r = rng(seed);
        let p = random_perm(n, &mut r);
        let mut g = PermutationGroup::from_generators(n, &[random_perm(n, &mut r)]).unwrap();
        g.extend(&p).unwrap();
        let before = g.order();
        prop_assert!(!g.extend(&p).unwrap());
        prop_assert_eq!(g.order(), before);
        prop_assert!(g.membership(&p).unwrap());
        prop_assert!(g.membership(&p.then(&p)).unwrap());
    }
}
