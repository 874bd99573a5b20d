//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use irsearch::{ColoredGraph, OrderedPartition, Permutation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn perm(n: usize, cycles: &[&[u32]]) -> Permutation {
    Permutation::from_cycles(n, cycles).unwrap()
}

pub fn random_perm(n: usize, rng: &mut impl Rng) -> Permutation {
    let mut imgs: Vec<u32> = (1..=n as u32).collect();
    imgs.shuffle(rng);
    Permutation::from_images(&imgs).unwrap()
}

/// Every element of the group generated by `gens`, by breadth-first closure.
pub fn closure(n: usize, gens: &[Permutation]) -> HashSet<Vec<u32>> {
    let id = Permutation::identity(n);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(id.images());
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = p.then(g);
            if seen.insert(q.images()) {
                queue.push_back(q);
            }
        }
    }
    seen
}

/// Orbits of `gens` on `1..=n` by breadth-first search.
pub fn bfs_orbits(n: usize, gens: &[Permutation]) -> BTreeSet<Vec<u32>> {
    let mut seen = vec![false; n + 1];
    let mut out = BTreeSet::new();
    for s in 1..=n as u32 {
        if seen[s as usize] {
            continue;
        }
        let mut orbit = vec![s];
        seen[s as usize] = true;
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            for g in gens {
                let y = g.image(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit.push(y);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        out.insert(orbit);
    }
    out
}

pub fn graph(n: usize, edges: &[(u32, u32)]) -> ColoredGraph {
    ColoredGraph::uncolored(n, edges).unwrap()
}

pub fn colored(n: usize, edges: &[(u32, u32)], cells: &[Vec<u32>]) -> ColoredGraph {
    ColoredGraph::new(n, edges, OrderedPartition::new(n, cells).unwrap()).unwrap()
}

/// The graph of the worked search-tree example: edges 12,13,14,23,25,36 and
/// coloring ({4,5,6},{1,2,3}).
pub fn example_tree_graph() -> ColoredGraph {
    colored(6, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 5), (3, 6)], &[vec![4, 5, 6], vec![1, 2, 3]])
}

/// The 10-vertex equitable example: a 10-cycle with five chords.
pub fn example_equitable_graph() -> ColoredGraph {
    let mut edges: Vec<(u32, u32)> = (1..=10).map(|i| (i, i % 10 + 1)).collect();
    edges.extend([(2, 6), (1, 8), (3, 10), (7, 10), (5, 8)]);
    graph(10, &edges)
}

pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Vec<(u32, u32)> {
    let mut edges = Vec::new();
    for u in 1..=n as u32 {
        for v in u + 1..=n as u32 {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// A random ordered partition of `1..=n` into at most `max_cells` cells.
pub fn random_coloring(n: usize, max_cells: usize, rng: &mut impl Rng) -> Vec<Vec<u32>> {
    let k = rng.gen_range(1..=max_cells.max(1));
    let mut cells: Vec<Vec<u32>> = vec![Vec::new(); k];
    for v in 1..=n as u32 {
        cells[rng.gen_range(0..k)].push(v);
    }
    cells.retain(|c| !c.is_empty());
    cells
}

pub fn random_colored_graph(n: usize, rng: &mut impl Rng) -> ColoredGraph {
    let p = rng.gen_range(0.1..0.9);
    let edges = random_graph(n, p, rng);
    let cells = random_coloring(n, 3, rng);
    colored(n, &edges, &cells)
}

/// Canonical adjacency bits of a colored graph on at most 9 vertices and
/// the number of color-preserving permutations reaching them, by
/// branch-and-bound over all relabelings.
///
/// A relabeling sends each cell onto its own block of consecutive labels.
/// Bits are ordered column by column (pair (i, j), i < j, by j then i), so
/// that the labels assigned so far fix a prefix of the bit string; branches
/// whose prefix is already larger than the best one are cut. Every
/// relabeling reaching the minimum is counted, which is the automorphism
/// group order.
pub fn brute_canonical(g: &ColoredGraph) -> (Vec<usize>, u64, u64) {
    let n = g.n();
    assert!(n <= 9);
    let mut adj = vec![0u16; n];
    for (u, v) in g.edges() {
        adj[u as usize - 1] |= 1 << (v - 1);
        adj[v as usize - 1] |= 1 << (u - 1);
    }
    let sizes = g.coloring().cell_sizes();
    let cells: Vec<Vec<u32>> = g.coloring().cells();
    // Allowed original vertices for each label.
    let mut allowed: Vec<Vec<usize>> = Vec::new();
    for cell in &cells {
        for _ in 0..cell.len() {
            allowed.push(cell.iter().map(|&v| v as usize - 1).collect());
        }
    }
    struct St {
        n: usize,
        adj: Vec<u16>,
        allowed: Vec<Vec<usize>>,
        assigned: Vec<usize>,
        used: u16,
        best: Option<u64>,
        count: u64,
    }
    fn col_bits(st: &St, j: usize) -> u64 {
        // Bits of column j: adjacency of label j to labels 0..j-1.
        let vj = st.assigned[j];
        let mut bits = 0u64;
        for i in 0..j {
            bits = (bits << 1) | ((st.adj[vj] >> st.assigned[i]) & 1) as u64;
        }
        bits
    }
    fn rec(st: &mut St, j: usize, prefix: u64, bits_so_far: u32) {
        if let Some(best) = st.best {
            let shift = total_bits(st.n) - bits_so_far;
            let best_prefix = if shift >= 64 { 0 } else { best >> shift };
            if prefix > best_prefix {
                return;
            }
        }
        if j == st.n {
            match st.best {
                Some(b) if b == prefix => st.count += 1,
                Some(b) if b < prefix => {}
                _ => {
                    st.best = Some(prefix);
                    st.count = 1;
                }
            }
            return;
        }
        let options = st.allowed[j].clone();
        for v in options {
            if st.used >> v & 1 == 1 {
                continue;
            }
            st.used |= 1 << v;
            st.assigned.push(v);
            let c = col_bits(st, j);
            rec(st, j + 1, (prefix << j) | c, bits_so_far + j as u32);
            st.assigned.pop();
            st.used &= !(1 << v);
        }
    }
    fn total_bits(n: usize) -> u32 {
        (n * n.saturating_sub(1) / 2) as u32
    }
    let mut st = St { n, adj, allowed, assigned: Vec::new(), used: 0, best: None, count: 0 };
    rec(&mut st, 0, 0, 0);
    let _ = &cells;
    (sizes, st.best.unwrap_or(0), st.count)
}

/// Backtracking isomorphism search between connected-or-not graphs with the
/// same coloring shape; vertices are matched in breadth-first order so that
/// each new vertex is constrained by an already matched neighbor.
pub fn backtrack_isomorphic(g1: &ColoredGraph, g2: &ColoredGraph) -> Option<Permutation> {
    let n = g1.n();
    if n != g2.n() || g1.m() != g2.m() || g1.coloring().cell_sizes() != g2.coloring().cell_sizes() {
        return None;
    }
    let pos1: Vec<usize> = (1..=n as u32).map(|v| g1.coloring().position(v).unwrap()).collect();
    let pos2: Vec<usize> = (1..=n as u32).map(|v| g2.coloring().position(v).unwrap()).collect();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n + 1];
    for s in 1..=n as u32 {
        if seen[s as usize] {
            continue;
        }
        seen[s as usize] = true;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            order.push(x);
            for y in g1.neighbors(x) {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    q.push_back(y);
                }
            }
        }
    }
    let mut map = vec![0u32; n + 1];
    let mut used = vec![false; n + 1];
    fn rec(
        k: usize,
        order: &[u32],
        g1: &ColoredGraph,
        g2: &ColoredGraph,
        pos1: &[usize],
        pos2: &[usize],
        map: &mut [u32],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        let n1 = g1.neighbors(x);
        let mapped_nbr = n1.iter().find(|&&y| map[y as usize] != 0).copied();
        let candidates: Vec<u32> = match mapped_nbr {
            Some(y) => g2.neighbors(map[y as usize]),
            None => (1..=g2.n() as u32).collect(),
        };
        for c in candidates {
            if used[c as usize] || pos1[x as usize - 1] != pos2[c as usize - 1] || g1.degree(x) != g2.degree(c) {
                continue;
            }
            let consistent = order[..k].iter().all(|&z| g1.has_edge(x, z) == g2.has_edge(c, map[z as usize]));
            if !consistent {
                continue;
            }
            map[x as usize] = c;
            used[c as usize] = true;
            if rec(k + 1, order, g1, g2, pos1, pos2, map, used) {
                return true;
            }
            map[x as usize] = 0;
            used[c as usize] = false;
        }
        false
    }
    if rec(0, &order, g1, g2, &pos1, &pos2, &mut map, &mut used) {
        Some(Permutation::from_images(&map[1..]).unwrap())
    } else {
        None
    }
}

/// One representative of every unlabeled graph on `n` vertices, by adding a
/// vertex with every possible neighborhood to the graphs on `n - 1`
/// vertices and keeping one graph per brute-force canonical form.
pub fn all_graphs(n: usize) -> Vec<ColoredGraph> {
    if n == 0 {
        return vec![graph(0, &[])];
    }
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for smaller in all_graphs(n - 1) {
        let base = smaller.edges();
        for mask in 0u32..(1 << (n - 1)) {
            let mut edges = base.clone();
            for u in 0..n as u32 - 1 {
                if mask >> u & 1 == 1 {
                    edges.push((u + 1, n as u32));
                }
            }
            let g = graph(n, &edges);
            if seen.insert(brute_canonical(&g).1) {
                out.push(g);
            }
        }
    }
    out
}

pub fn is_connected(g: &ColoredGraph) -> bool {
    let n = g.n();
    let mut seen = vec![false; n + 1];
    let mut stack = vec![1u32];
    seen[1] = true;
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v) {
            if !seen[w as usize] {
                seen[w as usize] = true;
                stack.push(w);
            }
        }
    }
    seen[1..].iter().all(|&s| s)
}

/// Connected 3-regular graphs on `n` vertices, one per isomorphism class,
/// sampled by random pairings until `classes` distinct graphs are found.
/// Classes are told apart by the backtracking oracle.
pub fn cubic_graphs(n: usize, classes: usize, seed: u64) -> Vec<ColoredGraph> {
    let mut r = rng(seed);
    let mut found: Vec<ColoredGraph> = Vec::new();
    let mut attempts = 0;
    while found.len() < classes {
        attempts += 1;
        assert!(attempts < 1_000_000, "too few classes found");
        let mut stubs: Vec<u32> = (1..=n as u32).flat_map(|v| [v, v, v]).collect();
        stubs.shuffle(&mut r);
        let mut edges: Vec<(u32, u32)> =
            stubs.chunks(2).map(|c| (c[0].min(c[1]), c[0].max(c[1]))).collect();
        edges.sort();
        if edges.iter().any(|&(a, b)| a == b) || edges.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let g = graph(n, &edges);
        if !is_connected(&g) || found.iter().any(|h| backtrack_isomorphic(h, &g).is_some()) {
            continue;
        }
        found.push(g);
    }
    found
}
