//! Benchmark graph families. All results have the unit coloring.

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, OrderedPartition};

/// Largest vertex count any generator produces.
pub const MAX_VERTICES: usize = 1 << 24;

fn build(n: usize, edges: &[(u32, u32)]) -> Result<ColoredGraph> {
    ColoredGraph::new(n, edges, OrderedPartition::unit(n))
}

fn check_size(n: Option<usize>) -> Result<usize> {
    match n {
        Some(n) if n <= MAX_VERTICES => Ok(n),
        _ => Err(Error::Capacity(format!("more than {MAX_VERTICES} vertices"))),
    }
}

/// The complete graph on `n` vertices.
pub fn complete(n: usize) -> Result<ColoredGraph> {
    check_size(Some(n))?;
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 1..=n as u32 {
        for v in u + 1..=n as u32 {
            edges.push((u, v));
        }
    }
    build(n, &edges)
}

/// The cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Result<ColoredGraph> {
    if n < 3 {
        return Err(Error::Domain(format!("cycle needs at least 3 vertices, got {n}")));
    }
    check_size(Some(n))?;
    let edges: Vec<(u32, u32)> = (1..=n as u32).map(|v| (v, v % n as u32 + 1)).collect();
    build(n, &edges)
}

fn lattice_edges(d: usize, n: usize, wrap: bool) -> Result<ColoredGraph> {
    if d == 0 || n == 0 {
        return Err(Error::Domain("dimension and side must be positive".into()));
    }
    let total = check_size(u32::try_from(d).ok().and_then(|d| n.checked_pow(d)))?;
    let mut edges = Vec::new();
    let mut stride = 1usize;
    for _ in 0..d {
        for v in 0..total {
            let x = (v / stride) % n;
            if x + 1 < n {
                edges.push((v as u32 + 1, (v + stride) as u32 + 1));
            } else if wrap && n > 2 {
                edges.push((v as u32 + 1, (v - (n - 1) * stride) as u32 + 1));
            }
        }
        stride *= n;
    }
    build(total, &edges)
}

/// The `d`-dimensional grid with `n` vertices per side, without wrap-around.
pub fn grid(d: usize, n: usize) -> Result<ColoredGraph> {
    lattice_edges(d, n, false)
}

/// The `d`-dimensional torus with `n >= 3` vertices per side.
pub fn torus(d: usize, n: usize) -> Result<ColoredGraph> {
    if n < 3 {
        return Err(Error::Domain(format!("torus side must be at least 3, got {n}")));
    }
    lattice_edges(d, n, true)
}

/// The rook's graph on an `n` by `n` board: two squares are adjacent when
/// they share a row or a column.
pub fn lattice(n: usize) -> Result<ColoredGraph> {
    let total = check_size(n.checked_mul(n))?;
    let id = |r: usize, c: usize| (r * n + c + 1) as u32;
    let mut edges = Vec::new();
    for r in 0..n {
        for c in 0..n {
            for c2 in c + 1..n {
                edges.push((id(r, c), id(r, c2)));
            }
            for r2 in r + 1..n {
                edges.push((id(r, c), id(r2, c)));
            }
        }
    }
    build(total, &edges)
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// The Paley graph on the integers mod a prime `q` with `q % 4 == 1`:
/// `x` and `y` are adjacent when `x - y` is a nonzero square.
pub fn paley(q: usize) -> Result<ColoredGraph> {
    if !is_prime(q) || q % 4 != 1 {
        return Err(Error::Domain(format!("paley needs a prime congruent to 1 mod 4, got {q}")));
    }
    check_size(Some(q))?;
    let mut square = vec![false; q];
    for x in 1..q {
        square[x * x % q] = true;
    }
    let mut edges = Vec::new();
    for x in 0..q {
        for y in x + 1..q {
            if square[y - x] {
                edges.push((x as u32 + 1, y as u32 + 1));
            }
        }
    }
    build(q, &edges)
}

fn is_connected(g: &ColoredGraph) -> bool {
    let n = g.n();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![1u32];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v) {
            if !seen[w as usize - 1] {
                seen[w as usize - 1] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// The Cai-Fürer-Immerman graph over a connected 3-regular base graph.
///
/// Every base vertex becomes 4 inner vertices, one per even subset of its
/// three edges, and a pair of connectors per edge. Inner vertex `S` is
/// adjacent to connector 1 of the edges in `S` and to connector 0 of the
/// others. The two ends of a base edge join their connectors 0-0 and 1-1;
/// with `twisted`, the first edge joins them 0-1 and 1-0 instead.
///
/// Vertex layout per base vertex, in base order: the 4 inner vertices, then
/// the connector pairs in ascending neighbor order.
pub fn cfi(base: &ColoredGraph, twisted: bool) -> Result<ColoredGraph> {
    let nb = base.n();
    if nb == 0 || (1..=nb as u32).any(|v| base.degree(v) != 3) {
        return Err(Error::Domain("cfi base must be 3-regular".into()));
    }
    if !is_connected(base) {
        return Err(Error::Domain("cfi base must be connected".into()));
    }
    const GADGET: u32 = 10;
    let n = nb * GADGET as usize;
    check_size(Some(n))?;
    let first = |v: u32| (v - 1) * GADGET + 1;
    // Connector `bit` of the edge from `v` to its `slot`-th neighbor.
    let connector = |v: u32, slot: u32, bit: u32| first(v) + 4 + 2 * slot + bit;
    let mut edges = Vec::new();
    for v in 1..=nb as u32 {
        let mut inner = 0;
        for subset in 0u32..8 {
            if subset.count_ones() % 2 != 0 {
                continue;
            }
            for slot in 0..3 {
                edges.push((first(v) + inner, connector(v, slot, (subset >> slot) & 1)));
            }
            inner += 1;
        }
    }
    let slot_of = |v: u32, w: u32| base.neighbors(v).iter().position(|&x| x == w).unwrap() as u32;
    let mut first_edge = true;
    for (u, v) in base.edges() {
        let (su, sv) = (slot_of(u, v), slot_of(v, u));
        let twist = twisted && first_edge;
        first_edge = false;
        for bit in 0..2 {
            let other = if twist { 1 - bit } else { bit };
            edges.push((connector(u, su, bit), connector(v, sv, other)));
        }
    }
    build(n, &edges)
}
