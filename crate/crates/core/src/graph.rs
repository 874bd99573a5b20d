//! Colored graphs, ordered partitions and permutations.
//!
//! Every public interface speaks 1-based vertex numbers. Internally vertices
//! are stored 0-based.

use std::fmt;

use crate::error::{Error, Result};

/// A sequence of disjoint non-empty cells covering `1..=n`.
///
/// Cells are stored contiguously in one flat array, so that splitting a cell
/// in place only touches the vertices of that cell. The position of a vertex
/// is one plus the number of vertices in earlier cells.
#[derive(Clone, Debug)]
pub struct OrderedPartition {
    pub(crate) elems: Vec<u32>,
    pub(crate) loc: Vec<u32>,
    pub(crate) start_of: Vec<u32>,
    pub(crate) len_at: Vec<u32>,
    pub(crate) cells: usize,
}

impl OrderedPartition {
    /// The partition with a single cell `[n]`.
    pub fn unit(n: usize) -> Self {
        let mut len_at = vec![0; n];
        if n > 0 {
            len_at[0] = n as u32;
        }
        OrderedPartition {
            elems: (0..n as u32).collect(),
            loc: (0..n as u32).collect(),
            start_of: vec![0; n],
            len_at,
            cells: usize::from(n > 0),
        }
    }

    /// Builds a partition from 1-based cells, in order.
    pub fn new(n: usize, cells: &[Vec<u32>]) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut elems = Vec::with_capacity(n);
        let mut start_of = vec![0u32; n];
        let mut len_at = vec![0u32; n];
        for cell in cells {
            if cell.is_empty() {
                return Err(Error::InvalidPartition("empty cell".into()));
            }
            let start = elems.len() as u32;
            len_at[start as usize] = cell.len() as u32;
            for &v in cell {
                if v == 0 || v as usize > n {
                    return Err(Error::VertexOutOfRange { vertex: v as usize, n });
                }
                let i = v as usize - 1;
                if seen[i] {
                    return Err(Error::InvalidPartition(format!("vertex {v} appears twice")));
                }
                seen[i] = true;
                start_of[i] = start;
                elems.push(i as u32);
            }
        }
        if elems.len() != n {
            return Err(Error::InvalidPartition(format!(
                "cells cover {} of {} vertices",
                elems.len(),
                n
            )));
        }
        let mut loc = vec![0u32; n];
        for (k, &v) in elems.iter().enumerate() {
            loc[v as usize] = k as u32;
        }
        Ok(OrderedPartition { elems, loc, start_of, len_at, cells: cells.len() })
    }

    /// The discrete partition listing 1-based vertices in the given order.
    pub fn discrete(order: &[u32]) -> Result<Self> {
        let cells: Vec<Vec<u32>> = order.iter().map(|&v| vec![v]).collect();
        Self::new(order.len(), &cells)
    }

    /// The discrete partition listing 0-based vertices in the given order.
    pub(crate) fn discrete_zero_based(order: &[u32]) -> Self {
        let n = order.len();
        let mut loc = vec![0u32; n];
        for (k, &v) in order.iter().enumerate() {
            loc[v as usize] = k as u32;
        }
        OrderedPartition {
            elems: order.to_vec(),
            start_of: loc.clone(),
            loc,
            len_at: vec![1; n],
            cells: n,
        }
    }

    pub fn n(&self) -> usize {
        self.elems.len()
    }

    pub fn num_cells(&self) -> usize {
        self.cells
    }

    pub fn is_discrete(&self) -> bool {
        self.cells == self.elems.len()
    }

    fn check(&self, v: u32) -> Result<usize> {
        if v == 0 || v as usize > self.n() {
            Err(Error::VertexOutOfRange { vertex: v as usize, n: self.n() })
        } else {
            Ok(v as usize - 1)
        }
    }

    /// Position of `v`: one plus the total size of the cells before its cell.
    pub fn position(&self, v: u32) -> Result<usize> {
        let i = self.check(v)?;
        Ok(self.start_of[i] as usize + 1)
    }

    /// 1-based index of the cell containing `v`.
    pub fn index(&self, v: u32) -> Result<usize> {
        let i = self.check(v)?;
        let target = self.start_of[i];
        Ok(self.starts().take_while(|&s| s <= target).count())
    }

    /// Cell start offsets (0-based positions) in order.
    pub(crate) fn starts(&self) -> impl Iterator<Item = u32> + '_ {
        let n = self.elems.len() as u32;
        let mut s = 0u32;
        std::iter::from_fn(move || {
            if s >= n {
                return None;
            }
            let cur = s;
            s += self.len_at[cur as usize];
            Some(cur)
        })
    }

    /// Internal 0-based view of the cell starting at flat offset `start`.
    pub(crate) fn cell_slice(&self, start: u32) -> &[u32] {
        let s = start as usize;
        &self.elems[s..s + self.len_at[s] as usize]
    }

    /// The cells in order, 1-based, each sorted ascending.
    pub fn cells(&self) -> Vec<Vec<u32>> {
        self.starts()
            .map(|s| {
                let mut c: Vec<u32> = self.cell_slice(s).iter().map(|&v| v + 1).collect();
                c.sort_unstable();
                c
            })
            .collect()
    }

    /// Sizes of the cells in order.
    pub fn cell_sizes(&self) -> Vec<usize> {
        self.starts().map(|s| self.len_at[s as usize] as usize).collect()
    }

    /// Members (1-based, sorted) of the cell at 1-based position `pos`, if a
    /// cell starts there.
    pub fn cell_at_position(&self, pos: usize) -> Option<Vec<u32>> {
        if pos == 0 || pos > self.n() || self.len_at[pos - 1] == 0 {
            return None;
        }
        let s = (pos - 1) as u32;
        if self.start_of[self.elems[s as usize] as usize] != s {
            return None;
        }
        let mut c: Vec<u32> = self.cell_slice(s).iter().map(|&v| v + 1).collect();
        c.sort_unstable();
        Some(c)
    }

    /// Splits `v` out of its cell into a new singleton placed right before
    /// the rest of that cell.
    pub fn individualize(&self, v: u32) -> Result<Self> {
        let i = self.check(v)?;
        if self.len_at[self.start_of[i] as usize] < 2 {
            return Err(Error::SingletonCell(v as usize));
        }
        let mut p = self.clone();
        p.individualize_in_place(i as u32);
        Ok(p)
    }

    /// 0-based in-place individualization; the cell must be non-trivial.
    pub(crate) fn individualize_in_place(&mut self, v: u32) {
        let s = self.start_of[v as usize] as usize;
        let len = self.len_at[s] as usize;
        debug_assert!(len > 1);
        let at = self.loc[v as usize] as usize;
        let other = self.elems[s];
        self.elems.swap(s, at);
        self.loc[other as usize] = at as u32;
        self.loc[v as usize] = s as u32;
        self.len_at[s] = 1;
        self.len_at[s + 1] = (len - 1) as u32;
        for k in s + 1..s + len {
            self.start_of[self.elems[k] as usize] = (s + 1) as u32;
        }
        self.cells += 1;
    }

    /// True when every vertex sits at a position at least as large as in
    /// `coarser`.
    pub fn is_finer(&self, coarser: &OrderedPartition) -> Result<bool> {
        if self.n() != coarser.n() {
            return Err(Error::SizeMismatch { left: self.n(), right: coarser.n() });
        }
        Ok((0..self.n()).all(|v| self.start_of[v] >= coarser.start_of[v]))
    }

    /// Vertices in flat order (1-based). For a discrete partition this is the
    /// vertex at each position.
    pub fn order(&self) -> Vec<u32> {
        self.elems.iter().map(|&v| v + 1).collect()
    }
}

impl PartialEq for OrderedPartition {
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n() && self.start_of == other.start_of && self.cells == other.cells
    }
}

impl Eq for OrderedPartition {}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, cell) in self.cells().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, v) in cell.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, ")")
    }
}

/// A bijection on `1..=n`, stored as the image of every vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    pub(crate) img: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { img: (0..n as u32).collect() }
    }

    /// From 1-based images: entry `k` is the image of vertex `k + 1`.
    pub fn from_images(images: &[u32]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut img = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x as usize > n || seen[x as usize - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[x as usize - 1] = true;
            img.push(x - 1);
        }
        Ok(Permutation { img })
    }

    pub(crate) fn from_zero_based(img: Vec<u32>) -> Self {
        debug_assert!({
            let mut s = img.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(k, &x)| k as u32 == x)
        });
        Permutation { img }
    }

    /// Builds a permutation of degree `n` from disjoint 1-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut img: Vec<u32> = (0..n as u32).collect();
        let mut moved = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a == 0 || a as usize > n || moved[a as usize - 1] {
                    return Err(Error::InvalidPermutation(format!("{cycles:?}")));
                }
                moved[a as usize - 1] = true;
                let b = cycle[(k + 1) % cycle.len()];
                if b == 0 || b as usize > n {
                    return Err(Error::InvalidPermutation(format!("{cycles:?}")));
                }
                img[a as usize - 1] = b - 1;
            }
        }
        Ok(Permutation { img })
    }

    /// Parses cycle notation such as `(1 2)(5 6)`; `()` is the identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let bad = || Error::InvalidPermutation(text.to_string());
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = inner.find(')').ok_or_else(bad)?;
            let body = &inner[..close];
            let cycle = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<u32>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = inner[close + 1..].trim_start();
        }
        let refs: Vec<&[u32]> = cycles.iter().map(|c| c.as_slice()).collect();
        Self::from_cycles(n, &refs)
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    /// Image of the 1-based vertex `v`.
    pub fn image(&self, v: u32) -> u32 {
        self.img[v as usize - 1] + 1
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<u32> {
        self.img.iter().map(|&x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(k, &x)| k as u32 == x)
    }

    /// The permutation that applies `self` first and then `then`.
    pub fn then(&self, then: &Permutation) -> Permutation {
        Permutation { img: self.img.iter().map(|&x| then.img[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.img.len()];
        for (k, &x) in self.img.iter().enumerate() {
            inv[x as usize] = k as u32;
        }
        Permutation { img: inv }
    }

    /// Disjoint cycles of length at least two, each starting at its smallest
    /// element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.img.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.img[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32 + 1);
                x = self.img[x] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, v) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// An undirected simple graph on `1..=n` whose ordered partition is its
/// coloring.
#[derive(Clone, Debug)]
pub struct ColoredGraph {
    offsets: Vec<usize>,
    nbrs: Vec<u32>,
    coloring: OrderedPartition,
}

impl PartialEq for ColoredGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n() && self.edges() == other.edges() && self.coloring == other.coloring
    }
}

impl Eq for ColoredGraph {}

impl ColoredGraph {
    /// Builds a graph from 1-based edges and a coloring of the same order.
    pub fn new(n: usize, edges: &[(u32, u32)], coloring: OrderedPartition) -> Result<Self> {
        if coloring.n() != n {
            return Err(Error::SizeMismatch { left: n, right: coloring.n() });
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for x in [u, v] {
                if x == 0 || x as usize > n {
                    return Err(Error::VertexOutOfRange { vertex: x as usize, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u as usize));
            }
            pairs.push((u.min(v) - 1, u.max(v) - 1));
        }
        pairs.sort_unstable();
        if let Some(w) = pairs.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0 as usize + 1, w[0].1 as usize + 1));
        }
        Ok(Self::from_sorted_pairs(n, &pairs, coloring))
    }

    /// A graph with the unit coloring.
    pub fn uncolored(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        Self::new(n, edges, OrderedPartition::unit(n))
    }

    /// 0-based, deduplicated, `u < v` pairs.
    pub(crate) fn from_sorted_pairs(n: usize, pairs: &[(u32, u32)], coloring: OrderedPartition) -> Self {
        let mut deg = vec![0usize; n];
        for &(u, v) in pairs {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + deg[v];
        }
        let mut fill = offsets.clone();
        let mut nbrs = vec![0u32; offsets[n]];
        for &(u, v) in pairs {
            nbrs[fill[u as usize]] = v;
            fill[u as usize] += 1;
            nbrs[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        for v in 0..n {
            nbrs[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        ColoredGraph { offsets, nbrs, coloring }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.nbrs.len() / 2
    }

    pub fn coloring(&self) -> &OrderedPartition {
        &self.coloring
    }

    /// Same edges, different coloring.
    pub fn with_coloring(&self, coloring: OrderedPartition) -> Result<Self> {
        if coloring.n() != self.n() {
            return Err(Error::SizeMismatch { left: self.n(), right: coloring.n() });
        }
        Ok(ColoredGraph { offsets: self.offsets.clone(), nbrs: self.nbrs.clone(), coloring })
    }

    pub(crate) fn replace_coloring(&mut self, coloring: OrderedPartition) {
        debug_assert_eq!(coloring.n(), self.n());
        self.coloring = coloring;
    }

    /// 0-based neighbors of a 0-based vertex, ascending.
    pub(crate) fn adj(&self, v: u32) -> &[u32] {
        &self.nbrs[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    /// Neighbors of a 1-based vertex, 1-based and ascending.
    pub fn neighbors(&self, v: u32) -> Vec<u32> {
        self.adj(v - 1).iter().map(|&x| x + 1).collect()
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj(v - 1).len()
    }

    pub(crate) fn adjacent0(&self, u: u32, v: u32) -> bool {
        self.adj(u).binary_search(&v).is_ok()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        u >= 1 && v >= 1 && (u as usize) <= self.n() && (v as usize) <= self.n() && self.adjacent0(u - 1, v - 1)
    }

    /// Edges as 1-based `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.m());
        for u in 0..self.n() as u32 {
            for &v in self.adj(u) {
                if u < v {
                    out.push((u + 1, v + 1));
                }
            }
        }
        out
    }

    /// Relabels every vertex `v` as `p(v)`. Cells are mapped setwise and keep
    /// their order.
    pub fn apply_permutation(&self, p: &Permutation) -> Result<ColoredGraph> {
        if p.degree() != self.n() {
            return Err(Error::SizeMismatch { left: self.n(), right: p.degree() });
        }
        let mut pairs = Vec::with_capacity(self.m());
        for u in 0..self.n() as u32 {
            for &v in self.adj(u) {
                if u < v {
                    let (a, b) = (p.img[u as usize], p.img[v as usize]);
                    pairs.push((a.min(b), a.max(b)));
                }
            }
        }
        pairs.sort_unstable();
        let cells: Vec<Vec<u32>> = self
            .coloring
            .starts()
            .map(|s| self.coloring.cell_slice(s).iter().map(|&v| p.img[v as usize] + 1).collect())
            .collect();
        let coloring = OrderedPartition::new(self.n(), &cells)?;
        Ok(Self::from_sorted_pairs(self.n(), &pairs, coloring))
    }

    /// True when `p` preserves adjacency and maps every cell onto itself.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        if p.degree() != self.n() {
            return false;
        }
        let c = &self.coloring;
        (0..self.n()).all(|v| c.start_of[v] == c.start_of[p.img[v] as usize])
            && self.is_isomorphism_to(self, p)
    }

    /// True when `p` maps this graph's edges exactly onto `other`'s edges and
    /// the cell at each position onto the cell at the same position.
    pub fn is_isomorphism(&self, other: &ColoredGraph, p: &Permutation) -> bool {
        if p.degree() != self.n() || other.n() != self.n() || other.m() != self.m() {
            return false;
        }
        let (a, b) = (&self.coloring, &other.coloring);
        if a.cells != b.cells {
            return false;
        }
        (0..self.n()).all(|v| {
            let s = a.start_of[v];
            let t = b.start_of[p.img[v] as usize];
            s == t && a.len_at[s as usize] == b.len_at[t as usize]
        }) && self.is_isomorphism_to(other, p)
    }

    fn is_isomorphism_to(&self, other: &ColoredGraph, p: &Permutation) -> bool {
        if other.m() != self.m() {
            return false;
        }
        (0..self.n() as u32).all(|u| {
            let pu = p.img[u as usize];
            self.adj(u).len() == other.adj(pu).len()
                && self.adj(u).iter().all(|&v| other.adjacent0(pu, p.img[v as usize]))
        })
    }
}
