//! Equitable refinement with traces, quotient graphs and their encoding.

use std::cmp::Ordering;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, OrderedPartition};

/// Positions of the cells created by splits, in creation order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RefinementTrace(pub Vec<u32>);

impl RefinementTrace {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }
}

/// Which trace of a pair a prefix relation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    First,
    Second,
}

/// Result of comparing two traces component-wise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceOrder {
    Equal,
    FirstSmaller,
    SecondSmaller,
    /// The named trace is a proper prefix of the other.
    Prefix(Which),
}

/// Compares at the first differing index; a proper prefix is reported as
/// such rather than ordered.
pub fn compare_traces(t1: &RefinementTrace, t2: &RefinementTrace) -> TraceOrder {
    for (a, b) in t1.0.iter().zip(&t2.0) {
        match a.cmp(b) {
            Ordering::Less => return TraceOrder::FirstSmaller,
            Ordering::Greater => return TraceOrder::SecondSmaller,
            Ordering::Equal => {}
        }
    }
    match t1.len().cmp(&t2.len()) {
        Ordering::Equal => TraceOrder::Equal,
        Ordering::Less => TraceOrder::Prefix(Which::First),
        Ordering::Greater => TraceOrder::Prefix(Which::Second),
    }
}

/// Incremental comparison of an emerging trace against a reference.
///
/// Traces are ordered lexicographically with a proper prefix being smaller.
/// Once an element exceeds the reference, or the emerging trace grows past
/// the end of an equal reference, the emerging trace is known to be larger.
#[derive(Clone, Copy, Debug)]
pub(crate) struct TraceCmp<'a> {
    reference: &'a [u32],
    smaller: bool,
}

impl<'a> TraceCmp<'a> {
    pub(crate) fn new(reference: &'a [u32]) -> Self {
        TraceCmp { reference, smaller: false }
    }

    /// Records `x` at `index`; returns false when the emerging trace became
    /// larger than the reference.
    fn accept(&mut self, index: usize, x: u32) -> bool {
        if self.smaller {
            return true;
        }
        match self.reference.get(index) {
            None => false,
            Some(&r) if x > r => false,
            Some(&r) if x < r => {
                self.smaller = true;
                true
            }
            Some(_) => true,
        }
    }

    pub(crate) fn is_smaller(&self) -> bool {
        self.smaller
    }
}

/// Outcome of a refinement run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Run {
    Done,
    /// The trace exceeded the reference at this index.
    Aborted(usize),
}

/// Reusable scratch space for refinement.
pub(crate) struct Refiner {
    count: Vec<u32>,
    touched: Vec<u32>,
    marked: Vec<u32>,
    in_queue: Vec<bool>,
    queue: VecDeque<u32>,
    hit_cells: Vec<u32>,
    splitter: Vec<u32>,
    fragments: Vec<(u32, u32)>,
}

impl Refiner {
    pub(crate) fn new(n: usize) -> Self {
        Refiner {
            count: vec![0; n],
            touched: Vec::new(),
            marked: vec![0; n],
            in_queue: vec![false; n],
            queue: VecDeque::new(),
            hit_cells: Vec::new(),
            splitter: Vec::new(),
            fragments: Vec::new(),
        }
    }

    /// Refines `p` to an equitable partition, using the cells starting at
    /// `seeds` as the initial splitters. Every new cell position (1-based) is
    /// appended to `trace`; with `cmp` set, refinement stops as soon as the
    /// trace is known to exceed the reference.
    pub(crate) fn run(
        &mut self,
        g: &ColoredGraph,
        p: &mut OrderedPartition,
        seeds: &[u32],
        trace: &mut Vec<u32>,
        mut cmp: Option<&mut TraceCmp<'_>>,
    ) -> Run {
        self.queue.clear();
        for &s in seeds {
            if !self.in_queue[s as usize] {
                self.in_queue[s as usize] = true;
                self.queue.push_back(s);
            }
        }
        let mut result = Run::Done;
        'outer: while let Some(s) = self.queue.pop_front() {
            self.in_queue[s as usize] = false;
            if p.cells == p.n() {
                break;
            }
            self.splitter.clear();
            self.splitter.extend_from_slice(p.cell_slice(s));
            self.touched.clear();
            for &u in &self.splitter {
                for &v in g.adj(u) {
                    if self.count[v as usize] == 0 {
                        self.touched.push(v);
                    }
                    self.count[v as usize] += 1;
                }
            }
            // Move touched vertices to the tail of their cells.
            self.hit_cells.clear();
            for &v in &self.touched {
                let c = p.start_of[v as usize] as usize;
                let len = p.len_at[c] as usize;
                if self.marked[c] == 0 {
                    self.hit_cells.push(c as u32);
                }
                let dst = c + len - 1 - self.marked[c] as usize;
                let src = p.loc[v as usize] as usize;
                let w = p.elems[dst];
                p.elems.swap(src, dst);
                p.loc[w as usize] = src as u32;
                p.loc[v as usize] = dst as u32;
                self.marked[c] += 1;
            }
            self.hit_cells.sort_unstable();
            for hi in 0..self.hit_cells.len() {
                let c = self.hit_cells[hi] as usize;
                let len = p.len_at[c] as usize;
                let hits = self.marked[c] as usize;
                self.marked[c] = 0;
                if len == 1 {
                    continue;
                }
                let tail = c + len - hits;
                {
                    let count = &self.count;
                    p.elems[tail..c + len].sort_unstable_by_key(|&v| count[v as usize]);
                }
                for k in tail..c + len {
                    p.loc[p.elems[k] as usize] = k as u32;
                }
                // Fragment boundaries by ascending count; untouched first.
                self.fragments.clear();
                let mut frag_start = c;
                let mut prev = if hits < len { 0 } else { self.count[p.elems[c] as usize] };
                for k in tail..c + len {
                    let x = self.count[p.elems[k] as usize];
                    if x != prev {
                        self.fragments.push((frag_start as u32, (k - frag_start) as u32));
                        frag_start = k;
                        prev = x;
                    }
                }
                self.fragments.push((frag_start as u32, (c + len - frag_start) as u32));
                if self.fragments.len() == 1 {
                    continue;
                }
                for &(f, size) in &self.fragments {
                    p.len_at[f as usize] = size;
                    for k in f..f + size {
                        p.start_of[p.elems[k as usize] as usize] = f;
                    }
                }
                p.cells += self.fragments.len() - 1;
                let mut aborted = false;
                for &(f, _) in &self.fragments[1..] {
                    let index = trace.len();
                    trace.push(f + 1);
                    if let Some(c) = cmp.as_deref_mut() {
                        if !aborted && !c.accept(index, f + 1) {
                            aborted = true;
                            result = Run::Aborted(index);
                        }
                    }
                }
                if self.in_queue[c] {
                    for &(f, _) in &self.fragments[1..] {
                        self.in_queue[f as usize] = true;
                        self.queue.push_back(f);
                    }
                } else {
                    let mut largest = 0;
                    for (k, &(_, size)) in self.fragments.iter().enumerate() {
                        if size > self.fragments[largest].1 {
                            largest = k;
                        }
                    }
                    for (k, &(f, _)) in self.fragments.iter().enumerate() {
                        if k != largest {
                            self.in_queue[f as usize] = true;
                            self.queue.push_back(f);
                        }
                    }
                }
                if aborted {
                    for &c2 in &self.hit_cells[hi + 1..] {
                        self.marked[c2 as usize] = 0;
                    }
                    for &v in &self.touched {
                        self.count[v as usize] = 0;
                    }
                    break 'outer;
                }
            }
            for &v in &self.touched {
                self.count[v as usize] = 0;
            }
        }
        while let Some(s) = self.queue.pop_front() {
            self.in_queue[s as usize] = false;
        }
        result
    }

    /// Individualizes the 0-based vertex `v` (in a non-trivial cell) and
    /// refines from the new singleton. The individualization position is the
    /// first trace element.
    pub(crate) fn individualize_refine(
        &mut self,
        g: &ColoredGraph,
        p: &mut OrderedPartition,
        v: u32,
        trace: &mut Vec<u32>,
        cmp: Option<&mut TraceCmp<'_>>,
    ) -> Run {
        let s = p.start_of[v as usize];
        let len = p.len_at[s as usize];
        p.individualize_in_place(v);
        let index = trace.len();
        trace.push(s + 2);
        let mut cmp = cmp;
        if let Some(c) = cmp.as_deref_mut() {
            if !c.accept(index, s + 2) {
                return Run::Aborted(index);
            }
        }
        // Same queue rule as any split: keep the largest fragment out,
        // ties resolved towards the smaller position.
        let seed = if len - 1 > 1 { s } else { s + 1 };
        self.run(g, p, &[seed], trace, cmp)
    }
}

/// Refines the coloring of `g` to the coarsest equitable partition reachable
/// by splitting, seeding the splitter queue with every cell in order.
pub fn refine(g: &ColoredGraph) -> (ColoredGraph, RefinementTrace) {
    let mut p = g.coloring().clone();
    let mut trace = Vec::new();
    refine_partition(g, &mut p, &mut trace);
    let mut out = g.clone();
    out.replace_coloring(p);
    (out, RefinementTrace(trace))
}

pub(crate) fn refine_partition(g: &ColoredGraph, p: &mut OrderedPartition, trace: &mut Vec<u32>) {
    let mut r = Refiner::new(g.n());
    let seeds: Vec<u32> = p.starts().collect();
    r.run(g, p, &seeds, trace, None);
}

/// Outcome of [`refine_with_budget`].
#[derive(Clone, Debug)]
pub enum BudgetOutcome {
    /// The trace matched the reference exactly.
    Completed(ColoredGraph, RefinementTrace),
    /// The trace exceeded the reference at the given 0-based index.
    AbortedWorse(usize),
    /// The trace turned out smaller than the reference.
    CompletedBetter(ColoredGraph, RefinementTrace),
}

/// Refines `g` while comparing the emerging trace with `reference`,
/// stopping as soon as it is known to be larger.
pub fn refine_with_budget(g: &ColoredGraph, reference: &RefinementTrace) -> BudgetOutcome {
    let mut p = g.coloring().clone();
    let mut trace = Vec::new();
    let mut cmp = TraceCmp::new(&reference.0);
    let mut r = Refiner::new(g.n());
    let seeds: Vec<u32> = p.starts().collect();
    match r.run(g, &mut p, &seeds, &mut trace, Some(&mut cmp)) {
        Run::Aborted(i) => BudgetOutcome::AbortedWorse(i),
        Run::Done => {
            let mut out = g.clone();
            out.replace_coloring(p);
            if cmp.is_smaller() || trace.len() < reference.len() {
                BudgetOutcome::CompletedBetter(out, RefinementTrace(trace))
            } else {
                BudgetOutcome::Completed(out, RefinementTrace(trace))
            }
        }
    }
}

/// True when every two vertices sharing a cell have the same number of
/// neighbors in every cell.
pub fn is_equitable(g: &ColoredGraph) -> bool {
    let p = g.coloring();
    let n = g.n();
    let mut rep_count = vec![0u32; n];
    let mut cnt = vec![0u32; n];
    let mut hit: Vec<u32> = Vec::new();
    for s in p.starts() {
        let cell = p.cell_slice(s);
        hit.clear();
        for &x in g.adj(cell[0]) {
            let t = p.start_of[x as usize];
            if rep_count[t as usize] == 0 {
                hit.push(t);
            }
            rep_count[t as usize] += 1;
        }
        let deg = g.adj(cell[0]).len();
        let ok = cell[1..].iter().all(|&v| {
            if g.adj(v).len() != deg {
                return false;
            }
            let mut good = true;
            for &x in g.adj(v) {
                let t = p.start_of[x as usize] as usize;
                cnt[t] += 1;
                if cnt[t] > rep_count[t] {
                    good = false;
                }
            }
            for &x in g.adj(v) {
                cnt[p.start_of[x as usize] as usize] = 0;
            }
            good
        });
        for &t in &hit {
            rep_count[t as usize] = 0;
        }
        if !ok {
            return false;
        }
    }
    true
}

/// Multigraph on cell positions with loops; multiplicities count the edges
/// of the source graph between (or within) cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGraph {
    /// `(position, cell size)` in position order.
    pub cells: Vec<(u32, u32)>,
    /// `((p, q), multiplicity)` with `p <= q`, sorted.
    pub edges: Vec<((u32, u32), u64)>,
}

impl QuotientGraph {
    pub fn num_vertices(&self) -> usize {
        self.cells.len()
    }

    pub fn multiplicity(&self, p: u32, q: u32) -> u64 {
        let key = (p.min(q), p.max(q));
        self.edges
            .binary_search_by(|(k, _)| k.cmp(&key))
            .map(|i| self.edges[i].1)
            .unwrap_or(0)
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.edges.iter().map(|(_, m)| m).sum()
    }
}

/// Quotient of an equitable colored graph.
pub fn quotient(g: &ColoredGraph) -> Result<QuotientGraph> {
    if !is_equitable(g) {
        return Err(Error::NotEquitable);
    }
    let p = g.coloring();
    let cells = p.starts().map(|s| (s + 1, p.len_at[s as usize])).collect();
    let mut pairs: Vec<(u32, u32)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let a = p.start_of[u as usize - 1] + 1;
            let b = p.start_of[v as usize - 1] + 1;
            (a.min(b), a.max(b))
        })
        .collect();
    pairs.sort_unstable();
    let mut edges: Vec<((u32, u32), u64)> = Vec::new();
    for pr in pairs {
        match edges.last_mut() {
            Some((k, m)) if *k == pr => *m += 1,
            _ => edges.push((pr, 1)),
        }
    }
    Ok(QuotientGraph { cells, edges })
}

fn push_u32(out: &mut Vec<u8>, x: u64) {
    out.extend_from_slice(&(x as u32).to_be_bytes());
}

/// Stable byte encoding: the vertex count, the cell sizes in position
/// order, then `(p, q, multiplicity)` triples sorted by `(p, q)`, all as
/// 4-byte big-endian unsigned integers.
pub fn encode_quotient(q: &QuotientGraph) -> Vec<u8> {
    let mut out = Vec::with_capacity(4 * (1 + q.cells.len() + 3 * q.edges.len()));
    push_u32(&mut out, q.cells.len() as u64);
    for &(_, size) in &q.cells {
        push_u32(&mut out, size as u64);
    }
    for &((a, b), m) in &q.edges {
        push_u32(&mut out, a as u64);
        push_u32(&mut out, b as u64);
        push_u32(&mut out, m);
    }
    out
}

/// Scratch space for encoding quotients of equitable partitions directly,
/// reading one representative per cell.
pub(crate) struct QuotientEncoder {
    cnt: Vec<u32>,
    hit: Vec<u32>,
}

impl QuotientEncoder {
    pub(crate) fn new(n: usize) -> Self {
        QuotientEncoder { cnt: vec![0; n], hit: Vec::new() }
    }

    /// Same bytes as `encode_quotient(quotient(..))` for an equitable `p`.
    pub(crate) fn encode(&mut self, g: &ColoredGraph, p: &OrderedPartition, out: &mut Vec<u8>) {
        out.clear();
        push_u32(out, p.cells as u64);
        for s in p.starts() {
            push_u32(out, p.len_at[s as usize] as u64);
        }
        for s in p.starts() {
            let size = p.len_at[s as usize] as u64;
            let rep = p.elems[s as usize];
            self.hit.clear();
            for &x in g.adj(rep) {
                let t = p.start_of[x as usize];
                if t < s {
                    continue;
                }
                if self.cnt[t as usize] == 0 {
                    self.hit.push(t);
                }
                self.cnt[t as usize] += 1;
            }
            self.hit.sort_unstable();
            for &t in &self.hit {
                let c = self.cnt[t as usize] as u64;
                self.cnt[t as usize] = 0;
                let m = if t == s { size * c / 2 } else { size * c };
                push_u32(out, s as u64 + 1);
                push_u32(out, t as u64 + 1);
                push_u32(out, m);
            }
        }
    }
}
