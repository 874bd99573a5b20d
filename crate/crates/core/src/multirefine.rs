//! Multi-refinement: refine, then split cells by the quotient graphs that
//! the individualization-refinements of their members induce, until every
//! two cellmates induce the same quotient.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, OrderedPartition, Permutation};
use crate::group::{orbit_roots, PermutationGroup};
use crate::refine::{refine_partition, QuotientEncoder, Refiner, RefinementTrace};

/// Output of [`multi_refine`].
#[derive(Clone, Debug)]
pub struct MultiRefineResult {
    /// Equitable, respecting node individualizations, or discrete through
    /// the shortcut.
    pub graph: ColoredGraph,
    /// Every split position, across all rounds.
    pub trace: RefinementTrace,
    /// Position of the selected target cell; `None` when discrete.
    pub target_cell: Option<usize>,
    /// For every non-trivial cell (by position), the number of cells after
    /// individualizing one of its members and refining.
    pub child_stats: Vec<(usize, usize)>,
    /// The discrete child adopted as the result, with its quotient encoding.
    pub discrete_shortcut: Option<(OrderedPartition, Vec<u8>)>,
    /// Automorphisms found between discrete children.
    pub new_automorphisms: Vec<Permutation>,
}

/// A discrete child adopted by the shortcut.
#[derive(Clone, Debug)]
pub(crate) struct Shortcut {
    pub(crate) vertex: u32,
    pub(crate) encoding: Vec<u8>,
}

/// Internal result of one multi-refinement run; the partition and trace
/// are updated in place.
#[derive(Clone, Debug, Default)]
pub(crate) struct Outcome {
    /// `(cell start, child cell count)` for every non-trivial cell.
    pub(crate) child_stats: Vec<(u32, u32)>,
    pub(crate) shortcut: Option<Shortcut>,
    /// 0-based images.
    pub(crate) automorphisms: Vec<Vec<u32>>,
}

impl Outcome {
    /// Leftmost cell start with the largest child cell count.
    pub(crate) fn target(&self) -> Option<(u32, u32)> {
        let mut best: Option<(u32, u32)> = None;
        for &(s, c) in &self.child_stats {
            if best.is_none_or(|(_, bc)| c > bc) {
                best = Some((s, c));
            }
        }
        best
    }
}

/// Children of one cell, grouped by quotient encoding.
struct CellScan {
    classes: BTreeMap<Vec<u8>, Vec<u32>>,
    /// Smallest discrete encoding seen, its child and partition order.
    discrete: Option<(Vec<u8>, u32, Vec<u32>)>,
    automorphisms: Vec<Vec<u32>>,
}

/// Scratch space for repeated multi-refinements of one graph.
pub(crate) struct MultiRefiner {
    pub(crate) refiner: Refiner,
    pub(crate) encoder: QuotientEncoder,
    child: Option<OrderedPartition>,
    child_trace: Vec<u32>,
    buf: Vec<u8>,
    /// Number of individualize-refine children computed.
    pub(crate) children: u64,
}

impl MultiRefiner {
    pub(crate) fn new(n: usize) -> Self {
        MultiRefiner {
            refiner: Refiner::new(n),
            encoder: QuotientEncoder::new(n),
            child: None,
            child_trace: Vec::new(),
            buf: Vec::new(),
            children: 0,
        }
    }

    /// Individualizes `v` in a copy of `p` and refines it; the copy is left
    /// in `self.child` and its quotient encoding in `self.buf`.
    fn child_of(&mut self, g: &ColoredGraph, p: &OrderedPartition, v: u32) {
        let child = match &mut self.child {
            Some(c) => {
                c.clone_from(p);
                c
            }
            None => self.child.insert(p.clone()),
        };
        self.child_trace.clear();
        self.refiner.individualize_refine(g, child, v, &mut self.child_trace, None);
        self.encoder.encode(g, child, &mut self.buf);
        self.children += 1;
    }

    /// Multi-refines the equitable partition `p` in place. `roots[v]` is the
    /// smallest point of the orbit of `v` under a group of automorphisms of
    /// the colored graph; only orbit representatives are individualized.
    pub(crate) fn run(
        &mut self,
        g: &ColoredGraph,
        p: &mut OrderedPartition,
        trace: &mut Vec<u32>,
        roots: &[u32],
    ) -> Outcome {
        let n = g.n();
        loop {
            let mut out = Outcome::default();
            let starts: Vec<u32> = p.starts().collect();
            let mut split = false;
            for s in starts {
                if p.len_at[s as usize] < 2 {
                    continue;
                }
                let scan = self.scan_cell(g, p, s, roots);
                if let Some((encoding, vertex, order)) = scan.discrete {
                    self.child_trace.clear();
                    self.refiner.individualize_refine(g, p, vertex, &mut self.child_trace, None);
                    debug_assert_eq!(p.elems, order);
                    trace.extend_from_slice(&self.child_trace);
                    out.shortcut = Some(Shortcut { vertex, encoding });
                    out.automorphisms = scan.automorphisms;
                    out.child_stats.clear();
                    return out;
                }
                if scan.classes.len() > 1 {
                    self.split_cell(g, p, s, &scan.classes, roots, trace);
                    split = true;
                    break;
                }
                let cells = scan.classes.keys().next().map_or(n as u32, |k| cells_of(k));
                out.child_stats.push((s, cells));
            }
            if !split {
                return out;
            }
        }
    }

    fn scan_cell(&mut self, g: &ColoredGraph, p: &OrderedPartition, s: u32, roots: &[u32]) -> CellScan {
        let n = g.n();
        let members: Vec<u32> = p.cell_slice(s).to_vec();
        let mut reps: Vec<u32> = members.iter().copied().filter(|&v| roots[v as usize] == v).collect();
        reps.sort_unstable();
        let mut scan = CellScan { classes: BTreeMap::new(), discrete: None, automorphisms: Vec::new() };
        let mut equal: Vec<Vec<u32>> = Vec::new();
        for &w in &reps {
            self.child_of(g, p, w);
            let child = self.child.as_ref().unwrap();
            if child.cells == n {
                match &scan.discrete {
                    Some((e, _, _)) if *e < self.buf => {}
                    Some((e, _, _)) if *e == self.buf => equal.push(child.elems.clone()),
                    _ => {
                        scan.discrete = Some((self.buf.clone(), w, child.elems.clone()));
                        equal.clear();
                    }
                }
            } else if let Some(list) = scan.classes.get_mut(self.buf.as_slice()) {
                list.push(w);
            } else {
                scan.classes.insert(self.buf.clone(), vec![w]);
            }
        }
        if let Some((_, _, order)) = &scan.discrete {
            for other in &equal {
                let mut img = vec![0u32; n];
                for (k, &v) in order.iter().enumerate() {
                    img[v as usize] = other[k];
                }
                let perm = Permutation::from_zero_based(img);
                if g.is_automorphism(&perm) {
                    scan.automorphisms.push(perm.img);
                }
            }
        }
        scan
    }

    /// Reorders the cell at `s` into fragments by ascending child encoding
    /// and refines from the new fragments.
    fn split_cell(
        &mut self,
        g: &ColoredGraph,
        p: &mut OrderedPartition,
        s: u32,
        classes: &BTreeMap<Vec<u8>, Vec<u32>>,
        roots: &[u32],
        trace: &mut Vec<u32>,
    ) {
        let n = g.n();
        let mut class_of = vec![u32::MAX; n];
        for (k, reps) in classes.values().enumerate() {
            for &w in reps {
                class_of[w as usize] = k as u32;
            }
        }
        let start = s as usize;
        let len = p.len_at[start] as usize;
        let mut members: Vec<(u32, u32)> =
            p.elems[start..start + len].iter().map(|&v| (class_of[roots[v as usize] as usize], v)).collect();
        members.sort_unstable();
        let mut frags: Vec<(u32, u32)> = Vec::new();
        for (k, &(c, v)) in members.iter().enumerate() {
            let at = start + k;
            p.elems[at] = v;
            p.loc[v as usize] = at as u32;
            match frags.last_mut() {
                Some((_, size)) if members[k - 1].0 == c => *size += 1,
                _ => frags.push((at as u32, 1)),
            }
        }
        for &(f, size) in &frags {
            p.len_at[f as usize] = size;
            for k in f..f + size {
                p.start_of[p.elems[k as usize] as usize] = f;
            }
        }
        p.cells += frags.len() - 1;
        for &(f, _) in &frags[1..] {
            trace.push(f + 1);
        }
        let mut largest = 0;
        for (k, &(_, size)) in frags.iter().enumerate() {
            if size > frags[largest].1 {
                largest = k;
            }
        }
        let seeds: Vec<u32> =
            frags.iter().enumerate().filter(|&(k, _)| k != largest).map(|(_, &(f, _))| f).collect();
        self.refiner.run(g, p, &seeds, trace, None);
    }
}

fn cells_of(encoding: &[u8]) -> u32 {
    u32::from_be_bytes([encoding[0], encoding[1], encoding[2], encoding[3]])
}

fn check_group(g: &ColoredGraph, group: &PermutationGroup) -> Result<()> {
    if group.degree() != g.n() {
        return Err(Error::SizeMismatch { left: g.n(), right: group.degree() });
    }
    for p in group.generators() {
        if !g.is_automorphism(p) {
            return Err(Error::NotAutomorphism(p.to_string()));
        }
    }
    Ok(())
}

/// Refines the coloring of `g` and then splits cells until cellmates induce
/// equal quotient graphs when individualized, or adopts the discrete child
/// with the smallest quotient encoding when one appears. Only one member of
/// every orbit of `group` is individualized.
pub fn multi_refine(g: &ColoredGraph, group: &PermutationGroup) -> Result<MultiRefineResult> {
    check_group(g, group)?;
    let n = g.n();
    let roots = orbit_roots(n, group.generators().iter().map(|p| p.img.as_slice()));
    let mut p = g.coloring().clone();
    let mut trace = Vec::new();
    refine_partition(g, &mut p, &mut trace);
    let mut mr = MultiRefiner::new(n);
    let out = mr.run(g, &mut p, &mut trace, &roots);
    let target_cell = out.target().map(|(s, _)| s as usize + 1);
    let child_stats = out.child_stats.iter().map(|&(s, c)| (s as usize + 1, c as usize)).collect();
    let discrete_shortcut = out.shortcut.as_ref().map(|sc| (p.clone(), sc.encoding.clone()));
    let new_automorphisms = out.automorphisms.into_iter().map(Permutation::from_zero_based).collect();
    let mut graph = g.clone();
    graph.replace_coloring(p);
    Ok(MultiRefineResult {
        graph,
        trace: RefinementTrace(trace),
        target_cell,
        child_stats,
        discrete_shortcut,
        new_automorphisms,
    })
}

/// The leftmost non-trivial cell whose individualized member refines to the
/// largest number of cells; `None` for a discrete partition.
pub fn select_target_cell(result: &MultiRefineResult) -> Option<usize> {
    if result.graph.coloring().is_discrete() {
        return None;
    }
    let mut best: Option<(usize, usize)> = None;
    for &(pos, cells) in &result.child_stats {
        if best.is_none_or(|(_, c)| cells > c) {
            best = Some((pos, cells));
        }
    }
    best.map(|(pos, _)| pos)
}

/// Exhaustive check that every two cellmates of the equitable coloring of
/// `g` induce equal quotient graphs when individualized and refined.
pub fn respects_individualizations(g: &ColoredGraph) -> bool {
    let n = g.n();
    let p = g.coloring();
    let mut mr = MultiRefiner::new(n);
    for s in p.starts() {
        if p.len_at[s as usize] < 2 {
            continue;
        }
        let mut first: Option<Vec<u8>> = None;
        for &w in p.cell_slice(s) {
            mr.child_of(g, p, w);
            match &first {
                None => first = Some(mr.buf.clone()),
                Some(e) if *e != mr.buf => return false,
                Some(_) => {}
            }
        }
    }
    true
}
