//! Level-by-level search for canonical forms, automorphism groups and
//! isomorphisms.
//!
//! Every level keeps only the nodes with the smallest invariant: the
//! multi-refinement trace, then the quotient encoding, then the target cell.
//! Children are filtered by orbits of the stabilizer of the node's
//! individualized vertices. Before a child is multi-refined, a cheap attempt
//! drives it to a discrete partition by plain refinement; equal attempt
//! leaves yield automorphisms, which prune the child when they map an
//! earlier node of the level onto it.
//!
//! On the level whose best nodes are discrete, the first node is expanded in
//! full and every other node only until one of its children matches a stored
//! leaf. That child is an automorphic image of a stored leaf, so the node is
//! an image of an expanded node. Nodes that match nothing leave residual
//! leaves.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, OrderedPartition, Permutation};
use crate::group::PermutationGroup;
use crate::multirefine::{MultiRefiner, Outcome};
use crate::refine::{Run, TraceCmp};

/// Switches for the pruning rules; turning them off never changes results.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Orbit filtering, attempt pruning and early stops on matched nodes.
    pub prune: bool,
    /// Abort children whose refinement trace exceeds the best one.
    pub trace_shortcut: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { prune: true, trace_shortcut: true }
    }
}

/// Counters reported by a search.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SearchStats {
    /// Multi-refinement calls, one per search node.
    pub multirefine_calls: u64,
    /// Individualizations from the root to the canonical leaf.
    pub max_depth: usize,
    /// Generators of the automorphism group.
    pub generators_found: usize,
    /// Seconds spent in group computations.
    pub group_time: f64,
    /// Leaves stored without matching any other leaf.
    pub residual_count: usize,
}

/// Output of [`canonical_form`].
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    /// The graph relabeled by `labeling`.
    pub canonical: ColoredGraph,
    /// Sends every vertex to its canonical label.
    pub labeling: Permutation,
    pub group: PermutationGroup,
    pub stats: SearchStats,
}

impl CanonicalForm {
    pub fn encoding(&self) -> Vec<u8> {
        canonical_encoding(&self.canonical)
    }

    /// SHA-256 of the encoding, in hex.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.encoding()))
    }
}

/// Output of [`automorphism_group`].
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    pub group: PermutationGroup,
    /// Labelings (vertex to position) of leaves that matched no other leaf.
    pub residuals: Vec<Permutation>,
    pub stats: SearchStats,
}

/// Byte encoding of a colored graph: the vertex count, the number of cells,
/// the cell sizes, the edge count and the sorted edges, as 4-byte big-endian
/// integers. Two canonical forms are equal exactly when these bytes are.
pub fn canonical_encoding(g: &ColoredGraph) -> Vec<u8> {
    let sizes = g.coloring().cell_sizes();
    let edges = g.edges();
    let mut out = Vec::with_capacity(4 * (3 + sizes.len() + 2 * edges.len()));
    let mut put = |x: usize| out.extend_from_slice(&(x as u32).to_be_bytes());
    put(g.n());
    put(sizes.len());
    for s in sizes {
        put(s);
    }
    put(edges.len());
    for (u, v) in edges {
        put(u as usize);
        put(v as usize);
    }
    out
}

/// Node invariant; derived ordering is the comparison used for pruning.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Invariant {
    trace: Vec<u32>,
    quotient: Vec<u8>,
    target: (u32, u32),
}

impl Invariant {
    fn digest(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update((self.trace.len() as u64).to_be_bytes());
        for x in &self.trace {
            h.update(x.to_be_bytes());
        }
        h.update((self.quotient.len() as u64).to_be_bytes());
        h.update(&self.quotient);
        h.update(self.target.0.to_be_bytes());
        h.update(self.target.1.to_be_bytes());
        h.finalize().into()
    }
}

#[derive(Clone, Debug)]
struct Node {
    /// Individualized vertices, 0-based.
    seq: Vec<u32>,
    part: OrderedPartition,
    /// Start of the target cell.
    target: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Canonical,
    Group,
}

/// What one graph's search leaves behind for an isomorphism test.
struct Reference {
    /// Digest of the best invariant of every level, root first.
    levels: Vec<[u8; 32]>,
    best_trace: Vec<u32>,
    best_leaf: Vec<u32>,
    residual_leaves: Vec<Vec<u32>>,
}

struct LevelOutcome {
    nodes: Vec<Node>,
    best: Invariant,
}

struct Engine<'g> {
    g: &'g ColoredGraph,
    n: usize,
    opts: SearchOptions,
    group: PermutationGroup,
    base_set: bool,
    mr: MultiRefiner,
    stats: SearchStats,
    group_time: Duration,
    residuals: Vec<Vec<u32>>,
    scratch: Vec<u32>,
}

impl<'g> Engine<'g> {
    fn new(g: &'g ColoredGraph, opts: SearchOptions) -> Self {
        let n = g.n();
        Engine {
            g,
            n,
            opts,
            group: PermutationGroup::new(n),
            base_set: false,
            mr: MultiRefiner::new(n),
            stats: SearchStats::default(),
            group_time: Duration::ZERO,
            residuals: Vec::new(),
            scratch: Vec::new(),
        }
    }

    fn finish_stats(&mut self) -> SearchStats {
        let mut s = self.stats.clone();
        s.generators_found = self.group.generators().len();
        s.group_time = self.group_time.as_secs_f64();
        s.residual_count = self.residuals.len();
        s
    }

    /// Adds a verified automorphism. `base` is a sequence whose pointwise
    /// stabilizer is trivial, used as the group's known base the first time.
    fn add_automorphism(&mut self, img: Vec<u32>, base: &[u32]) {
        let t = Instant::now();
        if !self.base_set && self.group.generators().is_empty() {
            let pts: Vec<u32> = base.iter().map(|&v| v + 1).collect();
            if self.group.set_known_base(&pts).is_ok() {
                self.base_set = true;
            }
        }
        let p = Permutation::from_zero_based(img);
        debug_assert!(self.g.is_automorphism(&p));
        self.group.extend(&p).expect("degree matches");
        self.group_time += t.elapsed();
    }

    /// Orbit roots of the stabilizer of `seq`, or the identity map when
    /// pruning is off.
    fn roots(&mut self, seq: &[u32]) -> Vec<u32> {
        if !self.opts.prune || self.group.generators().is_empty() {
            return (0..self.n as u32).collect();
        }
        let t = Instant::now();
        let r = self.group.stabilizer_orbit_roots(seq);
        self.group_time += t.elapsed();
        r
    }

    fn rebase(&mut self, seq: &[u32]) {
        if !self.opts.prune || self.group.generators().is_empty() || self.group.base_starts_with(seq) {
            return;
        }
        let t = Instant::now();
        self.group.rebase(seq);
        self.group_time += t.elapsed();
    }

    fn encode(&mut self, p: &OrderedPartition) -> Vec<u8> {
        let mut out = Vec::new();
        self.mr.encoder.encode(self.g, p, &mut out);
        out
    }

    fn leaf_key(&mut self, elems: &[u32]) -> u64 {
        let p = OrderedPartition::discrete_zero_based(elems);
        let enc = self.encode(&p);
        let mut h = std::collections::hash_map::DefaultHasher::new();
        enc.hash(&mut h);
        h.finish()
    }

    /// Permutation sending the vertex at each position of `from` to the
    /// vertex at the same position of `to`, if it is an automorphism.
    fn leaf_map(&self, from: &[u32], to: &[u32]) -> Option<Vec<u32>> {
        let mut img = vec![0u32; self.n];
        for (k, &v) in from.iter().enumerate() {
            img[v as usize] = to[k];
        }
        let p = Permutation::from_zero_based(img);
        self.g.is_automorphism(&p).then_some(p.img)
    }

    /// Refines the coloring and multi-refines the root.
    fn root(&mut self) -> (Node, Invariant) {
        let mut part = self.g.coloring().clone();
        let mut trace = Vec::new();
        let seeds: Vec<u32> = part.starts().collect();
        self.mr.refiner.run(self.g, &mut part, &seeds, &mut trace, None);
        let roots: Vec<u32> = (0..self.n as u32).collect();
        let out = self.mr.run(self.g, &mut part, &mut trace, &roots);
        self.stats.multirefine_calls += 1;
        self.finish_node(Vec::new(), part, trace, out)
    }

    fn finish_node(&mut self, seq: Vec<u32>, part: OrderedPartition, trace: Vec<u32>, out: Outcome) -> (Node, Invariant) {
        let target = out.target();
        if !out.automorphisms.is_empty() {
            let mut base = seq.clone();
            base.push(out.shortcut.as_ref().expect("automorphisms come from discrete children").vertex);
            for a in out.automorphisms {
                self.add_automorphism(a, &base);
            }
        }
        let quotient = self.encode(&part);
        let inv = Invariant { trace, quotient, target: target.map_or((0, 0), |(s, c)| (s + 1, c)) };
        (Node { seq, part, target: target.map(|(s, _)| s) }, inv)
    }

    /// Individualizes `w` in the node's partition and refines; `None` when
    /// the trace exceeded `reference`.
    fn individualize(&mut self, node: &Node, w: u32, reference: Option<&[u32]>) -> Option<(OrderedPartition, Vec<u32>)> {
        let mut part = node.part.clone();
        let mut trace = Vec::new();
        let run = match reference {
            Some(r) if self.opts.trace_shortcut => {
                let mut cmp = TraceCmp::new(r);
                self.mr.refiner.individualize_refine(self.g, &mut part, w, &mut trace, Some(&mut cmp))
            }
            _ => self.mr.refiner.individualize_refine(self.g, &mut part, w, &mut trace, None),
        };
        match run {
            Run::Done => Some((part, trace)),
            Run::Aborted(_) => None,
        }
    }

    /// Drives `part` to a discrete partition by plain refinement,
    /// individualizing the smallest vertex of the first largest cell each
    /// time. Returns the leaf order and the vertices individualized.
    fn attempt(&mut self, part: &OrderedPartition) -> (Vec<u32>, Vec<u32>) {
        let mut p = part.clone();
        let mut verts = Vec::new();
        while p.cells < self.n {
            let mut best: Option<(u32, u32)> = None;
            for s in p.starts() {
                let len = p.len_at[s as usize];
                if len > 1 && best.is_none_or(|(_, l)| len > l) {
                    best = Some((s, len));
                }
            }
            let (s, _) = best.expect("non-discrete partition has a non-trivial cell");
            let v = *p.cell_slice(s).iter().min().unwrap();
            self.scratch.clear();
            self.mr.refiner.individualize_refine(self.g, &mut p, v, &mut self.scratch, None);
            verts.push(v);
        }
        (p.elems, verts)
    }

    /// Sorted members of the target cell.
    fn target_members(node: &Node) -> Vec<u32> {
        let s = node.target.expect("non-discrete node has a target cell");
        let mut m = node.part.cell_slice(s).to_vec();
        m.sort_unstable();
        m
    }

    /// Expands the nodes of one level and keeps the children with the
    /// smallest invariant.
    fn expand_level(&mut self, kept: &[Node], mode: Mode) -> LevelOutcome {
        let prune = self.opts.prune;
        let mut best: Option<Invariant> = None;
        let mut best_leaf: Option<Vec<u32>> = None;
        let mut owner = usize::MAX;
        let mut next: Vec<Node> = Vec::new();
        let mut attempts: HashMap<u64, Vec<(Vec<u32>, Vec<u32>)>> = HashMap::new();
        for (idx, node) in kept.iter().enumerate() {
            if idx == 0 {
                self.rebase(&node.seq);
            }
            let mut roots = self.roots(&node.seq);
            let mut roots_gens = self.group.generators().len();
            let mut residual_stored = false;
            for w in Self::target_members(node) {
                if prune {
                    if self.group.generators().len() != roots_gens {
                        roots = self.roots(&node.seq);
                        roots_gens = self.group.generators().len();
                    }
                    if roots[w as usize] != w {
                        continue;
                    }
                }
                let reference = best.as_ref().map(|b| b.trace.as_slice());
                let Some((mut part, mut trace)) = self.individualize(node, w, reference) else {
                    continue;
                };
                let mut seq = node.seq.clone();
                seq.push(w);
                if prune {
                    let (leaf, verts) = self.attempt(&part);
                    let key = self.leaf_key(&leaf);
                    let mut pruned = false;
                    let mut found: Option<Vec<u32>> = None;
                    if let Some(list) = attempts.get(&key) {
                        for (other, other_seq) in list {
                            if let Some(img) = self.leaf_map(other, &leaf) {
                                pruned = other_seq.iter().zip(&seq).all(|(&a, &b)| img[a as usize] == b);
                                found = Some(img);
                                break;
                            }
                        }
                    }
                    if let Some(img) = found {
                        let mut base = seq.clone();
                        base.extend_from_slice(&verts);
                        self.add_automorphism(img, &base);
                    } else if !self.base_set && self.group.generators().is_empty() {
                        let mut base = seq.clone();
                        base.extend_from_slice(&verts);
                        let pts: Vec<u32> = base.iter().map(|&v| v + 1).collect();
                        self.base_set = self.group.set_known_base(&pts).is_ok();
                    }
                    if pruned {
                        continue;
                    }
                    attempts.entry(key).or_default().push((leaf, seq.clone()));
                }
                let roots_child = self.roots(&seq);
                let out = self.mr.run(self.g, &mut part, &mut trace, &roots_child);
                self.stats.multirefine_calls += 1;
                let (child, inv) = self.finish_node(seq, part, trace, out);
                let discrete = child.part.cells == self.n;
                let discrete_best = best_leaf.is_some();
                let order = match &best {
                    None => Ordering::Less,
                    Some(b) => inv.cmp(b),
                };
                match order {
                    Ordering::Less => {
                        if mode == Mode::Group && prune && discrete_best && idx != owner {
                            // Not an image of the expanded node.
                            self.residuals.push(child.part.elems.clone());
                            break;
                        }
                        best = Some(inv);
                        owner = idx;
                        next.clear();
                        best_leaf = discrete.then(|| child.part.elems.clone());
                        next.push(child);
                    }
                    Ordering::Equal => {
                        let mut matched = false;
                        if discrete {
                            let leaf = best_leaf.as_ref().expect("equal invariants are both discrete");
                            if let Some(img) = self.leaf_map(leaf, &child.part.elems) {
                                let owner_seq = &kept[owner].seq;
                                matched = owner_seq.iter().zip(&node.seq).all(|(&a, &b)| img[a as usize] == b);
                                self.add_automorphism(img, &child.seq);
                            }
                        }
                        if prune && matched && idx != owner {
                            break;
                        }
                        next.push(child);
                    }
                    Ordering::Greater => {
                        if mode == Mode::Group && discrete && discrete_best && idx != owner && !residual_stored {
                            self.residuals.push(child.part.elems.clone());
                            residual_stored = true;
                        }
                    }
                }
            }
        }
        LevelOutcome { nodes: next, best: best.expect("the first child of the first node is always kept") }
    }

    /// Runs the search; returns the leaves with the smallest invariant and
    /// the best invariant of every level.
    fn run(&mut self, mode: Mode) -> (Vec<Node>, Vec<Invariant>) {
        let (root, inv) = self.root();
        let mut levels = vec![inv];
        let mut kept = vec![root];
        while kept[0].part.cells < self.n {
            let out = self.expand_level(&kept, mode);
            levels.push(out.best);
            kept = out.nodes;
        }
        self.stats.max_depth = kept[0].seq.len();
        (kept, levels)
    }

    /// Search of the second graph of an isomorphism test, level by level
    /// against the first graph's reference. Returns a leaf order whose
    /// positional map from the reference's best leaf (or a residual leaf)
    /// verifies as an isomorphism.
    fn probe(&mut self, reference: &Reference, other: &ColoredGraph) -> Option<Permutation> {
        let (root, inv) = self.root();
        if inv.digest() != reference.levels[0] {
            return None;
        }
        let witness = |leaf1: &[u32], leaf2: &[u32]| -> Option<Permutation> {
            let mut img = vec![0u32; leaf1.len()];
            for (k, &v) in leaf1.iter().enumerate() {
                img[v as usize] = leaf2[k];
            }
            let p = Permutation::from_zero_based(img);
            other.is_isomorphism(self.g, &p).then_some(p)
        };
        if root.part.cells == self.n {
            return witness(&reference.best_leaf, &root.part.elems);
        }
        let last = reference.levels.len() - 1;
        let mut kept = vec![root];
        for level in 1..last {
            let out = self.expand_level(&kept, Mode::Canonical);
            if out.best.digest() != reference.levels[level] {
                return None;
            }
            kept = out.nodes;
        }
        let target = reference.levels[last];
        let residual_keys: Vec<u64> =
            reference.residual_leaves.iter().map(|l| leaf_key_of(other, l)).collect();
        for node in &kept {
            let mut roots = self.roots(&node.seq);
            let mut roots_gens = self.group.generators().len();
            for w in Self::target_members(node) {
                if self.opts.prune {
                    if self.group.generators().len() != roots_gens {
                        roots = self.roots(&node.seq);
                        roots_gens = self.group.generators().len();
                    }
                    if roots[w as usize] != w {
                        continue;
                    }
                }
                let Some((mut part, mut trace)) = self.individualize(node, w, Some(&reference.best_trace)) else {
                    continue;
                };
                let mut seq = node.seq.clone();
                seq.push(w);
                let roots_child = self.roots(&seq);
                let out = self.mr.run(self.g, &mut part, &mut trace, &roots_child);
                self.stats.multirefine_calls += 1;
                let (child, inv) = self.finish_node(seq, part, trace, out);
                if child.part.cells != self.n {
                    continue;
                }
                if inv.digest() == target {
                    if let Some(p) = witness(&reference.best_leaf, &child.part.elems) {
                        return Some(p);
                    }
                }
                if !residual_keys.is_empty() {
                    let key = self.leaf_key(&child.part.elems);
                    for (k, leaf) in residual_keys.iter().zip(&reference.residual_leaves) {
                        if *k == key {
                            if let Some(p) = witness(leaf, &child.part.elems) {
                                return Some(p);
                            }
                        }
                    }
                }
            }
        }
        None
    }
}

fn leaf_key_of(g: &ColoredGraph, elems: &[u32]) -> u64 {
    let mut mr = MultiRefiner::new(g.n());
    let p = OrderedPartition::discrete_zero_based(elems);
    let mut enc = Vec::new();
    mr.encoder.encode(g, &p, &mut enc);
    let mut h = std::collections::hash_map::DefaultHasher::new();
    enc.hash(&mut h);
    h.finish()
}

fn labeling_of(leaf: &[u32]) -> Permutation {
    let mut img = vec![0u32; leaf.len()];
    for (k, &v) in leaf.iter().enumerate() {
        img[v as usize] = k as u32;
    }
    Permutation::from_zero_based(img)
}

/// Canonical form with default options.
pub fn canonical_form(g: &ColoredGraph) -> CanonicalForm {
    canonical_form_with(g, SearchOptions::default())
}

/// Canonical form: the graph relabeled by the first leaf of smallest
/// invariant, together with the automorphism group found on the way.
pub fn canonical_form_with(g: &ColoredGraph, opts: SearchOptions) -> CanonicalForm {
    let mut e = Engine::new(g, opts);
    let (leaves, _) = e.run(Mode::Canonical);
    let labeling = labeling_of(&leaves[0].part.elems);
    let canonical = g.apply_permutation(&labeling).expect("labeling has the graph's degree");
    let stats = e.finish_stats();
    CanonicalForm { canonical, labeling, group: e.group, stats }
}

/// Automorphism group with default options.
pub fn automorphism_group(g: &ColoredGraph) -> AutomorphismGroup {
    automorphism_group_with(g, SearchOptions::default())
}

/// Automorphism group, with the residual leaves of the level whose best
/// nodes are discrete.
pub fn automorphism_group_with(g: &ColoredGraph, opts: SearchOptions) -> AutomorphismGroup {
    let mut e = Engine::new(g, opts);
    e.run(Mode::Group);
    let stats = e.finish_stats();
    let residuals = e.residuals.iter().map(|l| labeling_of(l)).collect();
    AutomorphismGroup { group: e.group, residuals, stats }
}

/// Isomorphism test with default options.
pub fn are_isomorphic(g1: &ColoredGraph, g2: &ColoredGraph) -> Option<Permutation> {
    are_isomorphic_with(g1, g2, SearchOptions::default())
}

/// Returns a verified isomorphism from `g1` onto `g2`, or `None`.
///
/// The automorphism search of `g1` records the best invariant of every
/// level, its best leaf and its residual leaves. The search of `g2` must
/// meet the same invariants level by level; on the last level every kept
/// node of `g2` is probed until a child matches a stored leaf of `g1`.
pub fn are_isomorphic_with(g1: &ColoredGraph, g2: &ColoredGraph, opts: SearchOptions) -> Option<Permutation> {
    if g1.n() != g2.n() || g1.m() != g2.m() {
        return None;
    }
    let (c1, c2) = (g1.coloring().cell_sizes(), g2.coloring().cell_sizes());
    if c1 != c2 {
        return None;
    }
    let mut e1 = Engine::new(g1, opts);
    let (leaves, levels) = e1.run(Mode::Group);
    let best = levels.last().expect("root level").clone();
    let reference = Reference {
        levels: levels.iter().map(Invariant::digest).collect(),
        best_trace: best.trace,
        best_leaf: leaves[0].part.elems.clone(),
        residual_leaves: e1.residuals.clone(),
    };
    let mut e2 = Engine::new(g2, opts);
    let p = e2.probe(&reference, g1)?;
    debug_assert!(g1.is_isomorphism(g2, &p));
    Some(p)
}

/// Exhaustive oracle for graphs on at most 9 vertices: the smallest
/// [`canonical_encoding`] over all color-preserving relabelings, and the
/// number of automorphisms.
pub fn brute_force_canonical(g: &ColoredGraph) -> Result<(Vec<u8>, BigUint)> {
    let n = g.n();
    if n > 9 {
        return Err(Error::Capacity(format!("brute force is limited to 9 vertices, got {n}")));
    }
    let cells = g.coloring().cells();
    let edges: Vec<(u32, u32)> = g.edges().iter().map(|&(u, v)| (u - 1, v - 1)).collect();
    // Labels of cell k form the block starting at offset[k].
    let mut offset = Vec::with_capacity(cells.len());
    let mut acc = 0u32;
    for c in &cells {
        offset.push(acc);
        acc += c.len() as u32;
    }
    let mut perms: Vec<Vec<u32>> = cells.iter().map(|c| (0..c.len() as u32).collect()).collect();
    let mut label = vec![0u32; n];
    let mut best: Option<Vec<(u32, u32)>> = None;
    let mut original: Vec<(u32, u32)> = Vec::new();
    let mut autos: u64 = 0;
    let mut first = true;
    loop {
        for (k, c) in cells.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                label[v as usize - 1] = offset[k] + perms[k][i];
            }
        }
        let mut relabeled: Vec<(u32, u32)> = edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (label[u as usize], label[v as usize]);
                (a.min(b), a.max(b))
            })
            .collect();
        relabeled.sort_unstable();
        if first {
            original = relabeled.clone();
            first = false;
        }
        if relabeled == original {
            autos += 1;
        }
        if best.as_ref().is_none_or(|b| relabeled < *b) {
            best = Some(relabeled);
        }
        // Advance the product of per-cell permutations.
        let mut k = 0;
        loop {
            if k == perms.len() {
                let edges = best.unwrap_or_default();
                let sizes: Vec<usize> = cells.iter().map(Vec::len).collect();
                let mut pairs: Vec<(u32, u32)> = edges.iter().map(|&(a, b)| (a + 1, b + 1)).collect();
                pairs.sort_unstable();
                let blocks: Vec<Vec<u32>> = sizes
                    .iter()
                    .scan(0u32, |at, &s| {
                        let b: Vec<u32> = (*at + 1..=*at + s as u32).collect();
                        *at += s as u32;
                        Some(b)
                    })
                    .collect();
                let coloring = OrderedPartition::new(n, &blocks)?;
                let h = ColoredGraph::new(n, &pairs, coloring)?;
                return Ok((canonical_encoding(&h), BigUint::from(autos)));
            }
            if next_permutation(&mut perms[k]) {
                break;
            }
            k += 1;
        }
    }
}

/// Lexicographic successor; on the last permutation resets to the first and
/// returns false.
fn next_permutation(a: &mut [u32]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        a.reverse();
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}
