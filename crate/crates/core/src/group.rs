//! Deterministic Schreier-Sims: base and strong generating set, membership,
//! orbits, pointwise stabilizers and exact order.
//!
//! Transversals are stored as Schreier trees. Levels whose orbit is small
//! enough relative to the degree also keep explicit coset representatives
//! and their inverses. Sifting traces only the points it needs: the base
//! points, and finally the points of a complete base (by default every
//! point; a caller that knows a shorter complete base can supply it).

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::Permutation;

const NONE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;
/// Upper bound on explicit transversal entries kept across all levels.
const EXPLICIT_BUDGET: usize = 1 << 24;

#[derive(Clone, Debug)]
struct Level {
    point: u32,
    /// Indices into the strong generators.
    gens: Vec<u32>,
    orbit: Vec<u32>,
    /// For each point: index into `orbit`, or `NONE`.
    slot: Vec<u32>,
    /// For each orbit slot: strong generator labelling the tree edge into it.
    edge: Vec<u32>,
    /// For each orbit slot: Schreier generator pairs already checked.
    checked: Vec<u32>,
    cursor: usize,
    /// Per orbit slot: coset representative (base point to orbit point) and
    /// its inverse, when kept explicitly.
    explicit: Option<(Vec<Vec<u32>>, Vec<Vec<u32>>)>,
}

impl Level {
    fn contains(&self, x: u32) -> bool {
        self.slot[x as usize] != NONE
    }
}

/// A permutation group given by generators, with a base and strong
/// generating set maintained by the Schreier-Sims algorithm.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    n: usize,
    gens: Vec<Permutation>,
    strong: Vec<Vec<u32>>,
    strong_inv: Vec<Vec<u32>>,
    levels: Vec<Level>,
    known_base: Vec<u32>,
    is_base: Vec<bool>,
    explicit_used: usize,
}

/// One factor of a product evaluated point by point.
enum Step {
    Perm(Vec<u32>),
    Gen(u32),
    /// Apply the strong generators in this order.
    Path(Vec<u32>),
    /// Apply the inverses of the strong generators in this order.
    InvPath(Vec<u32>),
    Table(usize, usize, bool),
}

impl PermutationGroup {
    /// The trivial group of degree `n`.
    pub fn new(n: usize) -> Self {
        PermutationGroup {
            n,
            gens: Vec::new(),
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: Vec::new(),
            known_base: (0..n as u32).collect(),
            is_base: vec![false; n],
            explicit_used: 0,
        }
    }

    /// Generated by the given permutations.
    pub fn from_generators(n: usize, gens: &[Permutation]) -> Result<Self> {
        let mut g = Self::new(n);
        for p in gens {
            g.extend(p)?;
        }
        Ok(g)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// The generators that were new when added.
    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    /// The base, 1-based.
    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point + 1).collect()
    }

    /// Strong generators, as permutations.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.strong.iter().map(|s| Permutation::from_zero_based(s.clone())).collect()
    }

    /// Orbit lengths along the base.
    pub fn transversal_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Declares a sequence of points (1-based) that only the identity fixes
    /// pointwise. Base points are then preferred from this sequence and
    /// identity tests only look at these points.
    pub fn set_known_base(&mut self, points: &[u32]) -> Result<()> {
        let k: Vec<u32> = points
            .iter()
            .map(|&v| {
                if v == 0 || v as usize > self.n {
                    Err(Error::VertexOutOfRange { vertex: v as usize, n: self.n })
                } else {
                    Ok(v - 1)
                }
            })
            .collect::<Result<_>>()?;
        if !self.gens.is_empty() {
            for s in &self.strong {
                if k.iter().all(|&x| s[x as usize] == x) {
                    return Err(Error::Domain("known base is fixed by a non-identity element".into()));
                }
            }
        }
        self.known_base = k;
        if !self.levels.is_empty() {
            let prefix: Vec<u32> = Vec::new();
            self.rebuild(&prefix);
        }
        Ok(())
    }

    fn check_degree(&self, p: &Permutation) -> Result<()> {
        if p.degree() != self.n {
            Err(Error::SizeMismatch { left: self.n, right: p.degree() })
        } else {
            Ok(())
        }
    }

    /// Adds `p` as a generator. Returns false when `p` already belonged to
    /// the group.
    pub fn extend(&mut self, p: &Permutation) -> Result<bool> {
        self.check_degree(p)?;
        let steps = vec![Step::Perm(p.img.clone())];
        match self.sift(steps, 0) {
            None => Ok(false),
            Some((h, j)) => {
                self.gens.push(p.clone());
                self.add_strong(h, 0, j);
                self.complete();
                Ok(true)
            }
        }
    }

    /// True when `p` lies in the group.
    pub fn membership(&self, p: &Permutation) -> Result<bool> {
        self.check_degree(p)?;
        Ok(self.sift(vec![Step::Perm(p.img.clone())], 0).is_none())
    }

    /// Exact group order: the product of the transversal lengths.
    pub fn order(&self) -> BigUint {
        let mut o = BigUint::one();
        for l in &self.levels {
            o *= BigUint::from(l.orbit.len());
        }
        o
    }

    /// Partition of `points` (1-based) into orbits; each orbit is sorted, so
    /// its first element is the representative. Orbits are listed by
    /// representative.
    pub fn orbits(&self, points: &[u32]) -> Vec<Vec<u32>> {
        let root = orbit_roots(self.n, self.gens.iter().map(|g| g.img.as_slice()));
        group_points(points, &root)
    }

    /// For every point (0-based), the smallest point of its orbit under the
    /// subgroup generated by the strong generators fixing `fixed` (0-based)
    /// pointwise. When `fixed` is a prefix of the base this is the orbit
    /// partition of the full pointwise stabilizer.
    pub(crate) fn stabilizer_orbit_roots(&self, fixed: &[u32]) -> Vec<u32> {
        let k = fixed.len();
        if k <= self.levels.len() && self.levels[..k].iter().zip(fixed).all(|(l, &f)| l.point == f) {
            if k == self.levels.len() {
                return (0..self.n as u32).collect();
            }
            let gens = self.levels[k].gens.iter().map(|&i| self.strong[i as usize].as_slice());
            return orbit_roots(self.n, gens);
        }
        let gens = self
            .strong
            .iter()
            .filter(|s| fixed.iter().all(|&f| s[f as usize] == f))
            .map(|s| s.as_slice());
        orbit_roots(self.n, gens)
    }

    /// True when the base starts with `prefix` (0-based).
    pub(crate) fn base_starts_with(&self, prefix: &[u32]) -> bool {
        prefix.len() <= self.levels.len() && self.levels.iter().zip(prefix).all(|(l, &p)| l.point == p)
    }

    /// Changes the base so that it starts with `prefix` (0-based). Levels
    /// already agreeing with `prefix` are kept; the stabilizer below them is
    /// rebuilt from its strong generators.
    pub(crate) fn rebase(&mut self, prefix: &[u32]) {
        if self.base_starts_with(prefix) {
            return;
        }
        let k = self.levels.iter().zip(prefix).take_while(|(l, &p)| l.point == p).count();
        if k == 0 {
            self.rebuild(prefix);
            return;
        }
        let gens: Vec<u32> = self.levels.get(k).map(|l| l.gens.clone()).unwrap_or_default();
        for l in self.levels.drain(k..) {
            self.is_base[l.point as usize] = false;
            if let Some((u, _)) = &l.explicit {
                self.explicit_used -= 2 * u.len() * self.n;
            }
        }
        for &b in &prefix[k..] {
            if !self.is_base[b as usize] {
                self.push_level(b);
            }
        }
        for g in gens {
            if let Some((h, j)) = self.sift(vec![Step::Gen(g)], k) {
                self.add_strong(h, k, j);
                self.complete();
            }
        }
    }

    /// Pointwise stabilizer of `fixed` (1-based), computed by rebuilding the
    /// chain with `fixed` as a base prefix.
    pub fn stabilizer(&self, fixed: &[u32]) -> Result<PermutationGroup> {
        let mut pts = Vec::with_capacity(fixed.len());
        for &v in fixed {
            if v == 0 || v as usize > self.n {
                return Err(Error::VertexOutOfRange { vertex: v as usize, n: self.n });
            }
            if pts.contains(&(v - 1)) {
                return Err(Error::Domain(format!("point {v} repeated")));
            }
            pts.push(v - 1);
        }
        let mut g = self.clone();
        g.rebase(&pts);
        let k = pts.len();
        let mut out = PermutationGroup::new(self.n);
        out.known_base = self.known_base.clone();
        if k >= g.levels.len() {
            return Ok(out);
        }
        let mut keep: Vec<u32> = g.levels[k..].iter().flat_map(|l| l.gens.iter().copied()).collect();
        keep.sort_unstable();
        keep.dedup();
        let mut remap = vec![NONE; g.strong.len()];
        for &i in &keep {
            remap[i as usize] = out.strong.len() as u32;
            out.strong.push(g.strong[i as usize].clone());
            out.strong_inv.push(g.strong_inv[i as usize].clone());
        }
        for &i in &g.levels[k].gens {
            out.gens.push(Permutation::from_zero_based(g.strong[i as usize].clone()));
        }
        for mut l in g.levels.drain(k..) {
            l.gens = l.gens.iter().map(|&i| remap[i as usize]).collect();
            l.edge = l.edge.iter().map(|&e| if e == ROOT { ROOT } else { remap[e as usize] }).collect();
            if let Some((u, _)) = &l.explicit {
                out.explicit_used += 2 * u.len() * self.n;
            }
            out.is_base[l.point as usize] = true;
            out.levels.push(l);
        }
        Ok(out)
    }

    fn rebuild(&mut self, prefix: &[u32]) {
        let gens = std::mem::take(&mut self.gens);
        let known = std::mem::take(&mut self.known_base);
        *self = PermutationGroup::new(self.n);
        self.known_base = known;
        for &b in prefix {
            self.push_level(b);
        }
        for p in &gens {
            if let Some((h, j)) = self.sift(vec![Step::Perm(p.img.clone())], 0) {
                self.add_strong(h, 0, j);
                self.complete();
            }
        }
        self.gens = gens;
    }

    fn push_level(&mut self, point: u32) {
        let n = self.n;
        let mut slot = vec![NONE; n];
        slot[point as usize] = 0;
        let explicit = if self.explicit_used + 2 * n <= EXPLICIT_BUDGET {
            self.explicit_used += 2 * n;
            let id: Vec<u32> = (0..n as u32).collect();
            Some((vec![id.clone()], vec![id]))
        } else {
            None
        };
        self.is_base[point as usize] = true;
        self.levels.push(Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            slot,
            edge: vec![ROOT],
            checked: vec![0],
            cursor: 0,
            explicit,
        });
    }

    /// Registers `h` as a strong generator on levels `from..=to`, opening a
    /// new level when `to` is past the end.
    fn add_strong(&mut self, h: Vec<u32>, from: usize, to: usize) {
        let idx = self.strong.len() as u32;
        let mut inv = vec![0u32; self.n];
        for (x, &y) in h.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        if to == self.levels.len() {
            let b = self
                .known_base
                .iter()
                .copied()
                .find(|&x| h[x as usize] != x && !self.is_base[x as usize])
                .or_else(|| (0..self.n as u32).find(|&x| h[x as usize] != x))
                .expect("non-identity residue");
            self.push_level(b);
        }
        self.strong.push(h);
        self.strong_inv.push(inv);
        for l in from..=to {
            self.levels[l].gens.push(idx);
            self.levels[l].cursor = 0;
            self.grow_orbit(l, idx);
        }
    }

    /// Extends the orbit of level `l` after generator `idx` was added.
    fn grow_orbit(&mut self, l: usize, idx: u32) {
        let mut frontier = self.levels[l].orbit.len();
        let old = frontier;
        for k in 0..old {
            let p = self.levels[l].orbit[k];
            let q = self.strong[idx as usize][p as usize];
            self.add_orbit_point(l, k, idx, q);
        }
        while frontier < self.levels[l].orbit.len() {
            let p = self.levels[l].orbit[frontier];
            for gi in 0..self.levels[l].gens.len() {
                let g = self.levels[l].gens[gi];
                let q = self.strong[g as usize][p as usize];
                self.add_orbit_point(l, frontier, g, q);
            }
            frontier += 1;
        }
    }

    fn add_orbit_point(&mut self, l: usize, parent_slot: usize, gen: u32, q: u32) {
        if self.levels[l].contains(q) {
            return;
        }
        let n = self.n;
        let new_slot = self.levels[l].orbit.len();
        let over_budget = self.levels[l].explicit.is_some() && self.explicit_used + 2 * n > EXPLICIT_BUDGET;
        if over_budget {
            let (u, _) = self.levels[l].explicit.take().unwrap();
            self.explicit_used -= 2 * n * u.len();
        }
        let s = &self.strong[gen as usize];
        let si = &self.strong_inv[gen as usize];
        let level = &mut self.levels[l];
        if let Some((u, ui)) = &mut level.explicit {
            // u_q = u_p then s; its inverse is s^-1 then u_p^-1.
            let up = &u[parent_slot];
            let uq: Vec<u32> = up.iter().map(|&x| s[x as usize]).collect();
            let upi = &ui[parent_slot];
            let uqi: Vec<u32> = si.iter().map(|&x| upi[x as usize]).collect();
            u.push(uq);
            ui.push(uqi);
            self.explicit_used += 2 * n;
        }
        level.slot[q as usize] = new_slot as u32;
        level.orbit.push(q);
        level.edge.push(gen);
        level.checked.push(0);
        level.cursor = level.cursor.min(new_slot);
    }

    /// Strong generators along the tree path from the base point to `q`,
    /// in application order.
    fn path_to(&self, l: usize, q: u32) -> Vec<u32> {
        let level = &self.levels[l];
        let mut path = Vec::new();
        let mut x = q;
        loop {
            let e = level.edge[level.slot[x as usize] as usize];
            if e == ROOT {
                break;
            }
            path.push(e);
            x = self.strong_inv[e as usize][x as usize];
        }
        path.reverse();
        path
    }

    /// Factor applying the coset representative of `q` at level `l`.
    fn rep_step(&self, l: usize, q: u32) -> Step {
        if self.levels[l].explicit.is_some() {
            Step::Table(l, self.levels[l].slot[q as usize] as usize, false)
        } else {
            Step::Path(self.path_to(l, q))
        }
    }

    /// Factor applying the inverse coset representative of `q` at level `l`.
    fn rep_inv_step(&self, l: usize, q: u32) -> Step {
        if self.levels[l].explicit.is_some() {
            Step::Table(l, self.levels[l].slot[q as usize] as usize, true)
        } else {
            let mut p = self.path_to(l, q);
            p.reverse();
            Step::InvPath(p)
        }
    }

    fn eval(&self, steps: &[Step], mut x: u32) -> u32 {
        for s in steps {
            x = match s {
                Step::Perm(p) => p[x as usize],
                Step::Gen(g) => self.strong[*g as usize][x as usize],
                Step::Path(path) => {
                    for &g in path {
                        x = self.strong[g as usize][x as usize];
                    }
                    x
                }
                Step::InvPath(path) => {
                    for &g in path {
                        x = self.strong_inv[g as usize][x as usize];
                    }
                    x
                }
                Step::Table(l, k, inv) => {
                    let (u, ui) = self.levels[*l].explicit.as_ref().unwrap();
                    if *inv {
                        ui[*k][x as usize]
                    } else {
                        u[*k][x as usize]
                    }
                }
            };
        }
        x
    }

    /// Sifts the product `steps` from level `from`. Returns `None` for a
    /// member of the chain's group, else the explicit residue and the level
    /// at which it dropped out (the number of levels when it fixes the whole
    /// base).
    fn sift(&self, mut steps: Vec<Step>, from: usize) -> Option<(Vec<u32>, usize)> {
        for j in from..self.levels.len() {
            let b = self.eval(&steps, self.levels[j].point);
            if !self.levels[j].contains(b) {
                return Some((self.materialize(&steps), j));
            }
            if b != self.levels[j].point {
                steps.push(self.rep_inv_step(j, b));
            }
        }
        for &x in &self.known_base {
            if !self.is_base[x as usize] && self.eval(&steps, x) != x {
                return Some((self.materialize(&steps), self.levels.len()));
            }
        }
        None
    }

    fn materialize(&self, steps: &[Step]) -> Vec<u32> {
        (0..self.n as u32).map(|x| self.eval(steps, x)).collect()
    }

    /// Checks Schreier generators, deepest pending level first, until every
    /// level's Schreier generators sift through the levels below it.
    fn complete(&mut self) {
        while let Some(l) = self.deepest_pending() {
            let k = self.levels[l].cursor;
            let total = self.levels[l].gens.len() as u32;
            let p = self.levels[l].orbit[k];
            while self.levels[l].checked[k] < total {
                let t = self.levels[l].checked[k];
                self.levels[l].checked[k] = t + 1;
                let s = self.levels[l].gens[t as usize];
                let q = self.strong[s as usize][p as usize];
                let level = &self.levels[l];
                let qs = level.slot[q as usize] as usize;
                if level.edge[qs] == s && self.strong_inv[s as usize][q as usize] == p {
                    let parent_slot = level.slot[p as usize] as usize;
                    // Tree edge into q from p: the Schreier generator is trivial.
                    if qs > parent_slot {
                        continue;
                    }
                }
                let steps = vec![self.rep_step(l, p), Step::Gen(s), self.rep_inv_step(l, q)];
                if let Some((h, j)) = self.sift(steps, l + 1) {
                    self.add_strong(h, l + 1, j);
                    break;
                }
            }
        }
    }

    fn deepest_pending(&mut self) -> Option<usize> {
        for l in (0..self.levels.len()).rev() {
            let level = &mut self.levels[l];
            let total = level.gens.len() as u32;
            while level.cursor < level.orbit.len() && level.checked[level.cursor] >= total {
                level.cursor += 1;
            }
            if level.cursor < level.orbit.len() {
                return Some(l);
            }
        }
        None
    }
}

/// Smallest point of each orbit, for every point (0-based), under the given
/// generators.
pub(crate) fn orbit_roots<'a>(n: usize, gens: impl Iterator<Item = &'a [u32]>) -> Vec<u32> {
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let px = parent[x as usize];
            parent[x as usize] = parent[px as usize];
            x = px;
        }
        x
    }
    for g in gens {
        for x in 0..n as u32 {
            let y = g[x as usize];
            if y != x {
                let a = find(&mut parent, x);
                let b = find(&mut parent, y);
                if a != b {
                    let (lo, hi) = (a.min(b), a.max(b));
                    parent[hi as usize] = lo;
                }
            }
        }
    }
    (0..n as u32).map(|x| find(&mut parent, x)).collect()
}

fn group_points(points: &[u32], root: &[u32]) -> Vec<Vec<u32>> {
    let mut by_root: std::collections::BTreeMap<u32, Vec<u32>> = Default::default();
    for &v in points {
        by_root.entry(root[v as usize - 1]).or_default().push(v);
    }
    let mut out: Vec<Vec<u32>> = by_root.into_values().collect();
    for o in &mut out {
        o.sort_unstable();
    }
    out.sort();
    out
}
