//! Star sets and the diameter `d(W)`.
//!
//! A star set is an independent set whose decomposition uses only type-1 and
//! type-3 groups. Its diameter is the size of its support, and `d(W)` is the
//! largest diameter of a star subset of `W`.
//!
//! The support of a star set is a disjoint union of blocks: single triples
//! (cover 3 elements) and sunflowers `{i,j,x_1},..,{i,j,x_k}` with `k >= 3`
//! (cover `k + 2`). The exact search packs such blocks element by element.

use crate::combinatorics::binomial;
use crate::graph::{count_edges, Vertex, VertexSet};
use crate::structure::decompose::{decompose, GroupKind};
use crate::structure::independent::{is_independent, IndependentSet};
use crate::{Error, Result};

/// Default cap on `|W|` for the exact diameter search.
pub const DEFAULT_DIAMETER_CAP: usize = 2000;

/// Whether a lone vertex counts as a (vacuous) type-3 component.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum StarMode {
    /// Any type-3 group is admitted, including a single vertex.
    #[default]
    Lenient,
    /// Type-3 groups need at least two pairwise disjoint vertices.
    Strict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiameterSearch {
    /// Exact packing search; errors above the cap.
    Exact { cap: usize },
    /// Greedy packing; the value is a certified lower bound.
    Heuristic,
    /// Exact up to the cap, heuristic above it.
    Auto { cap: usize },
}

impl Default for DiameterSearch {
    fn default() -> Self {
        DiameterSearch::Exact {
            cap: DEFAULT_DIAMETER_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiameterResult {
    pub value: usize,
    /// A star subset of `W` whose support has `value` elements.
    pub witness: VertexSet,
    /// False when the value came from the heuristic and is only a lower bound.
    pub exact: bool,
}

/// A validated star set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarSet {
    members: VertexSet,
    diameter: usize,
}

impl StarSet {
    pub fn new(members: VertexSet, mode: StarMode) -> Result<Self> {
        if !is_star_set(&members, mode) {
            return Err(Error::NotStarSet);
        }
        let diameter = members.support().len();
        Ok(Self { members, diameter })
    }

    pub fn members(&self) -> &VertexSet {
        &self.members
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }
}

pub fn is_star_set(a: &VertexSet, mode: StarMode) -> bool {
    if !is_independent(a) {
        return false;
    }
    let u = IndependentSet::new(a.clone()).expect("checked independent");
    let Ok(d) = decompose(&u) else { return false };
    d.groups.iter().all(|g| match g.kind {
        GroupKind::Type1 => true,
        GroupKind::Type2 => false,
        GroupKind::Type3 => mode == StarMode::Lenient || g.len() >= 2,
    })
}

/// `d(A)` for a star set `A`: the size of its support.
pub fn star_diameter(a: &VertexSet, mode: StarMode) -> Result<usize> {
    Ok(StarSet::new(a.clone(), mode)?.diameter())
}

pub fn diameter(w: &VertexSet, search: DiameterSearch, mode: StarMode) -> Result<DiameterResult> {
    match search {
        DiameterSearch::Exact { cap } => {
            check_cap(w, cap)?;
            Packing::new(w)?.exact(mode)
        }
        DiameterSearch::Heuristic => Ok(Packing::new(w)?.greedy(mode)),
        DiameterSearch::Auto { cap } => {
            let packing = Packing::new(w);
            match packing {
                Ok(p) if w.len() <= cap => p.exact(mode),
                Ok(p) => Ok(p.greedy(mode)),
                // support too wide for the exact kernel
                Err(_) => Ok(greedy_wide(w, mode)),
            }
        }
    }
}

fn check_cap(w: &VertexSet, cap: usize) -> Result<()> {
    if w.len() > cap {
        return Err(Error::CapExceeded {
            what: "diameter",
            size: w.len(),
            cap,
        });
    }
    Ok(())
}

/// `r_ρ(W)`: `r(W)` when `d(W) <= ρ`, otherwise the sentinel `C(n,5)`.
pub fn r_rho(w: &VertexSet, rho: usize, mode: StarMode) -> Result<u64> {
    if rho > w.n() {
        return Err(Error::RhoOutOfRange {
            rho: rho as u64,
            n: w.n() as u64,
        });
    }
    let d = diameter(w, DiameterSearch::default(), mode)?;
    if d.value > rho {
        Ok(binomial(w.n() as u64, 5))
    } else {
        Ok(count_edges(w))
    }
}

const MAX_PACKING_ELEMENTS: usize = 128;

#[derive(Clone, Copy, Debug)]
enum Block {
    Triple(usize),
    Sunflower { a: usize, b: usize, petals: u128 },
}

impl Block {
    fn is_single(&self) -> bool {
        matches!(self, Block::Triple(_))
    }
}

/// Element-local view of `W` for block packing. Elements of the support are
/// relabelled `0..m` with `m <= 128`.
struct Packing<'a> {
    w: &'a VertexSet,
    labels: Vec<usize>,
    triples: Vec<u128>,
    by_element: Vec<Vec<usize>>,
    petals: Vec<u128>,
}

struct Best {
    value: usize,
    blocks: Vec<Block>,
}

impl<'a> Packing<'a> {
    fn new(w: &'a VertexSet) -> Result<Self> {
        let labels = w.support();
        let m = labels.len();
        if m > MAX_PACKING_ELEMENTS {
            return Err(Error::CapExceeded {
                what: "diameter support",
                size: m,
                cap: MAX_PACKING_ELEMENTS,
            });
        }
        let mut local = vec![usize::MAX; w.n() + 1];
        for (i, &e) in labels.iter().enumerate() {
            local[e] = i;
        }
        let mut triples = Vec::with_capacity(w.len());
        let mut by_element = vec![Vec::new(); m];
        let mut petals = vec![0u128; m * m];
        for v in w.iter() {
            let [a, b, c] = v.elements().map(|e| local[e]);
            let idx = triples.len();
            triples.push(bit(a) | bit(b) | bit(c));
            for e in [a, b, c] {
                by_element[e].push(idx);
            }
            for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
                petals[x * m + y] |= bit(z);
                petals[y * m + x] |= bit(z);
            }
        }
        Ok(Self {
            w,
            labels,
            triples,
            by_element,
            petals,
        })
    }

    fn m(&self) -> usize {
        self.labels.len()
    }

    fn petals(&self, a: usize, b: usize) -> u128 {
        self.petals[a * self.m() + b]
    }

    /// Elements of `free` that some triple lying entirely inside `free` covers.
    fn coverable(&self, free: u128) -> u128 {
        self.triples
            .iter()
            .filter(|&&t| t & !free == 0)
            .fold(0, |acc, &t| acc | t)
    }

    fn exact(&self, mode: StarMode) -> Result<DiameterResult> {
        let mut best = Best {
            value: 0,
            blocks: Vec::new(),
        };
        let all = if self.m() == 128 {
            u128::MAX
        } else {
            (1u128 << self.m()) - 1
        };
        let mut stack = Vec::new();
        self.search(all, 0, &mut stack, mode, &mut best);
        Ok(self.result(&best.blocks, mode, true))
    }

    fn search(
        &self,
        free: u128,
        covered: usize,
        stack: &mut Vec<Block>,
        mode: StarMode,
        best: &mut Best,
    ) {
        let free = free & self.coverable(free);
        if covered + free.count_ones() as usize <= best.value {
            return;
        }
        if free == 0 {
            let value = leaf_value(covered, stack, mode);
            if value > best.value {
                best.value = value;
                best.blocks = stack.clone();
            }
            return;
        }
        let e = free.trailing_zeros() as usize;
        let eb = bit(e);

        // e as kernel element of a sunflower {e, f}
        for f in ones(free & !eb) {
            let pool = self.petals(e, f) & free & !eb & !bit(f);
            if pool.count_ones() < 3 {
                continue;
            }
            for s in submasks(pool).filter(|s| s.count_ones() >= 3) {
                stack.push(Block::Sunflower {
                    a: e,
                    b: f,
                    petals: s,
                });
                self.search(
                    free & !eb & !bit(f) & !s,
                    covered + 2 + s.count_ones() as usize,
                    stack,
                    mode,
                    best,
                );
                stack.pop();
            }
        }
        // e as a petal of a sunflower with kernel {a, b}
        let rest = free & !eb;
        for a in ones(rest) {
            for b in ones(rest & above(a)) {
                let pool = self.petals(a, b);
                if pool & eb == 0 {
                    continue;
                }
                let others = pool & rest & !bit(a) & !bit(b);
                if others.count_ones() < 2 {
                    continue;
                }
                for s in submasks(others).filter(|s| s.count_ones() >= 2) {
                    let petals = s | eb;
                    stack.push(Block::Sunflower { a, b, petals });
                    self.search(
                        free & !bit(a) & !bit(b) & !petals,
                        covered + 2 + petals.count_ones() as usize,
                        stack,
                        mode,
                        best,
                    );
                    stack.pop();
                }
            }
        }
        // e in a lone triple
        for &t in &self.by_element[e] {
            let mask = self.triples[t];
            if mask & !free == 0 {
                stack.push(Block::Triple(t));
                self.search(free & !mask, covered + 3, stack, mode, best);
                stack.pop();
            }
        }
        // e left uncovered
        self.search(free & !eb, covered, stack, mode, best);
    }

    fn greedy(&self, mode: StarMode) -> DiameterResult {
        let m = self.m();
        let mut free = if m == 128 {
            u128::MAX
        } else {
            (1u128 << m) - 1
        };
        let mut blocks = Vec::new();
        loop {
            let mut pick: Option<(usize, Block)> = None;
            for a in ones(free) {
                for b in ones(free & above(a)) {
                    let pool = self.petals(a, b) & free & !bit(a) & !bit(b);
                    let k = pool.count_ones() as usize;
                    if k >= 3 && pick.is_none_or(|(w, _)| 2 + k > w) {
                        pick = Some((2 + k, Block::Sunflower { a, b, petals: pool }));
                    }
                }
            }
            if pick.is_none() {
                if let Some(t) = self.triples.iter().position(|&t| t & !free == 0) {
                    pick = Some((3, Block::Triple(t)));
                }
            }
            let Some((_, block)) = pick else { break };
            free &= !self.block_mask(&block);
            blocks.push(block);
        }
        self.result(&blocks, mode, false)
    }

    fn block_mask(&self, block: &Block) -> u128 {
        match *block {
            Block::Triple(t) => self.triples[t],
            Block::Sunflower { a, b, petals } => bit(a) | bit(b) | petals,
        }
    }

    fn result(&self, blocks: &[Block], mode: StarMode, exact: bool) -> DiameterResult {
        let drop_single =
            mode == StarMode::Strict && blocks.iter().filter(|b| b.is_single()).count() == 1;
        let n = self.w.n();
        let mut witness = VertexSet::empty(n);
        let triples: Vec<Vertex> = self.w.to_vec();
        for block in blocks {
            match *block {
                Block::Triple(t) => {
                    if !drop_single {
                        witness.insert(triples[t]);
                    }
                }
                Block::Sunflower { a, b, petals } => {
                    for x in ones(petals) {
                        let v = Vertex::new(self.labels[a], self.labels[b], self.labels[x], n)
                            .expect("labels come from valid vertices");
                        witness.insert(v);
                    }
                }
            }
        }
        let value = witness.support().len();
        DiameterResult {
            value,
            witness,
            exact,
        }
    }
}

fn leaf_value(covered: usize, stack: &[Block], mode: StarMode) -> usize {
    if mode == StarMode::Strict && stack.iter().filter(|b| b.is_single()).count() == 1 {
        covered - 3
    } else {
        covered
    }
}

/// Greedy fallback for supports wider than the packing kernel: collect the
/// largest sunflowers and then disjoint triples, tracking used elements directly.
fn greedy_wide(w: &VertexSet, mode: StarMode) -> DiameterResult {
    let n = w.n();
    let mut used = vec![false; n + 1];
    let mut chosen: Vec<Vertex> = Vec::new();
    let mut singles = Vec::new();
    let verts = w.to_vec();
    loop {
        let mut best: Option<((usize, usize), Vec<Vertex>)> = None;
        let mut by_pair: std::collections::BTreeMap<(usize, usize), Vec<Vertex>> =
            Default::default();
        for v in &verts {
            if v.elements().iter().any(|&e| used[e]) {
                continue;
            }
            for (a, b) in v.pairs() {
                by_pair.entry((a, b)).or_default().push(*v);
            }
        }
        for (pair, vs) in by_pair {
            if vs.len() >= 3 && best.as_ref().is_none_or(|(_, b)| vs.len() > b.len()) {
                best = Some((pair, vs));
            }
        }
        let Some((_, vs)) = best else { break };
        for v in vs {
            for e in v.elements() {
                used[e] = true;
            }
            chosen.push(v);
        }
    }
    for v in &verts {
        if v.elements().iter().all(|&e| !used[e]) {
            for e in v.elements() {
                used[e] = true;
            }
            singles.push(*v);
        }
    }
    if !(mode == StarMode::Strict && singles.len() == 1) {
        chosen.extend(singles);
    }
    let witness = VertexSet::from_vertices(n, chosen).expect("subset of W");
    DiameterResult {
        value: witness.support().len(),
        witness,
        exact: false,
    }
}

#[inline]
fn bit(i: usize) -> u128 {
    1u128 << i
}

/// Bits strictly above `i`.
#[inline]
fn above(i: usize) -> u128 {
    if i >= 127 {
        0
    } else {
        !((1u128 << (i + 1)) - 1)
    }
}

fn ones(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let i = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(i)
    })
}

/// Non-empty submasks of `mask`, largest first.
fn submasks(mask: u128) -> impl Iterator<Item = u128> {
    let mut cur = Some(mask);
    std::iter::from_fn(move || {
        let s = cur?;
        if s == 0 {
            cur = None;
            return None;
        }
        cur = Some((s - 1) & mask);
        Some(s)
    })
}
