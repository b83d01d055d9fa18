//! Exact `r(l) = min_{|W| = l} r(W)` at small `n`, and heuristic constructions
//! that bound it from above at any `n`.
//!
//! Two exact routes:
//! * exhaustive: every subset of `V_n` (for `C(n,3) <= 24`), edge counts built
//!   up by a mask recurrence;
//! * branch and bound: include/exclude search over vertices, pruned by
//!   `edges so far + Σ (m smallest degrees into the chosen set) + r(m)` with
//!   `r(m)` for smaller `m` taken from earlier solves.
//!
//! Both use two facts about `G(n,3,1)`: it is vertex-transitive, so some optimum
//! contains the rank-0 vertex, and it is `d`-regular, so
//! `r(l) = r(C(n,3) − l) + d(2l − C(n,3))/2` by complementation.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use crate::combinatorics::binomial;
use crate::graph::{count_edges, is_edge, GraphParams, Vertex, VertexSet};
use crate::{Error, Result};

/// Largest `C(n,3)` handled by the exhaustive route.
pub const MAX_EXHAUSTIVE_VERTICES: usize = 24;

/// Largest `n` handled by branch and bound (its bitsets are single `u64` words).
pub const MAX_BNB_N: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleMethod {
    Exhaustive,
    BranchAndBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub n: usize,
    pub l: usize,
    pub min_edges: u64,
    pub witness: VertexSet,
    pub method: OracleMethod,
}

/// Solver for `r(l)` over one `n`, caching every solved `l`.
pub struct MinEdgesOracle {
    params: GraphParams,
    method: OracleMethod,
    adj: Vec<u64>,
    solved: Vec<Option<(u64, u64)>>,
    node_budget: Option<u64>,
}

impl MinEdgesOracle {
    /// Exhaustive when `C(n,3) <= 24`, branch and bound otherwise.
    pub fn new(params: GraphParams) -> Result<Self> {
        if params.vertex_count() <= MAX_EXHAUSTIVE_VERTICES {
            Self::exhaustive(params)
        } else {
            Self::branch_and_bound(params)
        }
    }

    pub fn exhaustive(params: GraphParams) -> Result<Self> {
        let count = params.vertex_count();
        if count > MAX_EXHAUSTIVE_VERTICES {
            return Err(Error::CapExceeded {
                what: "exhaustive oracle |V_n|",
                size: count,
                cap: MAX_EXHAUSTIVE_VERTICES,
            });
        }
        let mut oracle = Self::with_method(params, OracleMethod::Exhaustive);
        oracle.run_exhaustive();
        Ok(oracle)
    }

    pub fn branch_and_bound(params: GraphParams) -> Result<Self> {
        if params.n() > MAX_BNB_N {
            return Err(Error::CapExceeded {
                what: "branch-and-bound oracle n",
                size: params.n(),
                cap: MAX_BNB_N,
            });
        }
        Ok(Self::with_method(params, OracleMethod::BranchAndBound))
    }

    fn with_method(params: GraphParams, method: OracleMethod) -> Self {
        let verts: Vec<Vertex> = params.vertices().collect();
        let adj = verts
            .iter()
            .map(|x| {
                verts
                    .iter()
                    .enumerate()
                    .filter(|(_, y)| is_edge(x, y))
                    .fold(0u64, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        Self {
            params,
            method,
            adj,
            solved: vec![None; verts.len() + 1],
            node_budget: None,
        }
    }

    /// Limits the number of search nodes per solve; exceeding it is an error.
    pub fn with_node_budget(mut self, budget: u64) -> Self {
        self.node_budget = Some(budget);
        self
    }

    pub fn params(&self) -> GraphParams {
        self.params
    }

    pub fn method(&self) -> OracleMethod {
        self.method
    }

    pub fn solve(&mut self, l: usize) -> Result<OracleResult> {
        let count = self.params.vertex_count();
        if l > count {
            return Err(Error::CardinalityOutOfRange {
                l: l.to_string(),
                max: count as u64,
            });
        }
        let (min_edges, mask) = self.solve_mask(l)?;
        let witness = VertexSet::from_ranks(self.params.n(), ones(mask))?;
        debug_assert_eq!(count_edges(&witness), min_edges);
        Ok(OracleResult {
            n: self.params.n(),
            l,
            min_edges,
            witness,
            method: self.method,
        })
    }

    fn full_mask(&self) -> u64 {
        let count = self.params.vertex_count();
        if count == 64 {
            u64::MAX
        } else {
            (1u64 << count) - 1
        }
    }

    fn mask_edges(&self, mask: u64) -> u64 {
        ones(mask)
            .map(|v| (self.adj[v] & mask).count_ones() as u64)
            .sum::<u64>()
            / 2
    }

    fn solve_mask(&mut self, l: usize) -> Result<(u64, u64)> {
        if let Some(hit) = self.solved[l] {
            return Ok(hit);
        }
        let count = self.params.vertex_count();
        let result = if l <= 1 {
            (0, if l == 1 { 1 } else { 0 })
        } else if 2 * l > count {
            let (low, mask) = self.solve_mask(count - l)?;
            let shift = self.params.degree() * (2 * l - count) as u64 / 2;
            (low + shift, !mask & self.full_mask())
        } else {
            for m in 0..l {
                self.solve_mask(m)?;
            }
            self.run_branch_and_bound(l)?
        };
        self.solved[l] = Some(result);
        Ok(result)
    }

    fn run_exhaustive(&mut self) {
        let count = self.params.vertex_count();
        let total = 1usize << count;
        let mut edges = vec![0u16; total];
        let mut best: Vec<Option<(u64, u64)>> = vec![None; count + 1];
        best[0] = Some((0, 0));
        for mask in 1..total {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let e = edges[rest] + (self.adj[low] & rest as u64).count_ones() as u16;
            edges[mask] = e;
            let size = mask.count_ones() as usize;
            let e = e as u64;
            if best[size].is_none_or(|(b, _)| e < b) {
                best[size] = Some((e, mask as u64));
            }
        }
        self.solved = best;
    }

    fn run_branch_and_bound(&self, l: usize) -> Result<(u64, u64)> {
        let lower: Vec<u64> = (0..l)
            .map(|m| self.solved[m].expect("smaller sizes solved first").0)
            .collect();
        let (ub, ub_mask) = self.initial_upper(l);
        let search = Search {
            adj: &self.adj,
            l,
            lower,
            best: AtomicU64::new(ub),
            witness: Mutex::new(ub_mask),
            nodes: AtomicU64::new(0),
            budget: self.node_budget,
        };
        let avail = self.full_mask() & !1;
        search.dfs(1, avail, 1, 0, 0)?;
        let best = search.best.load(Ordering::SeqCst);
        let mask = *search.witness.lock().expect("witness lock");
        Ok((best, mask))
    }

    /// Greedy completion of the previous witness (or of the rank-0 vertex).
    fn initial_upper(&self, l: usize) -> (u64, u64) {
        let greedy_from = |start: u64| {
            let mut mask = start;
            while (mask.count_ones() as usize) < l {
                let v = ones(self.full_mask() & !mask)
                    .min_by_key(|&v| ((self.adj[v] & mask).count_ones(), v))
                    .expect("enough vertices remain");
                mask |= 1 << v;
            }
            (self.mask_edges(mask), mask)
        };
        let mut best = greedy_from(1);
        if let Some((_, prev)) = self.solved[l - 1] {
            let cand = greedy_from(prev);
            if cand.0 < best.0 {
                best = cand;
            }
        }
        best
    }
}

struct Search<'a> {
    adj: &'a [u64],
    l: usize,
    lower: Vec<u64>,
    best: AtomicU64,
    witness: Mutex<u64>,
    nodes: AtomicU64,
    budget: Option<u64>,
}

/// Depth down to which both branches are explored in parallel.
#[cfg(feature = "parallel")]
const PARALLEL_DEPTH: usize = 8;

impl Search<'_> {
    fn dfs(&self, chosen: u64, avail: u64, k: usize, edges: u64, depth: usize) -> Result<()> {
        let visited = self.nodes.fetch_add(1, Ordering::Relaxed);
        if let Some(budget) = self.budget {
            if visited >= budget {
                return Err(Error::BudgetExhausted(budget));
            }
        }
        let m = self.l - k;
        if m == 0 {
            self.offer(edges, chosen);
            return Ok(());
        }
        if (avail.count_ones() as usize) < m {
            return Ok(());
        }
        // degrees into the chosen set, bucketed
        let mut buckets = [0u32; 65];
        let mut pick = (u32::MAX, 0usize);
        for v in ones(avail) {
            let d = (self.adj[v] & chosen).count_ones();
            buckets[d as usize] += 1;
            if d < pick.0 {
                pick = (d, v);
            }
        }
        let mut need = m as u32;
        let mut cheapest = 0u64;
        for (d, &c) in buckets.iter().enumerate() {
            let take = c.min(need);
            cheapest += d as u64 * take as u64;
            need -= take;
            if need == 0 {
                break;
            }
        }
        if edges + cheapest + self.lower[m] >= self.best.load(Ordering::Relaxed) {
            return Ok(());
        }
        let (d, v) = pick;
        let bit = 1u64 << v;
        let include = || {
            self.dfs(
                chosen | bit,
                avail & !bit,
                k + 1,
                edges + d as u64,
                depth + 1,
            )
        };
        let exclude = || self.dfs(chosen, avail & !bit, k, edges, depth + 1);
        #[cfg(feature = "parallel")]
        if depth < PARALLEL_DEPTH {
            let (a, b) = rayon::join(include, exclude);
            return a.and(b);
        }
        include()?;
        exclude()
    }

    fn offer(&self, edges: u64, mask: u64) {
        if edges >= self.best.load(Ordering::Relaxed) {
            return;
        }
        let mut w = self.witness.lock().expect("witness lock");
        // re-check under the lock so value and witness stay paired
        if edges < self.best.load(Ordering::SeqCst) {
            self.best.store(edges, Ordering::SeqCst);
            *w = mask;
        }
    }
}

fn ones(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let i = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(i)
    })
}

/// Exact `r(l)`, choosing the route by size. Sizes `0, 1, C(n,3) − 1, C(n,3)`
/// are answered for any `n` since every set of such a size is equivalent.
pub fn min_edges_exact(params: GraphParams, l: usize) -> Result<OracleResult> {
    let count = params.vertex_count();
    if l > count {
        return Err(Error::CardinalityOutOfRange {
            l: l.to_string(),
            max: count as u64,
        });
    }
    if l <= 1 || l + 1 >= count {
        let n = params.n();
        let (min_edges, witness) = match l {
            0 => (0, VertexSet::empty(n)),
            1 if count > 2 || l + 1 < count => (0, VertexSet::from_ranks(n, [0])?),
            _ if l == count => (params.total_edges(), params.full_set()),
            _ => {
                let mut w = params.full_set();
                w.remove(&Vertex::from_rank(0, n)?);
                (count_edges(&w), w)
            }
        };
        return Ok(OracleResult {
            n,
            l,
            min_edges,
            witness,
            method: OracleMethod::Exhaustive,
        });
    }
    MinEdgesOracle::new(params)?.solve(l)
}

/// Exact values on a grid, rows ordered by `(n, l)`. Sizes above `C(n,3)` are skipped.
pub fn min_edges_table<N, L>(ns: N, ls: L) -> Result<Vec<OracleResult>>
where
    N: IntoIterator<Item = usize>,
    L: IntoIterator<Item = usize> + Clone,
{
    let mut ns: Vec<usize> = ns.into_iter().collect();
    ns.sort_unstable();
    ns.dedup();
    let mut rows = Vec::new();
    for n in ns {
        let params = GraphParams::new(n)?;
        let mut ls: Vec<usize> = ls
            .clone()
            .into_iter()
            .filter(|&l| l <= params.vertex_count())
            .collect();
        ls.sort_unstable();
        ls.dedup();
        if ls.is_empty() {
            continue;
        }
        let mut oracle = MinEdgesOracle::new(params)?;
        for l in ls {
            rows.push(oracle.solve(l)?);
        }
    }
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstructionKind {
    /// Families `{i, j, x}` on disjoint pairs first, then on the remaining pairs.
    PairStars,
    /// Full 4-sets on a partition of the ground set first, then the other 4-sets.
    Type2Blocks,
    /// Partition 4-sets, then pair stars.
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub kind: ConstructionKind,
    pub l: usize,
    pub produced: VertexSet,
    /// `r(produced)`, an upper bound on `r(l)`.
    pub edges: u64,
}

fn pair_order(n: usize) -> Vec<(usize, usize)> {
    let disjoint: Vec<(usize, usize)> = (1..n).step_by(2).map(|i| (i, i + 1)).collect();
    let mut rest = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if !disjoint.contains(&(i, j)) {
                rest.push((i, j));
            }
        }
    }
    disjoint.into_iter().chain(rest).collect()
}

fn quad_order(n: usize) -> Vec<[usize; 4]> {
    let partition: Vec<[usize; 4]> = (1..=n.saturating_sub(3))
        .step_by(4)
        .map(|i| [i, i + 1, i + 2, i + 3])
        .collect();
    partition
}

pub fn min_edges_upper_construction(
    params: GraphParams,
    l: usize,
    kind: ConstructionKind,
) -> Result<Construction> {
    let n = params.n();
    let count = params.vertex_count();
    if l > count {
        return Err(Error::CardinalityOutOfRange {
            l: l.to_string(),
            max: count as u64,
        });
    }
    let mut produced = VertexSet::empty(n);
    let mut push = |v: Vertex, produced: &mut VertexSet| {
        if produced.len() < l {
            produced.insert(v);
        }
    };
    let add_quad =
        |q: [usize; 4], produced: &mut VertexSet, push: &mut dyn FnMut(Vertex, &mut VertexSet)| {
            for skip in (0..4).rev() {
                let t: Vec<usize> = (0..4).filter(|&i| i != skip).map(|i| q[i]).collect();
                push(
                    Vertex::new(t[0], t[1], t[2], n).expect("elements of a 4-set"),
                    produced,
                );
            }
        };
    let add_stars = |produced: &mut VertexSet, push: &mut dyn FnMut(Vertex, &mut VertexSet)| {
        for (i, j) in pair_order(n) {
            for x in (1..=n).filter(|&x| x != i && x != j) {
                push(
                    Vertex::new(i, j, x, n).expect("distinct elements"),
                    produced,
                );
            }
        }
    };
    match kind {
        ConstructionKind::PairStars => add_stars(&mut produced, &mut push),
        ConstructionKind::Type2Blocks => {
            for q in quad_order(n) {
                add_quad(q, &mut produced, &mut push);
            }
            // remaining 4-sets in lexicographic order cover every triple
            for d in 4..=n {
                for c in 3..d {
                    for b in 2..c {
                        for a in 1..b {
                            add_quad([a, b, c, d], &mut produced, &mut push);
                        }
                    }
                }
            }
            // n = 3 has no 4-sets
            for v in params.vertices() {
                push(v, &mut produced);
            }
        }
        ConstructionKind::Mixed => {
            for q in quad_order(n) {
                add_quad(q, &mut produced, &mut push);
            }
            add_stars(&mut produced, &mut push);
        }
    }
    debug_assert_eq!(produced.len(), l);
    let edges = count_edges(&produced);
    Ok(Construction {
        kind,
        l,
        produced,
        edges,
    })
}

/// Every feasible size `0..=C(n,3)`.
pub fn size_range(params: GraphParams) -> std::ops::RangeInclusive<usize> {
    0..=binomial(params.n() as u64, 3) as usize
}
