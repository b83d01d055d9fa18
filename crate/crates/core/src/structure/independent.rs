use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bitset::Bitset;
use crate::graph::{count_edges, is_edge, GraphParams, LocalGraph, VertexSet};
use crate::{Error, Result};

/// Default cap on `|W|` for exact maximum independent set search.
pub const DEFAULT_MIS_CAP: usize = 256;

/// Default cap on `n` for [`alpha_exact`].
pub const DEFAULT_ALPHA_CAP_N: usize = 9;

/// A vertex set with no internal edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependentSet(VertexSet);

impl IndependentSet {
    pub fn new(members: VertexSet) -> Result<Self> {
        if !is_independent(&members) {
            return Err(Error::NotIndependent);
        }
        Ok(Self(members))
    }

    pub fn members(&self) -> &VertexSet {
        &self.0
    }

    pub fn into_inner(self) -> VertexSet {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl AsRef<VertexSet> for IndependentSet {
    fn as_ref(&self) -> &VertexSet {
        &self.0
    }
}

pub fn is_independent(w: &VertexSet) -> bool {
    count_edges(w) == 0
}

/// `I ⊆ H`, `I` independent, and every vertex of `H \ I` has a neighbour in `I`.
pub fn is_maximal_independent(i: &VertexSet, h: &VertexSet) -> bool {
    if !i.is_subset(h) || !is_independent(i) {
        return false;
    }
    let members = i.to_vec();
    h.iter()
        .filter(|v| !i.contains(v))
        .all(|v| members.iter().any(|u| is_edge(u, &v)))
}

/// Visit order for [`greedy_maximal_independent_set`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GreedyOrder {
    Rank,
    Shuffled(u64),
}

pub fn greedy_maximal_independent_set(w: &VertexSet, order: GreedyOrder) -> IndependentSet {
    let mut verts = w.to_vec();
    if let GreedyOrder::Shuffled(seed) = order {
        verts.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let mut chosen: Vec<_> = Vec::new();
    for v in verts {
        if chosen.iter().all(|u| !is_edge(u, &v)) {
            chosen.push(v);
        }
    }
    IndependentSet(VertexSet::from_vertices(w.n(), chosen).expect("subset of a valid set"))
}

pub fn max_independent_set(w: &VertexSet) -> Result<IndependentSet> {
    max_independent_set_with_cap(w, DEFAULT_MIS_CAP)
}

/// Exact maximum independent set of `W`, searched as a maximum clique of the
/// compatibility graph (pairs meeting in 0 or 2 elements) with greedy colouring
/// bounds. Vertices are visited in rank order, so the witness is deterministic.
pub fn max_independent_set_with_cap(w: &VertexSet, cap: usize) -> Result<IndependentSet> {
    let mut search = CliqueSearch::prepare(w, cap)?;
    search.collect_all = false;
    search.run();
    let best = std::mem::take(&mut search.best)
        .into_iter()
        .next()
        .unwrap_or_default();
    Ok(IndependentSet(search.to_set(w.n(), &best)))
}

/// Every maximum independent set of `W`, in the order the search finds them.
pub fn all_maximum_independent_sets(w: &VertexSet, cap: usize) -> Result<Vec<IndependentSet>> {
    let mut search = CliqueSearch::prepare(w, cap)?;
    search.collect_all = true;
    search.run();
    let n = w.n();
    let sets = std::mem::take(&mut search.best);
    Ok(sets
        .iter()
        .map(|s| IndependentSet(search.to_set(n, s)))
        .collect())
}

pub fn alpha_exact(params: GraphParams) -> Result<usize> {
    alpha_exact_with_cap(params, DEFAULT_ALPHA_CAP_N)
}

/// `α_n` by exhaustive search over `V_n`.
pub fn alpha_exact_with_cap(params: GraphParams, cap_n: usize) -> Result<usize> {
    if params.n() > cap_n {
        return Err(Error::CapExceeded {
            what: "alpha_exact n",
            size: params.n(),
            cap: cap_n,
        });
    }
    let full = params.full_set();
    Ok(max_independent_set_with_cap(&full, full.len())?.len())
}

struct CliqueSearch {
    graph: LocalGraph,
    compat: Vec<Bitset>,
    best: Vec<Vec<usize>>,
    best_len: usize,
    collect_all: bool,
}

impl CliqueSearch {
    fn prepare(w: &VertexSet, cap: usize) -> Result<Self> {
        if w.len() > cap {
            return Err(Error::CapExceeded {
                what: "maximum independent set",
                size: w.len(),
                cap,
            });
        }
        let graph = LocalGraph::new(w.to_vec());
        let m = graph.len();
        let compat = (0..m)
            .map(|i| {
                let mut row = Bitset::full(m);
                row.difference_with(&graph.adj[i]);
                row.remove(i);
                row
            })
            .collect();
        Ok(Self {
            graph,
            compat,
            best: Vec::new(),
            best_len: 0,
            collect_all: false,
        })
    }

    fn to_set(&self, n: usize, idx: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, idx.iter().map(|&i| self.graph.verts[i]))
            .expect("subset of a valid set")
    }

    fn run(&mut self) {
        let m = self.graph.len();
        if m == 0 {
            self.best = vec![Vec::new()];
            return;
        }
        let mut current = Vec::new();
        self.expand(&mut current, Bitset::full(m));
    }

    /// Greedy sequential colouring of the candidates in the compatibility graph.
    /// Returns vertices ordered by colour with the colour number of each.
    fn colour_sort(&self, cand: &Bitset) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = cand.clone();
        let mut order = Vec::with_capacity(cand.count());
        let mut colours = Vec::with_capacity(order.capacity());
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut q = uncoloured.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                q.difference_with(&self.compat[v]);
                uncoloured.remove(v);
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }

    fn expand(&mut self, current: &mut Vec<usize>, mut cand: Bitset) {
        let (order, colours) = self.colour_sort(&cand);
        for idx in (0..order.len()).rev() {
            let reach = current.len() + colours[idx];
            if reach < self.best_len || (!self.collect_all && reach == self.best_len) {
                return;
            }
            let v = order[idx];
            current.push(v);
            let mut next = cand.clone();
            next.intersect_with(&self.compat[v]);
            if next.is_empty() {
                self.record(current);
            } else {
                self.expand(current, next);
            }
            current.pop();
            cand.remove(v);
        }
    }

    fn record(&mut self, current: &[usize]) {
        if current.len() > self.best_len {
            self.best_len = current.len();
            self.best.clear();
        }
        if current.len() == self.best_len && (self.collect_all || self.best.is_empty()) {
            let mut s = current.to_vec();
            s.sort_unstable();
            self.best.push(s);
        }
    }
}
