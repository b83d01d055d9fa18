//! Vertices, vertex sets and exact edge counting in `G(n,3,1)`.
//!
//! A vertex is a 3-subset of `{1..n}`, stored as a sorted triple. Each vertex
//! has a colex rank in `0..C(n,3)`, and a [`VertexSet`] is a bitset over ranks.
//! Adjacency (`|x ∩ y| = 1`) is evaluated from the triples on demand;
//! [`AdjacencyMatrix`] materializes it when a search kernel wants bitset rows.

use std::fmt;

use rand::seq::index;
use rand::Rng;

use crate::bitset::Bitset;
use crate::combinatorics::{binomial, colex_rank3, colex_unrank3};
use crate::{Error, Result};

/// Largest supported ground set. Keeps ranks and vertex-set bitsets addressable.
pub const MAX_N: usize = 1024;

/// Largest ground set for which [`AdjacencyMatrix::build`] will materialize rows.
pub const MAX_MATERIALIZED_N: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphParams {
    n: usize,
}

impl GraphParams {
    pub fn new(n: usize) -> Result<Self> {
        if !(3..=MAX_N).contains(&n) {
            return Err(Error::InvalidGroundSet(n));
        }
        Ok(Self { n })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// `|V_n| = C(n,3)`.
    pub fn vertex_count(&self) -> usize {
        binomial(self.n as u64, 3) as usize
    }

    /// Regular degree `d_n = 3·C(n-3, 2)`.
    pub fn degree(&self) -> u64 {
        3 * binomial(self.n as u64 - 3, 2)
    }

    /// `|E_n| = d_n·|V_n| / 2`.
    pub fn total_edges(&self) -> u64 {
        self.degree() * self.vertex_count() as u64 / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_count()).map(Vertex::from_rank_unchecked)
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet {
            n: self.n,
            bits: Bitset::full(self.vertex_count()),
        }
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.n)
    }
}

/// A 3-subset of `{1..n}`, elements strictly increasing and 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    elems: [u16; 3],
}

impl Vertex {
    /// Builds the canonical (sorted) vertex from three distinct elements of `1..=n`.
    pub fn new(a: usize, b: usize, c: usize, n: usize) -> Result<Self> {
        if !(3..=MAX_N).contains(&n) {
            return Err(Error::InvalidGroundSet(n));
        }
        for e in [a, b, c] {
            if e == 0 || e > n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
        }
        if a == b || b == c || a == c {
            return Err(Error::DuplicateElement(a, b, c));
        }
        let mut e = [a as u16, b as u16, c as u16];
        e.sort_unstable();
        Ok(Self { elems: e })
    }

    pub fn from_rank(rank: usize, n: usize) -> Result<Self> {
        let params = GraphParams::new(n)?;
        if rank >= params.vertex_count() {
            return Err(Error::RankOutOfRange { rank, n });
        }
        Ok(Self::from_rank_unchecked(rank))
    }

    pub(crate) fn from_rank_unchecked(rank: usize) -> Self {
        let (a, b, c) = colex_unrank3(rank);
        Self {
            elems: [a as u16 + 1, b as u16 + 1, c as u16 + 1],
        }
    }

    #[inline]
    pub fn rank(&self) -> usize {
        let [a, b, c] = self.elems;
        colex_rank3(a as usize - 1, b as usize - 1, c as usize - 1)
    }

    /// Sorted elements, 1-based.
    #[inline]
    pub fn elements(&self) -> [usize; 3] {
        self.elems.map(usize::from)
    }

    /// Largest element; the vertex is valid for every `n >= max_element()`.
    #[inline]
    pub fn max_element(&self) -> usize {
        self.elems[2] as usize
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        self.elems.iter().any(|&x| x as usize == e)
    }

    /// `|supp(x) ∩ supp(y)|`.
    #[inline]
    pub fn meet(&self, other: &Vertex) -> usize {
        let [a, b, c] = self.elems;
        other
            .elems
            .iter()
            .filter(|&&x| x == a || x == b || x == c)
            .count()
    }

    /// The three 2-subsets of the vertex.
    pub fn pairs(&self) -> [(usize, usize); 3] {
        let [a, b, c] = self.elements();
        [(a, b), (a, c), (b, c)]
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.elems;
        write!(f, "{{{a},{b},{c}}}")
    }
}

/// Adjacency in `G(n,3,1)`: the triples share exactly one element.
#[inline]
pub fn is_edge(x: &Vertex, y: &Vertex) -> bool {
    x.meet(y) == 1
}

/// Set of vertices of `G(n,3,1)` for a fixed `n`, indexed by colex rank.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    bits: Bitset,
}

impl VertexSet {
    /// Empty set over `{1..n}`. Panics if `n` is out of range; use
    /// [`GraphParams::empty_set`] for a checked constructor.
    pub fn empty(n: usize) -> Self {
        let params = GraphParams::new(n).expect("ground set size out of range");
        Self {
            n,
            bits: Bitset::new(params.vertex_count()),
        }
    }

    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(n: usize, vertices: I) -> Result<Self> {
        GraphParams::new(n)?;
        let mut set = Self::empty(n);
        for v in vertices {
            if v.max_element() > n {
                return Err(Error::ElementOutOfRange {
                    element: v.max_element(),
                    n,
                });
            }
            set.bits.insert(v.rank());
        }
        Ok(set)
    }

    /// Convenience constructor from element triples in any order.
    pub fn from_triples(n: usize, triples: &[[usize; 3]]) -> Result<Self> {
        let vs = triples
            .iter()
            .map(|&[a, b, c]| Vertex::new(a, b, c, n))
            .collect::<Result<Vec<_>>>()?;
        Self::from_vertices(n, vs)
    }

    pub fn from_ranks<I: IntoIterator<Item = usize>>(n: usize, ranks: I) -> Result<Self> {
        let mut set = GraphParams::new(n)?.empty_set();
        for r in ranks {
            if r >= set.bits.capacity() {
                return Err(Error::RankOutOfRange { rank: r, n });
            }
            set.bits.insert(r);
        }
        Ok(set)
    }

    /// Uniform random subset of size `l` of the vertex ranks.
    pub fn random<R: Rng + ?Sized>(n: usize, l: usize, rng: &mut R) -> Result<Self> {
        let params = GraphParams::new(n)?;
        let total = params.vertex_count();
        if l > total {
            return Err(Error::CardinalityOutOfRange {
                l: l.to_string(),
                max: total as u64,
            });
        }
        let mut picked = index::sample(rng, total, l).into_vec();
        picked.sort_unstable();
        Self::from_ranks(n, picked)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.bits.contains(v.rank())
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        assert!(
            v.max_element() <= self.n,
            "vertex {v} outside ground set of size {}",
            self.n
        );
        self.bits.insert(v.rank())
    }

    pub fn remove(&mut self, v: &Vertex) -> bool {
        self.bits.remove(v.rank())
    }

    /// Vertices in increasing rank order.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.bits.iter().map(Vertex::from_rank_unchecked)
    }

    pub fn ranks(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter()
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    fn check_same(&self, other: &VertexSet) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GroundSetMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.n == other.n && self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.n != other.n || self.bits.is_disjoint(&other.bits)
    }

    pub fn union(&self, other: &VertexSet) -> Result<VertexSet> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.bits.union_with(&other.bits);
        Ok(out)
    }

    pub fn difference(&self, other: &VertexSet) -> Result<VertexSet> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.bits.difference_with(&other.bits);
        Ok(out)
    }

    pub fn intersection(&self, other: &VertexSet) -> Result<VertexSet> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.bits.intersect_with(&other.bits);
        Ok(out)
    }

    /// Complement within `V_n`.
    pub fn complement(&self) -> VertexSet {
        let mut out = VertexSet {
            n: self.n,
            bits: Bitset::full(self.bits.capacity()),
        };
        out.bits.difference_with(&self.bits);
        out
    }

    /// Sorted union of the member triples.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n + 1];
        for v in self.iter() {
            for e in v.elements() {
                seen[e] = true;
            }
        }
        (1..=self.n).filter(|&e| seen[e]).collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} ", self.n)?;
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Element and pair incidence counts of a vertex set. From these,
/// `Σ_{x<y} |x∩y| = Σ_e C(a_e,2)` and `#{x<y : |x∩y| = 2} = Σ_{e<f} C(b_ef,2)`,
/// which yields the number of pairs meeting in exactly one element.
struct Incidence {
    n: usize,
    element: Vec<u64>,
    pair: Vec<u64>,
}

impl Incidence {
    fn of(set: &VertexSet) -> Self {
        let n = set.n;
        let mut element = vec![0u64; n + 1];
        let mut pair = vec![0u64; (n + 1) * (n + 1)];
        for v in set.iter() {
            for e in v.elements() {
                element[e] += 1;
            }
            for (a, b) in v.pairs() {
                pair[a * (n + 1) + b] += 1;
            }
        }
        Self { n, element, pair }
    }

    #[inline]
    fn pair(&self, a: usize, b: usize) -> u64 {
        self.pair[a * (self.n + 1) + b]
    }

    /// Neighbours of a vertex not in the set: `Σ_{e∈v} a_e − 2·Σ_{p⊂v} b_p`.
    fn neighbours_of_outside(&self, v: &Vertex) -> u64 {
        let singles: u64 = v.elements().iter().map(|&e| self.element[e]).sum();
        let doubles: u64 = v.pairs().iter().map(|&(a, b)| self.pair(a, b)).sum();
        singles - 2 * doubles
    }
}

fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// `r(W)`: number of edges induced by `W`.
pub fn count_edges(w: &VertexSet) -> u64 {
    if w.len() < 2 {
        return 0;
    }
    let inc = Incidence::of(w);
    let meet_total: u64 = inc.element.iter().map(|&a| choose2(a)).sum();
    let meet_two: u64 = inc.pair.iter().map(|&b| choose2(b)).sum();
    meet_total - 2 * meet_two
}

/// Reference `O(|W|²)` pair loop for [`count_edges`].
pub fn count_edges_pairwise(w: &VertexSet) -> u64 {
    let vs = w.to_vec();
    let mut edges = 0;
    for (i, x) in vs.iter().enumerate() {
        for y in &vs[i + 1..] {
            if is_edge(x, y) {
                edges += 1;
            }
        }
    }
    edges
}

/// `n(v, S)`: number of members of `S` adjacent to `v`. `v` must not be in `S`.
pub fn neighbor_count(v: &Vertex, s: &VertexSet) -> Result<u64> {
    if v.max_element() > s.n {
        return Err(Error::ElementOutOfRange {
            element: v.max_element(),
            n: s.n,
        });
    }
    if s.contains(v) {
        return Err(Error::VertexInSet(v.to_string()));
    }
    Ok(s.iter().filter(|u| is_edge(u, v)).count() as u64)
}

/// Number of edges with one end in `a` and the other in `b`; the sets must be disjoint.
pub fn cross_edges(a: &VertexSet, b: &VertexSet) -> Result<u64> {
    a.check_same(b)?;
    if !a.is_disjoint(b) {
        return Err(Error::Overlapping);
    }
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let inc = Incidence::of(large);
    Ok(small.iter().map(|v| inc.neighbours_of_outside(&v)).sum())
}

/// Dense adjacency rows over all of `V_n`, for `n <= MAX_MATERIALIZED_N`.
#[derive(Clone, Debug)]
pub struct AdjacencyMatrix {
    n: usize,
    rows: Vec<Bitset>,
}

impl AdjacencyMatrix {
    pub fn build(params: GraphParams) -> Result<Self> {
        let n = params.n();
        if n > MAX_MATERIALIZED_N {
            return Err(Error::CapExceeded {
                what: "adjacency materialization",
                size: n,
                cap: MAX_MATERIALIZED_N,
            });
        }
        let count = params.vertex_count();
        let verts: Vec<Vertex> = params.vertices().collect();
        let mut rows = vec![Bitset::new(count); count];
        for i in 0..count {
            for j in i + 1..count {
                if is_edge(&verts[i], &verts[j]) {
                    rows[i].insert(j);
                    rows[j].insert(i);
                }
            }
        }
        Ok(Self { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, rank: usize) -> &Bitset {
        &self.rows[rank]
    }

    pub fn is_edge(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn degree(&self, rank: usize) -> usize {
        self.rows[rank].count()
    }

    pub fn count_edges(&self, w: &VertexSet) -> u64 {
        let twice: usize = w
            .ranks()
            .map(|r| self.rows[r].intersection_count(&w.bits))
            .sum();
        (twice / 2) as u64
    }
}

/// Adjacency restricted to a list of vertices, indexed by list position.
#[derive(Clone, Debug)]
pub(crate) struct LocalGraph {
    pub verts: Vec<Vertex>,
    pub adj: Vec<Bitset>,
}

impl LocalGraph {
    pub fn new(verts: Vec<Vertex>) -> Self {
        let m = verts.len();
        let mut adj = vec![Bitset::new(m); m];
        for i in 0..m {
            for j in i + 1..m {
                if is_edge(&verts[i], &verts[j]) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        Self { verts, adj }
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, t: &[[usize; 3]]) -> VertexSet {
        VertexSet::from_triples(n, t).unwrap()
    }

    #[test]
    fn make_vertex_canonicalizes() {
        let v = Vertex::new(3, 1, 2, 6).unwrap();
        assert_eq!(v.elements(), [1, 2, 3]);
        assert_eq!(v.rank(), 0);
        assert_eq!(Vertex::new(4, 5, 6, 6).unwrap().rank(), 19);
        assert_eq!(Vertex::from_rank(19, 6).unwrap().elements(), [4, 5, 6]);
    }

    #[test]
    fn make_vertex_errors() {
        assert_eq!(
            Vertex::new(1, 1, 2, 6),
            Err(Error::DuplicateElement(1, 1, 2))
        );
        assert_eq!(
            Vertex::new(1, 2, 7, 6),
            Err(Error::ElementOutOfRange { element: 7, n: 6 })
        );
        assert_eq!(
            Vertex::new(0, 2, 3, 6),
            Err(Error::ElementOutOfRange { element: 0, n: 6 })
        );
        assert!(Vertex::from_rank(20, 6).is_err());
        assert!(GraphParams::new(2).is_err());
    }

    #[test]
    fn edge_examples() {
        let v = |a, b, c| Vertex::new(a, b, c, 7).unwrap();
        assert!(is_edge(&v(1, 2, 3), &v(1, 4, 5)));
        assert!(!is_edge(&v(1, 2, 3), &v(1, 2, 4)));
        assert!(!is_edge(&v(1, 2, 3), &v(4, 5, 6)));
        assert!(!is_edge(&v(1, 2, 3), &v(1, 2, 3)));
    }

    #[test]
    fn parameter_formulas() {
        let p = |n| GraphParams::new(n).unwrap();
        assert_eq!(p(6).degree(), 9);
        assert_eq!(p(7).degree(), 18);
        assert_eq!(p(5).degree(), 3);
        assert_eq!(p(6).total_edges(), 90);
        assert_eq!(p(7).total_edges(), 315);
        assert_eq!(p(5).total_edges(), 15);
        assert_eq!(p(3).degree(), 0);
    }

    #[test]
    fn count_edges_examples() {
        assert_eq!(
            count_edges(&set(6, &[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]])),
            0
        );
        assert_eq!(count_edges(&set(7, &[[1, 2, 3], [1, 4, 5], [1, 6, 7]])), 3);
        assert_eq!(
            count_edges(&set(6, &[[1, 2, 3], [1, 2, 4], [1, 2, 5], [1, 3, 4]])),
            1
        );
        assert_eq!(count_edges(&VertexSet::empty(6)), 0);
    }

    #[test]
    fn neighbor_count_examples() {
        let v = Vertex::new(1, 2, 3, 7).unwrap();
        let s = set(7, &[[1, 4, 5], [1, 6, 7], [2, 3, 4]]);
        assert_eq!(neighbor_count(&v, &s).unwrap(), 2);
        assert_eq!(neighbor_count(&v, &VertexSet::empty(7)).unwrap(), 0);
        assert_eq!(neighbor_count(&v, &set(7, &[[4, 5, 6]])).unwrap(), 0);
        assert!(matches!(
            neighbor_count(&v, &set(7, &[[1, 2, 3]])),
            Err(Error::VertexInSet(_))
        ));
    }

    #[test]
    fn cross_edges_examples() {
        let a = set(7, &[[1, 4, 5]]);
        let b = set(7, &[[1, 2, 3]]);
        assert_eq!(cross_edges(&a, &b).unwrap(), 1);
        assert_eq!(
            cross_edges(&set(7, &[[1, 2, 3]]), &set(7, &[[1, 2, 4], [4, 5, 6]])).unwrap(),
            0
        );
        assert_eq!(
            cross_edges(&set(7, &[[1, 4, 5], [1, 6, 7]]), &b).unwrap(),
            2
        );
        assert_eq!(cross_edges(&b, &b), Err(Error::Overlapping));
    }

    #[test]
    fn materialized_matches_on_demand() {
        let params = GraphParams::new(8).unwrap();
        let adj = AdjacencyMatrix::build(params).unwrap();
        for x in params.vertices() {
            assert_eq!(adj.degree(x.rank()) as u64, params.degree());
            for y in params.vertices() {
                assert_eq!(adj.is_edge(x.rank(), y.rank()), is_edge(&x, &y));
            }
        }
        assert_eq!(adj.count_edges(&params.full_set()), params.total_edges());
        assert!(AdjacencyMatrix::build(GraphParams::new(61).unwrap()).is_err());
    }

    #[test]
    fn complement_and_support() {
        let w = set(6, &[[1, 2, 3], [1, 4, 5]]);
        assert_eq!(w.support(), vec![1, 2, 3, 4, 5]);
        let c = w.complement();
        assert_eq!(c.len(), 18);
        assert!(c.is_disjoint(&w));
    }
}
