//! Iterated extraction of independent sets with `B_i` histograms.
//!
//! Each step takes an independent set `I` out of the current remainder and
//! sorts what is left by `n(w, I)`, the number of neighbours in `I`. The cross
//! edges between `I` and the new remainder are counted exactly alongside the
//! per-step tally `4(rem − f₁ − f₂) + 3f₂ + 2f₁` used in the lower-bound argument
//! (`f₁` = vertices with at most two neighbours in `I`, `f₂` = exactly three).
//! The tally weights `B₁` vertices by 2 and can exceed the exact count.

use num::rational::BigRational;
use num::{BigInt, ToPrimitive};

use crate::bounds::{lemma_caps, peeling_total_lower, BoundInputs};
use crate::graph::{is_edge, Vertex, VertexSet};
use crate::structure::{
    classify_element, classify_type2, greedy_maximal_independent_set, max_independent_set_with_cap,
    Decomposition, ElementClass, GreedyOrder, GroupKind, IndependentSet, Type2Class,
    DEFAULT_MIS_CAP,
};
use crate::{Error, Result};

/// `counts[i] = |B_i|`, `B_i = {w ∈ H \ I : n(w, I) = i}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BHistogram {
    counts: Vec<u64>,
}

impl BHistogram {
    pub fn get(&self, i: usize) -> u64 {
        self.counts.get(i).copied().unwrap_or(0)
    }

    /// Non-zero entries `(i, |B_i|)` in increasing `i`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, c)| c > 0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `Σ i·|B_i|`: the number of edges between `I` and `H \ I`.
    pub fn weighted_sum(&self) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| i as u64 * c)
            .sum()
    }

    /// Vertices with at most two neighbours in `I`.
    pub fn at_most_two(&self) -> u64 {
        (0..=2).map(|i| self.get(i)).sum()
    }

    fn add(&mut self, i: usize) {
        if self.counts.len() <= i {
            self.counts.resize(i + 1, 0);
        }
        self.counts[i] += 1;
    }
}

fn neighbours_in(w: &Vertex, members: &[Vertex]) -> usize {
    members.iter().filter(|u| is_edge(u, w)).count()
}

/// Histogram of `n(w, I)` over `w ∈ H \ I`.
pub fn classify_b(h: &VertexSet, i: &IndependentSet) -> Result<BHistogram> {
    if !i.members().is_subset(h) {
        return Err(Error::NotSubset);
    }
    let members = i.members().to_vec();
    let mut hist = BHistogram::default();
    for w in h.iter().filter(|w| !i.members().contains(w)) {
        hist.add(neighbours_in(&w, &members));
    }
    Ok(hist)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCheck {
    pub holds: bool,
    pub lhs: u64,
    pub cap: BigRational,
}

fn require_maximal(h: &VertexSet, i: &IndependentSet) -> Result<BHistogram> {
    let hist = classify_b(h, i)?;
    if hist.get(0) > 0 {
        return Err(Error::NotMaximal);
    }
    Ok(hist)
}

fn lemma_check(lhs: u64, cap: BigRational) -> LemmaCheck {
    let holds = BigRational::from_integer(BigInt::from(lhs)) <= cap;
    LemmaCheck { holds, lhs, cap }
}

/// `|B_1| + |B_2| <= 35n²` for a maximal independent `I` in `H`.
pub fn check_lemma1(h: &VertexSet, i: &IndependentSet) -> Result<LemmaCheck> {
    let hist = require_maximal(h, i)?;
    let (cap, _) = lemma_caps(h.n() as u64, 0)?;
    Ok(lemma_check(hist.get(1) + hist.get(2), cap))
}

/// `|B_3| <= ρ³/6 + 20n²` for a maximal independent `I` in `H`. The caller is
/// responsible for the regime `d(H) <= ρ`.
pub fn check_lemma2(h: &VertexSet, i: &IndependentSet, rho: usize) -> Result<LemmaCheck> {
    let hist = require_maximal(h, i)?;
    let (_, cap) = lemma_caps(h.n() as u64, rho as u64)?;
    Ok(lemma_check(hist.get(3), cap))
}

/// Position of a `B_3` vertex relative to the decomposition of `I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    /// Meets a full type-2 support in one element.
    Full2Meet1,
    /// Meets a full type-2 support in two elements.
    Full2Meet2,
    /// Meets an incomplete type-2 support in one full element.
    Incomplete2Meet1FullElem,
    /// Meets an incomplete type-2 support in one incomplete element.
    Incomplete2Meet1IncompleteElem,
    /// Meets an incomplete type-2 support in two elements.
    Incomplete2Meet2,
    /// Meets only a two-vertex type-2 group among the type-2 groups.
    Degenerate2,
    /// No type-2 contact; the vertex lies inside the type-1/type-3 support `X`.
    NoType2InsideX,
    /// No type-2 contact; one element in `X`.
    NoType2MeetX1,
    /// No type-2 contact; two elements in `X`.
    NoType2MeetX2,
}

impl CaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::Full2Meet1 => "Full2-∩1",
            CaseLabel::Full2Meet2 => "Full2-∩2",
            CaseLabel::Incomplete2Meet1FullElem => "Incomplete2-∩1-FullElem",
            CaseLabel::Incomplete2Meet1IncompleteElem => "Incomplete2-∩1-IncompleteElem",
            CaseLabel::Incomplete2Meet2 => "Incomplete2-∩2",
            CaseLabel::Degenerate2 => "Degenerate2",
            CaseLabel::NoType2InsideX => "NoType2-InsideX",
            CaseLabel::NoType2MeetX1 => "NoType2-∩X=1",
            CaseLabel::NoType2MeetX2 => "NoType2-∩X=2",
        }
    }
}

/// Labels a vertex `w` with exactly three neighbours in `I`. Type-2 contacts are
/// checked first (full groups, then incomplete ones, by intersection size),
/// then the position of `w` relative to `X = supp(type-1 ∪ type-3)`.
pub fn classify_b3_case(
    w: &Vertex,
    i: &IndependentSet,
    decomp: &Decomposition,
) -> Result<CaseLabel> {
    let members = i.members().to_vec();
    let k = neighbours_in(w, &members);
    if i.members().contains(w) || k != 3 {
        return Err(Error::NotInB3(k));
    }
    let meet = |support: &[usize]| w.elements().iter().filter(|e| support.contains(e)).count();
    let type2: Vec<_> = decomp.groups_of(GroupKind::Type2).collect();
    let with_class = |class: Type2Class| {
        type2
            .iter()
            .filter(move |g| classify_type2(g).ok() == Some(class))
    };
    for size in [1, 2] {
        if with_class(Type2Class::Full).any(|g| meet(&g.support) == size) {
            return Ok(if size == 1 {
                CaseLabel::Full2Meet1
            } else {
                CaseLabel::Full2Meet2
            });
        }
    }
    for g in with_class(Type2Class::Incomplete) {
        if meet(&g.support) == 1 {
            let x = *w
                .elements()
                .iter()
                .find(|e| g.support.contains(e))
                .expect("one shared element");
            return Ok(match classify_element(x, g)? {
                ElementClass::Full => CaseLabel::Incomplete2Meet1FullElem,
                ElementClass::Incomplete => CaseLabel::Incomplete2Meet1IncompleteElem,
            });
        }
    }
    if with_class(Type2Class::Incomplete).any(|g| meet(&g.support) == 2) {
        return Ok(CaseLabel::Incomplete2Meet2);
    }
    if type2.iter().any(|g| meet(&g.support) > 0) {
        return Ok(CaseLabel::Degenerate2);
    }
    match meet(&decomp.star_support()) {
        3 => Ok(CaseLabel::NoType2InsideX),
        1 => Ok(CaseLabel::NoType2MeetX1),
        _ => Ok(CaseLabel::NoType2MeetX2),
    }
}

/// How each step extracts its independent set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtractMode {
    /// Maximum independent set; fails above the cap.
    ExactMax,
    /// Greedy maximal independent set in the given order.
    GreedyMaximal(GreedyOrder),
    /// Maximum while the remainder is within the cap, greedy (rank order) above it.
    Auto,
}

/// What a step actually used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extraction {
    Maximum,
    Maximal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepLimit {
    /// `t = ⌊l/n⌋` steps, at least one for a non-empty set.
    Target,
    Count(usize),
    UntilEmpty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeelOptions {
    pub mode: ExtractMode,
    pub steps: StepLimit,
    /// Cap on the remainder size for exact extraction.
    pub exact_cap: usize,
    /// Diameter cap used for the finite lower bound in the report.
    pub rho: Option<usize>,
}

impl Default for PeelOptions {
    fn default() -> Self {
        Self {
            mode: ExtractMode::Auto,
            steps: StepLimit::Target,
            exact_cap: DEFAULT_MIS_CAP,
            rho: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelStep {
    /// 1-based step number.
    pub index: usize,
    pub extracted: IndependentSet,
    pub extraction: Extraction,
    pub alpha: usize,
    /// `B_i` classes of the remainder left after this step.
    pub histogram: BHistogram,
    pub cross_edges: u64,
    pub paper_tally: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeelReport {
    pub n: usize,
    pub l: usize,
    pub steps: Vec<PeelStep>,
    pub remainder: VertexSet,
    pub t_target: usize,
    pub total_cross_edges: u64,
    /// Finite lower bound `(l²/n)(2 − ρ³/(6l) − 90n²/l − 6n/l)` when `ρ` is given and `l > 0`.
    pub bound_total: Option<f64>,
}

impl PeelReport {
    /// Checks the bookkeeping invariants against the input set. Returns the
    /// first violated one.
    pub fn check(&self, w: &VertexSet) -> std::result::Result<(), String> {
        let mut seen = VertexSet::empty(w.n());
        for s in &self.steps {
            let ext = s.extracted.members();
            if !seen.is_disjoint(ext) {
                return Err(format!("step {} overlaps an earlier extraction", s.index));
            }
            seen = seen.union(ext).map_err(|e| e.to_string())?;
            if s.histogram.weighted_sum() != s.cross_edges {
                return Err(format!(
                    "step {}: cross edges differ from Σ i·|B_i|",
                    s.index
                ));
            }
            // every extraction is at least maximal
            if s.histogram.get(0) != 0 {
                return Err(format!("step {}: B_0 is not empty", s.index));
            }
        }
        if !seen.is_disjoint(&self.remainder) {
            return Err("remainder overlaps an extraction".into());
        }
        let alpha_sum: usize = self.steps.iter().map(|s| s.alpha).sum();
        if alpha_sum + self.remainder.len() != w.len() {
            return Err("Σ α_i + |remainder| differs from |W|".into());
        }
        if seen.union(&self.remainder).map_err(|e| e.to_string())? != *w {
            return Err("extractions and remainder do not rebuild W".into());
        }
        if self.total_cross_edges > crate::graph::count_edges(w) {
            return Err("total cross edges exceed r(W)".into());
        }
        Ok(())
    }
}

pub fn peel(w: &VertexSet, opts: &PeelOptions) -> Result<PeelReport> {
    let n = w.n();
    let l = w.len();
    let t_target = l / n;
    let limit = match opts.steps {
        StepLimit::Target => t_target.max(usize::from(l > 0)),
        StepLimit::Count(k) => k,
        StepLimit::UntilEmpty => usize::MAX,
    };
    if let Some(rho) = opts.rho {
        if rho > n {
            return Err(Error::RhoOutOfRange {
                rho: rho as u64,
                n: n as u64,
            });
        }
    }

    let mut remainder = w.clone();
    let mut steps = Vec::new();
    while steps.len() < limit && !remainder.is_empty() {
        let (extracted, extraction) = extract(&remainder, opts)?;
        remainder = remainder.difference(extracted.members())?;
        let members = extracted.members().to_vec();
        let mut histogram = BHistogram::default();
        for v in remainder.iter() {
            histogram.add(neighbours_in(&v, &members));
        }
        let rem = remainder.len() as u64;
        let f1 = histogram.at_most_two();
        let f2 = histogram.get(3);
        let paper_tally = 4 * (rem - f1 - f2) + 3 * f2 + 2 * f1;
        steps.push(PeelStep {
            index: steps.len() + 1,
            alpha: extracted.len(),
            cross_edges: histogram.weighted_sum(),
            extracted,
            extraction,
            histogram,
            paper_tally,
        });
    }

    let total_cross_edges = steps.iter().map(|s| s.cross_edges).sum();
    let bound_total = match opts.rho {
        Some(rho) if l > 0 => {
            let input = BoundInputs::new(n as u64, l as u64)?.with_rho(rho as u64)?;
            peeling_total_lower(&input)?.value.to_f64()
        }
        _ => None,
    };
    Ok(PeelReport {
        n,
        l,
        steps,
        remainder,
        t_target,
        total_cross_edges,
        bound_total,
    })
}

fn extract(remainder: &VertexSet, opts: &PeelOptions) -> Result<(IndependentSet, Extraction)> {
    match opts.mode {
        ExtractMode::ExactMax => Ok((
            max_independent_set_with_cap(remainder, opts.exact_cap)?,
            Extraction::Maximum,
        )),
        ExtractMode::GreedyMaximal(order) => Ok((
            greedy_maximal_independent_set(remainder, order),
            Extraction::Maximal,
        )),
        ExtractMode::Auto if remainder.len() <= opts.exact_cap => Ok((
            max_independent_set_with_cap(remainder, opts.exact_cap)?,
            Extraction::Maximum,
        )),
        ExtractMode::Auto => Ok((
            greedy_maximal_independent_set(remainder, GreedyOrder::Rank),
            Extraction::Maximal,
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{count_edges, GraphParams};
    use crate::structure::{decompose, max_independent_set};

    fn set(n: usize, t: &[[usize; 3]]) -> VertexSet {
        VertexSet::from_triples(n, t).unwrap()
    }

    fn indep(n: usize, t: &[[usize; 3]]) -> IndependentSet {
        IndependentSet::new(set(n, t)).unwrap()
    }

    #[test]
    fn classify_b_examples() {
        let h = set(7, &[[1, 2, 3], [1, 4, 5], [1, 6, 7]]);
        let i = indep(7, &[[1, 2, 3]]);
        let hist = classify_b(&h, &i).unwrap();
        assert_eq!(hist.get(1), 2);
        assert_eq!(hist.total(), 2);
        assert_eq!(classify_b(i.members(), &i).unwrap().total(), 0);
        let full = GraphParams::new(6).unwrap().full_set();
        let mis = max_independent_set(&full).unwrap();
        assert_eq!(classify_b(&full, &mis).unwrap().get(0), 0);
        let outside = indep(7, &[[2, 3, 4]]);
        assert_eq!(classify_b(&h, &outside), Err(Error::NotSubset));
    }

    #[test]
    fn lemma_checks() {
        let h = set(7, &[[1, 2, 3], [1, 4, 5], [1, 6, 7]]);
        let i = indep(7, &[[1, 2, 3]]);
        let l1 = check_lemma1(&h, &i).unwrap();
        assert_eq!((l1.holds, l1.lhs), (true, 2));
        assert_eq!(l1.cap, BigRational::from_integer(1715.into()));
        let l1 = check_lemma1(i.members(), &i).unwrap();
        assert_eq!((l1.holds, l1.lhs), (true, 0));
        let l2 = check_lemma2(i.members(), &i, 3).unwrap();
        assert_eq!((l2.holds, l2.lhs), (true, 0));

        let not_max = indep(7, &[[1, 2, 3]]);
        let h2 = set(7, &[[1, 2, 3], [4, 5, 6]]);
        assert_eq!(check_lemma1(&h2, &not_max), Err(Error::NotMaximal));
    }

    #[test]
    fn lemma2_on_full_seven() {
        let full = GraphParams::new(7).unwrap().full_set();
        let mis = max_independent_set(&full).unwrap();
        let l2 = check_lemma2(&full, &mis, 7).unwrap();
        assert!(l2.holds);
        // 7³/6 + 20·49 = 343/6 + 980
        assert_eq!(
            l2.cap,
            BigRational::new(343.into(), 6.into()) + BigRational::from_integer(980.into())
        );
        assert_eq!(l2.lhs, classify_b(&full, &mis).unwrap().get(3));
    }

    #[test]
    fn b3_needs_three_independent_neighbours() {
        let h = set(9, &[[1, 2, 3], [1, 2, 4], [1, 5, 6]]);
        let i = indep(9, &[[1, 2, 3], [1, 2, 4]]);
        assert_eq!(classify_b(&h, &i).unwrap().get(3), 0);
    }

    #[test]
    fn case_labels() {
        let i = indep(
            12,
            &[
                [1, 2, 3],
                [1, 2, 4],
                [1, 3, 4],
                [2, 3, 4],
                [5, 6, 7],
                [8, 9, 10],
            ],
        );
        let d = decompose(&i).unwrap();
        // {1,5,6} meets three members of the full group in {1} and {5,6,7} in two elements
        let w = Vertex::new(1, 5, 6, 12).unwrap();
        assert_eq!(classify_b3_case(&w, &i, &d).unwrap(), CaseLabel::Full2Meet1);
        let w = Vertex::new(1, 2, 5, 12).unwrap();
        // meets {1,3,4} and {2,3,4} in one element each, and {5,6,7}
        assert_eq!(classify_b3_case(&w, &i, &d).unwrap(), CaseLabel::Full2Meet2);
        let w = Vertex::new(5, 8, 11, 12).unwrap();
        assert!(matches!(
            classify_b3_case(&w, &i, &d),
            Err(Error::NotInB3(2))
        ));
    }

    #[test]
    fn case_labels_full_meet1() {
        let i = indep(12, &[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]);
        let d = decompose(&i).unwrap();
        let w = Vertex::new(1, 5, 6, 12).unwrap();
        assert_eq!(classify_b3_case(&w, &i, &d).unwrap(), CaseLabel::Full2Meet1);
    }

    #[test]
    fn case_labels_inside_x() {
        // X = {1..9} from three disjoint triples; {1,4,7} meets each once.
        let i = indep(9, &[[1, 2, 3], [4, 5, 6], [7, 8, 9]]);
        let d = decompose(&i).unwrap();
        let w = Vertex::new(1, 4, 7, 9).unwrap();
        assert_eq!(
            classify_b3_case(&w, &i, &d).unwrap(),
            CaseLabel::NoType2InsideX
        );
        // Sunflower {1,2,x} with three petals: {3,4,10} meets three petals in one element? no,
        // {x, y, z} with x a petal meets only that petal. Use {1,10,11}: meets all three in {1}.
        let i = indep(12, &[[1, 2, 3], [1, 2, 4], [1, 2, 5]]);
        let d = decompose(&i).unwrap();
        let w = Vertex::new(1, 10, 11, 12).unwrap();
        assert_eq!(
            classify_b3_case(&w, &i, &d).unwrap(),
            CaseLabel::NoType2MeetX1
        );
    }

    #[test]
    fn peel_independent_set() {
        let w = set(7, &[[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4], [5, 6, 7]]);
        let r = peel(&w, &PeelOptions::default()).unwrap();
        assert_eq!(r.steps.len(), 1);
        assert_eq!(r.steps[0].cross_edges, 0);
        assert!(r.remainder.is_empty());
        r.check(&w).unwrap();
    }

    #[test]
    fn peel_star_by_rank() {
        let w = set(7, &[[1, 2, 3], [1, 4, 5], [1, 6, 7]]);
        let opts = PeelOptions {
            mode: ExtractMode::GreedyMaximal(GreedyOrder::Rank),
            steps: StepLimit::UntilEmpty,
            ..PeelOptions::default()
        };
        let r = peel(&w, &opts).unwrap();
        let cross: Vec<u64> = r.steps.iter().map(|s| s.cross_edges).collect();
        assert_eq!(cross, vec![2, 1, 0]);
        assert_eq!(r.total_cross_edges, count_edges(&w));
        r.check(&w).unwrap();
    }

    #[test]
    fn peel_full_six_exact() {
        let full = GraphParams::new(6).unwrap().full_set();
        let opts = PeelOptions {
            mode: ExtractMode::ExactMax,
            steps: StepLimit::UntilEmpty,
            ..Default::default()
        };
        let r = peel(&full, &opts).unwrap();
        assert_eq!(r.steps[0].alpha, 4);
        assert_eq!(r.t_target, 3);
        for pair in r.steps.windows(2) {
            assert!(pair[1].alpha <= pair[0].alpha);
        }
        assert!(r.total_cross_edges <= 90);
        r.check(&full).unwrap();
    }

    #[test]
    fn peel_exact_cap() {
        let full = GraphParams::new(7).unwrap().full_set();
        let opts = PeelOptions {
            mode: ExtractMode::ExactMax,
            exact_cap: 10,
            ..Default::default()
        };
        assert!(matches!(peel(&full, &opts), Err(Error::CapExceeded { .. })));
        let auto = PeelOptions {
            mode: ExtractMode::Auto,
            exact_cap: 10,
            ..Default::default()
        };
        let r = peel(&full, &auto).unwrap();
        assert_eq!(r.steps[0].extraction, Extraction::Maximal);
    }

    #[test]
    fn tally_overcounts_b1() {
        let w = set(7, &[[1, 2, 3], [1, 4, 5]]);
        let opts = PeelOptions {
            mode: ExtractMode::ExactMax,
            ..Default::default()
        };
        let r = peel(&w, &opts).unwrap();
        assert_eq!(r.steps[0].cross_edges, 1);
        assert_eq!(r.steps[0].paper_tally, 2);
    }
}
