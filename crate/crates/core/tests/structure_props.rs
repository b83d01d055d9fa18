use std::collections::BTreeSet;

use g31x_core::combinatorics::binomial;
use g31x_core::graph::count_edges;
use g31x_core::structure::{
    all_maximum_independent_sets, decompose, diameter, greedy_maximal_independent_set,
    is_independent, is_maximal_independent, is_star_set, r_rho, validate_decomposition,
    DiameterSearch, GreedyOrder, StarMode,
};
use g31x_core::{GraphParams, Vertex, VertexSet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Star check written from the definition: independent, and every class of the
/// "meet in two elements" relation is a single vertex or a sunflower of at
/// least three triples on a common pair.
fn star_by_definition(vs: &[Vertex], mode: StarMode) -> bool {
    let k = vs.len();
    for i in 0..k {
        for j in i + 1..k {
            if vs[i].meet(&vs[j]) == 1 {
                return false;
            }
        }
    }
    let mut comp: Vec<usize> = (0..k).collect();
    fn find(c: &mut Vec<usize>, x: usize) -> usize {
        if c[x] != x {
            let r = find(c, c[x]);
            c[x] = r;
        }
        c[x]
    }
    for i in 0..k {
        for j in i + 1..k {
            if vs[i].meet(&vs[j]) == 2 {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a] = b;
            }
        }
    }
    let mut classes: std::collections::BTreeMap<usize, Vec<Vertex>> = Default::default();
    for (i, v) in vs.iter().enumerate() {
        let r = find(&mut comp, i);
        classes.entry(r).or_default().push(*v);
    }
    let mut singles = 0;
    for class in classes.values() {
        if class.len() == 1 {
            singles += 1;
            continue;
        }
        if class.len() < 3 {
            return false;
        }
        let common: BTreeSet<usize> = class
            .iter()
            .map(|v| v.elements().into_iter().collect::<BTreeSet<_>>())
            .reduce(|a, b| a.intersection(&b).copied().collect())
            .unwrap();
        if common.len() != 2 {
            return false;
        }
    }
    mode == StarMode::Lenient || singles != 1
}

fn support_size(vs: &[Vertex]) -> usize {
    vs.iter()
        .flat_map(|v| v.elements())
        .collect::<BTreeSet<_>>()
        .len()
}

fn brute_diameter(w: &VertexSet, mode: StarMode) -> usize {
    let vs = w.to_vec();
    let mut best = 0;
    for mask in 0u32..(1 << vs.len()) {
        let sub: Vec<Vertex> = (0..vs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| vs[i])
            .collect();
        if star_by_definition(&sub, mode) {
            best = best.max(support_size(&sub));
        }
    }
    best
}

/// Random sets biased toward structure: a few sunflowers and 4-set blocks plus noise.
fn structured_set(n: usize, rng: &mut ChaCha8Rng, target: usize) -> VertexSet {
    let mut w = VertexSet::empty(n);
    while w.len() < target {
        let a = rng.gen_range(1..=n);
        let b = rng.gen_range(1..=n);
        let c = rng.gen_range(1..=n);
        if a == b || b == c || a == c {
            continue;
        }
        match rng.gen_range(0..3) {
            0 => {
                w.insert(Vertex::new(a, b, c, n).unwrap());
            }
            _ => {
                let x = rng.gen_range(1..=n);
                if x != a && x != b && x != c {
                    w.insert(Vertex::new(a, b, x, n).unwrap());
                }
            }
        }
    }
    w
}

#[test]
fn exact_diameter_matches_subset_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..300 {
        let n = rng.gen_range(5..=10);
        let l = rng.gen_range(0..=12usize.min(binomial(n as u64, 3) as usize));
        let w = if trial % 2 == 0 {
            VertexSet::random(n, l, &mut rng).unwrap()
        } else {
            structured_set(n, &mut rng, l)
        };
        for mode in [StarMode::Lenient, StarMode::Strict] {
            let got = diameter(&w, DiameterSearch::default(), mode).unwrap();
            assert_eq!(got.value, brute_diameter(&w, mode), "{w:?} {mode:?}");
            assert!(got.witness.is_subset(&w));
            assert_eq!(got.witness.support().len(), got.value);
            assert!(got.value == 0 || is_star_set(&got.witness, mode));
            let sentinel = binomial(n as u64, 5);
            for rho in [0, 3, 6, n].into_iter().filter(|&r| r <= n) {
                let r = r_rho(&w, rho, mode).unwrap();
                if got.value > rho {
                    assert_eq!(r, sentinel);
                } else {
                    assert_eq!(r, count_edges(&w));
                }
            }
        }
    }
}

#[test]
fn star_predicate_matches_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..2000 {
        let n = rng.gen_range(4..=9);
        let l = rng.gen_range(0..=6usize.min(binomial(n as u64, 3) as usize));
        let w = structured_set(n, &mut rng, l);
        for mode in [StarMode::Lenient, StarMode::Strict] {
            assert_eq!(
                is_star_set(&w, mode),
                star_by_definition(&w.to_vec(), mode),
                "{w:?}"
            );
        }
    }
}

#[test]
fn every_maximum_independent_set_decomposes_up_to_seven() {
    for n in 3..=7 {
        let full = GraphParams::new(n).unwrap().full_set();
        let all = all_maximum_independent_sets(&full, 64).unwrap();
        assert!(!all.is_empty());
        for u in all {
            let d = decompose(&u).unwrap();
            validate_decomposition(u.members(), &d).unwrap();
        }
    }
}

#[test]
fn random_maximal_sets_decompose() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for trial in 0..400u64 {
        let n = 6 + (trial as usize % 15);
        let l = rng.gen_range(1..=binomial(n as u64, 3) as usize);
        let w = VertexSet::random(n, l, &mut rng).unwrap();
        let u = greedy_maximal_independent_set(&w, GreedyOrder::Shuffled(trial));
        assert!(is_maximal_independent(u.members(), &w));
        let d = decompose(&u).unwrap();
        validate_decomposition(u.members(), &d).unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn diameter_is_monotone(seed in any::<u64>(), n in 5usize..=9, l in 0usize..=14, k in 0usize..=14) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = VertexSet::random(n, l.min(binomial(n as u64, 3) as usize), &mut rng).unwrap();
        let a = VertexSet::from_vertices(n, w.iter().take(k)).unwrap();
        let dw = diameter(&w, DiameterSearch::default(), StarMode::Lenient).unwrap().value;
        let da = diameter(&a, DiameterSearch::default(), StarMode::Lenient).unwrap().value;
        prop_assert!(da <= dw);
        prop_assert!(dw <= n);
    }

    #[test]
    fn greedy_output_is_maximal(seed in any::<u64>(), n in 4usize..=12, l in 0usize..=120) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = VertexSet::random(n, l.min(binomial(n as u64, 3) as usize), &mut rng).unwrap();
        let u = greedy_maximal_independent_set(&w, GreedyOrder::Shuffled(seed));
        prop_assert!(is_independent(u.members()));
        prop_assert!(is_maximal_independent(u.members(), &w));
        prop_assert!(count_edges(u.members()) == 0);
    }
}
