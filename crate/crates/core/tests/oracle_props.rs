use g31x_core::graph::count_edges;
use g31x_core::oracle::{
    min_edges_exact, min_edges_table, min_edges_upper_construction, ConstructionKind,
    MinEdgesOracle, OracleMethod,
};
use g31x_core::structure::alpha_exact;
use g31x_core::GraphParams;

#[test]
fn branch_and_bound_agrees_with_exhaustive() {
    for n in 3..=6 {
        let params = GraphParams::new(n).unwrap();
        let mut ex = MinEdgesOracle::exhaustive(params).unwrap();
        let mut bb = MinEdgesOracle::branch_and_bound(params).unwrap();
        for l in 0..=params.vertex_count() {
            let a = ex.solve(l).unwrap();
            let b = bb.solve(l).unwrap();
            assert_eq!(a.method, OracleMethod::Exhaustive);
            assert_eq!(b.method, OracleMethod::BranchAndBound);
            assert_eq!(a.min_edges, b.min_edges, "n={n} l={l}");
            for r in [&a, &b] {
                assert_eq!(r.witness.len(), l);
                assert_eq!(count_edges(&r.witness), r.min_edges);
            }
        }
    }
}

#[test]
fn zero_exactly_up_to_alpha() {
    for n in 3..=7 {
        let params = GraphParams::new(n).unwrap();
        let alpha = alpha_exact(params).unwrap();
        let rows = min_edges_table([n], 0..=params.vertex_count()).unwrap();
        for row in &rows {
            assert_eq!(row.min_edges == 0, row.l <= alpha, "n={n} l={}", row.l);
        }
        assert!(rows.windows(2).all(|w| w[0].min_edges <= w[1].min_edges));
        assert_eq!(rows.last().unwrap().min_edges, params.total_edges());
    }
}

#[test]
fn constructions_never_beat_the_exact_value() {
    for n in 3..=7 {
        let params = GraphParams::new(n).unwrap();
        let mut oracle = MinEdgesOracle::new(params).unwrap();
        for l in 0..=params.vertex_count() {
            let exact = oracle.solve(l).unwrap().min_edges;
            for kind in [
                ConstructionKind::PairStars,
                ConstructionKind::Type2Blocks,
                ConstructionKind::Mixed,
            ] {
                let c = min_edges_upper_construction(params, l, kind).unwrap();
                assert_eq!(c.produced.len(), l);
                assert!(c.edges >= exact, "n={n} l={l} {kind:?}");
            }
        }
    }
}

#[test]
fn small_stars_are_edge_free() {
    for n in 3..=30 {
        let params = GraphParams::new(n).unwrap();
        let c = min_edges_upper_construction(params, n - 2, ConstructionKind::PairStars).unwrap();
        assert_eq!(c.edges, 0);
    }
}

#[test]
fn rows_sorted_and_capped() {
    let rows = min_edges_table([6, 4, 5], [3, 1, 2]).unwrap();
    let keys: Vec<(usize, usize)> = rows.iter().map(|r| (r.n, r.l)).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(min_edges_exact(GraphParams::new(10).unwrap(), 30).is_err());
}
