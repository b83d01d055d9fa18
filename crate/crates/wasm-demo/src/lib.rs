//! Browser bindings: graph parameters, bound curves over the co-density, and
//! peeling histograms. Every export returns a JSON string.

use g31x_core::bounds::{self, BoundInputs};
use g31x_core::graph::count_edges;
use g31x_core::peeling::{peel, ExtractMode, PeelOptions, StepLimit};
use g31x_core::structure::{alpha_exact_with_cap, GreedyOrder};
use g31x_core::{GraphParams, VertexSet};
use num::{BigInt, BigRational, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest n for the exact independence number in the page.
const ALPHA_CAP_N: usize = 10;
/// Largest |W| the page will peel.
const MAX_PEEL: usize = 4000;

#[derive(Serialize)]
struct Info {
    n: usize,
    vertices: usize,
    degree: u64,
    edges: u64,
    alpha: Option<usize>,
}

pub fn info_json(n: usize) -> Result<String, String> {
    let p = GraphParams::new(n).map_err(|e| e.to_string())?;
    let info = Info {
        n,
        vertices: p.vertex_count(),
        degree: p.degree(),
        edges: p.total_edges(),
        alpha: alpha_exact_with_cap(p, ALPHA_CAP_N).ok(),
    };
    Ok(serde_json::to_string(&info).expect("serializable"))
}

#[derive(Serialize)]
struct Curves {
    n: u64,
    rho: Option<u64>,
    c: Vec<f64>,
    series: Vec<Series>,
}

#[derive(Serialize)]
struct Series {
    name: &'static str,
    values: Vec<Option<f64>>,
}

/// Every dense-regime bound, scaled by `n⁵/8`, at `points + 1` equally spaced `c ∈ [0, 1]`.
pub fn curves_json(n: u64, points: u32, rho: Option<u64>) -> Result<String, String> {
    if !(3..=4_000_000).contains(&n) {
        return Err(format!("n = {n} is outside 3..=4000000"));
    }
    let points = points.clamp(1, 1000);
    let scale = (n as f64).powi(5) / 8.0;
    let names = [
        "f1_hi",
        "f2_lo",
        "thm2_lo",
        "thm3_p2_lo",
        "thm3_p3_lo",
        "thm3_p4_lo",
        "thm4_lo",
    ];
    let mut series: Vec<Series> = names
        .iter()
        .map(|&name| Series {
            name,
            values: Vec::new(),
        })
        .collect();
    let mut cs = Vec::new();
    for i in 0..=points {
        let c = BigRational::new(BigInt::from(i), BigInt::from(points));
        let mut input = BoundInputs::from_codensity(n, c.clone()).map_err(|e| e.to_string())?;
        if let Some(r) = rho {
            input = input.with_rho(r).map_err(|e| e.to_string())?;
        }
        let values = [
            Some(bounds::formula1_upper(&input)),
            Some(bounds::formula2_lower(&input)),
            Some(bounds::thm2_lower_main(&input)),
            Some(bounds::thm3_pt2_lower_main(&input)),
            Some(bounds::thm3_pt3_lower_main(&input)),
            Some(bounds::thm3_pt4_lower(&input)),
            bounds::thm4_lower_main(&input).ok(),
        ];
        for (s, v) in series.iter_mut().zip(values) {
            s.values.push(v.map(|b| b.to_f64() / scale));
        }
        cs.push(c.to_f64().unwrap_or(f64::NAN));
    }
    let out = Curves {
        n,
        rho,
        c: cs,
        series,
    };
    Ok(serde_json::to_string(&out).expect("serializable"))
}

#[derive(Serialize)]
struct PeelOut {
    n: usize,
    l: usize,
    r_of_w: u64,
    total_cross_edges: u64,
    steps: Vec<PeelStepOut>,
}

#[derive(Serialize)]
struct PeelStepOut {
    i: usize,
    alpha: usize,
    cross_edges: u64,
    paper_tally: u64,
    histogram: Vec<(usize, u64)>,
}

/// Peels a seeded random `W` of size `l` until it is empty.
pub fn peel_json(n: usize, l: usize, seed: u64, greedy: bool) -> Result<String, String> {
    if l > MAX_PEEL {
        return Err(format!("l = {l} is above the page limit {MAX_PEEL}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = VertexSet::random(n, l, &mut rng).map_err(|e| e.to_string())?;
    let opts = PeelOptions {
        mode: if greedy {
            ExtractMode::GreedyMaximal(GreedyOrder::Shuffled(seed))
        } else {
            ExtractMode::Auto
        },
        steps: StepLimit::UntilEmpty,
        exact_cap: 80,
        rho: None,
    };
    let report = peel(&w, &opts).map_err(|e| e.to_string())?;
    let out = PeelOut {
        n,
        l,
        r_of_w: count_edges(&w),
        total_cross_edges: report.total_cross_edges,
        steps: report
            .steps
            .iter()
            .map(|s| PeelStepOut {
                i: s.index,
                alpha: s.alpha,
                cross_edges: s.cross_edges,
                paper_tally: s.paper_tally,
                histogram: s.histogram.entries().collect(),
            })
            .collect(),
    };
    Ok(serde_json::to_string(&out).expect("serializable"))
}

#[wasm_bindgen]
pub fn graph_info(n: usize) -> Result<String, JsValue> {
    info_json(n).map_err(|e| JsValue::from_str(&e))
}

/// `rho < 0` leaves the ρ-dependent curve out.
#[wasm_bindgen]
pub fn bound_curves(n: u32, points: u32, rho: i32) -> Result<String, JsValue> {
    let rho = u64::try_from(rho).ok();
    curves_json(n as u64, points, rho).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn peel_histogram(n: usize, l: usize, seed: u32, greedy: bool) -> Result<String, JsValue> {
    peel_json(n, l, seed as u64, greedy).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn info() {
        let v: serde_json::Value = serde_json::from_str(&info_json(6).unwrap()).unwrap();
        assert_eq!(v["edges"], 90);
        assert_eq!(v["alpha"], 4);
        assert!(info_json(2).is_err());
    }

    #[test]
    fn curves() {
        let v: serde_json::Value =
            serde_json::from_str(&curves_json(1000, 10, Some(5)).unwrap()).unwrap();
        assert_eq!(v["c"].as_array().unwrap().len(), 11);
        let f1 = &v["series"][0];
        assert_eq!(f1["name"], "f1_hi");
        // (1 − c)² at c = 0 and c = 1
        assert_eq!(f1["values"][0], 1.0);
        assert_eq!(f1["values"][10], 0.0);
        let no_rho: serde_json::Value =
            serde_json::from_str(&curves_json(50, 4, None).unwrap()).unwrap();
        assert!(no_rho["series"][6]["values"][0].is_null());
        assert!(curves_json(2, 4, None).is_err());
    }

    #[test]
    fn peeling() {
        let v: serde_json::Value =
            serde_json::from_str(&peel_json(8, 40, 3, false).unwrap()).unwrap();
        let alphas: u64 = v["steps"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| s["alpha"].as_u64().unwrap())
            .sum();
        assert_eq!(alphas, 40);
        assert!(v["total_cross_edges"].as_u64() <= v["r_of_w"].as_u64());
        assert_eq!(
            peel_json(8, 40, 3, true).unwrap(),
            peel_json(8, 40, 3, true).unwrap()
        );
        assert!(peel_json(8, 57, 1, false).is_err());
    }
}
