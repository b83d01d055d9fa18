use g31x_core::bounds::{self, BoundInputs, BoundValue};
use g31x_core::combinatorics::binomial;
use g31x_core::oracle::{MinEdgesOracle, MAX_BNB_N};
use g31x_core::structure::alpha_exact_with_cap;
use g31x_core::GraphParams;
use num::ToPrimitive;
use rayon::prelude::*;

use crate::args::{AlphaSource, BoundsArgs, Format};
use crate::output::{emit, format_g};
use crate::{parse_range, Failure};

/// Keeps `C(n,3)` inside `u64`.
const MAX_BOUNDS_N: usize = 4_000_000;

pub const COLUMNS: [&str; 19] = [
    "n",
    "l",
    "rho",
    "c",
    "alpha_used",
    "oracle",
    "thm1_c12",
    "thm1_c3_lo",
    "thm1_c3_hi",
    "thm1_c4",
    "thm2_lo",
    "thm3_p1_hi",
    "thm3_p2_lo",
    "thm3_p3_lo",
    "thm3_p4_lo",
    "f1_hi",
    "f2_lo",
    "thm4_lo",
    "peel_total_lo",
];

#[derive(Clone, Debug)]
enum Cell {
    Int(u64),
    Real(f64),
    Na,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => format_g(*v),
            Cell::Na => "NA".into(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Int(v) => (*v).into(),
            // keep the same 6 significant digits as the CSV
            Cell::Real(v) => format_g(*v)
                .parse::<f64>()
                .ok()
                .and_then(serde_json::Number::from_f64)
                .map_or(serde_json::Value::Null, serde_json::Value::Number),
            Cell::Na => serde_json::Value::Null,
        }
    }
}

fn real(v: Result<BoundValue, g31x_core::Error>) -> Cell {
    v.map_or(Cell::Na, |b| Cell::Real(b.to_f64()))
}

struct Grid {
    ns: Vec<usize>,
    ls: Vec<usize>,
}

fn grid(a: &BoundsArgs) -> Result<Grid, Failure> {
    let ns = match (a.n, &a.n_range) {
        (Some(n), _) => vec![n],
        (None, Some(r)) => parse_range(r, false)?,
        (None, None) => return Err(Failure::Config("--n or --n-range is required".into())),
    };
    let ls = match (a.l, &a.l_range) {
        (Some(l), _) => vec![l],
        (None, Some(r)) => parse_range(r, true)?,
        (None, None) => return Err(Failure::Config("--l or --l-range is required".into())),
    };
    if let Some(&n) = ns.iter().find(|&&n| n < 3) {
        return Err(Failure::Config(format!("n = {n} is below 3")));
    }
    if let Some(&n) = ns.iter().find(|&&n| n > MAX_BOUNDS_N) {
        return Err(Failure::Config(format!("n = {n} exceeds {MAX_BOUNDS_N}")));
    }
    if let Some(rho) = a.rho {
        if ns.iter().all(|&n| rho > n) {
            return Err(Failure::Config(format!(
                "--rho {rho} exceeds every n in the grid"
            )));
        }
    }
    Ok(Grid { ns, ls })
}

fn rows_for_n(n: usize, ls: &[usize], a: &BoundsArgs) -> Result<Vec<Vec<Cell>>, Failure> {
    // bounds are plain arithmetic; the graph itself is only built for exact cells
    let params = GraphParams::new(n).ok();
    let alpha = match (a.alpha, params) {
        (AlphaSource::Exact, Some(p)) => alpha_exact_with_cap(p, a.cap_exact).unwrap_or(n),
        _ => n,
    };
    let mut oracle = match params {
        Some(p) if n <= a.cap_exact.min(MAX_BNB_N) => Some(MinEdgesOracle::new(p)?),
        _ => None,
    };
    let vertex_count = binomial(n as u64, 3);
    let rho = a.rho.filter(|&r| r <= n);
    let mut rows = Vec::new();
    for &l in ls.iter().filter(|&&l| l as u64 <= vertex_count) {
        let mut input = BoundInputs::new(n as u64, l as u64)?.with_alpha(alpha as u64);
        if let Some(r) = rho {
            input = input.with_rho(r as u64)?;
        }
        let oracle_cell = match oracle.as_mut() {
            Some(o) => Cell::Int(o.solve(l)?.min_edges),
            None => Cell::Na,
        };
        let (c3_lo, c3_hi) = match bounds::thm1_case3_bounds(&input) {
            Ok((lo, hi)) => (Cell::Real(lo.to_f64()), Cell::Real(hi.to_f64())),
            Err(_) => (Cell::Na, Cell::Na),
        };
        rows.push(vec![
            Cell::Int(n as u64),
            Cell::Int(l as u64),
            a.rho.map_or(Cell::Na, |r| Cell::Int(r as u64)),
            Cell::Real(input.c().to_f64().unwrap_or(f64::NAN)),
            Cell::Int(alpha as u64),
            oracle_cell,
            real(bounds::thm1_case12_main(&input)),
            c3_lo,
            c3_hi,
            real(Ok(bounds::thm1_case4_main(&input))),
            real(Ok(bounds::thm2_lower_main(&input))),
            real(bounds::thm3_pt1_upper_main(&input)),
            real(Ok(bounds::thm3_pt2_lower_main(&input))),
            real(Ok(bounds::thm3_pt3_lower_main(&input))),
            real(Ok(bounds::thm3_pt4_lower(&input))),
            real(Ok(bounds::formula1_upper(&input))),
            real(Ok(bounds::formula2_lower(&input))),
            real(bounds::thm4_lower_main(&input)),
            real(bounds::peeling_total_lower(&input)),
        ]);
    }
    Ok(rows)
}

pub fn run(a: &BoundsArgs) -> Result<(), Failure> {
    let g = grid(a)?;
    // one task per n; rows are reassembled in grid order
    let per_n: Vec<Result<Vec<Vec<Cell>>, Failure>> =
        g.ns.par_iter().map(|&n| rows_for_n(n, &g.ls, a)).collect();
    let mut rows = Vec::new();
    for r in per_n {
        rows.extend(r?);
    }
    let bytes = match a.format {
        Format::Csv | Format::Text => to_csv(&rows)?,
        Format::Json => to_json(&rows),
    };
    emit(a.output.out.as_deref(), &bytes)
}

fn to_csv(rows: &[Vec<Cell>]) -> Result<Vec<u8>, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::Io(e.to_string());
    w.write_record(COLUMNS).map_err(io)?;
    for row in rows {
        w.write_record(row.iter().map(Cell::text)).map_err(io)?;
    }
    w.into_inner().map_err(|e| Failure::Io(e.to_string()))
}

fn to_json(rows: &[Vec<Cell>]) -> Vec<u8> {
    let objects: Vec<serde_json::Value> = rows
        .iter()
        .map(|row| {
            let map: serde_json::Map<String, serde_json::Value> = COLUMNS
                .iter()
                .zip(row)
                .map(|(k, v)| (k.to_string(), v.json()))
                .collect();
            serde_json::Value::Object(map)
        })
        .collect();
    let mut out = serde_json::to_vec_pretty(&objects).expect("serializable");
    out.push(b'\n');
    out
}
