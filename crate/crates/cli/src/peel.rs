use std::collections::BTreeMap;
use std::fs;

use g31x_core::graph::count_edges;
use g31x_core::peeling::{peel, ExtractMode, PeelOptions, PeelReport, StepLimit};
use g31x_core::structure::GreedyOrder;
use g31x_core::{GraphParams, VertexSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{Format, Mode, PeelArgs};
use crate::output::{emit, format_g};
use crate::Failure;

#[derive(Serialize)]
struct Params {
    n: usize,
    l: usize,
    rho: Option<usize>,
    mode: &'static str,
    seed: Option<u64>,
}

#[derive(Serialize)]
struct Step {
    i: usize,
    alpha: usize,
    histogram: BTreeMap<usize, u64>,
    cross_edges: u64,
    paper_tally: u64,
}

#[derive(Serialize)]
struct Totals {
    cross_edges: u64,
    bound_total: Option<f64>,
    #[serde(rename = "r_of_W")]
    r_of_w: u64,
}

#[derive(Serialize)]
struct Report {
    params: Params,
    steps: Vec<Step>,
    totals: Totals,
}

/// Parses one triple per line; blank lines and `#` comments are skipped.
pub fn parse_triples(text: &str, n: usize) -> Result<VertexSet, Failure> {
    let mut triples = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums: Vec<usize> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| Failure::Config(format!("line {}: not a triple", no + 1)))?;
        let [a, b, c] = nums[..] else {
            return Err(Failure::Config(format!(
                "line {}: expected 3 elements",
                no + 1
            )));
        };
        triples.push([a, b, c]);
    }
    VertexSet::from_triples(n, &triples).map_err(|e| Failure::Config(e.to_string()))
}

fn build_set(a: &PeelArgs) -> Result<VertexSet, Failure> {
    let params = GraphParams::new(a.n)?;
    if let Some(path) = &a.input {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        return parse_triples(&text, a.n);
    }
    match a.l {
        Some(l) => {
            let seed = a
                .seed
                .ok_or_else(|| Failure::Config("--seed is required with --l".into()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(VertexSet::random(a.n, l, &mut rng)?)
        }
        None => Ok(params.full_set()),
    }
}

fn options(a: &PeelArgs) -> Result<PeelOptions, Failure> {
    let mode = match a.mode {
        Mode::Exact => ExtractMode::ExactMax,
        Mode::Auto => ExtractMode::Auto,
        Mode::Greedy => ExtractMode::GreedyMaximal(match a.seed {
            Some(s) => GreedyOrder::Shuffled(s),
            None => GreedyOrder::Rank,
        }),
    };
    let steps = match a.steps.as_str() {
        "target" => StepLimit::Target,
        "all" => StepLimit::UntilEmpty,
        k => StepLimit::Count(
            k.parse()
                .map_err(|_| Failure::Config(format!("bad --steps `{k}`")))?,
        ),
    };
    Ok(PeelOptions {
        mode,
        steps,
        exact_cap: a.cap_exact,
        rho: a.rho,
    })
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Exact => "exact",
        Mode::Greedy => "greedy",
        Mode::Auto => "auto",
    }
}

fn report(a: &PeelArgs, w: &VertexSet, r: &PeelReport) -> Report {
    Report {
        params: Params {
            n: a.n,
            l: w.len(),
            rho: a.rho,
            mode: mode_name(a.mode),
            seed: a.seed,
        },
        steps: r
            .steps
            .iter()
            .map(|s| Step {
                i: s.index,
                alpha: s.alpha,
                histogram: s.histogram.entries().collect(),
                cross_edges: s.cross_edges,
                paper_tally: s.paper_tally,
            })
            .collect(),
        totals: Totals {
            cross_edges: r.total_cross_edges,
            bound_total: r.bound_total,
            r_of_w: count_edges(w),
        },
    }
}

pub fn run(a: &PeelArgs) -> Result<(), Failure> {
    let w = build_set(a)?;
    let opts = options(a)?;
    let r = peel(&w, &opts)?;
    r.check(&w).map_err(Failure::Verify)?;
    let rep = report(a, &w, &r);
    let bytes = match a.format {
        Format::Json => {
            let mut v = serde_json::to_vec_pretty(&rep).expect("serializable");
            v.push(b'\n');
            v
        }
        Format::Csv | Format::Text => {
            let mut wtr = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Failure::Io(e.to_string());
            wtr.write_record(["i", "alpha", "cross_edges", "paper_tally", "histogram"])
                .map_err(io)?;
            for s in &rep.steps {
                let hist: Vec<String> = s
                    .histogram
                    .iter()
                    .map(|(k, v)| format!("{k}:{v}"))
                    .collect();
                wtr.write_record([
                    s.i.to_string(),
                    s.alpha.to_string(),
                    s.cross_edges.to_string(),
                    s.paper_tally.to_string(),
                    hist.join(" "),
                ])
                .map_err(io)?;
            }
            let mut v = wtr.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
            let bound = rep.totals.bound_total.map_or("NA".into(), format_g);
            v.extend(
                format!(
                    "# totals cross_edges={} bound_total={} r_of_W={}\n",
                    rep.totals.cross_edges, bound, rep.totals.r_of_w
                )
                .bytes(),
            );
            v
        }
    };
    emit(a.output.out.as_deref(), &bytes)
}

#[cfg(test)]
mod tests {
    use super::parse_triples;

    #[test]
    fn triples_file() {
        let w = parse_triples("# comment\n1 2 3\n\n4,5,6\n", 6).unwrap();
        assert_eq!(w.len(), 2);
        assert!(parse_triples("1 2\n", 6).is_err());
        assert!(parse_triples("1 2 9\n", 6).is_err());
        assert!(parse_triples("a b c\n", 6).is_err());
    }
}
