use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use g31x_core::combinatorics::binomial;
use g31x_core::graph::{count_edges, is_edge};
use g31x_core::oracle::{MinEdgesOracle, MAX_EXHAUSTIVE_VERTICES};
use g31x_core::peeling::{check_lemma1, check_lemma2, peel, ExtractMode, PeelOptions, StepLimit};
use g31x_core::structure::{
    all_maximum_independent_sets, alpha_exact, decompose, diameter, greedy_maximal_independent_set,
    r_rho, validate_decomposition, DiameterSearch, GreedyOrder, IndependentSet, StarMode,
};
use g31x_core::{GraphParams, Vertex, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::VerifyArgs;
use crate::output::emit;
use crate::{parse_range, Failure};

/// Largest n for the exhaustive decomposition suite.
const MAX_DECOMPOSE_N: usize = 8;
/// Largest |W| for the brute-force diameter check.
const MAX_BRUTE_W: usize = 12;

#[derive(Default)]
struct Tally {
    passed: usize,
    total: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if ok {
            self.passed += 1;
        } else if self.first_failure.is_none() {
            self.first_failure = Some(what());
        }
    }

    fn ok(&self) -> bool {
        self.passed == self.total
    }
}

struct Ctx {
    ns: Vec<usize>,
    samples: usize,
    rng: ChaCha8Rng,
    cap_exact: usize,
    mode: StarMode,
    tamper: bool,
}

impl Ctx {
    fn random_n(&mut self) -> usize {
        self.ns[self.rng.gen_range(0..self.ns.len())]
    }

    fn random_set(&mut self, n: usize, max_len: usize) -> VertexSet {
        let count = binomial(n as u64, 3) as usize;
        let l = self.rng.gen_range(0..=count.min(max_len));
        VertexSet::random(n, l, &mut self.rng).expect("size within range")
    }
}

/// Pairwise edge count with an optional deliberately wrong entry: the pair
/// `{1,2,3}`, `{1,2,4}` is reported as an edge.
fn reference_edges(w: &VertexSet, tamper: bool) -> u64 {
    let vs = w.to_vec();
    let bad = |x: &Vertex, y: &Vertex| {
        let mut r = [x.rank(), y.rank()];
        r.sort_unstable();
        tamper && r == [0, 1]
    };
    let mut e = 0;
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if is_edge(&vs[i], &vs[j]) != bad(&vs[i], &vs[j]) {
                e += 1;
            }
        }
    }
    e
}

fn suite_adjacency(ctx: &mut Ctx) -> Tally {
    let mut t = Tally::default();
    for n in ctx.ns.clone() {
        let full = GraphParams::new(n).expect("validated").full_set();
        let (a, b) = (count_edges(&full), reference_edges(&full, ctx.tamper));
        t.record(a == b, || format!("n={n}: kernel {a} vs pairwise {b}"));
    }
    for _ in 0..ctx.samples {
        let n = ctx.random_n();
        let w = ctx.random_set(n, usize::MAX);
        let (a, b) = (count_edges(&w), reference_edges(&w, ctx.tamper));
        t.record(a == b, || {
            format!("n={n} |W|={}: kernel {a} vs pairwise {b}", w.len())
        });
    }
    t
}

fn check_decomposition(u: &IndependentSet) -> Result<(), String> {
    let d = decompose(u).map_err(|e| e.to_string())?;
    validate_decomposition(u.members(), &d)
}

fn suite_decomposition(ctx: &mut Ctx) -> Tally {
    let mut t = Tally::default();
    for n in ctx.ns.clone().into_iter().filter(|&n| n <= MAX_DECOMPOSE_N) {
        let full = GraphParams::new(n).expect("validated").full_set();
        match all_maximum_independent_sets(&full, full.len()) {
            Ok(all) => {
                for u in all {
                    let r = check_decomposition(&u);
                    t.record(r.is_ok(), || format!("n={n}: {}", r.unwrap_err()));
                }
            }
            Err(e) => t.record(false, || format!("n={n}: {e}")),
        }
    }
    for k in 0..ctx.samples {
        let n = ctx.random_n();
        let w = ctx.random_set(n, usize::MAX);
        let u = greedy_maximal_independent_set(&w, GreedyOrder::Shuffled(k as u64));
        let r = check_decomposition(&u);
        t.record(r.is_ok(), || {
            format!("n={n} sample {k}: {}", r.unwrap_err())
        });
    }
    t
}

fn suite_lemmas(ctx: &mut Ctx) -> Tally {
    let mut t = Tally::default();
    for k in 0..ctx.samples {
        let n = ctx.random_n();
        let w = ctx.random_set(n, usize::MAX);
        let opts = PeelOptions {
            mode: ExtractMode::Auto,
            steps: StepLimit::UntilEmpty,
            exact_cap: 60,
            rho: Some(n),
        };
        let outcome = (|| -> Result<(), String> {
            let report = peel(&w, &opts).map_err(|e| e.to_string())?;
            report.check(&w)?;
            let mut h = w.clone();
            for s in &report.steps {
                let l1 = check_lemma1(&h, &s.extracted).map_err(|e| e.to_string())?;
                let l2 = check_lemma2(&h, &s.extracted, n).map_err(|e| e.to_string())?;
                if !l1.holds || !l2.holds {
                    return Err(format!("step {}: lemma cap exceeded", s.index));
                }
                h = h
                    .difference(s.extracted.members())
                    .map_err(|e| e.to_string())?;
            }
            Ok(())
        })();
        t.record(outcome.is_ok(), || {
            format!("n={n} sample {k}: {}", outcome.unwrap_err())
        });
    }
    t
}

fn suite_oracle(ctx: &mut Ctx) -> Tally {
    let mut t = Tally::default();
    for n in ctx.ns.clone() {
        let params = GraphParams::new(n).expect("validated");
        if n > ctx.cap_exact || params.vertex_count() > MAX_EXHAUSTIVE_VERTICES {
            continue;
        }
        let outcome = (|| -> Result<(), String> {
            let mut ex = MinEdgesOracle::exhaustive(params).map_err(|e| e.to_string())?;
            let mut bb = MinEdgesOracle::branch_and_bound(params).map_err(|e| e.to_string())?;
            let alpha = alpha_exact(params).map_err(|e| e.to_string())?;
            for l in 0..=params.vertex_count() {
                let a = ex.solve(l).map_err(|e| e.to_string())?;
                let b = bb.solve(l).map_err(|e| e.to_string())?;
                if a.min_edges != b.min_edges {
                    return Err(format!(
                        "l={l}: exhaustive {} vs search {}",
                        a.min_edges, b.min_edges
                    ));
                }
                if (a.min_edges == 0) != (l <= alpha) {
                    return Err(format!("l={l}: zero pattern disagrees with alpha={alpha}"));
                }
            }
            Ok(())
        })();
        t.record(outcome.is_ok(), || {
            format!("n={n}: {}", outcome.unwrap_err())
        });
    }
    t
}

/// Star check from the definition: independent, every class of the
/// "meet in two elements" relation a single vertex or a sunflower of at least
/// three triples on a common pair; strict mode refuses one lone single.
fn star_by_definition(vs: &[Vertex], mode: StarMode) -> bool {
    let k = vs.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for i in 0..k {
        for j in i + 1..k {
            match vs[i].meet(&vs[j]) {
                1 => return false,
                2 => {
                    let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                    parent[a] = b;
                }
                _ => {}
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<Vertex>> = BTreeMap::new();
    for (i, v) in vs.iter().enumerate() {
        classes.entry(root(&mut parent, i)).or_default().push(*v);
    }
    let mut singles = 0;
    for class in classes.values() {
        match class.len() {
            1 => singles += 1,
            2 => return false,
            _ => {
                let common = class
                    .iter()
                    .map(|v| v.elements().into_iter().collect::<BTreeSet<_>>())
                    .reduce(|a, b| a.intersection(&b).copied().collect())
                    .unwrap_or_default();
                if common.len() != 2 {
                    return false;
                }
            }
        }
    }
    mode == StarMode::Lenient || singles != 1
}

fn brute_diameter(w: &VertexSet, mode: StarMode) -> usize {
    let vs = w.to_vec();
    (0u32..1 << vs.len())
        .filter_map(|mask| {
            let sub: Vec<Vertex> = (0..vs.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| vs[i])
                .collect();
            star_by_definition(&sub, mode).then(|| {
                sub.iter()
                    .flat_map(|v| v.elements())
                    .collect::<BTreeSet<_>>()
                    .len()
            })
        })
        .max()
        .unwrap_or(0)
}

fn suite_diameter(ctx: &mut Ctx) -> Tally {
    let mut t = Tally::default();
    let small: Vec<usize> = ctx.ns.iter().copied().filter(|&n| n <= 10).collect();
    if small.is_empty() {
        return t;
    }
    for k in 0..ctx.samples {
        let n = small[ctx.rng.gen_range(0..small.len())];
        let w = ctx.random_set(n, MAX_BRUTE_W);
        let outcome = (|| -> Result<(), String> {
            let got =
                diameter(&w, DiameterSearch::default(), ctx.mode).map_err(|e| e.to_string())?;
            let want = brute_diameter(&w, ctx.mode);
            if got.value != want {
                return Err(format!("d(W) {} vs enumeration {want}", got.value));
            }
            for rho in 0..=n {
                let r = r_rho(&w, rho, ctx.mode).map_err(|e| e.to_string())?;
                let sentinel = r == binomial(n as u64, 5) && want > rho;
                if !(sentinel || (want <= rho && r == count_edges(&w))) {
                    return Err(format!("r_rho at rho={rho} is {r}"));
                }
            }
            Ok(())
        })();
        t.record(outcome.is_ok(), || {
            format!("n={n} sample {k}: {}", outcome.unwrap_err())
        });
    }
    t
}

pub fn run(a: &VerifyArgs) -> Result<(), Failure> {
    let ns = parse_range(&a.n_range, false)?;
    for &n in &ns {
        GraphParams::new(n)?;
    }
    if a.samples > 0 && a.seed.is_none() {
        return Err(Failure::Config(
            "--seed is required when --samples > 0".into(),
        ));
    }
    if a.samples == 0 {
        eprintln!("warning: --samples 0; the sampled suites pass vacuously");
    }
    let mut ctx = Ctx {
        ns,
        samples: a.samples,
        rng: ChaCha8Rng::seed_from_u64(a.seed.unwrap_or(0)),
        cap_exact: a.cap_exact,
        mode: if a.strict_star {
            StarMode::Strict
        } else {
            StarMode::Lenient
        },
        tamper: a.tamper_adjacency,
    };
    type Suite = fn(&mut Ctx) -> Tally;
    let suites: [(&str, Suite); 5] = [
        ("adjacency", suite_adjacency),
        ("decomposition", suite_decomposition),
        ("lemmas", suite_lemmas),
        ("oracle", suite_oracle),
        ("diameter", suite_diameter),
    ];
    let mut text = String::new();
    let mut failed = Vec::new();
    for (name, suite) in suites {
        let t = suite(&mut ctx);
        let _ = writeln!(text, "{name}: {}/{} passed", t.passed, t.total);
        if let Some(f) = &t.first_failure {
            let _ = writeln!(text, "  first failure: {f}");
        }
        if !t.ok() {
            failed.push(name);
        }
    }
    let verdict = if failed.is_empty() { "PASS" } else { "FAIL" };
    let _ = writeln!(text, "verify: {verdict}");
    emit(a.output.out.as_deref(), text.as_bytes())?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verify(format!(
            "suites failed: {}",
            failed.join(", ")
        )))
    }
}
