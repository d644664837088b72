use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use lll_core::approx::{choose_n, dependency_graph, power_coloring, run_truncated, AtomMap, ChooseConfig, ShadowIndex};
use lll_core::apps::{self, Topology};
use lll_core::entropy::complexity::{gen_complexity_instance, Surrogate};
use lll_core::entropy::{
    counting_bound, decode, empirical_entropy, encode, entropy_instance_params, quasi_tile, Decompressor, FolnerSeq,
    Interval, PlanRule,
};
use lll_core::graph::SimpleGraph;
use lll_core::process::{run_with_rule, violated_domains, RunStatus, SelectionRule};
use lll_core::witness::{appears_in, pile_to_tree, traceback, validate_pile, verify_index_bound, DomainOrder, Pile};
use lll_core::{check_eps_correct, check_glll, check_slll, suggest_omega, Instance, Table};

use crate::config::*;

#[derive(Debug)]
pub enum ExecError {
    /// Bad arguments or malformed input files.
    Input(String),
    Failed(String),
}

impl std::fmt::Display for ExecError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExecError::Input(m) => write!(f, "invalid input: {m}"),
            ExecError::Failed(m) => write!(f, "{m}"),
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> ExecError {
    ExecError::Input(e.to_string())
}

fn failed<E: std::fmt::Display>(e: E) -> ExecError {
    ExecError::Failed(e.to_string())
}

pub struct Outcome {
    pub result: Value,
    pub seed: Option<u64>,
    pub step_limit_hit: bool,
    pub plot: Option<String>,
}

impl Outcome {
    fn new(result: Value) -> Self {
        Outcome { result, seed: None, step_limit_hit: false, plot: None }
    }

    fn seeded(result: Value, seed: u64) -> Self {
        Outcome { result, seed: Some(seed), step_limit_hit: false, plot: None }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn read(path: &Path) -> Result<String, ExecError> {
    std::fs::read_to_string(path).map_err(|e| ExecError::Input(format!("{}: {e}", path.display())))
}

pub fn load_instance(path: &Path) -> Result<Instance, ExecError> {
    let text = read(path)?;
    Instance::from_json(&text).map_err(|e| match e {
        lll_core::InstanceError::Json { line, column, msg } => {
            ExecError::Input(format!("{}:{line}:{column}: {msg}", path.display()))
        }
        other => ExecError::Input(format!("{}: {other}", path.display())),
    })
}

fn omega_for(inst: &Instance, o: &OmegaArgs) -> Result<(Vec<f64>, &'static str), ExecError> {
    if let Some(p) = &o.omega {
        let w: Vec<f64> = serde_json::from_str(&read(p)?).map_err(|e| ExecError::Input(format!("{}: {e}", p.display())))?;
        if w.len() != inst.num_events() {
            return Err(ExecError::Input(format!("{} weights for {} events", w.len(), inst.num_events())));
        }
        return Ok((w, "file"));
    }
    if let Some(c) = o.omega_const {
        return Ok((vec![c; inst.num_events()], "constant"));
    }
    suggest_omega(inst, 10_000).map(|w| (w, "suggested")).map_err(failed)
}

pub fn parse_graph(spec: &str) -> Result<SimpleGraph, ExecError> {
    let (kind, rest) = spec.split_once(':').ok_or_else(|| ExecError::Input(format!("graph spec {spec:?} lacks ':'")))?;
    if kind == "file" {
        return serde_json::from_str(&read(Path::new(rest))?).map_err(|e| ExecError::Input(format!("{rest}: {e}")));
    }
    let nums: Vec<u64> = rest
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|e| ExecError::Input(format!("graph spec {spec:?}: {e}")))?;
    let want = |k: usize| {
        if nums.len() == k {
            Ok(())
        } else {
            Err(ExecError::Input(format!("graph spec {spec:?} needs {k} numbers")))
        }
    };
    let u = |i: usize| nums[i] as usize;
    match kind {
        "path" => want(1).map(|_| SimpleGraph::path(u(0))),
        "cycle" => want(1).map(|_| SimpleGraph::cycle(u(0))),
        "complete" => want(1).map(|_| SimpleGraph::complete(u(0))),
        "kbip" => want(2).map(|_| SimpleGraph::complete_bipartite(u(0), u(1))),
        "regular-tf" => {
            want(3)?;
            SimpleGraph::random_regular_triangle_free(u(0), u(1), nums[2]).map_err(input)
        }
        "bounded" => want(4).map(|_| SimpleGraph::random_bounded_degree(u(0), u(1), u(2), nums[3])),
        _ => Err(ExecError::Input(format!("unknown graph kind {kind:?}"))),
    }
}

fn topology(h: &HypergraphArgs) -> Topology {
    match h.topology {
        TopologyArg::Cyclic => Topology::Cyclic,
        TopologyArg::Disjoint => Topology::Disjoint,
        TopologyArg::RandomLinear => Topology::RandomLinear { d: h.d, seed: h.graph_seed },
    }
}

fn histogram_csv(counts: &[u64]) -> String {
    let max = counts.iter().copied().max().unwrap_or(0);
    let mut hist = vec![0u64; max as usize + 1];
    for &c in counts {
        hist[c as usize] += 1;
    }
    let mut s = String::from("resamples,domains\n");
    for (r, n) in hist.iter().enumerate() {
        let _ = writeln!(s, "{r},{n}");
    }
    s
}

pub fn execute(cmd: &Cmd) -> Result<Outcome, ExecError> {
    match cmd {
        Cmd::Check(a) => check(a),
        Cmd::Solve(a) => solve(a),
        Cmd::Witness(w) => match w {
            WitnessCmd::Validate(a) => witness_validate(a),
            WitnessCmd::Traceback(a) => witness_traceback(a),
            WitnessCmd::Bound(a) => witness_bound(a),
        },
        Cmd::Approx(a) => approx(a),
        Cmd::Apps(a) => match a {
            AppsCmd::Hypergraph(a) => app_hypergraph(a),
            AppsCmd::Listcolor(a) => app_listcolor(a),
            AppsCmd::Nonrep(a) => app_nonrep(a),
            AppsCmd::Acyclic(a) => app_acyclic(a),
            AppsCmd::Goodcolor(a) => app_goodcolor(a),
            AppsCmd::Regularize(a) => app_regularize(a),
        },
        Cmd::Entropy(e) => match e {
            EntropyCmd::Tile(a) => entropy_tile(a),
            EntropyCmd::Code(a) => entropy_code(a),
            EntropyCmd::Estimate(a) => entropy_estimate(a),
            EntropyCmd::Counting(a) => entropy_counting(a),
            EntropyCmd::Params(a) => entropy_params(a),
            EntropyCmd::Complexity(a) => entropy_complexity(a),
        },
        Cmd::Gen(g) => generate(g),
    }
}

fn check(a: &CheckArgs) -> Result<Outcome, ExecError> {
    let inst = load_instance(&a.instance)?;
    let (cert, source) = match a.mode {
        CheckMode::Slll => (check_slll(&inst).map_err(failed)?, None),
        CheckMode::Glll => {
            let (w, src) = omega_for(&inst, &a.omega)?;
            (check_glll(&inst, &w).map_err(input)?, Some(src))
        }
        CheckMode::Eps => {
            let (w, src) = omega_for(&inst, &a.omega)?;
            (check_eps_correct(&inst, a.epsilon, &w).map_err(input)?, Some(src))
        }
    };
    Ok(Outcome::new(json!({
        "events": inst.num_events(),
        "domains": inst.num_domains(),
        "omega_source": source,
        "certificate": to_value(&cert),
    })))
}

fn solve(a: &SolveArgs) -> Result<Outcome, ExecError> {
    if a.replicas == 0 {
        return Err(ExecError::Input("replicas must be positive".into()));
    }
    let inst = load_instance(&a.instance)?;
    let runs: Vec<(Value, bool, Vec<u64>)> = (0..a.replicas as u64)
        .into_par_iter()
        .map(|i| {
            let seed = a.seed.wrapping_add(i);
            let rule = match a.rule {
                RuleArg::Lex => SelectionRule::Lex,
                RuleArg::Random => SelectionRule::Random { seed },
            };
            let mut table = Table::seeded(seed);
            let trace = run_with_rule(&inst, &mut table, rule, a.step_limit).expect("seeded tables are total");
            let per_domain = trace.resamples_per_domain(inst.num_domains());
            let stabilized = trace.status == RunStatus::Stabilized;
            let surviving = violated_domains(&inst, &trace.f);
            let mut v = json!({
                "replica": i,
                "seed": seed,
                "status": to_value(&trace.status),
                "steps": trace.num_steps(),
                "total_resamples": per_domain.iter().sum::<u64>(),
                "verified": surviving.is_empty(),
                "surviving_domains": surviving,
            });
            if a.replicas == 1 {
                v["assignment"] = to_value(&trace.f);
                v["resamples_per_domain"] = to_value(&per_domain);
            }
            (v, stabilized, per_domain)
        })
        .collect();
    let hit = runs.iter().any(|r| !r.1);
    let stabilized = runs.iter().filter(|r| r.1).count();
    let mut out = Outcome::seeded(
        json!({
            "rule": to_value(&a.rule),
            "step_limit": a.step_limit,
            "stabilized": stabilized,
            "replicas": runs.iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
        }),
        a.seed,
    );
    out.step_limit_hit = hit;
    out.plot = Some(histogram_csv(&runs[0].2));
    Ok(out)
}

fn witness_validate(a: &ValidateArgs) -> Result<Outcome, ExecError> {
    let pile: Pile = serde_json::from_str(&read(&a.pile)?).map_err(|e| ExecError::Input(format!("{}: {e}", a.pile.display())))?;
    let report = validate_pile(&pile);
    let mut result = json!({ "report": to_value(&report) });
    if let (Some(path), Some(seed)) = (&a.instance, a.seed) {
        let inst = load_instance(path)?;
        let mut table = Table::seeded(seed);
        result["appears_in_seeded_table"] = json!(appears_in(&pile, &mut table, &inst).map_err(input)?);
    }
    if report.is_neat {
        if let Ok(tree) = pile_to_tree(&pile, &DomainOrder::Tuple) {
            result["tree"] = to_value(&tree);
        }
    }
    Ok(Outcome { seed: a.seed, ..Outcome::new(result) })
}

fn witness_traceback(a: &TracebackArgs) -> Result<Outcome, ExecError> {
    let inst = load_instance(&a.instance)?;
    let mut table = Table::seeded(a.seed);
    let trace = run_with_rule(&inst, &mut table, SelectionRule::Lex, a.step_limit).expect("seeded tables are total");
    let pile = traceback(&inst, &trace, a.domain, a.step).map_err(input)?;
    let report = validate_pile(&pile);
    let mut fresh = Table::seeded(a.seed);
    let appears = appears_in(&pile, &mut fresh, &inst).map_err(failed)?;
    let tree = pile_to_tree(&pile, &DomainOrder::Tuple).map_err(failed)?;
    Ok(Outcome::seeded(
        json!({
            "domain": a.domain,
            "step": a.step,
            "pile": to_value(&pile),
            "report": to_value(&report),
            "height_is_step_plus_one": report.height == Some(a.step + 1),
            "appears_in_table": appears,
            "tree": to_value(&tree),
        }),
        a.seed,
    ))
}

fn witness_bound(a: &BoundArgs) -> Result<Outcome, ExecError> {
    let inst = load_instance(&a.instance)?;
    if a.domain >= inst.num_domains() {
        return Err(ExecError::Input(format!("domain {} out of range ({} domains)", a.domain, inst.num_domains())));
    }
    let (w, src) = omega_for(&inst, &a.omega)?;
    let r = verify_index_bound(&inst, &w, a.domain, a.tables, a.max_height, a.seed, a.step_limit).map_err(failed)?;
    Ok(Outcome::seeded(
        json!({ "omega_source": src, "lhs": r.mc_mean, "rhs": r.rhs, "lhs_le_rhs": r.mc_within_bound, "report": to_value(&r) }),
        a.seed,
    ))
}

fn approx(a: &ApproxArgs) -> Result<Outcome, ExecError> {
    if !(a.epsilon > 0.0 && a.epsilon < 1.0) {
        return Err(ExecError::Input(format!("epsilon {} outside (0,1)", a.epsilon)));
    }
    let inst = load_instance(&a.instance)?;
    let index = ShadowIndex::new(&inst, &AtomMap::identity(inst.num_vars())).map_err(failed)?;
    let (w, src) = omega_for(&inst, &a.omega)?;
    let cfg = ChooseConfig { max_n: a.max_n, seeds: a.seeds.min(20), first_seed: a.seed };
    let (n, chosen) = match a.n {
        Some(n) => (n, Value::Null),
        None => {
            let r = choose_n(&inst, &w, a.epsilon, &index, cfg).map_err(failed)?;
            (r.n, to_value(&r))
        }
    };
    let g = dependency_graph(&inst);
    let measure = |n: usize| -> Result<Vec<f64>, ExecError> {
        let coloring = power_coloring(&g, n);
        (0..a.seeds as u64)
            .into_par_iter()
            .map(|s| run_truncated(&inst, &index, &coloring, a.seed + s, n, false).map(|r| r.defect.fraction).map_err(failed))
            .collect()
    };
    let fractions = measure(n)?;
    let (mean, se) = lll_core::stats::mean_se(fractions.iter().copied());
    let colors = power_coloring(&g, n).iter().max().map_or(0, |c| c + 1);
    let mut out = Outcome::seeded(
        json!({
            "omega_source": src,
            "epsilon": a.epsilon,
            "n": n,
            "choose_n": chosen,
            "lift_colors": colors,
            "defect_fractions": fractions,
            "mean_defect": mean,
            "se": se,
            "within_epsilon": mean <= a.epsilon,
        }),
        a.seed,
    );
    let mut csv = String::from("n,mean_defect,se\n");
    for k in 0..=n + 2 {
        let f = measure(k)?;
        let (m, s) = lll_core::stats::mean_se(f.into_iter());
        let _ = writeln!(csv, "{k},{m},{s}");
    }
    out.plot = Some(csv);
    Ok(out)
}

fn step_limit_error(e: apps::AppError) -> Result<Outcome, ExecError> {
    match e {
        apps::AppError::StepLimit { steps, surviving } => Ok(Outcome {
            result: json!({ "status": "step_limit", "steps": steps, "surviving": surviving }),
            seed: None,
            step_limit_hit: true,
            plot: None,
        }),
        other => Err(input(other)),
    }
}

fn app_hypergraph(a: &AppHypergraphArgs) -> Result<Outcome, ExecError> {
    let h = apps::gen_hypergraph_2col(a.graph.k, a.graph.n, topology(&a.graph)).map_err(input)?;
    let cert = check_slll(&h.instance).map_err(failed)?;
    let mut table = Table::seeded(a.seed);
    let trace = run_with_rule(&h.instance, &mut table, SelectionRule::Lex, a.step_limit).expect("seeded tables are total");
    let surviving = violated_domains(&h.instance, &trace.f);
    let mut out = Outcome::seeded(
        json!({
            "k": a.graph.k,
            "n": a.graph.n,
            "edges": h.edges.len(),
            "d": h.d,
            "slll_margin": cert.margin,
            "slll_valid": cert.valid,
            "status": to_value(&trace.status),
            "steps": trace.num_steps(),
            "total_resamples": trace.resamples_per_domain(h.instance.num_domains()).iter().sum::<u64>(),
            "verified": surviving.is_empty(),
            "coloring": to_value(&trace.f),
        }),
        a.seed,
    );
    out.step_limit_hit = trace.status != RunStatus::Stabilized;
    Ok(out)
}

fn app_listcolor(a: &ListcolorArgs) -> Result<Outcome, ExecError> {
    let g = parse_graph(&a.graph)?;
    let lists = apps::random_sparse_lists(&g, a.k, a.palette, a.lists_seed).map_err(input)?;
    let mut out = match apps::list_coloring_lll(&g, &lists, a.k, a.seed, a.step_limit) {
        Ok(o) => Outcome::new(json!({
            "vertices": g.n(),
            "max_degree": g.max_degree(),
            "outcome": to_value(&o),
        })),
        Err(e) => step_limit_error(e)?,
    };
    out.seed = Some(a.seed);
    Ok(out)
}

fn app_nonrep(a: &NonrepArgs) -> Result<Outcome, ExecError> {
    let g = parse_graph(&a.graph)?;
    let ni = apps::gen_nonrepetitive(&g, a.palette, a.lmax, a.budget).map_err(input)?;
    let brute = a.brute.then(|| apps::brute_force_nonrepetitive(&g, a.palette, a.lmax));
    let mut table = Table::seeded(a.seed);
    let trace = run_with_rule(&ni.instance, &mut table, SelectionRule::Lex, a.step_limit).expect("seeded tables are total");
    let stabilized = trace.status == RunStatus::Stabilized;
    let mut out = Outcome::seeded(
        json!({
            "paths": ni.paths.len(),
            "brute_force": brute.map(|b| json!({ "satisfiable": b.is_some(), "witness": b })),
            "status": to_value(&trace.status),
            "steps": trace.num_steps(),
            "coloring": stabilized.then(|| to_value(&trace.f)),
            "verified": stabilized && apps::is_nonrepetitive(&g, &trace.f, a.lmax),
        }),
        a.seed,
    );
    out.step_limit_hit = !stabilized;
    Ok(out)
}

fn app_acyclic(a: &AcyclicArgs) -> Result<Outcome, ExecError> {
    let g = parse_graph(&a.graph)?;
    let ai = apps::gen_acyclic(&g, a.palette, a.cmax, a.budget).map_err(input)?;
    let brute = a.brute.then(|| apps::brute_force_acyclic(&g, a.palette, a.cmax));
    let mut table = Table::seeded(a.seed);
    let trace = run_with_rule(&ai.instance, &mut table, SelectionRule::Lex, a.step_limit).expect("seeded tables are total");
    let stabilized = trace.status == RunStatus::Stabilized;
    let mut out = Outcome::seeded(
        json!({
            "cycles": ai.cycles.len(),
            "brute_force": brute.map(|b| json!({ "satisfiable": b.is_some(), "witness": b })),
            "status": to_value(&trace.status),
            "steps": trace.num_steps(),
            "coloring": stabilized.then(|| to_value(&trace.f)),
            "verified": stabilized && apps::is_acyclic_coloring(&g, &trace.f, a.cmax),
        }),
        a.seed,
    );
    out.step_limit_hit = !stabilized;
    Ok(out)
}

fn app_goodcolor(a: &GoodcolorArgs) -> Result<Outcome, ExecError> {
    let g = parse_graph(&a.graph)?;
    let d = g.max_degree();
    let mut out = match apps::good_partial_coloring(&g, a.epsilon, a.seed, a.step_limit) {
        Ok(o) => {
            let ext = apps::greedy_extend(&g, &o.partial);
            let palette = (d / 2) as f64;
            let limit = (1.0 - a.epsilon) * d as f64 + palette;
            let uncolored = o.partial.iter().filter(|c| c.is_none()).count();
            Outcome::new(json!({
                "degree": d,
                "steps": o.steps,
                "resamples": o.resamples,
                "verified_good": o.verified_good,
                "uncolored": uncolored,
                "extension_rounds": ext.rounds,
                "max_new_color": ext.max_new_color,
                "color_limit": limit,
                "proper": g.is_proper(&ext.coloring),
                "within_limit": ext.max_new_color.is_none_or(|c| c as f64 <= limit),
                "coloring": ext.coloring,
            }))
        }
        Err(e) => step_limit_error(e)?,
    };
    out.seed = Some(a.seed);
    Ok(out)
}

fn app_regularize(a: &RegularizeArgs) -> Result<Outcome, ExecError> {
    let g = parse_graph(&a.graph)?;
    let r = apps::regularize(&g, a.d, a.depth).map_err(input)?;
    Ok(Outcome::new(json!({
        "vertices": r.graph.n(),
        "edges": r.graph.num_edges(),
        "girth_before": g.girth(),
        "girth_after": r.graph.girth(),
        "regularized": to_value(&r),
    })))
}

fn entropy_tile(a: &TileArgs) -> Result<Outcome, ExecError> {
    let tiles: Vec<Interval> = a.tiles.iter().map(|&l| Interval::prefix(l)).collect();
    let plan = quasi_tile(Interval::prefix(a.m), &tiles, a.epsilon).map_err(input)?;
    Ok(Outcome::new(json!({ "plan": to_value(&plan), "check": to_value(&plan.verify()), "uncovered": plan.uncovered() })))
}

fn sample_word(rng: &mut ChaCha8Rng, m: usize, s: u32, p: f64) -> Vec<u32> {
    (0..m).map(|_| (0..s).fold(0u32, |v, _| (v << 1) | rng.gen_bool(p) as u32)).collect()
}

fn entropy_code(a: &CodeArgs) -> Result<Outcome, ExecError> {
    let rule = PlanRule::new(a.tiles.clone(), a.epsilon);
    let words: Vec<Vec<u32>> = match &a.word {
        Some(w) => vec![w
            .chars()
            .map(|c| c.to_digit(8).ok_or_else(|| ExecError::Input(format!("bad symbol {c:?}"))))
            .collect::<Result<_, _>>()?],
        None => {
            if !(0.0..=1.0).contains(&a.p) {
                return Err(ExecError::Input(format!("p = {} outside [0,1]", a.p)));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            (0..a.samples.max(1)).map(|_| sample_word(&mut rng, a.m, a.s, a.p)).collect()
        }
    };
    let mut blobs = Vec::new();
    let mut ratios = Vec::new();
    let mut round_trip = true;
    for w in &words {
        let blob = encode(w, a.s, &rule).map_err(input)?;
        round_trip &= decode(&blob.bits, a.s, &rule).map_err(failed)? == (w.len(), w.clone());
        ratios.push(blob.len() as f64 / w.len() as f64);
        blobs.push(blob);
    }
    let (mean, se) = lll_core::stats::mean_se(ratios.iter().copied());
    let mut result = json!({
        "surrogate": "block code length, an upper bound on description length",
        "round_trip": round_trip,
        "mean_bits_per_symbol": mean,
        "se": se,
        "layout": to_value(&blobs[0].layout),
        "bound": to_value(&blobs[0].bound),
    });
    if a.word.is_some() || words.len() == 1 {
        result["blob"] = to_value(&blobs[0]);
    }
    Ok(Outcome { seed: a.word.is_none().then_some(a.seed), ..Outcome::new(result) })
}

fn entropy_estimate(a: &EstimateArgs) -> Result<Outcome, ExecError> {
    if a.window == 0 || a.samples == 0 || !(0.0..=1.0).contains(&a.p) {
        return Err(ExecError::Input("need window ≥ 1, samples ≥ 1 and p in [0,1]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let samples: Vec<Vec<u32>> = (0..a.samples).map(|_| sample_word(&mut rng, a.window, 1, a.p)).collect();
    let est = empirical_entropy(&samples).expect("nonempty uniform-length samples");
    let exact = if a.p <= 0.0 || a.p >= 1.0 { 0.0 } else { -a.p * a.p.log2() - (1.0 - a.p) * (1.0 - a.p).log2() };
    Ok(Outcome::seeded(
        json!({
            "estimate": to_value(&est),
            "binary_entropy": exact,
            "caveat": "plug-in estimator; biased low by roughly miller_madow bits per symbol",
        }),
        a.seed,
    ))
}

fn entropy_counting(a: &CountingArgs) -> Result<Outcome, ExecError> {
    let dec = match a.decompressor {
        DecompressorArg::Identity => Decompressor::Identity,
        DecompressorArg::RunLength => Decompressor::RunLength,
    };
    let r = counting_bound(dec, a.n, a.c).map_err(input)?;
    Ok(Outcome::new(to_value(&r)))
}

fn entropy_params(a: &ParamsArgs) -> Result<Outcome, ExecError> {
    let p = entropy_instance_params(a.epsilon, a.d, a.delta).map_err(input)?;
    Ok(Outcome::new(to_value(&p)))
}

fn entropy_complexity(a: &ComplexityArgs) -> Result<Outcome, ExecError> {
    let surrogate = match a.surrogate {
        SurrogateArg::CodeLength => Surrogate::CodeLength { tile_lengths: a.tiles.clone(), epsilon: 0.5 },
        SurrogateArg::RunLength => Surrogate::RunLength,
    };
    let ci = gen_complexity_instance(a.s, a.t, a.ring, &FolnerSeq::new(a.radii.clone()), surrogate, a.max_events)
        .map_err(input)?;
    let per_size: Vec<Value> = ci
        .window_sizes
        .iter()
        .enumerate()
        .map(|(n, &size)| {
            let e = n * a.ring;
            json!({ "window": size, "probability": ci.instance.event_probability(e).ok() })
        })
        .collect();
    Ok(Outcome::new(json!({
        "surrogate": ci.surrogate_label,
        "events": ci.instance.num_events(),
        "windows": per_size,
        "neighborhood_checks": to_value(&ci.checks),
    })))
}

fn write_instance(path: &Path, inst: &Instance) -> Result<(), ExecError> {
    std::fs::write(path, inst.to_json() + "\n").map_err(|e| ExecError::Failed(format!("{}: {e}", path.display())))
}

fn generate(g: &GenCmd) -> Result<Outcome, ExecError> {
    let (inst, path, extra) = match g {
        GenCmd::Hypergraph(a) => {
            let h = apps::gen_hypergraph_2col(a.graph.k, a.graph.n, topology(&a.graph)).map_err(input)?;
            (h.instance, &a.write, json!({ "d": h.d }))
        }
        GenCmd::Nonrep(a) => {
            let graph = parse_graph(&a.graph)?;
            let ni = apps::gen_nonrepetitive(&graph, a.palette, a.lmax, a.budget).map_err(input)?;
            (ni.instance, &a.write, json!({ "paths": ni.paths.len() }))
        }
        GenCmd::Acyclic(a) => {
            let graph = parse_graph(&a.graph)?;
            let ai = apps::gen_acyclic(&graph, a.palette, a.lmax, a.budget).map_err(input)?;
            (ai.instance, &a.write, json!({ "cycles": ai.cycles.len() }))
        }
    };
    write_instance(path, &inst)?;
    Ok(Outcome::new(json!({
        "written": path,
        "variables": inst.num_vars(),
        "events": inst.num_events(),
        "domains": inst.num_domains(),
        "max_degree": inst.max_degree(),
        "details": extra,
    })))
}
