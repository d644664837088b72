use serde::{Deserialize, Serialize};

use super::AppError;
use crate::graph::SimpleGraph;
use crate::instance::{BadEvent, EventSpec, Instance, Variable};
use crate::process::{run, RunStatus};
use crate::table::Table;

/// Vertices whose color differs from all neighbours.
pub fn retained_set(g: &SimpleGraph, f: &[u32]) -> Vec<bool> {
    (0..g.n()).map(|x| g.neighbors(x).iter().all(|&y| f[y] != f[x])).collect()
}

/// Number of colors appearing at least twice among colored neighbours of `x`.
pub fn repeated_colors(g: &SimpleGraph, partial: &[Option<u32>], x: usize) -> usize {
    let mut cols: Vec<u32> = g.neighbors(x).iter().filter_map(|&y| partial[y]).collect();
    cols.sort_unstable();
    let mut n = 0;
    let mut i = 0;
    while i < cols.len() {
        let mut j = i;
        while j < cols.len() && cols[j] == cols[i] {
            j += 1;
        }
        if j - i >= 2 {
            n += 1;
        }
        i = j;
    }
    n
}

/// Properness plus the repeated-color count at every uncolored vertex.
/// Returns the verdict and the failing vertices.
pub fn is_good(g: &SimpleGraph, partial: &[Option<u32>], eps: f64) -> (bool, Vec<usize>) {
    let need = (eps * g.max_degree() as f64).ceil() as usize;
    let proper = g.edges().iter().all(|&(a, b)| partial[a].is_none() || partial[a] != partial[b]);
    let failures: Vec<usize> = (0..g.n()).filter(|&x| partial[x].is_none() && repeated_colors(g, partial, x) < need).collect();
    (proper && failures.is_empty(), failures)
}

/// One goodness-failure event per vertex over its radius-2 ball, with
/// variables taking d/2 colors.
pub fn goodness_instance(g: &SimpleGraph, eps: f64) -> Result<Instance, AppError> {
    let d = g.max_degree();
    if d == 0 || d % 2 == 1 {
        return Err(AppError::Params(format!("degree {d} must be even and positive")));
    }
    if !g.is_regular(d) {
        return Err(AppError::NotRegular(d));
    }
    if g.has_triangle() {
        return Err(AppError::Triangle);
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(AppError::Params(format!("eps {eps} outside (0,1)")));
    }
    let min_repeated = (eps * d as f64).ceil() as u32;
    let vars: Vec<Variable> = (0..g.n()).map(|i| Variable::uniform(i, (d / 2) as u32)).collect();
    let mut events = Vec::with_capacity(g.n());
    for x in 0..g.n() {
        let mut ball = vec![x];
        ball.extend_from_slice(g.neighbors(x));
        for &y in g.neighbors(x) {
            for &z in g.neighbors(y) {
                if !ball.contains(&z) {
                    ball.push(z);
                }
            }
        }
        let pos = |v: usize| ball.iter().position(|&b| b == v).expect("in ball");
        let adjacency = (0..=d).map(|i| g.neighbors(ball[i]).iter().map(|&v| pos(v)).collect()).collect();
        events.push(BadEvent { id: x, vars: ball.clone(), spec: EventSpec::GoodnessFailure { degree: d, adjacency, min_repeated } });
    }
    Ok(Instance::new(vars, events)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoodColoringOutcome {
    pub f: Vec<u32>,
    pub partial: Vec<Option<u32>>,
    pub steps: usize,
    pub resamples: u64,
    pub verified_good: bool,
}

/// Solve the goodness instance and restrict the solution to its retained set.
pub fn good_partial_coloring(g: &SimpleGraph, eps: f64, seed: u64, max_steps: usize) -> Result<GoodColoringOutcome, AppError> {
    let inst = goodness_instance(g, eps)?;
    let mut table = Table::seeded(seed);
    let trace = run(&inst, &mut table, max_steps).expect("seeded tables are total");
    if trace.status != RunStatus::Stabilized {
        return Err(AppError::StepLimit { steps: trace.num_steps(), surviving: trace.frontier().len() });
    }
    let keep = retained_set(g, &trace.f);
    let partial: Vec<Option<u32>> = trace.f.iter().zip(&keep).map(|(&c, &k)| k.then_some(c)).collect();
    let (verified_good, _) = is_good(g, &partial, eps);
    Ok(GoodColoringOutcome {
        resamples: trace.resamples_per_domain(inst.num_domains()).iter().sum(),
        steps: trace.num_steps(),
        f: trace.f,
        partial,
        verified_good,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Extension {
    pub coloring: Vec<u32>,
    /// Largest color given to a previously uncolored vertex.
    pub max_new_color: Option<u32>,
    pub rounds: usize,
}

/// Color the uncolored vertices class by class (classes of a greedy proper
/// coloring of the uncolored part), each with the least color not on a
/// colored neighbour.
pub fn greedy_extend(g: &SimpleGraph, partial: &[Option<u32>]) -> Extension {
    let uncolored: Vec<bool> = partial.iter().map(Option::is_none).collect();
    let (sub, ids) = g.induced(&uncolored);
    let aux = sub.greedy_coloring();
    let rounds = aux.iter().max().map_or(0, |m| m + 1);
    let mut f: Vec<Option<u32>> = partial.to_vec();
    let mut max_new: Option<u32> = None;
    for class in 0..rounds {
        let members: Vec<usize> = ids.iter().zip(&aux).filter(|(_, &c)| c == class).map(|(&v, _)| v).collect();
        let snapshot = f.clone();
        for x in members {
            let mut used: Vec<u32> = g.neighbors(x).iter().filter_map(|&y| snapshot[y]).collect();
            used.sort_unstable();
            used.dedup();
            let c = used.iter().enumerate().find(|(i, &u)| *i as u32 != u).map_or(used.len() as u32, |(i, _)| i as u32);
            f[x] = Some(c);
            max_new = Some(max_new.map_or(c, |m| m.max(c)));
        }
    }
    Extension { coloring: f.into_iter().map(|c| c.expect("every vertex colored")).collect(), max_new_color: max_new, rounds }
}
