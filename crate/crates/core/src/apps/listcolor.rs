use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::AppError;
use crate::graph::SimpleGraph;
use crate::instance::{BadEvent, EventSpec, Instance, Variable};
use crate::process::solve;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListAssignment {
    pub lists: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HypothesisViolation {
    ShortList { vertex: usize, len: usize },
    Shared { vertex: usize, color: u32, neighbours: usize },
}

/// |L(x)| ≥ k and every c ∈ L(x) lies in at most k/8 neighbouring lists.
pub fn check_hypothesis(g: &SimpleGraph, l: &ListAssignment, k: usize) -> Vec<HypothesisViolation> {
    let mut out = Vec::new();
    for x in 0..g.n() {
        if l.lists[x].len() < k {
            out.push(HypothesisViolation::ShortList { vertex: x, len: l.lists[x].len() });
        }
        for &c in &l.lists[x] {
            let shared = g.neighbors(x).iter().filter(|&&y| l.lists[y].contains(&c)).count();
            if shared as f64 > k as f64 / 8.0 {
                out.push(HypothesisViolation::Shared { vertex: x, color: c, neighbours: shared });
            }
        }
    }
    out
}

/// Variables are list positions; one event per (edge, shared color).
pub fn list_coloring_instance(g: &SimpleGraph, l: &ListAssignment) -> Result<Instance, AppError> {
    if l.lists.len() != g.n() {
        return Err(AppError::Params(format!("{} lists for {} vertices", l.lists.len(), g.n())));
    }
    if let Some(x) = l.lists.iter().position(Vec::is_empty) {
        return Err(AppError::Params(format!("vertex {x} has an empty list")));
    }
    let vars = l.lists.iter().enumerate().map(|(i, li)| Variable::uniform(i, li.len() as u32)).collect();
    let mut events = Vec::new();
    for (a, b) in g.edges() {
        for (ia, c) in l.lists[a].iter().enumerate() {
            if let Some(ib) = l.lists[b].iter().position(|x| x == c) {
                events.push(BadEvent {
                    id: events.len(),
                    vars: vec![a, b],
                    spec: EventSpec::ListConflict { values: vec![ia as u32, ib as u32] },
                });
            }
        }
    }
    Ok(Instance::new(vars, events)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ListColoringOutcome {
    pub coloring: Vec<u32>,
    pub hypothesis_ok: bool,
    pub violations: Vec<HypothesisViolation>,
    pub steps: usize,
    pub resamples: u64,
    pub verified: bool,
}

pub fn list_coloring_lll(
    g: &SimpleGraph,
    l: &ListAssignment,
    k: usize,
    seed: u64,
    max_steps: usize,
) -> Result<ListColoringOutcome, AppError> {
    let violations = check_hypothesis(g, l, k);
    let inst = list_coloring_instance(g, l)?;
    let r = solve(&inst, seed, max_steps)
        .map_err(|r| AppError::StepLimit { steps: r.steps, surviving: r.surviving.len() })?;
    let coloring: Vec<u32> = r.final_assignment.iter().enumerate().map(|(x, &i)| l.lists[x][i as usize]).collect();
    let verified = g.is_proper(&coloring) && coloring.iter().enumerate().all(|(x, c)| l.lists[x].contains(c));
    Ok(ListColoringOutcome {
        coloring,
        hypothesis_ok: violations.is_empty(),
        violations,
        steps: r.steps,
        resamples: r.total_resamples,
        verified,
    })
}

/// Random lists of size `k` from `0..palette` in which every color of a list
/// is shared with at most ⌊k/8⌋ neighbours. Vertices are filled in order and
/// a color is admissible only if adding it keeps the bound for every vertex.
pub fn random_sparse_lists(g: &SimpleGraph, k: usize, palette: u32, seed: u64) -> Result<ListAssignment, AppError> {
    let cap = k / 8;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lists: Vec<Vec<u32>> = vec![Vec::new(); g.n()];
    for x in 0..g.n() {
        let mut colors: Vec<u32> = (0..palette).collect();
        colors.shuffle(&mut rng);
        for c in colors {
            if lists[x].len() == k {
                break;
            }
            let holders: Vec<usize> = g.neighbors(x).iter().copied().filter(|&y| lists[y].contains(&c)).collect();
            let ok = holders.len() < cap + 1
                && holders.iter().all(|&y| g.neighbors(y).iter().filter(|&&z| lists[z].contains(&c)).count() < cap);
            if ok {
                lists[x].push(c);
            }
        }
        if lists[x].len() < k {
            return Err(AppError::Params(format!("palette {palette} too small for vertex {x}")));
        }
        lists[x].sort_unstable();
    }
    Ok(ListAssignment { lists })
}

/// Exhaustive search for a proper list coloring.
pub fn brute_force_list_coloring(g: &SimpleGraph, l: &ListAssignment) -> Option<Vec<u32>> {
    fn go(x: usize, g: &SimpleGraph, l: &ListAssignment, cur: &mut Vec<u32>) -> bool {
        if x == g.n() {
            return true;
        }
        for &c in &l.lists[x] {
            if g.neighbors(x).iter().all(|&y| y >= x || cur[y] != c) {
                cur.push(c);
                if go(x + 1, g, l, cur) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    let mut cur = Vec::new();
    go(0, g, l, &mut cur).then_some(cur)
}
