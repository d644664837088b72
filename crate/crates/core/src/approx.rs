//! Truncated resampling with a shared lifted table, and its defect.
//!
//! Atoms are the instance variables; an [`AtomMap`] sends each atom to the
//! base points it lies over. Shadows, defect and the power-graph coloring are
//! all computed on finite graphs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::{check_glll, CertifyError};
use crate::graph::SimpleGraph;
use crate::instance::{Instance, InstanceError};
use crate::process::{Process, ProcessTrace, RunStatus, SelectionRule};
use crate::stats::mean_se;
use crate::table::{Table, TableSource};
use crate::witness::tree_weight_sums;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ApproxError {
    #[error("coloring is not proper on the dependency graph raised to power {power}")]
    ColoringNotProper { power: usize },
    #[error("coloring has {got} entries for {expected} variables")]
    ColoringSize { expected: usize, got: usize },
    #[error("atom map has {got} entries for {expected} variables")]
    AtomMapSize { expected: usize, got: usize },
    #[error("atom {atom} lies over base point {point} >= {base_points}")]
    AtomOutOfRange { atom: usize, point: usize, base_points: usize },
    #[error(transparent)]
    Certificate(#[from] CertifyError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("certificate does not validate (margin {0})")]
    InvalidCertificate(f64),
}

/// Dependency graph on variables: adjacent iff they share an event domain.
pub fn dependency_graph(inst: &Instance) -> SimpleGraph {
    let mut edges = Vec::new();
    for d in inst.domains() {
        for (i, &a) in d.vars.iter().enumerate() {
            for &b in &d.vars[i + 1..] {
                edges.push((a, b));
            }
        }
    }
    SimpleGraph::from_edges(inst.num_vars(), &edges).expect("domains reference valid variables")
}

/// Underlying base points of each atom (variable).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomMap {
    pub base_points: usize,
    pub atoms: Vec<Vec<usize>>,
}

impl AtomMap {
    /// Atoms are the base points themselves.
    pub fn identity(n: usize) -> Self {
        AtomMap { base_points: n, atoms: (0..n).map(|i| vec![i]).collect() }
    }

    /// Atoms are the edges of `g`, lying over their endpoints.
    pub fn edges_of(g: &SimpleGraph) -> Self {
        AtomMap { base_points: g.n(), atoms: g.edges().into_iter().map(|(a, b)| vec![a, b]).collect() }
    }

    pub fn validate(&self, inst: &Instance) -> Result<(), ApproxError> {
        if self.atoms.len() != inst.num_vars() {
            return Err(ApproxError::AtomMapSize { expected: inst.num_vars(), got: self.atoms.len() });
        }
        for (atom, pts) in self.atoms.iter().enumerate() {
            if let Some(&point) = pts.iter().find(|&&p| p >= self.base_points) {
                return Err(ApproxError::AtomOutOfRange { atom, point, base_points: self.base_points });
            }
        }
        Ok(())
    }
}

/// sh_x for every base point x.
#[derive(Debug, Clone)]
pub struct ShadowIndex {
    shadows: Vec<Vec<usize>>,
}

impl ShadowIndex {
    pub fn new(inst: &Instance, atoms: &AtomMap) -> Result<Self, ApproxError> {
        atoms.validate(inst)?;
        let mut shadows = vec![Vec::new(); atoms.base_points];
        for (d, dom) in inst.domains().iter().enumerate() {
            for &v in &dom.vars {
                for &x in &atoms.atoms[v] {
                    shadows[x].push(d);
                }
            }
        }
        for s in &mut shadows {
            s.sort_unstable();
            s.dedup();
        }
        Ok(ShadowIndex { shadows })
    }

    pub fn shadow(&self, x: usize) -> &[usize] {
        &self.shadows[x]
    }

    pub fn base_points(&self) -> usize {
        self.shadows.len()
    }

    /// Largest shadow; every shadow of a finite instance is finite.
    pub fn max_shadow(&self) -> usize {
        self.shadows.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Domains lying over base point `x`.
pub fn shadow(inst: &Instance, atoms: &AtomMap, x: usize) -> Result<Vec<usize>, ApproxError> {
    Ok(ShadowIndex::new(inst, atoms)?.shadow(x).to_vec())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DefectReport {
    pub base_points: usize,
    pub defect_set: Vec<usize>,
    pub fraction: f64,
}

/// Base points over which some domain is violated by `f`.
pub fn defect(inst: &Instance, index: &ShadowIndex, f: &[u32]) -> DefectReport {
    let bad: Vec<bool> = (0..inst.num_domains()).map(|d| inst.domain_violated(d, |x| f[x])).collect();
    let defect_set: Vec<usize> = (0..index.base_points()).filter(|&x| index.shadow(x).iter().any(|&d| bad[d])).collect();
    let n = index.base_points();
    DefectReport { base_points: n, fraction: if n == 0 { 0.0 } else { defect_set.len() as f64 / n as f64 }, defect_set }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedRun {
    pub steps: usize,
    pub status: RunStatus,
    pub assignment: Vec<u32>,
    pub defect: DefectReport,
    #[serde(skip)]
    pub trace: Option<ProcessTrace>,
}

/// Check that `coloring` separates variables at distance at most 2(N+1).
pub fn check_power_coloring(g: &SimpleGraph, coloring: &[usize], n: usize) -> Result<(), ApproxError> {
    if coloring.len() != g.n() {
        return Err(ApproxError::ColoringSize { expected: g.n(), got: coloring.len() });
    }
    let power = 2 * (n + 1);
    if g.is_proper_at_distance(coloring, power) {
        Ok(())
    } else {
        Err(ApproxError::ColoringNotProper { power })
    }
}

/// Greedy coloring of the dependency graph raised to 2(N+1).
pub fn power_coloring(g: &SimpleGraph, n: usize) -> Vec<usize> {
    g.power(2 * (n + 1)).greedy_coloring()
}

/// N steps of the process on θ_c(x, n) = θ(c(x), n) with θ seeded by `shared_seed`.
pub fn run_truncated(
    inst: &Instance,
    index: &ShadowIndex,
    coloring: &[usize],
    shared_seed: u64,
    n: usize,
    keep_trace: bool,
) -> Result<TruncatedRun, ApproxError> {
    check_power_coloring(&dependency_graph(inst), coloring, n)?;
    Ok(run_lifted_unchecked(inst, index, coloring, shared_seed, n, keep_trace))
}

fn run_lifted_unchecked(
    inst: &Instance,
    index: &ShadowIndex,
    coloring: &[usize],
    shared_seed: u64,
    n: usize,
    keep_trace: bool,
) -> TruncatedRun {
    let mut table = Table::lifted(TableSource::Seeded { seed: shared_seed }, coloring.to_vec());
    let mut p = Process::new(inst, &mut table, SelectionRule::Lex).expect("lifted seeded tables are total");
    let status = p.run(n).expect("lifted seeded tables are total");
    let trace = p.into_trace();
    let defect = defect(inst, index, &trace.f);
    TruncatedRun {
        steps: trace.num_steps(),
        status,
        assignment: trace.f.clone(),
        defect,
        trace: keep_trace.then_some(trace),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChooseMode {
    Analytic,
    Empirical,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChooseNReport {
    pub n: usize,
    pub mode: ChooseMode,
    /// Fraction of base points whose tail mass exceeds ε/2 (analytic mode).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub heavy_fraction: Option<f64>,
    /// Largest per-point tail mass at the chosen N (analytic mode).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_tail: Option<f64>,
    /// Mean defect at the chosen N (empirical mode).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measured_defect: Option<f64>,
    pub margin: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChooseConfig {
    pub max_n: usize,
    pub seeds: usize,
    pub first_seed: u64,
}

impl Default for ChooseConfig {
    fn default() -> Self {
        ChooseConfig { max_n: 256, seeds: 20, first_seed: 0 }
    }
}

/// Smallest N whose tail bound puts at most an ε/2 fraction of base points
/// above ε/2, where the tail at x is Σ_{S ∈ sh_x} (W_{N+1}(S) − W_N(S)).
///
/// Falls back to doubling N against measured defect when the bound is
/// degenerate (zero margin) or does not reach ε within `max_n`.
pub fn choose_n(
    inst: &Instance,
    omega: &[f64],
    epsilon: f64,
    index: &ShadowIndex,
    cfg: ChooseConfig,
) -> Result<ChooseNReport, ApproxError> {
    let cert = check_glll(inst, omega)?;
    if cert.margin < -crate::TOL {
        return Err(ApproxError::InvalidCertificate(cert.margin));
    }
    let margin = cert.margin;
    if margin > crate::TOL {
        let w = tree_weight_sums(inst, cfg.max_n + 1)?;
        for n in 0..=cfg.max_n {
            let tails: Vec<f64> = (0..index.base_points())
                .map(|x| index.shadow(x).iter().map(|&s| (w[n + 1][s] - w[n][s]).max(0.0)).sum())
                .collect();
            let heavy = tails.iter().filter(|&&t| t > epsilon / 2.0).count() as f64 / index.base_points().max(1) as f64;
            if heavy <= epsilon / 2.0 {
                return Ok(ChooseNReport {
                    n,
                    mode: ChooseMode::Analytic,
                    heavy_fraction: Some(heavy),
                    max_tail: Some(tails.iter().copied().fold(0.0, f64::max)),
                    measured_defect: None,
                    margin,
                });
            }
        }
    }
    let g = dependency_graph(inst);
    let mut n = 1;
    loop {
        let coloring = power_coloring(&g, n);
        let fractions: Vec<f64> = (0..cfg.seeds as u64)
            .into_par_iter()
            .map(|s| run_lifted_unchecked(inst, index, &coloring, cfg.first_seed + s, n, false).defect.fraction)
            .collect();
        let (mean, _) = mean_se(fractions.into_iter());
        if mean <= epsilon || n >= cfg.max_n {
            return Ok(ChooseNReport {
                n,
                mode: ChooseMode::Empirical,
                heavy_fraction: None,
                max_tail: None,
                measured_defect: Some(mean),
                margin,
            });
        }
        n = (2 * n).min(cfg.max_n);
    }
}
