use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::tree::tree_weight_sums;
use super::WitnessError;
use crate::certify::check_glll;
use crate::instance::Instance;
use crate::process::{run, RunStatus};
use crate::stats::mean_se;
use crate::table::Table;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexBoundReport {
    pub domain: usize,
    pub tables: usize,
    pub first_seed: u64,
    pub stabilized: usize,
    /// Monte-Carlo mean of Ind(S) over seeded runs.
    pub mc_mean: f64,
    pub mc_se: f64,
    /// Total weight of trees of height at most `max_height` rooted at S.
    pub tree_weight: f64,
    pub max_height: usize,
    /// Σ_{dom B = S} ω(B)/(1−ω(B)).
    pub rhs: f64,
    pub mc_within_bound: bool,
    pub tree_within_bound: bool,
}

/// Compare the empirical resample count of one domain with the index bound.
pub fn verify_index_bound(
    inst: &Instance,
    omega: &[f64],
    domain: usize,
    n_tables: usize,
    max_height: usize,
    first_seed: u64,
    max_steps: usize,
) -> Result<IndexBoundReport, WitnessError> {
    let cert = check_glll(inst, omega)?;
    if !cert.valid {
        return Err(WitnessError::InvalidCertificate(cert.margin));
    }
    let rhs: f64 = inst.domain(domain).events.iter().map(|&b| omega[b] / (1.0 - omega[b])).sum();
    let w = tree_weight_sums(inst, max_height).map_err(|e| WitnessError::Certificate(e.into()))?;
    let tree_weight = w[max_height][domain];
    let runs: Vec<(u64, bool)> = (0..n_tables as u64)
        .into_par_iter()
        .map(|i| {
            let mut table = Table::seeded(first_seed + i);
            let trace = run(inst, &mut table, max_steps).expect("seeded tables are total");
            let ind = trace.steps.iter().filter(|r| r.selected.contains(&domain)).count() as u64;
            (ind, trace.status == RunStatus::Stabilized)
        })
        .collect();
    let (mean, se) = mean_se(runs.iter().map(|r| r.0 as f64));
    Ok(IndexBoundReport {
        domain,
        tables: n_tables,
        first_seed,
        stabilized: runs.iter().filter(|r| r.1).count(),
        mc_mean: mean,
        mc_se: se,
        tree_weight,
        max_height,
        rhs,
        mc_within_bound: mean <= rhs + 3.0 * se + crate::TOL,
        tree_within_bound: tree_weight <= rhs + crate::TOL,
    })
}
