use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::AppError;
use crate::instance::{BadEvent, EventSpec, Instance, Variable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Topology {
    /// Edges {i, …, i+k−1} mod n; every edge meets 2(k−1) others when n ≥ 2k.
    Cyclic,
    /// ⌊n/k⌋ disjoint edges.
    Disjoint,
    /// Random edges with pairwise intersections of size at most 1 and degree at most `d`.
    RandomLinear { d: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hypergraph2Col {
    pub instance: Instance,
    pub edges: Vec<Vec<usize>>,
    /// Maximum number of other edges an edge meets.
    pub d: usize,
}

/// One monochromatic-edge event per hyperedge over binary vertex variables.
pub fn gen_hypergraph_2col(k: usize, n: usize, topology: Topology) -> Result<Hypergraph2Col, AppError> {
    if k < 2 {
        return Err(AppError::Params(format!("edge size {k} < 2")));
    }
    let edges: Vec<Vec<usize>> = match topology {
        Topology::Cyclic => {
            if n < 2 * k {
                return Err(AppError::Params(format!("cyclic topology needs n >= 2k, got n={n}, k={k}")));
            }
            (0..n).map(|i| (0..k).map(|j| (i + j) % n).collect()).collect()
        }
        Topology::Disjoint => (0..n / k).map(|i| (i * k..(i + 1) * k).collect()).collect(),
        Topology::RandomLinear { d, seed } => random_linear(k, n, d, seed)?,
    };
    let events = edges
        .iter()
        .enumerate()
        .map(|(id, e)| BadEvent { id, vars: e.clone(), spec: EventSpec::Monochromatic })
        .collect();
    let instance = Instance::new((0..n).map(|i| Variable::uniform(i, 2)).collect(), events)?;
    let d = instance.max_degree();
    Ok(Hypergraph2Col { instance, edges, d })
}

fn random_linear(k: usize, n: usize, d: usize, seed: u64) -> Result<Vec<Vec<usize>>, AppError> {
    if n < k {
        return Err(AppError::Params(format!("n={n} < k={k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut degree: Vec<usize> = Vec::new();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut failures = 0;
    while failures < 20 * n {
        let mut cand: Vec<usize> = sample(&mut rng, n, k).into_vec();
        cand.sort_unstable();
        let mut meets: Vec<usize> = cand.iter().flat_map(|&v| incident[v].iter().copied()).collect();
        meets.sort_unstable();
        let before = meets.len();
        meets.dedup();
        // a repeated edge id means an intersection of size >= 2
        if before != meets.len() || meets.len() > d || meets.iter().any(|&e| degree[e] + 1 > d) {
            failures += 1;
            continue;
        }
        let id = edges.len();
        for &e in &meets {
            degree[e] += 1;
        }
        degree.push(meets.len());
        for &v in &cand {
            incident[v].push(id);
        }
        edges.push(cand);
    }
    Ok(edges)
}
