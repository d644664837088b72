//! Events "this window has a short description", with a computable
//! surrogate standing in for Kolmogorov complexity. Surrogate lengths are
//! upper bounds only.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::code::{encode, PlanRule};
use super::folner::FolnerSeq;
use super::kolmogorov::run_length_bits;
use crate::instance::{BadEvent, EventSpec, Instance, InstanceError, Variable};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Surrogate {
    /// Length of the block code under the given tiling rule.
    CodeLength { tile_lengths: Vec<usize>, epsilon: f64 },
    /// Shortest run-length program of the symbols written out in binary.
    RunLength,
}

impl Surrogate {
    /// Description length in bits of `vals` (symbols of `s` bits). Always ≥ 1.
    pub fn bits(&self, vals: &[u32], s: u32) -> u64 {
        match self {
            Surrogate::CodeLength { tile_lengths, epsilon } => {
                let rule = PlanRule::new(tile_lengths.clone(), *epsilon);
                match encode(vals, s, &rule) {
                    Ok(b) => b.len() as u64,
                    // raw fallback: one flag bit plus the symbols
                    Err(_) => 1 + s as u64 * vals.len() as u64,
                }
            }
            Surrogate::RunLength => {
                let word: Vec<bool> = vals.iter().flat_map(|&v| (0..s).rev().map(move |b| (v >> b) & 1 == 1)).collect();
                run_length_bits(&word)
            }
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Surrogate::CodeLength { .. } => "block code length (upper bound on description length)",
            Surrogate::RunLength => "run-length program length (upper bound on description length)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ComplexityError {
    #[error("{windows} windows exceed the cap {cap}")]
    Overflow { windows: usize, cap: usize },
    #[error("window of {size} cells does not fit in a ring of {ring}")]
    WindowTooLarge { size: usize, ring: usize },
    #[error("symbol width {0} outside 1..=16")]
    SymbolWidth(u32),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeighborhoodCheck {
    pub window: usize,
    /// Most events of this window size sharing a cell with one event.
    pub max_count: usize,
    /// |dom|·k·d^k with d = 2.
    pub bound: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityInstance {
    pub instance: Instance,
    pub ring: usize,
    pub window_sizes: Vec<usize>,
    pub checks: Vec<NeighborhoodCheck>,
    pub surrogate_label: &'static str,
}

/// Windows γ + Φ_n on ℤ_M for n < folner.len(), each a low-complexity event
/// with threshold (s − t)|Φ_n|.
pub fn gen_complexity_instance(
    s: u32,
    t: u32,
    ring: usize,
    folner: &FolnerSeq,
    surrogate: Surrogate,
    max_events: usize,
) -> Result<ComplexityInstance, ComplexityError> {
    if !(1..=16).contains(&s) {
        return Err(ComplexityError::SymbolWidth(s));
    }
    let windows = folner.len() * ring;
    if windows > max_events {
        return Err(ComplexityError::Overflow { windows, cap: max_events });
    }
    let mut events = Vec::with_capacity(windows);
    let mut sizes = Vec::new();
    let mut class_of = Vec::with_capacity(windows);
    for (n, phi) in folner.sets().into_iter().enumerate() {
        let size = phi.len();
        if size > ring {
            return Err(ComplexityError::WindowTooLarge { size, ring });
        }
        sizes.push(size);
        let threshold_bits = (s as i64 - t as i64) * size as i64;
        for g in 0..ring as i64 {
            let vars = (phi.lo..phi.hi).map(|j| (g + j).rem_euclid(ring as i64) as usize).collect();
            class_of.push(n);
            events.push(BadEvent {
                id: events.len(),
                vars,
                spec: EventSpec::LowComplexity { s, threshold_bits, surrogate: surrogate.clone() },
            });
        }
    }
    let vars = (0..ring).map(|i| Variable::uniform(i, 1 << s)).collect();
    let instance = Instance::new(vars, events)?;

    let checks = sizes
        .iter()
        .enumerate()
        .map(|(n, &k)| {
            let mut max_count = 0;
            for (b, &cls) in class_of.iter().enumerate() {
                if cls != n {
                    continue;
                }
                let nb = instance.neighborhood(b).expect("event ids are dense");
                max_count = max_count.max(nb.iter().filter(|&&o| class_of[o] == n).count());
            }
            let bound = k as f64 * k as f64 * 2f64.powi(k as i32);
            NeighborhoodCheck { window: k, max_count, bound, ok: max_count as f64 <= bound }
        })
        .collect();
    Ok(ComplexityInstance { instance, ring, window_sizes: sizes, checks, surrogate_label: surrogate.label() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_equals_s_never_triggers() {
        let ci = gen_complexity_instance(1, 1, 12, &FolnerSeq::linear(2), Surrogate::RunLength, 1000).unwrap();
        for e in 0..ci.instance.num_events() {
            assert_eq!(ci.instance.event_probability(e).unwrap(), 0.0);
        }
        assert!(ci.checks.iter().all(|c| c.ok));
    }

    #[test]
    fn code_length_window_three() {
        let sur = Surrogate::CodeLength { tile_lengths: vec![2], epsilon: 0.5 };
        let ci = gen_complexity_instance(1, 3, 10, &FolnerSeq::new(vec![1]), sur.clone(), 100).unwrap();
        assert_eq!(ci.window_sizes, vec![3]);
        let zero = (0..8u32).filter(|&x| sur.bits(&[x >> 2, (x >> 1) & 1, x & 1], 1) as i64 <= -6).count();
        assert_eq!(zero, 0);
        assert_eq!(ci.instance.event_probability(0).unwrap(), 0.0);
    }

    #[test]
    fn neighborhood_counts_within_bound() {
        let ci = gen_complexity_instance(1, 2, 30, &FolnerSeq::linear(3), Surrogate::RunLength, 1000).unwrap();
        for c in &ci.checks {
            assert_eq!(c.max_count, 2 * c.window - 2);
            assert!(c.ok);
        }
    }

    #[test]
    fn overflow_reported() {
        assert!(matches!(
            gen_complexity_instance(1, 2, 100, &FolnerSeq::linear(3), Surrogate::RunLength, 10),
            Err(ComplexityError::Overflow { .. })
        ));
    }

    #[test]
    fn surrogates_positive() {
        let cl = Surrogate::CodeLength { tile_lengths: vec![2], epsilon: 0.1 };
        for w in [vec![0u32], vec![1, 1, 1, 1], vec![0, 1, 0]] {
            assert!(cl.bits(&w, 1) >= 1);
            assert!(Surrogate::RunLength.bits(&w, 1) >= 1);
        }
    }
}
