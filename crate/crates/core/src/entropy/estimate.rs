use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyEstimate {
    /// Plug-in entropy of the empirical word distribution divided by the
    /// window size.
    pub bits_per_symbol: f64,
    pub samples: usize,
    pub window: usize,
    pub distinct: usize,
    /// First-order downward bias of the plug-in estimator, per symbol:
    /// (distinct − 1) / (2·samples·ln 2·window). The estimate tends to be low
    /// by about this much.
    pub miller_madow: f64,
}

/// Plug-in block entropy per symbol. All samples must have the same length.
pub fn empirical_entropy(samples: &[Vec<u32>]) -> Option<EntropyEstimate> {
    let window = samples.first()?.len();
    if window == 0 || samples.iter().any(|s| s.len() != window) {
        return None;
    }
    let mut counts: BTreeMap<&[u32], u64> = BTreeMap::new();
    for s in samples {
        *counts.entry(s.as_slice()).or_default() += 1;
    }
    let h = crate::stats::entropy_bits(counts.values().copied());
    Some(EntropyEstimate {
        bits_per_symbol: h / window as f64,
        samples: samples.len(),
        window,
        distinct: counts.len(),
        miller_madow: (counts.len() as f64 - 1.0) / (2.0 * samples.len() as f64 * std::f64::consts::LN_2 * window as f64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn point_mass_is_zero() {
        let e = empirical_entropy(&vec![vec![1, 0, 1]; 10]).unwrap();
        assert_eq!(e.bits_per_symbol, 0.0);
        assert_eq!(e.miller_madow, 0.0);
    }

    #[test]
    fn two_equiprobable_words() {
        let e = empirical_entropy(&[vec![0, 0], vec![1, 1]]).unwrap();
        assert!((e.bits_per_symbol - 0.5).abs() < 1e-12);
    }

    #[test]
    fn uniform_bits() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s: Vec<Vec<u32>> = (0..20_000).map(|_| (0..8).map(|_| rng.gen_range(0..2)).collect()).collect();
        let e = empirical_entropy(&s).unwrap();
        assert!((e.bits_per_symbol - 1.0).abs() < 0.01, "{e:?}");
    }

    #[test]
    fn ragged_rejected() {
        assert!(empirical_entropy(&[vec![0], vec![0, 1]]).is_none());
        assert!(empirical_entropy(&[]).is_none());
    }
}
