use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamsError {
    #[error("δ·d = {0} must be below 1")]
    Ratio(f64),
    #[error("ε = {0} outside (0,1]")]
    Epsilon(f64),
    #[error("δ = {0} must be positive")]
    Delta(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyParams {
    pub epsilon: f64,
    pub d: u32,
    pub delta: f64,
    /// Σ_k k(δd)^k = δd/(1−δd)².
    pub c: f64,
    /// 1 − log₂(ε·δ·e^{−2c}) before rounding up.
    pub t_real: f64,
    pub t: u64,
    /// Smallest slack ln RHS − ln LHS of the weighted inequality over n = 1..=n_max.
    pub min_log_slack: f64,
    pub worst_n: usize,
    pub n_max: usize,
    /// Upper bound on the discarded tail of the truncated log-product, per n.
    pub truncation_error: f64,
    pub verified: bool,
}

/// Smallest integer t with 2^{−tn+1} ≤ ε^n ω_n ∏_k (1−ω_k)^{n k d^k} for
/// ω_n = δ^n (via the closed-form sufficient condition), checked numerically
/// for n ≤ 30.
pub fn entropy_instance_params(epsilon: f64, d: u32, delta: f64) -> Result<EntropyParams, ParamsError> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(ParamsError::Epsilon(epsilon));
    }
    if !(delta > 0.0) {
        return Err(ParamsError::Delta(delta));
    }
    let r = delta * d as f64;
    if r >= 1.0 {
        return Err(ParamsError::Ratio(r));
    }
    let c = r / ((1.0 - r) * (1.0 - r));
    let t_real = 1.0 - (epsilon * delta * (-2.0 * c).exp()).log2();
    let t = t_real.ceil() as u64;

    // S = Σ_k k d^k ln(1 − δ^k), truncated at K. For k > K each term is at
    // least −k r^k/(1−δ), so the tail is bounded by Σ_{k>K} k r^k/(1−δ).
    let tail = |kk: u32| -> f64 {
        // Σ_{k>K} k r^k = r^{K+1}((K+1) − K r)/(1−r)²
        let k = kk as f64;
        r.powf(k + 1.0) * ((k + 1.0) - k * r) / ((1.0 - r) * (1.0 - r)) / (1.0 - delta)
    };
    let mut kk = 1u32;
    while tail(kk) >= 1e-12 && kk < 100_000 {
        kk += 1;
    }
    let s: f64 = (1..=kk).map(|k| k as f64 * (d as f64).powi(k as i32) * (-delta.powi(k as i32)).ln_1p()).sum();
    let truncation_error = tail(kk);
    let s_lower = s - truncation_error;

    let n_max = 30;
    let mut min_log_slack = f64::INFINITY;
    let mut worst_n = 1;
    for n in 1..=n_max {
        let nf = n as f64;
        let lhs = (1.0 - t as f64 * nf) * std::f64::consts::LN_2;
        let rhs = nf * epsilon.ln() + nf * delta.ln() + nf * s_lower;
        if rhs - lhs < min_log_slack {
            min_log_slack = rhs - lhs;
            worst_n = n;
        }
    }
    Ok(EntropyParams {
        epsilon,
        d,
        delta,
        c,
        t_real,
        t,
        min_log_slack,
        worst_n,
        n_max,
        truncation_error: truncation_error * n_max as f64,
        verified: min_log_slack >= 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_two_quarter() {
        let p = entropy_instance_params(1.0, 2, 0.25).unwrap();
        assert!((p.c - 2.0).abs() < 1e-12);
        assert!((p.t_real - (3.0 + 4.0 / std::f64::consts::LN_2)).abs() < 1e-9);
        assert_eq!(p.t, 9);
        assert!(p.verified);
        assert!(p.truncation_error < 1e-9);
    }

    #[test]
    fn ratio_rejected() {
        assert!(matches!(entropy_instance_params(1.0, 2, 0.5), Err(ParamsError::Ratio(_))));
        assert!(entropy_instance_params(0.0, 2, 0.1).is_err());
    }

    #[test]
    fn smaller_delta_formula() {
        let p = entropy_instance_params(0.5, 3, 0.01).unwrap();
        let c: f64 = 0.03 / (0.97f64 * 0.97);
        assert_eq!(p.t, (1.0 - (0.5 * 0.01 * (-2.0 * c).exp()).log2()).ceil() as u64);
        assert!(p.verified);
    }
}
