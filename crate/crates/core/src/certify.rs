//! Symmetric, general and ε-strengthened local lemma certificates.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::instance::{Instance, InstanceError};
use crate::TOL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    Slll,
    Glll,
    Eps,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrectnessCertificate {
    pub kind: CertificateKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    /// Minimal slack over events.
    pub margin: f64,
    /// Per-event slack `rhs - p`; for the symmetric check, `1 - e p_B (d+1)`.
    pub event_margins: Vec<f64>,
    pub valid: bool,
    pub p_max: f64,
    pub d_max: usize,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertifyError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("omega has {got} entries for {expected} events")]
    MissingOmega { expected: usize, got: usize },
    #[error("omega({event}) = {value} is outside [0,1)")]
    OmegaRange { event: usize, value: f64 },
    #[error("epsilon {0} is outside (0,1]")]
    Epsilon(f64),
    #[error("no admissible omega: event {event} has probability {p} and cannot be dominated")]
    Undominated { event: usize, p: f64 },
    #[error("omega search did not converge in {iterations} sweeps; event {event} still violated")]
    NoConvergence { iterations: usize, event: usize },
}

fn probabilities(inst: &Instance) -> Result<Vec<f64>, InstanceError> {
    (0..inst.num_events()).map(|e| inst.event_probability(e)).collect()
}

/// e·p·(d+1) < 1.
pub fn check_slll(inst: &Instance) -> Result<CorrectnessCertificate, CertifyError> {
    let p = probabilities(inst)?;
    let p_max = p.iter().copied().fold(0.0, f64::max);
    let d_max = inst.max_degree();
    let margin = 1.0 - std::f64::consts::E * p_max * (d_max as f64 + 1.0);
    let event_margins = p.iter().map(|&pb| 1.0 - std::f64::consts::E * pb * (d_max as f64 + 1.0)).collect();
    Ok(CorrectnessCertificate {
        kind: CertificateKind::Slll,
        omega: None,
        epsilon: None,
        margin,
        event_margins,
        valid: margin > 0.0,
        p_max,
        d_max,
    })
}

/// ℙ[B] ≤ ω(B)·∏_{B'∈Nbhd(B)}(1−ω(B')) for all B.
pub fn check_glll(inst: &Instance, omega: &[f64]) -> Result<CorrectnessCertificate, CertifyError> {
    weighted_check(inst, omega, None)
}

/// As [`check_glll`] with the extra factor ε^{|dom B|} on the right-hand side.
pub fn check_eps_correct(inst: &Instance, epsilon: f64, omega: &[f64]) -> Result<CorrectnessCertificate, CertifyError> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(CertifyError::Epsilon(epsilon));
    }
    weighted_check(inst, omega, Some(epsilon))
}

fn weighted_check(inst: &Instance, omega: &[f64], epsilon: Option<f64>) -> Result<CorrectnessCertificate, CertifyError> {
    if omega.len() != inst.num_events() {
        return Err(CertifyError::MissingOmega { expected: inst.num_events(), got: omega.len() });
    }
    for (event, &value) in omega.iter().enumerate() {
        if !(0.0..1.0).contains(&value) {
            return Err(CertifyError::OmegaRange { event, value });
        }
    }
    let p = probabilities(inst)?;
    let mut event_margins = Vec::with_capacity(p.len());
    for (b, &pb) in p.iter().enumerate() {
        let mut rhs = omega[b];
        for nb in inst.neighborhood(b)? {
            rhs *= 1.0 - omega[nb];
        }
        if let Some(eps) = epsilon {
            rhs *= eps.powi(inst.events()[b].vars.len() as i32);
        }
        event_margins.push(rhs - pb);
    }
    let margin = event_margins.iter().copied().fold(f64::INFINITY, f64::min);
    let margin = if margin.is_finite() { margin } else { 1.0 };
    Ok(CorrectnessCertificate {
        kind: if epsilon.is_some() { CertificateKind::Eps } else { CertificateKind::Glll },
        omega: Some(omega.to_vec()),
        epsilon,
        margin,
        event_margins,
        valid: margin >= -TOL,
        p_max: p.iter().copied().fold(0.0, f64::max),
        d_max: inst.max_degree(),
    })
}

/// Find weights satisfying the general condition.
///
/// Tries ω(B) = 1/(deg(B)+1) (capped at 0.99) first, then iterates
/// ω ← min(0.99, ℙ[B]/∏(1−ω(B')) + slack) from ω = ℙ.
pub fn suggest_omega(inst: &Instance, max_iter: usize) -> Result<Vec<f64>, CertifyError> {
    let p = probabilities(inst)?;
    if let Some(event) = p.iter().position(|&pb| pb >= 0.99) {
        return Err(CertifyError::Undominated { event, p: p[event] });
    }
    let first: Vec<f64> = (0..inst.num_events()).map(|b| (1.0 / (inst.degree(b) as f64 + 1.0)).min(0.99)).collect();
    if check_glll(inst, &first)?.valid {
        return Ok(first);
    }
    let nbhd: Vec<Vec<usize>> = (0..inst.num_events()).map(|b| inst.neighborhood(b)).collect::<Result<_, _>>()?;
    let slack = 1e-9;
    let mut omega = p.clone();
    for _ in 0..max_iter {
        let next: Vec<f64> = (0..p.len())
            .map(|b| {
                let prod: f64 = nbhd[b].iter().map(|&nb| 1.0 - omega[nb]).product();
                if prod <= 0.0 {
                    0.99
                } else {
                    (p[b] / prod + slack).min(0.99)
                }
            })
            .collect();
        omega = next;
        if check_glll(inst, &omega)?.valid {
            return Ok(omega);
        }
    }
    let cert = check_glll(inst, &omega)?;
    let event = cert.event_margins.iter().position(|&m| m < -TOL).unwrap_or(0);
    Err(CertifyError::NoConvergence { iterations: max_iter, event })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{BadEvent, EventSpec, Variable};

    fn isolated(p_vals: Vec<Vec<u32>>, k: usize) -> Instance {
        Instance::new(
            (0..k).map(|i| Variable::uniform(i, 2)).collect(),
            vec![BadEvent { id: 0, vars: (0..k).collect(), spec: EventSpec::Explicit { assignments: p_vals } }],
        )
        .unwrap()
    }

    #[test]
    fn empty_instance_slll_margin_one() {
        let c = check_slll(&Instance::empty()).unwrap();
        assert!(c.valid);
        assert_eq!(c.margin, 1.0);
    }

    #[test]
    fn glll_examples() {
        let inst = isolated(vec![vec![0]], 1);
        assert!(check_glll(&inst, &[0.51]).unwrap().valid);
        assert!(!check_glll(&inst, &[0.0]).unwrap().valid);
        assert!(check_glll(&inst, &[]).is_err());
        assert!(check_glll(&inst, &[1.0]).is_err());
    }

    #[test]
    fn eps_isolated_three_vars() {
        // p = 1/8 is too big; use weights giving p = 0.01
        let mut vars: Vec<Variable> = (0..3).map(|i| Variable::uniform(i, 2)).collect();
        vars[0].weights = Some(vec![0.01, 0.99]);
        let inst = Instance::new(
            vars,
            vec![BadEvent { id: 0, vars: vec![0, 1, 2], spec: EventSpec::Explicit { assignments: vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1]] } }],
        )
        .unwrap();
        assert!((inst.event_probability(0).unwrap() - 0.01).abs() < 1e-15);
        let c = check_eps_correct(&inst, 0.3, &[0.5]).unwrap();
        assert!(c.valid);
        assert!((c.margin - (0.0135 - 0.01)).abs() < 1e-12);
    }

    #[test]
    fn suggest_isolated_half() {
        let inst = isolated(vec![vec![0]], 1);
        let w = suggest_omega(&inst, 1000).unwrap();
        assert!(w[0] > 0.5 && w[0] < 1.0);
        let sure = isolated(vec![vec![0], vec![1]], 1);
        assert!(matches!(suggest_omega(&sure, 1000), Err(CertifyError::Undominated { event: 0, .. })));
    }
}
