//! Variables, bad events and instances.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::entropy::complexity::Surrogate;
use crate::ENUM_CAP;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InstanceError {
    #[error("variable at position {pos} has id {id}; ids must be dense 0..n-1")]
    VariableId { pos: usize, id: usize },
    #[error("event at position {pos} has id {id}; ids must be dense 0..m-1")]
    EventId { pos: usize, id: usize },
    #[error("variable {0} has domain_size 0")]
    EmptyVariableDomain(usize),
    #[error("variable {var}: {reason}")]
    Weights { var: usize, reason: String },
    #[error("event {0} has no variables")]
    EmptyEvent(usize),
    #[error("event {event} references unknown variable {var}")]
    UnknownVariable { event: usize, var: usize },
    #[error("event {event} lists variable {var} twice")]
    DuplicateVariable { event: usize, var: usize },
    #[error("event {event}: {reason}")]
    BadSpec { event: usize, reason: String },
    #[error("event {event}: {size} assignments exceed the enumeration cap and no closed form exists")]
    Unenumerable { event: usize, size: u128 },
    #[error("unknown event {0}")]
    UnknownEvent(usize),
    #[error("invalid instance JSON at line {line}, column {column}: {msg}")]
    Json { line: usize, column: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Variable {
    pub id: usize,
    pub domain_size: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
}

impl Variable {
    pub fn uniform(id: usize, domain_size: u32) -> Self {
        Variable { id, domain_size, weights: None }
    }

    pub fn weight(&self, v: u32) -> f64 {
        match &self.weights {
            Some(w) => w[v as usize],
            None => 1.0 / self.domain_size as f64,
        }
    }
}

/// How a bad event decides which assignments of its variables are forbidden.
///
/// Values passed to a predicate are in the order of the event's `vars`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum EventSpec {
    /// Explicit list of forbidden assignments.
    Explicit { assignments: Vec<Vec<u32>> },
    /// All variables take the same value.
    Monochromatic,
    /// First and last variable agree.
    EndpointsEqual,
    /// The variables take exactly these values.
    ListConflict { values: Vec<u32> },
    /// The value sequence is a square `uu`.
    RepetitivePath,
    /// At most `max_colors` distinct values appear.
    FewColorsCycle { max_colors: u32 },
    /// Uncolored-vertex goodness failure on a radius-2 ball.
    ///
    /// Position 0 is the center, positions `1..=degree` its neighbours, and
    /// `adjacency[i]` lists the ball positions adjacent to position `i` for
    /// every `i <= degree`.
    GoodnessFailure { degree: usize, adjacency: Vec<Vec<usize>>, min_repeated: u32 },
    /// The window's surrogate description length is at most `threshold_bits`.
    LowComplexity { s: u32, threshold_bits: i64, surrogate: Surrogate },
}

impl EventSpec {
    /// Whether the value sequence is forbidden.
    pub fn contains(&self, vals: &[u32]) -> bool {
        match self {
            EventSpec::Explicit { assignments } => assignments.binary_search_by(|a| a.as_slice().cmp(vals)).is_ok(),
            EventSpec::Monochromatic => vals.windows(2).all(|w| w[0] == w[1]),
            EventSpec::EndpointsEqual => vals.first() == vals.last(),
            EventSpec::ListConflict { values } => values.as_slice() == vals,
            EventSpec::RepetitivePath => {
                let h = vals.len() / 2;
                vals.len().is_multiple_of(2) && vals[..h] == vals[h..]
            }
            EventSpec::FewColorsCycle { max_colors } => {
                let mut seen: Vec<u32> = Vec::with_capacity(vals.len());
                for &v in vals {
                    if !seen.contains(&v) {
                        seen.push(v);
                        if seen.len() > *max_colors as usize {
                            return false;
                        }
                    }
                }
                true
            }
            EventSpec::GoodnessFailure { degree, adjacency, min_repeated } => {
                goodness_failure(*degree, adjacency, *min_repeated, vals)
            }
            EventSpec::LowComplexity { s, threshold_bits, surrogate } => {
                (surrogate.bits(vals, *s) as i64) <= *threshold_bits
            }
        }
    }
}

fn goodness_failure(degree: usize, adjacency: &[Vec<usize>], min_repeated: u32, vals: &[u32]) -> bool {
    let retained = |i: usize| adjacency[i].iter().all(|&j| vals[j] != vals[i]);
    if retained(0) {
        return false;
    }
    let mut counts: Vec<(u32, u32)> = Vec::new();
    for y in 1..=degree {
        if retained(y) {
            match counts.iter_mut().find(|(c, _)| *c == vals[y]) {
                Some(e) => e.1 += 1,
                None => counts.push((vals[y], 1)),
            }
        }
    }
    (counts.iter().filter(|(_, n)| *n >= 2).count() as u32) < min_repeated
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BadEvent {
    pub id: usize,
    pub vars: Vec<usize>,
    pub spec: EventSpec,
}

/// A distinct event domain with the events living on it.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    /// Sorted variable ids.
    pub vars: Vec<usize>,
    pub events: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    variables: Vec<Variable>,
    events: Vec<BadEvent>,
}

/// A finite set of bad events over finitely many variables.
#[derive(Debug, Clone)]
pub struct Instance {
    variables: Vec<Variable>,
    events: Vec<BadEvent>,
    var_index: Vec<Vec<usize>>,
    domains: Vec<Domain>,
    event_domain: Vec<usize>,
    var_domains: Vec<Vec<usize>>,
    domain_lookup: HashMap<Vec<usize>, usize>,
    cdf: Vec<Option<Vec<f64>>>,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.variables == other.variables && self.events == other.events
    }
}

impl Serialize for Instance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Ref<'a> {
            variables: &'a [Variable],
            events: &'a [BadEvent],
        }
        Ref { variables: &self.variables, events: &self.events }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Instance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let f = InstanceFile::deserialize(d)?;
        Instance::new(f.variables, f.events).map_err(serde::de::Error::custom)
    }
}

impl Instance {
    pub fn new(variables: Vec<Variable>, mut events: Vec<BadEvent>) -> Result<Self, InstanceError> {
        for (pos, v) in variables.iter().enumerate() {
            if v.id != pos {
                return Err(InstanceError::VariableId { pos, id: v.id });
            }
            if v.domain_size == 0 {
                return Err(InstanceError::EmptyVariableDomain(v.id));
            }
            if let Some(w) = &v.weights {
                if w.len() != v.domain_size as usize {
                    return Err(InstanceError::Weights {
                        var: v.id,
                        reason: format!("{} weights for domain size {}", w.len(), v.domain_size),
                    });
                }
                if w.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
                    return Err(InstanceError::Weights { var: v.id, reason: "negative or non-finite weight".into() });
                }
                let s: f64 = w.iter().sum();
                if (s - 1.0).abs() > crate::TOL {
                    return Err(InstanceError::Weights { var: v.id, reason: format!("weights sum to {s}") });
                }
            }
        }
        let n = variables.len();
        for (pos, e) in events.iter_mut().enumerate() {
            if e.id != pos {
                return Err(InstanceError::EventId { pos, id: e.id });
            }
            if e.vars.is_empty() {
                return Err(InstanceError::EmptyEvent(e.id));
            }
            let mut seen = std::collections::HashSet::new();
            for &x in &e.vars {
                if x >= n {
                    return Err(InstanceError::UnknownVariable { event: e.id, var: x });
                }
                if !seen.insert(x) {
                    return Err(InstanceError::DuplicateVariable { event: e.id, var: x });
                }
            }
            validate_spec(e, &variables)?;
        }

        let mut var_index = vec![Vec::new(); n];
        let mut domains: Vec<Domain> = Vec::new();
        let mut domain_lookup: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut event_domain = Vec::with_capacity(events.len());
        for e in &events {
            for &x in &e.vars {
                var_index[x].push(e.id);
            }
            let mut key = e.vars.clone();
            key.sort_unstable();
            let d = *domain_lookup.entry(key.clone()).or_insert_with(|| {
                domains.push(Domain { vars: key, events: Vec::new() });
                domains.len() - 1
            });
            domains[d].events.push(e.id);
            event_domain.push(d);
        }
        let mut var_domains = vec![Vec::new(); n];
        for (d, dom) in domains.iter().enumerate() {
            for &x in &dom.vars {
                var_domains[x].push(d);
            }
        }
        let cdf = variables
            .iter()
            .map(|v| {
                v.weights.as_ref().map(|w| {
                    let mut acc = 0.0;
                    w.iter()
                        .map(|p| {
                            acc += p;
                            acc
                        })
                        .collect()
                })
            })
            .collect();
        Ok(Instance { variables, events, var_index, domains, event_domain, var_domains, domain_lookup, cdf })
    }

    pub fn empty() -> Self {
        Instance::new(Vec::new(), Vec::new()).unwrap()
    }

    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        serde_json::from_str(text).map_err(|e| InstanceError::Json {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn events(&self) -> &[BadEvent] {
        &self.events
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn num_events(&self) -> usize {
        self.events.len()
    }

    pub fn event(&self, id: usize) -> Result<&BadEvent, InstanceError> {
        self.events.get(id).ok_or(InstanceError::UnknownEvent(id))
    }

    /// Events containing variable `x`.
    pub fn var_index(&self, x: usize) -> &[usize] {
        &self.var_index[x]
    }

    pub fn domains(&self) -> &[Domain] {
        &self.domains
    }

    pub fn num_domains(&self) -> usize {
        self.domains.len()
    }

    pub fn domain(&self, d: usize) -> &Domain {
        &self.domains[d]
    }

    pub fn event_domain(&self, event: usize) -> usize {
        self.event_domain[event]
    }

    /// Domains containing variable `x`.
    pub fn var_domains(&self, x: usize) -> &[usize] {
        &self.var_domains[x]
    }

    /// Domain id of a variable set, in any order.
    pub fn domain_id(&self, vars: &[usize]) -> Option<usize> {
        let mut key = vars.to_vec();
        key.sort_unstable();
        self.domain_lookup.get(&key).copied()
    }

    /// Domains meeting domain `d`, including `d` itself, sorted.
    pub fn domain_neighbors(&self, d: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.domains[d].vars.iter().flat_map(|&x| self.var_domains[x].iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Map a uniform draw in `[0,1)` to a value of variable `x`.
    pub fn inverse_cdf(&self, x: usize, raw: u64) -> u32 {
        let q = self.variables[x].domain_size;
        match &self.cdf[x] {
            None => ((raw as u128 * q as u128) >> 64) as u32,
            Some(cdf) => {
                let u = (raw >> 11) as f64 / (1u64 << 53) as f64;
                let i = cdf.partition_point(|&c| c <= u);
                (i as u32).min(q - 1)
            }
        }
    }

    /// Whether an event is violated by an assignment given as a lookup.
    pub fn event_violated(&self, event: usize, value: impl Fn(usize) -> u32) -> bool {
        let e = &self.events[event];
        let vals: Vec<u32> = e.vars.iter().map(|&x| value(x)).collect();
        e.spec.contains(&vals)
    }

    /// Whether the assignment restricted to domain `d` lies in some event on `d`.
    pub fn domain_violated(&self, d: usize, value: impl Fn(usize) -> u32) -> bool {
        self.domains[d].events.iter().any(|&e| self.event_violated(e, &value))
    }

    /// Events B' != B sharing a variable with B.
    pub fn neighborhood(&self, event: usize) -> Result<Vec<usize>, InstanceError> {
        let e = self.event(event)?;
        let mut out: Vec<usize> = e.vars.iter().flat_map(|&x| self.var_index[x].iter().copied()).filter(|&b| b != event).collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn degree(&self, event: usize) -> usize {
        self.neighborhood(event).map(|n| n.len()).unwrap_or(0)
    }

    /// Maximum degree d(𝔅); 0 for the empty instance.
    pub fn max_degree(&self) -> usize {
        (0..self.events.len()).map(|e| self.degree(e)).max().unwrap_or(0)
    }

    /// Product-measure probability of an event.
    pub fn event_probability(&self, event: usize) -> Result<f64, InstanceError> {
        let e = self.event(event)?;
        let w = |x: usize, v: u32| self.variables[x].weight(v);
        let min_q = e.vars.iter().map(|&x| self.variables[x].domain_size).min().unwrap_or(0);
        let p = match &e.spec {
            EventSpec::Explicit { assignments } => {
                assignments.iter().map(|a| a.iter().zip(&e.vars).map(|(&v, &x)| w(x, v)).product::<f64>()).sum()
            }
            EventSpec::Monochromatic => (0..min_q).map(|c| e.vars.iter().map(|&x| w(x, c)).product::<f64>()).sum(),
            EventSpec::EndpointsEqual if e.vars.len() >= 2 => {
                let (a, b) = (e.vars[0], *e.vars.last().unwrap());
                let q = self.variables[a].domain_size.min(self.variables[b].domain_size);
                (0..q).map(|c| w(a, c) * w(b, c)).sum()
            }
            EventSpec::EndpointsEqual => 1.0,
            EventSpec::ListConflict { values } => values.iter().zip(&e.vars).map(|(&v, &x)| w(x, v)).product(),
            EventSpec::RepetitivePath => {
                let h = e.vars.len() / 2;
                if e.vars.len() % 2 == 1 {
                    0.0
                } else {
                    (0..h)
                        .map(|i| {
                            let (a, b) = (e.vars[i], e.vars[i + h]);
                            let q = self.variables[a].domain_size.min(self.variables[b].domain_size);
                            (0..q).map(|c| w(a, c) * w(b, c)).sum::<f64>()
                        })
                        .product()
                }
            }
            _ => self.enumerate_probability(&e.vars, |vals| e.spec.contains(vals)).map_err(|size| {
                InstanceError::Unenumerable { event, size }
            })?,
        };
        Ok(p.clamp(0.0, 1.0))
    }

    /// Exhaustive product-measure mass of `pred` over the assignments of `vars`.
    ///
    /// Returns the product size when it exceeds the enumeration cap.
    pub fn enumerate_probability(&self, vars: &[usize], pred: impl Fn(&[u32]) -> bool) -> Result<f64, u128> {
        let sizes: Vec<u32> = vars.iter().map(|&x| self.variables[x].domain_size).collect();
        let total: u128 = sizes.iter().map(|&q| q as u128).product();
        if total > ENUM_CAP as u128 {
            return Err(total);
        }
        let mut vals = vec![0u32; vars.len()];
        let mut mass = 0.0;
        loop {
            if pred(&vals) {
                mass += vals.iter().zip(vars).map(|(&v, &x)| self.variables[x].weight(v)).product::<f64>();
            }
            let mut i = 0;
            loop {
                if i == vals.len() {
                    return Ok(mass);
                }
                vals[i] += 1;
                if vals[i] < sizes[i] {
                    break;
                }
                vals[i] = 0;
                i += 1;
            }
        }
    }

    /// ℙ[𝔅_S], the mass of the union of events living on domain `d`.
    ///
    /// Unions of several events are enumerated; when that is impossible the
    /// (clamped) sum of event probabilities is returned as an upper bound.
    pub fn domain_probability(&self, d: usize) -> Result<f64, InstanceError> {
        let dom = &self.domains[d];
        if dom.events.len() == 1 {
            return self.event_probability(dom.events[0]);
        }
        let evs: Vec<&BadEvent> = dom.events.iter().map(|&e| &self.events[e]).collect();
        let pos: Vec<Vec<usize>> =
            evs.iter().map(|e| e.vars.iter().map(|x| dom.vars.binary_search(x).unwrap()).collect()).collect();
        let exact = self.enumerate_probability(&dom.vars, |vals| {
            evs.iter().zip(&pos).any(|(e, p)| {
                let v: Vec<u32> = p.iter().map(|&i| vals[i]).collect();
                e.spec.contains(&v)
            })
        });
        match exact {
            Ok(p) => Ok(p.clamp(0.0, 1.0)),
            Err(_) => {
                let mut s = 0.0;
                for &e in &dom.events {
                    s += self.event_probability(e)?;
                }
                Ok(s.min(1.0))
            }
        }
    }

    /// p(𝔅), the largest event probability.
    pub fn max_probability(&self) -> Result<f64, InstanceError> {
        let mut p: f64 = 0.0;
        for e in 0..self.events.len() {
            p = p.max(self.event_probability(e)?);
        }
        Ok(p)
    }

    /// Monte-Carlo estimate of an event probability, for events too large to enumerate.
    pub fn estimate_event_probability(&self, event: usize, samples: usize, seed: u64) -> Result<(f64, f64), InstanceError> {
        use rand::{Rng, SeedableRng};
        let e = self.event(event)?;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut hits = 0usize;
        let mut vals = vec![0u32; e.vars.len()];
        for _ in 0..samples {
            for (v, &x) in vals.iter_mut().zip(&e.vars) {
                *v = self.inverse_cdf(x, rng.gen());
            }
            if e.spec.contains(&vals) {
                hits += 1;
            }
        }
        let p = hits as f64 / samples.max(1) as f64;
        Ok((p, (p * (1.0 - p) / samples.max(1) as f64).sqrt()))
    }

    /// Copy with duplicate (vars, spec) events removed; ids are renumbered.
    pub fn dedup_events(&self) -> Instance {
        let mut kept: Vec<BadEvent> = Vec::new();
        for e in &self.events {
            if !kept.iter().any(|k| k.vars == e.vars && k.spec == e.spec) {
                kept.push(BadEvent { id: kept.len(), vars: e.vars.clone(), spec: e.spec.clone() });
            }
        }
        Instance::new(self.variables.clone(), kept).expect("subset of a valid instance")
    }
}

fn validate_spec(e: &mut BadEvent, variables: &[Variable]) -> Result<(), InstanceError> {
    let bad = |reason: String| InstanceError::BadSpec { event: e.id, reason };
    let k = e.vars.len();
    match &mut e.spec {
        EventSpec::Explicit { assignments } => {
            for a in assignments.iter() {
                if a.len() != k {
                    return Err(bad(format!("assignment of length {} for {} variables", a.len(), k)));
                }
                for (&v, &x) in a.iter().zip(&e.vars) {
                    if v >= variables[x].domain_size {
                        return Err(bad(format!("value {v} outside the domain of variable {x}")));
                    }
                }
            }
            assignments.sort();
            assignments.dedup();
        }
        EventSpec::EndpointsEqual if k < 2 => return Err(bad("endpoints_equal needs two variables".into())),
        EventSpec::ListConflict { values } => {
            if values.len() != k {
                return Err(bad("list_conflict values must match vars".into()));
            }
            for (&v, &x) in values.iter().zip(&e.vars) {
                if v >= variables[x].domain_size {
                    return Err(bad(format!("value {v} outside the domain of variable {x}")));
                }
            }
        }
        EventSpec::RepetitivePath if k % 2 == 1 => return Err(bad("repetitive_path needs an even number of variables".into())),
        EventSpec::GoodnessFailure { degree, adjacency, .. } => {
            if *degree + 1 > k || adjacency.len() != *degree + 1 || adjacency.iter().flatten().any(|&j| j >= k) {
                return Err(bad("goodness_failure adjacency inconsistent with vars".into()));
            }
        }
        EventSpec::LowComplexity { s, .. }
            if *s == 0 || *s > 16 || e.vars.iter().any(|&x| variables[x].domain_size != 1 << *s) =>
        {
            return Err(bad("low_complexity needs variables of size 2^s".into()));
        }
        _ => {}
    }
    Ok(())
}

/// All assignments of `q` values to `k` positions, in lexicographic order.
pub fn all_assignments(k: usize, q: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out.into_iter().flat_map(|a| (0..q).map(move |v| [a.clone(), vec![v]].concat())).collect();
    }
    out
}
