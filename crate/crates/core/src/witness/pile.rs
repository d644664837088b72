use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::WitnessError;
use crate::instance::Instance;
use crate::process::ProcessTrace;
use crate::table::Table;

/// A partial map τ from a variable set to resample counts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<(usize, u64)>", into = "Vec<(usize, u64)>")]
pub struct PileElement {
    /// Sorted, distinct.
    pub vars: Vec<usize>,
    pub values: Vec<u64>,
}

impl From<Vec<(usize, u64)>> for PileElement {
    fn from(mut pairs: Vec<(usize, u64)>) -> Self {
        pairs.sort_unstable();
        pairs.dedup_by_key(|p| p.0);
        PileElement { vars: pairs.iter().map(|p| p.0).collect(), values: pairs.iter().map(|p| p.1).collect() }
    }
}

impl From<PileElement> for Vec<(usize, u64)> {
    fn from(e: PileElement) -> Self {
        e.vars.into_iter().zip(e.values).collect()
    }
}

impl PileElement {
    pub fn new(pairs: &[(usize, u64)]) -> Self {
        pairs.to_vec().into()
    }

    pub fn get(&self, x: usize) -> Option<u64> {
        self.vars.binary_search(&x).ok().map(|i| self.values[i])
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.vars.iter().copied().zip(self.values.iter().copied())
    }
}

/// A finite set of partial maps; stored sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<PileElement>", into = "Vec<PileElement>")]
pub struct Pile {
    elements: Vec<PileElement>,
}

impl From<Vec<PileElement>> for Pile {
    fn from(mut elements: Vec<PileElement>) -> Self {
        elements.sort();
        elements.dedup();
        Pile { elements }
    }
}

impl From<Pile> for Vec<PileElement> {
    fn from(p: Pile) -> Self {
        p.elements
    }
}

impl Pile {
    pub fn new(elements: Vec<PileElement>) -> Self {
        elements.into()
    }

    pub fn elements(&self) -> &[PileElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        let s: BTreeSet<usize> = self.elements.iter().flat_map(|e| e.vars.iter().copied()).collect();
        s.into_iter().collect()
    }

    /// Overlap of graphs, or a support failure, as a message.
    pub(crate) fn structural_error(&self) -> Option<String> {
        if self.elements.is_empty() {
            return Some("empty".into());
        }
        let mut owner: HashMap<(usize, u64), usize> = HashMap::new();
        for (i, e) in self.elements.iter().enumerate() {
            if e.vars.is_empty() {
                return Some(format!("element {i} has empty domain"));
            }
            for p in e.pairs() {
                if let Some(j) = owner.insert(p, i) {
                    return Some(format!("elements {j} and {i} both map {} to {}", p.0, p.1));
                }
            }
        }
        for e in &self.elements {
            for (x, v) in e.pairs() {
                if v > 0 && !owner.contains_key(&(x, v - 1)) {
                    return Some(format!("value {v} at {x} is unsupported"));
                }
            }
        }
        None
    }

    /// `below[j]` lists i with τ_i ≺ τ_j. Requires disjoint graphs.
    pub(crate) fn support_relation(&self) -> Vec<Vec<usize>> {
        let owner: HashMap<(usize, u64), usize> =
            self.elements.iter().enumerate().flat_map(|(i, e)| e.pairs().map(move |p| (p, i))).collect();
        self.elements
            .iter()
            .map(|e| {
                let mut b: Vec<usize> =
                    e.pairs().filter(|p| p.1 > 0).filter_map(|(x, v)| owner.get(&(x, v - 1)).copied()).collect();
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PileReport {
    pub is_pile: bool,
    pub is_neat: bool,
    /// Indices of top elements.
    pub top: Vec<usize>,
    pub height: Option<usize>,
    pub support: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

pub fn validate_pile(p: &Pile) -> PileReport {
    let support = p.support();
    if let Some(reason) = p.structural_error() {
        return PileReport { is_pile: false, is_neat: false, top: vec![], height: None, support, reason: Some(reason) };
    }
    let below = p.support_relation();
    let n = p.len();
    let mut above = vec![Vec::new(); n];
    for (j, b) in below.iter().enumerate() {
        for &i in b {
            above[i].push(j);
        }
    }
    let top: Vec<usize> = (0..n).filter(|&i| above[i].is_empty()).collect();
    // Kahn order from the bottom; chain length counts elements.
    let mut indeg: Vec<usize> = below.iter().map(Vec::len).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut level = vec![1usize; n];
    let mut seen = 0;
    while let Some(i) = stack.pop() {
        seen += 1;
        for &j in &above[i] {
            level[j] = level[j].max(level[i] + 1);
            indeg[j] -= 1;
            if indeg[j] == 0 {
                stack.push(j);
            }
        }
    }
    let is_neat = seen == n;
    PileReport {
        is_pile: true,
        is_neat,
        top,
        height: is_neat.then(|| level.into_iter().max().unwrap_or(0)),
        support,
        reason: None,
    }
}

/// Whether every layer's induced assignment is forbidden on its domain.
pub fn appears_in(p: &Pile, table: &mut Table, inst: &Instance) -> Result<bool, WitnessError> {
    for e in p.elements() {
        let d = inst.domain_id(&e.vars).ok_or_else(|| WitnessError::UnknownDomain(e.vars.clone()))?;
        let mut vals = HashMap::new();
        for (x, n) in e.pairs() {
            vals.insert(x, table.value(inst, x, n)?);
        }
        if !inst.domain_violated(d, |x| vals[&x]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Per-variable list of steps at which the variable was resampled.
pub struct ResampleHistory {
    steps: Vec<Vec<usize>>,
}

impl ResampleHistory {
    pub fn new(trace: &ProcessTrace, num_vars: usize) -> Self {
        let mut steps = vec![Vec::new(); num_vars];
        for (j, r) in trace.steps.iter().enumerate() {
            for &x in &r.resampled {
                steps[x].push(j);
            }
        }
        ResampleHistory { steps }
    }

    /// t_j(x).
    pub fn t_at(&self, x: usize, j: usize) -> u64 {
        self.steps[x].partition_point(|&s| s < j) as u64
    }
}

/// The neat pile topped by t_n|S certifying that S was violated at step n.
pub fn traceback(inst: &Instance, trace: &ProcessTrace, domain: usize, n: usize) -> Result<Pile, WitnessError> {
    let hist = ResampleHistory::new(trace, inst.num_vars());
    traceback_with(inst, trace, &hist, domain, n)
}

pub(crate) fn traceback_with(
    inst: &Instance,
    trace: &ProcessTrace,
    hist: &ResampleHistory,
    domain: usize,
    n: usize,
) -> Result<Pile, WitnessError> {
    let rec = trace.steps.get(n).ok_or(WitnessError::StepOutOfRange(n))?;
    if !rec.violated.contains(&domain) {
        return Err(WitnessError::NotViolated { domain, step: n });
    }
    let restrict = |d: usize, j: usize| {
        let vars = inst.domain(d).vars.clone();
        let values = vars.iter().map(|&x| hist.t_at(x, j)).collect();
        PileElement { vars, values }
    };
    let mut reach = vec![false; inst.num_vars()];
    for &x in &inst.domain(domain).vars {
        reach[x] = true;
    }
    let mut elements = vec![restrict(domain, n)];
    for j in (0..n).rev() {
        let layer: Vec<usize> =
            trace.steps[j].selected.iter().copied().filter(|&d| inst.domain(d).vars.iter().any(|&x| reach[x])).collect();
        for d in layer {
            for &x in &inst.domain(d).vars {
                reach[x] = true;
            }
            elements.push(restrict(d, j));
        }
    }
    Ok(Pile::new(elements))
}

/// All piles with at most `max_elems` elements over the domains of `inst`,
/// with values below `max_elems`.
pub fn enumerate_piles(inst: &Instance, max_elems: usize) -> Vec<Pile> {
    let mut cands: Vec<PileElement> = Vec::new();
    for dom in inst.domains() {
        let k = dom.vars.len();
        let total = (max_elems as u64).pow(k as u32);
        for code in 0..total {
            let mut c = code;
            let values = (0..k)
                .map(|_| {
                    let v = c % max_elems as u64;
                    c /= max_elems as u64;
                    v
                })
                .collect();
            cands.push(PileElement { vars: dom.vars.clone(), values });
        }
    }
    let mut out = Vec::new();
    let mut used: Vec<(usize, u64)> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        cands: &[PileElement],
        start: usize,
        max: usize,
        used: &mut Vec<(usize, u64)>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Pile>,
    ) {
        if !chosen.is_empty() {
            let p = Pile::new(chosen.iter().map(|&i| cands[i].clone()).collect());
            if p.structural_error().is_none() {
                out.push(p);
            }
        }
        if chosen.len() == max {
            return;
        }
        for i in start..cands.len() {
            if cands[i].pairs().any(|p| used.contains(&p)) {
                continue;
            }
            let mark = used.len();
            used.extend(cands[i].pairs());
            chosen.push(i);
            rec(cands, i + 1, max, used, chosen, out);
            chosen.pop();
            used.truncate(mark);
        }
    }
    rec(&cands, 0, max_elems, &mut used, &mut chosen, &mut out);
    out
}
