//! The Moser–Tardos resampling process over an explicit table.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::instance::Instance;
use crate::table::{Table, TableError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SelectionRule {
    /// Greedy over (min var id, size, domain id).
    Lex,
    /// Greedy over a seeded shuffle.
    Random { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Running,
    Stabilized,
    StepLimit,
}

/// One step n: A'_n, A_n and X_n, as domain ids and variable ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub violated: Vec<usize>,
    pub selected: Vec<usize>,
    pub resampled: Vec<usize>,
}

/// Record of a run. `steps[n]` holds step n; the last record is the frontier,
/// whose violated set has not been acted on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProcessTrace {
    pub steps: Vec<StepRecord>,
    pub t: Vec<u64>,
    pub f: Vec<u32>,
    pub status: RunStatus,
}

impl ProcessTrace {
    /// Number of resampling steps executed.
    pub fn num_steps(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    /// Ind(S): how many times each domain was resampled.
    pub fn resamples_per_domain(&self, num_domains: usize) -> Vec<u64> {
        let mut ind = vec![0u64; num_domains];
        for r in &self.steps {
            for &d in &r.selected {
                ind[d] += 1;
            }
        }
        ind
    }

    /// The domains violated by the current assignment.
    pub fn frontier(&self) -> &[usize] {
        &self.steps.last().expect("trace has an initial record").violated
    }

    /// t_n for every variable, reconstructed from the recorded X_j.
    pub fn counts_at(&self, n: usize, num_vars: usize) -> Vec<u64> {
        let mut t = vec![0u64; num_vars];
        for r in &self.steps[..n] {
            for &x in &r.resampled {
                t[x] += 1;
            }
        }
        t
    }
}

/// Domains whose restriction of `assignment` is forbidden, ascending.
pub fn violated_domains(inst: &Instance, assignment: &[u32]) -> Vec<usize> {
    (0..inst.num_domains()).filter(|&d| inst.domain_violated(d, |x| assignment[x])).collect()
}

/// Maximal pairwise-disjoint subfamily, as indices into `sets`.
pub fn select_maximal_disjoint(sets: &[Vec<usize>], rule: SelectionRule) -> Vec<usize> {
    let mut order: Vec<usize> = (0..sets.len()).collect();
    match rule {
        SelectionRule::Lex => order.sort_by_key(|&i| (sets[i].iter().min().copied(), sets[i].len(), i)),
        SelectionRule::Random { seed } => order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
    }
    let mut used = BTreeSet::new();
    let mut out = Vec::new();
    for i in order {
        if sets[i].iter().all(|x| !used.contains(x)) {
            used.extend(sets[i].iter().copied());
            out.push(i);
        }
    }
    out
}

/// A running process borrowing its instance and table.
pub struct Process<'a> {
    inst: &'a Instance,
    table: &'a mut Table,
    rule: SelectionRule,
    rng: Option<ChaCha8Rng>,
    trace: ProcessTrace,
    is_violated: Vec<bool>,
    violated: BTreeSet<(usize, usize, usize)>,
    mark: Vec<u32>,
    dmark: Vec<u32>,
    epoch: u32,
}

impl<'a> Process<'a> {
    /// Read f_0 from row 0 and compute A'_0.
    pub fn new(inst: &'a Instance, table: &'a mut Table, rule: SelectionRule) -> Result<Self, TableError> {
        table.validate(inst)?;
        let n = inst.num_vars();
        let f = (0..n).map(|x| table.value(inst, x, 0)).collect::<Result<Vec<_>, _>>()?;
        let rng = match rule {
            SelectionRule::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
            SelectionRule::Lex => None,
        };
        let mut p = Process {
            inst,
            table,
            rule,
            rng,
            trace: ProcessTrace { steps: Vec::new(), t: vec![0; n], f, status: RunStatus::Running },
            is_violated: vec![false; inst.num_domains()],
            violated: BTreeSet::new(),
            mark: vec![0; n],
            dmark: vec![0; inst.num_domains()],
            epoch: 0,
        };
        for d in 0..inst.num_domains() {
            p.refresh(d);
        }
        p.push_frontier();
        Ok(p)
    }

    fn key(&self, d: usize) -> (usize, usize, usize) {
        let vars = &self.inst.domain(d).vars;
        (vars[0], vars.len(), d)
    }

    fn refresh(&mut self, d: usize) {
        let f = &self.trace.f;
        let now = self.inst.domain_violated(d, |x| f[x]);
        if now != self.is_violated[d] {
            self.is_violated[d] = now;
            let k = self.key(d);
            if now {
                self.violated.insert(k);
            } else {
                self.violated.remove(&k);
            }
        }
    }

    fn push_frontier(&mut self) {
        let violated: Vec<usize> = self.violated.iter().map(|k| k.2).collect();
        if violated.is_empty() {
            self.trace.status = RunStatus::Stabilized;
        }
        self.trace.steps.push(StepRecord { violated, selected: Vec::new(), resampled: Vec::new() });
    }

    fn bump_epoch(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.dmark.iter_mut().for_each(|m| *m = 0);
            self.epoch = 1;
        }
        self.epoch
    }

    pub fn status(&self) -> RunStatus {
        self.trace.status
    }

    pub fn rule(&self) -> SelectionRule {
        self.rule
    }

    pub fn trace(&self) -> &ProcessTrace {
        &self.trace
    }

    pub fn into_trace(self) -> ProcessTrace {
        self.trace
    }

    /// Resample a maximal disjoint family of violated domains.
    pub fn step(&mut self) -> Result<(), TableError> {
        assert_eq!(self.trace.status, RunStatus::Running, "step on a finished process");
        let inst = self.inst;
        let mut order: Vec<usize> = self.trace.steps.last().unwrap().violated.clone();
        if let Some(rng) = self.rng.as_mut() {
            order.shuffle(rng);
        }
        let ep = self.bump_epoch();
        let mut selected = Vec::new();
        let mut resampled = Vec::new();
        for d in order {
            let vars = &inst.domain(d).vars;
            if vars.iter().all(|&x| self.mark[x] != ep) {
                for &x in vars {
                    self.mark[x] = ep;
                    resampled.push(x);
                }
                selected.push(d);
            }
        }
        resampled.sort_unstable();
        if cfg!(debug_assertions) {
            self.check_selection(&selected, ep);
        }
        for &x in &resampled {
            self.trace.t[x] += 1;
            self.trace.f[x] = self.table.value(inst, x, self.trace.t[x])?;
        }
        let ep = self.bump_epoch();
        for &x in &resampled {
            for &d in inst.var_domains(x) {
                if self.dmark[d] != ep {
                    self.dmark[d] = ep;
                    self.refresh(d);
                }
            }
        }
        let rec = self.trace.steps.last_mut().unwrap();
        rec.selected = selected;
        rec.resampled = resampled;
        self.push_frontier();
        Ok(())
    }

    fn check_selection(&self, selected: &[usize], ep: u32) {
        let rec = self.trace.steps.last().unwrap();
        let mut seen = BTreeSet::new();
        for &d in selected {
            assert!(rec.violated.contains(&d), "A_n not within A'_n");
            for &x in &self.inst.domain(d).vars {
                assert!(seen.insert(x), "A_n not disjoint");
            }
        }
        for &d in &rec.violated {
            assert!(self.inst.domain(d).vars.iter().any(|&x| self.mark[x] == ep), "A_n not maximal");
        }
    }

    /// Step until stabilized or `max_steps` steps have been taken.
    pub fn run(&mut self, max_steps: usize) -> Result<RunStatus, TableError> {
        let mut taken = 0;
        while self.trace.status == RunStatus::Running {
            if taken == max_steps {
                self.trace.status = RunStatus::StepLimit;
                break;
            }
            self.step()?;
            taken += 1;
        }
        Ok(self.trace.status)
    }
}

/// Run with the Lex rule.
pub fn run(inst: &Instance, table: &mut Table, max_steps: usize) -> Result<ProcessTrace, TableError> {
    run_with_rule(inst, table, SelectionRule::Lex, max_steps)
}

pub fn run_with_rule(inst: &Instance, table: &mut Table, rule: SelectionRule, max_steps: usize) -> Result<ProcessTrace, TableError> {
    let mut p = Process::new(inst, table, rule)?;
    p.run(max_steps)?;
    Ok(p.into_trace())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub status: RunStatus,
    pub steps: usize,
    pub resamples_per_domain: Vec<u64>,
    pub total_resamples: u64,
    pub final_assignment: Vec<u32>,
    /// Domains still violated when the step limit was hit, as variable sets.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub surviving: Vec<Vec<usize>>,
}

/// Seeded table + Lex run. Errors with the report when the step limit is hit.
pub fn solve(inst: &Instance, seed: u64, max_steps: usize) -> Result<SolveReport, SolveReport> {
    let mut table = Table::seeded(seed);
    let trace = run(inst, &mut table, max_steps).expect("seeded tables are total");
    let ind = trace.resamples_per_domain(inst.num_domains());
    let report = SolveReport {
        status: trace.status,
        steps: trace.num_steps(),
        total_resamples: ind.iter().sum(),
        resamples_per_domain: ind,
        surviving: trace.frontier().iter().map(|&d| inst.domain(d).vars.clone()).collect(),
        final_assignment: trace.f,
    };
    if report.status == RunStatus::Stabilized {
        Ok(report)
    } else {
        Err(report)
    }
}

/// Step limit from `LLL_STEP_LIMIT`, else the crate default.
pub fn default_step_limit() -> usize {
    std::env::var("LLL_STEP_LIMIT").ok().and_then(|v| v.parse().ok()).unwrap_or(crate::DEFAULT_STEP_LIMIT)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{BadEvent, EventSpec, Variable};

    fn chain() -> Instance {
        Instance::new(
            (0..4).map(|i| Variable::uniform(i, 2)).collect(),
            [[0, 1], [1, 2], [2, 3]]
                .iter()
                .enumerate()
                .map(|(id, v)| BadEvent { id, vars: v.to_vec(), spec: EventSpec::Monochromatic })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn violated_middle_only() {
        assert_eq!(violated_domains(&chain(), &[0, 1, 1, 0]), vec![1]);
        assert!(violated_domains(&chain(), &[0, 1, 0, 1]).is_empty());
    }

    #[test]
    fn lex_selection_example() {
        let sets = vec![vec![0, 1], vec![1, 2], vec![3]];
        assert_eq!(select_maximal_disjoint(&sets, SelectionRule::Lex), vec![0, 2]);
        assert!(select_maximal_disjoint(&[], SelectionRule::Lex).is_empty());
        let disjoint = vec![vec![4], vec![0, 1], vec![2]];
        let mut got = select_maximal_disjoint(&disjoint, SelectionRule::Lex);
        got.sort();
        assert_eq!(got, vec![0, 1, 2]);
    }

    #[test]
    fn single_event_hand_simulation() {
        let inst = Instance::new(
            vec![Variable::uniform(0, 2)],
            vec![BadEvent { id: 0, vars: vec![0], spec: EventSpec::Explicit { assignments: vec![vec![0]] } }],
        )
        .unwrap();
        let mut table = Table::explicit(vec![vec![0, 1]]);
        let trace = run(&inst, &mut table, 10).unwrap();
        assert_eq!(trace.status, RunStatus::Stabilized);
        assert_eq!(trace.t, vec![1]);
        assert_eq!(trace.f, vec![1]);
        assert_eq!(trace.num_steps(), 1);
    }

    #[test]
    fn zero_steps_keeps_initial_record() {
        let inst = chain();
        let mut table = Table::explicit(vec![vec![0]; 4]);
        let trace = run(&inst, &mut table, 0).unwrap();
        assert_eq!(trace.status, RunStatus::StepLimit);
        assert_eq!(trace.steps.len(), 1);
    }

    #[test]
    fn certain_event_never_stabilizes() {
        let inst = Instance::new(
            vec![Variable::uniform(0, 2)],
            vec![BadEvent { id: 0, vars: vec![0], spec: EventSpec::Explicit { assignments: vec![vec![0], vec![1]] } }],
        )
        .unwrap();
        let err = solve(&inst, 1, 50).unwrap_err();
        assert_eq!(err.status, RunStatus::StepLimit);
        assert_eq!(err.surviving, vec![vec![0]]);
    }

    #[test]
    fn empty_instance_solves_immediately() {
        let inst = Instance::new((0..3).map(|i| Variable::uniform(i, 2)).collect(), vec![]).unwrap();
        let r = solve(&inst, 3, 10).unwrap();
        assert_eq!(r.total_resamples, 0);
        assert_eq!(r.steps, 0);
    }
}
