use super::AppError;
use crate::graph::SimpleGraph;
use crate::instance::{BadEvent, EventSpec, Instance, Variable};

#[derive(Debug, Clone, PartialEq)]
pub struct AcyclicInstance {
    pub instance: Instance,
    pub cycles: Vec<Vec<usize>>,
    pub cmax: usize,
}

/// Simple cycles of length 3..=cmax, each once: rooted at its least vertex,
/// with the second vertex smaller than the last.
pub fn enumerate_cycles(g: &SimpleGraph, cmax: usize, budget: usize) -> Result<Vec<Vec<usize>>, AppError> {
    let mut out = Vec::new();
    fn dfs(
        g: &SimpleGraph,
        cmax: usize,
        budget: usize,
        path: &mut Vec<usize>,
        on: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) -> Result<(), AppError> {
        let s = path[0];
        let v = *path.last().unwrap();
        for &w in g.neighbors(v) {
            if w == s && path.len() >= 3 && path[1] < v {
                if out.len() == budget {
                    return Err(AppError::Budget(budget));
                }
                out.push(path.clone());
            }
            if w > s && !on[w] && path.len() < cmax {
                on[w] = true;
                path.push(w);
                dfs(g, cmax, budget, path, on, out)?;
                path.pop();
                on[w] = false;
            }
        }
        Ok(())
    }
    let mut on = vec![false; g.n()];
    for s in 0..g.n() {
        on[s] = true;
        dfs(g, cmax, budget, &mut vec![s], &mut on, &mut out)?;
        on[s] = false;
    }
    Ok(out)
}

/// Edge properness events plus an at-most-two-colors event per short cycle.
pub fn gen_acyclic(g: &SimpleGraph, palette: u32, cmax: usize, budget: usize) -> Result<AcyclicInstance, AppError> {
    if palette == 0 {
        return Err(AppError::Params("empty palette".into()));
    }
    let mut events: Vec<BadEvent> = g
        .edges()
        .into_iter()
        .enumerate()
        .map(|(id, (a, b))| BadEvent { id, vars: vec![a, b], spec: EventSpec::EndpointsEqual })
        .collect();
    let cycles = enumerate_cycles(g, cmax, budget)?;
    for c in &cycles {
        events.push(BadEvent { id: events.len(), vars: c.clone(), spec: EventSpec::FewColorsCycle { max_colors: 2 } });
    }
    let instance = Instance::new((0..g.n()).map(|i| Variable::uniform(i, palette)).collect(), events)?;
    Ok(AcyclicInstance { instance, cycles, cmax })
}

/// Independent check: proper, and every closed walk without repeated vertices
/// of length at most `cmax`, from every start, sees at least three colors.
pub fn is_acyclic_coloring(g: &SimpleGraph, coloring: &[u32], cmax: usize) -> bool {
    if !g.is_proper(coloring) {
        return false;
    }
    fn walk(g: &SimpleGraph, c: &[u32], cmax: usize, path: &mut Vec<usize>) -> bool {
        let v = *path.last().unwrap();
        for &w in g.neighbors(v) {
            if w == path[0] && path.len() >= 3 {
                let mut cols: Vec<u32> = path.iter().map(|&x| c[x]).collect();
                cols.sort_unstable();
                cols.dedup();
                if cols.len() < 3 {
                    return false;
                }
            } else if !path.contains(&w) && path.len() < cmax {
                path.push(w);
                let ok = walk(g, c, cmax, path);
                path.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    (0..g.n()).all(|s| walk(g, coloring, cmax, &mut vec![s]))
}

pub fn brute_force_acyclic(g: &SimpleGraph, palette: u32, cmax: usize) -> Option<Vec<u32>> {
    let n = g.n();
    let mut c = vec![0u32; n];
    loop {
        if is_acyclic_coloring(g, &c, cmax) {
            return Some(c);
        }
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            c[i] += 1;
            if c[i] < palette {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}
