use super::AppError;
use crate::graph::SimpleGraph;
use crate::instance::{BadEvent, EventSpec, Instance, Variable};

#[derive(Debug, Clone, PartialEq)]
pub struct NonrepInstance {
    pub instance: Instance,
    pub paths: Vec<Vec<usize>>,
    pub lmax: usize,
}

/// Simple paths with an even number of vertices in [2, lmax], each listed
/// once (first vertex smaller than last).
pub fn enumerate_paths(g: &SimpleGraph, lmax: usize, budget: usize) -> Result<Vec<Vec<usize>>, AppError> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    let mut on = vec![false; g.n()];
    fn dfs(
        g: &SimpleGraph,
        lmax: usize,
        budget: usize,
        path: &mut Vec<usize>,
        on: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) -> Result<(), AppError> {
        let v = *path.last().unwrap();
        if path.len().is_multiple_of(2) && path[0] < v {
            if out.len() == budget {
                return Err(AppError::Budget(budget));
            }
            out.push(path.clone());
        }
        if path.len() == lmax {
            return Ok(());
        }
        for &w in g.neighbors(v) {
            if !on[w] {
                on[w] = true;
                path.push(w);
                dfs(g, lmax, budget, path, on, out)?;
                path.pop();
                on[w] = false;
            }
        }
        Ok(())
    }
    for s in 0..g.n() {
        on[s] = true;
        path.push(s);
        dfs(g, lmax, budget, &mut path, &mut on, &mut out)?;
        path.pop();
        on[s] = false;
    }
    Ok(out)
}

/// One repetitive-path event per enumerated path.
pub fn gen_nonrepetitive(g: &SimpleGraph, palette: u32, lmax: usize, budget: usize) -> Result<NonrepInstance, AppError> {
    if lmax < 2 || lmax % 2 == 1 {
        return Err(AppError::Params(format!("lmax {lmax} must be even and at least 2")));
    }
    if palette == 0 {
        return Err(AppError::Params("empty palette".into()));
    }
    let paths = enumerate_paths(g, lmax, budget)?;
    let events = paths
        .iter()
        .enumerate()
        .map(|(id, p)| BadEvent { id, vars: p.clone(), spec: EventSpec::RepetitivePath })
        .collect();
    let instance = Instance::new((0..g.n()).map(|i| Variable::uniform(i, palette)).collect(), events)?;
    Ok(NonrepInstance { instance, paths, lmax })
}

/// Independent scan: walk every simple path of at most `lmax` vertices from
/// every start and look for a square factor in its color sequence.
pub fn is_nonrepetitive(g: &SimpleGraph, coloring: &[u32], lmax: usize) -> bool {
    fn has_square(seq: &[u32]) -> bool {
        // only factors ending at the last position are new
        let n = seq.len();
        (1..=n / 2).any(|h| seq[n - 2 * h..n - h] == seq[n - h..])
    }
    fn walk(g: &SimpleGraph, c: &[u32], lmax: usize, seq: &mut Vec<u32>, path: &mut Vec<usize>) -> bool {
        if has_square(seq) {
            return false;
        }
        if path.len() == lmax {
            return true;
        }
        let v = *path.last().unwrap();
        for &w in g.neighbors(v) {
            if !path.contains(&w) {
                path.push(w);
                seq.push(c[w]);
                let ok = walk(g, c, lmax, seq, path);
                seq.pop();
                path.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    (0..g.n()).all(|s| walk(g, coloring, lmax, &mut vec![coloring[s]], &mut vec![s]))
}

/// First nonrepetitive coloring in lexicographic order, if any.
pub fn brute_force_nonrepetitive(g: &SimpleGraph, palette: u32, lmax: usize) -> Option<Vec<u32>> {
    let n = g.n();
    let mut c = vec![0u32; n];
    loop {
        if is_nonrepetitive(g, &c, lmax) {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::process::solve;

    #[test]
    fn p4_two_colors_impossible() {
        assert_eq!(brute_force_nonrepetitive(&SimpleGraph::path(4), 2, 4), None);
    }

    #[test]
    fn p4_three_colors_solved() {
        let g = SimpleGraph::path(4);
        let ni = gen_nonrepetitive(&g, 3, 4, 1000).unwrap();
        let r = solve(&ni.instance, 1, 10_000).unwrap();
        assert!(is_nonrepetitive(&g, &r.final_assignment, 4));
    }

    #[test]
    fn single_edge_is_properness() {
        let g = SimpleGraph::path(2);
        let ni = gen_nonrepetitive(&g, 2, 8, 1000).unwrap();
        assert_eq!(ni.paths, vec![vec![0, 1]]);
        assert!(is_nonrepetitive(&g, &[0, 1], 8));
        assert!(!is_nonrepetitive(&g, &[1, 1], 8));
    }

    #[test]
    fn path_counts_on_p4() {
        // even-vertex subpaths of P4: three edges and the whole path
        let paths = enumerate_paths(&SimpleGraph::path(4), 4, 100).unwrap();
        assert_eq!(paths.len(), 4);
    }

    #[test]
    fn budget_overflow() {
        assert!(matches!(enumerate_paths(&SimpleGraph::complete(8), 8, 100), Err(AppError::Budget(100))));
    }
}
