use serde::{Deserialize, Serialize};

use super::AppError;
use crate::graph::SimpleGraph;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Regularized {
    pub graph: SimpleGraph,
    /// Original vertex x sits at `embedding[x]`.
    pub embedding: Vec<usize>,
    /// (x, s) for every vertex of the new graph.
    pub labels: Vec<(usize, Vec<u32>)>,
    pub depth: usize,
}

/// Attach to every vertex of degree below `d` a rooted tree, truncated at
/// `depth`, whose root gets d − deg(x) children and whose other vertices get
/// d − 1 children. (x, s) is joined to (x, s⌢i).
pub fn regularize(g: &SimpleGraph, d: usize, depth: usize) -> Result<Regularized, AppError> {
    let max = g.max_degree();
    if max > d {
        return Err(AppError::DegreeTooLarge { max, d });
    }
    let n = g.n();
    let mut labels: Vec<(usize, Vec<u32>)> = (0..n).map(|x| (x, Vec::new())).collect();
    let mut edges = g.edges();
    for x in 0..n {
        let mut frontier = vec![(x, Vec::<u32>::new())];
        for level in 0..depth {
            let mut next = Vec::new();
            for (parent, s) in frontier {
                let width = if level == 0 { d - g.degree(x) } else { d - 1 };
                for i in 1..=width as u32 {
                    let mut t = s.clone();
                    t.push(i);
                    let id = labels.len();
                    labels.push((x, t.clone()));
                    edges.push((parent, id));
                    next.push((id, t));
                }
            }
            frontier = next;
        }
    }
    let graph = SimpleGraph::from_edges(labels.len(), &edges)?;
    Ok(Regularized { graph, embedding: (0..n).collect(), labels, depth })
}
