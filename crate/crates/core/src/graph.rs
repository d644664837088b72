//! Simple undirected graphs and the handful of algorithms the workbench needs.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) references a vertex >= n")]
    OutOfRange(usize, usize),
    #[error("label list has {got} entries for {expected} edges")]
    Labels { expected: usize, got: usize },
    #[error("cannot build a {d}-regular triangle-free graph on {n} vertices")]
    Regular { n: usize, d: usize },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<u32>>,
}

/// Symmetric irreflexive adjacency on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<((usize, usize), u32)>>,
}

impl Serialize for SimpleGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let edges = self.edges();
        let labels = self.labels.as_ref().map(|l| edges.iter().map(|e| l.iter().find(|(k, _)| k == e).map(|x| x.1).unwrap_or(0)).collect());
        GraphFile { n: self.n(), edges, labels }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimpleGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let f = GraphFile::deserialize(d)?;
        let mut g = SimpleGraph::from_edges(f.n, &f.edges).map_err(serde::de::Error::custom)?;
        if let Some(l) = f.labels {
            if l.len() != f.edges.len() {
                return Err(serde::de::Error::custom(GraphError::Labels { expected: f.edges.len(), got: l.len() }));
            }
            let mut lab: Vec<((usize, usize), u32)> =
                f.edges.iter().zip(l).map(|(&(a, b), v)| ((a.min(b), a.max(b)), v)).collect();
            lab.sort();
            lab.dedup_by_key(|x| x.0);
            g.labels = Some(lab);
        }
        Ok(g)
    }
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        SimpleGraph { adj: vec![Vec::new(); n], labels: None }
    }

    /// Build from an edge list; duplicates are merged.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            if a >= n || b >= n {
                return Err(GraphError::OutOfRange(a, b));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
            l.dedup();
        }
        Ok(SimpleGraph { adj, labels: None })
    }

    pub fn from_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let edges: Vec<(usize, usize)> = adj.iter().enumerate().flat_map(|(a, l)| l.iter().map(move |&b| (a, b))).collect();
        SimpleGraph::from_edges(adj.len(), &edges).expect("adjacency lists are well formed")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges (a, b) with a < b, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj.iter().enumerate().flat_map(|(a, l)| l.iter().filter(move |&&b| a < b).map(move |&b| (a, b))).collect()
    }

    pub fn edge_label(&self, a: usize, b: usize) -> Option<u32> {
        let key = (a.min(b), a.max(b));
        self.labels.as_ref()?.binary_search_by_key(&key, |x| x.0).ok().map(|i| self.labels.as_ref().unwrap()[i].1)
    }

    pub fn is_regular(&self, d: usize) -> bool {
        self.adj.iter().all(|l| l.len() == d)
    }

    pub fn has_triangle(&self) -> bool {
        self.edges().iter().any(|&(a, b)| {
            let (x, y) = (&self.adj[a], &self.adj[b]);
            let (mut i, mut j) = (0, 0);
            while i < x.len() && j < y.len() {
                match x[i].cmp(&y[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => return true,
                }
            }
            false
        })
    }

    /// BFS distances from `s` up to `radius` (None beyond).
    pub fn ball(&self, s: usize, radius: usize) -> Vec<(usize, usize)> {
        let mut dist = std::collections::HashMap::new();
        dist.insert(s, 0usize);
        let mut q = VecDeque::from([s]);
        let mut out = vec![(s, 0)];
        while let Some(v) = q.pop_front() {
            let dv = dist[&v];
            if dv == radius {
                continue;
            }
            for &w in &self.adj[v] {
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(dv + 1);
                    out.push((w, dv + 1));
                    q.push_back(w);
                }
            }
        }
        out
    }

    /// Length of a shortest cycle; None for forests.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for s in 0..n {
            let mut touched = vec![s];
            dist[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[v] + 1 >= b {
                        break;
                    }
                }
                for &w in &self.adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        touched.push(w);
                        q.push_back(w);
                    } else if parent[v] != w {
                        let c = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(c, |b| b.min(c)));
                    }
                }
            }
            for v in touched {
                dist[v] = usize::MAX;
                parent[v] = usize::MAX;
            }
        }
        best
    }

    /// Adjacency iff distance in [1, r].
    pub fn power(&self, r: usize) -> SimpleGraph {
        let adj = (0..self.n())
            .map(|v| {
                let mut l: Vec<usize> = self.ball(v, r).into_iter().filter(|&(w, d)| d >= 1 && w != v).map(|x| x.0).collect();
                l.sort_unstable();
                l
            })
            .collect();
        SimpleGraph { adj, labels: None }
    }

    /// Greedy proper coloring in vertex order.
    pub fn greedy_coloring(&self) -> Vec<usize> {
        let mut c = vec![usize::MAX; self.n()];
        let mut used = Vec::new();
        for v in 0..self.n() {
            used.clear();
            used.extend(self.adj[v].iter().map(|&w| c[w]).filter(|&x| x != usize::MAX));
            used.sort_unstable();
            let mut k = 0;
            for &u in &used {
                if u == k {
                    k += 1;
                } else if u > k {
                    break;
                }
            }
            c[v] = k;
        }
        c
    }

    pub fn is_proper<T: PartialEq>(&self, coloring: &[T]) -> bool {
        self.edges().iter().all(|&(a, b)| coloring[a] != coloring[b])
    }

    /// Whether no two distinct vertices within distance `r` share a color.
    pub fn is_proper_at_distance(&self, coloring: &[usize], r: usize) -> bool {
        (0..self.n()).all(|v| self.ball(v, r).iter().all(|&(w, _)| w == v || coloring[w] != coloring[v]))
    }

    pub fn induced(&self, keep: &[bool]) -> (SimpleGraph, Vec<usize>) {
        let ids: Vec<usize> = (0..self.n()).filter(|&v| keep[v]).collect();
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in ids.iter().enumerate() {
            pos[v] = i;
        }
        let adj = ids.iter().map(|&v| self.adj[v].iter().filter(|&&w| keep[w]).map(|&w| pos[w]).collect()).collect();
        (SimpleGraph { adj, labels: None }, ids)
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::from_edges(n, &edges).expect("cycle")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        SimpleGraph::from_edges(n, &edges).expect("path")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        SimpleGraph::from_edges(n, &edges).expect("complete")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges: Vec<_> = (0..a).flat_map(|x| (0..b).map(move |y| (x, a + y))).collect();
        SimpleGraph::from_edges(a + b, &edges).expect("bipartite")
    }

    /// Random d-regular triangle-free graph: a bipartite circulant scrambled by
    /// degree-preserving double-edge swaps that never create triangles.
    pub fn random_regular_triangle_free(n: usize, d: usize, seed: u64) -> Result<Self, GraphError> {
        if n % 2 == 1 || d > n / 2 || d == 0 {
            return Err(GraphError::Regular { n, d });
        }
        let h = n / 2;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..h {
            for j in 0..d {
                let b = h + (i + j) % h;
                adj[i].push(b);
                adj[b].push(i);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let swaps = 10 * n * d;
        let mut edges: Vec<(usize, usize)> = (0..n).flat_map(|a| adj[a].iter().filter(move |&&b| a < b).map(move |&b| (a, b))).collect();
        let has = |adj: &Vec<Vec<usize>>, a: usize, b: usize| adj[a].contains(&b);
        let common = |adj: &Vec<Vec<usize>>, a: usize, b: usize| adj[a].iter().any(|w| adj[b].contains(w));
        for _ in 0..swaps {
            let i = rng.gen_range(0..edges.len());
            let j = rng.gen_range(0..edges.len());
            if i == j {
                continue;
            }
            let (a, b) = edges[i];
            let (mut c, mut e) = edges[j];
            if rng.gen::<bool>() {
                std::mem::swap(&mut c, &mut e);
            }
            // (a,b),(c,e) -> (a,c),(b,e)
            if a == c || a == e || b == c || b == e || has(&adj, a, c) || has(&adj, b, e) {
                continue;
            }
            let remove = |adj: &mut Vec<Vec<usize>>, x: usize, y: usize| {
                adj[x].retain(|&z| z != y);
                adj[y].retain(|&z| z != x);
            };
            remove(&mut adj, a, b);
            remove(&mut adj, c, e);
            if common(&adj, a, c) || common(&adj, b, e) {
                adj[a].push(b);
                adj[b].push(a);
                adj[c].push(e);
                adj[e].push(c);
                continue;
            }
            adj[a].push(c);
            adj[c].push(a);
            adj[b].push(e);
            adj[e].push(b);
            edges[i] = (a.min(c), a.max(c));
            edges[j] = (b.min(e), b.max(e));
        }
        let g = SimpleGraph::from_adjacency(adj);
        debug_assert!(g.is_regular(d) && !g.has_triangle());
        Ok(g)
    }

    /// Random graph with maximum degree at most `max_deg`, built by
    /// inserting up to `m` random edges that respect the degree bound.
    pub fn random_bounded_degree(n: usize, max_deg: usize, m: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut attempts = 0;
        let mut added = 0;
        while added < m && attempts < 50 * m.max(1) {
            attempts += 1;
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a == b || adj[a].len() >= max_deg || adj[b].len() >= max_deg || adj[a].contains(&b) {
                continue;
            }
            adj[a].push(b);
            adj[b].push(a);
            added += 1;
        }
        for l in &mut adj {
            l.shuffle(&mut rng);
        }
        SimpleGraph::from_adjacency(adj)
    }
}
