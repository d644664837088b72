use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::pile::{validate_pile, Pile, PileElement};
use super::WitnessError;
use crate::instance::{Instance, InstanceError};

/// A sequence of variable sets.
pub type Seq = Vec<Vec<usize>>;

/// Linear order on event domains used for the lexicographic order on sequences.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DomainOrder {
    /// Compare sorted variable-id tuples lexicographically.
    #[default]
    Tuple,
    /// Domains listed from smallest to largest; unlisted domains come after, by tuple.
    Ranked { order: Vec<Vec<usize>> },
}

impl DomainOrder {
    pub fn cmp_domains(&self, a: &[usize], b: &[usize]) -> Ordering {
        match self {
            DomainOrder::Tuple => a.cmp(b),
            DomainOrder::Ranked { order } => {
                let rank = |s: &[usize]| order.iter().position(|o| o.as_slice() == s).unwrap_or(usize::MAX);
                rank(a).cmp(&rank(b)).then_with(|| a.cmp(b))
            }
        }
    }

    /// <_lex on sequences: first difference decides, a proper prefix is smaller.
    pub fn cmp_seq(&self, a: &[Vec<usize>], b: &[Vec<usize>]) -> Ordering {
        for (x, y) in a.iter().zip(b) {
            match self.cmp_domains(x, y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        a.len().cmp(&b.len())
    }
}

/// A finite prefix-closed set of proper sequences with a unique root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WitnessTree {
    /// Sorted by the default ordering of `Seq`.
    pub nodes: Vec<Seq>,
}

impl WitnessTree {
    pub fn new(mut nodes: Vec<Seq>) -> Self {
        nodes.sort();
        nodes.dedup();
        WitnessTree { nodes }
    }

    pub fn root(&self) -> Option<&Vec<usize>> {
        self.nodes.iter().find(|s| s.len() == 1).map(|s| &s[0])
    }

    pub fn height(&self) -> usize {
        self.nodes.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Unique root, prefix closure and properness.
    pub fn is_well_formed(&self) -> bool {
        let roots = self.nodes.iter().filter(|s| s.len() == 1).count();
        roots == 1
            && self.nodes.iter().all(|s| {
                !s.is_empty()
                    && s.windows(2).all(|w| w[0].iter().any(|x| w[1].contains(x)))
                    && (1..s.len()).all(|k| self.nodes.binary_search(&s[..k].to_vec()).is_ok())
            })
    }
}

/// 𝒯_𝒫 = {w_𝒫(τ) : τ ∈ 𝒫}.
pub fn pile_to_tree(p: &Pile, order: &DomainOrder) -> Result<WitnessTree, WitnessError> {
    let report = validate_pile(p);
    if !report.is_pile {
        return Err(WitnessError::NotAPile(report.reason.unwrap_or_default()));
    }
    if !report.is_neat {
        return Err(WitnessError::NotNeat);
    }
    if report.top.len() != 1 {
        return Err(WitnessError::Tops(report.top.len()));
    }
    let below = p.support_relation();
    let n = p.len();
    // reach[i][j]: j = i or j is below i via a ≺-chain
    let mut reach = vec![vec![false; n]; n];
    fn dfs(i: usize, below: &[Vec<usize>], row: &mut Vec<bool>) {
        for &j in &below[i] {
            if !row[j] {
                row[j] = true;
                dfs(j, below, row);
            }
        }
    }
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
        dfs(i, &below, row);
    }
    let el = p.elements();
    let top = report.top[0];
    let nodes = (0..n)
        .map(|target| {
            let mut cur = top;
            let mut seq = vec![el[cur].vars.clone()];
            while cur != target {
                cur = below[cur]
                    .iter()
                    .copied()
                    .filter(|&c| reach[c][target])
                    .max_by(|&a, &b| order.cmp_domains(&el[a].vars, &el[b].vars))
                    .expect("target is below the top");
                seq.push(el[cur].vars.clone());
            }
            seq
        })
        .collect();
    Ok(WitnessTree::new(nodes))
}

/// τ(w)(x) = |{w' ∈ T : x ∈ tail(w'), w <_lex w'}|.
pub fn tree_to_pile(t: &WitnessTree, order: &DomainOrder) -> Pile {
    let elements = t
        .nodes
        .iter()
        .map(|w| {
            let tail = w.last().expect("nonempty node");
            let pairs: Vec<(usize, u64)> = tail
                .iter()
                .map(|&x| {
                    let c = t
                        .nodes
                        .iter()
                        .filter(|w2| w2.last().unwrap().contains(&x) && order.cmp_seq(w, w2) == Ordering::Less)
                        .count();
                    (x, c as u64)
                })
                .collect();
            PileElement::new(&pairs)
        })
        .collect();
    Pile::new(elements)
}

/// ∏_{w ∈ T} ℙ[tail(w)].
pub fn tree_weight(t: &WitnessTree, inst: &Instance) -> Result<f64, WitnessError> {
    let mut w = 1.0;
    for node in &t.nodes {
        let tail = node.last().unwrap();
        let d = inst.domain_id(tail).ok_or_else(|| WitnessError::UnknownDomain(tail.clone()))?;
        w *= inst.domain_probability(d).map_err(|e| WitnessError::Certificate(e.into()))?;
    }
    Ok(w)
}

/// W_0..=W_n for every domain: W_0 = 0, W_{j+1}(S) = ℙ[S]·∏_{S'∩S≠∅}(1+W_j(S')).
///
/// W_j(S) is the total weight of trees of height at most j rooted at S.
pub fn tree_weight_sums(inst: &Instance, n: usize) -> Result<Vec<Vec<f64>>, InstanceError> {
    let m = inst.num_domains();
    let p: Vec<f64> = (0..m).map(|d| inst.domain_probability(d)).collect::<Result<_, _>>()?;
    let nbrs: Vec<Vec<usize>> = (0..m).map(|d| inst.domain_neighbors(d)).collect();
    let mut out = vec![vec![0.0; m]];
    for _ in 0..n {
        let prev = out.last().unwrap();
        let next = (0..m).map(|d| p[d] * nbrs[d].iter().map(|&e| 1.0 + prev[e]).product::<f64>()).collect();
        out.push(next);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeCaps {
    pub max_height: usize,
    pub max_nodes: usize,
    pub max_trees: usize,
}

impl Default for TreeCaps {
    fn default() -> Self {
        TreeCaps { max_height: 3, max_nodes: 12, max_trees: 200_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeEnumeration {
    pub trees: Vec<(WitnessTree, f64)>,
    pub total_weight: f64,
    pub truncated: bool,
}

/// Every tree rooted at `(S)` within the caps, with its weight.
pub fn enumerate_trees(inst: &Instance, domain: usize, caps: TreeCaps) -> Result<TreeEnumeration, InstanceError> {
    let m = inst.num_domains();
    let p: Vec<f64> = (0..m).map(|d| inst.domain_probability(d)).collect::<Result<_, _>>()?;
    let nbrs: Vec<Vec<usize>> = (0..m).map(|d| inst.domain_neighbors(d)).collect();
    let mut truncated = false;
    // A relative tree is a list of domain-id sequences all starting at its root.
    fn gen(
        d: usize,
        h: usize,
        budget: usize,
        nbrs: &[Vec<usize>],
        max_trees: usize,
        truncated: &mut bool,
    ) -> Vec<Vec<Vec<usize>>> {
        if h == 0 || budget == 0 {
            if budget == 0 && h > 0 {
                *truncated = true;
            }
            return Vec::new();
        }
        let mut acc: Vec<Vec<Vec<usize>>> = vec![vec![vec![d]]];
        for &c in &nbrs[d] {
            let subs = gen(c, h - 1, budget - 1, nbrs, max_trees, truncated);
            let mut next = Vec::new();
            for t in &acc {
                next.push(t.clone());
                for s in &subs {
                    if t.len() + s.len() > budget {
                        *truncated = true;
                        continue;
                    }
                    if next.len() >= max_trees {
                        *truncated = true;
                        break;
                    }
                    let mut u = t.clone();
                    u.extend(s.iter().map(|seq| {
                        let mut v = vec![d];
                        v.extend(seq);
                        v
                    }));
                    next.push(u);
                }
            }
            acc = next;
        }
        acc
    }
    let raw = gen(domain, caps.max_height, caps.max_nodes, &nbrs, caps.max_trees, &mut truncated);
    let mut trees = Vec::with_capacity(raw.len());
    let mut total_weight = 0.0;
    for t in raw {
        let w: f64 = t.iter().map(|s| p[*s.last().unwrap()]).product();
        total_weight += w;
        let nodes = t.into_iter().map(|s| s.into_iter().map(|d| inst.domain(d).vars.clone()).collect()).collect();
        trees.push((WitnessTree::new(nodes), w));
    }
    Ok(TreeEnumeration { trees, total_weight, truncated })
}
