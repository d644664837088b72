use lll_core::apps::*;
use lll_core::graph::SimpleGraph;
use lll_core::solve;
use proptest::prelude::*;

fn small_graph() -> impl Strategy<Value = SimpleGraph> {
    (4usize..9, 0usize..14, any::<u64>()).prop_map(|(n, m, seed)| SimpleGraph::random_bounded_degree(n, 3, m, seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn greedy_extension_is_proper_and_bounded(g in small_graph(), mask in any::<u16>(), seed in any::<u64>()) {
        let base = g.greedy_coloring();
        let partial: Vec<Option<u32>> = (0..g.n())
            .map(|x| (mask >> x & 1 == 1).then(|| (base[x] as u64 ^ (seed & 1)) as u32))
            .collect();
        // only proper partial colorings are extended
        prop_assume!(g.edges().iter().all(|&(a, b)| partial[a].is_none() || partial[a] != partial[b]));
        let e = greedy_extend(&g, &partial);
        prop_assert!(g.is_proper(&e.coloring));
        for x in 0..g.n() {
            if let Some(c) = partial[x] {
                prop_assert_eq!(e.coloring[x], c);
            }
        }
        if let Some(c) = e.max_new_color {
            prop_assert!(c as usize <= g.max_degree());
        }
    }

    #[test]
    fn nonrepetitive_solutions_pass_independent_scan(g in small_graph(), seed in 0u64..1000) {
        let ni = gen_nonrepetitive(&g, 4, 4, 10_000).unwrap();
        if let Ok(r) = solve(&ni.instance, seed, 20_000) {
            prop_assert!(is_nonrepetitive(&g, &r.final_assignment, 4));
        }
    }

    #[test]
    fn acyclic_solutions_pass_independent_scan(g in small_graph(), seed in 0u64..1000) {
        let ai = gen_acyclic(&g, 4, 5, 10_000).unwrap();
        if let Ok(r) = solve(&ai.instance, seed, 20_000) {
            prop_assert!(is_acyclic_coloring(&g, &r.final_assignment, 5));
        }
    }

    #[test]
    fn regularization_preserves_graph(g in small_graph(), depth in 0usize..3) {
        let d = g.max_degree().max(1);
        let r = regularize(&g, d, depth).unwrap();
        for a in 0..g.n() {
            for b in 0..g.n() {
                prop_assert_eq!(g.has_edge(a, b), r.graph.has_edge(r.embedding[a], r.embedding[b]));
            }
        }
        for (v, (_, s)) in r.labels.iter().enumerate() {
            if s.len() < depth {
                prop_assert_eq!(r.graph.degree(v), d);
            }
        }
        if let Some(girth) = g.girth() {
            prop_assert_eq!(r.graph.girth(), Some(girth));
        }
    }
}

#[test]
fn cyclic_hypergraph_degree() {
    for k in 3..9 {
        let h = gen_hypergraph_2col(k, 4 * k, Topology::Cyclic).unwrap();
        assert_eq!(h.d, 2 * (k - 1));
    }
}

#[test]
fn random_linear_edges_meet_in_at_most_one_vertex() {
    let h = gen_hypergraph_2col(5, 400, Topology::RandomLinear { d: 4, seed: 9 }).unwrap();
    for (i, a) in h.edges.iter().enumerate() {
        for b in &h.edges[i + 1..] {
            assert!(a.iter().filter(|x| b.contains(x)).count() <= 1);
        }
    }
    assert!(h.d <= 4 * 5);
}

#[test]
fn list_coloring_on_sparse_lists() {
    for seed in 0..5 {
        let g = SimpleGraph::random_bounded_degree(200, 8, 700, seed);
        let l = random_sparse_lists(&g, 8, 64, seed).unwrap();
        let out = list_coloring_lll(&g, &l, 8, seed, 100_000).unwrap();
        assert!(out.hypothesis_ok && out.verified);
    }
}

#[test]
fn brute_force_agrees_on_tiny_paths() {
    for n in 2..6 {
        let g = SimpleGraph::path(n);
        let two = brute_force_nonrepetitive(&g, 2, n);
        assert_eq!(two.is_some(), n <= 3, "P{n}");
        assert!(brute_force_nonrepetitive(&g, 3, n).is_some());
    }
}
