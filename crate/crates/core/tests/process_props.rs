mod common;

use common::small_instance;
use lll_core::apps::{gen_hypergraph_2col, Topology};
use lll_core::process::{run, run_with_rule, violated_domains, RunStatus, SelectionRule};
use lll_core::witness::{appears_in, traceback, validate_pile};
use lll_core::Table;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn identical_inputs_identical_traces(inst in small_instance(), seed in any::<u64>(), random in any::<bool>()) {
        let rule = if random { SelectionRule::Random { seed: seed ^ 1 } } else { SelectionRule::Lex };
        let a = run_with_rule(&inst, &mut Table::seeded(seed), rule, 200).unwrap();
        let b = run_with_rule(&inst, &mut Table::seeded(seed), rule, 200).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn counts_are_sums_of_indices(inst in small_instance(), seed in any::<u64>()) {
        let tr = run(&inst, &mut Table::seeded(seed), 500).unwrap();
        prop_assume!(tr.status == RunStatus::Stabilized);
        let ind = tr.resamples_per_domain(inst.num_domains());
        for x in 0..inst.num_vars() {
            let s: u64 = inst.var_domains(x).iter().map(|&d| ind[d]).sum();
            prop_assert_eq!(tr.t[x], s);
        }
        prop_assert!(violated_domains(&inst, &tr.f).is_empty());
        prop_assert_eq!(tr.counts_at(tr.num_steps(), inst.num_vars()), tr.t.clone());
    }

    #[test]
    fn traceback_piles_have_height_n_plus_one(inst in small_instance(), seed in any::<u64>()) {
        let tr = run(&inst, &mut Table::seeded(seed), 30).unwrap();
        for (n, rec) in tr.steps.iter().enumerate() {
            for &d in &rec.violated {
                let p = traceback(&inst, &tr, d, n).unwrap();
                let r = validate_pile(&p);
                prop_assert!(r.is_pile && r.is_neat);
                prop_assert_eq!(r.height, Some(n + 1));
                prop_assert!(appears_in(&p, &mut Table::seeded(seed), &inst).unwrap());
            }
        }
    }
}

#[test]
fn selection_is_maximal_disjoint_family() {
    let h = gen_hypergraph_2col(4, 40, Topology::Cyclic).unwrap();
    let tr = run(&h.instance, &mut Table::seeded(3), 10_000).unwrap();
    for rec in &tr.steps {
        let mut used = std::collections::BTreeSet::new();
        for &d in &rec.selected {
            assert!(rec.violated.contains(&d));
            for &x in &h.instance.domain(d).vars {
                assert!(used.insert(x), "selected domains overlap");
            }
        }
        for &d in &rec.violated {
            let free = h.instance.domain(d).vars.iter().all(|x| !used.contains(x));
            assert!(!free || rec.selected.contains(&d), "selection not maximal");
        }
    }
}

#[test]
fn soundness_on_cyclic_hypergraph() {
    let h = gen_hypergraph_2col(6, 1000, Topology::Cyclic).unwrap();
    for seed in 0..10 {
        let tr = run(&h.instance, &mut Table::seeded(seed), 100_000).unwrap();
        assert_eq!(tr.status, RunStatus::Stabilized);
        assert!(violated_domains(&h.instance, &tr.f).is_empty());
    }
}
