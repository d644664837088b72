#![allow(dead_code)]

use lll_core::{BadEvent, EventSpec, Instance, Variable};
use proptest::prelude::*;

/// Small random instances: explicit or monochromatic events on 1..=3
/// distinct variables with domains of size 2..=4.
pub fn small_instance() -> impl Strategy<Value = Instance> {
    (2usize..7, prop::collection::vec(2u32..5, 7))
        .prop_flat_map(|(n, sizes)| {
            let sizes: Vec<u32> = sizes[..n].to_vec();
            let event = (prop::sample::subsequence((0..n).collect::<Vec<_>>(), 1..=3.min(n)), any::<u64>(), any::<bool>());
            (Just(sizes), prop::collection::vec(event, 1..6))
        })
        .prop_map(|(sizes, evs)| {
            let vars: Vec<Variable> = sizes.iter().enumerate().map(|(i, &q)| Variable::uniform(i, q)).collect();
            let events = evs
                .into_iter()
                .enumerate()
                .map(|(id, (vs, mask, mono))| {
                    let spec = if mono && vs.len() >= 2 {
                        EventSpec::Monochromatic
                    } else {
                        let all = cartesian(&vs.iter().map(|&x| sizes[x]).collect::<Vec<_>>());
                        // keep roughly a sixth of the assignments
                        let assignments = all
                            .into_iter()
                            .enumerate()
                            .filter(|(i, _)| (mask >> (i % 64)) & 1 == 1 && i % 3 == 0)
                            .map(|(_, a)| a)
                            .collect();
                        EventSpec::Explicit { assignments }
                    };
                    BadEvent { id, vars: vs, spec }
                })
                .collect();
            Instance::new(vars, events).expect("generated instance is valid")
        })
}

pub fn cartesian(sizes: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &q in sizes {
        out = out.into_iter().flat_map(|p: Vec<u32>| (0..q).map(move |v| {
            let mut p = p.clone();
            p.push(v);
            p
        })).collect();
    }
    out
}

/// Brute-force probability of one event under uniform variables.
pub fn brute_probability(inst: &Instance, e: usize) -> f64 {
    let ev = &inst.events()[e];
    let sizes: Vec<u32> = ev.vars.iter().map(|&x| inst.variables()[x].domain_size).collect();
    let all = cartesian(&sizes);
    let hits = all.iter().filter(|a| ev.spec.contains(a)).count();
    hits as f64 / all.len() as f64
}
