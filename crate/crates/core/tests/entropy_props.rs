use lll_core::entropy::multiset::{multinomial, rank, unrank};
use lll_core::entropy::{
    counting_bound, decode, encode, greedy_plan, quasi_tile, Decompressor, Interval, PlanRule,
};
use lll_core::entropy::code::block_frequencies;
use lll_core::stats::mean_se;
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tile_set() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::btree_set(1usize..7, 1..4).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn code_round_trip(s in 1u32..3, tiles in tile_set(), eps in 0.05f64..0.5, words in prop::collection::vec(any::<u32>(), 1..300)) {
        let w: Vec<u32> = words.iter().map(|v| v & ((1 << s) - 1)).collect();
        let rule = PlanRule::new(tiles, eps);
        let blob = encode(&w, s, &rule).unwrap();
        prop_assert_eq!(blob.len(), blob.layout.total());
        let (m, back) = decode(&blob.bits, s, &rule).unwrap();
        prop_assert_eq!(m, w.len());
        prop_assert_eq!(back, w.clone());
        if rule.plan(w.len()).verify().cover_ok {
            prop_assert!(blob.len() as f64 <= blob.bound.total + 1e-9, "{} > {}", blob.len(), blob.bound.total);
        }
    }

    #[test]
    fn greedy_plans_are_disjoint_and_contained(m in 1usize..400, tiles in tile_set(), eps in 0.01f64..0.9) {
        let shapes: Vec<Interval> = tiles.iter().map(|&l| Interval::prefix(l)).collect();
        let plan = greedy_plan(Interval::prefix(m), &shapes, eps);
        let c = plan.verify();
        prop_assert!(c.contained && c.eps_disjoint && c.unions_disjoint);
        prop_assert!((c.cover - plan.cover()).abs() < 1e-12);
        // the only gap is a tail shorter than the smallest tile
        prop_assert!(plan.uncovered().len() < tiles[0]);
        match quasi_tile(Interval::prefix(m), &shapes, eps) {
            Ok(p) => prop_assert!(p.verify().valid()),
            Err(_) => prop_assert!(!c.cover_ok || tiles.last().copied().unwrap_or(0) >= m),
        }
    }

    #[test]
    fn multiset_rank_is_a_bijection(counts in prop::collection::vec(0u64..4, 1..5), pick in any::<u64>()) {
        let total = multinomial(&counts);
        prop_assume!(total > BigUint::from(0u32));
        let idx = BigUint::from(pick) % &total;
        let seq = unrank(&idx, &counts).unwrap();
        for (u, &c) in counts.iter().enumerate() {
            prop_assert_eq!(seq.iter().filter(|&&v| v == u).count() as u64, c);
        }
        prop_assert_eq!(rank(&seq, &counts), idx);
        prop_assert!(unrank(&total, &counts).is_none());
    }
}

#[test]
fn block_frequencies_match_block_probabilities() {
    // mean of η_u/|C| over iid Bernoulli(0.3) words against P(block = u)
    let p = 0.3;
    let rule = PlanRule::new(vec![2, 3], 0.1);
    let m = 200;
    let plan = rule.plan(m);
    let runs = 2000;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut samples: Vec<Vec<Vec<f64>>> = Vec::new();
    for _ in 0..runs {
        let w: Vec<u32> = (0..m).map(|_| rng.gen_bool(p) as u32).collect();
        let f = block_frequencies(&w, 1, &plan);
        samples.push(
            f.iter()
                .zip(&plan.tiles)
                .map(|(f, t)| f.iter().map(|&e| e as f64 / t.centers.len() as f64).collect())
                .collect(),
        );
    }
    for (i, t) in plan.tiles.iter().enumerate() {
        let len = t.shape.len();
        for u in 0..(1usize << len) {
            let ones = u.count_ones() as i32;
            let expect = p.powi(ones) * (1.0 - p).powi(len as i32 - ones);
            let (mean, se) = mean_se(samples.iter().map(|s| s[i][u]));
            assert!((mean - expect).abs() <= 4.0 * se, "len {len} u {u}: {mean} vs {expect} (se {se})");
        }
    }
}

#[test]
fn code_length_near_entropy_for_uniform_bits() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let rule = PlanRule::new(vec![4], 0.1);
    let w: Vec<u32> = (0..4096).map(|_| rng.gen_range(0..2)).collect();
    let blob = encode(&w, 1, &rule).unwrap();
    let rate = blob.len() as f64 / w.len() as f64;
    assert!((1.0..1.1).contains(&rate), "rate {rate}");
}

#[test]
fn counting_bound_exhaustive() {
    for dec in [Decompressor::Identity, Decompressor::RunLength] {
        for n in 1..=14 {
            for c in 0..=n {
                let r = counting_bound(dec, n, c).unwrap();
                assert!(r.holds, "{dec:?} n={n} c={c}: {} >= {}", r.fraction, r.bound);
                assert!(r.count <= r.programs);
            }
        }
    }
}
