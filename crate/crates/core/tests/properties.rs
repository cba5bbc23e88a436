use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use zsort::{
    build_mapping_params, build_partition_plan, first_pass, map_to_cluster, sequenced, zsort,
    zsort_with, MappingParams, Record, SortConfig,
};

fn oracle(recs: &[Record<u64>]) -> Vec<Record<u64>> {
    let mut v = recs.to_vec();
    v.sort_by_key(|r| r.key);
    v
}

/// Keys drawn from a mix of narrow, wide and clustered ranges.
fn key_vec(max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop_oneof![
        prop::collection::vec(any::<i64>(), 0..max_len),
        prop::collection::vec(-50i64..50, 0..max_len),
        prop::collection::vec(
            prop_oneof![Just(i64::MIN), Just(i64::MAX), Just(0i64)],
            0..max_len
        ),
        prop::collection::vec((0u32..40).prop_map(|e| 1i64 << (e % 40)), 0..max_len),
        prop::collection::vec(
            (0i64..1_000_000).prop_map(|x| x * 1_000_000_007),
            0..max_len
        ),
    ]
}

fn small_threshold_config() -> impl Strategy<Value = SortConfig> {
    (
        0.05f64..2.0,
        1usize..40,
        prop_oneof![Just(1usize), Just(100), Just(65_000)],
    )
        .prop_map(
            |(alpha, insertion_threshold, counting_range_threshold)| SortConfig {
                alpha,
                insertion_threshold,
                counting_range_threshold,
                collect_stats: true,
                ..Default::default()
            },
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn output_equals_stable_oracle(keys in key_vec(3000), cfg in small_threshold_config()) {
        let recs = sequenced(&keys);
        let (out, stats) = zsort(&recs, &cfg);
        prop_assert_eq!(&out, &oracle(&recs));
        prop_assert!(stats.max_depth_reached <= cfg.depth_guard);
    }

    #[test]
    fn f32_mapping_is_also_exact(keys in key_vec(2000)) {
        let recs = sequenced(&keys);
        let (out, _) = zsort_with::<f32, u64>(&recs, &SortConfig::default());
        prop_assert_eq!(out, oracle(&recs));
    }

    #[test]
    fn deterministic_output_and_stats(keys in key_vec(2000), cfg in small_threshold_config()) {
        let recs = sequenced(&keys);
        prop_assert_eq!(zsort(&recs, &cfg), zsort(&recs, &cfg));
    }

    #[test]
    fn bucket_index_is_monotone_in_key(keys in prop::collection::vec(any::<i64>(), 2..200), k in 2usize..2000) {
        let recs = sequenced(&keys);
        let st = first_pass(&recs).unwrap();
        if let Ok(p) = build_mapping_params::<f64, _>(&recs, &st, k) {
            let mut sorted = keys.clone();
            sorted.sort();
            let buckets: Vec<usize> = sorted.iter().map(|&x| map_to_cluster(x, &p)).collect();
            prop_assert!(buckets.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(buckets.iter().all(|&b| b < k));
            prop_assert_eq!(buckets[0], 0);
        }
    }

    #[test]
    fn plan_counts_and_offsets_are_consistent(keys in key_vec(2000), k in 2usize..500) {
        prop_assume!(!keys.is_empty());
        let recs = sequenced(&keys);
        let st = first_pass(&recs).unwrap();
        if let Ok(p) = build_mapping_params::<f64, _>(&recs, &st, k) {
            let plan = build_partition_plan(&recs, &p);
            prop_assert_eq!(plan.counts.len(), k);
            prop_assert_eq!(plan.counts.iter().sum::<usize>(), keys.len());
            prop_assert_eq!(plan.offsets[0], 0);
            for i in 1..k {
                prop_assert_eq!(plan.offsets[i], plan.offsets[i - 1] + plan.counts[i - 1]);
            }
        }
    }

    #[test]
    fn params_do_not_depend_on_input_order(keys in prop::collection::vec(-1_000_000_000i64..1_000_000_000, 2..500), seed in any::<u64>()) {
        let recs = sequenced(&keys);
        let mut shuffled = keys.clone();
        let mut rng = StdRng::seed_from_u64(seed);
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, rng.random_range(0..=i));
        }
        let a = build_mapping_params::<f64, _>(&recs, &first_pass(&recs).unwrap(), 16);
        let srecs = sequenced(&shuffled);
        let b = build_mapping_params::<f64, _>(&srecs, &first_pass(&srecs).unwrap(), 16);
        match (a, b) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(a.mean, b.mean);
                prop_assert_eq!(a.k, b.k);
                // the variance sum is order-dependent only through rounding
                prop_assert!((a.std - b.std).abs() <= 1e-12 * a.std);
                prop_assert!((a.zmin - b.zmin).abs() <= 1e-9 * a.zmin.max(1.0));
            }
            (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
        }
    }
}

/// Unfloored position of the estimated mean must land at `i + 0.5`.
///
/// The round trip loses about `ulp(mean) * scale / std`, so the centre is
/// drawn within a bounded number of spreads of zero.
#[test]
fn estimated_mean_hits_bucket_midpoints() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        let k = rng.random_range(2..5000usize);
        let std = 10f64.powf(rng.random_range(-3.0..15.0));
        let mean = std * rng.random_range(-100.0..100.0);
        let zmin = rng.random_range(0.0..6.0);
        let p = MappingParams {
            mean,
            std,
            zmin,
            scale: k as f64 / 4.0,
            k,
        };
        let i = rng.random_range(0..k);
        let h = p.position(p.estimated_mean(i));
        let want = i as f64 + 0.5;
        assert!((h - want).abs() <= 1e-9 * want, "i={i} h={h} params={p:?}");
    }
}

/// Pareto-like keys push estimated means far from the data; the guards must
/// still terminate with sorted output.
#[test]
fn heavy_tail_inputs_terminate() {
    let mut rng = StdRng::seed_from_u64(99);
    for shape in [0.3, 0.7, 1.1] {
        let keys: Vec<i64> = (0..200_000)
            .map(|_| {
                let u: f64 = 1.0 - rng.random::<f64>();
                let x = u.powf(-1.0 / shape);
                if x >= i64::MAX as f64 {
                    i64::MAX
                } else {
                    x as i64
                }
            })
            .collect();
        let recs = sequenced(&keys);
        let cfg = SortConfig::default().with_stats();
        let (out, stats) = zsort(&recs, &cfg);
        assert_eq!(out, oracle(&recs), "shape {shape}");
        assert!(stats.max_depth_reached <= cfg.depth_guard);
    }
}
