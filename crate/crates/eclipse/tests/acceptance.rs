//! Acceptance gate: eight criteria, each printing one pass/fail line.
//! A criterion's line prints only after every assertion in it holds, so a
//! failing test shows the criterion number in its name and no PASS line.

mod common;

use eclipse::bench::{adversarial_dataset, run_bench, BenchConfig, Workload};
use eclipse::datagen::{expected_eclipse_count, generate, DistributionKind, GenSpec};
use eclipse::dominance::eclipse_dominates;
use eclipse::dual2d::{build_index_2d, query_index_2d_with_rule, DecrementRule};
use eclipse::model::{score, WeightVector};
use eclipse::query::{eclipse_query, Algorithm};
use eclipse::transform::map_point_highd;
use eclipse::{Dataset, Point, RatioBox};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

fn running_example() -> Dataset {
    Dataset::new(vec![
        Point::new(1, vec![1.0, 6.0]).unwrap(),
        Point::new(2, vec![4.0, 4.0]).unwrap(),
        Point::new(3, vec![6.0, 1.0]).unwrap(),
        Point::new(4, vec![8.0, 5.0]).unwrap(),
    ])
    .unwrap()
}

#[test]
fn criterion_1_worked_example_goldens() {
    let t0 = Instant::now();
    let ds = running_example();
    let bx = RatioBox::new(vec![(0.25, 2.0)]).unwrap();

    for algo in Algorithm::ALL {
        assert_eq!(eclipse_query(&ds, &bx, algo).unwrap(), vec![1, 2, 3], "{algo}");
    }

    let want_images = [
        vec![4.0, 6.25],
        vec![6.0, 5.0],
        vec![6.5, 2.5],
        vec![10.5, 7.0],
    ];
    for (p, want) in ds.points().iter().zip(&want_images) {
        assert_eq!(map_point_highd(p, &bx).unwrap().coords(), want.as_slice());
    }

    let idx = build_index_2d(&ds).unwrap();
    let got: Vec<f64> = idx.boundaries().to_vec();
    let want = [-1.5, -1.0, -2.0 / 3.0];
    assert_eq!(got.len(), 3);
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() < 1e-12, "boundary {g} vs {w}");
    }
    assert_eq!(idx.vectors().last().unwrap(), &vec![2, 1, 0]);

    // All three in-range flips are consumed: every counter ends at zero.
    let (ids, m) = query_index_2d_with_rule(&idx, 0.25, 2.0, DecrementRule::Snapshot).unwrap();
    assert_eq!(ids, vec![1, 2, 3]);
    assert_eq!(m, 3);

    assert!(t0.elapsed().as_secs_f64() < 1.0, "goldens must run in < 1 s");
    println!("ACCEPTANCE 1 worked-example goldens: PASS");
}

#[test]
fn criterion_2_four_way_oracle_equivalence() {
    // n shrinks as d grows so every skyline stays inside the index guards.
    let grid: [(usize, &[usize]); 4] = [
        (2, &[16, 64, 256, 1024]),
        (3, &[16, 64, 256, 1024]),
        (4, &[16, 48, 128]),
        (5, &[16, 32, 64]),
    ];
    let kinds = [
        DistributionKind::Correlated,
        DistributionKind::Independent,
        DistributionKind::Anticorrelated,
    ];
    let boxes = [(0.18, 5.67), (0.36, 2.75), (0.58, 1.73), (0.84, 1.19)];
    let mut instances = 0;
    for (d, ns) in grid {
        for &n in ns {
            for kind in kinds {
                for (l, h) in boxes {
                    for seed in 0..2u64 {
                        let ds = generate(&GenSpec {
                            n,
                            d,
                            kind,
                            seed: 1000 * seed + instances as u64,
                        })
                        .unwrap();
                        let bx = RatioBox::uniform(d, l, h).unwrap();
                        let base = eclipse_query(&ds, &bx, Algorithm::Base).unwrap();
                        for algo in
                            [Algorithm::Transform, Algorithm::Quad, Algorithm::Cutting]
                        {
                            let got = eclipse_query(&ds, &bx, algo).unwrap();
                            assert_eq!(
                                got, base,
                                "{algo} mismatch at n={n} d={d} {kind} box=[{l},{h}] seed={seed}"
                            );
                        }
                        instances += 1;
                    }
                }
            }
        }
    }
    assert!(instances >= 300, "only {instances} instances");
    println!("ACCEPTANCE 2 four-way oracle equivalence ({instances} instances): PASS");
}

#[test]
fn criterion_3_corner_check_soundness_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut checked = 0;
    'outer: for seed in 0.. {
        let d = 2 + (seed % 3) as usize;
        let ds = generate(&GenSpec {
            n: 24,
            d,
            kind: DistributionKind::Independent,
            seed,
        })
        .unwrap();
        let l = rng.gen::<f64>() * 1.2 + 0.05;
        let h = l + rng.gen::<f64>() * 2.0 + 0.01;
        let bx = RatioBox::uniform(d, l, h).unwrap();
        for p in ds.points() {
            for q in ds.points() {
                if p.id() == q.id() || !eclipse_dominates(p, q, &bx).unwrap() {
                    continue;
                }
                for _ in 0..1000 {
                    let ratios: Vec<f64> = bx
                        .intervals()
                        .iter()
                        .map(|&(lo, hi)| lo + rng.gen::<f64>() * (hi - lo))
                        .collect();
                    let w = WeightVector::from_ratios(&ratios);
                    let sp = score(p, &w).unwrap().value();
                    let sq = score(q, &w).unwrap().value();
                    assert!(
                        sp <= sq + 1e-12,
                        "interior violation for seed {seed} pair ({}, {})",
                        p.id(),
                        q.id()
                    );
                }
                checked += 1;
                if checked >= 1000 {
                    break 'outer;
                }
            }
        }
    }
    println!("ACCEPTANCE 3 corner-check soundness (1000 triples x 1000 samples): PASS");
}

fn mean_for(n: usize, d: usize, l: f64, h: f64, seed: u64) -> f64 {
    let bx = RatioBox::uniform(d, l, h).unwrap();
    expected_eclipse_count(n, d, DistributionKind::Independent, &bx, 200, seed).unwrap()
}

#[test]
fn criterion_4_expected_counts_by_dimension() {
    let want = [(2, 1.8), (3, 3.8), (4, 8.5), (5, 17.2)];
    let mut prev = 0.0;
    let mut got = Vec::new();
    for (d, expect) in want {
        let mean = mean_for(1024, d, 0.36, 2.75, 41);
        assert!(
            (mean - expect).abs() <= 0.25 * expect,
            "d={d}: mean {mean:.2} outside {expect} +/- 25%"
        );
        assert!(mean > prev, "means must increase with d");
        prev = mean;
        got.push(format!("d={d}:{mean:.2}"));
    }
    println!("ACCEPTANCE 4 expected counts by dimension ({}): PASS", got.join(" "));
}

#[test]
fn criterion_5_expected_counts_by_box_width() {
    let want = [
        (0.18, 5.67, 7.2),
        (0.36, 2.75, 3.8),
        (0.58, 1.73, 2.2),
        (0.84, 1.19, 1.3),
    ];
    let mut prev = f64::INFINITY;
    let mut got = Vec::new();
    for (l, h, expect) in want {
        let mean = mean_for(1024, 3, l, h, 43);
        assert!(
            (mean - expect).abs() <= 0.25 * expect,
            "box [{l},{h}]: mean {mean:.2} outside {expect} +/- 25%"
        );
        assert!(mean < prev, "means must shrink as the box narrows");
        prev = mean;
        got.push(format!("[{l},{h}]:{mean:.2}"));
    }
    println!("ACCEPTANCE 5 expected counts by box width ({}): PASS", got.join(" "));
}

#[test]
fn criterion_6_weak_dependence_on_n() {
    let mut got = Vec::new();
    for n in [1 << 7, 1 << 10, 1 << 13] {
        let mean = mean_for(n, 3, 0.36, 2.75, 47);
        assert!(
            (3.0..=5.0).contains(&mean),
            "n={n}: mean {mean:.2} outside [3.0, 5.0]"
        );
        got.push(format!("n={n}:{mean:.2}"));
    }
    println!("ACCEPTANCE 6 weak n-dependence ({}): PASS", got.join(" "));
}

/// Minimum of per-run medians over `rounds` interleaved runs, per algorithm.
/// The minimum discards slowdowns caused by sibling test threads.
fn stable_query_ns(cfg: &BenchConfig, rounds: usize) -> Vec<u128> {
    let mut best = vec![u128::MAX; cfg.algorithms.len()];
    for _ in 0..rounds {
        for (slot, row) in run_bench(cfg).unwrap().iter().enumerate() {
            best[slot] = best[slot].min(row.query_ns);
        }
    }
    best
}

#[test]
fn criterion_7_complexity_trends() {
    // (a) transform at least 5x faster than baseline on large ANTI data.
    let anti = stable_query_ns(
        &BenchConfig {
            n: 1 << 13,
            d: 3,
            kind: DistributionKind::Anticorrelated,
            workload: Workload::Average,
            l: 0.18,
            h: 5.67,
            reps: 5,
            seed: 71,
            algorithms: vec![Algorithm::Base, Algorithm::Transform],
        },
        3,
    );
    let base_ns = anti[0];
    let tran_ns = anti[1];
    assert!(
        base_ns >= 5 * tran_ns,
        "BASE {base_ns} ns not >= 5x TRAN {tran_ns} ns"
    );

    // (b) indexed query (post-build) beats the transform end to end.
    let avg = stable_query_ns(
        &BenchConfig {
            n: 1 << 13,
            d: 3,
            kind: DistributionKind::Independent,
            workload: Workload::Average,
            l: 0.36,
            h: 2.75,
            reps: 5,
            seed: 73,
            algorithms: vec![Algorithm::Transform, Algorithm::Quad],
        },
        3,
    );
    let tran_total = avg[0];
    let quad_query = avg[1];
    assert!(
        quad_query < tran_total,
        "quad query {quad_query} ns not < tran {tran_total} ns"
    );

    // (c) cutting no slower than quadtree on the adversarial workload,
    // where many dual hyperplanes pass near one common point.
    assert!(adversarial_dataset(16, 3, 1).is_ok());
    let cfg = BenchConfig {
        n: 512,
        d: 3,
        kind: DistributionKind::Independent,
        workload: Workload::Adversarial,
        l: 0.2,
        h: 0.3,
        reps: 9,
        seed: 79,
        algorithms: vec![Algorithm::Quad, Algorithm::Cutting],
    };
    let adv = run_bench(&cfg).unwrap();
    assert_eq!(adv[0].result_count, adv[1].result_count);
    let stable = stable_query_ns(&cfg, 5);
    let quad_ns = stable[0];
    let cut_ns = stable[1];
    assert!(
        cut_ns <= quad_ns,
        "cutting {cut_ns} ns not <= quad {quad_ns} ns on adversarial workload"
    );

    println!(
        "ACCEPTANCE 7 complexity trends (base/tran {:.1}x, quad query {:.2}x of tran, cut/quad {:.2}x): PASS",
        base_ns as f64 / tran_ns as f64,
        quad_query as f64 / tran_total as f64,
        cut_ns as f64 / quad_ns as f64
    );
}

#[test]
fn criterion_8_property_suites() {
    common::asymmetry();
    common::transitivity();
    common::skyline_dominance_implies_eclipse_dominance();
    common::eclipse_within_skyline_within_dataset();
    common::sampled_1nn_is_an_eclipse_point();
    common::degenerate_box_equals_1nn();
    common::skyline_oracle_equivalence();
    common::dataset_csv_roundtrip_per_seed();
    common::index_2d_roundtrip_per_seed();
    common::index_hd_bundle_roundtrip_per_seed();
    println!("ACCEPTANCE 8 property suites (100 seeds each): PASS");
}
