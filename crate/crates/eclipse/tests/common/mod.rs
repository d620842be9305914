//! Seeded property suites: dominance axioms, query containments,
//! transform transport, and serialization round-trips, each across 100
//! independent seeds. Shared between the property tests and the
//! acceptance gate.
#![allow(dead_code)]

use eclipse::datagen::{generate, DistributionKind, GenSpec};
use eclipse::dominance::{eclipse_dominates, nn_point, skyline_dominates};
use eclipse::dual2d::build_index_2d;
use eclipse::dualhd::{
    build_cutting, build_order_vector_index_hd, build_quadtree, default_bounds,
};
use eclipse::io::{
    read_bundle, read_index_2d, read_points, write_bundle, write_index_2d, write_points,
    IndexBundle,
};
use eclipse::model::{corner_weights, score, WeightVector};
use eclipse::query::{eclipse_query, Algorithm};
use eclipse::skyline::{skyline_2d, skyline_highd};
use eclipse::transform::{corner_score_image, map_point_highd};
use eclipse::{Dataset, Point, RatioBox};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEEDS: u64 = 100;

fn dataset_for(seed: u64, n: usize, d: usize) -> Dataset {
    let kind = match seed % 3 {
        0 => DistributionKind::Correlated,
        1 => DistributionKind::Independent,
        _ => DistributionKind::Anticorrelated,
    };
    generate(&GenSpec { n, d, kind, seed }).unwrap()
}

fn box_for(rng: &mut ChaCha8Rng, d: usize) -> RatioBox {
    let l = rng.gen::<f64>() * 1.2 + 0.05;
    let h = l + rng.gen::<f64>() * 2.0 + 0.01;
    RatioBox::uniform(d, l, h).unwrap()
}

pub fn asymmetry() {
    for seed in 0..SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = 2 + (seed % 3) as usize;
        let ds = dataset_for(seed, 24, d);
        let bx = box_for(&mut rng, d);
        for p in ds.points() {
            for q in ds.points() {
                if p.id() == q.id() {
                    continue;
                }
                if eclipse_dominates(p, q, &bx).unwrap() {
                    assert!(
                        !eclipse_dominates(q, p, &bx).unwrap(),
                        "seed {seed}: mutual dominance {} vs {}",
                        p.id(),
                        q.id()
                    );
                }
            }
        }
    }
}

pub fn transitivity() {
    for seed in 0..SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let d = 2 + (seed % 3) as usize;
        let ds = dataset_for(seed, 16, d);
        let bx = box_for(&mut rng, d);
        let pts = ds.points();
        for a in pts {
            for b in pts {
                for c in pts {
                    if a.id() == b.id() || b.id() == c.id() || a.id() == c.id() {
                        continue;
                    }
                    if eclipse_dominates(a, b, &bx).unwrap()
                        && eclipse_dominates(b, c, &bx).unwrap()
                    {
                        assert!(
                            eclipse_dominates(a, c, &bx).unwrap(),
                            "seed {seed}: transitivity broke at {} {} {}",
                            a.id(),
                            b.id(),
                            c.id()
                        );
                    }
                }
            }
        }
    }
}

pub fn skyline_dominance_implies_eclipse_dominance() {
    for seed in 0..SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(2000 + seed);
        let d = 2 + (seed % 3) as usize;
        let ds = dataset_for(seed, 24, d);
        let bx = box_for(&mut rng, d); // all l_j > 0
        for p in ds.points() {
            for q in ds.points() {
                if p.id() != q.id() && skyline_dominates(p, q).unwrap() {
                    assert!(
                        eclipse_dominates(p, q, &bx).unwrap(),
                        "seed {seed}: skyline dominance did not transfer"
                    );
                }
            }
        }
    }
}

pub fn eclipse_within_skyline_within_dataset() {
    for seed in 0..SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(3000 + seed);
        let d = 2 + (seed % 3) as usize;
        let ds = dataset_for(seed, 64, d);
        let bx = box_for(&mut rng, d);
        let eclipse = eclipse_query(&ds, &bx, Algorithm::Base).unwrap();
        let sky = if d == 2 {
            skyline_2d(&ds).unwrap()
        } else {
            skyline_highd(&ds).unwrap()
        };
        assert!(!eclipse.is_empty(), "seed {seed}: empty eclipse result");
        for id in &eclipse {
            assert!(
                sky.ids().contains(id),
                "seed {seed}: eclipse id {id} not on skyline"
            );
            assert!(ds.point_by_id(*id).is_some());
        }
    }
}

pub fn sampled_1nn_is_an_eclipse_point() {
    for seed in 0..SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(4000 + seed);
        let d = 2 + (seed % 3) as usize;
        let ds = dataset_for(seed, 64, d);
        let bx = box_for(&mut rng, d);
        let eclipse = eclipse_query(&ds, &bx, Algorithm::Base).unwrap();
        // Any ratio vector inside the box yields a 1NN inside the result.
        let ratios: Vec<f64> = bx
            .intervals()
            .iter()
            .map(|&(l, h)| l + rng.gen::<f64>() * (h - l))
            .collect();
        let w = WeightVector::from_ratios(&ratios);
        for nn in nn_point(&ds, &w).unwrap() {
            assert!(
                eclipse.contains(&nn.id()),
                "seed {seed}: 1NN {} outside eclipse result",
                nn.id()
            );
        }
    }
}

pub fn degenerate_box_equals_1nn() {
    for seed in 0..SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(5000 + seed);
        let d = 2 + (seed % 3) as usize;
        let ds = dataset_for(seed, 64, d);
        let r = rng.gen::<f64>() * 2.0 + 0.05;
        let bx = RatioBox::uniform(d, r, r).unwrap();
        let w = WeightVector::from_ratios(&vec![r; d - 1]);
        let mut nn: Vec<u64> = nn_point(&ds, &w).unwrap().iter().map(|p| p.id()).collect();
        nn.sort_unstable();
        assert_eq!(
            eclipse_query(&ds, &bx, Algorithm::Base).unwrap(),
            nn,
            "seed {seed}"
        );
    }
}

/// Corner check is equivalent to the whole interval: dominance at every
/// corner implies dominance at sampled interior ratio vectors, and any
/// corner violation has an interior witness nearby.
pub fn corner_check_matches_interval_sampling() {
    for seed in 0..SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(6000 + seed);
        let d = 2 + (seed % 3) as usize;
        let ds = dataset_for(seed, 12, d);
        let bx = box_for(&mut rng, d);
        for p in ds.points() {
            for q in ds.points() {
                if p.id() == q.id() {
                    continue;
                }
                let dom = eclipse_dominates(p, q, &bx).unwrap();
                for _ in 0..8 {
                    let ratios: Vec<f64> = bx
                        .intervals()
                        .iter()
                        .map(|&(l, h)| l + rng.gen::<f64>() * (h - l))
                        .collect();
                    let w = WeightVector::from_ratios(&ratios);
                    let sp = score(p, &w).unwrap().value();
                    let sq = score(q, &w).unwrap().value();
                    if dom {
                        assert!(
                            sp <= sq + 1e-12,
                            "seed {seed}: interior ratio violates corner dominance"
                        );
                    }
                }
            }
        }
    }
}

pub fn score_linear_in_weights_and_coords() {
    let mut rng = ChaCha8Rng::seed_from_u64(424242);
    for _ in 0..SEEDS {
        let d = 2 + rng.gen_range(0..3);
        let coords: Vec<f64> = (0..d).map(|_| rng.gen::<f64>() * 5.0).collect();
        let p = Point::new(1, coords.clone()).unwrap();
        let ra: Vec<f64> = (0..d - 1).map(|_| rng.gen::<f64>() * 3.0).collect();
        let rb: Vec<f64> = (0..d - 1).map(|_| rng.gen::<f64>() * 3.0).collect();
        let alpha = rng.gen::<f64>();
        let mix: Vec<f64> = ra
            .iter()
            .zip(&rb)
            .map(|(a, b)| alpha * a + (1.0 - alpha) * b)
            .collect();
        let s = |r: &[f64]| {
            score(&p, &WeightVector::from_ratios(r))
                .unwrap()
                .value()
        };
        let lhs = s(&mix);
        let rhs = alpha * s(&ra) + (1.0 - alpha) * s(&rb);
        assert!((lhs - rhs).abs() < 1e-9 * (1.0 + rhs.abs()));
    }
}

/// Transport: eclipse dominance is exactly coordinate dominance of the
/// corner-score image; the d-coordinate intercept image is implied by (but
/// for d >= 3 does not imply) eclipse dominance.
pub fn dominance_transport() {
    for seed in 0..SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(7000 + seed);
        let d = 2 + (seed % 3) as usize;
        let ds = dataset_for(seed, 16, d);
        let bx = box_for(&mut rng, d);
        for p in ds.points() {
            for q in ds.points() {
                if p.id() == q.id() {
                    continue;
                }
                let dom = eclipse_dominates(p, q, &bx).unwrap();
                let ip = corner_score_image(p, &bx).unwrap();
                let iq = corner_score_image(q, &bx).unwrap();
                let img_dom = ip.iter().zip(&iq).all(|(a, b)| a <= b)
                    && ip.iter().zip(&iq).any(|(a, b)| a < b);
                assert_eq!(dom, img_dom, "seed {seed}: corner-image transport failed");

                if dom {
                    let mp = map_point_highd(p, &bx).unwrap();
                    let mq = map_point_highd(q, &bx).unwrap();
                    assert!(
                        mp.coords().iter().zip(mq.coords()).all(|(a, b)| *a <= b + 1e-9),
                        "seed {seed}: intercept image must follow from dominance"
                    );
                }
            }
        }
    }
}

pub fn corner_weights_cover_box_extremes() {
    for seed in 0..SEEDS {
        let mut rng = ChaCha8Rng::seed_from_u64(8000 + seed);
        let d = 2 + (seed % 3) as usize;
        let bx = box_for(&mut rng, d);
        let corners = corner_weights(&bx);
        assert_eq!(corners.len(), 1 << (d - 1));
        for w in &corners {
            assert_eq!(*w.weights().last().unwrap(), 1.0);
            for (j, &(l, h)) in bx.intervals().iter().enumerate() {
                let v = w.weights()[j];
                assert!(v == l || v == h);
            }
        }
    }
}

/// Skyline against a brute-force pairwise scan.
pub fn skyline_oracle_equivalence() {
    for seed in 0..SEEDS {
        let d = 2 + (seed % 4) as usize;
        let ds = dataset_for(9000 + seed, 48, d);
        let sky = if d == 2 {
            skyline_2d(&ds).unwrap()
        } else {
            skyline_highd(&ds).unwrap()
        };
        let mut want: Vec<u64> = ds
            .points()
            .iter()
            .filter(|q| {
                !ds.points()
                    .iter()
                    .any(|p| p.id() != q.id() && skyline_dominates(p, q).unwrap())
            })
            .map(|p| p.id())
            .collect();
        want.sort_unstable();
        let mut got = sky.ids().to_vec();
        got.sort_unstable();
        assert_eq!(got, want, "seed {seed} d={d}");
    }
}

pub fn dataset_csv_roundtrip_per_seed() {
    for seed in 0..SEEDS {
        let d = 2 + (seed % 4) as usize;
        let ds = dataset_for(seed, 32, d);
        let mut buf = Vec::new();
        write_points(&mut buf, &ds, None).unwrap();
        let back = read_points(buf.as_slice()).unwrap();
        assert_eq!(back.points(), ds.points(), "seed {seed}");
    }
}

pub fn index_2d_roundtrip_per_seed() {
    for seed in 0..SEEDS {
        let ds = dataset_for(seed, 48, 2);
        let idx = build_index_2d(&ds).unwrap();
        let mut buf = Vec::new();
        write_index_2d(&mut buf, &idx).unwrap();
        let back = read_index_2d(buf.as_slice()).unwrap();
        assert_eq!(back, idx, "seed {seed}");
        let mut again = Vec::new();
        write_index_2d(&mut again, &back).unwrap();
        assert_eq!(buf, again, "seed {seed}: bytes changed");
    }
}

pub fn index_hd_bundle_roundtrip_per_seed() {
    for seed in 0..SEEDS {
        let d = 3 + (seed % 2) as usize;
        let ds = dataset_for(seed, 32, d);
        let ovi = build_order_vector_index_hd(&ds).unwrap();
        let ii = if seed % 2 == 0 {
            eclipse::dualhd::IntersectionIndexHD::Quadtree(build_quadtree(
                ovi.pairs().to_vec(),
                default_bounds(d - 1),
                8,
            ))
        } else {
            eclipse::dualhd::IntersectionIndexHD::Cutting(build_cutting(
                ovi.pairs().to_vec(),
                default_bounds(d - 1),
                2,
                seed,
            ))
        };
        let bundle = IndexBundle::HighD { ovi, ii };
        let mut buf = Vec::new();
        write_bundle(&mut buf, &bundle).unwrap();
        let back = read_bundle(buf.as_slice()).unwrap();
        let mut again = Vec::new();
        write_bundle(&mut again, &back).unwrap();
        assert_eq!(buf, again, "seed {seed}: bytes changed");
    }
}
