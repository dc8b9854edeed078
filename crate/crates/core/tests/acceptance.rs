//! Acceptance suite: every release gate as one test, each printing a
//! `[PASS]` line (run with `-- --nocapture` to see them on success).
//!
//! The tests share a corpus of random instances, built once, and take a
//! global lock so the scaling measurement is never perturbed by a
//! concurrent test thread.

use std::sync::{Mutex, MutexGuard, OnceLock};
use std::time::Instant;

use border_core::bench::{elapsed_slope, run_scaling, ScalingRecord};
use border_core::datagen::{generate, GenKind, GenSpec};
use border_core::extreme::{extreme_points, separate_from_hull};
use border_core::oracle::{
    brute_force_border, delaunay_neighbors_within, nn_classify, verify_certificate,
    BruteForceResult,
};
use border_core::{
    find_border_points, find_border_points_baseline, invert_around, inversion_method, Algorithm,
    BorderResult, LabeledPointSet, Point, DEFAULT_TOLERANCE,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

static GATE: Mutex<()> = Mutex::new(());

fn gate() -> MutexGuard<'static, ()> {
    match GATE.lock() {
        Ok(g) => g,
        Err(poisoned) => poisoned.into_inner(),
    }
}

struct Corpus {
    instances: Vec<LabeledPointSet>,
    brute: Vec<BruteForceResult>,
    seeded: Vec<BorderResult>,
    build_seconds: f64,
}

/// 200 random instances: d in {2,3,4}, n in [5,40], 2-4 classes, blob and
/// ring layouts with enough overlap to produce rich boundaries.
fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let start = Instant::now();
        let mut instances = Vec::with_capacity(200);
        for i in 0..200usize {
            let dim = 2 + i % 3;
            let classes = 2 + (i / 3) % 3;
            let n = 5 + (i * 17 + 3) % 36;
            let kind = if i % 2 == 0 {
                GenKind::Blobs
            } else {
                GenKind::Annuli
            };
            let separation = [1.5, 2.5, 4.0, 6.0][i % 4];
            let spec = GenSpec::new(kind, n, dim, classes, 10_000 + i as u64)
                .with_separation(separation);
            instances.push(generate(&spec).expect("corpus instance"));
        }
        let brute: Vec<BruteForceResult> = instances.iter().map(brute_force_border).collect();
        let seeded: Vec<BorderResult> = instances
            .iter()
            .map(|s| find_border_points(s, 0).expect("seeded run"))
            .collect();
        Corpus {
            instances,
            brute,
            seeded,
            build_seconds: start.elapsed().as_secs_f64(),
        }
    })
}

#[test]
fn criterion_1_oracle_equivalence() {
    let _g = gate();
    let c = corpus();
    for (i, (res, truth)) in c.seeded.iter().zip(&c.brute).enumerate() {
        assert_eq!(
            res.border_indices, truth.border_indices,
            "instance {i}: seeded output disagrees with the brute-force oracle"
        );
    }
    assert!(
        c.build_seconds < 300.0,
        "corpus build took {:.1}s, over the 5 minute budget",
        c.build_seconds
    );
    eprintln!(
        "[PASS] criterion 1: oracle equivalence on {}/{} instances ({:.1}s)",
        c.seeded.len(),
        c.instances.len(),
        c.build_seconds
    );
}

#[test]
fn criterion_2_seed_invariance() {
    let _g = gate();
    let c = corpus();
    let start = Instant::now();
    let count = 50;
    for i in 0..count {
        let set = &c.instances[i];
        let expected = &c.seeded[i].border_indices;
        for seed in 0..set.len() {
            let res = find_border_points(set, seed).expect("seeded run");
            assert_eq!(
                &res.border_indices, expected,
                "instance {i}: seed {seed} changed the output set"
            );
        }
    }
    eprintln!(
        "[PASS] criterion 2: seed invariance on {count} instances, all seeds ({:.1}s)",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_3_baseline_equivalence() {
    let _g = gate();
    let c = corpus();
    let start = Instant::now();
    for (i, set) in c.instances.iter().enumerate() {
        let base = find_border_points_baseline(set).expect("baseline run");
        assert_eq!(
            base.border_indices, c.seeded[i].border_indices,
            "instance {i}: MST baseline disagrees with the seeded search"
        );
    }
    eprintln!(
        "[PASS] criterion 3: baseline equivalence on {} instances ({:.1}s)",
        c.instances.len(),
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_4_inversion_matches_delaunay_neighbors() {
    let _g = gate();
    let c = corpus();
    let start = Instant::now();
    let pairs = 120;
    for t in 0..pairs {
        let set = &c.instances[t % c.instances.len()];
        let p = (t * 13 + 5) % set.len();
        let fast = inversion_method(set, p).expect("inversion method");
        // Delaunay neighbors of p with respect to the points of other
        // classes plus p itself.
        let mut active: Vec<usize> = (0..set.len())
            .filter(|&q| set.class_id(q) != set.class_id(p))
            .collect();
        active.push(p);
        active.sort_unstable();
        let slow = delaunay_neighbors_within(set, &active, p);
        assert_eq!(fast, slow, "pair {t}: inversion method vs oracle at p={p}");
    }
    eprintln!(
        "[PASS] criterion 4: inversion method equals Delaunay neighbors on {pairs} (instance, p) pairs ({:.1}s)",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_5_boundary_preservation() {
    let _g = gate();
    let c = corpus();
    let start = Instant::now();
    let queries_per_instance = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(0xB0DE);
    let mut total_checked = 0u64;
    let mut total_skipped = 0u64;
    for i in 0..20 {
        let set = &c.instances[i];
        let reduced = set
            .subset(&c.seeded[i].border_indices)
            .expect("nonempty reduction");
        let (lo, hi) = set.bounding_box();
        let diam = set.diameter();
        let margin_floor = DEFAULT_TOLERANCE * diam;
        let mut q = vec![0.0; set.dim()];
        for _ in 0..queries_per_instance {
            for (c, (l, h)) in q.iter_mut().zip(lo.iter().zip(&hi)) {
                let half = 0.5 * (h - l);
                let mid = 0.5 * (h + l);
                // Bounding box inflated by 20 percent.
                *c = mid + (rng.gen::<f64>() * 2.4 - 1.2) * half.max(1e-12);
            }
            let full = nn_classify(set, &q).expect("classify");
            if full.rival_dist - full.nearest_dist <= margin_floor {
                total_skipped += 1;
                continue;
            }
            let red = nn_classify(&reduced, &q).expect("classify reduced");
            assert_eq!(
                full.label,
                red.label,
                "instance {i}: query {q:?} classified {} by the full set but {} by the reduction",
                full.label,
                red.label
            );
            total_checked += 1;
        }
    }
    eprintln!(
        "[PASS] criterion 5: boundary preserved on {total_checked} queries over 20 instances ({total_skipped} near-tie queries skipped, {:.1}s)",
        start.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_6_inversion_call_bound() {
    let _g = gate();
    let c = corpus();
    for (i, res) in c.seeded.iter().enumerate() {
        let k = res.k() as u64;
        assert!(
            res.inversion_calls <= k + 1,
            "instance {i}: {} inversion calls for k = {k}",
            res.inversion_calls
        );
        let seed_is_border = res.border_indices.contains(&0);
        let expected = if seed_is_border { k } else { k + 1 };
        assert_eq!(
            res.inversion_calls, expected,
            "instance {i}: call count should be k when the seed is a border point, else k+1"
        );
    }
    eprintln!(
        "[PASS] criterion 6: inversion_calls <= k+1 on {} instances, with equality at k for border seeds",
        c.seeded.len()
    );
}

#[test]
fn criterion_7_complexity_scaling() {
    let _g = gate();
    let start = Instant::now();
    let base = GenSpec::new(GenKind::FixedKFamily, 0, 2, 2, 7);
    let ns = [1000, 2000, 4000, 8000, 16000, 32000];

    // Three sweeps, keeping the fastest time per measurement point.
    let mut best: Vec<ScalingRecord> = run_scaling(&base, &ns).expect("scaling run");
    for _ in 0..2 {
        let again = run_scaling(&base, &ns).expect("scaling run");
        for (b, a) in best.iter_mut().zip(again) {
            assert_eq!(b.k, a.k, "same instance must give the same k");
            if a.elapsed_ms < b.elapsed_ms {
                b.elapsed_ms = a.elapsed_ms;
            }
        }
    }
    for r in &best {
        if r.algorithm == Algorithm::Seeded {
            assert!(r.inversion_calls <= r.k as u64 + 1, "call bound at n = {}", r.n);
        }
    }

    let seeded = elapsed_slope(&best, Algorithm::Seeded).expect("seeded slope");
    let mst = elapsed_slope(&best, Algorithm::MstBaseline).expect("mst slope");
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        seeded <= 1.3,
        "seeded log-log slope {seeded:.3} exceeds 1.3: the search is not scaling near-linearly"
    );
    assert!(
        mst >= 1.7,
        "MST baseline log-log slope {mst:.3} below 1.7: the quadratic initialization is not dominating"
    );
    assert!(elapsed < 600.0, "scaling sweep took {elapsed:.0}s, over the 10 minute budget");
    eprintln!(
        "[PASS] criterion 7: log-log slope seeded {seeded:.3} (<= 1.3) vs MST baseline {mst:.3} (>= 1.7) over n = 1000..32000 ({elapsed:.1}s)"
    );
}

#[test]
fn criterion_8_geometry_property_suite() {
    let _g = gate();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x6E0);

    // Inversion identities at relative 1e-9 over random centers, points
    // and radii in d = 2..5.
    for _ in 0..2000 {
        let dim = rng.gen_range(2..=5);
        let p = Point::new((0..dim).map(|_| rng.gen::<f64>() * 200.0 - 100.0).collect()).unwrap();
        let q = Point::new(
            p.coords()
                .iter()
                .map(|c| c + rng.gen::<f64>() * 20.0 - 10.0)
                .collect(),
        )
        .unwrap();
        let r = 0.1 + rng.gen::<f64>() * 10.0;
        let dq: f64 = p
            .coords()
            .iter()
            .zip(q.coords())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        if dq < 1e-6 {
            continue;
        }
        let img = invert_around(&p, &q, r).unwrap();
        let back = invert_around(&p, &img, r).unwrap();
        let scale = q.coords().iter().fold(1e-30f64, |m, c| m.max(c.abs()));
        for (a, b) in back.coords().iter().zip(q.coords()) {
            assert!((a - b).abs() <= 1e-9 * scale, "involution defect");
        }
        let di: f64 = p
            .coords()
            .iter()
            .zip(img.coords())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        let dot: f64 = img
            .coords()
            .iter()
            .zip(q.coords())
            .zip(p.coords())
            .map(|((ic, qc), pc)| (ic - pc) * (qc - pc))
            .sum();
        assert!(dot >= 0.0, "image left the ray");
        assert!((dot - di * dq).abs() <= 1e-9 * (di * dq), "image off the ray");
        assert!((di * dq - r * r).abs() <= 1e-9 * r * r, "radius product defect");
    }

    // Output-sensitive hull vertices equal the per-point LP test on
    // random clouds up to n = 50, d = 5.
    let mut hull_sets = 0;
    for trial in 0..25 {
        let dim = 2 + trial % 4;
        let n = 10 + (trial * 7) % 41;
        let pts: Vec<Point> = (0..n)
            .map(|_| {
                Point::new((0..dim).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect()).unwrap()
            })
            .collect();
        let fast = extreme_points(&pts, DEFAULT_TOLERANCE).unwrap();
        let scale = pts
            .iter()
            .flat_map(|p| p.coords())
            .fold(0.0f64, |m, c| m.max(c.abs()));
        let mut slow = Vec::new();
        for (i, q) in pts.iter().enumerate() {
            let others: Vec<Point> = pts
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            if separate_from_hull(q, &others, DEFAULT_TOLERANCE * scale)
                .unwrap()
                .separable
            {
                slow.push(i);
            }
        }
        assert_eq!(fast, slow, "hull trial {trial} (n={n}, d={dim})");
        hull_sets += 1;
    }

    // Every certificate the oracle emitted for the corpus verifies.
    let c = corpus();
    let mut certs = 0;
    for (i, (set, res)) in c.instances.iter().zip(&c.brute).enumerate() {
        for cert in &res.certificates {
            assert!(
                verify_certificate(set, cert),
                "instance {i}: certificate for pair ({}, {}) failed verification",
                cert.i,
                cert.j
            );
            certs += 1;
        }
    }

    eprintln!(
        "[PASS] criterion 8: geometry identities (2000 samples), hull-vs-LP oracle ({hull_sets} clouds), {certs} certificates verified ({:.1}s)",
        start.elapsed().as_secs_f64()
    );
}
