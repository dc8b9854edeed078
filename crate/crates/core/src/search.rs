//! Border-point search.
//!
//! The inversion method on a point `p` inverts every point of the other
//! classes around a unit sphere centered at `p`; the hull vertices of the
//! inverted set, mapped back, are exactly `p`'s Delaunay neighbors among
//! those points, and every one of them is a border point — whether or not
//! `p` itself is one. The search therefore starts from a single arbitrary
//! seed and repeatedly applies the inversion method to newly found
//! points until the set closes, visiting at most `k + 1` points for `k`
//! border points.
//!
//! The baseline variant instead spends `O(n^2)` up front on the Euclidean
//! minimum spanning tree and starts from the endpoints of its bichromatic
//! edges.

use std::collections::VecDeque;
use std::time::Instant;

use crate::error::Error;
use crate::extreme::{extreme_points_flat, SeparationScratch};
use crate::geometry::{build_inverted_set, sqdist, LabeledPointSet, DEFAULT_TOLERANCE};

/// The inversion sphere radius. Uniform scaling of the inverted set about
/// its center does not change which points are hull vertices, so any
/// positive radius yields the same result.
const INVERSION_RADIUS: f64 = 1.0;

/// Which search produced a [`BorderResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Seeded,
    MstBaseline,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Seeded => "seeded",
            Algorithm::MstBaseline => "mst_baseline",
        }
    }
}

/// The border set of a training set plus run statistics.
#[derive(Debug, Clone)]
pub struct BorderResult {
    /// Sorted indices of the border points.
    pub border_indices: Vec<usize>,
    /// Number of inversion-method invocations (visited points).
    pub inversion_calls: u64,
    /// Total LP separation tests spent in hull computations.
    pub lp_tests: u64,
    /// Wall time of the search in milliseconds.
    pub elapsed_ms: f64,
    pub algorithm: Algorithm,
}

impl BorderResult {
    /// The border-set size `k`.
    pub fn k(&self) -> usize {
        self.border_indices.len()
    }
}

/// Edges of a spanning tree, each as an index pair `(i, j)` with `i < j`
/// and its squared Euclidean length.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeList {
    pub edges: Vec<(usize, usize)>,
    pub weights: Vec<f64>,
}

/// The inversion method on `p`: indices of the points of other classes
/// whose inverted images are hull vertices of `S_p`. Every returned index
/// is a border point of the set; `p` itself is never reported.
pub fn inversion_method(set: &LabeledPointSet, p_index: usize) -> Result<Vec<usize>, Error> {
    let mut scratch = SeparationScratch::new();
    let mut lp_tests = 0u64;
    inversion_method_inner(set, p_index, DEFAULT_TOLERANCE, &mut scratch, &mut lp_tests)
}

fn inversion_method_inner(
    set: &LabeledPointSet,
    p_index: usize,
    tolerance: f64,
    scratch: &mut SeparationScratch,
    lp_tests: &mut u64,
) -> Result<Vec<usize>, Error> {
    let inverted = build_inverted_set(set, p_index, INVERSION_RADIUS)?;
    if inverted.is_empty() {
        return Ok(Vec::new());
    }
    let hull = extreme_points_flat(
        inverted.full_coords(),
        inverted.dim(),
        tolerance,
        scratch,
        lp_tests,
    );
    // The center sits at position `len()`; hull membership of the center
    // does not make it a neighbor of itself.
    let mut out: Vec<usize> = hull
        .into_iter()
        .filter(|&idx| idx < inverted.len())
        .map(|idx| inverted.origin_of(idx))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Finds the exact border set starting from an arbitrary seed point.
///
/// Worklist semantics: the seed is processed first; every point reported
/// by an inversion call joins the result and, when seen for the first
/// time, the worklist (FIFO). The seed itself appears in the result only
/// if some other point reports it.
pub fn find_border_points(
    set: &LabeledPointSet,
    seed_index: usize,
) -> Result<BorderResult, Error> {
    find_border_points_with_tolerance(set, seed_index, DEFAULT_TOLERANCE)
}

/// [`find_border_points`] with an explicit hull-margin tolerance.
pub fn find_border_points_with_tolerance(
    set: &LabeledPointSet,
    seed_index: usize,
    tolerance: f64,
) -> Result<BorderResult, Error> {
    if seed_index >= set.len() {
        return Err(Error::IndexOutOfRange {
            index: seed_index,
            len: set.len(),
        });
    }
    run_worklist(set, &[seed_index], false, tolerance, Algorithm::Seeded)
}

/// The baseline search: seeds from the endpoints of every bichromatic
/// edge of the Euclidean minimum spanning tree, all of which are border
/// points and are included in the output.
pub fn find_border_points_baseline(set: &LabeledPointSet) -> Result<BorderResult, Error> {
    find_border_points_baseline_with_tolerance(set, DEFAULT_TOLERANCE)
}

/// [`find_border_points_baseline`] with an explicit hull-margin tolerance.
pub fn find_border_points_baseline_with_tolerance(
    set: &LabeledPointSet,
    tolerance: f64,
) -> Result<BorderResult, Error> {
    let start = Instant::now();
    if set.num_classes() < 2 {
        return Ok(BorderResult {
            border_indices: Vec::new(),
            inversion_calls: 0,
            lp_tests: 0,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            algorithm: Algorithm::MstBaseline,
        });
    }
    let seeds = mst_bichromatic_seed(set);
    let mut result = run_worklist(set, &seeds, true, tolerance, Algorithm::MstBaseline)?;
    result.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(result)
}

fn run_worklist(
    set: &LabeledPointSet,
    initial: &[usize],
    include_initial: bool,
    tolerance: f64,
    algorithm: Algorithm,
) -> Result<BorderResult, Error> {
    let start = Instant::now();
    let n = set.len();
    let mut border = vec![false; n];
    let mut visited = vec![false; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &s in initial {
        if !visited[s] {
            visited[s] = true;
            queue.push_back(s);
        }
        if include_initial {
            border[s] = true;
        }
    }

    let mut scratch = SeparationScratch::new();
    let mut inversion_calls = 0u64;
    let mut lp_tests = 0u64;
    while let Some(p) = queue.pop_front() {
        inversion_calls += 1;
        let neighbors = inversion_method_inner(set, p, tolerance, &mut scratch, &mut lp_tests)?;
        for q in neighbors {
            border[q] = true;
            if !visited[q] {
                visited[q] = true;
                queue.push_back(q);
            }
        }
    }

    let border_indices: Vec<usize> = (0..n).filter(|&i| border[i]).collect();
    Ok(BorderResult {
        border_indices,
        inversion_calls,
        lp_tests,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        algorithm,
    })
}

/// Minimum spanning tree of the complete Euclidean graph, by dense Prim
/// in `O(n^2)` time. Weight ties are resolved toward the smaller vertex
/// index, so the tree is deterministic.
pub fn euclidean_mst(set: &LabeledPointSet) -> EdgeList {
    let n = set.len();
    let mut in_tree = vec![false; n];
    let mut key = vec![f64::INFINITY; n];
    let mut parent = vec![usize::MAX; n];
    key[0] = 0.0;

    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for _ in 0..n {
        let mut v = usize::MAX;
        let mut best = f64::INFINITY;
        for u in 0..n {
            if !in_tree[u] && key[u] < best {
                best = key[u];
                v = u;
            }
        }
        in_tree[v] = true;
        if parent[v] != usize::MAX {
            let (a, b) = if parent[v] < v { (parent[v], v) } else { (v, parent[v]) };
            edges.push((a, b, key[v]));
        }
        let pv = set.point(v);
        for u in 0..n {
            if !in_tree[u] {
                let d2 = sqdist(pv, set.point(u));
                if d2 < key[u] {
                    key[u] = d2;
                    parent[u] = v;
                }
            }
        }
    }

    edges.sort_by_key(|e| (e.0, e.1));
    let weights = edges.iter().map(|e| e.2).collect();
    let edges = edges.into_iter().map(|e| (e.0, e.1)).collect();
    EdgeList { edges, weights }
}

/// Endpoints of the bichromatic MST edges, sorted and deduplicated.
/// Empty exactly when the set has a single class.
pub fn mst_bichromatic_seed(set: &LabeledPointSet) -> Vec<usize> {
    let mst = euclidean_mst(set);
    let mut out: Vec<usize> = mst
        .edges
        .iter()
        .filter(|&&(i, j)| set.class_id(i) != set.class_id(j))
        .flat_map(|&(i, j)| [i, j])
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::oracle::brute_force_border;
    use proptest::prelude::*;

    fn set(points: &[(&[f64], &str)]) -> LabeledPointSet {
        let (ps, ls): (Vec<_>, Vec<_>) = points
            .iter()
            .map(|(c, l)| (Point::new(c.to_vec()).unwrap(), l.to_string()))
            .unzip();
        LabeledPointSet::new(ps, ls).unwrap()
    }

    fn collinear4() -> LabeledPointSet {
        set(&[
            (&[0.0, 0.0], "red"),
            (&[1.0, 0.0], "red"),
            (&[5.0, 0.0], "blue"),
            (&[6.0, 0.0], "blue"),
        ])
    }

    #[test]
    fn inversion_method_two_points() {
        let s = set(&[(&[0.0, 0.0], "red"), (&[1.0, 0.0], "blue")]);
        assert_eq!(inversion_method(&s, 0).unwrap(), vec![1]);
        assert_eq!(inversion_method(&s, 1).unwrap(), vec![0]);
    }

    #[test]
    fn inversion_method_drops_dominated_point() {
        let s = set(&[
            (&[0.0, 0.0], "red"),
            (&[2.0, 0.0], "blue"),
            (&[0.0, 2.0], "blue"),
            (&[4.0, 4.0], "blue"),
        ]);
        // (4,4) inverts to (0.125, 0.125), inside the hull of the other
        // images and the center.
        assert_eq!(inversion_method(&s, 0).unwrap(), vec![1, 2]);
    }

    #[test]
    fn inversion_method_single_class_empty() {
        let s = set(&[(&[0.0, 0.0], "red"), (&[3.0, 0.0], "red")]);
        assert_eq!(inversion_method(&s, 0).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn triangle_all_border_any_seed() {
        let s = set(&[
            (&[0.0, 0.0], "red"),
            (&[4.0, 0.0], "red"),
            (&[2.0, 2.0], "blue"),
        ]);
        for seed in 0..3 {
            let res = find_border_points(&s, seed).unwrap();
            assert_eq!(res.border_indices, vec![0, 1, 2], "seed {seed}");
        }
    }

    #[test]
    fn collinear_inner_pair_only() {
        let s = collinear4();
        let res = find_border_points(&s, 0).unwrap();
        assert_eq!(res.border_indices, vec![1, 2]);
        // Seed 0 is not a border point here, so it was the extra visit.
        assert_eq!(res.inversion_calls, res.k() as u64 + 1);
    }

    #[test]
    fn single_class_one_call() {
        let s = set(&[(&[0.0, 0.0], "red"), (&[1.0, 1.0], "red")]);
        let res = find_border_points(&s, 0).unwrap();
        assert!(res.border_indices.is_empty());
        assert_eq!(res.inversion_calls, 1);
    }

    #[test]
    fn seed_out_of_range() {
        let s = collinear4();
        assert!(matches!(
            find_border_points(&s, 99),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn mst_of_collinear_points_is_the_path() {
        let s = collinear4();
        let mst = euclidean_mst(&s);
        assert_eq!(mst.edges, vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(mst.weights, vec![1.0, 16.0, 1.0]);
    }

    // Brute-force spanning-tree oracle: total weight of the MST by trying
    // every edge subset of size n-1.
    fn min_spanning_weight(s: &LabeledPointSet) -> f64 {
        let n = s.len();
        let all: Vec<(usize, usize, f64)> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| (i, j, sqdist(s.point(i), s.point(j))))
            .collect();
        let m = all.len();
        let mut best = f64::INFINITY;
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as usize != n - 1 {
                continue;
            }
            let mut dsu: Vec<usize> = (0..n).collect();
            fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
                if dsu[x] != x {
                    let r = find(dsu, dsu[x]);
                    dsu[x] = r;
                }
                dsu[x]
            }
            let mut weight = 0.0;
            let mut joined = 0;
            for (e, &(i, j, w)) in all.iter().enumerate() {
                if mask & (1 << e) != 0 {
                    let (ri, rj) = (find(&mut dsu, i), find(&mut dsu, j));
                    if ri != rj {
                        dsu[ri] = rj;
                        joined += 1;
                    }
                    weight += w;
                }
            }
            if joined == n - 1 {
                best = best.min(weight);
            }
        }
        best
    }

    #[test]
    fn mst_weight_matches_exhaustive_enumeration() {
        let s = set(&[
            (&[0.0, 0.0], "a"),
            (&[3.0, 1.0], "a"),
            (&[1.0, 4.0], "b"),
            (&[5.0, 2.0], "b"),
            (&[2.0, 2.0], "a"),
        ]);
        let mst = euclidean_mst(&s);
        let total: f64 = mst.weights.iter().sum();
        assert!((total - min_spanning_weight(&s)).abs() < 1e-12);
        assert_eq!(mst.edges.len(), s.len() - 1);
    }

    #[test]
    fn mst_single_point() {
        let s = set(&[(&[1.0, 1.0], "a")]);
        let mst = euclidean_mst(&s);
        assert!(mst.edges.is_empty());
    }

    #[test]
    fn mst_two_points_single_edge() {
        let s = set(&[(&[0.0, 0.0], "a"), (&[1.0, 2.0], "b")]);
        let mst = euclidean_mst(&s);
        assert_eq!(mst.edges, vec![(0, 1)]);
        assert_eq!(mst.weights, vec![5.0]);
    }

    #[test]
    fn bichromatic_seed_examples() {
        let s = collinear4();
        assert_eq!(mst_bichromatic_seed(&s), vec![1, 2]);

        let two = set(&[(&[0.0], "a"), (&[1.0], "b")]);
        assert_eq!(mst_bichromatic_seed(&two), vec![0, 1]);

        let mono = set(&[(&[0.0], "a"), (&[1.0], "a"), (&[5.0], "a")]);
        assert!(mst_bichromatic_seed(&mono).is_empty());
    }

    #[test]
    fn baseline_matches_seeded() {
        let s = collinear4();
        let base = find_border_points_baseline(&s).unwrap();
        assert_eq!(base.border_indices, vec![1, 2]);
        let seeded = find_border_points(&s, 0).unwrap();
        assert_eq!(base.border_indices, seeded.border_indices);
    }

    #[test]
    fn baseline_two_points() {
        let s = set(&[(&[0.0, 1.0], "a"), (&[2.0, 0.0], "b")]);
        let res = find_border_points_baseline(&s).unwrap();
        assert_eq!(res.border_indices, vec![0, 1]);
    }

    #[test]
    fn baseline_single_class_immediate() {
        let s = set(&[(&[0.0], "a"), (&[1.0], "a")]);
        let res = find_border_points_baseline(&s).unwrap();
        assert!(res.border_indices.is_empty());
        assert_eq!(res.inversion_calls, 0);
    }

    fn lcg_set(seed: u64, n: usize, dim: usize, classes: usize) -> LabeledPointSet {
        let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(3);
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as f64 / (1u64 << 31) as f64 * 2.0 - 1.0
        };
        let points: Vec<Point> = (0..n)
            .map(|_| Point::new((0..dim).map(|_| next() * 10.0).collect()).unwrap())
            .collect();
        let labels: Vec<String> = (0..n).map(|i| format!("c{}", i % classes)).collect();
        LabeledPointSet::new(points, labels).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        // Soundness: everything the inversion method reports is in the
        // brute-force border set, from any center.
        #[test]
        fn inversion_reports_only_border_points(seed in 0u64..100) {
            let s = lcg_set(seed, 10, 2 + (seed % 3) as usize, 2 + (seed % 2) as usize);
            let truth = brute_force_border(&s).border_indices;
            for p in 0..s.len() {
                for q in inversion_method(&s, p).unwrap() {
                    prop_assert!(truth.contains(&q), "seed {}: {} not a border point", seed, q);
                }
            }
        }

        // Every seed reaches the same set, which is the brute-force one.
        #[test]
        fn seeded_search_is_exact_and_seed_invariant(seed in 0u64..50) {
            let s = lcg_set(seed.wrapping_add(77), 9, 2, 2);
            let truth = brute_force_border(&s).border_indices;
            for start in 0..s.len() {
                let res = find_border_points(&s, start).unwrap();
                prop_assert_eq!(&res.border_indices, &truth);
                prop_assert!(res.inversion_calls <= truth.len() as u64 + 1);
            }
            let base = find_border_points_baseline(&s).unwrap();
            prop_assert_eq!(&base.border_indices, &truth);
        }
    }
}
