//! Output-sensitive enumeration of convex hull vertices in fixed
//! dimension.
//!
//! A candidate point is tested against the set of already confirmed
//! vertices with a small linear program; when it separates, the point of
//! the input furthest along the separating direction is itself a vertex
//! and gets confirmed. Every confirmation either certifies the candidate
//! or grows the confirmed set, so the total number of separation tests is
//! at most `n + h` for `h` hull vertices.

use crate::error::Error;
use crate::geometry::Point;
use crate::lp::{maximize, LpStatus, LpWorkspace};

/// Outcome of a point-vs-hull separation test.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparationResult {
    pub separable: bool,
    /// The separating direction when separable (box-normalized, each
    /// component in `[-1, 1]`).
    pub direction: Option<Vec<f64>>,
    /// Optimal margin of the separation program.
    pub margin: f64,
}

/// Scratch state reused across many separation tests.
pub(crate) struct SeparationScratch {
    pub(crate) ws: LpWorkspace,
    rows: Vec<f64>,
    c: Vec<f64>,
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl SeparationScratch {
    pub(crate) fn new() -> Self {
        SeparationScratch {
            ws: LpWorkspace::new(),
            rows: Vec::new(),
            c: Vec::new(),
            lo: Vec::new(),
            hi: Vec::new(),
        }
    }
}

/// Decides whether `q` lies strictly outside the convex hull of `hull`.
///
/// Solves `max t` subject to `a . (q - h) >= t` for every hull point and
/// `|a_i| <= 1`; the point separates iff the optimum exceeds `tolerance`
/// (an absolute margin threshold). An empty hull separates by convention
/// with the first basis vector as direction.
pub fn separate_from_hull(
    q: &Point,
    hull: &[Point],
    tolerance: f64,
) -> Result<SeparationResult, Error> {
    let dim = q.dim();
    for h in hull {
        if h.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: h.dim(),
            });
        }
    }
    let mut scratch = SeparationScratch::new();
    let mut flat = Vec::with_capacity(hull.len() * dim);
    for h in hull {
        flat.extend_from_slice(h.coords());
    }
    let hull_idx: Vec<u32> = (0..hull.len() as u32).collect();
    let (separable, margin) = separate_indexed(
        &flat,
        dim,
        q.coords(),
        &hull_idx,
        tolerance,
        &mut scratch,
    );
    let direction = if separable {
        if hull.is_empty() {
            let mut e1 = vec![0.0; dim];
            e1[0] = 1.0;
            Some(e1)
        } else {
            Some(scratch.ws.solution[..dim].to_vec())
        }
    } else {
        None
    };
    Ok(SeparationResult {
        separable,
        direction,
        margin,
    })
}

/// Core separation test over a flat coordinate buffer. `hull` holds
/// indices into `coords`. On a separable outcome with a nonempty hull the
/// direction is left in `scratch.ws.solution[..dim]`.
pub(crate) fn separate_indexed(
    coords: &[f64],
    dim: usize,
    q: &[f64],
    hull: &[u32],
    tolerance: f64,
    scratch: &mut SeparationScratch,
) -> (bool, f64) {
    if hull.is_empty() {
        return (true, f64::INFINITY);
    }

    // Variables: a_0..a_{d-1}, then t. Rows: t - a.(q - h) <= 0.
    let vars = dim + 1;
    let mut t_cap = 1.0f64;
    scratch.rows.clear();
    for &hidx in hull {
        let h = &coords[hidx as usize * dim..(hidx as usize + 1) * dim];
        let mut row_mag = 0.0;
        for (qc, hc) in q.iter().zip(h) {
            let diff = qc - hc;
            scratch.rows.push(-diff);
            row_mag += diff.abs();
        }
        scratch.rows.push(1.0); // coefficient of t
        scratch.rows.push(0.0); // rhs
        t_cap = t_cap.max(2.0 * row_mag);
    }

    scratch.c.clear();
    scratch.c.resize(vars, 0.0);
    scratch.c[dim] = 1.0;
    scratch.lo.clear();
    scratch.lo.resize(dim, -1.0);
    scratch.lo.push(-t_cap);
    scratch.hi.clear();
    scratch.hi.resize(dim, 1.0);
    scratch.hi.push(t_cap);

    // a = 0, t = -t_cap is always feasible, so the program is optimal.
    let status = maximize(
        &mut scratch.ws,
        &scratch.c,
        &scratch.lo,
        &scratch.hi,
        &scratch.rows,
    );
    debug_assert_eq!(status, LpStatus::Optimal);
    let margin = scratch.ws.solution[dim];
    (margin > tolerance, margin)
}

/// Indices of the convex hull vertices of `points`, found output
/// sensitively. `tolerance` is the relative margin threshold; it is
/// scaled by the largest absolute coordinate of the input.
pub fn extreme_points(points: &[Point], tolerance: f64) -> Result<Vec<usize>, Error> {
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    let dim = points[0].dim();
    let mut flat = Vec::with_capacity(points.len() * dim);
    for p in points {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.dim(),
            });
        }
        flat.extend_from_slice(p.coords());
    }
    let mut scratch = SeparationScratch::new();
    let mut lp_tests = 0u64;
    Ok(extreme_points_flat(
        &flat,
        dim,
        tolerance,
        &mut scratch,
        &mut lp_tests,
    ))
}

/// Lexicographic comparison of two points, used to break argmax ties so
/// the confirmed point is always a true vertex.
#[inline]
fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

/// Flat-buffer implementation of [`extreme_points`]; increments
/// `lp_tests` once per separation test.
pub(crate) fn extreme_points_flat(
    coords: &[f64],
    dim: usize,
    tolerance: f64,
    scratch: &mut SeparationScratch,
    lp_tests: &mut u64,
) -> Vec<usize> {
    let n = coords.len() / dim;
    debug_assert!(n >= 1);
    let scale = coords.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let abs_tol = tolerance * scale;

    let mut confirmed: Vec<u32> = Vec::new();
    let mut in_hull = vec![false; n];

    for cand in 0..n {
        if in_hull[cand] {
            continue;
        }
        let q = &coords[cand * dim..(cand + 1) * dim];
        loop {
            *lp_tests += 1;
            let (separable, _margin) =
                separate_indexed(coords, dim, q, &confirmed, abs_tol, scratch);
            if !separable {
                break;
            }

            // Furthest input point along the separating direction; ties
            // broken toward the lexicographically largest coordinates.
            let winner = if confirmed.is_empty() {
                let mut best = 0usize;
                for s in 1..n {
                    let sc = &coords[s * dim..(s + 1) * dim];
                    if lex_less(&coords[best * dim..(best + 1) * dim], sc) {
                        best = s;
                    }
                }
                best
            } else {
                let a = &scratch.ws.solution[..dim];
                let mut best = 0usize;
                let mut best_dot = f64::NEG_INFINITY;
                for s in 0..n {
                    let sc = &coords[s * dim..(s + 1) * dim];
                    let dot: f64 = a.iter().zip(sc).map(|(ai, ci)| ai * ci).sum();
                    if dot > best_dot
                        || (dot == best_dot
                            && lex_less(&coords[best * dim..(best + 1) * dim], sc))
                    {
                        best_dot = dot;
                        best = s;
                    }
                }
                best
            };

            if in_hull[winner] {
                // Unreachable when the margin clears the tolerance; stop
                // rather than loop.
                break;
            }
            in_hull[winner] = true;
            confirmed.push(winner as u32);
            if winner == cand {
                break;
            }
        }
    }

    let mut out: Vec<usize> = confirmed.into_iter().map(|i| i as usize).collect();
    out.sort_unstable();
    out
}
