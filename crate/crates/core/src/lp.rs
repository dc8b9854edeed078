//! Dense low-dimensional linear programs solved by Seidel's randomized
//! incremental algorithm.
//!
//! Maximizes `c . x` subject to rows `g . x <= h` and finite per-variable
//! bounds `lo <= x <= hi`. The bounds guarantee a bounded optimum, so the
//! only outcomes are an optimal vertex or infeasibility. Expected running
//! time is linear in the number of rows for fixed dimension.
//!
//! The constraint order is shuffled with a generator seeded from the
//! problem shape, so a given program is always solved identically.

/// Relative feasibility slack used by all internal comparisons.
const EPS_FEAS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum LpStatus {
    Optimal,
    Infeasible,
}

/// Reusable scratch buffers; one per recursion level plus the shuffle
/// order. Reusing a workspace across many solves avoids per-call
/// allocation in hot loops.
#[derive(Debug, Default)]
pub(crate) struct LpWorkspace {
    levels: Vec<Level>,
    /// Solution of the last successful `maximize` call.
    pub(crate) solution: Vec<f64>,
}

#[derive(Debug, Default)]
struct Level {
    order: Vec<u32>,
    sub_rows: Vec<f64>,
    sub_c: Vec<f64>,
    sub_lo: Vec<f64>,
    sub_hi: Vec<f64>,
    sub_x: Vec<f64>,
}

impl LpWorkspace {
    pub(crate) fn new() -> Self {
        LpWorkspace::default()
    }
}

#[inline]
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Maximize `c . x` subject to `rows` (flattened, `dims + 1` values per
/// row: coefficients then the right-hand side) and the bounds. On
/// `Optimal` the solution is left in `ws.solution`.
pub(crate) fn maximize(
    ws: &mut LpWorkspace,
    c: &[f64],
    lo: &[f64],
    hi: &[f64],
    rows: &[f64],
) -> LpStatus {
    let dims = c.len();
    debug_assert!(dims >= 1);
    debug_assert_eq!(lo.len(), dims);
    debug_assert_eq!(hi.len(), dims);
    debug_assert_eq!(rows.len() % (dims + 1), 0);

    if ws.levels.len() < dims {
        ws.levels.resize_with(dims, Level::default);
    }
    let m = rows.len() / (dims + 1);
    let mut rng = 0x8452_16D9_0C57_A1E5u64 ^ ((m as u64) << 24) ^ dims as u64;

    ws.solution.clear();
    ws.solution.resize(dims, 0.0);
    let mut levels = std::mem::take(&mut ws.levels);
    let status = solve(&mut levels, rows, c, lo, hi, &mut rng, &mut ws.solution);
    ws.levels = levels;
    status
}

/// Starting vertex of the bounding box: the corner maximizing `c`, with
/// zero-coefficient variables pulled toward 0.
fn corner(c: &[f64], lo: &[f64], hi: &[f64], x: &mut Vec<f64>) {
    x.clear();
    for l in 0..c.len() {
        x.push(if c[l] > 0.0 {
            hi[l]
        } else if c[l] < 0.0 {
            lo[l]
        } else {
            0.0f64.clamp(lo[l], hi[l])
        });
    }
}

fn solve(
    levels: &mut [Level],
    rows: &[f64],
    c: &[f64],
    lo: &[f64],
    hi: &[f64],
    rng: &mut u64,
    x_out: &mut Vec<f64>,
) -> LpStatus {
    let dims = c.len();
    let stride = dims + 1;
    let m = rows.len() / stride;

    if dims == 1 {
        return solve_interval(rows, c[0], lo[0], hi[0], x_out);
    }

    corner(c, lo, hi, x_out);

    let (level, rest) = levels.split_first_mut().expect("workspace depth");
    level.order.clear();
    level.order.extend(0..m as u32);
    for i in (1..m).rev() {
        let j = (splitmix64(rng) % (i as u64 + 1)) as usize;
        level.order.swap(i, j);
    }

    for step in 0..m {
        let ri = level.order[step] as usize;
        let row = &rows[ri * stride..(ri + 1) * stride];
        let (g, h) = (&row[..dims], row[dims]);

        let mut val = 0.0;
        let mut mag = h.abs();
        for (gl, xl) in g.iter().zip(x_out.iter()) {
            let t = gl * xl;
            val += t;
            mag += t.abs();
        }
        if val - h <= EPS_FEAS * mag {
            continue;
        }

        // The row is violated: if no point of the box can satisfy it the
        // program is infeasible; otherwise the optimum lies on its
        // hyperplane and we recurse with one variable eliminated.
        let mut min_val = 0.0;
        let mut pivot = 0;
        let mut pivot_abs = 0.0;
        for l in 0..dims {
            min_val += (g[l] * lo[l]).min(g[l] * hi[l]);
            if g[l].abs() > pivot_abs {
                pivot_abs = g[l].abs();
                pivot = l;
            }
        }
        if pivot_abs == 0.0 || min_val - h > EPS_FEAS * (mag + min_val.abs()) {
            return LpStatus::Infeasible;
        }

        let gp = g[pivot];
        let sub_dims = dims - 1;
        let sub_stride = sub_dims + 1;

        level.sub_c.clear();
        level.sub_lo.clear();
        level.sub_hi.clear();
        for l in 0..dims {
            if l == pivot {
                continue;
            }
            level.sub_c.push(c[l] - c[pivot] * g[l] / gp);
            level.sub_lo.push(lo[l]);
            level.sub_hi.push(hi[l]);
        }

        // Previously processed rows plus the eliminated variable's bounds.
        level.sub_rows.clear();
        level
            .sub_rows
            .reserve((step + 2) * sub_stride);
        for &prev in &level.order[..step] {
            let prow = &rows[prev as usize * stride..(prev as usize + 1) * stride];
            let ratio = prow[pivot] / gp;
            for l in 0..dims {
                if l == pivot {
                    continue;
                }
                level.sub_rows.push(prow[l] - ratio * g[l]);
            }
            level.sub_rows.push(prow[dims] - ratio * h);
        }
        for (bound_g, bound_h) in [(1.0, hi[pivot]), (-1.0, -lo[pivot])] {
            let ratio = bound_g / gp;
            for (l, gl) in g.iter().enumerate() {
                if l == pivot {
                    continue;
                }
                level.sub_rows.push(-ratio * gl);
            }
            level.sub_rows.push(bound_h - ratio * h);
        }

        let status = solve(
            rest,
            &level.sub_rows,
            &level.sub_c,
            &level.sub_lo,
            &level.sub_hi,
            rng,
            &mut level.sub_x,
        );
        if status == LpStatus::Infeasible {
            return LpStatus::Infeasible;
        }

        // Lift: recover the eliminated variable from the active row.
        let mut rest_dot = 0.0;
        let mut sub_it = level.sub_x.iter();
        for l in 0..dims {
            if l == pivot {
                continue;
            }
            let v = *sub_it.next().expect("subproblem solution length");
            x_out[l] = v;
            rest_dot += g[l] * v;
        }
        x_out[pivot] = (h - rest_dot) / gp;
    }

    LpStatus::Optimal
}

/// One-variable base case: clamp the interval with every row, then pick
/// the end favored by the objective.
fn solve_interval(rows: &[f64], c: f64, lo: f64, hi: f64, x_out: &mut Vec<f64>) -> LpStatus {
    let mut lo = lo;
    let mut hi = hi;
    for row in rows.chunks_exact(2) {
        let (g, h) = (row[0], row[1]);
        if g > 0.0 {
            hi = hi.min(h / g);
        } else if g < 0.0 {
            lo = lo.max(h / g);
        } else if h < -EPS_FEAS {
            return LpStatus::Infeasible;
        }
    }
    if lo > hi {
        if lo - hi > EPS_FEAS * (lo.abs() + hi.abs() + 1.0) {
            return LpStatus::Infeasible;
        }
        let mid = 0.5 * (lo + hi);
        lo = mid;
        hi = mid;
    }
    x_out.clear();
    x_out.push(if c > 0.0 {
        hi
    } else if c < 0.0 {
        lo
    } else {
        0.0f64.clamp(lo, hi)
    });
    LpStatus::Optimal
}
