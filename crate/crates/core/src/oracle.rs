//! Brute-force ground truth for border points.
//!
//! Two points are Delaunay neighbors exactly when some sphere passes
//! through both with no point of the set strictly inside. Writing the
//! center as `x`, the condition "`p_i` is at least as close to `x` as
//! `p_s`" linearizes to `2 (p_s - p_i) . x <= |p_s|^2 - |p_i|^2`, so
//! adjacency is an LP feasibility question in `d` variables. The test
//! here parameterizes the bisector of the pair, maximizes the minimum
//! clearance over all other points, and returns the center as a
//! checkable [`Certificate`].

use crate::error::Error;
use crate::geometry::{sqdist, LabeledPointSet, Point, DEFAULT_TOLERANCE};
use crate::lp::{maximize, LpStatus, LpWorkspace};

/// Half-width of the search box for empty-ball centers, as a multiple of
/// the instance diameter. Walls further out than this are treated as
/// unbounded and caught by the recession test.
const CENTER_BOX_FACTOR: f64 = 1e7;

/// A witness that points `i` and `j` define a wall: a center equidistant
/// to both with no point of the set closer.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub i: usize,
    pub j: usize,
    pub center: Point,
    pub radius: f64,
}

/// Scratch buffers shared across many adjacency tests.
struct OracleScratch {
    ws: LpWorkspace,
    basis: Vec<f64>,   // (d-1) x d orthonormal basis of the bisector
    rows: Vec<f64>,    // projected inequality rows: g . y <= b
    lp_rows: Vec<f64>, // assembled LP rows
    c: Vec<f64>,
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl OracleScratch {
    fn new() -> Self {
        OracleScratch {
            ws: LpWorkspace::new(),
            basis: Vec::new(),
            rows: Vec::new(),
            lp_rows: Vec::new(),
            c: Vec::new(),
            lo: Vec::new(),
            hi: Vec::new(),
        }
    }
}

/// Decides whether `i` and `j` are Delaunay neighbors in the set; the
/// test is purely geometric and ignores labels. Returns a certificate
/// with an empty-ball center on success.
pub fn is_delaunay_neighbor(
    set: &LabeledPointSet,
    i: usize,
    j: usize,
) -> Option<Certificate> {
    let active: Vec<usize> = (0..set.len()).collect();
    let mut scratch = OracleScratch::new();
    delaunay_within(set, &active, i, j, set.diameter(), &mut scratch)
}

/// Delaunay adjacency of `i` and `j` restricted to the subset `active`
/// of the set (both endpoints must be listed in `active`).
pub fn is_delaunay_neighbor_within(
    set: &LabeledPointSet,
    active: &[usize],
    i: usize,
    j: usize,
) -> Option<Certificate> {
    let mut scratch = OracleScratch::new();
    delaunay_within(set, active, i, j, set.diameter(), &mut scratch)
}

/// Delaunay neighbors of `p` among `active`, by exhaustive pairwise
/// testing. Mirrors the contract of the inversion method: `p` itself is
/// not reported.
pub fn delaunay_neighbors_within(
    set: &LabeledPointSet,
    active: &[usize],
    p: usize,
) -> Vec<usize> {
    let mut scratch = OracleScratch::new();
    let diam = set.diameter();
    let mut out = Vec::new();
    for &q in active {
        if q == p {
            continue;
        }
        if delaunay_within(set, active, p, q, diam, &mut scratch).is_some() {
            out.push(q);
        }
    }
    out.sort_unstable();
    out
}

fn delaunay_within(
    set: &LabeledPointSet,
    active: &[usize],
    i: usize,
    j: usize,
    diam: f64,
    scratch: &mut OracleScratch,
) -> Option<Certificate> {
    assert!(i != j, "a pair of distinct points is required");
    assert!(i < set.len() && j < set.len(), "pair indices out of range");
    debug_assert!(active.contains(&i) && active.contains(&j));

    let dim = set.dim();
    let pi = set.point(i);
    let pj = set.point(j);
    let diam = diam.max(f64::MIN_POSITIVE);
    let feas_tol = DEFAULT_TOLERANCE * diam;

    // Orthonormal basis of the bisector hyperplane's tangent space.
    let v: Vec<f64> = pj.iter().zip(pi).map(|(a, b)| a - b).collect();
    let vnorm = sqdist(pi, pj).sqrt();
    debug_assert!(vnorm > 0.0, "distinct points share coordinates");
    let tangent_dims = dim - 1;
    build_orthonormal_complement(&v, vnorm, dim, &mut scratch.basis);

    // Constraint rows in bisector coordinates. With `x = m + B y` for the
    // midpoint `m`, "`p_i` at least as close as `p_s`" becomes
    // `g_s . y <= b_s` with unit-norm normals, so slack is in distance
    // units.
    scratch.rows.clear();
    let mut num_rows = 0usize;
    for &s in active {
        if s == i || s == j {
            continue;
        }
        let ps = set.point(s);
        let usnorm = sqdist(pi, ps).sqrt();
        debug_assert!(usnorm > 0.0);
        let mut dot_mv = 0.0; // n_s . (v/2)
        for l in 0..dim {
            let n_l = (ps[l] - pi[l]) / usnorm;
            dot_mv += n_l * v[l] * 0.5;
            // defer basis projection until all components known
            scratch.rows.push(n_l);
        }
        let b = usnorm * 0.5 - dot_mv;
        scratch.rows.push(b);
        num_rows += 1;
    }
    // Project the raw normals onto the tangent basis in place:
    // row layout becomes [g_0..g_{t-1}, b] with t = tangent_dims.
    let mut projected = Vec::with_capacity(num_rows * (tangent_dims + 1));
    for r in 0..num_rows {
        let row = &scratch.rows[r * (dim + 1)..(r + 1) * (dim + 1)];
        for t in 0..tangent_dims {
            let basis_t = &scratch.basis[t * dim..(t + 1) * dim];
            let g: f64 = basis_t.iter().zip(&row[..dim]).map(|(a, b)| a * b).sum();
            projected.push(g);
        }
        projected.push(row[dim]);
    }

    // Recession test: if every clearance can grow without bound along
    // some tangent direction, the wall is unbounded and the pair is
    // adjacent with centers arbitrarily far out.
    if tangent_dims > 0 {
        let vars = tangent_dims + 1; // direction components, then rho
        scratch.lp_rows.clear();
        for r in 0..num_rows {
            let row = &projected[r * (tangent_dims + 1)..(r + 1) * (tangent_dims + 1)];
            scratch.lp_rows.extend_from_slice(&row[..tangent_dims]);
            scratch.lp_rows.push(1.0); // + rho
            scratch.lp_rows.push(0.0); // <= 0
        }
        scratch.c.clear();
        scratch.c.resize(vars, 0.0);
        scratch.c[tangent_dims] = 1.0;
        scratch.lo.clear();
        scratch.lo.resize(tangent_dims, -1.0);
        scratch.lo.push(-1.0);
        scratch.hi.clear();
        scratch.hi.resize(tangent_dims, 1.0);
        scratch.hi.push(1.0);
        let status = maximize(&mut scratch.ws, &scratch.c, &scratch.lo, &scratch.hi, &scratch.lp_rows);
        debug_assert_eq!(status, LpStatus::Optimal);
        let rho = scratch.ws.solution[tangent_dims];
        if rho > DEFAULT_TOLERANCE {
            let dir: Vec<f64> = scratch.ws.solution[..tangent_dims].to_vec();
            return Some(certificate_along_ray(
                i, j, pi, &v, &scratch.basis, &projected, num_rows, tangent_dims, &dir, diam,
            ));
        }
    }

    // Bounded case: maximize the minimum clearance over the box.
    let box_w = CENTER_BOX_FACTOR * diam;
    let delta_cap = (dim as f64 + 2.0) * box_w;
    let vars = tangent_dims + 1; // y components, then delta
    scratch.lp_rows.clear();
    for r in 0..num_rows {
        let row = &projected[r * (tangent_dims + 1)..(r + 1) * (tangent_dims + 1)];
        scratch.lp_rows.extend_from_slice(&row[..tangent_dims]);
        scratch.lp_rows.push(1.0); // + delta
        scratch.lp_rows.push(row[tangent_dims]); // <= b_s
    }
    scratch.c.clear();
    scratch.c.resize(vars, 0.0);
    scratch.c[tangent_dims] = 1.0;
    scratch.lo.clear();
    scratch.lo.resize(tangent_dims, -box_w);
    scratch.lo.push(-delta_cap);
    scratch.hi.clear();
    scratch.hi.resize(tangent_dims, box_w);
    scratch.hi.push(delta_cap);
    let status = maximize(&mut scratch.ws, &scratch.c, &scratch.lo, &scratch.hi, &scratch.lp_rows);
    debug_assert_eq!(status, LpStatus::Optimal);
    let delta = scratch.ws.solution[tangent_dims];
    if delta < -feas_tol {
        return None;
    }
    let mut y = scratch.ws.solution[..tangent_dims].to_vec();

    // Recenter: among centers achieving (almost) the optimal clearance,
    // take one of minimal infinity norm so certificates hug the data.
    if tangent_dims > 0 {
        let delta_target = delta - 0.5 * feas_tol;
        let vars = tangent_dims + 1; // y components, then u >= |y|_inf
        scratch.lp_rows.clear();
        for r in 0..num_rows {
            let row = &projected[r * (tangent_dims + 1)..(r + 1) * (tangent_dims + 1)];
            scratch.lp_rows.extend_from_slice(&row[..tangent_dims]);
            scratch.lp_rows.push(0.0);
            scratch.lp_rows.push(row[tangent_dims] - delta_target);
        }
        for t in 0..tangent_dims {
            for sign in [1.0, -1.0] {
                for l in 0..tangent_dims {
                    scratch.lp_rows.push(if l == t { sign } else { 0.0 });
                }
                scratch.lp_rows.push(-1.0); // - u
                scratch.lp_rows.push(0.0);
            }
        }
        scratch.c.clear();
        scratch.c.resize(vars, 0.0);
        scratch.c[tangent_dims] = -1.0;
        scratch.lo.clear();
        scratch.lo.resize(tangent_dims, -box_w);
        scratch.lo.push(0.0);
        scratch.hi.clear();
        scratch.hi.resize(tangent_dims, box_w);
        scratch.hi.push(box_w);
        if maximize(&mut scratch.ws, &scratch.c, &scratch.lo, &scratch.hi, &scratch.lp_rows)
            == LpStatus::Optimal
        {
            y.copy_from_slice(&scratch.ws.solution[..tangent_dims]);
        }
    }

    let center = lift_center(pi, &v, &scratch.basis, &y, tangent_dims);
    let radius = sqdist(&center, pi).sqrt();
    Some(Certificate {
        i,
        j,
        center: Point::new(center).expect("finite center"),
        radius,
    })
}

/// Center from bisector coordinates: `p_i + v/2 + B^T y`.
fn lift_center(pi: &[f64], v: &[f64], basis: &[f64], y: &[f64], tangent_dims: usize) -> Vec<f64> {
    let dim = pi.len();
    let mut center: Vec<f64> = pi.iter().zip(v).map(|(p, vc)| p + 0.5 * vc).collect();
    for t in 0..tangent_dims {
        let basis_t = &basis[t * dim..(t + 1) * dim];
        for l in 0..dim {
            center[l] += y[t] * basis_t[l];
        }
    }
    center
}

/// Witness for an unbounded wall: walk from the midpoint along the
/// receding direction until every clearance is comfortably positive.
#[allow(clippy::too_many_arguments)]
fn certificate_along_ray(
    i: usize,
    j: usize,
    pi: &[f64],
    v: &[f64],
    basis: &[f64],
    projected: &[f64],
    num_rows: usize,
    tangent_dims: usize,
    dir: &[f64],
    diam: f64,
) -> Certificate {
    let target = diam; // clearance to secure at the final center
    let mut t_needed = 0.0f64;
    for r in 0..num_rows {
        let row = &projected[r * (tangent_dims + 1)..(r + 1) * (tangent_dims + 1)];
        let slack0 = row[tangent_dims];
        let rate: f64 = -row[..tangent_dims]
            .iter()
            .zip(dir)
            .map(|(g, d)| g * d)
            .sum::<f64>();
        debug_assert!(rate > 0.0);
        if slack0 < target {
            t_needed = t_needed.max((target - slack0) / rate);
        }
    }
    let y: Vec<f64> = dir.iter().map(|d| d * t_needed).collect();
    let center = lift_center(pi, v, basis, &y, tangent_dims);
    let radius = sqdist(&center, pi).sqrt();
    Certificate {
        i,
        j,
        center: Point::new(center).expect("finite center"),
        radius,
    }
}

/// Fills `basis` with `dim - 1` orthonormal rows spanning the complement
/// of `v` (modified Gram-Schmidt over the coordinate axes).
fn build_orthonormal_complement(v: &[f64], vnorm: f64, dim: usize, basis: &mut Vec<f64>) {
    basis.clear();
    let unit: Vec<f64> = v.iter().map(|c| c / vnorm).collect();
    let mut count = 0;
    for axis in 0..dim {
        if count == dim - 1 {
            break;
        }
        let mut w = vec![0.0; dim];
        w[axis] = 1.0;
        let dot_u: f64 = unit.iter().zip(&w).map(|(a, b)| a * b).sum();
        for l in 0..dim {
            w[l] -= dot_u * unit[l];
        }
        for b in 0..count {
            let row = &basis[b * dim..(b + 1) * dim];
            let dot: f64 = row.iter().zip(&w).map(|(a, b)| a * b).sum();
            for l in 0..dim {
                w[l] -= dot * basis[b * dim + l];
            }
        }
        let norm: f64 = w.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > 1e-6 {
            for c in &w {
                basis.push(c / norm);
            }
            count += 1;
        }
    }
    debug_assert_eq!(count, dim - 1, "incomplete tangent basis");
}

/// The exact border set by exhaustive pair checking: every bichromatic
/// pair is tested for Delaunay adjacency, and endpoints of adjacent pairs
/// are border points. `O(n^2)` LP feasibility tests; intended for modest
/// instance sizes.
#[derive(Debug, Clone)]
pub struct BruteForceResult {
    /// Sorted border indices.
    pub border_indices: Vec<usize>,
    /// One certificate per border index, in the same order.
    pub certificates: Vec<Certificate>,
}

pub fn brute_force_border(set: &LabeledPointSet) -> BruteForceResult {
    let mut scratch = OracleScratch::new();
    let diam = set.diameter();
    let active: Vec<usize> = (0..set.len()).collect();
    let mut cert_of: std::collections::BTreeMap<usize, Certificate> =
        std::collections::BTreeMap::new();
    for i in 0..set.len() {
        for j in (i + 1)..set.len() {
            if set.class_id(i) == set.class_id(j) {
                continue;
            }
            if let Some(cert) = delaunay_within(set, &active, i, j, diam, &mut scratch) {
                cert_of.entry(i).or_insert_with(|| cert.clone());
                cert_of.entry(j).or_insert(cert);
            }
        }
    }
    let (border_indices, certificates) = cert_of.into_iter().unzip();
    BruteForceResult {
        border_indices,
        certificates,
    }
}

/// Re-checks a certificate against the set: the pair is bichromatic, the
/// center is equidistant to the pair, and no point of the set is closer
/// than the stated radius (all within the global relative tolerance).
pub fn verify_certificate(set: &LabeledPointSet, cert: &Certificate) -> bool {
    let n = set.len();
    if cert.i >= n || cert.j >= n || cert.i == cert.j {
        return false;
    }
    if set.class_id(cert.i) == set.class_id(cert.j) {
        return false;
    }
    if cert.center.dim() != set.dim() || !cert.radius.is_finite() || cert.radius < 0.0 {
        return false;
    }
    let c = cert.center.coords();
    let ri = sqdist(c, set.point(cert.i)).sqrt();
    let rj = sqdist(c, set.point(cert.j)).sqrt();
    let tol = DEFAULT_TOLERANCE * cert.radius;
    if (ri - rj).abs() > tol {
        return false;
    }
    if (0.5 * (ri + rj) - cert.radius).abs() > 2.0 * tol {
        return false;
    }
    for s in 0..n {
        if sqdist(c, set.point(s)).sqrt() < cert.radius - tol {
            return false;
        }
    }
    true
}

/// Nearest-neighbor classification of a query against the set.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification<'a> {
    pub label: &'a str,
    pub nearest_index: usize,
    pub nearest_dist: f64,
    /// Distance to the closest point of any other class; infinite for a
    /// single-class set. The gap to `nearest_dist` measures how far the
    /// query is from a decision boundary.
    pub rival_dist: f64,
}

pub fn nn_classify<'a>(set: &'a LabeledPointSet, q: &[f64]) -> Result<Classification<'a>, Error> {
    if q.len() != set.dim() {
        return Err(Error::DimensionMismatch {
            expected: set.dim(),
            found: q.len(),
        });
    }
    let mut best = 0usize;
    let mut best_d2 = f64::INFINITY;
    for i in 0..set.len() {
        let d2 = sqdist(q, set.point(i));
        if d2 < best_d2 {
            best_d2 = d2;
            best = i;
        }
    }
    let winner_class = set.class_id(best);
    let mut rival_d2 = f64::INFINITY;
    for i in 0..set.len() {
        if set.class_id(i) != winner_class {
            rival_d2 = rival_d2.min(sqdist(q, set.point(i)));
        }
    }
    Ok(Classification {
        label: set.label(best),
        nearest_index: best,
        nearest_dist: best_d2.sqrt(),
        rival_dist: rival_d2.sqrt(),
    })
}
