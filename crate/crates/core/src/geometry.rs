//! Points, labeled point sets and the sphere-inversion transform.
//!
//! A [`LabeledPointSet`] stores the training set: `n` points in `R^d`
//! together with one class label per point. Coordinates are kept in a
//! flat row-major buffer so the distance-heavy algorithms stay cache
//! friendly. All types are immutable after construction and all
//! operations are pure functions.

use std::collections::HashMap;

use crate::error::Error;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 16;

/// Global relative tolerance for geometric predicates.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A point in `R^d`. Coordinates are finite by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self, Error> {
        if coords.is_empty() || coords.len() > MAX_DIM {
            return Err(Error::InvalidDimension { dim: coords.len() });
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoordinate);
        }
        Ok(Point { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// Squared Euclidean distance between two points of equal dimension.
pub fn squared_distance(a: &[f64], b: &[f64]) -> Result<f64, Error> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(sqdist(a, b))
}

/// Unchecked squared distance; callers guarantee equal lengths.
#[inline]
pub(crate) fn sqdist(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = 0.0;
    for (x, y) in a.iter().zip(b) {
        let d = x - y;
        acc += d * d;
    }
    acc
}

#[inline]
pub(crate) fn max_abs(coords: &[f64]) -> f64 {
    coords.iter().fold(0.0f64, |m, c| m.max(c.abs()))
}

/// Inverts `q` around the sphere of the given radius centered at `p`:
/// the image lies on the ray from `p` through `q` at distance
/// `radius^2 / |q - p|`.
///
/// Fails with [`Error::CoincidentPoints`] when `q` is within the duplicate
/// tolerance of `p`; in the border-point pipeline that means two points of
/// different classes share a location and the training set is inconsistent.
pub fn invert_around(p: &Point, q: &Point, radius: f64) -> Result<Point, Error> {
    assert!(radius.is_finite() && radius > 0.0, "radius must be positive");
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    let mut out = Vec::with_capacity(p.dim());
    invert_into(p.coords(), q.coords(), radius * radius, &mut out)?;
    Ok(Point { coords: out })
}

/// Flat-buffer inversion; appends the image of `q` to `out`.
#[inline]
pub(crate) fn invert_into(
    p: &[f64],
    q: &[f64],
    radius_sq: f64,
    out: &mut Vec<f64>,
) -> Result<(), Error> {
    let d2 = sqdist(p, q);
    let scale = max_abs(p).max(max_abs(q));
    let tol = DEFAULT_TOLERANCE * scale;
    if d2 <= tol * tol {
        return Err(Error::CoincidentPoints);
    }
    let factor = radius_sq / d2;
    if !factor.is_finite() {
        return Err(Error::NonFiniteCoordinate);
    }
    for (pi, qi) in p.iter().zip(q) {
        out.push(pi + (qi - pi) * factor);
    }
    Ok(())
}

/// A labeled training set: points, class labels, and the partition of
/// point indices by class.
///
/// Exact duplicate rows with the same label are dropped at construction;
/// exact duplicates with different labels are rejected, since the
/// nearest-neighbor rule is undefined on them.
#[derive(Debug, Clone)]
pub struct LabeledPointSet {
    dim: usize,
    coords: Vec<f64>,
    class_of: Vec<u32>,
    class_names: Vec<String>,
    class_index: Vec<Vec<usize>>,
}

impl LabeledPointSet {
    pub fn new(points: Vec<Point>, labels: Vec<String>) -> Result<Self, Error> {
        if points.len() != labels.len() {
            return Err(Error::LengthMismatch {
                points: points.len(),
                labels: labels.len(),
            });
        }
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        let dim = points[0].dim();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidDimension { dim });
        }

        let mut coords = Vec::with_capacity(points.len() * dim);
        let mut class_of = Vec::with_capacity(points.len());
        let mut class_names: Vec<String> = Vec::new();
        let mut class_ids: HashMap<String, u32> = HashMap::new();
        // Exact-duplicate detection on coordinate bit patterns.
        let mut seen: HashMap<Vec<u64>, usize> = HashMap::new();

        for (row, (point, label)) in points.into_iter().zip(labels).enumerate() {
            if point.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: point.dim(),
                });
            }
            let key: Vec<u64> = point.coords().iter().map(|c| c.to_bits()).collect();
            let class = *class_ids.entry(label.clone()).or_insert_with(|| {
                class_names.push(label);
                (class_names.len() - 1) as u32
            });
            let idx = class_of.len();
            match seen.get(&key) {
                Some(&prev) if class_of[prev] == class => continue, // duplicate row, drop
                Some(&prev) => return Err(Error::DuplicateConflict { i: prev, j: row }),
                None => {
                    seen.insert(key, idx);
                }
            }
            coords.extend_from_slice(point.coords());
            class_of.push(class);
        }

        let mut class_index = vec![Vec::new(); class_names.len()];
        for (i, &c) in class_of.iter().enumerate() {
            class_index[c as usize].push(i);
        }

        Ok(LabeledPointSet {
            dim,
            coords,
            class_of,
            class_names,
            class_index,
        })
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty sets
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.class_names[self.class_of[i] as usize]
    }

    #[inline]
    pub fn class_id(&self, i: usize) -> u32 {
        self.class_of[i]
    }

    pub fn num_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn class_name(&self, class: u32) -> &str {
        &self.class_names[class as usize]
    }

    /// Indices of the points belonging to the given class.
    pub fn class_members(&self, class: u32) -> &[usize] {
        &self.class_index[class as usize]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    /// A new set made of the selected points (labels preserved).
    pub fn subset(&self, indices: &[usize]) -> Result<LabeledPointSet, Error> {
        let mut points = Vec::with_capacity(indices.len());
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= self.len() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: self.len(),
                });
            }
            points.push(Point {
                coords: self.point(i).to_vec(),
            });
            labels.push(self.label(i).to_string());
        }
        LabeledPointSet::new(points, labels)
    }

    /// Axis-aligned bounding box as (min, max) corner coordinates.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = self.point(0).to_vec();
        let mut hi = lo.clone();
        for p in self.points() {
            for ((l, h), &c) in lo.iter_mut().zip(hi.iter_mut()).zip(p) {
                *l = l.min(c);
                *h = h.max(c);
            }
        }
        (lo, hi)
    }

    /// Diagonal of the bounding box; the scale used by relative tolerances.
    pub fn diameter(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        sqdist(&lo, &hi).sqrt()
    }

    pub fn max_abs_coord(&self) -> f64 {
        max_abs(&self.coords)
    }
}

/// The inverted set `S_p`: images of all points of other classes under
/// inversion around point `p`, plus `p` itself, with back-references to
/// the original indices.
#[derive(Debug, Clone)]
pub struct InvertedSet {
    center_index: usize,
    radius: f64,
    dim: usize,
    /// Inverted images followed by the center coordinates.
    coords: Vec<f64>,
    origin_of: Vec<usize>,
    includes_center: bool,
}

impl InvertedSet {
    /// Number of inverted points (the center is not counted).
    pub fn len(&self) -> usize {
        self.origin_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.origin_of.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn center_index(&self) -> usize {
        self.center_index
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn includes_center(&self) -> bool {
        self.includes_center
    }

    /// The i-th inverted point.
    pub fn inv_point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    /// Original index in the parent set of the i-th inverted point.
    pub fn origin_of(&self, i: usize) -> usize {
        self.origin_of[i]
    }

    pub fn center(&self) -> &[f64] {
        let m = self.origin_of.len();
        &self.coords[m * self.dim..(m + 1) * self.dim]
    }

    /// Flat buffer of the full set `S_p` (inverted points, then the
    /// center) for hull computations.
    pub(crate) fn full_coords(&self) -> &[f64] {
        &self.coords
    }
}

/// Builds `S_p` for the point at `p_index`: every point whose class
/// differs from `p`'s is inverted around the sphere of the given radius
/// centered at `p`, and `p` itself joins the set.
pub fn build_inverted_set(
    set: &LabeledPointSet,
    p_index: usize,
    radius: f64,
) -> Result<InvertedSet, Error> {
    if p_index >= set.len() {
        return Err(Error::IndexOutOfRange {
            index: p_index,
            len: set.len(),
        });
    }
    assert!(radius.is_finite() && radius > 0.0, "radius must be positive");
    let dim = set.dim();
    let p = set.point(p_index);
    let p_class = set.class_id(p_index);
    let radius_sq = radius * radius;

    let mut coords = Vec::new();
    let mut origin_of = Vec::new();
    for q in 0..set.len() {
        if set.class_id(q) == p_class {
            continue;
        }
        invert_into(p, set.point(q), radius_sq, &mut coords)?;
        origin_of.push(q);
    }
    coords.extend_from_slice(p);

    Ok(InvertedSet {
        center_index: p_index,
        radius,
        dim,
        coords,
        origin_of,
        includes_center: true,
    })
}
