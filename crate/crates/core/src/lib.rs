//! Exact border-point computation for the nearest-neighbor classifier.
//!
//! A training point is a *border point* when some query in `R^d` would be
//! classified differently without it; equivalently, it is the endpoint of
//! a Voronoi wall between two classes (a bichromatic pair with an empty
//! ball through both points). Replacing a training set by its border
//! points shrinks it without changing a single nearest-neighbor decision.
//!
//! The crate provides:
//!
//! - [`search::find_border_points`] — output-sensitive search seeded from
//!   one arbitrary point, `O(n k^2)` for `k` border points;
//! - [`search::find_border_points_baseline`] — the same search seeded
//!   from the bichromatic edges of the Euclidean minimum spanning tree,
//!   `O(n^2 + n k^2)`;
//! - [`oracle`] — a brute-force ground truth built on LP feasibility
//!   tests, with verifiable empty-ball certificates;
//! - [`extreme`] — output-sensitive convex hull vertex enumeration, the
//!   engine behind the inversion method;
//! - [`datagen`] — deterministic synthetic datasets for tests and
//!   benchmarks, and [`mod@bench`] for scaling measurements.

pub mod bench;
pub mod datagen;
mod error;
pub mod extreme;
pub mod geometry;
mod lp;
pub mod oracle;
pub mod search;

pub use error::Error;
pub use geometry::{
    build_inverted_set, invert_around, squared_distance, InvertedSet, LabeledPointSet, Point,
    DEFAULT_TOLERANCE, MAX_DIM,
};
pub use search::{
    euclidean_mst, find_border_points, find_border_points_baseline,
    find_border_points_baseline_with_tolerance, find_border_points_with_tolerance,
    inversion_method, mst_bichromatic_seed, Algorithm, BorderResult, EdgeList,
};
