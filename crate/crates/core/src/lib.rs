//! Measurement and certification toolkit for saturated unit-sphere packings.
//!
//! The crate builds finite packings (FCC, simple cubic, random sequential
//! adsorption with a saturation repair sweep), computes exact container
//! densities, Voronoi cell volumes, the score function `G(u, f)` and the
//! cell score `gamma(X, f)` on empty-circumball tetrahedra, and re-derives
//! the full inequality chain behind the packing-independent density bound
//! `pi/sqrt(18) + 24373/r` with outward-rounded interval arithmetic.
//!
//! All per-vertex and per-cell computations are pure functions over an
//! immutable [`packing::Packing`]; the hot scans run on rayon when the
//! `parallel` feature (default) is enabled and fall back to plain
//! sequential iterators otherwise. Results are identical either way:
//! every parallel map collects in index order before any reduction.

pub mod audit;
pub mod cells;
pub mod geom;
pub mod grid;
pub mod packing;
pub mod par;
pub mod score;
pub mod voronoi;

/// Global degeneracy tolerance, in units of the sphere radius.
///
/// Geometric predicates (affine independence, face planarity, containment
/// slack) all compare scale-normalized quantities against this value.
pub const GEOM_TOL: f64 = 1e-9;
