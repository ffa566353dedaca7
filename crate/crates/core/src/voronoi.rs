//! Voronoi cells of packing centers by halfspace clipping, with the
//! containment check `voronoi(V, v) c B(v, 2)` that saturation guarantees.
//!
//! A cell is computed by clipping a seed cube of half-width 2.5 (strictly
//! larger than 2, so containment is a real assertion rather than an
//! artifact of the seed) against the bisector of every neighbor within
//! distance 8. Correctness of the finite realization is certified per
//! vertex: writing `rho` for the largest cell-vertex distance from the
//! owner, the cell equals the true Voronoi cell whenever every center
//! within `2 rho` of the owner was present, because any missing bisector
//! plane would sit at distance more than `rho` and miss the cell entirely.

use serde::Serialize;
use std::collections::BTreeMap;
use thiserror::Error;

use crate::geom::{ConvexPolytope, HalfSpace};
use crate::packing::Packing;
use crate::par;
use crate::GEOM_TOL;

/// Seed cube half-width for clipping.
const SEED_HALF_WIDTH: f64 = 2.5;

/// Bisector neighbor cutoff. Anything beyond 4 is redundant once the
/// containment check passes; 8 keeps a wide correctness margin cheaply.
const BISECTOR_CUTOFF: f64 = 8.0;

#[derive(Debug, Error)]
pub enum VoronoiError {
    /// The owner sits too close to the generation boundary for the cell to
    /// be certified complete.
    #[error("center {index} at distance {dist:.4} from origin needs neighbors beyond the generation radius {gen_radius}")]
    BoundaryVertex { index: usize, dist: f64, gen_radius: f64 },
    /// A cell vertex exceeds distance `2 + 1e-9` from its owner, which a
    /// saturated packing forbids.
    #[error("cell of center {index} reaches distance {dist:.6} > 2 from its owner; region not saturated")]
    ContainmentViolation { index: usize, dist: f64 },
}

/// A packing center's Voronoi cell with its volume.
#[derive(Debug, Clone)]
pub struct VoronoiCell {
    pub owner: usize,
    pub polytope: ConvexPolytope,
    pub volume: f64,
}

/// Voronoi cell of center `index`, certified complete and contained.
pub fn voronoi_cell(p: &Packing, index: usize) -> Result<VoronoiCell, VoronoiError> {
    let v = p.center(index);
    let mut poly = ConvexPolytope::cube(v, SEED_HALF_WIDTH);
    for n in p.neighbor_indices(v, BISECTOR_CUTOFF) {
        let w = p.center(n);
        let normal = w.sub(v);
        let offset = normal.dot(v.add(w).scale(0.5));
        poly = poly.clip_halfspace(HalfSpace::new(normal, offset));
    }
    let rho = poly.max_vertex_dist(v);
    let budget = p.gen_radius() - v.norm();
    if rho > 2.0 + GEOM_TOL {
        // Only a definitive violation when every neighbor that could have
        // trimmed the cell (within distance 4) was actually present.
        if budget >= 4.0 + 2.0 * GEOM_TOL {
            return Err(VoronoiError::ContainmentViolation { index, dist: rho });
        }
        return Err(VoronoiError::BoundaryVertex {
            index,
            dist: v.norm(),
            gen_radius: p.gen_radius(),
        });
    }
    if 2.0 * rho > budget + 1e-12 {
        return Err(VoronoiError::BoundaryVertex {
            index,
            dist: v.norm(),
            gen_radius: p.gen_radius(),
        });
    }
    let volume = poly.volume();
    Ok(VoronoiCell { owner: index, polytope: poly, volume })
}

/// Summary statistics of a batch of cell volumes.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VolumeStats {
    pub count: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

impl VolumeStats {
    pub fn from_values(values: impl IntoIterator<Item = f64>) -> Option<VolumeStats> {
        let mut count = 0usize;
        let (mut min, mut max, mut sum) = (f64::INFINITY, f64::NEG_INFINITY, 0.0);
        for v in values {
            count += 1;
            min = min.min(v);
            max = max.max(v);
            sum += v;
        }
        (count > 0).then(|| VolumeStats { count, min, max, mean: sum / count as f64 })
    }
}

/// Voronoi volumes of all centers in `B(0, region_radius)`, keyed by
/// center index. Cells are computed independently (in parallel when the
/// `parallel` feature is on) and collected in index order.
pub fn voronoi_volumes(
    p: &Packing,
    region_radius: f64,
) -> Result<BTreeMap<usize, f64>, VoronoiError> {
    let interior = p.indices_within(region_radius);
    let cells = par::map_indexed(interior.len(), |k| {
        voronoi_cell(p, interior[k]).map(|c| (c.owner, c.volume))
    });
    cells.into_iter().collect()
}
