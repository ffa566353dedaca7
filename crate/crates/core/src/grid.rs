//! Uniform-grid fixed-radius neighbor index with cell size 2.
//!
//! Cell size matches the minimum center separation of a unit-sphere
//! packing, so each cell holds O(1) centers and a radius-`r` query scans
//! `ceil(r/2)` cell layers around the query point.

use std::collections::HashMap;

use crate::geom::Point3;

const CELL: f64 = 2.0;

#[derive(Debug, Clone, Default)]
pub struct GridIndex {
    cells: HashMap<(i64, i64, i64), Vec<usize>>,
    points: Vec<Point3>,
}

fn key_of(p: Point3) -> (i64, i64, i64) {
    (
        (p.x / CELL).floor() as i64,
        (p.y / CELL).floor() as i64,
        (p.z / CELL).floor() as i64,
    )
}

impl GridIndex {
    pub fn new() -> Self {
        GridIndex::default()
    }

    pub fn build(points: &[Point3]) -> Self {
        let mut g = GridIndex::new();
        for &p in points {
            g.insert(p);
        }
        g
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> Point3 {
        self.points[i]
    }

    pub fn points(&self) -> &[Point3] {
        &self.points
    }

    /// Appends a point, returning its index.
    pub fn insert(&mut self, p: Point3) -> usize {
        let idx = self.points.len();
        self.points.push(p);
        self.cells.entry(key_of(p)).or_default().push(idx);
        idx
    }

    /// Indices of all stored points within `radius` of `q` (inclusive),
    /// sorted ascending. The query point itself is returned too when it is
    /// a stored point; callers exclude it as needed.
    pub fn within(&self, q: Point3, radius: f64) -> Vec<usize> {
        let reach = (radius / CELL).ceil() as i64;
        let (kx, ky, kz) = key_of(q);
        let r2 = radius * radius;
        let mut out = Vec::new();
        for dx in -reach..=reach {
            for dy in -reach..=reach {
                for dz in -reach..=reach {
                    if let Some(bucket) = self.cells.get(&(kx + dx, ky + dy, kz + dz)) {
                        for &i in bucket {
                            if self.points[i].sub(q).norm_sq() <= r2 {
                                out.push(i);
                            }
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Distance from `q` to the nearest stored point, or infinity when the
    /// index is empty. Expands the cell search ring until the best distance
    /// found is certified by the ring geometry.
    pub fn nearest_dist(&self, q: Point3) -> f64 {
        if self.points.is_empty() {
            return f64::INFINITY;
        }
        let (kx, ky, kz) = key_of(q);
        let mut best = f64::INFINITY;
        let mut reach: i64 = 0;
        loop {
            // Scan the shell of cells at Chebyshev distance `reach`.
            for dx in -reach..=reach {
                for dy in -reach..=reach {
                    for dz in -reach..=reach {
                        if dx.abs().max(dy.abs()).max(dz.abs()) != reach {
                            continue;
                        }
                        if let Some(bucket) = self.cells.get(&(kx + dx, ky + dy, kz + dz)) {
                            for &i in bucket {
                                best = best.min(self.points[i].dist(q));
                            }
                        }
                    }
                }
            }
            // Any point in a farther shell is at least (reach) * CELL away
            // from q along some axis.
            if best <= reach as f64 * CELL || reach > 1_000 {
                return best;
            }
            reach += 1;
        }
    }
}
