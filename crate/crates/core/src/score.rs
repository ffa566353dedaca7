//! Score constants and functions: the piecewise ramp `L`, the piecewise
//! polynomial `M`, the quadratic `beta0`, the root `h_minus`, the vertex
//! score `G(u, f)`, and the packing-wide compatibility and negligibility
//! scans built on them.
//!
//! All constants are computed from their defining expressions at working
//! precision; the literature's rounded decimals (`m1 ~ 1.012`,
//! `m2 ~ 0.0254`, `h_minus ~ 1.23175`) appear only in assertions.

use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::OnceLock;
use thiserror::Error;

use crate::packing::Packing;
use crate::par;
use crate::voronoi::{voronoi_cell, VoronoiError};

/// Breakpoint of the ramp `L`.
pub const H0: f64 = 1.26;

/// Upper critical-edge threshold and second breakpoint of `M`.
pub const H_PLUS: f64 = 1.3254;

/// `4 sqrt(2)`, the rhombic dodecahedron volume that FCC-compatibility
/// compares against.
pub const FOUR_SQRT2: f64 = 5.656854249492381;

#[derive(Debug, Error)]
pub enum ScoreError {
    #[error("no sign change of M - L on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error(transparent)]
    Voronoi(#[from] VoronoiError),
}

/// Piecewise linear ramp: `(h0 - h) / (h0 - 1)` below `h0`, zero above.
/// Continuous at `h0`.
pub fn l_func(h: f64) -> f64 {
    if h <= H0 {
        (H0 - h) / (H0 - 1.0)
    } else {
        0.0
    }
}

/// Piecewise polynomial
/// `(sqrt2 - h)/(sqrt2 - 1) * (h+ - h)/(h+ - 1) * (17h - 9h^2 - 3)/5`
/// below `sqrt(2)`, zero above. Equals 1 at `h = 1`.
pub fn m_func(h: f64) -> f64 {
    let s2 = std::f64::consts::SQRT_2;
    if h <= s2 {
        (s2 - h) / (s2 - 1.0)
            * ((H_PLUS - h) / (H_PLUS - 1.0))
            * ((17.0 * h - 9.0 * h * h - 3.0) / 5.0)
    } else {
        0.0
    }
}

/// `0.005 (1 - (h - h0)^2 / (h+ - h0)^2)`, defined on all of R; negative
/// far from `h0`. Callers restrict the domain to critical edges.
pub fn beta0(h: f64) -> f64 {
    let d = (h - H0) / (H_PLUS - H0);
    0.005 * (1.0 - d * d)
}

/// Root of `M - L` in `[1.231, 1.232]` by bisection to width `1e-12`,
/// with the sign change verified at the bracket endpoints.
pub fn find_h_minus() -> Result<f64, ScoreError> {
    let (mut lo, mut hi) = (1.231f64, 1.232f64);
    let f = |h: f64| m_func(h) - l_func(h);
    let flo = f(lo);
    if flo == 0.0 {
        return Ok(lo);
    }
    if flo.signum() == f(hi).signum() {
        return Err(ScoreError::NoSignChange { lo, hi });
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if f(mid).signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The working-precision constant set.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ScoreConstants {
    pub h0: f64,
    pub h_plus: f64,
    pub h_minus: f64,
    /// `3 arccos(1/3) - pi`: solid angle at a vertex of the regular
    /// tetrahedron of edge 2.
    pub sol0: f64,
    /// `4 pi - 20 sol0`.
    pub tau0: f64,
    /// `sol0 * 2 sqrt(2) / tau0`.
    pub m1: f64,
    /// `(6 sol0 - pi) sqrt(2) / (6 tau0)`.
    pub m2: f64,
}

impl ScoreConstants {
    pub fn compute() -> Result<ScoreConstants, ScoreError> {
        let sol0 = 3.0 * (1.0f64 / 3.0).acos() - std::f64::consts::PI;
        let tau0 = 4.0 * std::f64::consts::PI - 20.0 * sol0;
        let m1 = sol0 * 2.0 * std::f64::consts::SQRT_2 / tau0;
        let m2 = (6.0 * sol0 - std::f64::consts::PI) * std::f64::consts::SQRT_2 / (6.0 * tau0);
        Ok(ScoreConstants { h0: H0, h_plus: H_PLUS, h_minus: find_h_minus()?, sol0, tau0, m1, m2 })
    }

    /// Cached instance; the defining expressions are pure, so computing
    /// once per process is enough.
    pub fn get() -> &'static ScoreConstants {
        static CONSTANTS: OnceLock<ScoreConstants> = OnceLock::new();
        CONSTANTS
            .get_or_init(|| ScoreConstants::compute().expect("M - L changes sign on the bracket"))
    }
}

/// Vertex score
/// `G(v, f) = -vol(voronoi(V, v)) + 8 m1 - sum_u 8 m2 f(h([v; u]))`,
/// with the sum over neighbors within distance `2 sqrt(2)` (beyond which
/// `h >= sqrt(2)` and admissible `f` vanish, so the truncation is exact).
///
/// `f` must vanish at and above `sqrt(2)`; this is asserted by sampling.
pub fn g_score(
    p: &Packing,
    index: usize,
    f: &(dyn Fn(f64) -> f64 + Sync),
) -> Result<f64, ScoreError> {
    debug_assert!(
        [std::f64::consts::SQRT_2, 1.5, 2.0, 10.0].iter().all(|&h| f(h) == 0.0),
        "score function must vanish at and above sqrt(2)"
    );
    let sum_cutoff = 2.0 * std::f64::consts::SQRT_2;
    let v = p.center(index);
    if v.norm() + sum_cutoff > p.gen_radius() + 1e-12 {
        return Err(ScoreError::Voronoi(VoronoiError::BoundaryVertex {
            index,
            dist: v.norm(),
            gen_radius: p.gen_radius(),
        }));
    }
    let cell = voronoi_cell(p, index)?;
    let consts = ScoreConstants::get();
    let mut sum = 0.0;
    for n in p.neighbor_indices(v, sum_cutoff) {
        sum += 8.0 * consts.m2 * f(v.dist(p.center(n)) / 2.0);
    }
    Ok(-cell.volume + 8.0 * consts.m1 - sum)
}

/// Sum of `L(h([v; u]))` over neighbors with `h <= h0`, i.e. within
/// distance `2 h0 = 2.52`. At most 12 for saturated packings.
pub fn contact_sum(p: &Packing, index: usize) -> f64 {
    let v = p.center(index);
    p.neighbor_indices(v, 2.0 * H0)
        .into_iter()
        .map(|n| l_func(v.dist(p.center(n)) / 2.0))
        .sum()
}

/// Outcome of the FCC-compatibility scan: per-vertex margins
/// `vol(voronoi(v)) + G(v, f) - 4 sqrt(2)`, reported by their minimum.
#[derive(Debug, Clone, Serialize)]
pub struct CompatReport {
    pub count: usize,
    pub min_margin: f64,
    pub argmin: usize,
    pub pass: bool,
}

/// Checks `4 sqrt(2) <= vol(voronoi(v)) + G(v, f)` for every center in
/// `B(0, region_radius)`; passes iff the minimum margin is `>= -1e-9`.
pub fn fcc_compatibility_check(
    p: &Packing,
    region_radius: f64,
    f: &(dyn Fn(f64) -> f64 + Sync),
) -> Result<CompatReport, ScoreError> {
    let interior = p.indices_within(region_radius);
    let margins = par::map_indexed(interior.len(), |k| -> Result<(usize, f64), ScoreError> {
        let idx = interior[k];
        let vol = voronoi_cell(p, idx)?.volume;
        let g = g_score(p, idx, f)?;
        Ok((idx, vol + g - FOUR_SQRT2))
    });
    let mut min_margin = f64::INFINITY;
    let mut argmin = 0;
    let mut count = 0;
    for m in margins {
        let (idx, margin) = m?;
        count += 1;
        if margin < min_margin {
            min_margin = margin;
            argmin = idx;
        }
    }
    Ok(CompatReport { count, min_margin, argmin, pass: min_margin >= -1e-9 })
}

/// One row of the negligibility scan: `sum = S(r)` of `G(v, f)` over
/// centers in `B(0, r)`, and the ratio `S(r) / r^2`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct NegligibilityRow {
    pub r: f64,
    pub sum: f64,
    pub ratio: f64,
}

/// Evaluates `S(r) = sum of G(v, f) over v in B(0, r)` for each requested
/// radius. The empirical negligibility constant is `max S(r) / r^2`.
pub fn negligibility_scan(
    p: &Packing,
    f: &(dyn Fn(f64) -> f64 + Sync),
    r_list: &[f64],
) -> Result<Vec<NegligibilityRow>, ScoreError> {
    let r_max = r_list.iter().cloned().fold(0.0, f64::max);
    let interior = p.indices_within(r_max);
    let scores = par::map_indexed(interior.len(), |k| g_score(p, interior[k], f));
    let mut per_vertex: BTreeMap<usize, f64> = BTreeMap::new();
    for (k, s) in scores.into_iter().enumerate() {
        per_vertex.insert(interior[k], s?);
    }
    Ok(r_list
        .iter()
        .map(|&r| {
            let sum: f64 = p.indices_within(r).into_iter().map(|i| per_vertex[&i]).sum();
            NegligibilityRow { r, sum, ratio: sum / (r * r) }
        })
        .collect())
}
