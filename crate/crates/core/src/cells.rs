//! Empty-circumball tetrahedra (4-cells), their extremal and critical
//! edges, the weight and `beta` bookkeeping, the cell score
//! `gamma(X, f)`, and partial cluster sums around critical edges.
//!
//! A 4-cell is spanned by four centers with circumradius strictly below
//! `sqrt(2)` whose open circumball contains no other center. Strictness
//! (with a `1e-9` margin on both the radius test and the emptiness test)
//! excludes the measure-zero boundary configurations such as the FCC
//! octahedron quadruples, whose circumradius is exactly `sqrt(2)`;
//! quadruples that fail only the emptiness margin are reported as
//! degenerate rather than silently dropped.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::geom::{circumsphere, dihedral_angle, solid_angle_cone, tetra_volume, Circumsphere, Point3};
use crate::packing::Packing;
use crate::par;
use crate::score::ScoreConstants;
use crate::GEOM_TOL;

/// Vertex-pair order of the six tetrahedron edges; entry `k` pairs with
/// the opposite entry `5 - k`.
pub const LOCAL_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Tolerance of the critical-edge membership test on `h`.
const H_CRITICAL_TOL: f64 = 1e-12;

/// An unordered pair of packing centers with its half-distance
/// `h = |u_i - u_j| / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub h: f64,
}

/// A tetrahedron of packing centers with empty circumball and circumradius
/// below `sqrt(2)`, carrying its cached measures.
#[derive(Debug, Clone)]
pub struct FourCell {
    /// Ascending center indices.
    pub verts: [usize; 4],
    pub circumsphere: Circumsphere,
    pub volume: f64,
    /// Solid angle at each vertex, in `verts` order.
    pub solid_angles: [f64; 4],
    /// Dihedral angle along each edge, in `LOCAL_EDGES` order.
    pub dihedrals: [f64; 6],
    /// Edge half-lengths, in `LOCAL_EDGES` order.
    pub edge_h: [f64; 6],
}

impl FourCell {
    /// Total solid angle: the sum over the four vertices.
    pub fn tsol(&self) -> f64 {
        self.solid_angles.iter().sum()
    }

    /// The six extremal edges with global indices and `h` values.
    pub fn edges(&self) -> [Edge; 6] {
        let mut out = [Edge { i: 0, j: 0, h: 0.0 }; 6];
        for (k, &(a, b)) in LOCAL_EDGES.iter().enumerate() {
            let (i, j) = (self.verts[a], self.verts[b]);
            out[k] = Edge { i: i.min(j), j: i.max(j), h: self.edge_h[k] };
        }
        out
    }

    /// Positions of local edge `k` in the critical band `[h-, h+]`.
    fn is_critical(&self, k: usize, consts: &ScoreConstants) -> bool {
        self.edge_h[k] >= consts.h_minus - H_CRITICAL_TOL
            && self.edge_h[k] <= consts.h_plus + H_CRITICAL_TOL
    }

    /// Local indices of critical edges.
    pub fn critical_local(&self, consts: &ScoreConstants) -> Vec<usize> {
        (0..6).filter(|&k| self.is_critical(k, consts)).collect()
    }
}

/// Critical edges of a cell with the weight `1 / |EC(X)|`, or `None` when
/// the cell has no critical edge.
pub fn critical_edges(cell: &FourCell, consts: &ScoreConstants) -> (Vec<Edge>, Option<f64>) {
    let edges = cell.edges();
    let ec: Vec<Edge> = cell.critical_local(consts).into_iter().map(|k| edges[k]).collect();
    let wt = (!ec.is_empty()).then(|| 1.0 / ec.len() as f64);
    (ec, wt)
}

/// `beta(eps, X)`: for a 4-cell with exactly two critical edges that are
/// opposite, the difference `beta0(h(eps)) - beta0(h(eps'))`; otherwise 0.
pub fn beta(eps: Edge, cell: &FourCell, consts: &ScoreConstants) -> f64 {
    let crit = cell.critical_local(consts);
    if crit.len() != 2 || crit[0] + crit[1] != 5 {
        return 0.0;
    }
    let edges = cell.edges();
    let (a, b) = (edges[crit[0]], edges[crit[1]]);
    if eps.i == a.i && eps.j == a.j {
        crate::score::beta0(a.h) - crate::score::beta0(b.h)
    } else if eps.i == b.i && eps.j == b.j {
        crate::score::beta0(b.h) - crate::score::beta0(a.h)
    } else {
        0.0
    }
}

/// Cell score
/// `gamma(X, f) = vol(X) - (2 m1 / pi) tsol(X) + (8 m2 / pi) sum_e dih(e) f(h(e))`.
/// Vanishes identically on the regular tetrahedron of edge 2 with `f = L`.
pub fn gamma(cell: &FourCell, f: &dyn Fn(f64) -> f64, consts: &ScoreConstants) -> f64 {
    let pi = std::f64::consts::PI;
    let mut edge_term = 0.0;
    for k in 0..6 {
        edge_term += cell.dihedrals[k] * f(cell.edge_h[k]);
    }
    cell.volume - (2.0 * consts.m1 / pi) * cell.tsol() + (8.0 * consts.m2 / pi) * edge_term
}

/// Result of a region enumeration: the accepted cells plus the quadruples
/// whose circumball emptiness was inside the degeneracy margin.
#[derive(Debug, Clone, Default)]
pub struct CellEnumeration {
    pub cells: Vec<FourCell>,
    pub degenerate: Vec<[usize; 4]>,
}

/// Enumerates every 4-cell whose four vertices lie in `B(0, region_radius)`.
///
/// Candidates are quadruples of mutually-within-4 centers (the cell
/// diameter bound) found through the grid index, deduplicated by ascending
/// index, and accepted when the volume is positive, the circumradius is
/// below `sqrt(2) - 1e-9`, and no other center lies within
/// `circumradius + 1e-9` of the circumcenter.
pub fn enumerate_four_cells(p: &Packing, region_radius: f64) -> CellEnumeration {
    let reach = 2.0 * std::f64::consts::SQRT_2;
    assert!(
        region_radius + reach <= p.gen_radius() + 1e-12,
        "region {region_radius} + 2 sqrt(2) exceeds gen_radius {}",
        p.gen_radius()
    );
    let sqrt2 = std::f64::consts::SQRT_2;
    let anchors = p.indices_within(region_radius);
    let in_region: Vec<bool> = {
        let mut flags = vec![false; p.len()];
        for &i in &anchors {
            flags[i] = true;
        }
        flags
    };

    let per_anchor = par::map_indexed(anchors.len(), |a| {
        let i = anchors[a];
        let vi = p.center(i);
        let mut cells = Vec::new();
        let mut degenerate = Vec::new();
        let nbrs: Vec<usize> = p
            .neighbor_indices(vi, 4.0)
            .into_iter()
            .filter(|&j| j > i && in_region[j])
            .collect();
        for (a1, &j) in nbrs.iter().enumerate() {
            let vj = p.center(j);
            for (a2, &k) in nbrs.iter().enumerate().skip(a1 + 1) {
                let vk = p.center(k);
                if vj.dist(vk) > 4.0 {
                    continue;
                }
                for &l in nbrs.iter().skip(a2 + 1) {
                    let vl = p.center(l);
                    if vj.dist(vl) > 4.0 || vk.dist(vl) > 4.0 {
                        continue;
                    }
                    let volume = tetra_volume(vi, vj, vk, vl);
                    if volume <= GEOM_TOL {
                        continue;
                    }
                    let cs = match circumsphere(&[vi, vj, vk, vl]) {
                        Ok(cs) => cs,
                        Err(_) => continue,
                    };
                    if cs.radius >= sqrt2 - GEOM_TOL {
                        continue;
                    }
                    let quad = [i, j, k, l];
                    // Emptiness with margin; near-cospherical fifth points
                    // are flagged instead of admitted.
                    let mut empty = true;
                    let mut cospherical = false;
                    for other in p.neighbor_indices(cs.center, cs.radius + GEOM_TOL) {
                        if quad.contains(&other) {
                            continue;
                        }
                        if p.center(other).dist(cs.center) < cs.radius - GEOM_TOL {
                            empty = false;
                            break;
                        }
                        cospherical = true;
                    }
                    if !empty {
                        continue;
                    }
                    if cospherical {
                        degenerate.push(quad);
                        continue;
                    }
                    cells.push(build_cell(quad, [vi, vj, vk, vl], cs, volume));
                }
            }
        }
        (cells, degenerate)
    });

    let mut out = CellEnumeration::default();
    for (cells, degenerate) in per_anchor {
        out.cells.extend(cells);
        out.degenerate.extend(degenerate);
    }
    out
}

fn build_cell(verts: [usize; 4], pos: [Point3; 4], cs: Circumsphere, volume: f64) -> FourCell {
    let sol = |a: usize, b: usize, c: usize, d: usize| {
        solid_angle_cone(pos[a], pos[b], pos[c], pos[d])
            .expect("positive-volume cell has independent cone directions")
    };
    let solid_angles =
        [sol(0, 1, 2, 3), sol(1, 0, 2, 3), sol(2, 0, 1, 3), sol(3, 0, 1, 2)];
    let mut dihedrals = [0.0; 6];
    let mut edge_h = [0.0; 6];
    for (k, &(a, b)) in LOCAL_EDGES.iter().enumerate() {
        let (c, d) = LOCAL_EDGES[5 - k];
        dihedrals[k] = dihedral_angle(pos[a], pos[b], pos[c], pos[d])
            .expect("positive-volume cell has no edge-collapsed dihedral");
        edge_h[k] = pos[a].dist(pos[b]) / 2.0;
    }
    FourCell { verts, circumsphere: cs, volume, solid_angles, dihedrals, edge_h }
}

/// One critical edge's partial cluster sum over enumerated 4-cells:
/// `sum over cells X containing the edge as critical of
/// gamma(X, L) wt(X) + beta(eps, X)`. Cells with fewer than four packing
/// points are not constructed here, so the sum is partial by design and
/// carries no sign claim.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ClusterRow {
    pub edge: Edge,
    pub partial_gamma: f64,
    pub cell_count: usize,
}

/// Partial cluster sums for every critical edge seen in the enumeration.
pub fn cluster_report(p: &Packing, region_radius: f64) -> Vec<ClusterRow> {
    let consts = ScoreConstants::get();
    let enumeration = enumerate_four_cells(p, region_radius);
    let mut rows: BTreeMap<(usize, usize), (f64, usize, f64)> = BTreeMap::new();
    for cell in &enumeration.cells {
        let (ec, wt) = critical_edges(cell, consts);
        let Some(wt) = wt else { continue };
        let g = gamma(cell, &crate::score::l_func, consts);
        for eps in ec {
            let entry = rows.entry((eps.i, eps.j)).or_insert((0.0, 0, eps.h));
            entry.0 += g * wt + beta(eps, cell, consts);
            entry.1 += 1;
        }
    }
    rows.into_iter()
        .map(|((i, j), (partial_gamma, cell_count, h))| ClusterRow {
            edge: Edge { i, j, h },
            partial_gamma,
            cell_count,
        })
        .collect()
}

/// Angle-sum sanity over an enumerated region: dihedral angles around an
/// interior edge may not exceed the full turn `2 pi`, and solid angles
/// around an interior vertex may not exceed the full sphere `4 pi`.
/// Equality is not asserted: cells with fewer packing points share those
/// angles and are not enumerated here.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeAngleReport {
    pub interior_edge_count: usize,
    pub max_edge_dihedral_sum: f64,
    pub interior_vertex_count: usize,
    pub max_vertex_solid_sum: f64,
    pub pass: bool,
}

pub fn edge_angle_checks(p: &Packing, region_radius: f64) -> EdgeAngleReport {
    let enumeration = enumerate_four_cells(p, region_radius);
    // Both endpoints this far inside the region guarantee every 4-cell on
    // the edge (all of whose vertices lie within 2 sqrt(2) of either
    // endpoint) was enumerated.
    let interior_radius = region_radius - 2.0 * std::f64::consts::SQRT_2;
    let is_interior = |i: usize| p.center(i).norm() <= interior_radius;

    let mut edge_sums: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut vertex_sums: BTreeMap<usize, f64> = BTreeMap::new();
    for cell in &enumeration.cells {
        for (k, &(a, b)) in LOCAL_EDGES.iter().enumerate() {
            let (i, j) = (cell.verts[a].min(cell.verts[b]), cell.verts[a].max(cell.verts[b]));
            if cell.edge_h[k] < std::f64::consts::SQRT_2 && is_interior(i) && is_interior(j) {
                *edge_sums.entry((i, j)).or_insert(0.0) += cell.dihedrals[k];
            }
        }
        for (a, &v) in cell.verts.iter().enumerate() {
            if is_interior(v) {
                *vertex_sums.entry(v).or_insert(0.0) += cell.solid_angles[a];
            }
        }
    }
    let max_edge = edge_sums.values().cloned().fold(0.0, f64::max);
    let max_vertex = vertex_sums.values().cloned().fold(0.0, f64::max);
    EdgeAngleReport {
        interior_edge_count: edge_sums.len(),
        max_edge_dihedral_sum: max_edge,
        interior_vertex_count: vertex_sums.len(),
        max_vertex_solid_sum: max_vertex,
        pass: max_edge <= 2.0 * std::f64::consts::PI + 1e-9
            && max_vertex <= 4.0 * std::f64::consts::PI + 1e-9,
    }
}
