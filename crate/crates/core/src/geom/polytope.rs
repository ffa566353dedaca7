//! Bounded convex polytopes as vertex lists plus planar face rings.
//!
//! Clipping by a half-space re-derives the whole face structure from the
//! supporting planes each step instead of patching topology incrementally;
//! at the scales handled here the rebuild is cheap and immune to the usual
//! edge-bookkeeping corner cases (four or more planes meeting in a vertex,
//! faces reduced to slivers, repeated clip planes).

use crate::geom::Point3;
use crate::GEOM_TOL;

/// The half-space `normal . x <= offset`; `normal` points out of it.
#[derive(Debug, Clone, Copy)]
pub struct HalfSpace {
    pub normal: Point3,
    pub offset: f64,
}

impl HalfSpace {
    pub fn new(normal: Point3, offset: f64) -> Self {
        HalfSpace { normal, offset }
    }

    /// The complementary half-space `normal . x >= offset`.
    pub fn complement(self) -> Self {
        HalfSpace { normal: self.normal.scale(-1.0), offset: -self.offset }
    }

    /// Signed distance-like excess of `p` over the boundary plane
    /// (positive outside), scaled by `|normal|`.
    fn excess(&self, p: Point3) -> f64 {
        self.normal.dot(p) - self.offset
    }
}

#[derive(Debug, Clone)]
struct Face {
    ring: Vec<usize>,
    plane: HalfSpace,
}

/// Closed bounded convex polytope. The empty polytope has no vertices and
/// volume zero.
#[derive(Debug, Clone, Default)]
pub struct ConvexPolytope {
    vertices: Vec<Point3>,
    faces: Vec<Face>,
}

impl ConvexPolytope {
    pub fn empty() -> Self {
        ConvexPolytope::default()
    }

    /// Axis-aligned cube centered at `center` with the given half-width.
    pub fn cube(center: Point3, half_width: f64) -> Self {
        assert!(half_width > 0.0);
        let c = center;
        let h = half_width;
        let mut vertices = Vec::with_capacity(8);
        for &sz in &[-1.0, 1.0] {
            for &sy in &[-1.0, 1.0] {
                for &sx in &[-1.0, 1.0] {
                    vertices.push(Point3::new(c.x + sx * h, c.y + sy * h, c.z + sz * h));
                }
            }
        }
        let axes = [
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(-1.0, 0.0, 0.0),
            Point3::new(0.0, 1.0, 0.0),
            Point3::new(0.0, -1.0, 0.0),
            Point3::new(0.0, 0.0, 1.0),
            Point3::new(0.0, 0.0, -1.0),
        ];
        let planes: Vec<HalfSpace> =
            axes.iter().map(|&n| HalfSpace::new(n, n.dot(c) + h)).collect();
        rebuild(vertices, &planes)
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Face rings as vertex-index slices, paired with their outward planes.
    pub fn face_rings(&self) -> impl Iterator<Item = (&[usize], HalfSpace)> {
        self.faces.iter().map(|f| (f.ring.as_slice(), f.plane))
    }

    /// Largest distance from `p` to any vertex (0 for the empty polytope).
    pub fn max_vertex_dist(&self, p: Point3) -> f64 {
        self.vertices.iter().map(|v| v.dist(p)).fold(0.0, f64::max)
    }

    fn scale(&self) -> f64 {
        let c = self.centroid();
        self.max_vertex_dist(c).max(1.0)
    }

    fn centroid(&self) -> Point3 {
        if self.vertices.is_empty() {
            return Point3::ORIGIN;
        }
        let mut s = Point3::ORIGIN;
        for v in &self.vertices {
            s = s.add(*v);
        }
        s.scale(1.0 / self.vertices.len() as f64)
    }

    /// Intersection with a half-space. May be empty.
    pub fn clip_halfspace(&self, half: HalfSpace) -> ConvexPolytope {
        if self.is_empty() {
            return ConvexPolytope::empty();
        }
        let tol = GEOM_TOL * self.scale() * half.normal.norm().max(f64::MIN_POSITIVE);
        let excess: Vec<f64> = self.vertices.iter().map(|&v| half.excess(v)).collect();
        let max_e = excess.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min_e = excess.iter().cloned().fold(f64::INFINITY, f64::min);
        if max_e <= tol {
            return self.clone();
        }
        if min_e >= -tol {
            return ConvexPolytope::empty();
        }

        let mut new_vertices: Vec<Point3> = self
            .vertices
            .iter()
            .zip(&excess)
            .filter(|(_, &e)| e <= tol)
            .map(|(&v, _)| v)
            .collect();

        // One intersection point per crossing edge; edges deduplicated as
        // unordered index pairs so both incident faces agree bit-for-bit.
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for face in &self.faces {
            let n = face.ring.len();
            for i in 0..n {
                let (a, b) = (face.ring[i], face.ring[(i + 1) % n]);
                let e = (a.min(b), a.max(b));
                if !edges.contains(&e) {
                    edges.push(e);
                }
            }
        }
        for (a, b) in edges {
            let (ea, eb) = (excess[a], excess[b]);
            if (ea < -tol && eb > tol) || (eb < -tol && ea > tol) {
                let t = ea / (ea - eb);
                let p = self.vertices[a].add(self.vertices[b].sub(self.vertices[a]).scale(t));
                new_vertices.push(p);
            }
        }
        dedupe(&mut new_vertices, tol);

        let mut planes: Vec<HalfSpace> = self.faces.iter().map(|f| f.plane).collect();
        planes.push(half);
        rebuild(new_vertices, &planes)
    }

    /// Volume by fan decomposition from the centroid. Deterministic and
    /// nonnegative; zero for empty or lower-dimensional remnants.
    pub fn volume(&self) -> f64 {
        if self.vertices.len() < 4 || self.faces.len() < 4 {
            return 0.0;
        }
        let c = self.centroid();
        let mut vol = 0.0;
        for face in &self.faces {
            let r0 = self.vertices[face.ring[0]].sub(c);
            for i in 1..face.ring.len() - 1 {
                let r1 = self.vertices[face.ring[i]].sub(c);
                let r2 = self.vertices[face.ring[i + 1]].sub(c);
                vol += r0.dot(r1.cross(r2)) / 6.0;
            }
        }
        vol.max(0.0)
    }
}

fn dedupe(points: &mut Vec<Point3>, tol: f64) {
    let mut keep: Vec<Point3> = Vec::with_capacity(points.len());
    for &p in points.iter() {
        if !keep.iter().any(|q| q.dist(p) <= tol) {
            keep.push(p);
        }
    }
    *points = keep;
}

/// Re-derive the face structure of the convex hull of `vertices` from the
/// candidate supporting planes. Planes carrying fewer than three vertices
/// are dropped; rings are ordered by angle around the face centroid and
/// oriented so the stored normal points outward.
fn rebuild(vertices: Vec<Point3>, planes: &[HalfSpace]) -> ConvexPolytope {
    if vertices.len() < 4 {
        return ConvexPolytope::empty();
    }
    let mut scale: f64 = 1.0;
    for v in &vertices {
        scale = scale.max(v.norm());
    }
    let mut faces: Vec<Face> = Vec::new();
    for plane in planes {
        let nn = plane.normal.norm();
        if nn == 0.0 {
            continue;
        }
        let tol = GEOM_TOL * scale * nn;
        let on_plane: Vec<usize> = (0..vertices.len())
            .filter(|&i| plane.excess(vertices[i]).abs() <= tol)
            .collect();
        if on_plane.len() < 3 {
            continue;
        }
        // Skip planes that duplicate an already-built face (repeat clips).
        if faces.iter().any(|f| {
            f.ring.len() == on_plane.len() && on_plane.iter().all(|i| f.ring.contains(i))
        }) {
            continue;
        }
        faces.push(Face { ring: order_ring(&vertices, on_plane, plane.normal), plane: *plane });
    }
    ConvexPolytope { vertices, faces }
}

fn order_ring(vertices: &[Point3], mut ring: Vec<usize>, normal: Point3) -> Vec<usize> {
    let n = normal.scale(1.0 / normal.norm());
    let mut fc = Point3::ORIGIN;
    for &i in &ring {
        fc = fc.add(vertices[i]);
    }
    fc = fc.scale(1.0 / ring.len() as f64);
    // In-plane orthonormal basis.
    let seed = if n.x.abs() < 0.9 { Point3::new(1.0, 0.0, 0.0) } else { Point3::new(0.0, 1.0, 0.0) };
    let t1 = {
        let t = seed.sub(n.scale(seed.dot(n)));
        t.scale(1.0 / t.norm())
    };
    let t2 = n.cross(t1);
    ring.sort_by(|&a, &b| {
        let pa = vertices[a].sub(fc);
        let pb = vertices[b].sub(fc);
        let aa = pa.dot(t2).atan2(pa.dot(t1));
        let ab = pb.dot(t2).atan2(pb.dot(t1));
        aa.partial_cmp(&ab).unwrap()
    });
    // atan2 ordering is counterclockwise about +n, which makes the ring
    // wind outward already; verify and flip if a degenerate basis lied.
    let mut newell = Point3::ORIGIN;
    for i in 0..ring.len() {
        let a = vertices[ring[i]].sub(fc);
        let b = vertices[ring[(i + 1) % ring.len()]].sub(fc);
        newell = newell.add(a.cross(b));
    }
    if newell.dot(n) < 0.0 {
        ring.reverse();
    }
    ring
}
