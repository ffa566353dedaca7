//! Pure geometric kernel: circumspheres of 2-4 point sets, solid and
//! dihedral angles, tetrahedron volumes, and sphere-sphere lens volumes.
//!
//! Coordinates are in units of the sphere radius (packed spheres have
//! radius 1). Everything here is a pure function; no shared state.

mod polytope;

pub use polytope::{ConvexPolytope, HalfSpace};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::GEOM_TOL;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    /// Input points violate the affine-independence precondition.
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
}

/// A point (or vector) in R^3 with finite coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3 { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }

    pub fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }

    pub fn scale(self, s: f64) -> Point3 {
        Point3::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn dot(self, o: Point3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Point3) -> Point3 {
        Point3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn dist(self, o: Point3) -> f64 {
        self.sub(o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// Circumscribing sphere of a 2-4 point set: the smallest sphere through
/// all points within the orthogonal completion of their affine hull.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circumsphere {
    pub center: Point3,
    pub radius: f64,
}

/// Circumcenter and circumradius of 2, 3, or 4 affinely independent points.
///
/// For a pair this is the midpoint, for a triangle the circumcircle in its
/// own plane, and for a tetrahedron the unique circumsphere. Inputs whose
/// normalized volume (or area, or separation) falls below the global
/// tolerance are rejected as `DegenerateInput`.
pub fn circumsphere(points: &[Point3]) -> Result<Circumsphere, GeomError> {
    match points {
        [a, b] => {
            let d = a.dist(*b);
            if d <= GEOM_TOL {
                return Err(GeomError::DegenerateInput("coincident point pair"));
            }
            Ok(Circumsphere { center: a.add(*b).scale(0.5), radius: d / 2.0 })
        }
        [a, b, c] => {
            let u = b.sub(*a);
            let v = c.sub(*a);
            let w = u.cross(v);
            let scale = u.norm().max(v.norm());
            if scale <= GEOM_TOL || w.norm() <= GEOM_TOL * scale * scale {
                return Err(GeomError::DegenerateInput("collinear triangle points"));
            }
            // center = a + ((|u|^2 v - |v|^2 u) x w) / (2 |w|^2)
            let num = u.scale(v.norm_sq()).sub(v.scale(u.norm_sq())).cross(w).scale(-1.0);
            let center = a.add(num.scale(1.0 / (2.0 * w.norm_sq())));
            Ok(Circumsphere { center, radius: center.dist(*a) })
        }
        [a, b, c, d] => {
            let e1 = b.sub(*a);
            let e2 = c.sub(*a);
            let e3 = d.sub(*a);
            let det = e1.dot(e2.cross(e3));
            let scale = e1.norm().max(e2.norm()).max(e3.norm());
            if scale <= GEOM_TOL || det.abs() <= GEOM_TOL * scale * scale * scale {
                return Err(GeomError::DegenerateInput("coplanar tetrahedron points"));
            }
            // Solve 2 (p_i - a) . x = |p_i|^2 - |a|^2 for the center by Cramer.
            let rhs = Point3::new(
                0.5 * (b.norm_sq() - a.norm_sq()),
                0.5 * (c.norm_sq() - a.norm_sq()),
                0.5 * (d.norm_sq() - a.norm_sq()),
            );
            let col = |i: usize| match i {
                0 => Point3::new(e1.x, e2.x, e3.x),
                1 => Point3::new(e1.y, e2.y, e3.y),
                _ => Point3::new(e1.z, e2.z, e3.z),
            };
            let det3 = |c0: Point3, c1: Point3, c2: Point3| c0.dot(c1.cross(c2));
            let full = det3(col(0), col(1), col(2));
            let center = Point3::new(
                det3(rhs, col(1), col(2)) / full,
                det3(col(0), rhs, col(2)) / full,
                det3(col(0), col(1), rhs) / full,
            );
            Ok(Circumsphere { center, radius: center.dist(*a) })
        }
        _ => Err(GeomError::DegenerateInput("expected 2, 3, or 4 points")),
    }
}

/// Solid angle in steradians of the simplicial cone spanned at `apex` by
/// the directions toward `a`, `b`, `c`.
///
/// Uses the half-angle arctangent form
/// `tan(omega/2) = a.(b x c) / (|a||b||c| + (a.b)|c| + (a.c)|b| + (b.c)|a|)`
/// which stays stable for thin cones; the radial-limit definition
/// `3 vol(cone cap B(apex, r)) / r^3` is used only as a test oracle.
pub fn solid_angle_cone(apex: Point3, a: Point3, b: Point3, c: Point3) -> Result<f64, GeomError> {
    let u = a.sub(apex);
    let v = b.sub(apex);
    let w = c.sub(apex);
    let (lu, lv, lw) = (u.norm(), v.norm(), w.norm());
    if lu == 0.0 || lv == 0.0 || lw == 0.0 {
        return Err(GeomError::DegenerateInput("cone direction coincides with apex"));
    }
    let triple = u.dot(v.cross(w));
    if triple.abs() / (lu * lv * lw) <= 1e-12 {
        return Err(GeomError::DegenerateInput("linearly dependent cone directions"));
    }
    let denom = lu * lv * lw + u.dot(v) * lw + u.dot(w) * lv + v.dot(w) * lu;
    let half = (triple.abs()).atan2(denom);
    // atan2 lands in (0, pi); doubling covers cones wider than a halfspace.
    Ok(2.0 * half)
}

/// Dihedral angle in [0, pi] along the ray v0->v1, between the half-planes
/// toward v2 and v3.
///
/// Computed from the projections of `w2 = v2 - v0` and `w3 = v3 - v0` onto
/// the plane orthogonal to `w1 = v1 - v0`:
/// `w2' = (w1.w1) w2 - (w1.w2) w1`, same for `w3'`, then the angle between
/// `w2'` and `w3'`.
pub fn dihedral_angle(v0: Point3, v1: Point3, v2: Point3, v3: Point3) -> Result<f64, GeomError> {
    let w1 = v1.sub(v0);
    if w1.norm() == 0.0 {
        return Err(GeomError::DegenerateInput("dihedral axis endpoints coincide"));
    }
    let w2 = v2.sub(v0);
    let w3 = v3.sub(v0);
    let p2 = w2.scale(w1.norm_sq()).sub(w1.scale(w1.dot(w2)));
    let p3 = w3.scale(w1.norm_sq()).sub(w1.scale(w1.dot(w3)));
    let scale = w1.norm_sq() * w2.norm().max(w3.norm()).max(1.0);
    if p2.norm() <= 1e-12 * scale || p3.norm() <= 1e-12 * scale {
        return Err(GeomError::DegenerateInput("dihedral arm lies on the axis"));
    }
    let cosv = p2.dot(p3) / (p2.norm() * p3.norm());
    Ok(cosv.clamp(-1.0, 1.0).acos())
}

/// Volume of the tetrahedron `abcd`: `|det(b-a, c-a, d-a)| / 6`.
/// Zero for coplanar input; never errors.
pub fn tetra_volume(a: Point3, b: Point3, c: Point3, d: Point3) -> f64 {
    let e1 = b.sub(a);
    let e2 = c.sub(a);
    let e3 = d.sub(a);
    e1.dot(e2.cross(e3)).abs() / 6.0
}

/// Exact volume of the intersection of balls `B(c1, r1)` and `B(c2, r2)`,
/// covering the disjoint, nested, and lens cases via spherical-cap closed
/// forms.
pub fn ball_lens_volume(c1: Point3, r1: f64, c2: Point3, r2: f64) -> f64 {
    debug_assert!(r1 > 0.0 && r2 > 0.0);
    let d = c1.dist(c2);
    if d >= r1 + r2 {
        return 0.0;
    }
    let rmin = r1.min(r2);
    if d <= (r1 - r2).abs() {
        return 4.0 / 3.0 * std::f64::consts::PI * rmin.powi(3);
    }
    // Lens: two spherical caps split at the radical plane.
    let v = std::f64::consts::PI * (r1 + r2 - d).powi(2)
        * (d * d + 2.0 * d * (r1 + r2) - 3.0 * (r1 - r2) * (r1 - r2))
        / (12.0 * d);
    v.max(0.0)
}
