//! Shared test oracles: Monte Carlo estimators and independent
//! closed-form routes, kept apart from the implementation paths they
//! check.
#![allow(dead_code)] // each test binary uses its own subset of oracles

use packcert::geom::Point3;
use packcert::packing::Packing;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Uniform direction on the unit sphere.
pub fn sphere_dir(rng: &mut impl Rng) -> Point3 {
    let z: f64 = rng.random::<f64>() * 2.0 - 1.0;
    let phi = rng.random::<f64>() * std::f64::consts::TAU;
    let r = (1.0 - z * z).max(0.0).sqrt();
    Point3::new(r * phi.cos(), r * phi.sin(), z)
}

/// Uniform point in the ball `B(center, radius)`.
pub fn ball_point(rng: &mut impl Rng, center: Point3, radius: f64) -> Point3 {
    let d = sphere_dir(rng);
    let t = rng.random::<f64>().cbrt() * radius;
    center.add(d.scale(t))
}

/// Monte Carlo density oracle: fraction of `B(0, r)` covered by the unit
/// balls, with its standard error. Deterministic per seed: integer hit
/// counts from fixed-size chunks are summed exactly.
pub fn mc_density(p: &Packing, r: f64, samples: u64, seed: u64) -> (f64, f64) {
    let chunk: u64 = 250_000;
    let chunks = samples.div_ceil(chunk);
    let counts: Vec<u64> = (0..chunks)
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(c.wrapping_mul(0x9e37)));
            let n = chunk.min(samples - c * chunk);
            let mut hits = 0u64;
            for _ in 0..n {
                if p.nearest_dist(ball_point(&mut rng, Point3::ORIGIN, r)) <= 1.0 {
                    hits += 1;
                }
            }
            hits
        })
        .collect();
    let hits: u64 = counts.iter().sum();
    let est = hits as f64 / samples as f64;
    let stderr = (est * (1.0 - est) / samples as f64).sqrt();
    (est, stderr)
}

/// 3x3 inverse-free membership test: is direction `d` a nonnegative
/// combination of the three cone generators? Solved by Cramer.
pub struct ConeBasis {
    u: Point3,
    v: Point3,
    w: Point3,
    det: f64,
}

impl ConeBasis {
    pub fn new(apex: Point3, a: Point3, b: Point3, c: Point3) -> ConeBasis {
        let u = a.sub(apex);
        let v = b.sub(apex);
        let w = c.sub(apex);
        ConeBasis { u, v, w, det: u.dot(v.cross(w)) }
    }

    pub fn contains(&self, d: Point3) -> bool {
        let x = d.dot(self.v.cross(self.w)) / self.det;
        let y = self.u.dot(d.cross(self.w)) / self.det;
        let z = self.u.dot(self.v.cross(d)) / self.det;
        x >= 0.0 && y >= 0.0 && z >= 0.0
    }
}

/// Monte Carlo ray-sampling oracle for the solid angle of a simplicial
/// cone: `4 pi` times the fraction of uniform directions inside.
pub fn mc_solid_angle(
    apex: Point3,
    a: Point3,
    b: Point3,
    c: Point3,
    samples: u64,
    seed: u64,
) -> (f64, f64) {
    let basis = ConeBasis::new(apex, a, b, c);
    let chunk: u64 = 250_000;
    let chunks = samples.div_ceil(chunk);
    let counts: Vec<u64> = (0..chunks)
        .map(|ci| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(ci.wrapping_mul(0x51ed)));
            let n = chunk.min(samples - ci * chunk);
            let mut hits = 0u64;
            for _ in 0..n {
                if basis.contains(sphere_dir(&mut rng)) {
                    hits += 1;
                }
            }
            hits
        })
        .collect();
    let hits: u64 = counts.iter().sum();
    let frac = hits as f64 / samples as f64;
    let full = 4.0 * std::f64::consts::PI;
    (full * frac, full * (frac * (1.0 - frac) / samples as f64).sqrt())
}

/// Radial-limit oracle: `3 vol(cone cap B(apex, r)) / r^3` with the cap
/// volume estimated by uniform ball sampling. For a cone this is
/// independent of `r`; callers compare two radii to witness that.
pub fn radial_limit_solid_angle(
    apex: Point3,
    a: Point3,
    b: Point3,
    c: Point3,
    r: f64,
    samples: u64,
    seed: u64,
) -> (f64, f64) {
    let basis = ConeBasis::new(apex, a, b, c);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    for _ in 0..samples {
        let q = ball_point(&mut rng, apex, r);
        if basis.contains(q.sub(apex)) {
            hits += 1;
        }
    }
    let frac = hits as f64 / samples as f64;
    let ball_vol = 4.0 / 3.0 * std::f64::consts::PI * r.powi(3);
    let est = 3.0 * ball_vol * frac / r.powi(3);
    let stderr = 4.0 * std::f64::consts::PI * (frac * (1.0 - frac) / samples as f64).sqrt();
    (est, stderr)
}

/// Dihedral angle along `v0 v1` from the two face normals; an independent
/// route to the projection formula used by the implementation.
pub fn face_normal_dihedral(v0: Point3, v1: Point3, v2: Point3, v3: Point3) -> f64 {
    let axis = v1.sub(v0);
    let n1 = axis.cross(v2.sub(v0));
    let n2 = axis.cross(v3.sub(v0));
    (n1.dot(n2) / (n1.norm() * n2.norm())).clamp(-1.0, 1.0).acos()
}

/// Circumcenter of a triangle by solving the two equidistance equations
/// in an in-plane parametrization; independent of the cross-product form.
pub fn plane_solve_circumcenter(a: Point3, b: Point3, c: Point3) -> Point3 {
    let u = b.sub(a);
    let v = c.sub(a);
    // x = a + s u + t v; |x - a|^2 = |x - b|^2 and = |x - c|^2.
    let (uu, uv, vv) = (u.dot(u), u.dot(v), v.dot(v));
    let rhs1 = uu / 2.0;
    let rhs2 = vv / 2.0;
    let det = uu * vv - uv * uv;
    let s = (rhs1 * vv - rhs2 * uv) / det;
    let t = (uu * rhs2 - uv * rhs1) / det;
    a.add(u.scale(s)).add(v.scale(t))
}

/// Circumcenter of a tetrahedron by Gaussian elimination on the three
/// equidistance equations; independent of the Cramer route.
pub fn gauss_solve_circumcenter(pts: [Point3; 4]) -> Point3 {
    let mut m = [[0.0f64; 4]; 3];
    for (row, p) in pts.iter().skip(1).enumerate() {
        let d = p.sub(pts[0]);
        m[row][0] = 2.0 * d.x;
        m[row][1] = 2.0 * d.y;
        m[row][2] = 2.0 * d.z;
        m[row][3] = p.norm_sq() - pts[0].norm_sq();
    }
    for col in 0..3 {
        let pivot = (col..3).max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap()).unwrap();
        m.swap(col, pivot);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            for k in col..4 {
                m[row][k] -= f * m[col][k];
            }
        }
    }
    let z = m[2][3] / m[2][2];
    let y = (m[1][3] - m[1][2] * z) / m[1][1];
    let x = (m[0][3] - m[0][1] * y - m[0][2] * z) / m[0][0];
    Point3::new(x, y, z)
}

/// Random tetrahedron in the cube `[-1, 1]^3` with volume bounded away
/// from degeneracy.
pub fn random_tetra(rng: &mut impl Rng) -> [Point3; 4] {
    fn pt(rng: &mut impl Rng) -> Point3 {
        Point3::new(
            rng.random::<f64>() * 2.0 - 1.0,
            rng.random::<f64>() * 2.0 - 1.0,
            rng.random::<f64>() * 2.0 - 1.0,
        )
    }
    loop {
        let t = [pt(rng), pt(rng), pt(rng), pt(rng)];
        if packcert::geom::tetra_volume(t[0], t[1], t[2], t[3]) > 1e-2 {
            return t;
        }
    }
}

/// Exhaustive 4-cell oracle: every index quadruple, filtered only by the
/// definition (positive volume, circumradius below sqrt(2), empty open
/// circumball), restricted to quadruples fully inside the region.
pub fn brute_force_four_cells(p: &Packing, region_radius: f64) -> Vec<[usize; 4]> {
    use packcert::geom::{circumsphere, tetra_volume};
    let n = p.len();
    let inside: Vec<bool> =
        (0..n).map(|i| p.center(i).norm() <= region_radius).collect();
    let mut out = Vec::new();
    for i in 0..n {
        if !inside[i] {
            continue;
        }
        for j in i + 1..n {
            if !inside[j] || p.center(i).dist(p.center(j)) > 4.0 {
                continue;
            }
            for k in j + 1..n {
                if !inside[k]
                    || p.center(i).dist(p.center(k)) > 4.0
                    || p.center(j).dist(p.center(k)) > 4.0
                {
                    continue;
                }
                for l in k + 1..n {
                    if !inside[l]
                        || p.center(i).dist(p.center(l)) > 4.0
                        || p.center(j).dist(p.center(l)) > 4.0
                        || p.center(k).dist(p.center(l)) > 4.0
                    {
                        continue;
                    }
                    let pts = [p.center(i), p.center(j), p.center(k), p.center(l)];
                    if tetra_volume(pts[0], pts[1], pts[2], pts[3]) <= 1e-9 {
                        continue;
                    }
                    let Ok(cs) = circumsphere(&pts) else { continue };
                    if cs.radius >= std::f64::consts::SQRT_2 - 1e-9 {
                        continue;
                    }
                    let quad = [i, j, k, l];
                    let empty = (0..n).all(|o| {
                        quad.contains(&o) || p.center(o).dist(cs.center) >= cs.radius + 1e-9
                    });
                    if empty {
                        out.push(quad);
                    }
                }
            }
        }
    }
    out
}
