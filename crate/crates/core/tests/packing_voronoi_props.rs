//! Packing and Voronoi properties on generated instances: neighbor
//! queries against brute force, the partition property at random probes,
//! shell volume bounds, and cell volume bounds on random packings.

mod common;

use packcert::geom::Point3;
use packcert::packing::{generate_cubic, generate_fcc, generate_random_saturated};
use packcert::voronoi::{voronoi_cell, voronoi_volumes};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn neighbors_match_brute_force() {
    let p = generate_random_saturated(6.0, 42);
    assert!(p.len() <= 500, "instance too large for the oracle: {}", p.len());
    let queries: Vec<Point3> = p.centers().iter().cloned().take(40).collect();
    for cutoff in [2.0, 2.52, 4.0, 8.0] {
        for &q in &queries {
            let got = p.neighbor_indices(q, cutoff);
            let want: Vec<usize> = (0..p.len())
                .filter(|&i| {
                    let d = p.center(i).dist(q);
                    d <= cutoff && d > 1e-12
                })
                .collect();
            assert_eq!(got, want, "cutoff {cutoff}");
        }
    }
}

#[test]
fn density_lies_in_unit_interval() {
    let fcc = generate_fcc(9.0);
    for r in [1.0, 3.0, 5.0, 8.0] {
        let d = fcc.density(r).unwrap();
        assert!((0.0..=1.0).contains(&d), "density {d} at r {r}");
    }
    let rand = generate_random_saturated(7.0, 5);
    for r in [1.0, 4.0, 6.0] {
        let d = rand.density(r).unwrap();
        assert!((0.0..=1.0).contains(&d));
    }
}

#[test]
fn cell_of_nearest_center_contains_probe() {
    // Partition property: a probe point falls in the cell of its nearest
    // center. Probes stay 2 inside the region so that owner is interior.
    let p = generate_random_saturated(10.0, 17);
    let region = 6.0;
    let mut rng = ChaCha8Rng::seed_from_u64(0xAB);
    let mut checked = 0usize;
    for _ in 0..10_000 {
        let q = common::ball_point(&mut rng, Point3::ORIGIN, region - 2.0);
        let nearest = p
            .indices_within(region)
            .into_iter()
            .min_by(|&a, &b| {
                p.center(a).dist(q).partial_cmp(&p.center(b).dist(q)).unwrap()
            })
            .unwrap();
        let cell = voronoi_cell(&p, nearest).unwrap();
        let inside = cell
            .polytope
            .face_rings()
            .all(|(_, plane)| plane.normal.dot(q) <= plane.offset + 1e-9 * plane.normal.norm());
        assert!(inside, "probe {q:?} escaped the cell of its nearest center {nearest}");
        checked += 1;
    }
    assert_eq!(checked, 10_000);
}

#[test]
fn voronoi_volume_sum_covers_shrunk_ball() {
    // Cells of centers in B(0, r) cover B(0, r-2), so their volumes sum
    // to at least that ball's volume.
    let fcc = generate_fcc(11.0);
    let rand = generate_random_saturated(12.0, 3);
    for (name, p) in [("fcc", &fcc), ("random", &rand)] {
        for r in [6.0, 8.0] {
            let sum: f64 = voronoi_volumes(p, r).unwrap().values().sum();
            let shrunk = 4.0 / 3.0 * std::f64::consts::PI * (r - 2.0).powi(3);
            assert!(sum >= shrunk, "{name} at r {r}: sum {sum} < {shrunk}");
            // And stays below the inflated ball, cells being disjoint and
            // within 2 of their owners.
            let inflated = 4.0 / 3.0 * std::f64::consts::PI * (r + 2.0).powi(3);
            assert!(sum <= inflated);
        }
    }
}

#[test]
fn random_packing_cell_volumes_are_bounded() {
    // Lower bound: the rhombic dodecahedron volume 4 sqrt(2) (attained by
    // FCC); upper bound: vol(B(0, 2)) from containment.
    let upper = 4.0 / 3.0 * std::f64::consts::PI * 8.0;
    for seed in [1, 2, 3] {
        let p = generate_random_saturated(10.0, seed);
        let vols = voronoi_volumes(&p, 6.0).unwrap();
        assert!(!vols.is_empty());
        for (&idx, &v) in &vols {
            assert!(
                v >= 5.656854249492381 - 1e-9,
                "seed {seed} cell {idx}: volume {v} below 4 sqrt(2)"
            );
            assert!(v <= upper, "seed {seed} cell {idx}: volume {v} above vol(B(0,2))");
        }
    }
}

#[test]
fn saturation_certificates_on_generated_packings() {
    for seed in [1, 2] {
        let p = generate_random_saturated(8.0, seed);
        let cert = p.is_saturated(7.0, 0.25);
        assert!(cert.saturated(), "seed {seed}: worst gap {}", cert.worst_gap);
    }
}
