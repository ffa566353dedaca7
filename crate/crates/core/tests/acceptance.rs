//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Criteria 1-9 live here; the determinism criterion for the command-line
//! pipeline lives in the CLI package's own acceptance target.

mod common;

use std::sync::OnceLock;
use std::time::Instant;

use packcert::audit::{full_report, AuditConfig};
use packcert::cells::{critical_edges, enumerate_four_cells, gamma};
use packcert::geom::{dihedral_angle, solid_angle_cone, ConvexPolytope, HalfSpace, Point3};
use packcert::packing::{
    generate_cubic, generate_fcc, generate_random_saturated, Packing, PackingKind,
};
use packcert::score::{
    fcc_compatibility_check, find_h_minus, g_score, l_func, contact_sum, ScoreConstants,
    FOUR_SQRT2,
};
use packcert::voronoi::voronoi_volumes;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// FCC at generation radius 12; interior region 8.5 keeps the full
/// completeness margin 3.5 > 2 sqrt(2) while holding 400+ vertices.
const FCC_RADIUS: f64 = 12.0;
const FCC_REGION: f64 = 8.5;

const RANDOM_RADIUS: f64 = 10.0;
const RANDOM_REGION: f64 = 6.0;
const RANDOM_SEEDS: std::ops::RangeInclusive<u64> = 1..=20;

fn fcc12() -> &'static Packing {
    static P: OnceLock<Packing> = OnceLock::new();
    P.get_or_init(|| generate_fcc(FCC_RADIUS))
}

fn random_packings() -> &'static Vec<Packing> {
    static P: OnceLock<Vec<Packing>> = OnceLock::new();
    P.get_or_init(|| {
        RANDOM_SEEDS.map(|s| generate_random_saturated(RANDOM_RADIUS, s)).collect()
    })
}

fn report(n: u32, name: &str, pass: bool, detail: &str) {
    println!("ACCEPTANCE {n} ({name}): {} — {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} ({name}) failed: {detail}");
}

#[test]
fn criterion_01_constants() {
    let t0 = Instant::now();
    let c = ScoreConstants::compute().unwrap();
    let hm = find_h_minus().unwrap();
    let elapsed = t0.elapsed();
    let ok = (1.0120..=1.0121).contains(&c.m1)
        && (0.02541..=0.02542).contains(&c.m2)
        && (1.231..=1.232).contains(&hm)
        && (hm - 1.23175).abs() <= 5e-4
        && elapsed.as_secs_f64() < 1.0;
    report(
        1,
        "constants",
        ok,
        &format!("m1 = {}, m2 = {}, h_minus = {}, {elapsed:?}", c.m1, c.m2, hm),
    );
}

#[test]
fn criterion_02_identity_and_g_on_fcc() {
    let t0 = Instant::now();
    let c = ScoreConstants::get();
    let identity_err = (8.0 * c.m1 - 96.0 * c.m2 - FOUR_SQRT2).abs();
    let p = fcc12();
    let interior = p.indices_within(FCC_REGION);
    let mut worst_g = 0.0f64;
    for &i in &interior {
        worst_g = worst_g.max(g_score(p, i, &l_func).unwrap().abs());
    }
    let elapsed = t0.elapsed();
    let ok = identity_err < 1e-12
        && worst_g < 1e-9
        && (1200..=1400).contains(&p.len())
        && interior.len() >= 400
        && elapsed.as_secs_f64() < 60.0;
    report(
        2,
        "identity and G on FCC",
        ok,
        &format!(
            "|8m1 - 96m2 - 4sqrt2| = {identity_err:.2e}, max |G| = {worst_g:.2e} over {} interior of {} centers, {elapsed:?}",
            interior.len(),
            p.len()
        ),
    );
}

#[test]
fn criterion_03_fcc_voronoi_volume() {
    let p = fcc12();
    let vols = voronoi_volumes(p, FCC_REGION).unwrap();
    let worst = vols
        .values()
        .map(|v| (v - FOUR_SQRT2).abs() / FOUR_SQRT2)
        .fold(0.0, f64::max);
    let ok = worst < 1e-9 && vols.len() >= 400;
    report(
        3,
        "FCC Voronoi volume",
        ok,
        &format!("max relative deviation from 4sqrt2 = {worst:.2e} over {} cells", vols.len()),
    );
}

#[test]
fn criterion_04_gamma() {
    let t0 = Instant::now();
    let consts = ScoreConstants::get();

    // Regular tetrahedron of edge 2, taken from the FCC tetrahedral holes.
    let fcc_small = generate_fcc(8.0);
    let reg = &enumerate_four_cells(&fcc_small, 4.0).cells;
    let gamma_reg =
        reg.iter().map(|c| gamma(c, &l_func, consts).abs()).fold(0.0f64, f64::max);

    let mut worst = f64::INFINITY;
    let mut checked = 0usize;
    for p in random_packings() {
        for cell in &enumerate_four_cells(p, RANDOM_REGION).cells {
            let (ec, _) = critical_edges(cell, consts);
            if ec.is_empty() {
                worst = worst.min(gamma(cell, &l_func, consts));
                checked += 1;
            }
        }
    }
    let elapsed = t0.elapsed();
    let ok = gamma_reg < 1e-9 && worst >= -1e-9 && checked > 0 && elapsed.as_secs_f64() < 300.0;
    report(
        4,
        "gamma",
        ok,
        &format!(
            "|gamma(regular)| = {gamma_reg:.2e}, min gamma over {checked} critical-edge-free cells = {worst:.3e}, {elapsed:?}"
        ),
    );
}

#[test]
fn criterion_05_contact_sum() {
    let p = fcc12();
    let mut fcc_worst = 0.0f64;
    for i in p.indices_within(FCC_REGION) {
        fcc_worst = fcc_worst.max((contact_sum(p, i) - 12.0).abs());
    }
    let mut rand_max = f64::NEG_INFINITY;
    for q in random_packings() {
        for i in q.indices_within(RANDOM_REGION) {
            rand_max = rand_max.max(contact_sum(q, i));
        }
    }
    let ok = fcc_worst < 1e-9 && rand_max <= 12.0 + 1e-9;
    report(
        5,
        "contact sum",
        ok,
        &format!("FCC deviation from 12: {fcc_worst:.2e}; max over random packings: {rand_max:.6}"),
    );
}

#[test]
fn criterion_06_fcc_compatibility() {
    let consts = ScoreConstants::get();
    let fcc_rep = fcc_compatibility_check(fcc12(), FCC_REGION, &l_func).unwrap();

    let cubic = generate_cubic(12.0);
    let cubic_rep = fcc_compatibility_check(&cubic, 8.0, &l_func).unwrap();
    let g_cubic = -8.0 + 8.0 * consts.m1 - 48.0 * consts.m2;
    let cubic_expected = 8.0 + g_cubic - FOUR_SQRT2;

    let mut rand_min = f64::INFINITY;
    for p in random_packings() {
        let rep = fcc_compatibility_check(p, RANDOM_REGION, &l_func).unwrap();
        rand_min = rand_min.min(rep.min_margin);
    }

    let ok = fcc_rep.pass
        && cubic_rep.pass
        && (cubic_rep.min_margin - cubic_expected).abs() < 1e-9
        && rand_min >= -1e-9;
    report(
        6,
        "FCC compatibility",
        ok,
        &format!(
            "FCC min = {:.3e}, cubic min = {:.9} (expected {:.9}), random min = {:.6}",
            fcc_rep.min_margin, cubic_rep.min_margin, cubic_expected, rand_min
        ),
    );
}

#[test]
fn criterion_07_audit_certificate() {
    let t0 = Instant::now();
    let cert = full_report(&AuditConfig::default());
    let elapsed = t0.elapsed();

    let find = |name: &str| cert.steps.iter().find(|s| s.name == name).unwrap();
    let exact_checks = find("zeta_binomial").pass
        && find("zeta_total").pass
        && find("c0_total").pass
        && find("alpha_r2_coeff").pass
        && find("alpha_const").pass
        && find("alpha_total").pass
        && find("c1_paper_bound").pass
        && find("c1_enclosure").pass
        && find("final_constant").pass;

    // Tamper test: tightening any claimed bound by one unit in its last
    // decimal place must flip the certificate.
    let mut tamper_ok = true;
    for step in &cert.steps {
        let cfg = AuditConfig {
            tighten: vec![(step.tamper_from, step.tamper_from - step.unit)],
            ..Default::default()
        };
        if full_report(&cfg).pass {
            println!("tamper on {} ({} -> {}) did not flip", step.name, step.tamper_from, step.tamper_from - step.unit);
            tamper_ok = false;
        }
    }
    let ok = cert.pass && exact_checks && tamper_ok && elapsed.as_secs_f64() < 1.0;
    report(
        7,
        "audit certificate",
        ok,
        &format!("{} steps all pass, tamper test {}, {elapsed:?}", cert.steps.len(), if tamper_ok { "flips every bound" } else { "LEAKED" }),
    );
}

#[test]
fn criterion_08_density_vs_monte_carlo() {
    let single =
        Packing::new(vec![Point3::ORIGIN], 4.0, PackingKind::Random, None).unwrap();
    let exact_single_1 = single.density(1.0).unwrap();
    let exact_single_2 = single.density(2.0).unwrap();

    let rand12 = generate_random_saturated(12.0, 1);
    let mut detail = String::new();
    let mut ok = (exact_single_1 - 1.0).abs() < 1e-12 && (exact_single_2 - 0.125).abs() < 1e-12;
    for (name, p) in [("fcc", fcc12()), ("random", &rand12)] {
        for r in [5.0, 8.0, 10.0] {
            let exact = p.density(r).unwrap();
            let (mc, stderr) = common::mc_density(p, r, 10_000_000, 0xBEEF ^ r.to_bits());
            let dev = (exact - mc).abs();
            ok &= dev <= 3.0 * stderr;
            detail.push_str(&format!("{name} r{r}: |{exact:.6} - {mc:.6}| = {:.1}sigma; ", dev / stderr));
        }
    }
    report(8, "density vs Monte Carlo", ok, &detail);
}

#[test]
fn criterion_09_geometry_kernel() {
    // Spherical excess on 1000 random tetrahedra.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    let mut excess_worst = 0.0f64;
    for _ in 0..1000 {
        let t = common::random_tetra(&mut rng);
        for v in 0..4 {
            let others: Vec<usize> = (0..4).filter(|&i| i != v).collect();
            let sol = solid_angle_cone(t[v], t[others[0]], t[others[1]], t[others[2]]).unwrap();
            let mut dih = 0.0;
            for &o in &others {
                let rest: Vec<usize> = others.iter().cloned().filter(|&i| i != o).collect();
                dih += dihedral_angle(t[v], t[o], t[rest[0]], t[rest[1]]).unwrap();
            }
            excess_worst = excess_worst.max((sol - (dih - std::f64::consts::PI)).abs());
        }
    }

    // Clip additivity on 1000 random cuts of the side-2 cube.
    let cube = ConvexPolytope::cube(Point3::ORIGIN, 1.0);
    let mut clip_worst = 0.0f64;
    for _ in 0..1000 {
        let n = common::sphere_dir(&mut rng);
        let q = Point3::new(
            rng.random::<f64>() * 2.0 - 1.0,
            rng.random::<f64>() * 2.0 - 1.0,
            rng.random::<f64>() * 2.0 - 1.0,
        );
        let h = HalfSpace::new(n, n.dot(q));
        let a = cube.clip_halfspace(h).volume();
        let b = cube.clip_halfspace(h.complement()).volume();
        clip_worst = clip_worst.max((a + b - 8.0).abs() / 8.0);
    }

    let ok = excess_worst < 1e-9 && clip_worst < 1e-9;
    report(
        9,
        "geometry kernel",
        ok,
        &format!("max excess-identity error {excess_worst:.2e}, max clip additivity error {clip_worst:.2e}"),
    );
}
