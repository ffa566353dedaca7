//! Command implementations and report shapes.
//!
//! Every report embeds the tool version, the resolved configuration, and
//! a `quantities` table giving the defining formula of each reported
//! number. Reports are deterministic: no timestamps, no map types with
//! unstable order, and all scans collect in center-index order.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use packcert::audit::{audit_bound_on_packing, full_report, AuditConfig, AuditStep, Certificate};
use packcert::cells::{cluster_report, critical_edges, edge_angle_checks, enumerate_four_cells, gamma, ClusterRow, EdgeAngleReport};
use packcert::packing::{
    generate_cubic, generate_fcc, generate_random_saturated, Packing, PackingError,
    SaturationCertificate,
};
use packcert::score::{
    contact_sum, fcc_compatibility_check, l_func, negligibility_scan, CompatReport,
    NegligibilityRow, ScoreConstants,
};
use packcert::voronoi::{voronoi_cell, VolumeStats, VoronoiError};

use crate::output::{csv_table, emit, to_json_pretty, CsvRow, Format};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Check(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Check(_) => 1,
            CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Check(m) => write!(f, "check failed: {m}"),
            CliError::Io(m) => write!(f, "io: {m}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<PackingError> for CliError {
    fn from(e: PackingError) -> Self {
        match e {
            PackingError::Io(_) | PackingError::Schema(_) => CliError::Io(e.to_string()),
            PackingError::Invalid(_) => CliError::Check(e.to_string()),
            PackingError::ContainerExceedsGeneration { .. } => CliError::Usage(e.to_string()),
        }
    }
}

impl From<VoronoiError> for CliError {
    fn from(e: VoronoiError) -> Self {
        match e {
            VoronoiError::ContainmentViolation { .. } => CliError::Check(e.to_string()),
            VoronoiError::BoundaryVertex { .. } => CliError::Usage(e.to_string()),
        }
    }
}

impl From<packcert::score::ScoreError> for CliError {
    fn from(e: packcert::score::ScoreError) -> Self {
        match e {
            packcert::score::ScoreError::Voronoi(v) => v.into(),
            other => CliError::Check(other.to_string()),
        }
    }
}

#[derive(Serialize)]
struct Tool {
    name: &'static str,
    version: &'static str,
    mode: &'static str,
}

fn tool() -> Tool {
    Tool { name: "packcert", version: env!("CARGO_PKG_VERSION"), mode: packcert::par::mode() }
}

/// Defining formula of every quantity the reports carry.
fn quantities() -> BTreeMap<&'static str, &'static str> {
    BTreeMap::from([
        ("density", "vol(B(0,r) cap union of unit balls) / vol(B(0,r)), lens sums, exact"),
        ("saturation_worst_gap", "max over the probe grid of the distance to the nearest center; saturated at this resolution iff < 2"),
        ("voronoi_volume", "volume of the center's Voronoi cell (bisector half-space clipping)"),
        ("g_score", "G(v) = -vol(voronoi(v)) + 8 m1 - sum over neighbors u of 8 m2 L(h(v,u)), h = |u - v|/2"),
        ("contact_sum", "sum of L(h(v,u)) over neighbors with h <= 1.26; at most 12 for saturated packings"),
        ("negligibility_ratio", "S(r)/r^2 with S(r) = sum of G(v) over centers in B(0,r)"),
        ("fcc_compat_margin", "vol(voronoi(v)) + G(v) - 4 sqrt(2); nonnegative iff the score is FCC-compatible at v"),
        ("gamma", "gamma(X) = vol(X) - (2 m1/pi) tsol(X) + (8 m2/pi) sum over edges of dih(X,e) L(h(e))"),
        ("partial_cluster_sum", "sum over enumerated 4-cells with the edge critical of gamma(X) wt(X) + beta(e, X); partial: cells with fewer than four packing points are not enumerated"),
        ("audit_step", "interval or exact-integer verification of one inequality of the constant chain"),
    ])
}

fn load(path: &Path) -> Result<Packing, CliError> {
    Ok(Packing::load(path)?)
}

// ---------------------------------------------------------------- generate

pub struct GenerateArgs {
    pub kind: String,
    pub radius: f64,
    pub seed: Option<u64>,
    pub out: PathBuf,
    pub grid_step: f64,
}

pub fn cmd_generate(args: GenerateArgs) -> Result<(), CliError> {
    if args.radius < 4.0 {
        return Err(CliError::Usage(format!("--radius {} below the minimum 4", args.radius)));
    }
    let packing = match args.kind.as_str() {
        "fcc" => {
            if args.seed.is_some() {
                return Err(CliError::Usage("--seed only applies to --kind random".into()));
            }
            generate_fcc(args.radius)
        }
        "cubic" => {
            if args.seed.is_some() {
                return Err(CliError::Usage("--seed only applies to --kind random".into()));
            }
            generate_cubic(args.radius)
        }
        "random" => {
            let seed = args
                .seed
                .ok_or_else(|| CliError::Usage("--kind random requires --seed".into()))?;
            generate_random_saturated(args.radius, seed)
        }
        other => return Err(CliError::Usage(format!("unknown kind {other:?}"))),
    };
    packing.save(&args.out)?;
    let cert = packing.is_saturated(args.radius - 1.0, args.grid_step);
    println!(
        "wrote {} centers ({}) to {}",
        packing.len(),
        packing.kind(),
        args.out.display()
    );
    println!(
        "saturation: worst_gap = {:.6} at grid_step {} over B(0, {}) => {}",
        cert.worst_gap,
        cert.grid_step,
        cert.region_radius,
        if cert.saturated() { "saturated at this resolution" } else { "NOT saturated" }
    );
    Ok(())
}

// ----------------------------------------------------------------- measure

pub struct MeasureArgs {
    pub packing: PathBuf,
    pub r: Vec<f64>,
    pub region: Option<f64>,
    pub grid_step: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

#[derive(Serialize)]
struct MeasureConfig {
    packing: String,
    kind: String,
    seed: Option<u64>,
    gen_radius: f64,
    centers: usize,
    region: f64,
    r: Vec<f64>,
    grid_step: f64,
}

#[derive(Serialize)]
struct DensityRow {
    r: f64,
    value: f64,
}

#[derive(Serialize)]
struct MeasureReport {
    tool: Tool,
    config: MeasureConfig,
    constants: ScoreConstants,
    saturation: SaturationCertificate,
    density: Vec<DensityRow>,
    voronoi: VolumeStats,
    g_stats: VolumeStats,
    contact_sum_max: f64,
    negligibility: Vec<NegligibilityRow>,
    fcc_compat: CompatReport,
    density_bounds: Vec<AuditStep>,
    quantities: BTreeMap<&'static str, &'static str>,
}

fn default_region(p: &Packing) -> f64 {
    p.gen_radius() - 4.0
}

fn resolve_r(r: &[f64], p: &Packing) -> Result<Vec<f64>, CliError> {
    let list = if r.is_empty() { vec![p.gen_radius() - 1.0] } else { r.to_vec() };
    for &v in &list {
        if v < 1.0 {
            return Err(CliError::Usage(format!("container radius {v} below 1")));
        }
        if v + 1.0 > p.gen_radius() {
            return Err(CliError::Usage(format!(
                "container radius {v} + 1 exceeds the generation radius {}",
                p.gen_radius()
            )));
        }
    }
    Ok(list)
}

fn build_measure_report(p: &Packing, path: &Path, args: &MeasureArgs) -> Result<MeasureReport, CliError> {
    let region = args.region.unwrap_or_else(|| default_region(p));
    if region <= 0.0 || region > p.gen_radius() {
        return Err(CliError::Usage(format!("region {region} outside (0, gen_radius]")));
    }
    let r = resolve_r(&args.r, p)?;
    let saturation = p.is_saturated(region.min(p.gen_radius() - 1.0), args.grid_step);
    let mut density = Vec::new();
    for &rv in &r {
        density.push(DensityRow { r: rv, value: p.density(rv)? });
    }
    let interior = p.indices_within(region);
    let mut volumes = Vec::with_capacity(interior.len());
    let mut g_values = Vec::with_capacity(interior.len());
    let mut contact_max = f64::NEG_INFINITY;
    for &i in &interior {
        volumes.push(voronoi_cell(p, i)?.volume);
        g_values.push(packcert::score::g_score(p, i, &l_func)?);
        contact_max = contact_max.max(contact_sum(p, i));
    }
    let voronoi = VolumeStats::from_values(volumes.iter().cloned())
        .ok_or_else(|| CliError::Usage(format!("no centers inside region {region}")))?;
    let g_stats = VolumeStats::from_values(g_values.iter().cloned()).expect("same count");
    let negligibility_r: Vec<f64> = r.iter().cloned().filter(|&v| v <= region).collect();
    let negligibility = negligibility_scan(p, &l_func, &negligibility_r)?;
    let fcc_compat = fcc_compatibility_check(p, region, &l_func)?;
    let density_bounds = audit_bound_on_packing(p, &r, &AuditConfig::default())?;
    Ok(MeasureReport {
        tool: tool(),
        config: MeasureConfig {
            packing: path.display().to_string(),
            kind: p.kind().to_string(),
            seed: p.seed(),
            gen_radius: p.gen_radius(),
            centers: p.len(),
            region,
            r,
            grid_step: args.grid_step,
        },
        constants: *ScoreConstants::get(),
        saturation,
        density,
        voronoi,
        g_stats,
        contact_sum_max: contact_max,
        negligibility,
        fcc_compat,
        density_bounds,
        quantities: quantities(),
    })
}

fn measure_csv(rep: &MeasureReport) -> String {
    let mut rows = vec![
        CsvRow::new("tool", "name", None, rep.tool.name),
        CsvRow::new("tool", "version", None, rep.tool.version),
        CsvRow::new("tool", "mode", None, rep.tool.mode),
        CsvRow::new("config", "packing", None, &rep.config.packing),
        CsvRow::new("config", "kind", None, &rep.config.kind),
        CsvRow::new("config", "gen_radius", None, rep.config.gen_radius),
        CsvRow::new("config", "centers", None, rep.config.centers),
        CsvRow::new("config", "region", None, rep.config.region),
        CsvRow::new("config", "grid_step", None, rep.config.grid_step),
        CsvRow::new("saturation", "worst_gap", None, rep.saturation.worst_gap),
    ];
    for d in &rep.density {
        rows.push(CsvRow::new("density", "value", Some(d.r), d.value));
    }
    for (key, value) in [
        ("count", rep.voronoi.count as f64),
        ("min", rep.voronoi.min),
        ("max", rep.voronoi.max),
        ("mean", rep.voronoi.mean),
    ] {
        rows.push(CsvRow::new("voronoi", key, None, value));
    }
    for (key, value) in
        [("min", rep.g_stats.min), ("max", rep.g_stats.max), ("mean", rep.g_stats.mean)]
    {
        rows.push(CsvRow::new("g_score", key, None, value));
    }
    rows.push(CsvRow::new("contact_sum", "max", None, rep.contact_sum_max));
    for n in &rep.negligibility {
        rows.push(CsvRow::new("negligibility", "sum", Some(n.r), n.sum));
        rows.push(CsvRow::new("negligibility", "ratio", Some(n.r), n.ratio));
    }
    rows.push(CsvRow::new("fcc_compat", "min_margin", None, rep.fcc_compat.min_margin));
    rows.push(CsvRow::new("fcc_compat", "pass", None, rep.fcc_compat.pass));
    for s in &rep.density_bounds {
        rows.push(CsvRow::new("density_bound", s.name.clone(), None, s.pass));
    }
    csv_table(&rows)
}

pub fn cmd_measure(args: MeasureArgs) -> Result<(), CliError> {
    let p = load(&args.packing)?;
    let rep = build_measure_report(&p, &args.packing, &args)?;
    let content = match args.format {
        Format::Json => to_json_pretty(&rep),
        Format::Csv => measure_csv(&rep),
    };
    emit(args.out.as_deref(), &content)?;
    if !rep.fcc_compat.pass {
        return Err(CliError::Check(format!(
            "FCC-compatibility margin {} below -1e-9 at center {}",
            rep.fcc_compat.min_margin, rep.fcc_compat.argmin
        )));
    }
    Ok(())
}

// ----------------------------------------------------------- voronoi-stats

pub struct VoronoiStatsArgs {
    pub packing: PathBuf,
    pub region: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

#[derive(Serialize)]
struct VoronoiRow {
    index: usize,
    volume: f64,
    max_vertex_dist: f64,
    faces: usize,
}

#[derive(Serialize)]
struct VoronoiStatsReport {
    tool: Tool,
    config: BTreeMap<&'static str, String>,
    stats: VolumeStats,
    cells: Vec<VoronoiRow>,
    quantities: BTreeMap<&'static str, &'static str>,
}

pub fn cmd_voronoi_stats(args: VoronoiStatsArgs) -> Result<(), CliError> {
    let p = load(&args.packing)?;
    let region = args.region.unwrap_or_else(|| default_region(&p));
    let mut cells = Vec::new();
    for i in p.indices_within(region) {
        let cell = voronoi_cell(&p, i)?;
        cells.push(VoronoiRow {
            index: i,
            volume: cell.volume,
            max_vertex_dist: cell.polytope.max_vertex_dist(p.center(i)),
            faces: cell.polytope.face_count(),
        });
    }
    let stats = VolumeStats::from_values(cells.iter().map(|c| c.volume))
        .ok_or_else(|| CliError::Usage(format!("no centers inside region {region}")))?;
    let rep = VoronoiStatsReport {
        tool: tool(),
        config: BTreeMap::from([
            ("packing", args.packing.display().to_string()),
            ("region", region.to_string()),
        ]),
        stats,
        cells,
        quantities: quantities(),
    };
    let content = match args.format {
        Format::Json => to_json_pretty(&rep),
        Format::Csv => {
            let mut rows = vec![
                CsvRow::new("stats", "count", None, rep.stats.count),
                CsvRow::new("stats", "min", None, rep.stats.min),
                CsvRow::new("stats", "max", None, rep.stats.max),
                CsvRow::new("stats", "mean", None, rep.stats.mean),
            ];
            for c in &rep.cells {
                rows.push(CsvRow::new("cell", format!("volume[{}]", c.index), None, c.volume));
            }
            csv_table(&rows)
        }
    };
    emit(args.out.as_deref(), &content)?;
    Ok(())
}

// ------------------------------------------------------------------- cells

pub struct CellsArgs {
    pub packing: PathBuf,
    pub region: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

#[derive(Serialize)]
struct CellsReport {
    tool: Tool,
    config: BTreeMap<&'static str, String>,
    cell_count: usize,
    degenerate_count: usize,
    gamma_stats: Option<VolumeStats>,
    min_gamma_without_critical_edges: Option<f64>,
    critical_edge_count: usize,
    clusters: Vec<ClusterRow>,
    cluster_note: &'static str,
    edge_angles: EdgeAngleReport,
    quantities: BTreeMap<&'static str, &'static str>,
}

pub fn cmd_cells(args: CellsArgs) -> Result<(), CliError> {
    let p = load(&args.packing)?;
    let margin = 2.0 * std::f64::consts::SQRT_2;
    let region = args.region.unwrap_or_else(|| p.gen_radius() - margin);
    if region + margin > p.gen_radius() + 1e-12 {
        return Err(CliError::Usage(format!(
            "region {region} + 2 sqrt(2) exceeds gen_radius {}",
            p.gen_radius()
        )));
    }
    let consts = ScoreConstants::get();
    let enumeration = enumerate_four_cells(&p, region);
    let gammas: Vec<f64> =
        enumeration.cells.iter().map(|c| gamma(c, &l_func, consts)).collect();
    let mut min_free = f64::INFINITY;
    let mut critical_edge_count = 0usize;
    for cell in &enumeration.cells {
        let (ec, _) = critical_edges(cell, consts);
        if ec.is_empty() {
            let g = gamma(cell, &l_func, consts);
            min_free = min_free.min(g);
        }
        critical_edge_count += ec.len();
    }
    let rep = CellsReport {
        tool: tool(),
        config: BTreeMap::from([
            ("packing", args.packing.display().to_string()),
            ("region", region.to_string()),
        ]),
        cell_count: enumeration.cells.len(),
        degenerate_count: enumeration.degenerate.len(),
        gamma_stats: VolumeStats::from_values(gammas.iter().cloned()),
        min_gamma_without_critical_edges: (min_free.is_finite()).then_some(min_free),
        critical_edge_count,
        clusters: cluster_report(&p, region),
        cluster_note: "partial: cells with fewer than four packing points are not enumerated, so no sign claim is made",
        edge_angles: edge_angle_checks(&p, region),
        quantities: quantities(),
    };
    let content = match args.format {
        Format::Json => to_json_pretty(&rep),
        Format::Csv => {
            let mut rows = vec![
                CsvRow::new("cells", "count", None, rep.cell_count),
                CsvRow::new("cells", "degenerate", None, rep.degenerate_count),
                CsvRow::new("cells", "critical_edges", None, rep.critical_edge_count),
            ];
            if let Some(s) = &rep.gamma_stats {
                rows.push(CsvRow::new("gamma", "min", None, s.min));
                rows.push(CsvRow::new("gamma", "max", None, s.max));
                rows.push(CsvRow::new("gamma", "mean", None, s.mean));
            }
            for c in &rep.clusters {
                rows.push(CsvRow::new(
                    "cluster",
                    format!("partial_gamma[{}-{}]", c.edge.i, c.edge.j),
                    None,
                    c.partial_gamma,
                ));
            }
            rows.push(CsvRow::new("edge_angles", "max_edge_dihedral_sum", None, rep.edge_angles.max_edge_dihedral_sum));
            rows.push(CsvRow::new("edge_angles", "max_vertex_solid_sum", None, rep.edge_angles.max_vertex_solid_sum));
            rows.push(CsvRow::new("edge_angles", "pass", None, rep.edge_angles.pass));
            csv_table(&rows)
        }
    };
    emit(args.out.as_deref(), &content)?;
    if !rep.edge_angles.pass {
        return Err(CliError::Check("edge or vertex angle sums exceed the full-turn bounds".into()));
    }
    Ok(())
}

// ------------------------------------------------------------------- audit

pub struct AuditArgs {
    pub out: Option<PathBuf>,
    pub format: Format,
    pub tighten: Vec<(f64, f64)>,
    pub widen_ulps: u32,
}

pub fn run_audit(args: &AuditArgs) -> Certificate {
    full_report(&AuditConfig { widen_ulps: args.widen_ulps, tighten: args.tighten.clone() })
}

pub fn cmd_audit(args: AuditArgs) -> Result<(), CliError> {
    let cert = run_audit(&args);
    let content = match args.format {
        Format::Json => to_json_pretty(&cert.steps),
        Format::Csv => cert.to_csv(),
    };
    emit(args.out.as_deref(), &content)?;
    if !cert.pass {
        let failed: Vec<&str> =
            cert.steps.iter().filter(|s| !s.pass).map(|s| s.name.as_str()).collect();
        return Err(CliError::Check(format!("audit steps failed: {}", failed.join(", "))));
    }
    Ok(())
}

// ------------------------------------------------------------------ report

pub struct ReportArgs {
    pub packing: PathBuf,
    pub r: Vec<f64>,
    pub region: Option<f64>,
    pub grid_step: f64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

#[derive(Serialize)]
struct FullReport {
    tool: Tool,
    measure: MeasureReport,
    audit: Certificate,
}

pub fn cmd_report(args: ReportArgs) -> Result<(), CliError> {
    let p = load(&args.packing)?;
    let measure_args = MeasureArgs {
        packing: args.packing.clone(),
        r: args.r,
        region: args.region,
        grid_step: args.grid_step,
        out: None,
        format: Format::Json,
    };
    let measure = build_measure_report(&p, &args.packing, &measure_args)?;
    let audit = full_report(&AuditConfig::default());
    let rep = FullReport { tool: tool(), measure, audit };
    let content = match args.format {
        Format::Json => to_json_pretty(&rep),
        Format::Csv => {
            let mut out = measure_csv(&rep.measure);
            out.push_str(&rep.audit.to_csv());
            out
        }
    };
    emit(args.out.as_deref(), &content)?;
    if !rep.audit.pass {
        return Err(CliError::Check("audit certificate failed".into()));
    }
    if !rep.measure.fcc_compat.pass {
        return Err(CliError::Check("FCC-compatibility scan failed".into()));
    }
    Ok(())
}
