//! Reproducible experiments: the commands behind the `pim-apsp` binary.
//!
//! Every command is a plain function over a spec struct, so examples and
//! tests drive exactly what the binary runs.

mod cli;
mod merge;

pub use cli::{run_cli, Cli};
pub use merge::{cmd_report, ReportFormat, ReportTable};

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{gen_er, gen_nws, read_graph_file, write_csr, write_edge_list, Graph, GraphError};
use crate::partition::{read_assignment, PartitionError, TopSolve};
use crate::sim::{simulate_dataflow, DeviceConfig, SimError, SimReport, WriteMode};
use crate::solver::{solve_apsp, verify_against_oracle, write_result, SolveError, SolverConfig};

/// Fallback location of the device config when `--config` is absent.
pub const DEVICE_CONFIG_ENV: &str = "PIM_APSP_DEVICE_CONFIG";

pub const SUMMARY_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: GraphError },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("schema: {0}")]
    Schema(String),
    #[error("verification failed: {mismatches} mismatched pairs")]
    Verification { mismatches: usize },
}

impl ExperimentError {
    /// 0 success, 1 verification failure, 2 usage, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            ExperimentError::Verification { .. } => 1,
            ExperimentError::Io { .. } | ExperimentError::Input { .. } | ExperimentError::Schema(_) => 3,
            ExperimentError::Solve(SolveError::Io(_)) | ExperimentError::Sim(SimError::Io(_)) => 3,
            ExperimentError::Sim(SimError::Toml(_) | SimError::Json(_)) => 3,
            _ => 2,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> ExperimentError + '_ {
    move |source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write_file(path: &Path, bytes: impl AsRef<[u8]>) -> Result<(), ExperimentError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(io_err(parent))?;
    }
    fs::write(path, bytes).map_err(io_err(path))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Topology {
    Er { degree: f64 },
    Nws { k: usize, p: f64 },
}

impl Topology {
    pub fn name(&self) -> &'static str {
        match self {
            Topology::Er { .. } => "er",
            Topology::Nws { .. } => "nws",
        }
    }

    /// Nominal mean out-degree.
    pub fn degree(&self) -> f64 {
        match *self {
            Topology::Er { degree } => degree,
            Topology::Nws { k, p } => k as f64 * (1.0 + p),
        }
    }

    pub fn generate(&self, n: usize, seed: u64) -> Result<Graph, GraphError> {
        match *self {
            Topology::Er { degree } => gen_er(n, degree, seed),
            Topology::Nws { k, p } => gen_nws(n, k, p, seed),
        }
    }
}

/// One graph source: a file, or generator parameters plus a seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphSource {
    File(PathBuf),
    Generated { topology: Topology, n: usize, seed: u64 },
}

impl GraphSource {
    pub fn load(&self) -> Result<Graph, ExperimentError> {
        match self {
            GraphSource::File(path) => read_graph_file(path).map_err(|source| match source {
                GraphError::Io(e) => ExperimentError::Io {
                    path: path.clone(),
                    source: e,
                },
                other => ExperimentError::Input {
                    path: path.clone(),
                    source: other,
                },
            }),
            GraphSource::Generated { topology, n, seed } => Ok(topology.generate(*n, *seed)?),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphFormat {
    #[default]
    EdgeList,
    Csr,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenerateSpec {
    pub topology: Topology,
    pub n: usize,
    pub seed: u64,
    pub format: GraphFormat,
    pub output: PathBuf,
}

pub fn cmd_generate(spec: &GenerateSpec) -> Result<Graph, ExperimentError> {
    let g = spec.topology.generate(spec.n, spec.seed)?;
    let mut bytes = Vec::new();
    match spec.format {
        GraphFormat::EdgeList => write_edge_list(&g, &mut bytes),
        GraphFormat::Csr => write_csr(&g, &mut bytes),
    }
    .map_err(io_err(&spec.output))?;
    write_file(&spec.output, bytes)?;
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifySpec {
    pub sample: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveSpec {
    pub source: GraphSource,
    pub solver: SolverConfig,
    /// METIS-style level-0 assignment to import.
    pub assignment: Option<PathBuf>,
    pub verify: Option<VerifySpec>,
    /// Result directory (blocks, manifest, summary).
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelSummary {
    pub level: usize,
    pub vertices: usize,
    pub components: usize,
    pub boundary_min: usize,
    pub boundary_mean: f64,
    pub boundary_max: usize,
    pub boundary_graph_vertices: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub sources: usize,
    pub pairs_checked: u64,
    pub mismatches: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveSummary {
    pub schema_version: u32,
    pub kind: String,
    pub tool_version: String,
    pub source: GraphSource,
    pub config: SolverConfig,
    pub vertices: usize,
    pub edges: usize,
    pub depth: usize,
    pub top: TopSolve,
    pub top_vertices: usize,
    pub levels: Vec<LevelSummary>,
    pub wall_time_s: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verification: Option<VerifySummary>,
}

/// Solves, optionally verifies and persists. A failed verification still
/// writes its outputs before returning the error.
pub fn cmd_solve(spec: &SolveSpec) -> Result<SolveSummary, ExperimentError> {
    let g = spec.source.load()?;
    let mut cfg = spec.solver.clone();
    if let Some(path) = &spec.assignment {
        let file = fs::File::open(path).map_err(io_err(path))?;
        cfg.policy.level0_assignment = Some(read_assignment(file, g.n())?);
    }
    let start = Instant::now();
    let r = solve_apsp(&g, &cfg)?;
    let wall_time_s = start.elapsed().as_secs_f64();

    let verification = match &spec.verify {
        Some(v) => {
            let rep = verify_against_oracle(&g, &r, v.sample, v.seed)?;
            Some(VerifySummary {
                sources: rep.sources.len(),
                pairs_checked: rep.pairs_checked,
                mismatches: rep.mismatches.len(),
            })
        }
        None => None,
    };

    let levels = r
        .hierarchy
        .levels
        .iter()
        .map(|lv| {
            let b = lv.boundary_sizes();
            LevelSummary {
                level: lv.level,
                vertices: lv.vertex_count(),
                components: lv.components.len(),
                boundary_min: b.iter().copied().min().unwrap_or(0),
                boundary_mean: lv.mean_boundary_size(),
                boundary_max: b.iter().copied().max().unwrap_or(0),
                boundary_graph_vertices: lv.boundary_graph.vertex_count(),
            }
        })
        .collect();
    let summary = SolveSummary {
        schema_version: SUMMARY_SCHEMA_VERSION,
        kind: "solve_summary".into(),
        tool_version: crate::TOOL_VERSION.into(),
        source: spec.source.clone(),
        config: cfg.clone(),
        vertices: g.n(),
        edges: g.edge_count(),
        depth: r.hierarchy.depth(),
        top: r.hierarchy.top,
        top_vertices: r.top_db.rows(),
        levels,
        wall_time_s,
        verification,
    };

    if let Some(dir) = &spec.output {
        write_result(&r, &cfg, dir)?;
        let json = serde_json::to_string_pretty(&summary).map_err(SolveError::from)?;
        write_file(&dir.join("summary.json"), json + "\n")?;
    }
    match &summary.verification {
        Some(v) if v.mismatches > 0 => Err(ExperimentError::Verification {
            mismatches: v.mismatches,
        }),
        _ => Ok(summary),
    }
}

/// Resolves the device config: explicit path, then the environment
/// variable, then defaults.
pub fn load_device_config(path: Option<&Path>) -> Result<DeviceConfig, ExperimentError> {
    let env_path = std::env::var_os(DEVICE_CONFIG_ENV).map(PathBuf::from);
    match path.map(Path::to_path_buf).or(env_path) {
        Some(p) => DeviceConfig::from_path(&p).map_err(|e| match e {
            SimError::Io(source) => ExperimentError::Io { path: p, source },
            other => other.into(),
        }),
        None => Ok(DeviceConfig::default()),
    }
}

/// One graph of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub label: String,
    pub topology: Option<Topology>,
    pub source: GraphSource,
}

impl SweepPoint {
    pub fn generated(topology: Topology, n: usize, seed: u64) -> Self {
        SweepPoint {
            label: format!("{}_n{}_d{}_s{}", topology.name(), n, topology.degree(), seed),
            topology: Some(topology),
            source: GraphSource::Generated { topology, n, seed },
        }
    }

    pub fn file(path: PathBuf) -> Self {
        let label = path
            .file_stem()
            .map_or_else(|| "input".to_string(), |s| s.to_string_lossy().into_owned());
        SweepPoint {
            label,
            topology: None,
            source: GraphSource::File(path),
        }
    }
}

/// Cartesian product of sweep axes, in topology, size, degree, seed order.
/// NWS uses the nearest even `k >= 2` to each degree.
pub fn sweep_points(topologies: &[&str], sizes: &[usize], degrees: &[f64], seeds: &[u64], nws_p: f64) -> Result<Vec<SweepPoint>, ExperimentError> {
    let mut out = Vec::new();
    for &t in topologies {
        for &n in sizes {
            for &d in degrees {
                let topology = match t {
                    "er" => Topology::Er { degree: d },
                    "nws" => {
                        let k = ((d / 2.0).round() as usize).max(1) * 2;
                        Topology::Nws { k, p: nws_p }
                    }
                    other => return Err(ExperimentError::Usage(format!("unknown topology `{other}`"))),
                };
                for &seed in seeds {
                    let mut point = SweepPoint::generated(topology, n, seed);
                    point.label = format!("{t}_n{n}_d{d}_s{seed}");
                    out.push(point);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulateSpec {
    pub points: Vec<SweepPoint>,
    pub solver: SolverConfig,
    pub device: DeviceConfig,
    pub write_mode: WriteMode,
    /// Directory for per-point reports and `sweep.csv`.
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub point: SweepPoint,
    pub degree: Option<f64>,
    pub report: SimReport,
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut header = vec!["label".to_string(), "topology".into(), "degree".into()];
    header.extend(SimReport::csv_header());
    let mut s = header.join(",") + "\n";
    for row in rows {
        let mut fields = vec![
            row.point.label.clone(),
            row.point.topology.map_or("file", |t| t.name()).to_string(),
            row.degree.map_or(String::new(), |d| d.to_string()),
        ];
        fields.extend(row.report.csv_fields());
        s += &(fields.join(",") + "\n");
    }
    s
}

/// Solves each point in trace mode and runs the device model on it.
pub fn cmd_simulate(spec: &SimulateSpec) -> Result<Vec<SweepRow>, ExperimentError> {
    if spec.points.is_empty() {
        return Err(ExperimentError::Usage("simulate needs an input or a sweep".into()));
    }
    spec.device.validate()?;
    let mut rows = Vec::with_capacity(spec.points.len());
    for point in &spec.points {
        let g = point.source.load()?;
        let r = solve_apsp(&g, &spec.solver)?;
        let report = simulate_dataflow(&r.trace, &spec.device, spec.write_mode)?;
        if let Some(dir) = &spec.output {
            write_file(&dir.join(format!("{}.json", point.label)), report.to_json())?;
            write_file(&dir.join(format!("{}.txt", point.label)), report.to_text())?;
        }
        let degree = match point.topology {
            Some(t) => Some(t.degree()),
            None => Some(g.edge_count() as f64 / g.n().max(1) as f64),
        };
        rows.push(SweepRow {
            point: point.clone(),
            degree,
            report,
        });
    }
    if let Some(dir) = &spec.output {
        write_file(&dir.join("sweep.csv"), sweep_csv(&rows))?;
    }
    Ok(rows)
}
