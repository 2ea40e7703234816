use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::partition::{FwKernel, KPolicy, DEFAULT_TILE_LIMIT};
use crate::sim::WriteMode;
use crate::solver::SolverConfig;

use super::{
    cmd_generate, cmd_report, cmd_simulate, cmd_solve, load_device_config, sweep_csv, sweep_points, ExperimentError,
    GenerateSpec, GraphFormat, GraphSource, ReportFormat, SimulateSpec, SolveSpec, SweepPoint, Topology, VerifySpec,
};

#[derive(Debug, Parser)]
#[command(name = "pim-apsp", version, about = "Recursive partitioned APSP and a PIM cost model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a seeded synthetic graph.
    Generate {
        #[command(subcommand)]
        topology: GenTopology,
    },
    /// Solve APSP, optionally verify against Dijkstra and persist blocks.
    Solve(SolveArgs),
    /// Solve in trace mode and run the device model, over one graph or a sweep.
    Simulate(SimulateArgs),
    /// Merge report and summary JSON files into one table.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Edgelist,
    Csr,
}

#[derive(Debug, Args)]
pub struct GenOut {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value = "edgelist")]
    format: FormatArg,
    /// Output file; defaults to a name built from the parameters.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum GenTopology {
    /// Directed Erdős–Rényi graph.
    Er {
        #[arg(long)]
        degree: f64,
        #[command(flatten)]
        common: GenOut,
    },
    /// Newman–Watts–Strogatz ring with shortcuts.
    Nws {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: f64,
        #[command(flatten)]
        common: GenOut,
    },
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    #[arg(long, default_value_t = DEFAULT_TILE_LIMIT)]
    tile_limit: usize,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, value_enum, default_value = "classic")]
    kernel: KernelArg,
    #[arg(long, default_value_t = 1.03)]
    imbalance: f64,
    /// Parts per level instead of ceil(n / tile_limit).
    #[arg(long)]
    parts: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KernelArg {
    Classic,
    Remapped,
}

impl SolverArgs {
    fn config(&self, materialize_cross: bool) -> SolverConfig {
        SolverConfig {
            tile_limit: self.tile_limit,
            materialize_cross,
            workers: self.workers,
            kernel: match self.kernel {
                KernelArg::Classic => FwKernel::Classic,
                KernelArg::Remapped => FwKernel::Remapped,
            },
            policy: KPolicy {
                parts: self.parts,
                imbalance: self.imbalance,
                ..KPolicy::default()
            },
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TopologyArg {
    Er,
    Nws,
}

/// Exactly one of `--input` or `--topology`.
#[derive(Debug, Args)]
pub struct SingleInput {
    #[arg(long, conflicts_with = "topology", required_unless_present = "topology")]
    input: Option<PathBuf>,
    #[arg(long, value_enum, requires_all = ["n", "seed"])]
    topology: Option<TopologyArg>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    degree: Option<f64>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0.05)]
    p: f64,
}

impl SingleInput {
    fn source(&self) -> Result<GraphSource, ExperimentError> {
        if let Some(path) = &self.input {
            return Ok(GraphSource::File(path.clone()));
        }
        let (Some(n), Some(seed)) = (self.n, self.seed) else {
            return Err(ExperimentError::Usage("generated input needs --n and --seed".into()));
        };
        let topology = match self.topology {
            Some(TopologyArg::Er) => Topology::Er {
                degree: self.degree.ok_or_else(|| ExperimentError::Usage("er needs --degree".into()))?,
            },
            Some(TopologyArg::Nws) => Topology::Nws {
                k: self.k.ok_or_else(|| ExperimentError::Usage("nws needs --k".into()))?,
                p: self.p,
            },
            None => return Err(ExperimentError::Usage("give --input or --topology".into())),
        };
        Ok(GraphSource::Generated { topology, n, seed })
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    input: SingleInput,
    #[command(flatten)]
    solver: SolverArgs,
    /// Compute every cross-component block up front.
    #[arg(long)]
    materialize_cross: bool,
    /// Level-0 assignment file (one part id per line).
    #[arg(long)]
    assignment: Option<PathBuf>,
    #[arg(long)]
    verify: bool,
    #[arg(long, default_value_t = 32)]
    sample: usize,
    #[arg(long, default_value_t = 0)]
    verify_seed: u64,
    /// Result directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// A graph file; otherwise the sweep axes below.
    #[arg(long, conflicts_with_all = ["topologies", "sizes", "degrees"])]
    input: Option<PathBuf>,
    #[arg(long = "topology", value_delimiter = ',', default_value = "er")]
    topologies: Vec<String>,
    #[arg(long = "n", value_delimiter = ',')]
    sizes: Vec<usize>,
    #[arg(long = "degree", value_delimiter = ',')]
    degrees: Vec<f64>,
    #[arg(long = "seed", value_delimiter = ',')]
    seeds: Vec<u64>,
    /// Shortcut probability for NWS points.
    #[arg(long, default_value_t = 0.05)]
    p: f64,
    #[command(flatten)]
    solver: SolverArgs,
    /// Device config (TOML or JSON); falls back to $PIM_APSP_DEVICE_CONFIG.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Use the update probability instead of measured write counts.
    #[arg(long)]
    estimate_writes: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    print: Option<PrintArg>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PrintArg {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    inputs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TableArg {
    Csv,
    Markdown,
}

fn print(text: &str) -> Result<(), ExperimentError> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|source| ExperimentError::Io {
            path: "<stdout>".into(),
            source,
        })
}

fn run(cli: Cli) -> Result<(), ExperimentError> {
    match cli.command {
        Command::Generate { topology } => {
            let (topology, common, stem) = match topology {
                GenTopology::Er { degree, common } => {
                    let stem = format!("er_n{}_d{}_s{}", common.n, degree, common.seed);
                    (Topology::Er { degree }, common, stem)
                }
                GenTopology::Nws { k, p, common } => {
                    let stem = format!("nws_n{}_k{}_p{}_s{}", common.n, k, p, common.seed);
                    (Topology::Nws { k, p }, common, stem)
                }
            };
            let (format, ext) = match common.format {
                FormatArg::Edgelist => (GraphFormat::EdgeList, "txt"),
                FormatArg::Csr => (GraphFormat::Csr, "csr"),
            };
            let output = common.out.unwrap_or_else(|| PathBuf::from(format!("{stem}.{ext}")));
            let g = cmd_generate(&GenerateSpec {
                topology,
                n: common.n,
                seed: common.seed,
                format,
                output: output.clone(),
            })?;
            eprintln!("wrote {} ({} vertices, {} arcs)", output.display(), g.n(), g.edge_count());
            Ok(())
        }
        Command::Solve(a) => {
            let spec = SolveSpec {
                source: a.input.source()?,
                solver: a.solver.config(a.materialize_cross),
                assignment: a.assignment,
                verify: a.verify.then_some(VerifySpec {
                    sample: a.sample,
                    seed: a.verify_seed,
                }),
                output: a.out,
            };
            let summary = cmd_solve(&spec);
            if let Ok(s) = &summary {
                print(&(serde_json::to_string_pretty(s).expect("summary serializes") + "\n"))?;
            }
            summary.map(|_| ())
        }
        Command::Simulate(a) => {
            let points = match a.input {
                Some(path) => vec![SweepPoint::file(path)],
                None => {
                    if a.sizes.is_empty() || a.degrees.is_empty() {
                        return Err(ExperimentError::Usage("simulate needs --input, or --n and --degree".into()));
                    }
                    let seeds = if a.seeds.is_empty() { vec![0] } else { a.seeds };
                    let names: Vec<&str> = a.topologies.iter().map(String::as_str).collect();
                    sweep_points(&names, &a.sizes, &a.degrees, &seeds, a.p)?
                }
            };
            let spec = SimulateSpec {
                points,
                solver: a.solver.config(false),
                device: load_device_config(a.config.as_deref())?,
                write_mode: if a.estimate_writes {
                    WriteMode::Estimated
                } else {
                    WriteMode::Instrumented
                },
                output: a.out,
            };
            let rows = cmd_simulate(&spec)?;
            let mode = a.print.unwrap_or(if rows.len() == 1 { PrintArg::Text } else { PrintArg::Csv });
            match mode {
                PrintArg::Text => rows.iter().try_for_each(|r| print(&r.report.to_text())),
                PrintArg::Json => rows.iter().try_for_each(|r| print(&r.report.to_json())),
                PrintArg::Csv => print(&sweep_csv(&rows)),
            }
        }
        Command::Report(a) => {
            let table = cmd_report(&a.inputs)?;
            let text = table.render(match a.format {
                TableArg::Csv => ReportFormat::Csv,
                TableArg::Markdown => ReportFormat::Markdown,
            });
            match a.out {
                Some(path) => super::write_file(&path, text),
                None => print(&text),
            }
        }
    }
}

/// Parses `args` (program name first) and runs the command; returns the
/// process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
