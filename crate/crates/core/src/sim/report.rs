use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::partition::TopSolve;
use crate::solver::ExecutionTrace;

use super::dataflow::WriteMode;
use super::DeviceConfig;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Identity and key constants of the modeled device, echoed so a report
/// can be read without its config file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportHeader {
    pub schema_version: u32,
    pub tool_version: String,
    pub config_hash: String,
    pub clock_ns: f64,
    pub write_pulse_cycles: u64,
    pub write_energy_pj: f64,
    pub ucie_gbps: f64,
    pub hbm_gbps: f64,
    pub fenand_gbps: f64,
    /// Config fields still holding placeholder values.
    pub placeholders: Vec<String>,
    pub config: DeviceConfig,
}

impl ReportHeader {
    pub fn new(cfg: &DeviceConfig) -> Self {
        ReportHeader {
            schema_version: REPORT_SCHEMA_VERSION,
            tool_version: crate::TOOL_VERSION.to_string(),
            config_hash: cfg.config_hash(),
            clock_ns: cfg.clock_ns,
            write_pulse_cycles: cfg.write_pulse_cycles(),
            write_energy_pj: cfg.write_energy_pj,
            ucie_gbps: cfg.ucie_gbps(),
            hbm_gbps: cfg.hbm_gbps,
            fenand_gbps: cfg.fenand_gbps,
            placeholders: cfg.placeholders().into_iter().map(String::from).collect(),
            config: cfg.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Workload {
    pub vertices: usize,
    pub edges: usize,
    pub tile_limit: usize,
    pub depth: usize,
    pub top: TopSolve,
    pub top_vertices: usize,
    pub components_per_level: Vec<usize>,
    pub mean_boundary_per_level: Vec<f64>,
}

impl Workload {
    pub fn from_trace(t: &ExecutionTrace) -> Self {
        Workload {
            vertices: t.vertices,
            edges: t.edges,
            tile_limit: t.tile_limit,
            depth: t.depth(),
            top: t.top.solve,
            top_vertices: t.top.vertices,
            components_per_level: t.levels.iter().map(|l| l.components.len()).collect(),
            mean_boundary_per_level: t
                .levels
                .iter()
                .map(|l| {
                    let total: usize = l.components.iter().map(|c| c.boundary).sum();
                    total as f64 / l.components.len().max(1) as f64
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StageReport {
    pub stage: usize,
    pub name: String,
    pub tier: String,
    pub bytes: u64,
    pub seconds: f64,
    pub energy_j: f64,
}

/// Work attributed to one hardware block. Cycles are summed over tiles,
/// not overlapped.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BlockCost {
    pub cycles: u64,
    pub seconds: f64,
    pub energy_j: f64,
    pub cell_writes: u64,
}

impl BlockCost {
    pub(crate) fn add(&mut self, cycles: u64, energy_j: f64, cell_writes: u64, cfg: &DeviceConfig) {
        self.cycles += cycles;
        self.seconds = self.cycles as f64 * cfg.clock_ns * 1e-9;
        self.energy_j += energy_j;
        self.cell_writes += cell_writes;
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BlockBreakdown {
    pub fw_die: BlockCost,
    pub mp_die: BlockCost,
    pub permutation: BlockCost,
    pub comparator: BlockCost,
    pub interconnect: BlockCost,
}

impl BlockBreakdown {
    pub fn energy_j(&self) -> f64 {
        self.fw_die.energy_j
            + self.mp_die.energy_j
            + self.permutation.energy_j
            + self.comparator.energy_j
            + self.interconnect.energy_j
    }

    fn rows(&self) -> [(&'static str, &BlockCost); 5] {
        [
            ("fw_die", &self.fw_die),
            ("mp_die", &self.mp_die),
            ("permutation", &self.permutation),
            ("comparator", &self.comparator),
            ("interconnect", &self.interconnect),
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseReport {
    pub name: String,
    pub level: Option<usize>,
    pub die: String,
    pub jobs: usize,
    pub work_cycles: u64,
    pub makespan_cycles: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Totals {
    /// Sum over phases of the busiest tile's cycles.
    pub compute_cycles: u64,
    pub compute_seconds: f64,
    pub transfer_seconds: f64,
    /// Prefetch time hidden behind compute when pipelining.
    pub overlap_seconds: f64,
    pub critical_path_seconds: f64,
    pub energy_j: f64,
    pub bytes: u64,
    pub cell_writes: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub header: ReportHeader,
    pub write_mode: WriteMode,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub update_probability: Option<f64>,
    pub workload: Workload,
    pub stages: Vec<StageReport>,
    pub blocks: BlockBreakdown,
    pub phases: Vec<PhaseReport>,
    pub totals: Totals,
}

pub const CSV_STAGE_COLUMNS: [&str; 7] = [
    "bytes_s1", "bytes_s2", "bytes_s3", "bytes_s4", "bytes_s5", "bytes_s6", "bytes_s7",
];

impl SimReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Column names matching [`SimReport::csv_fields`].
    pub fn csv_header() -> Vec<String> {
        let mut cols: Vec<String> = [
            "vertices",
            "edges",
            "depth",
            "compute_cycles",
            "seconds",
            "joules",
            "cell_writes",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        cols.extend(CSV_STAGE_COLUMNS.iter().map(|s| s.to_string()));
        cols.push("config_hash".into());
        cols
    }

    pub fn csv_fields(&self) -> Vec<String> {
        let t = &self.totals;
        let mut out = vec![
            self.workload.vertices.to_string(),
            self.workload.edges.to_string(),
            self.workload.depth.to_string(),
            t.compute_cycles.to_string(),
            format!("{:e}", t.critical_path_seconds),
            format!("{:e}", t.energy_j),
            t.cell_writes.to_string(),
        ];
        out.extend(self.stages.iter().map(|s| s.bytes.to_string()));
        out.push(self.header.config_hash.clone());
        out
    }

    /// Aligned human-readable tables.
    pub fn to_text(&self) -> String {
        let h = &self.header;
        let w = &self.workload;
        let mut s = String::new();
        let _ = writeln!(s, "{}  config {}", h.tool_version, &h.config_hash[..16]);
        let _ = writeln!(
            s,
            "clock {} ns | write pulse {} cycles | write energy {} pJ | UCIe {} Gb/s",
            h.clock_ns, h.write_pulse_cycles, h.write_energy_pj, h.ucie_gbps
        );
        if !h.placeholders.is_empty() {
            let _ = writeln!(s, "PLACEHOLDER values in use: {}", h.placeholders.join(", "));
        }
        let _ = writeln!(
            s,
            "graph {} vertices, {} arcs | tile {} | depth {} | top {:?} ({} vertices)",
            w.vertices, w.edges, w.tile_limit, w.depth, w.top, w.top_vertices
        );
        let _ = writeln!(s);
        let _ = writeln!(s, "{:<3} {:<16} {:<10} {:>14} {:>14} {:>14}", "#", "stage", "tier", "bytes", "seconds", "joules");
        for st in &self.stages {
            let _ = writeln!(
                s,
                "{:<3} {:<16} {:<10} {:>14} {:>14.6e} {:>14.6e}",
                st.stage, st.name, st.tier, st.bytes, st.seconds, st.energy_j
            );
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "{:<14} {:>16} {:>14} {:>14} {:>14}", "block", "cycles", "seconds", "joules", "cell writes");
        for (name, b) in self.blocks.rows() {
            let _ = writeln!(
                s,
                "{:<14} {:>16} {:>14.6e} {:>14.6e} {:>14}",
                name, b.cycles, b.seconds, b.energy_j, b.cell_writes
            );
        }
        let t = &self.totals;
        let _ = writeln!(s);
        let _ = writeln!(s, "compute cycles      {:>16}", t.compute_cycles);
        let _ = writeln!(s, "compute seconds     {:>16.6e}", t.compute_seconds);
        let _ = writeln!(s, "transfer seconds    {:>16.6e}", t.transfer_seconds);
        let _ = writeln!(s, "overlapped seconds  {:>16.6e}", t.overlap_seconds);
        let _ = writeln!(s, "critical path (s)   {:>16.6e}", t.critical_path_seconds);
        let _ = writeln!(s, "energy (J)          {:>16.6e}", t.energy_j);
        let _ = writeln!(s, "bytes moved         {:>16}", t.bytes);
        s
    }
}
