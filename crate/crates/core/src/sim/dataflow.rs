//! Trace-driven aggregation of tile costs and inter-die transfers.

use serde::{Deserialize, Serialize};

use crate::graph::io::csr_byte_len;
use crate::partition::TopSolve;
use crate::solver::ExecutionTrace;

use super::calibrate::default_update_probability;
use super::cost::{simulate_fw_tile, simulate_mp_tile, transfer_seconds, TileCost, Writes};
use super::report::{BlockCost, BlockBreakdown, PhaseReport, ReportHeader, SimReport, StageReport, Totals, Workload};
use super::{DeviceConfig, SimError};

/// Where FW write counts come from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WriteMode {
    /// Exact counts recorded in the trace.
    #[default]
    Instrumented,
    /// The configured (or calibrated) update probability.
    Estimated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Die {
    Fw,
    Mp,
}

struct Phase {
    name: String,
    level: Option<usize>,
    die: Die,
    jobs: Vec<TileCost>,
}

impl Phase {
    /// Round-robin over `tiles`; the phase lasts as long as its busiest tile.
    fn makespan(&self, tiles: usize) -> u64 {
        let mut load = vec![0u64; tiles.min(self.jobs.len()).max(1)];
        let lanes = load.len();
        for (i, job) in self.jobs.iter().enumerate() {
            load[i % lanes] += job.cycles;
        }
        load.into_iter().max().unwrap_or(0)
    }
}

pub fn simulate_dataflow(trace: &ExecutionTrace, cfg: &DeviceConfig, mode: WriteMode) -> Result<SimReport, SimError> {
    cfg.validate()?;
    check_fits(trace, cfg)?;
    let p = cfg.update_probability.unwrap_or_else(default_update_probability);
    let fw_writes = |measured: u64| match mode {
        WriteMode::Instrumented => Writes::Measured(measured),
        WriteMode::Estimated => Writes::Estimated(p),
    };
    let word = cfg.word_bytes();

    let mut phases: Vec<Phase> = Vec::new();
    for lv in &trace.levels {
        let jobs = lv
            .components
            .iter()
            .map(|c| simulate_fw_tile(c.size, c.size, fw_writes(c.closure.updates), cfg))
            .collect::<Result<_, _>>()?;
        phases.push(Phase {
            name: "intra_fw".into(),
            level: Some(lv.level),
            die: Die::Fw,
            jobs,
        });
    }
    phases.extend(top_phases(trace, cfg, mode, p)?);
    for lv in trace.levels.iter().rev() {
        let mut jobs = Vec::new();
        let mut injected = 0u64;
        for c in &lv.components {
            if let Some(re) = c.reclosure {
                jobs.push(simulate_fw_tile(c.size, c.size, fw_writes(re.updates), cfg)?);
                injected += c.injected;
            }
        }
        if injected > 0 {
            jobs.push(TileCost::writes_only(injected, cfg));
        }
        phases.push(Phase {
            name: "inject_fw".into(),
            level: Some(lv.level),
            die: Die::Fw,
            jobs,
        });
        let merges = lv
            .merges
            .iter()
            .map(|m| simulate_mp_tile(m.rows * m.target_boundary, m.source_boundary, cfg))
            .collect::<Result<_, _>>()?;
        phases.push(Phase {
            name: "cross_merge".into(),
            level: Some(lv.level),
            die: Die::Mp,
            jobs: merges,
        });
    }

    let stages = stage_bytes(trace, word)
        .into_iter()
        .enumerate()
        .map(|(i, bytes)| stage_report(i + 1, bytes, cfg))
        .collect::<Vec<_>>();

    let mut fw_die = BlockCost::default();
    let mut mp_die = BlockCost::default();
    let mut permutation = BlockCost::default();
    let mut comparator = BlockCost::default();
    let mut phase_reports = Vec::with_capacity(phases.len());
    let mut compute_cycles = 0u64;
    for ph in &phases {
        let tiles = match ph.die {
            Die::Fw => cfg.fw_tiles,
            Die::Mp => cfg.mp_tiles,
        };
        let makespan = ph.makespan(tiles);
        compute_cycles += makespan;
        let mut work = 0u64;
        for job in &ph.jobs {
            work += job.cycles;
            let (die, side) = match ph.die {
                Die::Fw => (&mut fw_die, &mut permutation),
                Die::Mp => (&mut mp_die, &mut comparator),
            };
            let side_cycles = job.permutation_cycles + job.comparator_cycles;
            let share = if job.cycles == 0 {
                0.0
            } else {
                side_cycles as f64 / job.cycles as f64
            };
            let logic_j = job.cycles as f64 * cfg.logic_pj_per_cycle * 1e-12;
            die.add(job.cycles - side_cycles, job.energy_j - logic_j * share, job.cell_writes, cfg);
            side.add(side_cycles, logic_j * share, 0, cfg);
        }
        phase_reports.push(PhaseReport {
            name: ph.name.clone(),
            level: ph.level,
            die: match ph.die {
                Die::Fw => "fw".into(),
                Die::Mp => "mp".into(),
            },
            jobs: ph.jobs.len(),
            work_cycles: work,
            makespan_cycles: makespan,
        });
    }

    let mut interconnect = BlockCost::default();
    for s in &stages {
        interconnect.seconds += s.seconds;
        interconnect.energy_j += s.energy_j;
    }
    let compute_seconds = compute_cycles as f64 * cfg.clock_ns * 1e-9;
    let overlap_seconds = if cfg.pipelining {
        stages[2].seconds.min(compute_seconds)
    } else {
        0.0
    };
    let blocks = BlockBreakdown {
        fw_die,
        mp_die,
        permutation,
        comparator,
        interconnect,
    };
    let totals = Totals {
        compute_cycles,
        compute_seconds,
        transfer_seconds: interconnect.seconds,
        overlap_seconds,
        critical_path_seconds: compute_seconds + interconnect.seconds - overlap_seconds,
        energy_j: blocks.energy_j(),
        bytes: stages.iter().map(|s| s.bytes).sum(),
        cell_writes: fw_die.cell_writes + mp_die.cell_writes,
    };

    Ok(SimReport {
        header: ReportHeader::new(cfg),
        write_mode: mode,
        update_probability: (mode == WriteMode::Estimated).then_some(p),
        workload: Workload::from_trace(trace),
        stages,
        blocks,
        phases: phase_reports,
        totals,
    })
}

fn check_fits(trace: &ExecutionTrace, cfg: &DeviceConfig) -> Result<(), SimError> {
    let side = cfg.unit_rows.min(cfg.unit_cols);
    for lv in &trace.levels {
        if let Some(c) = lv.components.iter().find(|c| c.size > side) {
            return Err(SimError::Consistency(format!(
                "level {} holds a {}-vertex component but units are {side} wide",
                lv.level, c.size
            )));
        }
    }
    let top_side = match trace.top.solve {
        TopSolve::Direct => trace.top.vertices,
        TopSolve::Blocked { block } => block,
    };
    if top_side > side {
        return Err(SimError::Consistency(format!(
            "top closure needs {top_side}-wide blocks but units are {side} wide"
        )));
    }
    Ok(())
}

/// The top boundary graph: one FW tile, or the three blocked phases per
/// diagonal block when recursion stalled.
fn top_phases(trace: &ExecutionTrace, cfg: &DeviceConfig, mode: WriteMode, p: f64) -> Result<Vec<Phase>, SimError> {
    let top = &trace.top;
    let measured = match mode {
        WriteMode::Instrumented => top.stats.updates,
        WriteMode::Estimated => {
            let n = top.vertices as f64;
            (p * n * (n - 1.0).max(0.0).powi(2)).round() as u64
        }
    };
    let block = match top.solve {
        TopSolve::Direct => {
            let tile = simulate_fw_tile(top.vertices, top.vertices, Writes::Measured(measured), cfg)?;
            return Ok(vec![Phase {
                name: "top_fw".into(),
                level: None,
                die: Die::Fw,
                jobs: vec![tile],
            }]);
        }
        TopSolve::Blocked { block } => block,
    };
    let n = top.vertices;
    let nb = n.div_ceil(block);
    let side = |b: usize| block.min(n - b * block);
    let mut phases = Vec::new();
    for kb in 0..nb {
        let sk = side(kb);
        let mut diagonal = vec![simulate_fw_tile(sk, sk, Writes::Measured(0), cfg)?];
        if kb == 0 {
            diagonal.push(TileCost::writes_only(measured, cfg));
        }
        phases.push(Phase {
            name: "top_diagonal".into(),
            level: None,
            die: Die::Fw,
            jobs: diagonal,
        });
        let mut panels = Vec::new();
        let mut updates = Vec::new();
        for b in (0..nb).filter(|&b| b != kb) {
            let s = side(b).max(sk);
            panels.push(simulate_fw_tile(s, sk, Writes::Measured(0), cfg)?);
            panels.push(simulate_fw_tile(s, sk, Writes::Measured(0), cfg)?);
            for c in (0..nb).filter(|&c| c != kb) {
                updates.push(simulate_mp_tile(side(b) * side(c), sk, cfg)?);
            }
        }
        phases.push(Phase {
            name: "top_panels".into(),
            level: None,
            die: Die::Fw,
            jobs: panels,
        });
        phases.push(Phase {
            name: "top_update".into(),
            level: None,
            die: Die::Mp,
            jobs: updates,
        });
    }
    Ok(phases)
}

/// Bytes of stages 1..=7 implied by the trace.
fn stage_bytes(trace: &ExecutionTrace, word: u64) -> [u64; 7] {
    let sq = |n: usize| (n * n) as u64 * word;
    let mut b = [0u64; 7];
    b[0] = csr_byte_len(trace.vertices, trace.edges);
    for lv in &trace.levels {
        for c in &lv.components {
            if lv.level == 0 {
                b[1] += sq(c.size);
            } else {
                b[2] += sq(c.size);
            }
            b[2] += sq(c.boundary);
            if c.reclosure.is_some() {
                b[4] += sq(c.boundary);
            }
        }
        for m in &lv.merges {
            b[3] += (m.rows * m.source_boundary + m.source_boundary * m.target_boundary + m.target_boundary * m.cols)
                as u64
                * word;
        }
        if !lv.merges.is_empty() {
            b[6] += sq(lv.boundary_vertices);
        }
    }
    b[2] += sq(trace.top.vertices);
    if let Some(l0) = trace.levels.first() {
        for c in &l0.components {
            b[5] += csr_byte_len(c.size, c.size * c.size.saturating_sub(1));
        }
        for m in &l0.merges {
            b[5] += csr_byte_len(m.rows + m.cols, m.rows * m.cols);
        }
    }
    b
}

const STAGE_NAMES: [&str; 7] = [
    "csr_load",
    "dense_expand",
    "boundary_build",
    "merge_fetch",
    "inject_sync",
    "result_store",
    "boundary_fetch",
];

fn stage_report(stage: usize, bytes: u64, cfg: &DeviceConfig) -> StageReport {
    let link = cfg.ucie_gbps().min(cfg.hbm_gbps);
    let (tier, gbps, pj_per_bit) = match stage {
        1 | 7 => ("fenand", cfg.fenand_gbps, cfg.fenand_read_pj_per_bit),
        6 => ("fenand", cfg.fenand_gbps, cfg.fenand_write_pj_per_bit),
        _ => ("hbm3_ucie", link, cfg.hbm_pj_per_bit + cfg.ucie_pj_per_bit),
    };
    StageReport {
        stage,
        name: STAGE_NAMES[stage - 1].into(),
        tier: tier.into(),
        bytes,
        seconds: transfer_seconds(bytes, gbps),
        energy_j: bytes as f64 * 8.0 * pj_per_bit * 1e-12,
    }
}
