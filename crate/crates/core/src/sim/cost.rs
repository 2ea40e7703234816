//! Closed-form per-kernel costs.

use serde::{Deserialize, Serialize};

use super::{DeviceConfig, SimError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BitSerialOp {
    Add,
    SubMin,
}

/// Cycles of one word-parallel bit-serial operation across a unit.
///
/// An add is, per bit, two XORs for the sum plus minority and NOT for the
/// carry. A min runs the same loop as a subtraction, reads the sign, then
/// spends one write pulse on the selective overwrite. The pulse is charged
/// whether or not any cell fires, since the rows update in lockstep.
pub fn bit_serial_cost(op: BitSerialOp, cfg: &DeviceConfig) -> u64 {
    let add = cfg.bits * (2 * cfg.cycles_xor + cfg.cycles_minority + cfg.cycles_not);
    match op {
        BitSerialOp::Add => add,
        BitSerialOp::SubMin => add + 1 + cfg.write_pulse_cycles(),
    }
}

/// Stream-in cycle plus one pipelined stage per `fanin`-ary reduction level.
pub fn comparator_tree_cycles(width: usize, cfg: &DeviceConfig) -> u64 {
    let mut stages = 0u64;
    let mut reach = 1usize;
    while reach < width {
        reach = reach.saturating_mul(cfg.comparator_fanin);
        stages += 1;
    }
    1 + cfg.comparator_stage_cycles * stages
}

/// One DMA read and write per burst window of rows.
pub fn permutation_unit_cost(n: usize, cfg: &DeviceConfig) -> u64 {
    n.div_ceil(cfg.burst_rows) as u64 * (cfg.dma_read_cycles + cfg.dma_write_cycles)
}

/// How many cells a kernel wrote.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode", content = "value")]
pub enum Writes {
    /// Counted by running the functional kernel.
    Measured(u64),
    /// Fraction of relaxations assumed to fire.
    Estimated(f64),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TileCost {
    pub cycles: u64,
    pub seconds: f64,
    pub energy_j: f64,
    pub cell_writes: u64,
    /// Share of `cycles` spent in the permutation unit.
    pub permutation_cycles: u64,
    /// Share of `cycles` spent in comparator trees.
    pub comparator_cycles: u64,
}

impl TileCost {
    fn new(cycles: u64, cell_writes: u64, cfg: &DeviceConfig) -> Self {
        TileCost {
            cycles,
            seconds: cycles as f64 * cfg.clock_ns * 1e-9,
            energy_j: (cell_writes as f64 * cfg.bits as f64 * cfg.write_energy_pj
                + cycles as f64 * cfg.logic_pj_per_cycle)
                * 1e-12,
            cell_writes,
            permutation_cycles: 0,
            comparator_cycles: 0,
        }
    }

    /// Write energy of cells not attributed to any tile's cycles.
    pub fn writes_only(cell_writes: u64, cfg: &DeviceConfig) -> Self {
        TileCost::new(0, cell_writes, cfg)
    }
}

/// One FW pass over an `n x n` block: per pivot, a vector add and a
/// selective min over the main block, then a permutation bringing the next
/// pivot into the panels.
pub fn simulate_fw_tile(n: usize, pivots: usize, writes: Writes, cfg: &DeviceConfig) -> Result<TileCost, SimError> {
    if n > cfg.unit_rows || n > cfg.unit_cols {
        return Err(SimError::Capacity {
            what: "FW block side",
            size: n,
            limit: cfg.unit_rows.min(cfg.unit_cols),
        });
    }
    if pivots > n {
        return Err(SimError::Argument(format!("{pivots} pivots on a {n}-vertex block")));
    }
    let compute = if n > 1 {
        bit_serial_cost(BitSerialOp::Add, cfg) + bit_serial_cost(BitSerialOp::SubMin, cfg)
    } else {
        0
    };
    let perm = permutation_unit_cost(n, cfg);
    let cell_writes = match writes {
        Writes::Measured(w) => w,
        Writes::Estimated(p) => {
            let slots = pivots as f64 * ((n.saturating_sub(1)) as f64).powi(2);
            (p * slots).round() as u64
        }
    };
    let mut cost = TileCost::new(pivots as u64 * (compute + perm), cell_writes, cfg);
    cost.permutation_cycles = pivots as u64 * perm;
    Ok(cost)
}

/// A two-stage chained min-plus pass: per row, two vector adds and two
/// comparator-tree reductions of width `inner`. Each row writes one word.
pub fn simulate_mp_tile(rows: usize, inner: usize, cfg: &DeviceConfig) -> Result<TileCost, SimError> {
    if inner > cfg.unit_cols {
        return Err(SimError::Capacity {
            what: "MP reduction width",
            size: inner,
            limit: cfg.unit_cols,
        });
    }
    if rows == 0 || inner == 0 {
        return Ok(TileCost::default());
    }
    let tree = comparator_tree_cycles(inner, cfg);
    let per_row = 2 * bit_serial_cost(BitSerialOp::Add, cfg) + 2 * tree;
    let mut cost = TileCost::new(rows as u64 * per_row, rows as u64, cfg);
    cost.comparator_cycles = rows as u64 * 2 * tree;
    Ok(cost)
}

/// Seconds to move `bytes` over a link of `gbps` gigabits per second.
pub fn transfer_seconds(bytes: u64, gbps: f64) -> f64 {
    bytes as f64 * 8.0 / (gbps * 1e9)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> DeviceConfig {
        DeviceConfig::default()
    }

    #[test]
    fn add_composition() {
        let one_bit = DeviceConfig { bits: 1, ..cfg() };
        assert_eq!(bit_serial_cost(BitSerialOp::Add, &one_bit), 6);
        assert_eq!(bit_serial_cost(BitSerialOp::Add, &cfg()), 192);
        let fast_xor = DeviceConfig { cycles_xor: 1, ..cfg() };
        assert_eq!(bit_serial_cost(BitSerialOp::Add, &fast_xor), 128);
        assert_eq!(bit_serial_cost(BitSerialOp::SubMin, &cfg()), 203);
    }

    #[test]
    fn comparator_tree() {
        assert_eq!(comparator_tree_cycles(1024, &cfg()), 13);
        assert_eq!(comparator_tree_cycles(1, &cfg()), 1);
        assert_eq!(comparator_tree_cycles(32, &cfg()), 7);
        assert_eq!(comparator_tree_cycles(33, &cfg()), 13);
    }

    #[test]
    fn permutation_bursts() {
        assert_eq!(permutation_unit_cost(32, &cfg()), 11);
        assert_eq!(permutation_unit_cost(1024, &cfg()), 352);
        assert_eq!(permutation_unit_cost(1, &cfg()), 11);
    }

    #[test]
    fn fw_tile_cases() {
        let single = simulate_fw_tile(1, 1, Writes::Measured(0), &cfg()).unwrap();
        assert_eq!(single.cycles, 11);
        assert_eq!(single.cycles, single.permutation_cycles);
        let full = simulate_fw_tile(1024, 1024, Writes::Measured(5), &cfg()).unwrap();
        assert_eq!(full.cycles, 764_928);
        assert_eq!(full.cell_writes, 5);
        assert!((full.seconds - 764_928.0 * 2e-9).abs() < 1e-15);
        assert!(simulate_fw_tile(1025, 1, Writes::Measured(0), &cfg()).is_err());
        assert!(simulate_fw_tile(4, 5, Writes::Measured(0), &cfg()).is_err());
        let est = simulate_fw_tile(11, 11, Writes::Estimated(0.5), &cfg()).unwrap();
        assert_eq!(est.cell_writes, 550);
    }

    #[test]
    fn mp_tile_cases() {
        assert_eq!(simulate_mp_tile(1, 1024, &cfg()).unwrap().cycles, 410);
        assert_eq!(simulate_mp_tile(0, 1024, &cfg()).unwrap().cycles, 0);
        let one = simulate_mp_tile(7, 100, &cfg()).unwrap();
        let two = simulate_mp_tile(14, 100, &cfg()).unwrap();
        assert_eq!(two.cycles, 2 * one.cycles);
        assert!(simulate_mp_tile(1, 2048, &cfg()).is_err());
    }

    #[test]
    fn four_megabytes_over_ucie() {
        let s = transfer_seconds(4_000_000, cfg().ucie_gbps());
        assert!((s - 15.625e-6).abs() < 1e-15);
    }
}
