//! Device constants, per-tile costs, and a full trace-driven report.

use pim_apsp::graph::gen_nws;
use pim_apsp::sim::{
    bit_serial_cost, comparator_tree_cycles, permutation_unit_cost, simulate_dataflow, simulate_fw_tile,
    simulate_mp_tile, BitSerialOp, DeviceConfig, WriteMode, Writes,
};
use pim_apsp::solver::{solve_apsp, SolverConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = DeviceConfig::default();
    println!("add {} cycles, min {} cycles", bit_serial_cost(BitSerialOp::Add, &cfg), bit_serial_cost(BitSerialOp::SubMin, &cfg));
    println!("comparator tree over 1024 words: {} cycles", comparator_tree_cycles(1024, &cfg));
    println!("permutation of a 1024-row block: {} cycles", permutation_unit_cost(1024, &cfg));
    let tile = simulate_fw_tile(1024, 1024, Writes::Estimated(0.01), &cfg)?;
    println!("full FW tile: {} cycles = {:.3} ms, ~{} cell writes", tile.cycles, tile.seconds * 1e3, tile.cell_writes);
    println!("one MP row at width 1024: {} cycles", simulate_mp_tile(1, 1024, &cfg)?.cycles);

    let g = gen_nws(3000, 8, 0.02, 5)?;
    let r = solve_apsp(&g, &SolverConfig { workers: 4, ..SolverConfig::default() })?;
    let report = simulate_dataflow(&r.trace, &cfg, WriteMode::Instrumented)?;
    println!("\n{}", report.to_text());
    Ok(())
}
