//! Degree sweep at fixed size: modeled compute stays flat, bytes move.

use pim_apsp::experiment::{cmd_simulate, sweep_csv, sweep_points, SimulateSpec};
use pim_apsp::sim::{DeviceConfig, WriteMode};
use pim_apsp::solver::SolverConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = SimulateSpec {
        points: sweep_points(&["er"], &[1024], &[6.0, 12.0, 25.0, 50.0], &[1], 0.05)?,
        solver: SolverConfig { workers: 4, ..SolverConfig::default() },
        device: DeviceConfig::default(),
        write_mode: WriteMode::Instrumented,
        output: None,
    };
    let rows = cmd_simulate(&spec)?;
    print!("{}", sweep_csv(&rows));
    let cycles: Vec<u64> = rows.iter().map(|r| r.report.totals.compute_cycles).collect();
    println!("\ncompute cycles per degree: {cycles:?}");
    Ok(())
}
