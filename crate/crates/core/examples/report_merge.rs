//! Writes two simulation reports and a solve summary, then merges them into
//! one table the way `pim-apsp report` does.

use pim_apsp::experiment::{cmd_report, cmd_simulate, cmd_solve, sweep_points, GraphSource, ReportFormat, SimulateSpec, SolveSpec, Topology};
use pim_apsp::sim::{DeviceConfig, WriteMode};
use pim_apsp::solver::SolverConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("pim-apsp-report");
    let solver = SolverConfig::with_tile_limit(64);
    cmd_simulate(&SimulateSpec {
        points: sweep_points(&["er", "nws"], &[256], &[8.0], &[3], 0.05)?,
        solver: solver.clone(),
        device: DeviceConfig::default(),
        write_mode: WriteMode::Instrumented,
        output: Some(dir.join("sim")),
    })?;
    cmd_solve(&SolveSpec {
        source: GraphSource::Generated {
            topology: Topology::Nws { k: 8, p: 0.05 },
            n: 256,
            seed: 3,
        },
        solver,
        assignment: None,
        verify: None,
        output: Some(dir.join("solve")),
    })?;
    let inputs = vec![
        dir.join("sim/er_n256_d8_s3.json"),
        dir.join("sim/nws_n256_d8_s3.json"),
        dir.join("solve/summary.json"),
    ];
    print!("{}", cmd_report(&inputs)?.render(ReportFormat::Markdown));
    Ok(())
}
