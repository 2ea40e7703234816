//! Exact APSP through the recursion: solve, query, verify against
//! Dijkstra, and persist the blocks.

use pim_apsp::graph::gen_nws;
use pim_apsp::solver::{solve_apsp, verify_against_oracle, write_result, SolverConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = gen_nws(600, 6, 0.02, 42)?;
    let cfg = SolverConfig {
        workers: 4,
        ..SolverConfig::with_tile_limit(64)
    };
    let r = solve_apsp(&g, &cfg)?;
    println!(
        "{} vertices: depth {}, top {:?} over {} boundary vertices",
        g.n(),
        r.hierarchy.depth(),
        r.hierarchy.top,
        r.top_db.rows()
    );
    for lv in &r.trace.levels {
        let updates: u64 = lv.components.iter().map(|c| c.closure.updates).sum();
        println!(
            "  level {}: {} components, {} merges, {} step-1 updates",
            lv.level,
            lv.components.len(),
            lv.merges.len(),
            updates
        );
    }

    for (u, v) in [(0, 1), (0, 300), (17, 599), (250, 250)] {
        println!("d({u}, {v}) = {}", r.query(u, v)?);
    }

    let report = verify_against_oracle(&g, &r, 32, 1)?;
    println!(
        "Dijkstra check: {} sources, {} pairs, {} mismatches",
        report.sources.len(),
        report.pairs_checked,
        report.mismatches.len()
    );

    let dir = std::env::temp_dir().join("pim-apsp-apsp");
    let manifest = write_result(&r, &cfg, &dir)?;
    println!("wrote {} component blocks to {}", manifest.components.len(), dir.display());
    Ok(())
}
