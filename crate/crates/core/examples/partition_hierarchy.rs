//! k-way partitioning, boundary extraction and the recursion hierarchy.

use pim_apsp::graph::{gen_er, gen_nws};
use pim_apsp::partition::{build_hierarchy, edge_cut, find_boundary, partition_kway, KPolicy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = gen_nws(512, 4, 0.01, 3)?;
    let parts = partition_kway(&g, 8, 1.03)?;
    println!("8-way split of a 512-vertex ring: cut {} arcs", edge_cut(&g, &parts));
    for p in 0..3 {
        println!("  part {p} boundary {:?}", find_boundary(&g, &parts, p)?);
    }

    for (name, g, tile) in [
        ("nws ring, tile 16", gen_nws(512, 4, 0.0, 3)?, 16),
        ("nws small-world, tile 32", gen_nws(512, 4, 0.02, 3)?, 32),
        ("er degree 8, tile 64", gen_er(512, 8.0, 3)?, 64),
    ] {
        let h = build_hierarchy(&g, tile, &KPolicy::default())?;
        println!("\n{name}: top {:?}", h.top);
        for lv in &h.levels {
            println!(
                "  level {}: {:>4} vertices, {:>3} components (max {:>3}), mean boundary {:>5.1}, boundary graph {:>4}",
                lv.level,
                lv.vertex_count(),
                lv.components.len(),
                lv.components.iter().map(|c| c.len()).max().unwrap_or(0),
                lv.mean_boundary_size(),
                lv.boundary_graph.vertex_count()
            );
        }
    }
    Ok(())
}
