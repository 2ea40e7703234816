//! Seeded ER and NWS graphs, their degree/clustering profile, and both file
//! formats.

use pim_apsp::graph::generate::average_clustering;
use pim_apsp::graph::{gen_er, gen_nws, read_graph_file, write_csr, write_edge_list};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 1000;
    let nws = gen_nws(n, 10, 0.1, 7)?;
    let er = gen_er(n, nws.edge_count() as f64 / n as f64, 7)?;

    for (name, g) in [("er", &er), ("nws", &nws)] {
        println!(
            "{name:>3}: {} vertices, {} arcs, mean out-degree {:.2}, clustering {:.3}",
            g.n(),
            g.edge_count(),
            g.edge_count() as f64 / g.n() as f64,
            average_clustering(g)
        );
    }

    let dir = std::env::temp_dir().join("pim-apsp-generate");
    std::fs::create_dir_all(&dir)?;
    let text = dir.join("nws.txt");
    let binary = dir.join("nws.csr");
    write_edge_list(&nws, std::fs::File::create(&text)?)?;
    write_csr(&nws, std::fs::File::create(&binary)?)?;
    assert_eq!(read_graph_file(&text)?, nws);
    assert_eq!(read_graph_file(&binary)?, nws);
    println!(
        "round-tripped {} ({} bytes) and {} ({} bytes)",
        text.display(),
        std::fs::metadata(&text)?.len(),
        binary.display(),
        std::fs::metadata(&binary)?.len()
    );

    // same parameters, same seed: same graph
    assert_eq!(gen_er(n, 25.25, 3)?, gen_er(n, 25.25, 3)?);
    Ok(())
}
