//! Level-0 boundary sizes of small-world versus random graphs at matched
//! size and degree.

use pim_apsp::graph::{gen_er, gen_nws};
use pim_apsp::partition::{build_hierarchy, KPolicy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (n, tile) = (2000, 1024);
    println!("seed   nws mean boundary   er mean boundary");
    for seed in 0..10 {
        let nws = gen_nws(n, 10, 0.05, seed)?;
        let er = gen_er(n, nws.edge_count() as f64 / n as f64, seed)?;
        let b_nws = build_hierarchy(&nws, tile, &KPolicy::default())?.levels[0].mean_boundary_size();
        let b_er = build_hierarchy(&er, tile, &KPolicy::default())?.levels[0].mean_boundary_size();
        println!("{seed:>4} {b_nws:>19.1} {b_er:>18.1}");
    }
    Ok(())
}
