mod common;

use common::{arcs, dijkstra_all, to_u64};
use pim_apsp::graph::{csr_to_dense, gen_er, gen_nws};
use pim_apsp::kernels::fw_classic;
use pim_apsp::partition::{FwKernel, TopSolve};
use pim_apsp::solver::{solve_apsp, verify_against_oracle, write_result, SolverConfig};
use pim_apsp::{Distance, Graph};

fn dense_reference(g: &Graph) -> Vec<Vec<u64>> {
    let mut d = csr_to_dense(g, None).unwrap();
    fw_classic(&mut d).unwrap();
    to_u64(&d)
}

#[test]
fn graph_within_one_tile_equals_plain_fw() {
    for seed in 0..5 {
        let g = gen_er(40, 4.0, seed).unwrap();
        let r = solve_apsp(&g, &SolverConfig::with_tile_limit(64)).unwrap();
        assert_eq!(r.hierarchy.depth(), 1);
        assert_eq!(r.hierarchy.levels[0].components.len(), 1);
        assert_eq!(to_u64(&r.to_dense()), dense_reference(&g));
    }
}

#[test]
fn recursive_result_matches_dijkstra() {
    for (seed, g) in [
        (1, gen_er(180, 4.0, 1).unwrap()),
        (2, gen_nws(240, 4, 0.02, 2).unwrap()),
        (3, gen_nws(300, 6, 0.05, 3).unwrap()),
        (4, gen_er(150, 25.0, 4).unwrap()),
    ] {
        let r = solve_apsp(&g, &SolverConfig::with_tile_limit(32)).unwrap();
        assert!(r.hierarchy.levels[0].components.len() > 1, "graph {seed}");
        assert_eq!(to_u64(&r.to_dense()), dijkstra_all(g.n(), &arcs(&g)), "graph {seed}");
    }
}

#[test]
fn ring_recursion_reaches_a_direct_top() {
    let g = gen_nws(600, 4, 0.0, 1).unwrap();
    let r = solve_apsp(&g, &SolverConfig::with_tile_limit(16)).unwrap();
    assert!(r.hierarchy.depth() >= 2);
    assert_eq!(r.hierarchy.top, TopSolve::Direct);
    assert_eq!(to_u64(&r.to_dense()), dense_reference(&g));
}

#[test]
fn disconnected_pairs_stay_unreachable() {
    let mut edges = Vec::new();
    for base in [0u32, 50, 100] {
        for i in 0..49 {
            edges.push((base + i, base + i + 1, 1 + i % 3));
            edges.push((base + i + 1, base + i, 2));
        }
    }
    let g = Graph::from_edges(150, edges).unwrap();
    let r = solve_apsp(&g, &SolverConfig::with_tile_limit(16)).unwrap();
    for (u, v) in [(0, 50), (60, 120), (149, 0), (10, 99)] {
        assert_eq!(r.query(u, v).unwrap(), Distance::INF);
    }
    assert!(r.query(0, 49).unwrap().is_finite());
    assert_eq!(to_u64(&r.to_dense()), dense_reference(&g));
}

#[test]
fn queries_and_rows_agree_with_dijkstra() {
    let g = gen_nws(260, 6, 0.05, 11).unwrap();
    let want = dijkstra_all(g.n(), &arcs(&g));
    for materialize_cross in [false, true] {
        let cfg = SolverConfig {
            materialize_cross,
            ..SolverConfig::with_tile_limit(40)
        };
        let r = solve_apsp(&g, &cfg).unwrap();
        assert_eq!(r.is_cross_materialized(), materialize_cross);
        for u in (0..260).step_by(13) {
            let row = r.row(u).unwrap();
            for v in 0..260 {
                assert_eq!(row[v].get() as u64, want[u][v]);
                assert_eq!(r.query(u, v).unwrap().get() as u64, want[u][v]);
            }
        }
    }
}

#[test]
fn out_of_range_query_is_an_error() {
    let g = gen_er(50, 3.0, 1).unwrap();
    let r = solve_apsp(&g, &SolverConfig::with_tile_limit(16)).unwrap();
    assert!(r.query(50, 0).is_err());
    assert!(r.row(50).is_err());
}

#[test]
fn tile_limit_does_not_change_distances() {
    let g = gen_nws(200, 4, 0.05, 6).unwrap();
    let reference = dense_reference(&g);
    for tile in [8, 16, 33, 64, 200, 1024] {
        let r = solve_apsp(&g, &SolverConfig::with_tile_limit(tile)).unwrap();
        assert_eq!(to_u64(&r.to_dense()), reference, "tile {tile}");
    }
}

#[test]
fn workers_and_kernel_do_not_change_anything() {
    let g = gen_er(220, 6.0, 8).unwrap();
    let base = solve_apsp(&g, &SolverConfig::with_tile_limit(32)).unwrap();
    for workers in [2, 4] {
        for kernel in [FwKernel::Classic, FwKernel::Remapped] {
            let cfg = SolverConfig {
                workers,
                kernel,
                ..SolverConfig::with_tile_limit(32)
            };
            let r = solve_apsp(&g, &cfg).unwrap();
            assert_eq!(r.component_distances, base.component_distances);
            assert_eq!(r.top_db, base.top_db);
            assert_eq!(r.trace, base.trace);
        }
    }
}

#[test]
fn verifier_accepts_correct_and_catches_corruption() {
    let g = gen_nws(200, 4, 0.05, 4).unwrap();
    let mut r = solve_apsp(&g, &SolverConfig::with_tile_limit(32)).unwrap();
    let ok = verify_against_oracle(&g, &r, 10, 7).unwrap();
    assert!(ok.passed());
    assert_eq!(ok.sources.len(), 10);
    assert_eq!(ok.pairs_checked, 10 * 200);

    let all = verify_against_oracle(&g, &r, 200, 7).unwrap();
    assert!(all.passed());
    assert_eq!(all.pairs_checked, 200 * 200);
    assert_eq!(all.sources, (0..200).collect::<Vec<u32>>());

    let comp = &r.hierarchy.levels[0].components[0];
    let (src, dst) = (comp.vertices[0], comp.vertices[comp.len() - 1]);
    let block = &mut r.component_distances[0];
    let last = block.rows() - 1;
    assert!(block[(0, last)].get() > 0);
    block[(0, last)] = Distance(0);
    let bad = verify_against_oracle(&g, &r, 200, 7).unwrap();
    assert!(!bad.passed());
    let m = bad.mismatches.iter().find(|m| (m.source, m.target) == (src, dst)).unwrap();
    assert_eq!(m.found, Distance(0));

    assert!(verify_against_oracle(&g, &r, 0, 7).is_err());
}

#[test]
fn persisted_blocks_are_deterministic() {
    let g = gen_er(150, 5.0, 12).unwrap();
    let cfg = SolverConfig {
        materialize_cross: true,
        ..SolverConfig::with_tile_limit(32)
    };
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let ma = write_result(&solve_apsp(&g, &cfg).unwrap(), &cfg, a.path()).unwrap();
    let cfg4 = SolverConfig { workers: 4, ..cfg.clone() };
    let mb = write_result(&solve_apsp(&g, &cfg4).unwrap(), &cfg, b.path()).unwrap();
    assert_eq!(ma, mb);
    assert!(!ma.cross.is_empty());
    for entry in std::fs::read_dir(a.path().join("blocks")).unwrap() {
        let name = entry.unwrap().file_name();
        let x = std::fs::read(a.path().join("blocks").join(&name)).unwrap();
        let y = std::fs::read(b.path().join("blocks").join(&name)).unwrap();
        assert_eq!(x, y, "{name:?}");
    }
    assert_eq!(
        std::fs::read(a.path().join("manifest.json")).unwrap(),
        std::fs::read(b.path().join("manifest.json")).unwrap()
    );
}

#[test]
fn invalid_configs_are_rejected() {
    let g = gen_er(20, 3.0, 1).unwrap();
    assert!(solve_apsp(&g, &SolverConfig::with_tile_limit(1)).is_err());
    let cfg = SolverConfig {
        workers: 0,
        ..SolverConfig::default()
    };
    assert!(solve_apsp(&g, &cfg).is_err());
}
