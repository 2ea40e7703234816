mod common;

use common::{arcs, brute_boundary, brute_min_cut};
use pim_apsp::graph::{csr_to_dense, gen_er, gen_nws};
use pim_apsp::kernels::fw_classic;
use pim_apsp::partition::{
    build_boundary_graph, build_hierarchy, components_from_assignment, edge_cut, find_boundary, part_cap,
    partition_kway, KPolicy, TopSolve,
};
use pim_apsp::Graph;

fn path(n: usize) -> Graph {
    Graph::from_edges(n, (0..n as u32 - 1).flat_map(|i| [(i, i + 1, 1), (i + 1, i, 1)])).unwrap()
}

#[test]
fn path_splits_into_halves_with_two_boundary_vertices() {
    let g = path(4);
    let parts = partition_kway(&g, 2, 1.0).unwrap();
    assert_eq!(parts[0], parts[1]);
    assert_eq!(parts[2], parts[3]);
    assert_ne!(parts[0], parts[2]);
    assert_eq!(edge_cut(&g, &parts), 2);
    let a = find_boundary(&g, &parts, parts[0]).unwrap();
    let b = find_boundary(&g, &parts, parts[2]).unwrap();
    assert_eq!((a, b), (vec![1], vec![2]));
}

#[test]
fn single_part_has_no_boundary() {
    let g = gen_er(30, 4.0, 1).unwrap();
    let parts = partition_kway(&g, 1, 1.03).unwrap();
    assert!(parts.iter().all(|&p| p == 0));
    assert!(find_boundary(&g, &parts, 0).unwrap().is_empty());
}

#[test]
fn heuristic_cut_within_twice_the_optimum() {
    let mut checked = 0;
    for n in 4..=10 {
        for seed in 0..12 {
            let g = gen_er(n, 2.0, seed * 31 + n as u64).unwrap();
            let cap = part_cap(n, 2, 1.03);
            let parts = partition_kway(&g, 2, 1.03).unwrap();
            for p in 0..2 {
                assert!(parts.iter().filter(|&&x| x == p).count() <= cap);
            }
            let best = brute_min_cut(n, &arcs(&g), cap) as u64;
            let got = edge_cut(&g, &parts);
            assert!(got <= 2 * best, "n {n} seed {seed}: cut {got}, optimum {best}");
            checked += 1;
        }
    }
    assert_eq!(checked, 84);
}

#[test]
fn part_sizes_respect_the_cap() {
    for seed in 0..5 {
        for k in [2, 3, 4, 7] {
            let g = gen_nws(500, 6, 0.1, seed).unwrap();
            let parts = partition_kway(&g, k, 1.03).unwrap();
            let cap = part_cap(500, k, 1.03);
            for p in 0..k as u32 {
                let size = parts.iter().filter(|&&x| x == p).count();
                assert!(size > 0 && size <= cap, "k {k} part {p} size {size}");
            }
        }
    }
}

#[test]
fn partition_is_deterministic() {
    let g = gen_er(400, 8.0, 3).unwrap();
    assert_eq!(partition_kway(&g, 5, 1.03).unwrap(), partition_kway(&g, 5, 1.03).unwrap());
    let a = build_hierarchy(&g, 64, &KPolicy::default()).unwrap();
    let b = build_hierarchy(&g, 64, &KPolicy::default()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn boundary_matches_double_loop() {
    for seed in 0..20 {
        let g = gen_er(60, 3.0, seed).unwrap();
        let k = 2 + (seed as usize % 4);
        let parts = partition_kway(&g, k, 1.03).unwrap();
        let a = arcs(&g);
        for p in 0..k as u32 {
            assert_eq!(find_boundary(&g, &parts, p).unwrap(), brute_boundary(60, &a, &parts, p));
        }
        let comps = components_from_assignment(&g, &parts, 0).unwrap();
        for c in &comps {
            assert_eq!(c.boundary(), brute_boundary(60, &a, &parts, c.index as u32).as_slice());
        }
    }
}

#[test]
fn boundary_graph_keeps_every_crossing_arc() {
    let g = gen_er(80, 4.0, 7).unwrap();
    let parts = partition_kway(&g, 3, 1.03).unwrap();
    let comps = components_from_assignment(&g, &parts, 0).unwrap();
    let intra: Vec<_> = comps
        .iter()
        .map(|c| {
            let mut d = csr_to_dense(&g, Some(&c.vertices)).unwrap();
            fw_classic(&mut d).unwrap();
            d
        })
        .collect();
    let bg = build_boundary_graph(&g, &comps, &intra).unwrap();
    assert_eq!(bg.vertex_count(), comps.iter().map(|c| c.boundary_count).sum::<usize>());
    let global: Vec<u32> = bg
        .origin_map
        .iter()
        .map(|&(c, pos)| comps[c as usize].vertices[pos as usize])
        .collect();
    for (u, v, w) in g.edges() {
        if parts[u as usize] != parts[v as usize] {
            let bu = global.iter().position(|&x| x == u).unwrap();
            let bv = global.iter().position(|&x| x == v).unwrap();
            assert_eq!(bg.graph.weight(bu, bv).map(|d| d.get()), Some(w));
        }
    }
}

#[test]
fn hundred_vertices_tile_thirty_two() {
    for seed in 0..5 {
        let g = gen_nws(100, 4, 0.02, seed).unwrap();
        let h = build_hierarchy(&g, 32, &KPolicy::default()).unwrap();
        let level0 = &h.levels[0];
        assert!(level0.components.len() >= 4);
        assert!(level0.components.iter().all(|c| c.len() <= 32));
        assert_eq!(level0.components.iter().map(|c| c.len()).sum::<usize>(), 100);
        for lvl in &h.levels {
            assert!(lvl.components.iter().all(|c| c.len() <= 32));
        }
    }
}

#[test]
fn direct_top_fits_the_tile() {
    for seed in 0..10 {
        for (g, tile) in [
            (gen_nws(300, 4, 0.0, seed).unwrap(), 16),
            (gen_nws(300, 4, 0.01, seed).unwrap(), 64),
            (gen_er(200, 4.0, seed).unwrap(), 64),
        ] {
            let h = build_hierarchy(&g, tile, &KPolicy::default()).unwrap();
            match h.top {
                TopSolve::Direct => assert!(h.top_graph().vertex_count() <= tile),
                TopSolve::Blocked { block } => {
                    assert_eq!(block, tile);
                    assert!(h.top_graph().vertex_count() > tile);
                }
            }
        }
    }
}

#[test]
fn explicit_assignment_is_used_at_level_zero() {
    let g = path(8);
    let policy = KPolicy {
        level0_assignment: Some(vec![0, 0, 0, 0, 1, 1, 1, 1]),
        ..KPolicy::default()
    };
    let h = build_hierarchy(&g, 4, &policy).unwrap();
    assert_eq!(h.levels[0].assignment, vec![0, 0, 0, 0, 1, 1, 1, 1]);
    assert_eq!(h.top_graph().vertex_count(), 2);
}
