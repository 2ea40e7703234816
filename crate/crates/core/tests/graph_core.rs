mod common;

use proptest::prelude::*;
use pim_apsp::graph::generate::average_clustering;
use pim_apsp::graph::{
    csr_to_dense, dense_to_csr, gen_er, gen_nws, load_edge_list, read_csr, saturating_add, saturating_add3,
    write_csr, write_edge_list, GraphError,
};
use pim_apsp::kernels::fw_classic;
use pim_apsp::{Distance, DistanceMatrix, Graph};

const INF: u32 = u32::MAX;

#[test]
fn saturating_add_examples() {
    assert_eq!(saturating_add(Distance(3), Distance(4)), Distance(7));
    assert_eq!(saturating_add(Distance::INF, Distance(5)), Distance::INF);
    assert_eq!(saturating_add(Distance(u32::MAX - 5), Distance(5)), Distance::INF);
    assert_eq!(saturating_add(Distance(u32::MAX - 6), Distance(5)), Distance(u32::MAX - 1));
}

#[test]
fn edge_list_examples() {
    let g = load_edge_list("2 1\n0 1 3".as_bytes()).unwrap();
    assert_eq!(g.rowptr(), &[0, 1, 1]);
    assert_eq!(g.col(), &[1]);
    assert_eq!(g.val(), &[3]);

    let g = load_edge_list("2 2\n0 1 3\n0 1 2".as_bytes()).unwrap();
    assert_eq!(g.val(), &[2]);

    assert!(matches!(
        load_edge_list("2 1\n0 2 3".as_bytes()),
        Err(GraphError::VertexOutOfRange { id: 2, n: 2 })
    ));
    assert!(matches!(
        load_edge_list("3 2\n0 1 3\n1 x 2\n".as_bytes()),
        Err(GraphError::Parse { line: 3, .. })
    ));
}

#[test]
fn self_loops_dropped_and_rows_sorted() {
    let g = load_edge_list("3 4\n2 0 1\n1 1 9\n2 1 4\n0 2 5\n".as_bytes()).unwrap();
    assert_eq!(g.edge_count(), 3);
    assert_eq!(g.neighbors(2).map(|(v, _)| v).collect::<Vec<_>>(), vec![0, 1]);
    assert_eq!(g.weight(1, 1), None);
}

#[test]
fn dense_conversion_examples() {
    let g = Graph::from_edges(2, [(0, 1, 3)]).unwrap();
    let d = csr_to_dense(&g, None).unwrap();
    assert_eq!(d.to_rows(), vec![vec![0, 3], vec![INF, 0]]);
    assert_eq!(csr_to_dense(&g, Some(&[1])).unwrap().to_rows(), vec![vec![0]]);
    assert!(csr_to_dense(&g, Some(&[2])).is_err());

    let back = dense_to_csr(&d);
    assert_eq!(back, g);
    let empty = dense_to_csr(&DistanceMatrix::identity(4));
    assert_eq!(empty.edge_count(), 0);
}

#[test]
fn fw_results_round_trip_through_csr() {
    for seed in 0..20 {
        let mut d = csr_to_dense(&gen_er(24, 3.0, seed).unwrap(), None).unwrap();
        fw_classic(&mut d).unwrap();
        assert_eq!(csr_to_dense(&dense_to_csr(&d), None).unwrap(), d);
    }
}

#[test]
fn er_complete_when_p_is_one() {
    let g = gen_er(4, 3.0, 9).unwrap();
    assert_eq!(g.edge_count(), 12);
}

#[test]
fn er_mean_degree_within_five_percent() {
    let target = 25.25;
    let mut total = 0.0;
    for seed in 0..10 {
        let g = gen_er(1000, target, seed).unwrap();
        total += g.edge_count() as f64 / 1000.0;
    }
    let mean = total / 10.0;
    assert!((mean - target).abs() / target < 0.05, "mean degree {mean}");
}

#[test]
fn er_argument_errors() {
    assert!(gen_er(10, 0.0, 1).is_err());
    assert!(gen_er(10, 10.0, 1).is_err());
    assert!(gen_er(10, f64::NAN, 1).is_err());
}

#[test]
fn generators_are_deterministic() {
    assert_eq!(gen_er(300, 6.0, 42).unwrap(), gen_er(300, 6.0, 42).unwrap());
    assert_ne!(gen_er(300, 6.0, 42).unwrap(), gen_er(300, 6.0, 43).unwrap());
    assert_eq!(gen_nws(300, 6, 0.2, 42).unwrap(), gen_nws(300, 6, 0.2, 42).unwrap());
}

#[test]
fn nws_examples() {
    let ring = gen_nws(6, 2, 0.0, 1).unwrap();
    assert_eq!(ring.edge_count(), 12);
    for v in 0..6 {
        let mut nb: Vec<usize> = ring.neighbors(v).map(|(u, _)| u).collect();
        nb.sort();
        let mut want = vec![(v + 1) % 6, (v + 5) % 6];
        want.sort();
        assert_eq!(nb, want);
    }
    let k4 = gen_nws(6, 4, 0.0, 1).unwrap();
    assert!((0..6).all(|v| k4.out_degree(v) == 4));
    assert!(gen_nws(10, 3, 0.1, 1).is_err());
    assert!(gen_nws(10, 10, 0.1, 1).is_err());
    assert!(gen_nws(10, 4, 1.5, 1).is_err());
}

#[test]
fn nws_arcs_are_symmetric() {
    let g = gen_nws(200, 6, 0.3, 5).unwrap();
    for (u, v, w) in g.edges() {
        assert_eq!(g.weight(v as usize, u as usize), Some(Distance(w)));
    }
}

#[test]
fn nws_clusters_more_than_matched_er() {
    let nws = gen_nws(1000, 10, 0.1, 3).unwrap();
    let er = gen_er(1000, nws.edge_count() as f64 / 1000.0, 3).unwrap();
    let (c_nws, c_er) = (average_clustering(&nws), average_clustering(&er));
    assert!(c_nws > c_er, "nws {c_nws} vs er {c_er}");
}

#[test]
fn binary_and_text_formats_round_trip() {
    let g = gen_nws(150, 4, 0.1, 8).unwrap();
    let mut bin = Vec::new();
    write_csr(&g, &mut bin).unwrap();
    assert_eq!(&bin[..6], b"RGCSR1");
    assert_eq!(bin.len() as u64, pim_apsp::graph::io::csr_byte_len(g.n(), g.edge_count()));
    assert_eq!(read_csr(bin.as_slice()).unwrap(), g);
    let mut text = Vec::new();
    write_edge_list(&g, &mut text).unwrap();
    assert_eq!(load_edge_list(text.as_slice()).unwrap(), g);
}

#[test]
fn corrupt_binary_rejected() {
    let g = gen_er(20, 3.0, 1).unwrap();
    let mut bin = Vec::new();
    write_csr(&g, &mut bin).unwrap();
    let last = bin.len() - 1;
    let mut bad_magic = bin.clone();
    bad_magic[0] = b'X';
    assert!(read_csr(bad_magic.as_slice()).is_err());
    assert!(read_csr(&bin[..last]).is_err());
}

fn distance() -> impl Strategy<Value = Distance> {
    prop_oneof![
        1 => Just(Distance::INF),
        1 => (u32::MAX - 64..u32::MAX).prop_map(Distance),
        4 => (0u32..2000).prop_map(Distance),
        2 => any::<u32>().prop_map(Distance),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn semiring_axioms(a in distance(), b in distance(), c in distance()) {
        let add = saturating_add;
        prop_assert_eq!(add(a, b), add(b, a));
        prop_assert_eq!(add(add(a, b), c), add(a, add(b, c)));
        prop_assert_eq!(add(add(a, b), c), saturating_add3(a, b, c));
        prop_assert_eq!(a.min(b), b.min(a));
        prop_assert_eq!(a.min(b).min(c), a.min(b.min(c)));
        prop_assert_eq!(a.min(Distance::INF), a);
        prop_assert_eq!(add(a, Distance::ZERO), a);
        prop_assert_eq!(add(a, Distance::INF), Distance::INF);
        prop_assert_eq!(add(a, b.min(c)), add(a, b).min(add(a, c)));
        let exact = (a.get() as u64 + b.get() as u64).min(u32::MAX as u64);
        let want = if a.is_inf() || b.is_inf() { u32::MAX as u64 } else { exact };
        prop_assert_eq!(add(a, b).get() as u64, want);
    }

    #[test]
    fn csr_dense_round_trip(n in 1usize..20, seed in any::<u64>(), density in 0.0f64..1.0) {
        let degree = (density * (n.max(2) - 1) as f64).max(0.01);
        if n >= 2 {
            let g = gen_er(n, degree, seed).unwrap();
            let d = csr_to_dense(&g, None).unwrap();
            prop_assert_eq!(dense_to_csr(&d), g);
        }
    }

    #[test]
    fn edge_list_canonicalizes(edges in prop::collection::vec((0u32..8, 0u32..8, 1u32..50), 0..40)) {
        let text: String = std::iter::once(format!("8 {}\n", edges.len()))
            .chain(edges.iter().map(|(u, v, w)| format!("{u} {v} {w}\n")))
            .collect();
        let g = load_edge_list(text.as_bytes()).unwrap();
        for u in 0..8 {
            let cols: Vec<usize> = g.neighbors(u).map(|(v, _)| v).collect();
            prop_assert!(cols.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(!cols.contains(&u));
        }
        for &(u, v, _) in &edges {
            if u != v {
                let best = edges.iter().filter(|e| (e.0, e.1) == (u, v)).map(|e| e.2).min().unwrap();
                prop_assert_eq!(g.weight(u as usize, v as usize), Some(Distance(best)));
            }
        }
    }
}
