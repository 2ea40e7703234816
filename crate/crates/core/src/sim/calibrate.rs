use std::sync::OnceLock;

use crate::graph::{csr_to_dense, gen_er, gen_nws, Graph};
use crate::kernels::fw_classic;

/// Fraction of FW relaxations that lowered an entry, pooled over `graphs`.
pub fn measure_update_probability(graphs: &[Graph]) -> f64 {
    let (mut fired, mut slots) = (0u64, 0f64);
    for g in graphs {
        let mut d = csr_to_dense(g, None).expect("whole-graph expansion");
        let stats = fw_classic(&mut d).expect("dense expansion has a zero diagonal");
        fired += stats.updates;
        slots += g.n() as f64 * (g.n().saturating_sub(1) as f64).powi(2);
    }
    if slots == 0.0 {
        0.0
    } else {
        fired as f64 / slots
    }
}

fn calibration_set() -> Vec<Graph> {
    let mut set = Vec::new();
    for seed in 1..=4 {
        set.push(gen_er(128, 8.0, seed).expect("valid parameters"));
        set.push(gen_nws(128, 6, 0.05, seed).expect("valid parameters"));
    }
    set
}

/// Update probability measured once per process on a fixed seeded set of
/// ER and NWS graphs.
pub fn default_update_probability() -> f64 {
    static P: OnceLock<f64> = OnceLock::new();
    *P.get_or_init(|| measure_update_probability(&calibration_set()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calibrated_probability_is_a_fraction() {
        let p = default_update_probability();
        assert!(p > 0.0 && p < 1.0, "{p}");
        assert_eq!(p, measure_update_probability(&calibration_set()));
    }

    #[test]
    fn empty_graph_never_updates() {
        assert_eq!(measure_update_probability(&[Graph::empty(5)]), 0.0);
    }
}
