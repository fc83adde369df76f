//! Cross-module invariants checked against exact search and an
//! independent eigensolver.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qroute::bounds::{bounds_report, hrt_edge_lb, hrt_spectral_lb, DEFAULT_ALPHA};
use qroute::catalog::{connected_graphs, connected_graphs_up_to};
use qroute::exact::{all_exact_depths, exact_rt, ExactOptions};
use qroute::families::gnp;
use qroute::routing::{route_general, route_spanning_tree, verify_schedule, Permutation};
use qroute::spectral::{expansion_summary, normalized_laplacian, spectral_gap};
use qroute::Graph;

const LIMIT: usize = 20;

fn connected_gnp(n: usize, p: f64, seed: u64) -> Option<Graph> {
    gnp(n, p, seed).ok().filter(|g| g.is_connected())
}

#[test]
fn gate_bounds_never_exceed_exact_routing_number() {
    let opts = ExactOptions::default();
    for g in connected_graphs_up_to(6).into_iter().filter(|g| g.n() >= 2) {
        let rt = exact_rt(&g, &opts).unwrap().depth as f64;
        let report = bounds_report(&g, DEFAULT_ALPHA, LIMIT, &[]).unwrap();
        assert!(
            report.best_gate_lb() <= rt + 1e-12,
            "{:?}: {} > {rt}",
            g.edges(),
            report.best_gate_lb()
        );
        assert!(report.best_hrt_lb() <= rt + 1e-12);
        assert!(report.consistent);
    }
}

#[test]
fn spanning_tree_depth_within_three_n_exhaustively() {
    let opts = ExactOptions::default();
    for g in connected_graphs(6) {
        let depths = all_exact_depths(&g, &opts).unwrap();
        let mut perms: Vec<_> = depths.into_iter().collect();
        perms.sort();
        for (mapping, opt) in perms {
            let pi = Permutation::new(mapping).unwrap();
            let s = route_spanning_tree(&g, &pi).unwrap();
            assert!(verify_schedule(&g, &pi, &s).valid);
            assert!(
                s.depth() >= opt && s.depth() <= 3 * g.n(),
                "{:?} {:?}",
                g.edges(),
                pi
            );
        }
    }
}

#[test]
fn seven_vertex_worst_case_dominates_bounds() {
    let opts = ExactOptions::default();
    for g in connected_graphs(7).into_iter().step_by(97) {
        let rt = exact_rt(&g, &opts).unwrap().depth as f64;
        let report = bounds_report(&g, DEFAULT_ALPHA, LIMIT, &[]).unwrap();
        assert!(report.best_gate_lb() <= rt + 1e-12);
    }
}

fn nalgebra_gap(g: &Graph) -> f64 {
    let l = normalized_laplacian(g).unwrap();
    let n = g.n();
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| l[(i, j)]);
    let mut ev: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev[1]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spectral_gap_matches_reference(n in 2usize..30, p in 0.1f64..0.9, seed in any::<u64>()) {
        let Some(g) = connected_gnp(n, p, seed) else { return Ok(()) };
        prop_assert!((spectral_gap(&g).unwrap() - nalgebra_gap(&g)).abs() < 1e-8);
    }

    #[test]
    fn spectral_hrt_bound_below_edge_bound(n in 2usize..14, p in 0.2f64..0.9, seed in any::<u64>()) {
        let Some(g) = connected_gnp(n, p, seed) else { return Ok(()) };
        let spectral = hrt_spectral_lb(&g, DEFAULT_ALPHA).unwrap();
        let (edge, _) = hrt_edge_lb(&g, DEFAULT_ALPHA, LIMIT).unwrap();
        prop_assert!(spectral <= edge + 1e-9, "{spectral} > {edge}");
    }

    #[test]
    fn hrt_lower_bound_below_routing_depth(n in 2usize..16, p in 0.2f64..0.9, seed in any::<u64>()) {
        let Some(g) = connected_gnp(n, p, seed) else { return Ok(()) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pi = Permutation::random(n, &mut rng);
        let report = bounds_report(&g, DEFAULT_ALPHA, LIMIT, &[]).unwrap();
        for s in [route_spanning_tree(&g, &pi).unwrap(), route_general(&g, &pi, seed).unwrap()] {
            prop_assert!(verify_schedule(&g, &pi, &s).valid);
            prop_assert!(report.best_hrt_lb() <= s.depth().max(1) as f64);
        }
    }

    #[test]
    fn expansion_chain(n in 2usize..12, p in 0.2f64..0.9, seed in any::<u64>()) {
        let Some(g) = connected_gnp(n, p, seed) else { return Ok(()) };
        let e = expansion_summary(&g, LIMIT).unwrap();
        prop_assert!(e.m.value <= e.c.value && e.c.value <= e.h.value);
        prop_assert!(e.h.to_f64() <= e.cheeger.to_f64() * g.max_degree() as f64 + 1e-12);
    }
}
