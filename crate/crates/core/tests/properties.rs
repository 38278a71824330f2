//! Structural invariants over random instances, start vertices and times.

mod common;

use proptest::prelude::*;

use cliquewalk::dynamics::{finite_time_average, limiting_distribution, Propagator, Start};
use cliquewalk::ipr::{dynamical_ipr, eigenstate_ipr, observation1_lower_bound, xyz_decomposition};
use cliquewalk::{build_graph, solve, EigenSystem, Family, GraphInstance, SpectralPath};

fn instance() -> impl Strategy<Value = (Family, usize)> {
    prop_oneof![
        (3usize..=12).prop_map(|n| (Family::Barbell, n)),
        (2usize..=6).prop_map(|n| (Family::StarFull, n)),
        (3usize..=6).prop_map(|n| (Family::StarSingle, n)),
    ]
}

fn setup(family: Family, n: usize, numeric: bool) -> (GraphInstance, EigenSystem) {
    let g = build_graph(family, n).unwrap();
    let path = if numeric { SpectralPath::Numeric } else { SpectralPath::Analytic };
    let es = solve(&g, path).unwrap();
    (g, es)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn evolution_is_unitary((family, n) in instance(), s in any::<prop::sample::Index>(), t in -50.0f64..50.0, numeric in any::<bool>()) {
        let (g, es) = setup(family, n, numeric);
        let start = Start::Vertex(s.index(g.vertex_count()));
        let state = Propagator::new(&es, &start).unwrap().state(t);
        prop_assert!((state.norm_sq() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn transition_probabilities_are_time_reversal_and_swap_symmetric((family, n) in instance(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), t in 0.0f64..50.0) {
        let (g, es) = setup(family, n, false);
        let (a, b) = (a.index(g.vertex_count()), b.index(g.vertex_count()));
        let from_a = Propagator::new(&es, &Start::Vertex(a)).unwrap();
        let from_b = Propagator::new(&es, &Start::Vertex(b)).unwrap();
        prop_assert!((from_a.probabilities(t)[b] - from_a.probabilities(-t)[b]).abs() < 1e-12);
        prop_assert!((from_a.probabilities(t)[b] - from_b.probabilities(t)[a]).abs() < 1e-12);
    }

    #[test]
    fn limit_is_doubly_stochastic((family, n) in instance(), numeric in any::<bool>()) {
        let (g, es) = setup(family, n, numeric);
        let dim = g.vertex_count();
        let rows: Vec<Vec<f64>> = (0..dim)
            .map(|s| limiting_distribution(&es, &Start::Vertex(s)).unwrap().probabilities)
            .collect();
        for (i, row) in rows.iter().enumerate() {
            prop_assert!((row.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            prop_assert!((rows.iter().map(|r| r[i]).sum::<f64>() - 1.0).abs() < 1e-12);
            for (j, &p) in row.iter().enumerate() {
                prop_assert!(p >= -1e-15);
                prop_assert!((p - rows[j][i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sqrt_degree_vector_has_eigenvalue_one((family, n) in instance(), numeric in any::<bool>()) {
        let (g, es) = setup(family, n, numeric);
        let total: f64 = g.degrees().iter().map(|&d| d as f64).sum();
        let v: Vec<f64> = g.degrees().iter().map(|&d| (d as f64 / total).sqrt()).collect();
        let hv = es.hamiltonian().apply(&v);
        prop_assert!(common::max_diff(&hv, &v) < 1e-12);
        let top = es.space_near(1.0);
        prop_assert!((top.eigenvalue - 1.0).abs() < 1e-12);
        prop_assert!(common::max_diff(&top.project(&v), &v) < 1e-10);
    }

    #[test]
    fn spectrum_preserves_trace_and_frobenius_norm((family, n) in instance(), numeric in any::<bool>()) {
        let (_, es) = setup(family, n, numeric);
        let h = es.hamiltonian().matrix();
        let trace: f64 = es.spaces().iter().map(|s| s.eigenvalue * s.multiplicity() as f64).sum();
        let frob: f64 = es.spaces().iter().map(|s| s.eigenvalue.powi(2) * s.multiplicity() as f64).sum();
        prop_assert!((trace - h.trace()).abs() < 1e-10);
        prop_assert!((frob - h.frobenius_norm().powi(2)).abs() < 1e-10);
        prop_assert_eq!(es.mode_count(), es.dim());
    }

    #[test]
    fn ipr_lies_in_unit_range_and_above_bound((family, n) in instance(), s in any::<prop::sample::Index>(), numeric in any::<bool>()) {
        let (g, es) = setup(family, n, numeric);
        let dim = g.vertex_count() as f64;
        for (_, m) in es.modes() {
            let v = eigenstate_ipr(&m.vector).unwrap();
            prop_assert!(v >= 1.0 / dim - 1e-12 && v <= 1.0 + 1e-12);
        }
        let start = Start::Vertex(s.index(g.vertex_count()));
        let ipr = dynamical_ipr(&es, &start).unwrap();
        prop_assert!(ipr >= 1.0 / dim - 1e-12 && ipr <= 1.0 + 1e-12);
        prop_assert!(ipr >= observation1_lower_bound(&es, &start).unwrap() - 1e-12);
    }

    #[test]
    fn xyz_split_reconstructs_ipr((family, n) in instance(), s in any::<prop::sample::Index>()) {
        let (g, es) = setup(family, n, false);
        let s = s.index(g.vertex_count());
        let xyz = xyz_decomposition(&es, s).unwrap();
        let ipr = dynamical_ipr(&es, &Start::Vertex(s)).unwrap();
        prop_assert!((xyz.reconstruction() - ipr).abs() < 1e-10);
        let pi = limiting_distribution(&es, &Start::Vertex(s)).unwrap().probabilities;
        prop_assert!(common::max_diff(&xyz.pi_bar(), &pi) < 1e-12);
        prop_assert!(xyz.t1() >= 0.0 && xyz.t3() >= 0.0);
    }

    #[test]
    fn star_full_clique_permutation_symmetry(n in 2usize..=6, p in 0usize..6, q in 0usize..6, k in 0usize..6) {
        let (p, q, k) = (p % n, q % n, k % n);
        let (g, es) = setup(Family::StarFull, n, false);
        let ref_limit = limiting_distribution(&es, &Start::Vertex(g.star_vertex(0, 0))).unwrap().probabilities;
        let limit = limiting_distribution(&es, &Start::Vertex(g.star_vertex(p, k))).unwrap().probabilities;
        // Relabel cliques 0 <-> p and members 0 <-> k.
        let swap = |x: usize, a: usize| if x == 0 { a } else if x == a { 0 } else { x };
        for c in 0..n {
            for m in 0..n {
                let image = g.star_vertex(swap(c, p), swap(m, k));
                prop_assert!((ref_limit[g.star_vertex(c, m)] - limit[image]).abs() < 1e-12);
            }
        }
        let a = dynamical_ipr(&es, &Start::Vertex(g.star_vertex(q, k))).unwrap();
        let b = dynamical_ipr(&es, &Start::Vertex(g.star_vertex(0, 0))).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn finite_time_average_approaches_limit((family, n) in instance(), s in any::<prop::sample::Index>()) {
        let (g, es) = setup(family, n, false);
        let start = Start::Vertex(s.index(g.vertex_count()));
        let limit = limiting_distribution(&es, &start).unwrap().probabilities;
        let eig = es.eigenvalues();
        let gap = eig.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        let spaces = eig.len() as f64;
        // The pointwise error oscillates in T; what shrinks is the 1/T envelope.
        for t_max in [250.0, 500.0, 1000.0, 2000.0] {
            let avg = finite_time_average(&es, &start, t_max, 0.05).unwrap();
            let err = common::max_diff(&avg, &limit);
            // Each cross term averages to at most 2/(T |λ_k − λ_l|).
            prop_assert!(err <= 1.1 * 2.0 * spaces / (t_max * gap) + 1e-9, "T={} err={:e}", t_max, err);
        }
    }
}
