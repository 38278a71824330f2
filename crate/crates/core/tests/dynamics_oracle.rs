//! Spectral-projector propagation against a dense matrix exponential.

mod common;

use nalgebra::{Complex, DMatrix};

use cliquewalk::dynamics::{Propagator, Start};
use cliquewalk::{build_graph, normalized_adjacency, solve, ClassTag, Family, SpectralPath};

fn expm_probabilities(h: &DMatrix<f64>, start: usize, t: f64) -> Vec<f64> {
    let a = h.map(|x| Complex::new(0.0, -x * t));
    let u = a.exp();
    u.column(start).iter().map(|z| z.norm_sqr()).collect()
}

fn check(family: Family, n: usize, class: ClassTag, t: f64) {
    let g = build_graph(family, n).unwrap();
    let start = g.representative(class).unwrap();
    let h = common::hamiltonian(family, n);
    let expected = expm_probabilities(&h, start, t);
    for path in [SpectralPath::Analytic, SpectralPath::Numeric] {
        let es = solve(&g, path).unwrap();
        let got = Propagator::new(&es, &Start::Vertex(start)).unwrap().probabilities(t);
        let d = common::max_diff(&got, &expected);
        assert!(d < 1e-8, "{family} n={n} {class} t={t} {path}: {d:e}");
    }
}

#[test]
fn library_hamiltonian_matches_definition() {
    for (family, n) in [(Family::Barbell, 5), (Family::StarFull, 4), (Family::StarSingle, 4)] {
        let g = build_graph(family, n).unwrap();
        let h = normalized_adjacency(&g);
        let oracle = common::hamiltonian(family, n);
        for i in 0..oracle.nrows() {
            for j in 0..oracle.ncols() {
                assert!((h.matrix()[(i, j)] - oracle[(i, j)]).abs() < 1e-15, "{family} ({i},{j})");
            }
        }
    }
}

#[test]
fn barbell_4_from_bridge_at_t_1() {
    check(Family::Barbell, 4, ClassTag::BridgeA, 1.0);
}

#[test]
fn barbell_3_from_clique_at_t_pi() {
    check(Family::Barbell, 3, ClassTag::CliqueA, std::f64::consts::PI);
}

#[test]
fn stars_at_several_times() {
    for t in [0.3, 2.5, 17.0] {
        check(Family::StarFull, 3, ClassTag::Center, t);
        check(Family::StarFull, 4, ClassTag::StarCliqueVertex, t);
        check(Family::StarSingle, 3, ClassTag::StarBridge, t);
        check(Family::StarSingle, 4, ClassTag::StarInternal, t);
    }
}

#[test]
fn barbell_long_time() {
    check(Family::Barbell, 8, ClassTag::CliqueB, 40.0);
}
