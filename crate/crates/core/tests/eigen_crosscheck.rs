//! Closed-form spectra and limits against nalgebra's symmetric eigensolver.

mod common;

use cliquewalk::dynamics::{limiting_distribution, Start};
use cliquewalk::{build_graph, solve, Family, SpectralPath};

fn sizes(family: Family) -> Vec<usize> {
    match family {
        Family::Barbell => vec![3, 4, 7, 20],
        _ => vec![family.min_size(), 4, 6],
    }
}

#[test]
fn eigenvalues_with_multiplicity() {
    for family in Family::ALL {
        for n in sizes(family) {
            let g = build_graph(family, n).unwrap();
            let es = solve(&g, SpectralPath::Analytic).unwrap();
            let mut ours: Vec<f64> = es.modes().map(|(l, _)| l).collect();
            ours.sort_by(f64::total_cmp);
            let mut oracle: Vec<f64> = common::hamiltonian(family, n).symmetric_eigenvalues().iter().copied().collect();
            oracle.sort_by(f64::total_cmp);
            assert_eq!(ours.len(), oracle.len());
            let d = common::max_diff(&ours, &oracle);
            assert!(d < 1e-10, "{family} n={n}: {d:e}");
        }
    }
}

#[test]
fn limiting_distributions_every_start() {
    for family in Family::ALL {
        for n in sizes(family) {
            let g = build_graph(family, n).unwrap();
            let h = common::hamiltonian(family, n);
            for path in [SpectralPath::Analytic, SpectralPath::Numeric] {
                let es = solve(&g, path).unwrap();
                for s in 0..g.vertex_count() {
                    let ours = limiting_distribution(&es, &Start::Vertex(s)).unwrap().probabilities;
                    let d = common::max_diff(&ours, &common::limit_oracle(&h, s, 1e-8));
                    assert!(d < 1e-9, "{family} n={n} start {s} {path}: {d:e}");
                }
            }
        }
    }
}
