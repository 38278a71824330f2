//! Checks the closed forms against the Jacobi eigensolver.

use std::sync::Arc;

use cliquewalk::jacobi::{jacobi_eigendecompose, numeric_spectrum, DEFAULT_JACOBI_TOL};
use cliquewalk::spectrum::compare_systems;
use cliquewalk::{build_graph, normalized_adjacency, solve, Family, SpectralPath};

fn main() -> cliquewalk::Result<()> {
    for (family, n) in [(Family::Barbell, 12), (Family::StarFull, 6), (Family::StarSingle, 6)] {
        let g = build_graph(family, n)?;
        let h = Arc::new(normalized_adjacency(&g));
        let raw = jacobi_eigendecompose(h.matrix(), DEFAULT_JACOBI_TOL)?;
        let numeric = numeric_spectrum(h)?;
        let analytic = solve(&g, SpectralPath::Analytic)?;
        let cmp = compare_systems(&analytic, &numeric);
        println!(
            "{family} n={n}: {} sweeps, same structure {}, eigenvalue gap {:.2e}, projector distance {:.2e}",
            raw.sweeps, cmp.same_structure, cmp.max_eigenvalue_gap, cmp.max_projector_distance
        );
    }
    Ok(())
}
