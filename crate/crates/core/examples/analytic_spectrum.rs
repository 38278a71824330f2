//! Closed-form spectra with mode labels and multiplicities.

use cliquewalk::{build_graph, solve, Family, SpectralPath};

fn main() -> cliquewalk::Result<()> {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    for family in Family::ALL {
        let g = build_graph(family, n)?;
        let es = solve(&g, SpectralPath::Analytic)?;
        println!(
            "{family} n={n}: {} distinct eigenvalues, residual {:.1e}, gram {:.1e}, completeness {:.1e}",
            es.spaces().len(),
            es.max_residual(),
            es.gram_deviation(),
            es.completeness_deviation()
        );
        for s in es.summary(false) {
            println!("  {:>22.16} x{:<4} {}", s.eigenvalue, s.multiplicity, s.label);
        }
    }
    Ok(())
}
