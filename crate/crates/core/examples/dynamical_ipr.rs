//! Dynamical IPR per vertex class for the three families.

use cliquewalk::ipr::vertex_class_report;
use cliquewalk::{build_graph, solve, Family, SpectralPath};

fn main() -> cliquewalk::Result<()> {
    for family in Family::ALL {
        for n in [4, 8, 16] {
            let g = build_graph(family, n)?;
            let es = solve(&g, SpectralPath::Analytic)?;
            let report = vertex_class_report(&g, &es)?;
            let cells: Vec<String> = report
                .entries
                .iter()
                .map(|e| format!("{}={:.6}", e.class, e.value))
                .collect();
            println!("{family:<10} n={n:>2}  {}", cells.join("  "));
        }
    }
    Ok(())
}
