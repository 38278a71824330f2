//! Long-time average distribution from the center of the full star.

use cliquewalk::dynamics::{limiting_distribution, Start};
use cliquewalk::{build_graph, solve, ClassTag, Family, SpectralPath};

fn main() -> cliquewalk::Result<()> {
    for n in [2, 4, 8, 16] {
        let g = build_graph(Family::StarFull, n)?;
        let es = solve(&g, SpectralPath::Analytic)?;
        let center = g.representative(ClassTag::Center)?;
        let limit = limiting_distribution(&es, &Start::Vertex(center))?;
        let n = n as f64;
        println!(
            "n={n:>2}: return {:.12} (n^2+1)/(n+1)^2 = {:.12}, clique vertex {:.12}, total {:.15}",
            limit.probabilities[center],
            (n * n + 1.0) / ((n + 1.0) * (n + 1.0)),
            limit.probabilities[1],
            limit.total()
        );
    }
    Ok(())
}
