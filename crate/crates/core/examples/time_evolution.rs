//! Transition probabilities of a walk started on a barbell bridge vertex,
//! and the running time average approaching the limit.

use cliquewalk::dynamics::{finite_time_average, limiting_distribution, Propagator, Start};
use cliquewalk::{build_graph, solve, ClassTag, Family, SpectralPath};

fn main() -> cliquewalk::Result<()> {
    let g = build_graph(Family::Barbell, 6)?;
    let es = solve(&g, SpectralPath::Analytic)?;
    let bridge = g.representative(ClassTag::BridgeA)?;
    let start = Start::Vertex(bridge);
    let other_bridge = g.representative(ClassTag::BridgeB)?;

    let walk = Propagator::new(&es, &start)?;
    for t in [0.0, 1.0, 2.0, 5.0, 10.0, 50.0] {
        let state = walk.state(t);
        println!(
            "t={t:>5}: stay {:.6}  cross {:.6}  norm {:.15}",
            state.probabilities()[bridge],
            state.probabilities()[other_bridge],
            state.norm_sq()
        );
    }

    let limit = limiting_distribution(&es, &start)?;
    for t_max in [100.0, 1000.0] {
        let avg = finite_time_average(&es, &start, t_max, 0.01)?;
        let gap = avg.iter().zip(&limit.probabilities).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        println!("T={t_max}: max |average - limit| = {gap:.3e}");
    }
    Ok(())
}
