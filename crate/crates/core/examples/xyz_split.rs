//! Splits the dynamical IPR from a barbell clique vertex into
//! same-mode, cross-mode and pure-interference parts, and compares it
//! with the overlap lower bound.

use cliquewalk::dynamics::Start;
use cliquewalk::ipr::{dynamical_ipr, observation1_lower_bound, xyz_decomposition};
use cliquewalk::reference::{l_series, L_CONSTANT};
use cliquewalk::{build_graph, solve, ClassTag, Family, SpectralPath};

fn main() -> cliquewalk::Result<()> {
    for n in [4, 8, 16, 32, 64] {
        let g = build_graph(Family::Barbell, n)?;
        let es = solve(&g, SpectralPath::Analytic)?;
        let v = g.representative(ClassTag::CliqueA)?;
        let xyz = xyz_decomposition(&es, v)?;
        let ipr = dynamical_ipr(&es, &Start::Vertex(v))?;
        let bound = observation1_lower_bound(&es, &Start::Vertex(v))?;
        println!(
            "n={n:>2}: IPR {ipr:.6} = T1 {:.6} + T2 {:.6} + T3 {:.6} (Z {:.6}), bound {bound:.6}",
            xyz.t1(),
            xyz.t2(),
            xyz.t3(),
            xyz.z_sum()
        );
    }
    println!("L = pi^2/3 - 3 = {L_CONSTANT:.15}, series to 10^6 terms {:.15}", l_series(1_000_000));
    Ok(())
}
