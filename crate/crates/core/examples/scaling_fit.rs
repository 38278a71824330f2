//! Sweeps catalogued quantities over n and fits the log-log slope.

use cliquewalk::report::sweep;
use cliquewalk::SpectralPath;

fn main() -> cliquewalk::Result<()> {
    let runs: [(&str, &[usize]); 4] = [
        ("barbell_clique_dyn", &[8, 16, 32, 64, 128]),
        ("v2_global_modes_eig", &[8, 16, 24, 32]),
        ("v2_center_dyn", &[8, 16, 24, 32]),
        ("v2_internal_dyn", &[8, 16, 24, 32]),
    ];
    for (id, grid) in runs {
        let r = sweep(id, grid, SpectralPath::Analytic)?;
        print!("{id:<22}");
        for (n, v) in r.grid.iter().zip(&r.values) {
            print!("  n={n}: {v:.5}");
        }
        match r.fit {
            Some(fit) => println!("  slope {:.3} (expected {:?})", fit.slope, fit.expected_order),
            None => println!("  passed {}", r.passed_overall()),
        }
    }
    Ok(())
}
