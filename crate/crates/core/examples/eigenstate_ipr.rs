//! Eigenstate IPR of every labelled mode, next to the catalogued value.

use cliquewalk::ipr::mode_iprs;
use cliquewalk::reference::{predict, CATALOG, Quantity};
use cliquewalk::{build_graph, solve, Family, SpectralPath};

fn main() -> cliquewalk::Result<()> {
    let g = build_graph(Family::StarSingle, 6)?;
    let es = solve(&g, SpectralPath::Analytic)?;
    let mut seen = std::collections::BTreeSet::new();
    for record in mode_iprs(&es)? {
        let family_name = record.subject.split(['[', '#']).next().unwrap_or_default().to_string();
        if seen.insert(family_name) {
            println!("{:<16} IPR {:.12}  support {:.3}", record.subject, record.value, record.effective_support);
        }
    }
    println!();
    for m in CATALOG.iter().filter(|m| m.family == Family::StarSingle && m.quantity == Quantity::EigenstateIpr) {
        println!("{:<22} {:<30} at n=6: {}", m.id, m.expression, predict(m.id, 6.0)?);
    }
    Ok(())
}
