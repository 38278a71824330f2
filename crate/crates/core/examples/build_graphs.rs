//! Builds one instance of each family and prints its vertex classes and degrees.

use cliquewalk::{build_graph, Family};

fn main() -> cliquewalk::Result<()> {
    for family in Family::ALL {
        let g = build_graph(family, 4)?;
        println!("{family} n=4: {} vertices, {} edges", g.vertex_count(), g.edges().len());
        for &tag in family.class_tags() {
            let members = g.vertices_of(tag);
            let degree = g.degrees()[members[0]];
            println!("  {tag:<18} {:>3} vertices, degree {degree}", members.len());
        }
    }
    let json = serde_json::to_string(&build_graph(Family::Barbell, 3)?.to_export())?;
    println!("barbell n=3 export: {json}");
    Ok(())
}
