//! Pseudo-orbit expansion of the equilateral triangle with two halflines at
//! each vertex: every irreducible pseudo orbit, then the summed condition.

use qgraph::catalog;
use qgraph::orbits::{EnumerationOptions, OrbitExpansion};
use qgraph::rational::format_rational;
use qgraph::ScatteringSystem;

fn main() -> qgraph::Result<()> {
    let graph = catalog::triangle();
    let (bonds, system) = ScatteringSystem::from_graph(&graph)?;
    let e = OrbitExpansion::for_system(&system, &bonds, EnumerationOptions::default())?;

    println!(
        "{} periodic orbits, {} irreducible pseudo orbits",
        e.cycles.len(),
        e.orbits.len()
    );
    for o in &e.orbits {
        let cycles: Vec<String> = e
            .orbit_labels(o)
            .iter()
            .map(|c| format!("({})", c.join(",")))
            .collect();
        println!(
            "  {:<40} m={} A={:>6} length={}",
            if cycles.is_empty() {
                "∅".to_string()
            } else {
                cycles.concat()
            },
            o.m(),
            format_rational(&o.amplitude),
            o.length
        );
    }
    println!("by bond count: {:?}", e.counts_by_bond_number());
    println!("condition: {} = 0", e.condition()?.display());
    Ok(())
}
