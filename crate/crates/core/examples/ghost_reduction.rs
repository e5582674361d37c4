//! Ghost-edge reduction of the square: one reversed bond removed at each
//! balanced vertex, with far fewer pseudo orbits and the same condition.

use qgraph::catalog;
use qgraph::orbits::{default_deletions, ghost_reduce, EnumerationOptions, OrbitExpansion};
use qgraph::rational::format_rational;
use qgraph::ScatteringSystem;

fn main() -> qgraph::Result<()> {
    let graph = catalog::square();
    let (bonds, system) = ScatteringSystem::from_graph(&graph)?;
    let deletions = default_deletions(&graph, &bonds);
    for (v, b) in &deletions {
        println!("delete {} at vertex {v}", bonds.label(*b));
    }

    let reduced = ghost_reduce(&graph, &bonds, &system, &deletions)?;
    let opts = EnumerationOptions::default();
    let full = OrbitExpansion::for_system(&system, &bonds, opts)?;
    let small = OrbitExpansion::new(reduced.digraph, opts)?;

    println!(
        "pseudo orbits: {} unreduced, {} reduced",
        full.orbits.len(),
        small.orbits.len()
    );
    for o in &small.orbits {
        let cycles: Vec<String> = small
            .orbit_labels(o)
            .iter()
            .map(|c| format!("({})", c.join(",")))
            .collect();
        println!(
            "  {} A={} length={}",
            cycles.concat(),
            format_rational(&o.amplitude),
            o.length
        );
    }
    let (a, b) = (full.condition()?, small.condition()?);
    println!("unreduced: {}", a.display());
    println!("reduced:   {}", b.display());
    assert_eq!(a, b);
    Ok(())
}
