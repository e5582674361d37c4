//! Weyl versus non-Weyl for paths with halflines in different places, and the
//! effective size read off the orbit polynomial.

use qgraph::catalog;
use qgraph::orbits::{EnumerationOptions, OrbitExpansion};
use qgraph::rational::int;
use qgraph::resonance::reduce_with_base;
use qgraph::scattering::classify_weyl;
use qgraph::ScatteringSystem;

fn main() -> qgraph::Result<()> {
    for halflines in [[1, 0, 0], [2, 0, 0], [0, 1, 0], [0, 2, 0], [1, 0, 1]] {
        let graph = catalog::path(&halflines);
        let class = classify_weyl(&graph);
        let (bonds, system) = ScatteringSystem::from_graph(&graph)?;
        let cond = OrbitExpansion::for_system(&system, &bonds, EnumerationOptions::default())?
            .condition()?;
        let red = reduce_with_base(&cond, Some(&int(1)))?;
        println!(
            "halflines {halflines:?}: {:?}, witnesses {:?}, W = {} of vol {}",
            class.class,
            class.witnesses.iter().map(|v| v.0).collect::<Vec<_>>(),
            red.effective_size(),
            graph.volume()
        );
    }
    Ok(())
}
