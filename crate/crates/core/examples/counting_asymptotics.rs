//! Resonance counting N(R) for the three unit-length example graphs,
//! compared with the predicted slope 2W/π.

use qgraph::catalog;
use qgraph::orbits::{EnumerationOptions, OrbitExpansion};
use qgraph::rational::int;
use qgraph::resonance::{count_resonances, find_roots, reduce_with_base};
use qgraph::ScatteringSystem;

fn main() -> qgraph::Result<()> {
    let graphs = [
        ("two abscissas", catalog::two_abscissas()),
        ("triangle", catalog::triangle()),
        ("square", catalog::square()),
    ];
    for (name, graph) in graphs {
        let (bonds, system) = ScatteringSystem::from_graph(&graph)?;
        let cond = OrbitExpansion::for_system(&system, &bonds, EnumerationOptions::default())?
            .condition()?;
        let red = reduce_with_base(&cond, Some(&int(1)))?;
        let est = count_resonances(&find_roots(&red)?, 400.0, 40)?;
        println!(
            "{name:<14} vol = {}  W = {:.3}  fitted slope = {:.4}  2W/π = {:.4}",
            graph.volume(),
            est.w.unwrap_or(0.0),
            est.fitted_slope,
            est.predicted_slope.unwrap_or(0.0)
        );
    }
    Ok(())
}
