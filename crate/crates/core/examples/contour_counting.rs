//! Argument-principle counting for a graph with an irrational edge length,
//! where no polynomial reduction exists.

use qgraph::orbits::EnumerationOptions;
use qgraph::resonance::{numeric_counting, DiscCounter};
use qgraph::MetricGraph;

fn main() -> qgraph::Result<()> {
    let graph = MetricGraph::from_json_str(include_str!("graphs/mixed_lengths.json"))?;
    let opts = EnumerationOptions::default();
    let counter = DiscCounter::from_graph(&graph, opts)?;
    println!(
        "{} exponential terms, W = {:.6}",
        counter.condition().terms().len(),
        counter.effective_size()
    );
    for r in [5.0, 10.0, 20.0] {
        let c = counter.count(r)?;
        println!("N({r}) = {} ({} phase samples)", c.zeros, c.samples);
    }
    let est = numeric_counting(&graph, 60.0, 12, opts)?;
    println!(
        "fitted slope {:.4}, predicted {:.4}",
        est.fitted_slope,
        est.predicted_slope.unwrap_or(f64::NAN)
    );
    Ok(())
}
