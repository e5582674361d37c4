//! Loading graph files and reporting every validation problem at once.

use qgraph::{Error, MetricGraph};

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/graphs");
    for name in ["two_abscissas", "triangle", "square", "mixed_lengths"] {
        let g =
            MetricGraph::from_json_file(format!("{dir}/{name}.json")).expect("shipped graph loads");
        println!(
            "{name}: {} vertices, {} edges, {} halflines, vol {}",
            g.vertices.len(),
            g.n_edges(),
            g.n_halflines(),
            g.volume()
        );
    }

    let broken = r#"{
        "vertices": [{"id": 1, "coupling": "dirichlet", "halflines": 1}, {"id": 1, "coupling": "standard"}],
        "edges": [{"id": 1, "from": 1, "to": 9, "length": "-2"}]
    }"#;
    let g = MetricGraph::from_json_str(broken).expect("well-formed json");
    println!("{}", g.validate());

    match MetricGraph::from_json_str("{\"vertices\": [,]}") {
        Err(e @ Error::Parse { .. }) => println!("{e}"),
        other => println!("unexpected: {other:?}"),
    }
}
