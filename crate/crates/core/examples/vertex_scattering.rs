//! Effective vertex-scattering matrices for a few (internal edges, halflines)
//! pairs, and whether the result is unitary.

use qgraph::linalg::RatMatrix;
use qgraph::rational::format_rational;
use qgraph::scattering::effective_vertex_scattering;

fn show(m: &RatMatrix) {
    for r in 0..m.nrows() {
        let row: Vec<String> = m
            .row(r)
            .iter()
            .map(|x| format!("{:>5}", format_rational(x)))
            .collect();
        println!("    [{}]", row.join(" "));
    }
}

fn main() -> qgraph::Result<()> {
    for (n, m) in [(1, 0), (1, 1), (2, 0), (2, 2), (3, 1), (3, 3)] {
        let sigma = effective_vertex_scattering(n, m)?;
        let unitary = &sigma.transpose() * &sigma == RatMatrix::identity(n);
        println!("n = {n}, m = {m}, unitary: {unitary}");
        show(&sigma);
    }
    Ok(())
}
