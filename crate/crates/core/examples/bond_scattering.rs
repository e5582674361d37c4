//! Bond scattering matrix of two Dirichlet-terminated edges joined at a
//! vertex with two halflines, its spectrum and the effective size.

use qgraph::catalog;
use qgraph::rational::format_rational;
use qgraph::scattering::effective_size;
use qgraph::ScatteringSystem;

fn main() -> qgraph::Result<()> {
    let graph = catalog::two_abscissas();
    let (bonds, system) = ScatteringSystem::from_graph(&graph)?;

    let labels: Vec<String> = (0..bonds.len())
        .map(|b| bonds.label(qgraph::BondId(b)))
        .collect();
    println!("bond order: {}", labels.join(" "));
    let s = system.s();
    for r in 0..system.dim() {
        let row: Vec<String> = s
            .row(r)
            .iter()
            .map(|x| format!("{:>5}", format_rational(x)))
            .collect();
        println!("  {:>3} [{}]", labels[r], row.join(" "));
    }

    let res = effective_size(&system, &graph)?;
    println!("eigenvalues of S:");
    for z in res.eigen.multiset() {
        println!("  {:+.6} {:+.6}i", z.re, z.im);
    }
    println!(
        "nonzero: {}, W = {} (vol = {}), weyl: {}",
        res.n_nonzero, res.w, res.vol, res.is_weyl
    );
    Ok(())
}
