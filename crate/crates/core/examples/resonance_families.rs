//! Resonances of the triangle: the condition as a polynomial in z = e^{ik},
//! its roots with exact multiplicities, and the resulting k lattices checked
//! against the determinant.

use qgraph::catalog;
use qgraph::orbits::{EnumerationOptions, OrbitExpansion};
use qgraph::resonance::{evaluate_condition, find_roots, reduce_to_polynomial};
use qgraph::ScatteringSystem;

fn main() -> qgraph::Result<()> {
    let graph = catalog::triangle();
    let (bonds, system) = ScatteringSystem::from_graph(&graph)?;
    let cond =
        OrbitExpansion::for_system(&system, &bonds, EnumerationOptions::default())?.condition()?;
    let red = reduce_to_polynomial(&cond)?;
    println!("p(z) = {}", red.poly.display("z"));

    for f in find_roots(&red)? {
        println!(
            "z = {:+.6} {:+.6}i  multiplicity {}  {}",
            f.z_root.re,
            f.z_root.im,
            f.multiplicity,
            f.kind.as_str()
        );
        for n in -2..=2 {
            let k = f.k(n);
            let det = evaluate_condition(&system, k).norm();
            println!(
                "    n = {n:+}: k = {:+.6} {:+.6}i   |det| = {det:.1e}",
                k.re, k.im
            );
        }
    }
    Ok(())
}
