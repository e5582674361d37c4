//! Independent oracles and random graph generators shared by the
//! integration tests.

#![allow(dead_code)]

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qgraph::graph::{EdgeSpec, VertexSpec};
use qgraph::rational::{int, ratio};
use qgraph::{Coupling, EdgeId, Length, MetricGraph, Rational, VertexId};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn rat_rows(rows: &[&[(i64, i64)]]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|r| r.iter().map(|&(p, q)| ratio(p, q)).collect())
        .collect()
}

/// Solves `a·x = b` over the rationals by Gauss–Jordan elimination.
fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Vec<Rational> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("nonsingular system");
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col].clone();
        for c in 0..n {
            a[col][c] = &a[col][c] / &p;
        }
        b[col] = &b[col] / &p;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..n {
                    let d = &f * &a[col][c];
                    a[r][c] -= d;
                }
                let d = &f * &b[col];
                b[r] -= d;
            }
        }
    }
    b
}

/// Effective vertex scattering obtained by eliminating the halfline
/// amplitudes from the matching conditions at a standard vertex: with
/// `f_j = α_in e^{−ikx} + α_out e^{ikx}` and `g_s = β_s e^{ikx}`, continuity
/// gives `α_out_j + α_in_j = α_out_1 + α_in_1 = β_s` and the current
/// condition `Σ(α_out − α_in) + Σβ = 0`. Column `c` is the response to a unit
/// incoming wave on edge `c`.
pub fn vertex_scattering_by_elimination(n: usize, m: usize) -> Vec<Vec<Rational>> {
    let unknowns = n + m;
    let mut columns = Vec::new();
    for c in 0..n {
        let alpha_in: Vec<Rational> = (0..n)
            .map(|j| if j == c { int(1) } else { int(0) })
            .collect();
        let mut a = Vec::new();
        let mut b = Vec::new();
        for j in 1..n {
            let mut row = vec![int(0); unknowns];
            row[j] = int(1);
            row[0] = int(-1);
            a.push(row);
            b.push(&alpha_in[0] - &alpha_in[j]);
        }
        for s in 0..m {
            let mut row = vec![int(0); unknowns];
            row[n + s] = int(1);
            row[0] = int(-1);
            a.push(row);
            b.push(alpha_in[0].clone());
        }
        a.push(vec![int(1); unknowns]);
        b.push(alpha_in.iter().fold(int(0), |acc, x| acc + x));
        let x = solve(a, b);
        columns.push(x[..n].to_vec());
    }
    (0..n)
        .map(|r| (0..n).map(|c| columns[c][r].clone()).collect())
        .collect()
}

/// Complex determinant by partial-pivoting elimination.
pub fn complex_det(mut a: Vec<Vec<Complex64>>) -> Complex64 {
    let n = a.len();
    let mut det = Complex64::one();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))
            .expect("nonempty");
        if a[pivot][col].norm() == 0.0 {
            return Complex64::zero();
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                let d = f * a[col][c];
                a[r][c] -= d;
            }
        }
    }
    det
}

/// `det(I − e^{ikL}S)` from the assembled matrix, independent of the
/// library's evaluator.
pub fn determinant_condition(system: &qgraph::ScatteringSystem, k: Complex64) -> Complex64 {
    let dim = system.dim();
    let s = system.s();
    let a = (0..dim)
        .map(|r| {
            let phase = (Complex64::i() * k * system.lengths()[r].to_f64()).exp();
            (0..dim)
                .map(|c| {
                    let delta = if r == c { 1.0 } else { 0.0 };
                    Complex64::new(delta, 0.0) - phase * qgraph::rational::to_f64(&s[(r, c)])
                })
                .collect()
        })
        .collect();
    complex_det(a)
}

pub struct GraphShape {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub equilateral: bool,
    pub simple: bool,
    pub allow_dirichlet: bool,
}

fn random_length(rng: &mut StdRng) -> Rational {
    ratio(rng.random_range(1..=8), rng.random_range(1..=4))
}

/// A random connected graph: a spanning tree plus extra edges, halflines
/// chosen so some vertices are balanced and others not.
pub fn random_graph(rng: &mut StdRng, shape: &GraphShape) -> MetricGraph {
    loop {
        let nv = rng.random_range(2..=shape.max_vertices);
        let mut ends: Vec<(usize, usize)> = (1..nv).map(|v| (rng.random_range(0..v), v)).collect();
        let extra = rng.random_range(0..=shape.max_edges.saturating_sub(nv - 1));
        for _ in 0..extra {
            let a = rng.random_range(0..nv);
            let b = rng.random_range(0..nv);
            ends.push((a, b));
        }
        if ends.len() > shape.max_edges {
            continue;
        }
        if shape.simple {
            let mut seen = std::collections::BTreeSet::new();
            if ends
                .iter()
                .any(|&(a, b)| a == b || !seen.insert((a.min(b), a.max(b))))
            {
                continue;
            }
        }
        let has_loops = ends.iter().any(|&(a, b)| a == b);
        let unit = random_length(rng);
        let edges: Vec<EdgeSpec> = ends
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| {
                let (from, to) = if rng.random_bool(0.5) { (a, b) } else { (b, a) };
                EdgeSpec {
                    id: EdgeId(i as i64 + 1),
                    from: VertexId(from as i64 + 1),
                    to: VertexId(to as i64 + 1),
                    length: Length::Exact(if shape.equilateral {
                        unit.clone()
                    } else {
                        random_length(rng)
                    }),
                }
            })
            .collect();
        let degree = |v: usize| {
            ends.iter()
                .map(|&(a, b)| usize::from(a == v) + usize::from(b == v))
                .sum::<usize>()
        };
        let vertices: Vec<VertexSpec> = (0..nv)
            .map(|v| {
                let d = degree(v);
                let dirichlet = shape.allow_dirichlet && d == 1 && rng.random_bool(0.3);
                let n_halflines = if dirichlet {
                    0
                } else if rng.random_bool(0.4) {
                    d
                } else {
                    rng.random_range(0..=3)
                };
                VertexSpec {
                    id: VertexId(v as i64 + 1),
                    coupling: if dirichlet {
                        Coupling::Dirichlet
                    } else {
                        Coupling::Standard
                    },
                    n_halflines,
                }
            })
            .collect();
        let graph = MetricGraph {
            vertices,
            edges,
            allow_loops: has_loops,
        };
        if graph.validate().is_valid() {
            return graph;
        }
    }
}
