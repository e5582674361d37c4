//! Ready-made graphs: the three worked examples (two abscissas with two
//! halflines, triangle, square) and a few parametric families used in tests
//! and examples.

use crate::graph::{Coupling, EdgeId, EdgeSpec, Length, MetricGraph, VertexId, VertexSpec};
use crate::rational::{int, Rational};

fn vertex(id: i64, coupling: Coupling, n_halflines: usize) -> VertexSpec {
    VertexSpec {
        id: VertexId(id),
        coupling,
        n_halflines,
    }
}

fn edge(id: i64, from: i64, to: i64, length: Rational) -> EdgeSpec {
    EdgeSpec {
        id: EdgeId(id),
        from: VertexId(from),
        to: VertexId(to),
        length: Length::Exact(length),
    }
}

/// Two unit edges v1 → v2 → v3, Dirichlet at the ends, two halflines at v2.
pub fn two_abscissas() -> MetricGraph {
    two_abscissas_with_length(int(1))
}

pub fn two_abscissas_with_length(l: Rational) -> MetricGraph {
    MetricGraph {
        vertices: vec![
            vertex(1, Coupling::Dirichlet, 0),
            vertex(2, Coupling::Standard, 2),
            vertex(3, Coupling::Dirichlet, 0),
        ],
        edges: vec![edge(1, 1, 2, l.clone()), edge(2, 2, 3, l)],
        allow_loops: false,
    }
}

/// Cycle graph on `n` vertices with edge j running v_j → v_{j+1} and
/// `halflines` halflines at every vertex.
pub fn cycle(n: usize, l: Rational, halflines: usize) -> MetricGraph {
    let n = n as i64;
    MetricGraph {
        vertices: (1..=n)
            .map(|i| vertex(i, Coupling::Standard, halflines))
            .collect(),
        edges: (1..=n).map(|j| edge(j, j, j % n + 1, l.clone())).collect(),
        allow_loops: false,
    }
}

/// Unit triangle with two halflines per vertex.
pub fn triangle() -> MetricGraph {
    cycle(3, int(1), 2)
}

/// Unit square with two halflines per vertex.
pub fn square() -> MetricGraph {
    cycle(4, int(1), 2)
}

/// Path v1 → v2 → … → v_{n+1} of `n` unit edges, standard coupling, with the
/// given halfline counts per vertex.
pub fn path(halflines: &[usize]) -> MetricGraph {
    assert!(halflines.len() >= 2);
    MetricGraph {
        vertices: halflines
            .iter()
            .enumerate()
            .map(|(i, &m)| vertex(i as i64 + 1, Coupling::Standard, m))
            .collect(),
        edges: (1..halflines.len() as i64)
            .map(|j| edge(j, j, j + 1, int(1)))
            .collect(),
        allow_loops: false,
    }
}
