//! Ghost-edge reduction at balanced vertices.
//!
//! At a balanced standard vertex the columns of `S` belonging to the bonds
//! ending there sum to zero, so one of them can be eliminated from
//! `det(I − e^{ikL}S)`. The eliminated bond `b₁` is replaced by zero-length
//! ghosts, one per other bond `b_j` ending at the same vertex: a hop
//! `b → ghost` has amplitude `−S[b₁, b]` and the ghost continues to `b_j`
//! with amplitude 1.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{OrbitDigraph, OrbitNode};
use crate::error::{Error, Result};
use crate::graph::{BondDigraph, BondId, Coupling, Length, MetricGraph, VertexId};
use crate::rational::Rational;
use crate::scattering::ScatteringSystem;

#[derive(Clone, Debug)]
pub struct Ghost {
    /// Node index in the reduced digraph.
    pub node: usize,
    pub deleted: BondId,
    pub vertex: VertexId,
    pub continuation: BondId,
    pub label: String,
}

#[derive(Clone, Debug)]
pub struct GhostReducedDigraph {
    /// Bond nodes keep their indices; deleted bonds stay as isolated nodes and
    /// ghosts are appended after them.
    pub digraph: OrbitDigraph,
    pub deletions: BTreeMap<VertexId, BondId>,
    pub ghosts: Vec<Ghost>,
}

impl GhostReducedDigraph {
    pub fn is_deleted(&self, b: BondId) -> bool {
        self.deletions.values().any(|&d| d == b)
    }
}

/// One deletion per balanced standard vertex: the lowest reversed bond ending
/// there, or the lowest incoming bond if none is reversed.
pub fn default_deletions(graph: &MetricGraph, bonds: &BondDigraph) -> BTreeMap<VertexId, BondId> {
    graph
        .vertices
        .iter()
        .filter(|v| {
            v.coupling == Coupling::Standard && graph.internal_degree(v.id) == v.n_halflines
        })
        .filter_map(|v| {
            let incoming = bonds.incoming(v.id);
            let pick = incoming
                .iter()
                .copied()
                .find(|&b| bonds.bond(b).reversed)
                .or_else(|| incoming.first().copied())?;
            Some((v.id, pick))
        })
        .collect()
}

fn check_preconditions(
    graph: &MetricGraph,
    bonds: &BondDigraph,
    deletions: &BTreeMap<VertexId, BondId>,
) -> Result<()> {
    if graph.has_loops() {
        return Err(Error::GhostPrecondition("no loops".into()));
    }
    if graph.has_multi_edges() {
        return Err(Error::GhostPrecondition("no multi-edges".into()));
    }
    for (&v, &d) in deletions {
        let spec = graph.vertex(v).ok_or(Error::UnknownVertex(v))?;
        if d.0 >= bonds.len() {
            return Err(Error::UnknownBond(d.0.to_string()));
        }
        if spec.coupling != Coupling::Standard || !graph.is_balanced(v)? {
            return Err(Error::GhostPrecondition(format!(
                "a balanced standard vertex, but {v} is not"
            )));
        }
        if bonds.terminus(d) != v {
            return Err(Error::GhostPrecondition(format!(
                "the deleted bond to end at its vertex, but {} does not end at {v}",
                bonds.label(d)
            )));
        }
        let incoming = bonds.incoming(v);
        if incoming.iter().any(|&b| bonds.length(b) != bonds.length(d)) {
            return Err(Error::GhostPrecondition(format!(
                "equal edge lengths at vertex {v}"
            )));
        }
    }
    Ok(())
}

/// Reduced orbit digraph for the given deletions (balanced vertex → bond
/// ending there). Its pseudo-orbit expansion equals the unreduced one.
pub fn ghost_reduce(
    graph: &MetricGraph,
    bonds: &BondDigraph,
    system: &ScatteringSystem,
    deletions: &BTreeMap<VertexId, BondId>,
) -> Result<GhostReducedDigraph> {
    check_preconditions(graph, bonds, deletions)?;
    let base = OrbitDigraph::from_system(system, bonds);
    let dim = base.len();
    let deleted: Vec<bool> = (0..dim)
        .map(|b| deletions.values().any(|d| d.0 == b))
        .collect();

    let mut nodes: Vec<OrbitNode> = base.nodes.clone();
    let mut arcs: Vec<Vec<(usize, Rational)>> = (0..dim)
        .map(|c| {
            if deleted[c] {
                return Vec::new();
            }
            base.arcs[c]
                .iter()
                .filter(|(r, _)| !deleted[*r])
                .cloned()
                .collect()
        })
        .collect();

    let s = system.s();
    let mut ghosts = Vec::new();
    for (&v, &d) in deletions {
        let label = bonds.label(d);
        let continuations: Vec<BondId> =
            bonds.incoming(v).into_iter().filter(|&b| b != d).collect();
        for (i, &cont) in continuations.iter().enumerate() {
            let node = nodes.len();
            let ghost_label = format!("{label}{}", "'".repeat(i + 1));
            nodes.push(OrbitNode {
                label: ghost_label.clone(),
                length: Length::zero(),
                edge: None,
                ghost: true,
            });
            arcs.push(vec![(cont.0, Rational::one())]);
            for c in (0..dim).filter(|&c| !deleted[c]) {
                let a = &s[(d.0, c)];
                if !a.is_zero() {
                    arcs[c].push((node, -a.clone()));
                }
            }
            ghosts.push(Ghost {
                node,
                deleted: d,
                vertex: v,
                continuation: cont,
                label: ghost_label,
            });
        }
    }

    Ok(GhostReducedDigraph {
        digraph: OrbitDigraph::from_parts(nodes, arcs),
        deletions: deletions.clone(),
        ghosts,
    })
}
