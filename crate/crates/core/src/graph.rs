//! Metric graphs with attached halflines and their doubled bond digraph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Add;
use std::path::Path;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, to_f64, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub i64);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coupling {
    Standard,
    Dirichlet,
}

/// An edge length: exact when the input gave an integer or fraction,
/// floating point when it gave a decimal.
#[derive(Clone, Debug)]
pub enum Length {
    Exact(Rational),
    Approx(f64),
}

impl Length {
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Length::Exact(r) => Some(r),
            Length::Approx(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Length::Exact(r) => to_f64(r),
            Length::Approx(x) => *x,
        }
    }

    pub fn zero() -> Self {
        Length::Exact(Rational::zero())
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Length::Exact(r) => r.is_positive(),
            Length::Approx(x) => x.is_finite() && *x > 0.0,
        }
    }

    /// Parses `"1"`, `"3/2"` (exact) or a decimal such as `"1.4142"`.
    pub fn parse(text: &str) -> Option<Self> {
        if let Some(r) = parse_rational(text) {
            return Some(Length::Exact(r));
        }
        text.trim().parse::<f64>().ok().map(Length::Approx)
    }
}

impl PartialEq for Length {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Length::Exact(a), Length::Exact(b)) => a == b,
            (Length::Approx(a), Length::Approx(b)) => a == b,
            _ => false,
        }
    }
}

impl Add for &Length {
    type Output = Length;

    fn add(self, rhs: &Length) -> Length {
        match (self, rhs) {
            (Length::Exact(a), Length::Exact(b)) => Length::Exact(a + b),
            _ => Length::Approx(self.to_f64() + rhs.to_f64()),
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Exact(r) => write!(f, "{}", format_rational(r)),
            Length::Approx(x) => write!(f, "{x:?}"),
        }
    }
}

impl Serialize for Length {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Length {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
            Float(f64),
        }
        match Raw::deserialize(d)? {
            Raw::Text(t) => Length::parse(&t)
                .ok_or_else(|| serde::de::Error::custom(format!("unparsable length `{t}`"))),
            Raw::Int(i) => Ok(Length::Exact(Rational::from_integer(i.into()))),
            Raw::Float(x) => Ok(Length::Approx(x)),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VertexSpec {
    pub id: VertexId,
    pub coupling: Coupling,
    #[serde(default, rename = "halflines")]
    pub n_halflines: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub id: EdgeId,
    pub from: VertexId,
    pub to: VertexId,
    pub length: Length,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MetricGraph {
    pub vertices: Vec<VertexSpec>,
    pub edges: Vec<EdgeSpec>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub allow_loops: bool,
}

impl MetricGraph {
    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| Error::Read {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }

    /// Number of internal edges N.
    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Total number of halflines M.
    pub fn n_halflines(&self) -> usize {
        self.vertices.iter().map(|v| v.n_halflines).sum()
    }

    pub fn volume(&self) -> Length {
        self.edges
            .iter()
            .fold(Length::zero(), |acc, e| &acc + &e.length)
    }

    pub fn vertex(&self, id: VertexId) -> Option<&VertexSpec> {
        self.vertices.iter().find(|v| v.id == id)
    }

    /// Number of edge endpoints at `id`; loops count twice.
    pub fn internal_degree(&self, id: VertexId) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.from == id) + usize::from(e.to == id))
            .sum()
    }

    /// A vertex with as many halflines as internal edge ends.
    pub fn is_balanced(&self, id: VertexId) -> Result<bool> {
        let v = self.vertex(id).ok_or(Error::UnknownVertex(id))?;
        Ok(self.internal_degree(id) == v.n_halflines)
    }

    pub fn balanced_vertices(&self) -> Vec<VertexId> {
        self.vertices
            .iter()
            .filter(|v| self.internal_degree(v.id) == v.n_halflines)
            .map(|v| v.id)
            .collect()
    }

    /// The common edge length, if all edges have the same one.
    pub fn equilateral_length(&self) -> Option<&Length> {
        let first = &self.edges.first()?.length;
        self.edges
            .iter()
            .all(|e| &e.length == first)
            .then_some(first)
    }

    pub fn exact_lengths(&self) -> Option<Vec<Rational>> {
        self.edges
            .iter()
            .map(|e| e.length.exact().cloned())
            .collect()
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|e| e.from == e.to)
    }

    pub fn has_multi_edges(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges
            .iter()
            .any(|e| !seen.insert((e.from.min(e.to), e.from.max(e.to))))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut ids = BTreeSet::new();
        for v in &self.vertices {
            if !ids.insert(v.id) {
                violations.push(Violation::DuplicateVertex(v.id));
            }
        }
        let mut edge_ids = BTreeSet::new();
        for e in &self.edges {
            if !edge_ids.insert(e.id) {
                violations.push(Violation::DuplicateEdge(e.id));
            }
            for end in [e.from, e.to] {
                if !ids.contains(&end) {
                    violations.push(Violation::UnknownEndpoint {
                        edge: e.id,
                        vertex: end,
                    });
                }
            }
            if !e.length.is_positive() {
                violations.push(Violation::NonpositiveLength { edge: e.id });
            }
            if e.from == e.to && !self.allow_loops {
                violations.push(Violation::LoopNotAllowed { edge: e.id });
            }
        }
        if self.edges.is_empty() {
            violations.push(Violation::NoEdges);
        }
        for v in &self.vertices {
            let degree = self.internal_degree(v.id);
            match v.coupling {
                Coupling::Dirichlet => {
                    if degree != 1 {
                        violations.push(Violation::DirichletDegree {
                            vertex: v.id,
                            degree,
                        });
                    }
                    if v.n_halflines != 0 {
                        violations.push(Violation::DirichletHalflines { vertex: v.id });
                    }
                }
                Coupling::Standard => {
                    if degree == 0 {
                        violations.push(Violation::NoInternalEdge { vertex: v.id });
                    }
                }
            }
        }
        let components = self.component_count(&ids);
        if components > 1 {
            violations.push(Violation::Disconnected { components });
        }
        ValidationReport { violations }
    }

    fn component_count(&self, ids: &BTreeSet<VertexId>) -> usize {
        let mut parent: BTreeMap<VertexId, VertexId> = ids.iter().map(|&v| (v, v)).collect();
        fn find(parent: &mut BTreeMap<VertexId, VertexId>, v: VertexId) -> VertexId {
            let p = parent[&v];
            if p == v {
                return v;
            }
            let root = find(parent, p);
            parent.insert(v, root);
            root
        }
        for e in &self.edges {
            if parent.contains_key(&e.from) && parent.contains_key(&e.to) {
                let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
                if a != b {
                    parent.insert(a, b);
                }
            }
        }
        let vs: Vec<VertexId> = parent.keys().copied().collect();
        vs.into_iter()
            .map(|v| find(&mut parent, v))
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(report))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    DuplicateVertex(VertexId),
    DuplicateEdge(EdgeId),
    UnknownEndpoint { edge: EdgeId, vertex: VertexId },
    NonpositiveLength { edge: EdgeId },
    LoopNotAllowed { edge: EdgeId },
    NoEdges,
    DirichletDegree { vertex: VertexId, degree: usize },
    DirichletHalflines { vertex: VertexId },
    NoInternalEdge { vertex: VertexId },
    Disconnected { components: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertex(v) => write!(f, "duplicate vertex id {v}"),
            Violation::DuplicateEdge(e) => write!(f, "duplicate edge id {e}"),
            Violation::UnknownEndpoint { edge, vertex } => {
                write!(f, "edge {edge} references unknown vertex {vertex}")
            }
            Violation::NonpositiveLength { edge } => write!(f, "edge {edge}: nonpositive length"),
            Violation::LoopNotAllowed { edge } => {
                write!(f, "edge {edge} is a loop but allow_loops is not set")
            }
            Violation::NoEdges => write!(f, "graph has no internal edges"),
            Violation::DirichletDegree { vertex, degree } => {
                write!(
                    f,
                    "vertex {vertex}: Dirichlet degree ≠ 1 (internal degree {degree})"
                )
            }
            Violation::DirichletHalflines { vertex } => {
                write!(
                    f,
                    "vertex {vertex}: Dirichlet vertices cannot carry halflines"
                )
            }
            Violation::NoInternalEdge { vertex } => {
                write!(f, "vertex {vertex}: standard vertex without internal edges")
            }
            Violation::Disconnected { components } => {
                write!(f, "compact part is disconnected ({components} components)")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msgs: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", msgs.join("; "))
    }
}

/// Index into the bond list `(b_1, …, b_N, b̂_1, …, b̂_N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BondId(pub usize);

#[derive(Clone, Debug)]
pub struct Bond {
    /// Position of the parent edge in `MetricGraph::edges`.
    pub edge_index: usize,
    pub edge: EdgeId,
    pub reversed: bool,
    pub origin: VertexId,
    pub terminus: VertexId,
    pub length: Length,
}

/// The doubled directed graph: every edge becomes a bond `b_j` oriented
/// from `EdgeSpec::from` to `EdgeSpec::to`, and its reverse `b̂_j`.
#[derive(Clone, Debug)]
pub struct BondDigraph {
    bonds: Vec<Bond>,
    n_edges: usize,
}

impl BondDigraph {
    pub fn new(graph: &MetricGraph) -> Result<Self> {
        graph.ensure_valid()?;
        let n = graph.n_edges();
        let mut bonds = Vec::with_capacity(2 * n);
        for reversed in [false, true] {
            for (edge_index, e) in graph.edges.iter().enumerate() {
                let (origin, terminus) = if reversed {
                    (e.to, e.from)
                } else {
                    (e.from, e.to)
                };
                bonds.push(Bond {
                    edge_index,
                    edge: e.id,
                    reversed,
                    origin,
                    terminus,
                    length: e.length.clone(),
                });
            }
        }
        Ok(Self { bonds, n_edges: n })
    }

    pub fn len(&self) -> usize {
        self.bonds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bonds.is_empty()
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    pub fn bond(&self, b: BondId) -> &Bond {
        &self.bonds[b.0]
    }

    pub fn bonds(&self) -> impl Iterator<Item = (BondId, &Bond)> {
        self.bonds.iter().enumerate().map(|(i, b)| (BondId(i), b))
    }

    pub fn reversal(&self, b: BondId) -> BondId {
        BondId((b.0 + self.n_edges) % (2 * self.n_edges))
    }

    pub fn origin(&self, b: BondId) -> VertexId {
        self.bonds[b.0].origin
    }

    pub fn terminus(&self, b: BondId) -> VertexId {
        self.bonds[b.0].terminus
    }

    pub fn length(&self, b: BondId) -> &Length {
        &self.bonds[b.0].length
    }

    /// Bonds ending at `v`, in index order.
    pub fn incoming(&self, v: VertexId) -> Vec<BondId> {
        self.bonds()
            .filter(|(_, b)| b.terminus == v)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn outgoing(&self, v: VertexId) -> Vec<BondId> {
        self.bonds()
            .filter(|(_, b)| b.origin == v)
            .map(|(i, _)| i)
            .collect()
    }

    /// `"3"` for `b_3` and `"3^"` for `b̂_3`, using edge ids.
    pub fn label(&self, b: BondId) -> String {
        let bond = &self.bonds[b.0];
        if bond.reversed {
            format!("{}^", bond.edge)
        } else {
            bond.edge.to_string()
        }
    }

    pub fn parse_label(&self, label: &str) -> Result<BondId> {
        let label = label.trim();
        let (edge, reversed) = match label.strip_suffix('^') {
            Some(e) => (e, true),
            None => (label, false),
        };
        let edge: i64 = edge
            .parse()
            .map_err(|_| Error::UnknownBond(label.to_string()))?;
        self.bonds()
            .find(|(_, b)| b.edge.0 == edge && b.reversed == reversed)
            .map(|(i, _)| i)
            .ok_or_else(|| Error::UnknownBond(label.to_string()))
    }
}
