//! Effective vertex-scattering matrices and the global bond scattering
//! matrix `S = QΣ̃`.
//!
//! With standard coupling a vertex with `n` internal edges and `m`
//! halflines scatters incoming internal amplitudes by
//! `σ̃ = (2/(n+m))·J_n − I_n`, independent of the energy. Dirichlet ends
//! reflect with `−1`.

use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{BondDigraph, BondId, Coupling, Length, MetricGraph, VertexId};
use crate::linalg::RatMatrix;
use crate::poly::{roots_with_multiplicity, PolyRoot, RatPoly};
use crate::rational::{int, Rational};

/// `(2/(n+m))·J_n − I_n` for a standard vertex.
pub fn effective_vertex_scattering(n: usize, m: usize) -> Result<RatMatrix> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "a vertex needs at least one internal edge".into(),
        ));
    }
    let off = Rational::new(2.into(), ((n + m) as i64).into());
    Ok(RatMatrix::from_fn(n, n, |r, c| {
        if r == c {
            &off - Rational::one()
        } else {
            off.clone()
        }
    }))
}

pub fn dirichlet_vertex_scattering() -> RatMatrix {
    RatMatrix::from_rows(vec![vec![int(-1)]])
}

#[derive(Clone, Debug)]
pub struct VertexScatteringMatrix {
    pub vertex: VertexId,
    /// Incoming bonds indexing rows and columns, in bond order.
    pub incoming: Vec<BondId>,
    pub entries: RatMatrix,
}

#[derive(Clone, Debug)]
pub struct ScatteringSystem {
    sigma_tilde: RatMatrix,
    q: RatMatrix,
    s: RatMatrix,
    lengths: Vec<Length>,
    blocks: Vec<VertexScatteringMatrix>,
}

impl ScatteringSystem {
    pub fn assemble(graph: &MetricGraph, bonds: &BondDigraph) -> Result<Self> {
        graph.ensure_valid()?;
        let dim = bonds.len();
        let n = bonds.n_edges();
        let mut blocks = Vec::with_capacity(graph.vertices.len());
        let mut sigma_tilde = RatMatrix::zeros(dim, dim);
        for v in &graph.vertices {
            let incoming = bonds.incoming(v.id);
            let entries = match v.coupling {
                Coupling::Standard => effective_vertex_scattering(incoming.len(), v.n_halflines)?,
                Coupling::Dirichlet => dirichlet_vertex_scattering(),
            };
            debug_assert_eq!(entries.nrows(), incoming.len());
            for (i, &out_of) in incoming.iter().enumerate() {
                for (j, &into) in incoming.iter().enumerate() {
                    sigma_tilde[(out_of.0, into.0)] = entries[(i, j)].clone();
                }
            }
            blocks.push(VertexScatteringMatrix {
                vertex: v.id,
                incoming,
                entries,
            });
        }
        let q = RatMatrix::from_fn(dim, dim, |r, c| {
            if (r + n) % dim == c {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let s = &q * &sigma_tilde;
        let lengths = (0..dim).map(|b| bonds.length(BondId(b)).clone()).collect();
        Ok(Self {
            sigma_tilde,
            q,
            s,
            lengths,
            blocks,
        })
    }

    /// Convenience: validate, build bonds and assemble in one go.
    pub fn from_graph(graph: &MetricGraph) -> Result<(BondDigraph, Self)> {
        let bonds = BondDigraph::new(graph)?;
        let system = Self::assemble(graph, &bonds)?;
        Ok((bonds, system))
    }

    pub fn dim(&self) -> usize {
        self.s.nrows()
    }

    pub fn sigma_tilde(&self) -> &RatMatrix {
        &self.sigma_tilde
    }

    pub fn q(&self) -> &RatMatrix {
        &self.q
    }

    /// `S[r, c]` is the amplitude for a wave on bond `c` to continue on bond `r`.
    pub fn s(&self) -> &RatMatrix {
        &self.s
    }

    /// Diagonal of `L`: each edge length appears twice.
    pub fn lengths(&self) -> &[Length] {
        &self.lengths
    }

    pub fn vertex_blocks(&self) -> &[VertexScatteringMatrix] {
        &self.blocks
    }

    /// Bond order grouping incoming bonds by their terminus vertex; in this
    /// order `Σ̃` is block diagonal with the vertex matrices as blocks.
    pub fn block_order(&self) -> Vec<BondId> {
        self.blocks
            .iter()
            .flat_map(|b| b.incoming.iter().copied())
            .collect()
    }
}

/// Spectrum of `S`: the zero multiplicity exactly, the nonzero part as roots
/// of the exact characteristic polynomial with exact multiplicities.
#[derive(Clone, Debug)]
pub struct EigenData {
    pub zero_multiplicity: usize,
    pub nonzero: Vec<PolyRoot>,
    /// det(λI − S) in ascending powers of λ.
    pub characteristic: RatPoly,
}

impl EigenData {
    pub fn n_nonzero(&self) -> usize {
        self.nonzero.iter().map(|r| r.multiplicity).sum()
    }

    /// All 2N eigenvalues, each repeated by its algebraic multiplicity.
    pub fn multiset(&self) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = self
            .nonzero
            .iter()
            .flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity))
            .collect();
        out.extend(std::iter::repeat_n(
            Complex64::zero(),
            self.zero_multiplicity,
        ));
        out
    }
}

const ZERO_EIGENVALUE_THRESHOLD: f64 = 1e-9;

pub fn eigenvalues_of_s(system: &ScatteringSystem) -> Result<EigenData> {
    let s = system.s();
    let dim = system.dim();
    let zero_by_rank = dim - s.pow(dim as u32).rank();

    let mut ascending = s.characteristic_polynomial();
    ascending.reverse();
    let zero_by_charpoly = ascending.iter().take_while(|c| c.is_zero()).count();
    if zero_by_rank != zero_by_charpoly {
        return Err(Error::Internal(format!(
            "zero eigenvalue multiplicity {zero_by_rank} from rank of S^{dim} but \
             {zero_by_charpoly} from the characteristic polynomial"
        )));
    }
    let characteristic = RatPoly::new(ascending.clone());
    let reduced = RatPoly::new(ascending[zero_by_charpoly..].to_vec());
    let nonzero = roots_with_multiplicity(&reduced);
    if let Some(tiny) = nonzero
        .iter()
        .find(|r| r.value.norm() < ZERO_EIGENVALUE_THRESHOLD)
    {
        return Err(Error::Internal(format!(
            "eigenvalue {} counted as nonzero by exact arithmetic is numerically zero",
            tiny.value
        )));
    }
    Ok(EigenData {
        zero_multiplicity: zero_by_rank,
        nonzero,
        characteristic,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeylClass {
    Weyl,
    NonWeyl,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub class: WeylClass,
    pub witnesses: Vec<VertexId>,
}

impl Classification {
    pub fn is_weyl(&self) -> bool {
        self.class == WeylClass::Weyl
    }
}

/// Non-Weyl iff some vertex is balanced; the balanced vertices are the
/// witnesses.
pub fn classify_weyl(graph: &MetricGraph) -> Classification {
    let witnesses = graph.balanced_vertices();
    let class = if witnesses.is_empty() {
        WeylClass::Weyl
    } else {
        WeylClass::NonWeyl
    };
    Classification { class, witnesses }
}

#[derive(Clone, Debug)]
pub struct EffectiveSizeResult {
    pub n_nonzero: usize,
    /// Effective size as a multiple of the common edge length.
    pub w_in_edge_lengths: Rational,
    pub w: Length,
    pub vol: Length,
    pub edge_length: Length,
    pub is_weyl: bool,
    pub balanced_vertices: Vec<VertexId>,
    pub eigen: EigenData,
}

/// W = (ℓ/2)·n_nonzero for an equilateral graph.
pub fn effective_size(
    system: &ScatteringSystem,
    graph: &MetricGraph,
) -> Result<EffectiveSizeResult> {
    let edge_length = graph
        .equilateral_length()
        .ok_or(Error::NotEquilateral)?
        .clone();
    let eigen = eigenvalues_of_s(system)?;
    let n_nonzero = eigen.n_nonzero();
    let w_in_edge_lengths = Rational::new((n_nonzero as i64).into(), 2.into());
    let w = scale_length(&edge_length, &w_in_edge_lengths);
    let vol = graph.volume();
    let is_weyl = n_nonzero == system.dim();
    let balanced_vertices = graph.balanced_vertices();
    if is_weyl != balanced_vertices.is_empty()
        && graph
            .vertices
            .iter()
            .all(|v| v.coupling == Coupling::Standard)
    {
        return Err(Error::Internal(format!(
            "eigenvalue count gives is_weyl = {is_weyl} but balanced vertices are {balanced_vertices:?}"
        )));
    }
    Ok(EffectiveSizeResult {
        n_nonzero,
        w_in_edge_lengths,
        w,
        vol,
        edge_length,
        is_weyl,
        balanced_vertices,
        eigen,
    })
}

fn scale_length(l: &Length, factor: &Rational) -> Length {
    match l {
        Length::Exact(r) => Length::Exact(r * factor),
        Length::Approx(x) => Length::Approx(x * crate::rational::to_f64(factor)),
    }
}
