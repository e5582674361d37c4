//! Pseudo-orbit expansion of the resonance condition.
//!
//! Periodic orbits are simple directed cycles of the bond adjacency digraph
//! (an arc `c → r` for every nonzero `S[r, c]`). An irreducible pseudo orbit
//! is a set of cycles that share no bond; summing `(−1)^m · A · e^{ikΛ}` over
//! all of them, the empty one included, gives `det(I − e^{ikL}S)`.

mod cycles;
mod ghost;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::expoly::{EdgeExponentialSum, ExponentialPolynomial};
use crate::graph::{BondDigraph, BondId, Length};
use crate::scattering::ScatteringSystem;

pub use ghost::{default_deletions, ghost_reduce, Ghost, GhostReducedDigraph};

use crate::rational::Rational;

/// Default cap on generated pseudo orbits.
pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

const MAX_NODES: usize = 128;

#[derive(Clone, Debug)]
pub struct OrbitNode {
    pub label: String,
    /// Zero for ghost bonds.
    pub length: Length,
    /// Parent edge position, `None` for ghosts.
    pub edge: Option<usize>,
    pub ghost: bool,
}

/// Weighted digraph whose nodes are bonds (and ghost bonds) and whose arcs
/// carry hop amplitudes.
#[derive(Clone, Debug)]
pub struct OrbitDigraph {
    nodes: Vec<OrbitNode>,
    /// `arcs[c]` lists `(r, amplitude)` for hops out of node `c`, sorted by `r`.
    arcs: Vec<Vec<(usize, Rational)>>,
}

impl OrbitDigraph {
    pub fn from_system(system: &ScatteringSystem, bonds: &BondDigraph) -> Self {
        let dim = system.dim();
        let s = system.s();
        let nodes = (0..dim)
            .map(|b| OrbitNode {
                label: bonds.label(BondId(b)),
                length: bonds.length(BondId(b)).clone(),
                edge: Some(bonds.bond(BondId(b)).edge_index),
                ghost: false,
            })
            .collect();
        let arcs = (0..dim)
            .map(|c| {
                (0..dim)
                    .filter(|&r| !s[(r, c)].is_zero())
                    .map(|r| (r, s[(r, c)].clone()))
                    .collect()
            })
            .collect();
        Self { nodes, arcs }
    }

    pub(crate) fn from_parts(nodes: Vec<OrbitNode>, mut arcs: Vec<Vec<(usize, Rational)>>) -> Self {
        for out in &mut arcs {
            out.retain(|(_, a)| !a.is_zero());
            out.sort_by_key(|(r, _)| *r);
        }
        Self { nodes, arcs }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> &OrbitNode {
        &self.nodes[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.nodes[i].label
    }

    pub fn successors(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs[c].iter().map(|(r, _)| *r)
    }

    /// Hop amplitude from `from` to `to`, if the arc exists.
    pub fn amplitude(&self, from: usize, to: usize) -> Option<&Rational> {
        self.arcs[from]
            .binary_search_by_key(&to, |(r, _)| *r)
            .ok()
            .map(|i| &self.arcs[from][i].1)
    }

    /// `Π amplitude(b_i → b_{i+1})` around the closed sequence; zero if some
    /// hop is missing.
    pub fn cycle_amplitude(&self, bonds: &[usize]) -> Rational {
        let mut amp = Rational::one();
        for (i, &from) in bonds.iter().enumerate() {
            let to = bonds[(i + 1) % bonds.len()];
            match self.amplitude(from, to) {
                Some(a) => amp *= a,
                None => return Rational::zero(),
            }
        }
        amp
    }

    pub fn sequence_length(&self, bonds: &[usize]) -> Length {
        bonds
            .iter()
            .fold(Length::zero(), |acc, &b| &acc + &self.nodes[b].length)
    }
}

#[derive(Clone, Debug)]
pub struct DirectedCycle {
    /// Node sequence starting at its smallest node id.
    pub bonds: Vec<usize>,
    pub amplitude: Rational,
    pub length: Length,
    mask: u128,
}

impl DirectedCycle {
    fn new(graph: &OrbitDigraph, bonds: Vec<usize>) -> Self {
        let amplitude = graph.cycle_amplitude(&bonds);
        let length = graph.sequence_length(&bonds);
        let mask = bonds.iter().fold(0u128, |m, &b| m | (1u128 << b));
        Self {
            bonds,
            amplitude,
            length,
            mask,
        }
    }

    pub fn labels(&self, graph: &OrbitDigraph) -> Vec<String> {
        self.bonds
            .iter()
            .map(|&b| graph.label(b).to_string())
            .collect()
    }

    /// Number of non-ghost bonds.
    pub fn n_bonds(&self, graph: &OrbitDigraph) -> usize {
        self.bonds.iter().filter(|&&b| !graph.node(b).ghost).count()
    }
}

/// All simple cycles, each once, sorted by smallest bond then lexicographically.
pub fn enumerate_cycles(graph: &OrbitDigraph) -> Result<Vec<DirectedCycle>> {
    enumerate_cycles_capped(graph, DEFAULT_ORBIT_CAP)
}

pub fn enumerate_cycles_capped(graph: &OrbitDigraph, cap: usize) -> Result<Vec<DirectedCycle>> {
    if graph.len() > MAX_NODES {
        return Err(Error::TooManyBonds(graph.len()));
    }
    let mut raw = cycles::simple_cycles(graph, cap).ok_or(Error::OrbitCapExceeded { cap })?;
    raw.sort();
    Ok(raw
        .into_iter()
        .map(|c| DirectedCycle::new(graph, c))
        .collect())
}

#[derive(Clone, Debug)]
pub struct IrreduciblePseudoOrbit {
    /// Indices into the cycle list the orbit was built from, increasing.
    pub cycles: Vec<usize>,
    pub amplitude: Rational,
    pub length: Length,
    /// Non-ghost bonds used.
    pub n_bonds: usize,
}

impl IrreduciblePseudoOrbit {
    /// Number of periodic orbits.
    pub fn m(&self) -> usize {
        self.cycles.len()
    }

    /// `(−1)^m · A`.
    pub fn contribution(&self) -> Rational {
        if self.m().is_multiple_of(2) {
            self.amplitude.clone()
        } else {
            -self.amplitude.clone()
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EnumerationOptions {
    pub cap: usize,
    pub parallel: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_ORBIT_CAP,
            parallel: true,
        }
    }
}

/// Every bond-disjoint subset of `cycles`, the empty one first, in
/// depth-first order over increasing cycle indices.
pub fn enumerate_irreducible_pseudo_orbits(
    graph: &OrbitDigraph,
    cycles: &[DirectedCycle],
    options: EnumerationOptions,
) -> Result<Vec<IrreduciblePseudoOrbit>> {
    let produced = AtomicUsize::new(1);
    let n_bonds: Vec<usize> = cycles.iter().map(|c| c.n_bonds(graph)).collect();
    let search = Search {
        cycles,
        n_bonds: &n_bonds,
        cap: options.cap,
        produced: &produced,
    };
    let subtree = |first: usize| -> Result<Vec<IrreduciblePseudoOrbit>> {
        let mut out = Vec::new();
        let mut stack = vec![first];
        search.visit(
            first + 1,
            cycles[first].mask,
            &mut stack,
            cycles[first].amplitude.clone(),
            cycles[first].length.clone(),
            n_bonds[first],
            &mut out,
        )?;
        Ok(out)
    };
    let parts: Vec<Result<Vec<_>>> = if options.parallel {
        (0..cycles.len()).into_par_iter().map(subtree).collect()
    } else {
        (0..cycles.len()).map(subtree).collect()
    };
    let mut orbits = vec![IrreduciblePseudoOrbit {
        cycles: Vec::new(),
        amplitude: Rational::one(),
        length: Length::zero(),
        n_bonds: 0,
    }];
    for part in parts {
        orbits.extend(part?);
    }
    if orbits.len() > options.cap {
        return Err(Error::OrbitCapExceeded { cap: options.cap });
    }
    Ok(orbits)
}

struct Search<'a> {
    cycles: &'a [DirectedCycle],
    n_bonds: &'a [usize],
    cap: usize,
    produced: &'a AtomicUsize,
}

impl Search<'_> {
    #[allow(clippy::too_many_arguments)]
    fn visit(
        &self,
        next: usize,
        used: u128,
        stack: &mut Vec<usize>,
        amplitude: Rational,
        length: Length,
        n_bonds: usize,
        out: &mut Vec<IrreduciblePseudoOrbit>,
    ) -> Result<()> {
        if self.produced.fetch_add(1, Ordering::Relaxed) >= self.cap {
            return Err(Error::OrbitCapExceeded { cap: self.cap });
        }
        out.push(IrreduciblePseudoOrbit {
            cycles: stack.clone(),
            amplitude: amplitude.clone(),
            length: length.clone(),
            n_bonds,
        });
        for i in next..self.cycles.len() {
            let c = &self.cycles[i];
            if c.mask & used != 0 {
                continue;
            }
            stack.push(i);
            self.visit(
                i + 1,
                used | c.mask,
                stack,
                &amplitude * &c.amplitude,
                &length + &c.length,
                n_bonds + self.n_bonds[i],
                out,
            )?;
            stack.pop();
        }
        Ok(())
    }
}

/// Sums `(−1)^m A e^{ikΛ}` over the orbits; needs exact lengths.
pub fn resonance_condition(orbits: &[IrreduciblePseudoOrbit]) -> Result<ExponentialPolynomial> {
    let terms = orbits
        .iter()
        .map(|o| {
            let length = o.length.exact().ok_or(Error::InexactLengths)?.clone();
            Ok((length, o.contribution()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExponentialPolynomial::from_terms(terms))
}

/// Orbit counts keyed by the number of non-ghost bonds used.
pub fn counts_by_bond_number(orbits: &[IrreduciblePseudoOrbit]) -> BTreeMap<usize, usize> {
    let mut counts = BTreeMap::new();
    for o in orbits {
        *counts.entry(o.n_bonds).or_insert(0) += 1;
    }
    counts
}

/// Cycles, pseudo orbits and the resulting condition for one digraph.
#[derive(Clone, Debug)]
pub struct OrbitExpansion {
    pub digraph: OrbitDigraph,
    pub cycles: Vec<DirectedCycle>,
    pub orbits: Vec<IrreduciblePseudoOrbit>,
}

impl OrbitExpansion {
    pub fn new(digraph: OrbitDigraph, options: EnumerationOptions) -> Result<Self> {
        let cycles = enumerate_cycles_capped(&digraph, options.cap)?;
        let orbits = enumerate_irreducible_pseudo_orbits(&digraph, &cycles, options)?;
        Ok(Self {
            digraph,
            cycles,
            orbits,
        })
    }

    pub fn for_system(
        system: &ScatteringSystem,
        bonds: &BondDigraph,
        options: EnumerationOptions,
    ) -> Result<Self> {
        Self::new(OrbitDigraph::from_system(system, bonds), options)
    }

    pub fn condition(&self) -> Result<ExponentialPolynomial> {
        resonance_condition(&self.orbits)
    }

    pub fn counts_by_bond_number(&self) -> BTreeMap<usize, usize> {
        counts_by_bond_number(&self.orbits)
    }

    /// The condition with each term keyed by edge traversal counts; defined
    /// for arbitrary real lengths.
    pub fn edge_resolved_condition(&self) -> EdgeExponentialSum {
        let n_edges = (0..self.digraph.len())
            .filter_map(|i| self.digraph.node(i).edge)
            .max()
            .map_or(0, |e| e + 1);
        let terms = self.orbits.iter().map(|o| {
            let mut usage = vec![0u8; n_edges];
            for &c in &o.cycles {
                for &b in &self.cycles[c].bonds {
                    if let Some(e) = self.digraph.node(b).edge {
                        usage[e] += 1;
                    }
                }
            }
            (usage, o.contribution())
        });
        EdgeExponentialSum::from_terms(terms)
    }

    /// The cycles of `orbit` as label sequences.
    pub fn orbit_labels(&self, orbit: &IrreduciblePseudoOrbit) -> Vec<Vec<String>> {
        orbit
            .cycles
            .iter()
            .map(|&i| self.cycles[i].labels(&self.digraph))
            .collect()
    }
}
