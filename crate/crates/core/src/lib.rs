//! Resonances of open quantum graphs: vertex and bond scattering matrices,
//! pseudo-orbit expansion of the resonance condition, ghost-edge reduction,
//! effective size and Weyl classification, and resonance counting.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod expoly;
pub mod graph;
pub mod linalg;
pub mod orbits;
pub mod poly;
pub mod rational;
pub mod resonance;
pub mod scattering;
pub mod svg;

pub use error::{Error, Result};
pub use expoly::ExponentialPolynomial;
pub use graph::{BondDigraph, BondId, Coupling, EdgeId, Length, MetricGraph, VertexId};
pub use rational::Rational;
pub use scattering::ScatteringSystem;
