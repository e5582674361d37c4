//! Argument-principle zero counting on discs `|k| ≤ R`.
//!
//! The condition is evaluated from its edge-resolved orbit expansion, so
//! lengths may be arbitrary reals. Each sample is factored as
//! `e^{ikΛ₀}·h(k)` with the dominant exponent pulled out, which keeps `h`
//! finite deep in the lower half plane; the phase of the prefactor is
//! tracked analytically.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{fitted_slope, validate_radii, CountingEstimate};
use crate::error::{Error, Result};
use crate::expoly::RealExponentialSum;
use crate::graph::MetricGraph;
use crate::orbits::{EnumerationOptions, OrbitExpansion};
use crate::scattering::ScatteringSystem;

const MAX_PHASE_STEP: f64 = PI / 4.0;
const MAX_DEPTH: u32 = 40;
const WINDING_TOL: f64 = 1e-6;
const PERTURBATIONS: u32 = 8;

#[derive(Clone, Debug, Serialize)]
pub struct ContourCount {
    /// Radius actually used, nudged off any zero lying on the circle.
    pub radius: f64,
    pub zeros: usize,
    pub samples: usize,
}

#[derive(Clone, Debug)]
pub struct DiscCounter {
    sum: RealExponentialSum,
}

impl DiscCounter {
    pub fn new(sum: RealExponentialSum) -> Self {
        Self { sum }
    }

    pub fn from_graph(graph: &MetricGraph, options: EnumerationOptions) -> Result<Self> {
        let (bonds, system) = ScatteringSystem::from_graph(graph)?;
        let expansion = OrbitExpansion::for_system(&system, &bonds, options)?;
        let lengths: Vec<f64> = graph.edges.iter().map(|e| e.length.to_f64()).collect();
        Ok(Self::new(
            expansion.edge_resolved_condition().with_lengths(&lengths),
        ))
    }

    pub fn condition(&self) -> &RealExponentialSum {
        &self.sum
    }

    /// Half the largest exponent with a nonzero coefficient.
    pub fn effective_size(&self) -> f64 {
        self.sum.max_length() / 2.0
    }

    pub fn count(&self, r: f64) -> Result<ContourCount> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "radius must be positive, got {r}"
            )));
        }
        let mut radius = r;
        for attempt in 0..PERTURBATIONS {
            if let Some((zeros, samples)) = self.winding(radius)? {
                return Ok(ContourCount {
                    radius,
                    zeros,
                    samples,
                });
            }
            radius = r * (1.0 + 1e-6 * f64::from(attempt + 1));
        }
        Err(Error::Internal(format!(
            "contour at radius {r} kept passing through zeros"
        )))
    }

    fn scale(&self) -> f64 {
        self.sum.terms().iter().map(|t| t.1.abs()).sum()
    }

    fn eval(&self, k: Complex64, anchor: f64) -> Complex64 {
        let i = Complex64::i();
        self.sum
            .terms()
            .iter()
            .map(|&(l, c)| (i * k * (l - anchor)).exp() * c)
            .sum()
    }

    /// Winding number of the condition around `|k| = r`, or `None` if the
    /// circle passes (numerically) through a zero.
    fn winding(&self, r: f64) -> Result<Option<(usize, usize)>> {
        let spread = self.sum.max_length() - self.sum.min_length();
        let per_half = ((PI * r * spread / 0.5).ceil() as usize).max(32);
        let floor = 1e-12 * self.scale();
        let mut total = 0.0;
        let mut samples = 0;
        for (t_start, anchor) in [(0.0, self.sum.min_length()), (PI, self.sum.max_length())] {
            let point = |t: f64| Complex64::from_polar(r, t);
            let mut t0 = t_start;
            let mut h0 = self.eval(point(t0), anchor);
            for j in 1..=per_half {
                let t1 = t_start + PI * j as f64 / per_half as f64;
                let h1 = self.eval(point(t1), anchor);
                let seg = Segment {
                    counter: self,
                    r,
                    anchor,
                    floor,
                };
                match seg.phase(t0, h0, t1, h1, 0, &mut samples) {
                    Some(d) => total += d,
                    None => return Ok(None),
                }
                t0 = t1;
                h0 = h1;
            }
        }
        let winding = total / (2.0 * PI);
        let rounded = winding.round();
        if (winding - rounded).abs() > WINDING_TOL || rounded < 0.0 {
            return Err(Error::Internal(format!(
                "winding number {winding} at radius {r} is not a nonnegative integer"
            )));
        }
        Ok(Some((rounded as usize, samples)))
    }
}

struct Segment<'a> {
    counter: &'a DiscCounter,
    r: f64,
    anchor: f64,
    floor: f64,
}

impl Segment<'_> {
    fn phase(
        &self,
        t0: f64,
        h0: Complex64,
        t1: f64,
        h1: Complex64,
        depth: u32,
        samples: &mut usize,
    ) -> Option<f64> {
        *samples += 1;
        if h0.norm() < self.floor || h1.norm() < self.floor {
            return None;
        }
        let step = wrap(h1.arg() - h0.arg());
        if step.abs() <= MAX_PHASE_STEP {
            let dre = self.r * (t1.cos() - t0.cos());
            return Some(step + self.anchor * dre);
        }
        if depth >= MAX_DEPTH {
            return None;
        }
        let tm = 0.5 * (t0 + t1);
        let hm = self
            .counter
            .eval(Complex64::from_polar(self.r, tm), self.anchor);
        let a = self.phase(t0, h0, tm, hm, depth + 1, samples)?;
        let b = self.phase(tm, hm, t1, h1, depth + 1, samples)?;
        Some(a + b)
    }
}

fn wrap(x: f64) -> f64 {
    let y = (x + PI).rem_euclid(2.0 * PI) - PI;
    if y == -PI {
        PI
    } else {
        y
    }
}

/// Zeros of the resonance condition in `|k| ≤ r`, with multiplicity.
pub fn count_zeros_in_disc(
    graph: &MetricGraph,
    r: f64,
    options: EnumerationOptions,
) -> Result<ContourCount> {
    DiscCounter::from_graph(graph, options)?.count(r)
}

/// `N(R)` by contour counting at `steps` radii up to `r_max`. Works for
/// arbitrary real lengths; W is read off the largest exponent.
pub fn numeric_counting(
    graph: &MetricGraph,
    r_max: f64,
    steps: usize,
    options: EnumerationOptions,
) -> Result<CountingEstimate> {
    let radii = validate_radii(r_max, steps)?;
    let counter = DiscCounter::from_graph(graph, options)?;
    let results: Vec<Result<ContourCount>> = if options.parallel {
        radii.par_iter().map(|&r| counter.count(r)).collect()
    } else {
        radii.iter().map(|&r| counter.count(r)).collect()
    };
    let counts = results
        .into_iter()
        .map(|c| c.map(|c| c.zeros))
        .collect::<Result<Vec<_>>>()?;
    let w = counter.effective_size();
    Ok(CountingEstimate {
        fitted_slope: fitted_slope(&radii, &counts),
        predicted_slope: Some(2.0 * w / PI),
        w: Some(w),
        radii,
        counts,
        numeric_only: true,
    })
}
