//! Resonance positions and counting.
//!
//! With commensurable lengths the condition is a polynomial in
//! `z = e^{ikℓ₀}`; each nonzero root `z` yields the lattice
//! `k = (arg z + 2πn − i ln|z|)/ℓ₀`, `n ∈ ℤ`.

mod contour;

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expoly::ExponentialPolynomial;
use crate::poly::{roots_with_multiplicity, RatPoly};
use crate::rational::{format_rational, integer_multiple, rational_gcd, to_f64, Rational};
use crate::scattering::ScatteringSystem;

pub use contour::{count_zeros_in_disc, numeric_counting, ContourCount, DiscCounter};

#[derive(Clone, Debug)]
pub struct PolynomialReduction {
    pub base_length: Rational,
    pub poly: RatPoly,
}

impl PolynomialReduction {
    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    /// `ℓ₀·d/2`.
    pub fn effective_size(&self) -> Rational {
        &self.base_length * Rational::from_integer((self.degree() as i64).into())
            / Rational::from_integer(2.into())
    }
}

/// Substitutes `z = e^{ikℓ₀}` with `ℓ₀` the gcd of the term lengths.
pub fn reduce_to_polynomial(cond: &ExponentialPolynomial) -> Result<PolynomialReduction> {
    reduce_with_base(cond, None)
}

/// As [`reduce_to_polynomial`] with a caller-chosen base length; every term
/// length must be an integer multiple of it.
pub fn reduce_with_base(
    cond: &ExponentialPolynomial,
    base: Option<&Rational>,
) -> Result<PolynomialReduction> {
    let constant = cond.constant();
    if constant.is_zero() {
        return Err(Error::InvalidArgument(
            "condition has no constant term".into(),
        ));
    }
    let base_length = match base {
        Some(b) if b > &Rational::zero() => b.clone(),
        Some(b) => {
            return Err(Error::InvalidArgument(format!(
                "base length must be positive, got {}",
                format_rational(b)
            )))
        }
        None => cond
            .terms()
            .map(|(l, _)| l.clone())
            .filter(|l| !l.is_zero())
            .reduce(|a, b| rational_gcd(&a, &b))
            .unwrap_or_else(Rational::one),
    };
    let mut coeffs = Vec::new();
    for (length, c) in cond.terms() {
        let j = integer_multiple(length, &base_length)
            .and_then(|j| usize::try_from(j).ok())
            .ok_or_else(|| {
                Error::Incommensurable(format_rational(length), format_rational(&base_length))
            })?;
        if coeffs.len() <= j {
            coeffs.resize(j + 1, Rational::zero());
        }
        coeffs[j] = c / &constant;
    }
    Ok(PolynomialReduction {
        base_length,
        poly: RatPoly::new(coeffs),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// `|z| = 1`: real `k`, an embedded eigenvalue family.
    Eigenvalue,
    Resonance,
}

impl FamilyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyKind::Eigenvalue => "eigenvalue",
            FamilyKind::Resonance => "resonance",
        }
    }
}

const UNIT_CIRCLE_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct ResonanceFamily {
    pub z_root: Complex64,
    pub exact_root: Option<Rational>,
    pub multiplicity: usize,
    pub base_length: f64,
    pub kind: FamilyKind,
}

impl ResonanceFamily {
    /// `ln|z|`, snapped to 0 on the unit circle.
    fn log_modulus(&self) -> f64 {
        match self.kind {
            FamilyKind::Eigenvalue => 0.0,
            FamilyKind::Resonance => self.z_root.norm().ln(),
        }
    }

    pub fn k(&self, n: i64) -> Complex64 {
        let theta = self.z_root.arg();
        Complex64::new(
            (theta + 2.0 * PI * n as f64) / self.base_length,
            -self.log_modulus() / self.base_length,
        )
    }

    /// Lattice indices `n` with `|k_n| ≤ r`, increasing.
    pub fn indices_in_disc(&self, r: f64) -> std::ops::RangeInclusive<i64> {
        let lm = self.log_modulus();
        let reach_sq = (r * self.base_length).powi(2) - lm * lm;
        if reach_sq < 0.0 {
            #[allow(clippy::reversed_empty_ranges)]
            return 1..=0;
        }
        let reach = reach_sq.sqrt();
        let theta = self.z_root.arg();
        // |θ + 2πn| ≤ reach
        let lo = ((-reach - theta) / (2.0 * PI)).ceil() as i64;
        let hi = ((reach - theta) / (2.0 * PI)).floor() as i64;
        lo..=hi
    }

    /// Resonances of this family in `|k| ≤ r`, with multiplicity.
    pub fn count_in_disc(&self, r: f64) -> usize {
        let range = self.indices_in_disc(r);
        let n = if range.is_empty() {
            0
        } else {
            (range.end() - range.start() + 1) as usize
        };
        n * self.multiplicity
    }
}

pub fn find_roots(red: &PolynomialReduction) -> Result<Vec<ResonanceFamily>> {
    if red.degree() == 0 {
        return Err(Error::TrivialCondition);
    }
    let base_length = to_f64(&red.base_length);
    let families = roots_with_multiplicity(&red.poly)
        .into_iter()
        .filter(|r| r.exact.as_ref().is_none_or(|e| !e.is_zero()) && r.value.norm() > 0.0)
        .map(|r| {
            let on_circle = match &r.exact {
                Some(e) => e.abs().is_one(),
                None => (r.value.norm() - 1.0).abs() < UNIT_CIRCLE_TOL,
            };
            ResonanceFamily {
                z_root: r.value,
                exact_root: r.exact,
                multiplicity: r.multiplicity,
                base_length,
                kind: if on_circle {
                    FamilyKind::Eigenvalue
                } else {
                    FamilyKind::Resonance
                },
            }
        })
        .collect();
    Ok(families)
}

/// `det(I − e^{ikL}S)`, whose constant term in the orbit expansion is +1.
///
/// Plain floating-point elimination. Deep in the lower half plane the rows
/// grow like `e^{|Im k|·ℓ_b}` while the determinant can be far smaller, and
/// the result keeps only about `16 − log₁₀(Π row size / |det|)` digits; the
/// orbit expansion has no such loss.
pub fn evaluate_condition(system: &ScatteringSystem, k: Complex64) -> Complex64 {
    let dim = system.dim();
    let s = system.s();
    let i = Complex64::i();
    let phases: Vec<Complex64> = system
        .lengths()
        .iter()
        .map(|l| (i * k * l.to_f64()).exp())
        .collect();
    let m = DMatrix::from_fn(dim, dim, |r, c| {
        let delta = if r == c {
            Complex64::one()
        } else {
            Complex64::zero()
        };
        delta - phases[r] * to_f64(&s[(r, c)])
    });
    m.determinant()
}

#[derive(Clone, Debug, Serialize)]
pub struct CountingEstimate {
    pub radii: Vec<f64>,
    pub counts: Vec<usize>,
    pub fitted_slope: f64,
    /// `2W/π`, when W is known.
    pub predicted_slope: Option<f64>,
    #[serde(rename = "W")]
    pub w: Option<f64>,
    pub numeric_only: bool,
}

pub(crate) fn validate_radii(r_max: f64, steps: usize) -> Result<Vec<f64>> {
    if !(r_max > 0.0 && r_max.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "rmax must be positive, got {r_max}"
        )));
    }
    if steps < 2 {
        return Err(Error::InvalidArgument(format!(
            "steps must be at least 2, got {steps}"
        )));
    }
    Ok((1..=steps)
        .map(|i| r_max * i as f64 / steps as f64)
        .collect())
}

/// Least-squares slope over the largest half of the radii.
pub(crate) fn fitted_slope(radii: &[f64], counts: &[usize]) -> f64 {
    let start = radii.len() / 2;
    let xs = &radii[start..];
    let ys: Vec<f64> = counts[start..].iter().map(|&c| c as f64).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Exact lattice counts `N(R)` at `steps` equally spaced radii up to
/// `r_max`; `W = ℓ₀·d/2` with `d` the total multiplicity.
pub fn count_resonances(
    families: &[ResonanceFamily],
    r_max: f64,
    steps: usize,
) -> Result<CountingEstimate> {
    let radii = validate_radii(r_max, steps)?;
    let counts: Vec<usize> = radii
        .iter()
        .map(|&r| families.iter().map(|f| f.count_in_disc(r)).sum())
        .collect();
    let degree: usize = families.iter().map(|f| f.multiplicity).sum();
    let w = families
        .first()
        .map_or(0.0, |f| f.base_length * degree as f64 / 2.0);
    Ok(CountingEstimate {
        fitted_slope: fitted_slope(&radii, &counts),
        predicted_slope: Some(2.0 * w / PI),
        w: Some(w),
        radii,
        counts,
        numeric_only: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::orbits::{EnumerationOptions, OrbitExpansion};
    use crate::rational::{int, ratio};

    fn condition(g: &crate::graph::MetricGraph) -> (ScatteringSystem, ExponentialPolynomial) {
        let (bonds, sys) = ScatteringSystem::from_graph(g).unwrap();
        let e = OrbitExpansion::for_system(&sys, &bonds, EnumerationOptions::default()).unwrap();
        (sys, e.condition().unwrap())
    }

    #[test]
    fn triangle_polynomial_and_roots() {
        let (sys, cond) = condition(&catalog::triangle());
        let red = reduce_to_polynomial(&cond).unwrap();
        assert_eq!(red.base_length, int(1));
        assert_eq!(
            red.poly.coeffs(),
            &[int(1), int(0), ratio(-3, 4), ratio(-1, 4)]
        );
        let fams = find_roots(&red).unwrap();
        let roots: Vec<_> = fams
            .iter()
            .map(|f| (f.exact_root.clone().unwrap(), f.multiplicity))
            .collect();
        assert_eq!(roots, vec![(int(1), 1), (int(-2), 2)]);
        assert_eq!(fams[0].kind, FamilyKind::Eigenvalue);
        assert_eq!(fams[1].kind, FamilyKind::Resonance);
        let k = fams[1].k(0);
        assert!((k - Complex64::new(PI, -(2f64).ln())).norm() < 1e-12);
        assert!(evaluate_condition(&sys, k).norm() < 1e-10);
    }

    #[test]
    fn base_length_override() {
        let (_, cond) = condition(&catalog::two_abscissas());
        assert_eq!(
            reduce_to_polynomial(&cond).unwrap().poly.coeffs(),
            &[int(1), int(-1)]
        );
        let red = reduce_with_base(&cond, Some(&int(1))).unwrap();
        assert_eq!(red.poly.coeffs(), &[int(1), int(0), int(-1)]);
        assert!(matches!(
            reduce_with_base(&cond, Some(&ratio(3, 2))),
            Err(Error::Incommensurable(..))
        ));
    }

    #[test]
    fn trivial_condition() {
        let red = reduce_to_polynomial(&ExponentialPolynomial::one()).unwrap();
        assert!(matches!(find_roots(&red), Err(Error::TrivialCondition)));
    }

    #[test]
    fn lattice_count_closed_form() {
        let (_, cond) = condition(&catalog::two_abscissas());
        let red = reduce_with_base(&cond, Some(&int(1))).unwrap();
        let fams = find_roots(&red).unwrap();
        for r in [0.5, 3.2, 10.0, 100.0] {
            let n: usize = fams.iter().map(|f| f.count_in_disc(r)).sum();
            assert_eq!(n, 2 * (r / PI).floor() as usize + 1);
        }
        let est = count_resonances(&fams, 400.0, 50).unwrap();
        assert!((est.fitted_slope - 2.0 / PI).abs() < 0.05);
        assert!(count_resonances(&fams, 0.0, 10).is_err());
        assert!(count_resonances(&[], 10.0, 10)
            .unwrap()
            .counts
            .iter()
            .all(|&c| c == 0));
    }

    #[test]
    fn determinant_at_zero_is_rational() {
        let (sys, cond) = condition(&catalog::triangle());
        let at_zero = evaluate_condition(&sys, Complex64::zero());
        let exact = crate::linalg::RatMatrix::identity(6);
        let mut m = exact.clone();
        for r in 0..6 {
            for c in 0..6 {
                m[(r, c)] = &exact[(r, c)] - &sys.s()[(r, c)];
            }
        }
        assert!((at_zero.re - to_f64(&m.determinant())).abs() < 1e-12);
        assert!((at_zero - cond.eval(Complex64::zero())).norm() < 1e-12);
    }
}
