//! Finite sums `Σ c_Λ · e^{ikΛ}` with exact rational lengths and coefficients.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::rational::{format_rational, format_sum, integer_multiple, to_f64, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentialPolynomial {
    /// Nonzero coefficients keyed by length.
    terms: BTreeMap<Rational, Rational>,
}

impl ExponentialPolynomial {
    pub fn one() -> Self {
        Self::from_terms([(Rational::zero(), Rational::one())])
    }

    /// Sums coefficients of equal lengths and drops those that cancel.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, Rational)>) -> Self {
        let mut map: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (length, c) in terms {
            *map.entry(length).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { terms: map }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient at `length`, zero when absent.
    pub fn coefficient(&self, length: &Rational) -> Rational {
        self.terms
            .get(length)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn constant(&self) -> Rational {
        self.coefficient(&Rational::zero())
    }

    /// Largest length with a nonzero coefficient.
    pub fn max_length(&self) -> Option<&Rational> {
        self.terms.keys().next_back()
    }

    /// True when only the constant survives.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Zero::is_zero)
    }

    pub fn eval(&self, k: Complex64) -> Complex64 {
        let i = Complex64::i();
        self.terms
            .iter()
            .map(|(length, c)| (i * k * to_f64(length)).exp() * to_f64(c))
            .sum()
    }

    /// Coefficients at `0, unit, 2·unit, …, top·unit`, or `None` if some term
    /// is not on that lattice.
    pub fn dense_coefficients(&self, unit: &Rational, top: usize) -> Option<Vec<Rational>> {
        let mut out = vec![Rational::zero(); top + 1];
        for (length, c) in &self.terms {
            let j = integer_multiple(length, unit)?;
            let j: usize = j.try_into().ok()?;
            if j > top {
                return None;
            }
            out[j] = c.clone();
        }
        Some(out)
    }

    pub fn display(&self) -> String {
        format_sum(self.terms.iter().map(|(l, c)| {
            let symbol = if l.is_zero() {
                None
            } else if l.is_one() {
                Some("e^(ik)".to_string())
            } else {
                Some(format!("e^({}ik)", format_rational(l)))
            };
            (c, symbol)
        }))
    }
}

/// Exponential sum keyed by how many times each edge is traversed, so the
/// lengths may be arbitrary reals. Coefficients stay exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeExponentialSum {
    terms: BTreeMap<Vec<u8>, Rational>,
}

impl EdgeExponentialSum {
    pub fn from_terms(terms: impl IntoIterator<Item = (Vec<u8>, Rational)>) -> Self {
        let mut map: BTreeMap<Vec<u8>, Rational> = BTreeMap::new();
        for (usage, c) in terms {
            *map.entry(usage).or_insert_with(Rational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { terms: map }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn with_lengths(&self, lengths: &[f64]) -> RealExponentialSum {
        let mut terms: Vec<(f64, f64)> = self
            .terms
            .iter()
            .map(|(usage, c)| {
                let l = usage
                    .iter()
                    .zip(lengths)
                    .map(|(&u, &l)| f64::from(u) * l)
                    .sum();
                (l, to_f64(c))
            })
            .collect();
        terms.sort_by(|a, b| a.0.total_cmp(&b.0));
        RealExponentialSum { terms }
    }
}

/// `Σ c · e^{ikΛ}` with floating-point lengths.
#[derive(Clone, Debug)]
pub struct RealExponentialSum {
    /// `(Λ, c)` sorted by `Λ`.
    terms: Vec<(f64, f64)>,
}

impl RealExponentialSum {
    pub fn terms(&self) -> &[(f64, f64)] {
        &self.terms
    }

    pub fn max_length(&self) -> f64 {
        self.terms.last().map_or(0.0, |t| t.0)
    }

    pub fn min_length(&self) -> f64 {
        self.terms.first().map_or(0.0, |t| t.0)
    }

    pub fn eval(&self, k: Complex64) -> Complex64 {
        let i = Complex64::i();
        self.terms.iter().map(|&(l, c)| (i * k * l).exp() * c).sum()
    }

    /// Splits the value as `e^{ikΛ₀} · h`, with `Λ₀` the length whose term
    /// dominates at `k`, so `h` neither overflows nor underflows.
    pub fn eval_factored(&self, k: Complex64) -> (f64, Complex64) {
        let anchor = if k.im < 0.0 {
            self.max_length()
        } else {
            self.min_length()
        };
        let i = Complex64::i();
        let h = self
            .terms
            .iter()
            .map(|&(l, c)| (i * k * (l - anchor)).exp() * c)
            .sum();
        (anchor, h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn cancellation_is_exact() {
        let p = ExponentialPolynomial::from_terms([
            (int(0), int(1)),
            (int(4), ratio(-1, 4)),
            (int(4), ratio(1, 4)),
            (int(2), int(-1)),
        ]);
        assert_eq!(p.len(), 2);
        assert!(p.coefficient(&int(4)).is_zero());
        assert_eq!(
            p.dense_coefficients(&int(1), 4).unwrap(),
            vec![int(1), int(0), int(-1), int(0), int(0)]
        );
        assert_eq!(p.max_length(), Some(&int(2)));
    }

    #[test]
    fn evaluation_at_root() {
        let p = ExponentialPolynomial::from_terms([(int(0), int(1)), (int(2), int(-1))]);
        let v = p.eval(Complex64::new(std::f64::consts::PI, 0.0));
        assert!(v.norm() < 1e-12);
    }

    #[test]
    fn dense_rejects_off_lattice() {
        let p = ExponentialPolynomial::from_terms([(int(0), int(1)), (ratio(1, 2), int(1))]);
        assert!(p.dense_coefficients(&int(1), 3).is_none());
        assert!(p.dense_coefficients(&ratio(1, 2), 3).is_some());
    }
}
