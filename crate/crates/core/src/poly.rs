//! Univariate polynomials with rational coefficients and their roots.
//!
//! Root multiplicities are taken from the exact square-free decomposition;
//! numerics only locate the (simple) roots of each square-free factor.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::rational::{format_sum, rationalize, to_f64, Rational};

/// Coefficients in ascending powers: `coeffs[j]` multiplies `z^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![Rational::one()])
    }

    /// Builds `z - root`.
    pub fn linear(root: Rational) -> Self {
        Self::new(vec![-root, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c * Rational::from_integer(j.into()))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &lead).collect())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Polynomial long division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let lead = divisor.leading();
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); self.coeffs.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] / &lead;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's algorithm: returns `(factor, multiplicity)` pairs with monic,
    /// square-free, pairwise coprime factors of positive degree, so that
    /// `self = leading · Π factor^multiplicity`.
    pub fn square_free_decomposition(&self) -> Vec<(RatPoly, usize)> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut multiplicity = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.clone(), multiplicity));
            }
            b = b.div_rem(&a).0;
            if b.degree() == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            multiplicity += 1;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|j| self.coeff(j) - other.coeff(j)).collect())
    }

    /// All roots of a square-free polynomial, located by companion-matrix
    /// eigenvalues and polished with Newton steps on `self`.
    pub fn simple_roots(&self) -> Vec<Complex64> {
        let d = self.degree();
        if d == 0 {
            return Vec::new();
        }
        let monic = self.monic();
        let c: Vec<f64> = monic.coeffs.iter().map(to_f64).collect();
        let mut roots = if d == 1 {
            vec![Complex64::new(-c[0], 0.0)]
        } else {
            companion_eigenvalues(&c).unwrap_or_else(|| durand_kerner(&c))
        };
        let dp = monic.derivative();
        for z in roots.iter_mut() {
            *z = newton_polish(&monic, &dp, *z);
        }
        roots
    }

    pub fn display(&self, var: &str) -> String {
        format_sum(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| {
                    let symbol = match j {
                        0 => None,
                        1 => Some(var.to_string()),
                        _ => Some(format!("{var}^{j}")),
                    };
                    (c, symbol)
                }),
        )
    }
}

fn companion_eigenvalues(monic: &[f64]) -> Option<Vec<Complex64>> {
    let d = monic.len() - 1;
    let mut m = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        m[(i, d - 1)] = -monic[i];
    }
    let schur = nalgebra::linalg::Schur::try_new(m, 1e-15, 10_000)?;
    let eig = schur.complex_eigenvalues();
    Some(eig.iter().copied().collect())
}

fn durand_kerner(monic: &[f64]) -> Vec<Complex64> {
    let d = monic.len() - 1;
    let eval = |z: Complex64| {
        monic
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &c| acc * z + c)
    };
    let bound = 1.0 + monic[..d].iter().map(|c| c.abs()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..d).map(|i| seed.powu(i as u32) * bound).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..d {
            let mut denom = Complex64::one();
            for j in 0..d {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 {
            break;
        }
    }
    roots
}

fn newton_polish(p: &RatPoly, dp: &RatPoly, mut z: Complex64) -> Complex64 {
    let scale: f64 = p
        .coeffs
        .iter()
        .map(|c| to_f64(c).abs())
        .sum::<f64>()
        .max(1.0);
    for _ in 0..50 {
        let v = p.eval_complex(z);
        if v.norm() <= 1e-13 * scale * z.norm().max(1.0).powi(p.degree() as i32) {
            break;
        }
        let dv = dp.eval_complex(z);
        if dv.norm() == 0.0 {
            break;
        }
        let step = v / dv;
        z -= step;
        if step.norm() <= 1e-16 * z.norm().max(1.0) {
            break;
        }
    }
    z
}

/// A root of a polynomial together with its exact multiplicity.
#[derive(Clone, Debug)]
pub struct PolyRoot {
    pub value: Complex64,
    pub multiplicity: usize,
    /// Set when the root is rational and confirmed by exact evaluation.
    pub exact: Option<Rational>,
}

/// All roots with multiplicity, ordered by argument then modulus.
pub fn roots_with_multiplicity(p: &RatPoly) -> Vec<PolyRoot> {
    let mut out = Vec::new();
    for (factor, multiplicity) in p.square_free_decomposition() {
        for value in factor.simple_roots() {
            let exact = (value.im.abs() < 1e-9 * value.norm().max(1.0))
                .then(|| rationalize(value.re, 1_000_000))
                .flatten()
                .filter(|r| factor.eval(r).is_zero());
            let value = match &exact {
                Some(r) => Complex64::new(to_f64(r), 0.0),
                None => value,
            };
            out.push(PolyRoot {
                value,
                multiplicity,
                exact,
            });
        }
    }
    out.sort_by(|a, b| {
        let key = |r: &PolyRoot| (r.value.arg(), r.value.norm());
        key(a)
            .partial_cmp(&key(b))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    out
}
