use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Slack allowed when verifying `|f| <= 1` (or `<= 2`).
pub const RANGE_TOL: f64 = 1e-12;
/// Slack allowed when verifying `|mean f| = 0`.
pub const MEAN_TOL: f64 = 1e-12;

/// Verified range and normalization properties of a [`GroupFunction`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Constraints {
    pub disc_valued: bool,
    pub two_disc_valued: bool,
    pub mean_zero: bool,
}

/// A complex function on the elements `0..n` of a finite group.
///
/// All integrals use the uniform probability weight `1/n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction {
    values: Vec<Complex64>,
    constraints: Constraints,
}

impl GroupFunction {
    pub fn new(values: Vec<Complex64>) -> Self {
        Self {
            values,
            constraints: Constraints::default(),
        }
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn constant(n: usize, c: Complex64) -> Self {
        Self::new(vec![c; n])
    }

    pub fn zero(n: usize) -> Self {
        Self::constant(n, Complex64::new(0.0, 0.0))
    }

    /// Point mass (value 1) at `x`.
    pub fn delta(n: usize, x: usize) -> Self {
        let mut f = Self::zero(n);
        f.values[x] = Complex64::new(1.0, 0.0);
        f
    }

    pub fn indicator(n: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut f = Self::zero(n);
        for x in members {
            f.values[x] = Complex64::new(1.0, 0.0);
        }
        f
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    #[inline]
    pub fn get(&self, x: usize) -> Complex64 {
        self.values[x]
    }

    pub fn constraints(&self) -> Constraints {
        self.constraints
    }

    pub fn mean(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() / self.values.len() as f64
    }

    /// `(1/n) sum |f|^2`, then the square root.
    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() / self.values.len() as f64).sqrt()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// `<f, g> = (1/n) sum f(x) conj(g(x))`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum::<Complex64>()
            / self.values.len() as f64
    }

    pub fn conj(&self) -> Self {
        Self {
            values: self.values.iter().map(|v| v.conj()).collect(),
            constraints: self.constraints,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.values.iter().map(|v| v * c).collect())
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self::new(self.values.iter().map(|&v| f(v)).collect())
    }

    /// `f - mean(f)`. For disc-valued `f` the result lies in `2D`, has mean
    /// zero and `||f - mean f||_2 <= ||f||_2 <= 1`.
    pub fn centered(&self) -> Self {
        let m = self.mean();
        let out = Self::new(self.values.iter().map(|v| v - m).collect());
        let mut constraints = Constraints {
            mean_zero: out.mean().norm() <= MEAN_TOL,
            ..Default::default()
        };
        constraints.two_disc_valued = out.sup_norm() <= 2.0 + RANGE_TOL;
        constraints.disc_valued = out.sup_norm() <= 1.0 + RANGE_TOL;
        Self { constraints, ..out }
    }

    pub fn check_len(&self, n: usize) -> Result<()> {
        if self.values.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: self.values.len(),
            });
        }
        Ok(())
    }

    /// Verifies `|f(x)| <= 1` everywhere and records it.
    pub fn require_disc(mut self) -> Result<Self> {
        self.check_disc()?;
        self.constraints.disc_valued = true;
        self.constraints.two_disc_valued = true;
        Ok(self)
    }

    /// Verifies `|f(x)| <= 2` everywhere and records it.
    pub fn require_two_disc(mut self) -> Result<Self> {
        self.check_radius(2.0, "two_disc_valued")?;
        self.constraints.two_disc_valued = true;
        Ok(self)
    }

    pub fn require_mean_zero(mut self) -> Result<Self> {
        self.check_mean_zero()?;
        self.constraints.mean_zero = true;
        Ok(self)
    }

    pub fn check_disc(&self) -> Result<()> {
        self.check_radius(1.0, "disc_valued")
    }

    pub fn check_radius(&self, radius: f64, label: &str) -> Result<()> {
        if let Some((x, v)) = self
            .values
            .iter()
            .enumerate()
            .find(|(_, v)| v.norm() > radius + RANGE_TOL)
        {
            return Err(Error::Constraint(format!(
                "{label}: |f({x})| = {} exceeds {radius}",
                v.norm()
            )));
        }
        Ok(())
    }

    pub fn check_mean_zero(&self) -> Result<()> {
        let m = self.mean().norm();
        if m > MEAN_TOL {
            return Err(Error::Constraint(format!("mean_zero: |mean f| = {m:e}")));
        }
        Ok(())
    }

    /// Step-one normalization: range in `2D`, `||f||_2 <= 1`, mean zero.
    pub fn check_step_normalized(&self) -> Result<()> {
        self.check_radius(2.0, "two_disc_valued")?;
        self.check_mean_zero()?;
        let norm = self.l2_norm();
        if norm > 1.0 + RANGE_TOL {
            return Err(Error::Constraint(format!("||f||_2 = {norm} exceeds 1")));
        }
        Ok(())
    }
}

/// Serialized as `{"values": [[re, im], ...], "constraints": {...}}`.
impl Serialize for GroupFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.values.iter().map(|v| [v.re, v.im]).collect();
        let mut s = serializer.serialize_struct("GroupFunction", 2)?;
        s.serialize_field("values", &pairs)?;
        s.serialize_field("constraints", &self.constraints)?;
        s.end()
    }
}

impl Add for &GroupFunction {
    type Output = GroupFunction;
    fn add(self, rhs: Self) -> GroupFunction {
        GroupFunction::new(
            self.values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &GroupFunction {
    type Output = GroupFunction;
    fn sub(self, rhs: Self) -> GroupFunction {
        GroupFunction::new(
            self.values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

/// Pointwise product.
impl Mul for &GroupFunction {
    type Output = GroupFunction;
    fn mul(self, rhs: Self) -> GroupFunction {
        GroupFunction::new(
            self.values
                .iter()
                .zip(&rhs.values)
                .map(|(a, b)| a * b)
                .collect(),
        )
    }
}

/// A function on `G x G`, either dense or an elementary tensor `a (x) b`.
#[derive(Debug, Clone, PartialEq)]
pub enum PairFunction {
    /// Row-major values, entry `x * n + y`.
    Dense { n: usize, values: Vec<Complex64> },
    /// `(x, y) -> left(x) * right(y)`.
    Tensor {
        left: GroupFunction,
        right: GroupFunction,
    },
}

impl PairFunction {
    pub fn tensor(left: GroupFunction, right: GroupFunction) -> Self {
        PairFunction::Tensor { left, right }
    }

    /// `f (x) conj(f)`.
    pub fn hermitian_square(f: &GroupFunction) -> Self {
        PairFunction::Tensor {
            left: f.clone(),
            right: f.conj(),
        }
    }

    pub fn dense(n: usize, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::LengthMismatch {
                expected: n * n,
                actual: values.len(),
            });
        }
        Ok(PairFunction::Dense { n, values })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let values = (0..n * n).map(|p| f(p / n, p % n)).collect();
        PairFunction::Dense { n, values }
    }

    pub fn group_order(&self) -> usize {
        match self {
            PairFunction::Dense { n, .. } => *n,
            PairFunction::Tensor { left, .. } => left.len(),
        }
    }

    #[inline]
    pub fn eval(&self, x: usize, y: usize) -> Complex64 {
        match self {
            PairFunction::Dense { n, values } => values[x * n + y],
            PairFunction::Tensor { left, right } => left.get(x) * right.get(y),
        }
    }

    pub fn to_dense(&self) -> Vec<Complex64> {
        let n = self.group_order();
        match self {
            PairFunction::Dense { values, .. } => values.clone(),
            PairFunction::Tensor { .. } => (0..n * n).map(|p| self.eval(p / n, p % n)).collect(),
        }
    }

    /// Norm in `L^2(mu (x) mu)`.
    pub fn l2_norm(&self) -> f64 {
        match self {
            PairFunction::Dense { n, values } => {
                (values.iter().map(|v| v.norm_sqr()).sum::<f64>() / (n * n) as f64).sqrt()
            }
            PairFunction::Tensor { left, right } => left.l2_norm() * right.l2_norm(),
        }
    }

    /// `(1/n^2) sum F`.
    pub fn integral(&self) -> Complex64 {
        match self {
            PairFunction::Dense { n, values } => values.iter().sum::<Complex64>() / (n * n) as f64,
            PairFunction::Tensor { left, right } => left.mean() * right.mean(),
        }
    }

    /// Pointwise product; tensors stay factored.
    pub fn product(&self, other: &Self) -> Self {
        match (self, other) {
            (
                PairFunction::Tensor { left: a, right: b },
                PairFunction::Tensor { left: c, right: d },
            ) => PairFunction::Tensor {
                left: a * c,
                right: b * d,
            },
            _ => {
                let n = self.group_order();
                PairFunction::from_fn(n, |x, y| self.eval(x, y) * other.eval(x, y))
            }
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            PairFunction::Dense { n, values } => PairFunction::Dense {
                n: *n,
                values: values.iter().map(|v| v.conj()).collect(),
            },
            PairFunction::Tensor { left, right } => PairFunction::Tensor {
                left: left.conj(),
                right: right.conj(),
            },
        }
    }

    /// Largest pointwise difference from `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.group_order();
        (0..n * n)
            .map(|p| (self.eval(p / n, p % n) - other.eval(p / n, p % n)).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn norms_use_probability_weight() {
        let f = GroupFunction::from_real(&[1.0, -1.0, 1.0, -1.0]);
        assert!((f.l2_norm() - 1.0).abs() < 1e-15);
        assert!(f.mean().norm() < 1e-15);
        let d = GroupFunction::delta(4, 2);
        assert!((d.l2_norm() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn constraint_checks() {
        let f = GroupFunction::new(vec![c(0.6, 0.8), c(-1.0, 0.0)]);
        let f = f.require_disc().unwrap();
        assert!(f.constraints().disc_valued);
        let g = GroupFunction::new(vec![c(1.5, 0.0), c(0.0, 0.0)]);
        assert!(g.clone().require_disc().is_err());
        assert!(g.clone().require_two_disc().is_ok());
        assert!(g.require_mean_zero().is_err());
    }

    #[test]
    fn centered_disc_function_meets_step_normalization() {
        let f = GroupFunction::new(vec![c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0)]);
        let g = f.centered();
        assert!(g.constraints().mean_zero);
        assert!(g.constraints().two_disc_valued);
        g.check_step_normalized().unwrap();
    }

    #[test]
    fn factored_and_dense_agree() {
        let a = GroupFunction::new(vec![c(1.0, 2.0), c(0.5, -1.0), c(0.0, 0.3)]);
        let t = PairFunction::hermitian_square(&a);
        let d = PairFunction::dense(3, t.to_dense()).unwrap();
        assert!(t.max_abs_diff(&d) < 1e-15);
        assert!((t.l2_norm() - d.l2_norm()).abs() < 1e-14);
        assert!((t.integral() - d.integral()).norm() < 1e-14);
        let p = t.product(&t.conj());
        let q = d.product(&d.conj());
        assert!(p.max_abs_diff(&q) < 1e-14);
    }
}
