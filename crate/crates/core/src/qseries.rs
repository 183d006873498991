//! Truncated formal power series in `q` with exact rational coefficients.
//!
//! A series carries its truncation degree `N` and stores coefficients of
//! `q⁰..=q^N`. Binary operations require equal truncations.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    pub fn zero(truncation: usize) -> Self {
        QSeries {
            coeffs: vec![Rational::zero(); truncation + 1],
        }
    }

    pub fn one(truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        s.coeffs[0] = Rational::one();
        s
    }

    /// Builds a series from leading coefficients; missing ones are zero and
    /// extra ones beyond the truncation are dropped.
    pub fn new(coeffs: impl IntoIterator<Item = Rational>, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    pub fn from_ints(coeffs: &[i64], truncation: usize) -> Self {
        Self::new(
            coeffs.iter().map(|&c| Rational::from_integer(c.into())),
            truncation,
        )
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn same_truncation(&self, other: &Self) -> Result<()> {
        if self.truncation() != other.truncation() {
            return Err(Error::TruncationMismatch(
                self.truncation(),
                other.truncation(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_truncation(other)?;
        Ok(QSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Cauchy product truncated at `N`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_truncation(other)?;
        let n = self.truncation();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse by the triangular recursion
    /// `b₀ = 1/a₀`, `bₖ = -(Σ_{i=1..k} aᵢ b_{k-i}) / a₀`.
    pub fn inv(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NonUnitConstantTerm);
        }
        let n = self.truncation();
        let mut b = Self::zero(n);
        b.coeffs[0] = a0.recip();
        for k in 1..=n {
            let mut acc = Rational::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &b.coeffs[k - i];
            }
            b.coeffs[k] = -acc / a0;
        }
        Ok(b)
    }

    /// Substitutes `q ↦ q^k`.
    pub fn dilate(&self, k: usize) -> Self {
        assert!(k > 0, "dilation factor must be positive");
        let n = self.truncation();
        let mut out = Self::zero(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * k <= n {
                out.coeffs[i * k] = c.clone();
            }
        }
        out
    }

    /// Multiplies in place by `(1 + sign·q^r)`.
    fn mul_binomial(&mut self, r: usize, sign: i64) {
        let n = self.truncation();
        for i in (r..=n).rev() {
            let t = self.coeffs[i - r].clone();
            if sign > 0 {
                self.coeffs[i] += t;
            } else {
                self.coeffs[i] -= t;
            }
        }
    }

    /// Divides in place by `(1 - q^r)`, i.e. multiplies by `Σ_k q^{kr}`.
    fn div_one_minus(&mut self, r: usize) {
        let n = self.truncation();
        for i in r..=n {
            let t = self.coeffs[i - r].clone();
            self.coeffs[i] += t;
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})q")?,
                _ => write!(f, "({c})q^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.truncation() + 1)
    }
}

/// `∏_{r=1..N} (1 - q^r)^e` truncated at `N`; negative `e` allowed.
pub fn eta_power(e: i64, truncation: usize) -> QSeries {
    let mut s = QSeries::one(truncation);
    for r in 1..=truncation {
        for _ in 0..e.unsigned_abs() {
            if e > 0 {
                s.mul_binomial(r, -1);
            } else {
                s.div_one_minus(r);
            }
        }
    }
    s
}

/// `∏_{r=1..N} (1 + q^r)^d` truncated at `N`.
pub fn odd_product(d: u64, truncation: usize) -> QSeries {
    let mut s = QSeries::one(truncation);
    for r in 1..=truncation {
        for _ in 0..d {
            s.mul_binomial(r, 1);
        }
    }
    s
}

pub fn qs_mul(a: &QSeries, b: &QSeries) -> Result<QSeries> {
    a.mul(b)
}

pub fn qs_inv(a: &QSeries) -> Result<QSeries> {
    a.inv()
}
