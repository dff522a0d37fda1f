//! Truncated power series in one formal variable with coefficients in a
//! fixed quadratic extension. A series of order `N` knows its coefficients of
//! degree `0..=N`; binary operations truncate to the smaller order.

use std::fmt;

use num_bigint::BigInt;

use super::{factorial, ExactError, QuadExt, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    order: usize,
    d: Rational,
    coeffs: Vec<QuadExt>,
}

impl PowerSeries {
    /// Builds a series from its leading coefficients; missing coefficients up
    /// to `order` are zero, extra ones are dropped.
    pub fn from_coeffs(
        d: &Rational,
        coeffs: Vec<QuadExt>,
        order: usize,
    ) -> Result<Self, ExactError> {
        if let Some(bad) = coeffs.iter().find(|c| c.d() != d) {
            return Err(ExactError::DiscriminantMismatch {
                left: Box::new(d.clone()),
                right: Box::new(bad.d().clone()),
            });
        }
        let mut coeffs = coeffs;
        coeffs.resize(order + 1, QuadExt::zero(d));
        Ok(PowerSeries {
            order,
            d: d.clone(),
            coeffs,
        })
    }

    pub fn zero(d: &Rational, order: usize) -> Self {
        PowerSeries {
            order,
            d: d.clone(),
            coeffs: vec![QuadExt::zero(d); order + 1],
        }
    }

    pub fn constant(c: QuadExt, order: usize) -> Self {
        let d = c.d().clone();
        let mut s = Self::zero(&d, order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(d: &Rational, order: usize) -> Self {
        Self::constant(QuadExt::one(d), order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn coeffs(&self) -> &[QuadExt] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&QuadExt> {
        self.coeffs.get(n)
    }

    fn check_field(&self, other: &Self) -> Result<usize, ExactError> {
        if self.d != other.d {
            return Err(ExactError::DiscriminantMismatch {
                left: Box::new(self.d.clone()),
                right: Box::new(other.d.clone()),
            });
        }
        Ok(self.order.min(other.order))
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExactError> {
        let order = self.check_field(other)?;
        Ok(self.zip_with(other, order, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ExactError> {
        let order = self.check_field(other)?;
        Ok(self.zip_with(other, order, |a, b| a - b))
    }

    fn zip_with(
        &self,
        other: &Self,
        order: usize,
        op: impl Fn(&QuadExt, &QuadExt) -> QuadExt,
    ) -> Self {
        PowerSeries {
            order,
            d: self.d.clone(),
            coeffs: (0..=order)
                .map(|i| op(&self.coeffs[i], &other.coeffs[i]))
                .collect(),
        }
    }

    /// Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        let order = self.check_field(other)?;
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n).fold(QuadExt::zero(&self.d), |acc, k| {
                    &acc + &(&self.coeffs[k] * &other.coeffs[n - k])
                })
            })
            .collect();
        Ok(PowerSeries {
            order,
            d: self.d.clone(),
            coeffs,
        })
    }

    /// The series `h` with `h · other = self` up to the common order.
    pub fn div(&self, other: &Self) -> Result<Self, ExactError> {
        let order = self.check_field(other)?;
        let inv0 = other.coeffs[0]
            .inverse()
            .map_err(|_| ExactError::NonInvertibleConstant(other.coeffs[0].to_string()))?;
        let mut h: Vec<QuadExt> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                acc = &acc - &(&other.coeffs[k] * &h[n - k]);
            }
            h.push(&acc * &inv0);
        }
        Ok(PowerSeries {
            order,
            d: self.d.clone(),
            coeffs: h,
        })
    }

    pub fn neg(&self) -> Self {
        PowerSeries {
            order: self.order,
            d: self.d.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &QuadExt) -> Result<Self, ExactError> {
        self.mul(&Self::constant(k.clone(), self.order))
    }

    /// Termwise derivative; the result knows one coefficient fewer.
    pub fn derivative(&self) -> Self {
        let order = self.order.saturating_sub(1);
        let mut coeffs: Vec<QuadExt> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&Rational::from_integer(BigInt::from(i))))
            .collect();
        coeffs.resize(order + 1, QuadExt::zero(&self.d));
        PowerSeries {
            order,
            d: self.d.clone(),
            coeffs,
        }
    }

    /// Series of `f(c·z)` where `f` has Taylor coefficients `sign(n)/n!`.
    fn taylor(c: &QuadExt, order: usize, sign: impl Fn(usize) -> i8) -> Self {
        let d = c.d().clone();
        let mut power = QuadExt::one(&d);
        let mut coeffs = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let s = sign(n);
            let term = if s == 0 {
                QuadExt::zero(&d)
            } else {
                let inv_fact = Rational::new(BigInt::from(s), factorial(n as u32));
                power.scale(&inv_fact)
            };
            coeffs.push(term);
            power = &power * c;
        }
        PowerSeries { order, d, coeffs }
    }

    pub fn sin(c: &QuadExt, order: usize) -> Self {
        Self::taylor(c, order, |n| match n % 4 {
            1 => 1,
            3 => -1,
            _ => 0,
        })
    }

    pub fn cos(c: &QuadExt, order: usize) -> Self {
        Self::taylor(c, order, |n| match n % 4 {
            0 => 1,
            2 => -1,
            _ => 0,
        })
    }

    pub fn exp(c: &QuadExt, order: usize) -> Self {
        Self::taylor(c, order, |_| 1)
    }
}

pub fn series_add(f: &PowerSeries, g: &PowerSeries) -> Result<PowerSeries, ExactError> {
    f.add(g)
}

pub fn series_mul(f: &PowerSeries, g: &PowerSeries) -> Result<PowerSeries, ExactError> {
    f.mul(g)
}

pub fn series_div(f: &PowerSeries, g: &PowerSeries) -> Result<PowerSeries, ExactError> {
    f.div(g)
}

pub fn series_sin(c: &QuadExt, order: usize) -> PowerSeries {
    PowerSeries::sin(c, order)
}

pub fn series_cos(c: &QuadExt, order: usize) -> PowerSeries {
    PowerSeries::cos(c, order)
}

pub fn series_exp(c: &QuadExt, order: usize) -> PowerSeries {
    PowerSeries::exp(c, order)
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order + 1)
    }
}
