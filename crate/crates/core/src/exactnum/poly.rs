use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{QuadExt, Rational};

/// Dense univariate polynomial over the rationals; `coeffs[i]` is the
/// coefficient of `x^i`. Trailing zeros are always trimmed, so the zero
/// polynomial has no coefficients and equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = RatPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_ints<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::from_coeffs(
            coeffs
                .into_iter()
                .map(|c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` stands for the degree of the zero polynomial (−∞).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficient list, or `None` if some coefficient is fractional.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x0: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x0 + c)
    }

    /// Horner evaluation at a point of `Q(sqrt d)`.
    pub fn eval_quad(&self, x0: &QuadExt) -> QuadExt {
        let d = x0.d();
        self.coeffs.iter().rev().fold(QuadExt::zero(d), |acc, c| {
            &(&acc * x0) + &QuadExt::rational(c.clone(), d)
        })
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &RatPoly) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * inner) + &Self::constant(c.clone())
        })
    }
}

pub fn poly_eval_quad(p: &RatPoly, x0: &QuadExt) -> QuadExt {
    p.eval_quad(x0)
}

pub fn poly_derivative(p: &RatPoly) -> RatPoly {
    p.derivative()
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: RatPoly) -> RatPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl fmt::Display for RatPoly {
    /// Ascending powers, e.g. `2x + 12x^2 + 10x^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() || i == 0 {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn derivative_basics() {
        let cube = RatPoly::monomial(rat(1, 1), 3);
        assert_eq!(cube.derivative(), RatPoly::monomial(rat(3, 1), 2));
        assert!(RatPoly::constant(rat(5, 1)).derivative().is_zero());
        // P1 = 1 + x^2, P2 = (1 + x^2) P1'
        let p1 = RatPoly::from_ints([1, 0, 1]);
        assert_eq!(&p1 * &p1.derivative(), RatPoly::from_ints([0, 2, 0, 2]));
    }

    #[test]
    fn zero_polynomial_degree_sentinel() {
        assert_eq!(RatPoly::zero().degree(), None);
        assert_eq!(RatPoly::from_ints([0, 0, 0]).degree(), None);
        assert_eq!(RatPoly::from_ints([1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn eval_quad_examples() {
        let d = rat(2, 1);
        let sq = RatPoly::monomial(rat(1, 1), 2);
        assert_eq!(
            sq.eval_quad(&QuadExt::root(&d)),
            QuadExt::rational(rat(2, 1), &d)
        );
        let one_plus_x = RatPoly::from_ints([1, 1]);
        assert_eq!(one_plus_x.eval_quad(&QuadExt::zero(&d)), QuadExt::one(&d));
        let p2 = RatPoly::from_ints([0, 2, 0, 2]);
        assert_eq!(
            p2.eval_quad(&QuadExt::one(&d)),
            QuadExt::rational(rat(4, 1), &d)
        );
    }

    #[test]
    fn compose_with_square() {
        let p = RatPoly::from_ints([1, 5]);
        let x2 = RatPoly::monomial(rat(1, 1), 2);
        assert_eq!(p.compose(&x2), RatPoly::from_ints([1, 0, 5]));
    }

    #[test]
    fn display() {
        assert_eq!(
            RatPoly::from_ints([0, 2, 12, 10]).to_string(),
            "2x + 12x^2 + 10x^3"
        );
        assert_eq!(RatPoly::from_ints([-1, 0, -1]).to_string(), "-1 - x^2");
        assert_eq!(
            RatPoly::from_coeffs(vec![rat(1, 2), rat(1, 2)]).to_string(),
            "1/2 + (1/2)x"
        );
        assert_eq!(RatPoly::zero().to_string(), "0");
    }
}
