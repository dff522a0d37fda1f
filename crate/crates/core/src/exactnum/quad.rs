use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::rational_sqrt;
use super::{ExactError, Rational};

/// An element `a + b·ρ` of `Q(ρ)` where `ρ² = d`.
///
/// Every element carries its own discriminant `d`; binary operations on
/// elements with different discriminants are rejected. When `d` is the square
/// of a rational, `ρ` is identified with the nonnegative root and the element
/// is folded into its rational part on construction, so `b` is always zero in
/// that case and the representation stays canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: Rational,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Self {
        match rational_sqrt(&d) {
            Some(root) if !b.is_zero() => QuadExt {
                a: a + b * root,
                b: Rational::zero(),
                d,
            },
            _ => QuadExt { a, b, d },
        }
    }

    pub fn rational(a: Rational, d: &Rational) -> Self {
        QuadExt {
            a,
            b: Rational::zero(),
            d: d.clone(),
        }
    }

    pub fn zero(d: &Rational) -> Self {
        Self::rational(Rational::zero(), d)
    }

    pub fn one(d: &Rational) -> Self {
        Self::rational(Rational::one(), d)
    }

    /// The generator `ρ` itself.
    pub fn root(d: &Rational) -> Self {
        Self::new(Rational::zero(), Rational::one(), d.clone())
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of `ρ`; the irrational component.
    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn conjugate(&self) -> Self {
        QuadExt {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d.clone(),
        }
    }

    /// `N(a + bρ) = a² − d·b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.d * &self.b * &self.b
    }

    pub fn scale(&self, k: &Rational) -> Self {
        QuadExt {
            a: &self.a * k,
            b: &self.b * k,
            d: self.d.clone(),
        }
    }

    fn same_field(&self, other: &Self) -> Result<(), ExactError> {
        if self.d == other.d {
            Ok(())
        } else {
            Err(ExactError::DiscriminantMismatch {
                left: Box::new(self.d.clone()),
                right: Box::new(other.d.clone()),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_field(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_field(other)?;
        Ok(self.add_unchecked(&-other))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ExactError> {
        self.same_field(other)?;
        Ok(self.mul_unchecked(&other.inverse()?))
    }

    /// Multiplicative inverse via the conjugate: `(a − bρ) / N`.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let norm = self.norm();
        if norm.is_zero() {
            return Err(ExactError::ZeroNorm(self.to_string()));
        }
        Ok(self.conjugate().scale(&norm.recip()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::one(&self.d);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        result
    }

    fn add_unchecked(&self, other: &Self) -> Self {
        QuadExt {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d: self.d.clone(),
        }
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        QuadExt {
            a: &self.a * &other.a + &self.d * &self.b * &other.b,
            b: &self.a * &other.b + &other.a * &self.b,
            d: self.d.clone(),
        }
    }
}

/// `(a₁+b₁ρ)(a₂+b₂ρ) = (a₁a₂ + d·b₁b₂) + (a₁b₂ + a₂b₁)ρ`.
pub fn quad_mul(u: &QuadExt, v: &QuadExt) -> Result<QuadExt, ExactError> {
    u.checked_mul(v)
}

pub fn quad_div(u: &QuadExt, v: &QuadExt) -> Result<QuadExt, ExactError> {
    u.checked_div(v)
}

// Operator impls panic on a discriminant mismatch; callers that cannot
// guarantee a shared field go through the `checked_*` methods.

impl Add for &QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        self.checked_add(rhs).expect("QuadExt addition")
    }
}

impl Sub for &QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        self.checked_sub(rhs).expect("QuadExt subtraction")
    }
}

impl Mul for &QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        self.checked_mul(rhs).expect("QuadExt multiplication")
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let coeff = |f: &mut fmt::Formatter<'_>, b: &Rational| {
            if b.is_one() {
                write!(f, "sqrt({})", self.d)
            } else {
                write!(f, "{}*sqrt({})", b, self.d)
            }
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-")?;
            }
            return coeff(f, &self.b.abs());
        }
        write!(f, "{}", self.a)?;
        write!(f, " {} ", if self.b.is_negative() { "-" } else { "+" })?;
        coeff(f, &self.b.abs())
    }
}
