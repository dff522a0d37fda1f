//! Rational sample points for identities that involve square roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IdentityError;
use crate::exactnum::{is_rational_square, Rational};

/// Which radical identity a plan is meant for; fixes the singular points and
/// the extension each point is evaluated in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleTarget {
    /// `σ² = x − 1` and `τ² = (x + 1)/(x − 1)`; singular at `x ∈ {−1, 0, 1}`.
    TangentForms,
    /// `ρ² = 1 − x²` with `w = ρ/(1 + x)`; needs `−1 < x < 1`.
    DavidBarton,
    /// Rational evaluation of `W_n(2x/(1 + x))`; singular at `x = −1`.
    RnxWnx,
}

impl SampleTarget {
    pub fn name(self) -> &'static str {
        match self {
            SampleTarget::TangentForms => "tangent_forms",
            SampleTarget::DavidBarton => "david_barton",
            SampleTarget::RnxWnx => "rnx_wnx",
        }
    }

    /// Points needed to certify the identity for every `n ≤ n_max`.
    pub fn points_needed(self, n_max: usize) -> usize {
        match self {
            SampleTarget::TangentForms | SampleTarget::DavidBarton => 2 * n_max + 3,
            SampleTarget::RnxWnx => n_max + 2,
        }
    }

    fn check_point(self, x: &Rational) -> Result<(), IdentityError> {
        let one = Rational::one();
        let singular = match self {
            SampleTarget::TangentForms => x.is_zero() || x.abs() == one,
            SampleTarget::DavidBarton => x.abs() == one,
            SampleTarget::RnxWnx => *x == -one.clone(),
        };
        if singular {
            return Err(IdentityError::SingularPoint {
                identity: self.name(),
                point: x.to_string(),
            });
        }
        if self == SampleTarget::DavidBarton && x.abs() > one {
            return Err(IdentityError::OutOfDomain {
                identity: self.name(),
                point: x.to_string(),
                domain: "(-1, 1)",
            });
        }
        Ok(())
    }

    /// Whether `x` gives a genuinely irrational extension.
    fn prefers(self, x: &Rational) -> bool {
        let one = Rational::one();
        match self {
            SampleTarget::TangentForms => {
                let s = x - &one;
                !is_rational_square(&s) && !is_rational_square(&((x + &one) / s))
            }
            SampleTarget::DavidBarton => !is_rational_square(&(&one - x * x)),
            SampleTarget::RnxWnx => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplePlan {
    points: Vec<Rational>,
}

impl SamplePlan {
    pub fn new(points: Vec<Rational>) -> Result<Self, IdentityError> {
        if points.is_empty() {
            return Err(IdentityError::InvalidParam("empty sample plan".into()));
        }
        Ok(SamplePlan { points })
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    /// Rejects singular or out-of-domain points, duplicates, and plans too
    /// small for the degree bound at `n_max`.
    pub fn validate(&self, target: SampleTarget, n_max: usize) -> Result<(), IdentityError> {
        for (i, x) in self.points.iter().enumerate() {
            target.check_point(x)?;
            if self.points[..i].contains(x) {
                return Err(IdentityError::DuplicatePoint {
                    identity: target.name(),
                    point: x.to_string(),
                });
            }
        }
        let need = target.points_needed(n_max);
        if self.points.len() < need {
            return Err(IdentityError::TooFewPoints {
                identity: target.name(),
                need,
                have: self.points.len(),
            });
        }
        Ok(())
    }

    /// Default plan: small-denominator points filtered for the target's
    /// singularities, preferring non-square discriminants.
    ///
    /// The tangent forms sample `x = 1 + r` for positive rationals `r` so that both
    /// `x − 1` and `(x + 1)/(x − 1)` are positive non-squares; the other
    /// targets draw from `±1/2, ±1/3, ±2/3, ±1/4, ±3/4, ±1/5, …`.
    pub fn default_for(target: SampleTarget, n_max: usize) -> Self {
        let need = target.points_needed(n_max);
        let points = match target {
            SampleTarget::TangentForms => positive_rationals()
                .map(|r| r + Rational::one())
                .filter(|x| target.prefers(x))
                .take(need)
                .collect(),
            _ => unit_interval_fractions()
                .filter(|x| target.check_point(x).is_ok() && target.prefers(x))
                .take(need)
                .collect(),
        };
        SamplePlan { points }
    }
}

/// `±p/q` in lowest terms with `0 < p < q`, ordered by `q`, then `p`.
fn unit_interval_fractions() -> impl Iterator<Item = Rational> {
    (2u64..).flat_map(|q| {
        (1..q).filter(move |p| p.gcd(&q) == 1).flat_map(move |p| {
            let x = Rational::new(BigInt::from(p), BigInt::from(q));
            [x.clone(), -x]
        })
    })
}

/// Positive rationals `p/q` in lowest terms, ordered by `p + q`.
fn positive_rationals() -> impl Iterator<Item = Rational> {
    (2u64..).flat_map(|s| {
        (1..s)
            .filter(move |p| p.gcd(&(s - p)) == 1)
            .map(move |p| Rational::new(BigInt::from(p), BigInt::from(s - p)))
    })
}
