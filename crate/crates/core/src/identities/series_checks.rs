use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{expect_eq, CheckReport, Failure, IdentityError, Params, Tables};
use crate::exactnum::{factorial, PowerSeries, QuadExt, Rational};
use crate::triangles::{Triangle, TriangleKind};

fn require_open_unit(identity: &'static str, x0: &Rational) -> Result<(), IdentityError> {
    if x0.abs() < Rational::one() {
        Ok(())
    } else {
        Err(IdentityError::OutOfDomain {
            identity,
            point: x0.to_string(),
            domain: "(-1, 1)",
        })
    }
}

/// `ρ` with `ρ² = 1 − s²`.
fn rho(s: &Rational) -> QuadExt {
    QuadExt::root(&(Rational::one() - s * s))
}

fn constant(c: Rational, d: &Rational, order: usize) -> PowerSeries {
    PowerSeries::constant(QuadExt::rational(c, d), order)
}

/// `(ρ + sin ρz) / (x0 − cos ρz)` over `ℚ(ρ)`, `ρ² = 1 − x0²`.
fn sine_ratio(x0: &Rational, order: usize) -> Result<(QuadExt, PowerSeries), IdentityError> {
    let r = rho(x0);
    let d = r.d().clone();
    let num = PowerSeries::constant(r.clone(), order).add(&PowerSeries::sin(&r, order))?;
    let den = constant(x0.clone(), &d, order).sub(&PowerSeries::cos(&r, order))?;
    Ok((r, num.div(&den)?))
}

/// Coefficients `0..=order` of
/// `((1−x0)/(1+x0)) · ((ρ + sin ρz)/(x0 − cos ρz))²`.
pub fn carlitz_coefficients(x0: &Rational, order: usize) -> Result<Vec<QuadExt>, IdentityError> {
    require_open_unit("carlitz", x0)?;
    let (_, ratio) = sine_ratio(x0, order)?;
    let one = Rational::one();
    let factor = QuadExt::rational((&one - x0) / (&one + x0), ratio.d());
    Ok(ratio.mul(&ratio)?.scale(&factor)?.coeffs().to_vec())
}

/// Coefficients `0..=order` in `x` of
/// `(1−t)(1+ρ+2t e^{ρx}+(1−ρ)e^{2ρx}) / (1+ρ−t²+(1−ρ−t²)e^{2ρx})` at `t = t0`,
/// `ρ² = 1 − t0²`.
pub fn stanley_coefficients(t0: &Rational, order: usize) -> Result<Vec<QuadExt>, IdentityError> {
    require_open_unit("stanley_gf", t0)?;
    let r = rho(t0);
    let d = r.d().clone();
    let q = |c: Rational| QuadExt::rational(c, &d);
    let one = q(Rational::one());
    let t = q(t0.clone());
    let t2 = q(t0 * t0);
    let e1 = PowerSeries::exp(&r, order);
    let e2 = PowerSeries::exp(&(&r + &r), order);

    let num = PowerSeries::constant(&one + &r, order)
        .add(&e1.scale(&(&t + &t))?)?
        .add(&e2.scale(&(&one - &r))?)?;
    let den =
        PowerSeries::constant(&(&one + &r) - &t2, order).add(&e2.scale(&(&(&one - &r) - &t2))?)?;
    Ok(num.div(&den)?.scale(&(&one - &t))?.coeffs().to_vec())
}

/// Coefficients `0..=order` of `−(ρ/(1+x0)) · (ρ + sin ρz)/(x0 − cos ρz)`,
/// taking `√((1−x0)/(1+x0)) = ρ/(1+x0)` on the positive branch.
pub fn final_gf_coefficients(x0: &Rational, order: usize) -> Result<Vec<QuadExt>, IdentityError> {
    require_open_unit("final_gf", x0)?;
    let (r, ratio) = sine_ratio(x0, order)?;
    let w = -r.scale(&(Rational::one() + x0).recip());
    Ok(ratio.scale(&w)?.coeffs().to_vec())
}

/// `(1/n!) Σ_k T(row(n), k) x0^{n−k}` for `n = 0..=order`.
fn triangle_side(
    t: &Triangle,
    row: impl Fn(usize) -> usize,
    x0: &Rational,
    order: usize,
) -> Vec<Rational> {
    (0..=order)
        .map(|n| {
            let sum = (0..=n).fold(Rational::from_integer(BigInt::from(0)), |acc, k| {
                acc + Rational::from_integer(t.get(row(n), k)) * num_traits::pow(x0.clone(), n - k)
            });
            sum / Rational::from_integer(factorial(n as u32))
        })
        .collect()
}

/// Compares coefficientwise, asserting first that every series coefficient is
/// rational.
fn compare_coefficients(
    label: &str,
    expected: &[Rational],
    series: &[QuadExt],
) -> Result<(), Failure> {
    for (n, (lhs, c)) in expected.iter().zip(series).enumerate() {
        if !num_traits::Zero::is_zero(c.b()) {
            return Err(Failure::new(
                n,
                format!("{label} irrational part (sqrt({}))", c.d()),
                c.b(),
                0,
            ));
        }
        expect_eq(n, label.to_string(), lhs, c.a())?;
    }
    Ok(())
}

/// `Σ_n zⁿ/n! Σ_k R(n+1,k) x0^{n−k}` against the closed form in `z`, up to
/// `zᴺ`.
pub fn check_carlitz(
    tables: &Tables,
    x0: &Rational,
    order: usize,
) -> Result<CheckReport, IdentityError> {
    tables.require(TriangleKind::R, order + 1)?;
    let series = carlitz_coefficients(x0, order)?;
    let lhs = triangle_side(tables.triangle(TriangleKind::R), |n| n + 1, x0, order);
    let outcome = compare_coefficients(&format!("z^n coefficient at x0={x0}"), &lhs, &series);
    let params = Params::new().rational("x0", x0).int("order", order);
    Ok(CheckReport::from_outcome("carlitz", params, outcome))
}

/// `A(x, t0)` has `xⁿ` coefficient `T_n(t0)/n!`.
pub fn check_stanley_gf(
    tables: &Tables,
    t0: &Rational,
    order: usize,
) -> Result<CheckReport, IdentityError> {
    tables.require(TriangleKind::AAlt, order)?;
    let series = stanley_coefficients(t0, order)?;
    let lhs: Vec<Rational> = (0..=order)
        .map(|n| tables.t(n).eval(t0) / Rational::from_integer(factorial(n as u32)))
        .collect();
    let outcome = compare_coefficients(&format!("x^n coefficient at t0={t0}"), &lhs, &series);
    let params = Params::new().rational("t0", t0).int("order", order);
    Ok(CheckReport::from_outcome("stanley_gf", params, outcome))
}

/// `Σ_n zⁿ/n! Σ_k a_k(n) x0^{n−k}` against the closed form in `z`.
pub fn check_final_gf(
    tables: &Tables,
    x0: &Rational,
    order: usize,
) -> Result<CheckReport, IdentityError> {
    tables.require(TriangleKind::AAlt, order)?;
    let series = final_gf_coefficients(x0, order)?;
    let lhs = triangle_side(tables.triangle(TriangleKind::AAlt), |n| n, x0, order);
    let outcome = compare_coefficients(&format!("z^n coefficient at x0={x0}"), &lhs, &series);
    let params = Params::new().rational("x0", x0).int("order", order);
    Ok(CheckReport::from_outcome("final_gf", params, outcome))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn tables() -> Tables {
        Tables::generate(14).unwrap()
    }

    #[test]
    fn constant_terms() {
        for x0 in [rat(0, 1), rat(1, 3), rat(-2, 5)] {
            assert_eq!(
                carlitz_coefficients(&x0, 3).unwrap()[0].as_rational(),
                Some(&rat(1, 1))
            );
            assert_eq!(
                final_gf_coefficients(&x0, 3).unwrap()[0].as_rational(),
                Some(&rat(1, 1))
            );
        }
        let s = stanley_coefficients(&rat(1, 2), 2).unwrap();
        assert_eq!(s[0].as_rational(), Some(&rat(1, 1)));
        assert_eq!(s[1].as_rational(), Some(&rat(1, 2)));
    }

    #[test]
    fn carlitz_at_zero_gives_leading_coefficients() {
        // (1 + sin z)²/cos² z: zⁿ/n! coefficients 1, 2, 4, 10, 32.
        let c = carlitz_coefficients(&rat(0, 1), 4).unwrap();
        let scaled: Vec<Rational> = c
            .iter()
            .enumerate()
            .map(|(n, q)| q.as_rational().unwrap() * Rational::from_integer(factorial(n as u32)))
            .collect();
        assert_eq!(scaled, [1, 2, 4, 10, 32].map(|v| rat(v, 1)));
    }

    #[test]
    fn all_series_checks_pass() {
        let t = tables();
        for x0 in [rat(0, 1), rat(1, 3), rat(1, 2)] {
            let r = check_carlitz(&t, &x0, 12).unwrap();
            assert!(r.passed, "{r}");
        }
        for t0 in [rat(1, 3), rat(1, 2)] {
            let r = check_stanley_gf(&t, &t0, 12).unwrap();
            assert!(r.passed, "{r}");
        }
        for x0 in [rat(1, 3), rat(1, 2)] {
            let r = check_final_gf(&t, &x0, 12).unwrap();
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn out_of_domain_points() {
        let t = tables();
        assert!(matches!(
            check_carlitz(&t, &rat(1, 1), 4),
            Err(IdentityError::OutOfDomain { .. })
        ));
        assert!(matches!(
            check_stanley_gf(&t, &rat(-3, 2), 4),
            Err(IdentityError::OutOfDomain { .. })
        ));
    }

    #[test]
    fn corrupted_entries_break_series() {
        let mut t = tables();
        t.inject(&"runs:5:2".parse().unwrap()).unwrap();
        let r = check_carlitz(&t, &rat(1, 2), 8).unwrap();
        assert_eq!(r.first_failure.unwrap().n, 4);
        let mut t = tables();
        t.inject(&"altsubseq:4:3".parse().unwrap()).unwrap();
        assert!(!check_stanley_gf(&t, &rat(1, 3), 8).unwrap().passed);
        assert!(!check_final_gf(&t, &rat(1, 3), 8).unwrap().passed);
    }
}
