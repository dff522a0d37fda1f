use num_traits::{One, Zero};

use super::{
    expect_eq, CheckReport, Failure, IdentityError, Params, SamplePlan, SampleTarget, Tables,
};
use crate::exactnum::{binomial, QuadExt, RatPoly, Rational};
use crate::triangles::TriangleKind;

fn x_squared() -> RatPoly {
    RatPoly::from_ints([0, 0, 1])
}

fn int_poly(c: impl Into<num_bigint::BigInt>) -> RatPoly {
    RatPoly::constant(Rational::from_integer(c.into()))
}

/// `Σ_{k∈ks} C(n,k) f(k) g(n−k)`.
fn binomial_sum<'a>(
    n: usize,
    ks: impl Iterator<Item = usize>,
    f: impl Fn(usize) -> &'a RatPoly,
    g: impl Fn(usize) -> &'a RatPoly,
) -> RatPoly {
    ks.fold(RatPoly::zero(), |acc, k| {
        let c = Rational::from_integer(binomial(n as u32, k as u32));
        &acc + &(f(k) * g(n - k)).scale(&c)
    })
}

/// The five binomial convolutions linking `R`, `T`, `W` and `W̃`, for
/// `1 ≤ n ≤ n_max`:
///
/// ```text
/// R_{n+1} = Σ_{k=0}^{n} C(n,k) T_k T_{n−k}
/// R_{n+2} = 2 Σ_{k=0}^{n} C(n,k) T_k T_{n−k+1}
/// R_{n+2} = 2x W̃_n(x²) + 2x Σ_{k=1}^{n} C(n,k) R_{k+1} W̃_{n−k}(x²)
/// T_{n+1} = x Σ_{k=0}^{n} C(n,k) T_k W̃_{n−k}(x²)
/// T_{n+1} = T_n + x² Σ_{k=0}^{n−1} C(n,k) T_k W_{n−k}(x²)
/// ```
pub fn check_convolutions(tables: &Tables, n_max: usize) -> Result<CheckReport, IdentityError> {
    tables.require(TriangleKind::R, n_max + 2)?;
    tables.require(TriangleKind::AAlt, n_max + 1)?;
    tables.require(TriangleKind::W, n_max)?;
    tables.require(TriangleKind::Wtilde, n_max)?;
    let x = RatPoly::x();
    let two = int_poly(2);
    let x2 = x_squared();
    let ts: Vec<RatPoly> = (0..=n_max + 1).map(|m| tables.t(m)).collect();
    let rs: Vec<RatPoly> = (0..=n_max + 2)
        .map(|m| if m == 0 { RatPoly::zero() } else { tables.r(m) })
        .collect();
    let wt2s: Vec<RatPoly> = (0..=n_max).map(|m| tables.wtilde(m).compose(&x2)).collect();
    let w2s: Vec<RatPoly> = (0..=n_max)
        .map(|m| {
            if m == 0 {
                RatPoly::zero()
            } else {
                tables.w(m).compose(&x2)
            }
        })
        .collect();
    let t = |m: usize| &ts[m];
    let wt2 = |m: usize| &wt2s[m];
    let w2 = |m: usize| &w2s[m];

    let outcome = (1..=n_max).try_for_each(|n| {
        let first = binomial_sum(n, 0..=n, t, t);
        expect_eq(n, "R_{n+1} = sum C(n,k) T_k T_{n-k}", &rs[n + 1], &first)?;

        let second = &two * &binomial_sum(n, 0..=n, t, |m| t(m + 1));
        expect_eq(
            n,
            "R_{n+2} = 2 sum C(n,k) T_k T_{n-k+1}",
            &rs[n + 2],
            &second,
        )?;

        let inner = binomial_sum(n, 1..=n, |k| &rs[k + 1], wt2);
        let third = &(&two * &x) * &(wt2(n) + &inner);
        expect_eq(
            n,
            "R_{n+2} = 2x Wt_n(x^2) + 2x sum C(n,k) R_{k+1} Wt_{n-k}(x^2)",
            &rs[n + 2],
            &third,
        )?;

        let fourth = &x * &binomial_sum(n, 0..=n, t, wt2);
        expect_eq(
            n,
            "T_{n+1} = x sum C(n,k) T_k Wt_{n-k}(x^2)",
            &ts[n + 1],
            &fourth,
        )?;

        let fifth = &ts[n] + &(&x2 * &binomial_sum(n, 0..n, t, w2));
        expect_eq(
            n,
            "T_{n+1} = T_n + x^2 sum C(n,k) T_k W_{n-k}(x^2)",
            &ts[n + 1],
            &fifth,
        )
    });
    Ok(CheckReport::from_outcome(
        "convolutions",
        Params::new().int("n_max", n_max),
        outcome,
    ))
}

/// The triangle rows, read as polynomials, satisfy the differential
/// recurrences for `R`, `T`, `W` and `W̃` up to `n_max`.
pub fn check_recurrence_consistency(
    tables: &Tables,
    n_max: usize,
) -> Result<CheckReport, IdentityError> {
    tables.require(TriangleKind::R, n_max + 1)?;
    tables.require(TriangleKind::AAlt, n_max + 1)?;
    tables.require(TriangleKind::W, n_max + 1)?;
    tables.require(TriangleKind::Wtilde, n_max + 1)?;
    let x = RatPoly::x();
    let one_minus_x2 = RatPoly::from_ints([1, 0, -1]);
    let two_x_one_minus_x = RatPoly::from_ints([0, 2, -2]);
    let int = |v: usize| int_poly(v as u64);

    let outcome = (0..=n_max).try_for_each(|n| {
        let tn = tables.t(n);
        let t_next =
            &(&x * &(&(&int(n) * &x) + &int(1))) * &tn + &x * &(&one_minus_x2 * &tn.derivative());
        expect_eq(n, "T_{n+1} recurrence", &tables.t(n + 1), &t_next)?;

        let wt = tables.wtilde(n);
        let wt_next = &(&(&int(n) * &x) + &int(1)) * &wt + &two_x_one_minus_x * &wt.derivative();
        expect_eq(n, "Wt_{n+1} recurrence", &tables.wtilde(n + 1), &wt_next)?;

        if n == 0 {
            return Ok(());
        }
        let rn = tables.r(n);
        let lead = &(&int(n - 1) * &x) + &int(2);
        let r_next = &(&x * &lead) * &rn + &x * &(&one_minus_x2 * &rn.derivative());
        expect_eq(n, "R_{n+1} recurrence", &tables.r(n + 1), &r_next)?;

        let wn = tables.w(n);
        let w_next = &(&(&int(n - 1) * &x) + &int(2)) * &wn + &two_x_one_minus_x * &wn.derivative();
        expect_eq(n, "W_{n+1} recurrence", &tables.w(n + 1), &w_next)
    });
    Ok(CheckReport::from_outcome(
        "recurrence_consistency",
        Params::new().int("n_max", n_max),
        outcome,
    ))
}

/// `T_n(x) = ½(1+x) R_n(x)` for `2 ≤ n ≤ n_max`, as polynomials.
pub fn check_tnx_rnx(tables: &Tables, n_max: usize) -> Result<CheckReport, IdentityError> {
    tables.require(TriangleKind::R, n_max)?;
    tables.require(TriangleKind::AAlt, n_max)?;
    let half_one_plus_x = RatPoly::from_coeffs(vec![Rational::new(1.into(), 2.into()); 2]);
    let outcome = (2..=n_max).try_for_each(|n| {
        expect_eq(
            n,
            "T_n = (1+x) R_n / 2",
            &tables.t(n),
            &(&half_one_plus_x * &tables.r(n)),
        )
    });
    Ok(CheckReport::from_outcome(
        "tnx_rnx",
        Params::new().int("n_max", n_max),
        outcome,
    ))
}

fn two_pow(e: usize) -> Rational {
    Rational::from_integer(num_bigint::BigInt::from(2).pow(e as u32))
}

/// `R_n(x) = x(1+x)^{n−2} 2^{2−n} W_n(2x/(1+x))` for `n ≥ 2` and
/// `T_n(x) = x(1+x)^{n−1} 2^{1−n} W_n(2x/(1+x))` for `n ≥ 1`, pointwise.
///
/// `W_n` has degree `⌊(n−1)/2⌋`, so `(1+x)^{n−1} W_n(2x/(1+x))` is a
/// polynomial of degree at most `n−1` and both sides have degree at most
/// `n`; `n+2` distinct points certify each identity.
pub fn check_rnx_wnx(tables: &Tables, n_max: usize) -> Result<CheckReport, IdentityError> {
    tables.require(TriangleKind::R, n_max)?;
    tables.require(TriangleKind::AAlt, n_max)?;
    tables.require(TriangleKind::W, n_max)?;
    let plan = SamplePlan::default_for(SampleTarget::RnxWnx, n_max);
    plan.validate(SampleTarget::RnxWnx, n_max)?;
    let one = Rational::one();
    let two = Rational::from_integer(2.into());

    let outcome = (1..=n_max).try_for_each(|n| {
        let (w, r, t) = (tables.w(n), tables.r(n), tables.t(n));
        plan.points().iter().try_for_each(|x| {
            let xp1 = x + &one;
            let wv = w.eval(&(&(&two * x) / &xp1));
            let t_rhs = x * &num_traits::pow(xp1.clone(), n - 1) * &wv / two_pow(n - 1);
            expect_eq(n, format!("T-form x={x}"), &t.eval(x), &t_rhs)?;
            if n >= 2 {
                let r_rhs = x * &num_traits::pow(xp1, n - 2) * &wv / two_pow(n - 2);
                expect_eq(n, format!("R-form x={x}"), &r.eval(x), &r_rhs)?;
            }
            Ok(())
        })
    });
    let params = Params::new()
        .int("n_max", n_max)
        .points("points", plan.points());
    Ok(CheckReport::from_outcome("rnx_wnx", params, outcome))
}

/// Asserts the irrational component vanishes, then compares the rational
/// component with `lhs`.
fn expect_rational(
    n: usize,
    label: &str,
    x: &Rational,
    lhs: &Rational,
    rhs: &QuadExt,
) -> Result<(), Failure> {
    if !rhs.b().is_zero() {
        return Err(Failure::new(
            n,
            format!("{label} x={x} irrational part (sqrt({}))", rhs.d()),
            rhs.b(),
            0,
        ));
    }
    expect_eq(n, format!("{label} x={x}"), lhs, rhs.a())
}

/// Both closed forms expressing `W_n` and `R_n` through `P_n`, `n ≥ 2`:
///
/// ```text
/// W_n(x) = σ^{n+1} P_n(1/σ) / x                          σ² = x − 1
/// R_n(x) = ((x+1)/2)^{n−1} τ^{−(n+1)} P_n(τ)             τ² = (x+1)/(x−1)
/// ```
///
/// `P_n` has the parity of `n+1`, so each right side is rational. Clearing
/// `x` and `(x−1)^{n+1}` turns both into polynomial identities of degree at
/// most `2n+2`, certified by `2n+3` points.
pub fn check_tangent_forms(
    tables: &Tables,
    n_max: usize,
    plan: &SamplePlan,
) -> Result<CheckReport, IdentityError> {
    tables.require(TriangleKind::R, n_max)?;
    tables.require(TriangleKind::W, n_max)?;
    plan.validate(SampleTarget::TangentForms, n_max)?;
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    let mut evaluations = Vec::new();
    for n in 2..=n_max {
        let p = tables.tangent(n)?;
        for x in plan.points() {
            let sigma = QuadExt::root(&(x - &one));
            let w_rhs = sigma
                .pow(n as u32 + 1)
                .checked_mul(&p.eval_quad(&sigma.inverse()?))?
                .scale(&x.recip());

            let tau = QuadExt::root(&((x + &one) / (x - &one)));
            let r_rhs = p
                .eval_quad(&tau)
                .checked_div(&tau.pow(n as u32 + 1))?
                .scale(&num_traits::pow((x + &one) / &two, n - 1));
            evaluations.push((n, x, w_rhs, r_rhs));
        }
    }
    let outcome = evaluations.iter().try_for_each(|(n, x, w_rhs, r_rhs)| {
        expect_rational(*n, "W-form", x, &tables.w(*n).eval(x), w_rhs)?;
        expect_rational(*n, "R-form", x, &tables.r(*n).eval(x), r_rhs)
    });
    let params = Params::new()
        .int("n_max", n_max)
        .points("points", plan.points());
    Ok(CheckReport::from_outcome("tangent_forms", params, outcome))
}

/// `R_n(x) = ((1+x)/2)^{n−1} (1+w)^{n+1} A_n((1−w)/(1+w))` with
/// `w = √((1−x)/(1+x)) = ρ/(1+x)`, `ρ² = 1 − x²`, for `n ≥ 2`.
///
/// `(1+w)^{n+1} A_n((1−w)/(1+w)) = Σ_k ⟨n,k⟩ (1−w)^{k+1} (1+w)^{n−k}` is a
/// polynomial of degree `n+1` in `w`; its odd part cancels, and after
/// multiplying by `(1+x)^{n+1}` the identity is polynomial of degree at most
/// `2n+2` in `x`, certified by `2n+3` points.
pub fn check_david_barton(
    tables: &Tables,
    n_max: usize,
    plan: &SamplePlan,
) -> Result<CheckReport, IdentityError> {
    tables.require(TriangleKind::R, n_max)?;
    tables.require(TriangleKind::Euler, n_max)?;
    plan.validate(SampleTarget::DavidBarton, n_max)?;
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    let outcome = (2..=n_max).try_for_each(|n| {
        let a_n = tables.eulerian(n);
        plan.points().iter().try_for_each(|x| {
            let d = &one - x * x;
            let xp1 = x + &one;
            let w = QuadExt::root(&d).scale(&xp1.recip());
            let one_q = QuadExt::one(&d);
            let one_plus_w = &one_q + &w;
            let arg = (&one_q - &w)
                .checked_div(&one_plus_w)
                .expect("1 + w is nonzero for x in (-1, 1)");
            let rhs = (&one_plus_w.pow(n as u32 + 1) * &a_n.eval_quad(&arg))
                .scale(&num_traits::pow(xp1 / &two, n - 1));
            expect_rational(n, "david_barton", x, &tables.r(n).eval(x), &rhs)
        })
    });
    let params = Params::new()
        .int("n_max", n_max)
        .points("points", plan.points());
    Ok(CheckReport::from_outcome("david_barton", params, outcome))
}
