use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{expect_eq, CheckReport, Failure, IdentityError, Params, Tables};
use crate::exactnum::RatPoly;
use crate::grammar::{collapse, leibniz_sides, parse_mpoly, Grammar, MPoly, Monomial};
use crate::permcore::{distribution, Stat};
use crate::triangles::TriangleKind;

fn mono(exps: &[(char, usize)]) -> Monomial {
    Monomial::from_exponents(exps.iter().map(|&(c, e)| (c, e as u32)))
}

/// `prefix · Σ_k coeff(k) · y^{ey(k)} z^{ez(k)}` over `ks`.
fn expected_expansion(
    prefix: &[(char, usize)],
    ks: impl Iterator<Item = usize>,
    coeff: impl Fn(usize) -> BigInt,
    exps: impl Fn(usize) -> [(char, usize); 2],
) -> MPoly {
    MPoly::from_terms(ks.map(|k| {
        let mut e: Vec<(char, usize)> = prefix.to_vec();
        e.extend(exps(k));
        (mono(&e), coeff(k))
    }))
}

/// `Dⁿ(x²) = x² Σ_{k=1}^{n} R(n+1,k) y^k z^{n−k}` for the grammar
/// `{x → xy, y → yz, z → y²}`.
pub fn check_grammar_runs(tables: &Tables, n_max: usize) -> Result<CheckReport, IdentityError> {
    tables.require(TriangleKind::R, n_max + 1)?;
    let seq = Grammar::main().derive_sequence(&parse_mpoly("x^2")?, n_max)?;
    let runs = tables.triangle(TriangleKind::R);
    let outcome = (1..=n_max).try_for_each(|n| {
        let expected = expected_expansion(
            &[('x', 2)],
            0..=n,
            |k| runs.get(n + 1, k),
            |k| [('y', k), ('z', n - k)],
        );
        expect_eq(n, "D^n(x^2)", &seq[n], &expected)
    });
    Ok(CheckReport::from_outcome(
        "grammar_runs",
        Params::new().int("n_max", n_max),
        outcome,
    ))
}

/// `Dⁿ(x) = x Σ_{k=1}^{n} a_k(n) y^k z^{n−k}` for the same grammar.
pub fn check_grammar_alt(tables: &Tables, n_max: usize) -> Result<CheckReport, IdentityError> {
    tables.require(TriangleKind::AAlt, n_max)?;
    let seq = Grammar::main().derive_sequence(&MPoly::letter('x'), n_max)?;
    let alt = tables.triangle(TriangleKind::AAlt);
    let outcome = (1..=n_max).try_for_each(|n| {
        let expected = expected_expansion(
            &[('x', 1)],
            0..=n,
            |k| alt.get(n, k),
            |k| [('y', k), ('z', n - k)],
        );
        expect_eq(n, "D^n(x)", &seq[n], &expected)
    });
    Ok(CheckReport::from_outcome(
        "grammar_alt",
        Params::new().int("n_max", n_max),
        outcome,
    ))
}

/// Compares a histogram from the brute-force oracle against a coefficient
/// accessor, over every `k` either side mentions.
fn against_oracle(
    stat: Stat,
    n: usize,
    label: &str,
    coeff: impl Fn(usize) -> BigInt,
    k_max: usize,
) -> Result<Result<(), Failure>, IdentityError> {
    let dist = distribution(stat, n)?;
    let top = k_max.max(dist.counts.keys().copied().max().unwrap_or(0));
    for k in 0..=top {
        let (lhs, rhs) = (coeff(k), dist.get(k));
        if lhs != rhs {
            return Ok(Err(Failure::new(
                n,
                format!("{label} k={k} vs {} oracle", stat.cli_name()),
                lhs,
                rhs,
            )));
        }
    }
    Ok(Ok(()))
}

/// `Dⁿ(x) = x Σ_k ⟨n,k⟩ x^k y^{n−k}` for `{x → xy, y → xy}`, checked against
/// the Eulerian triangle, the collapsed `A_n`, and the descent oracle for
/// `n ≤ oracle_n`.
pub fn check_dumont(
    tables: &Tables,
    n_max: usize,
    oracle_n: usize,
) -> Result<CheckReport, IdentityError> {
    tables.require(TriangleKind::Euler, n_max)?;
    let seq = Grammar::dumont().derive_sequence(&MPoly::letter('x'), n_max)?;
    let euler = tables.triangle(TriangleKind::Euler);
    let to_a: BTreeMap<char, RatPoly> = [('x', RatPoly::x()), ('y', RatPoly::one())].into();
    let mut outcome = Ok(());
    for (n, d) in seq.iter().enumerate().skip(1) {
        let expected = expected_expansion(
            &[],
            0..n,
            |k| euler.get(n, k),
            |k| [('x', k + 1), ('y', n - k)],
        );
        let a_n = collapse(d, &to_a)?;
        outcome = expect_eq(n, "D^n(x)", d, &expected)
            .and_then(|_| expect_eq(n, "A_n(x)", &a_n, &tables.eulerian(n)));
        if outcome.is_err() {
            break;
        }
        if n <= oracle_n {
            outcome = against_oracle(
                Stat::Descents,
                n,
                "D^n(x)",
                |k| d.coeff(&mono(&[('x', k + 1), ('y', n.saturating_sub(k))])),
                n,
            )?;
            if outcome.is_err() {
                break;
            }
        }
    }
    let params = Params::new()
        .int("n_max", n_max)
        .int("oracle_n_max", oracle_n);
    Ok(CheckReport::from_outcome("dumont", params, outcome))
}

/// For `{y → yz, z → y²}`:
/// `Dⁿ(y) = Σ_k W̃(n,k) y^{2k+1} z^{n−2k}` and
/// `Dⁿ(z) = Σ_k W(n,k) y^{2k+2} z^{n−2k−1}`, plus the peak oracles for
/// `n ≤ oracle_n`.
pub fn check_peaks_grammar(
    tables: &Tables,
    n_max: usize,
    oracle_n: usize,
) -> Result<CheckReport, IdentityError> {
    tables.require(TriangleKind::W, n_max)?;
    tables.require(TriangleKind::Wtilde, n_max)?;
    let g = Grammar::peaks();
    let dy = g.derive_sequence(&MPoly::letter('y'), n_max)?;
    let dz = g.derive_sequence(&MPoly::letter('z'), n_max)?;
    let w = tables.triangle(TriangleKind::W);
    let wt = tables.triangle(TriangleKind::Wtilde);
    let mut outcome = Ok(());
    for n in 0..=n_max {
        let exp_y = expected_expansion(
            &[],
            0..=n / 2,
            |k| wt.get(n, k),
            |k| [('y', 2 * k + 1), ('z', n - 2 * k)],
        );
        outcome = expect_eq(n, "D^n(y)", &dy[n], &exp_y);
        if outcome.is_ok() && n >= 1 {
            let exp_z = expected_expansion(
                &[],
                0..=(n - 1) / 2,
                |k| w.get(n, k),
                |k| [('y', 2 * k + 2), ('z', n - 2 * k - 1)],
            );
            outcome = expect_eq(n, "D^n(z)", &dz[n], &exp_z);
        }
        if outcome.is_ok() && (1..=oracle_n).contains(&n) {
            let (y, z) = (&dy[n], &dz[n]);
            outcome = against_oracle(
                Stat::LeftPeaks,
                n,
                "D^n(y)",
                |k| match n.checked_sub(2 * k) {
                    Some(ez) => y.coeff(&mono(&[('y', 2 * k + 1), ('z', ez)])),
                    None => BigInt::default(),
                },
                n / 2,
            )?;
            if outcome.is_ok() {
                outcome = against_oracle(
                    Stat::InteriorPeaks,
                    n,
                    "D^n(z)",
                    |k| match (n - 1).checked_sub(2 * k) {
                        Some(ez) => z.coeff(&mono(&[('y', 2 * k + 2), ('z', ez)])),
                        None => BigInt::default(),
                    },
                    (n - 1) / 2,
                )?;
            }
        }
        if outcome.is_err() {
            break;
        }
    }
    let params = Params::new()
        .int("n_max", n_max)
        .int("oracle_n_max", oracle_n);
    Ok(CheckReport::from_outcome("peaks_grammar", params, outcome))
}

/// A named grammar with `(u, v)` pairs.
pub type LeibnizFixture = (&'static str, Grammar, Vec<(MPoly, MPoly)>);

/// The fixture grammars with a few `(u, v)` pairs each.
pub fn leibniz_fixtures() -> Vec<LeibnizFixture> {
    let p = |s: &str| parse_mpoly(s).expect("fixture polynomial");
    vec![
        (
            "main",
            Grammar::main(),
            vec![
                (p("x"), p("x")),
                (p("x"), p("y")),
                (p("x"), p("z")),
                (p("x^2"), p("y")),
                (p("x*y"), p("z + 2")),
            ],
        ),
        (
            "dumont",
            Grammar::dumont(),
            vec![(p("x"), p("y")), (p("x^2"), p("x + y"))],
        ),
        (
            "peaks",
            Grammar::peaks(),
            vec![(p("y"), p("z")), (p("y^2"), p("3*z"))],
        ),
        (
            "schett",
            Grammar::schett(),
            vec![(p("x"), p("y")), (p("x*y"), p("z"))],
        ),
    ]
}

/// `Dⁿ(uv) = Σ_k C(n,k) Dᵏ(u) D^{n−k}(v)` on every fixture for `n ≤ n_max`.
pub fn check_leibniz(n_max: usize) -> Result<CheckReport, IdentityError> {
    let mut outcome = Ok(());
    'outer: for (name, g, pairs) in leibniz_fixtures() {
        for (u, v) in &pairs {
            for n in 0..=n_max {
                let (lhs, rhs) = leibniz_sides(&g, u, v, n)?;
                outcome = expect_eq(n, format!("{name}: u={u}, v={v}"), &lhs, &rhs);
                if outcome.is_err() {
                    break 'outer;
                }
            }
        }
    }
    Ok(CheckReport::from_outcome(
        "leibniz",
        Params::new().int("n_max", n_max),
        outcome,
    ))
}

/// Every triangle row against the brute-force histogram of its statistic,
/// `1 ≤ n ≤ n_max`.
pub fn check_oracle(tables: &Tables, n_max: usize) -> Result<CheckReport, IdentityError> {
    let pairs = [
        (TriangleKind::R, Stat::Runs),
        (TriangleKind::AAlt, Stat::LongestAltSubseq),
        (TriangleKind::W, Stat::InteriorPeaks),
        (TriangleKind::Wtilde, Stat::LeftPeaks),
        (TriangleKind::Euler, Stat::Descents),
    ];
    let mut outcome = Ok(());
    'outer: for (kind, stat) in pairs {
        tables.require(kind, n_max)?;
        let t = tables.triangle(kind);
        for n in 1..=n_max {
            let row_len = t.row(n).map_or(0, <[BigInt]>::len);
            outcome = against_oracle(
                stat,
                n,
                kind.cli_name(),
                |k| t.get(n, k),
                row_len.saturating_sub(1),
            )?;
            if outcome.is_err() {
                break 'outer;
            }
        }
    }
    Ok(CheckReport::from_outcome(
        "oracle",
        Params::new().int("n_max", n_max),
        outcome,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_checks_pass() {
        let t = Tables::generate(14).unwrap();
        assert!(check_grammar_runs(&t, 12).unwrap().passed);
        assert!(check_grammar_alt(&t, 12).unwrap().passed);
        assert!(check_dumont(&t, 12, 6).unwrap().passed);
        assert!(check_peaks_grammar(&t, 12, 6).unwrap().passed);
        assert!(check_leibniz(6).unwrap().passed);
        assert!(check_oracle(&t, 6).unwrap().passed);
    }

    #[test]
    fn first_grammar_coefficients() {
        let seq = Grammar::main()
            .derive_sequence(&parse_mpoly("x^2").unwrap(), 2)
            .unwrap();
        assert_eq!(seq[1], parse_mpoly("2*x^2*y").unwrap());
        let alt = Grammar::main()
            .derive_sequence(&MPoly::letter('x'), 2)
            .unwrap();
        assert_eq!(alt[1], parse_mpoly("x*y").unwrap());
        assert_eq!(alt[2], parse_mpoly("x*y*z + x*y^2").unwrap());
        let peaks = Grammar::peaks();
        assert_eq!(
            peaks.derive_n(&MPoly::letter('z'), 1).unwrap(),
            parse_mpoly("y^2").unwrap()
        );
        assert_eq!(
            peaks.derive_n(&MPoly::letter('z'), 3).unwrap(),
            parse_mpoly("4*y^2*z^2 + 2*y^4").unwrap()
        );
    }

    #[test]
    fn corrupted_runs_entry_is_reported() {
        let mut t = Tables::generate(8).unwrap();
        t.inject(&"runs:4:2".parse().unwrap()).unwrap();
        let r = check_grammar_runs(&t, 6).unwrap();
        assert!(!r.passed);
        let f = r.first_failure.unwrap();
        assert_eq!(f.n, 3);
        assert_eq!(f.lhs, "2*x^2*y*z^2 + 12*x^2*y^2*z + 10*x^2*y^3");
        assert_eq!(f.rhs, "2*x^2*y*z^2 + 13*x^2*y^2*z + 10*x^2*y^3");
        assert!(!check_oracle(&t, 4).unwrap().passed);
    }

    #[test]
    fn corrupted_euler_entry_is_reported() {
        let mut t = Tables::generate(8).unwrap();
        t.inject(&"euler:3:1".parse().unwrap()).unwrap();
        assert!(!check_dumont(&t, 5, 5).unwrap().passed);
    }

    #[test]
    fn too_small_tables() {
        let t = Tables::generate(4).unwrap();
        assert!(matches!(
            check_grammar_runs(&t, 4),
            Err(IdentityError::TableTooSmall { .. })
        ));
    }
}
