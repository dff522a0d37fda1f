//! Acceptance criteria AC1 to AC9, one line each.
//!
//! Run with `cargo test -p runlab-cli --test acceptance -- --nocapture` to
//! see the report; the test fails if any criterion fails.

use std::cell::Cell;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use runlab::exactnum::{rat, RatPoly};
use runlab::grammar::{leibniz_check, Grammar, MPoly, Monomial};
use runlab::identities::{
    check_carlitz, check_convolutions, check_david_barton, check_dumont, check_final_gf,
    check_grammar_alt, check_grammar_runs, check_oracle, check_peaks_grammar, check_rnx_wnx,
    check_stanley_gf, check_tangent_forms, check_tnx_rnx, leibniz_fixtures, run_suite, CheckReport,
    SamplePlan, SampleTarget, Suite, Tables, VerifyOptions,
};
use runlab::triangles::{triangle_r, triangle_w, triangle_wtilde, TriangleKind};

type Outcome = Result<String, String>;

fn within(label: &str, elapsed: Duration, budget: Duration) -> Result<(), String> {
    if elapsed <= budget {
        Ok(())
    } else {
        Err(format!("{label} took {elapsed:?}, budget {budget:?}"))
    }
}

fn passed(r: CheckReport) -> Result<(), String> {
    if r.passed {
        Ok(())
    } else {
        Err(r.to_string())
    }
}

fn tables() -> Tables {
    Tables::generate(26).expect("tables")
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let r = triangle_r(5).map_err(|e| e.to_string())?;
    let w = triangle_w(3).map_err(|e| e.to_string())?;
    let wt = triangle_wtilde(3).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let printed: [(usize, &[i64]); 4] = [
        (2, &[0, 2]),
        (3, &[0, 2, 4]),
        (4, &[0, 2, 12, 10]),
        (5, &[0, 2, 28, 58, 32]),
    ];
    for (n, coeffs) in printed {
        let want = RatPoly::from_ints(coeffs.iter().copied());
        if r.row_poly(n).as_ref() != Some(&want) {
            return Err(format!("R_{n} = {:?}, expected {want}", r.row_poly(n)));
        }
    }
    if w.row_poly(3) != Some(RatPoly::from_ints([4, 2])) {
        return Err("W_3 differs from 4 + 2x".into());
    }
    if wt.row_poly(3) != Some(RatPoly::from_ints([1, 5])) {
        return Err("Wt_3 differs from 1 + 5x".into());
    }
    within("generation", elapsed, Duration::from_millis(1))?;
    Ok(format!("R_2..R_5, W_3, Wt_3 match in {elapsed:?}"))
}

fn ac2(t: &Tables) -> Outcome {
    let start = Instant::now();
    passed(check_oracle(t, 8).map_err(|e| e.to_string())?)?;
    let elapsed = start.elapsed();
    within("oracle", elapsed, Duration::from_secs(5))?;
    Ok(format!(
        "5 triangles equal S_n histograms for n <= 8 in {elapsed:?}"
    ))
}

fn ac3(t: &Tables) -> Outcome {
    let start = Instant::now();
    passed(check_grammar_runs(t, 12).map_err(|e| e.to_string())?)?;
    passed(check_grammar_alt(t, 12).map_err(|e| e.to_string())?)?;
    let elapsed = start.elapsed();
    within("grammar expansions", elapsed, Duration::from_secs(2))?;
    Ok(format!(
        "D^n(x^2) and D^n(x) coefficients for n <= 12 in {elapsed:?}"
    ))
}

fn ac4(t: &Tables) -> Outcome {
    passed(check_dumont(t, 12, 8).map_err(|e| e.to_string())?)?;
    passed(check_peaks_grammar(t, 12, 8).map_err(|e| e.to_string())?)?;
    Ok("Eulerian and peak expansions for n <= 12, oracle for n <= 8".into())
}

fn random_mpoly(letters: Vec<char>) -> impl Strategy<Value = MPoly> {
    let k = letters.len();
    let term = (prop::collection::vec(0u32..3, k), 1i64..=4).prop_map(move |(exps, c)| {
        (
            Monomial::from_exponents(letters.iter().copied().zip(exps)),
            BigInt::from(c),
        )
    });
    prop::collection::vec(term, 1..3).prop_map(MPoly::from_terms)
}

fn ac5() -> Outcome {
    let fixtures: Vec<Grammar> = leibniz_fixtures().into_iter().map(|(_, g, _)| g).collect();
    let strategy = (0..fixtures.len()).prop_flat_map(move |i| {
        let letters: Vec<char> = leibniz_fixtures()[i].1.alphabet().collect();
        (
            Just(i),
            random_mpoly(letters.clone()),
            random_mpoly(letters),
            0usize..=10,
        )
    });
    let cases = Cell::new(0usize);
    let mut runner = TestRunner::new_with_rng(
        Config::with_cases(120),
        proptest::test_runner::TestRng::deterministic_rng(
            proptest::test_runner::RngAlgorithm::ChaCha,
        ),
    );
    runner
        .run(&strategy, |(i, u, v, n)| {
            cases.set(cases.get() + 1);
            prop_assert!(leibniz_check(&fixtures[i], &u, &v, n).expect("letters in alphabet"));
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    if cases.get() < 100 {
        return Err(format!("only {} cases ran", cases.get()));
    }
    Ok(format!(
        "{} random (grammar, u, v, n <= 10) cases agree",
        cases.get()
    ))
}

fn ac6(t: &Tables) -> Outcome {
    let start = Instant::now();
    passed(check_convolutions(t, 20).map_err(|e| e.to_string())?)?;
    let elapsed = start.elapsed();
    within("convolutions", elapsed, Duration::from_secs(1))?;
    Ok(format!("five convolutions for 1 <= n <= 20 in {elapsed:?}"))
}

fn ac7(t: &Tables) -> Outcome {
    passed(check_tnx_rnx(t, 25).map_err(|e| e.to_string())?)?;
    let rw = check_rnx_wnx(t, 20).map_err(|e| e.to_string())?;
    let rw_points = rw.params["points"].as_array().map_or(0, Vec::len);
    passed(rw)?;
    if rw_points < 22 {
        return Err(format!("rnx_wnx used {rw_points} points, need 22"));
    }
    let plan = SamplePlan::default_for(SampleTarget::TangentForms, 12);
    passed(check_tangent_forms(t, 12, &plan).map_err(|e| e.to_string())?)?;
    let db = SamplePlan::default_for(SampleTarget::DavidBarton, 12);
    passed(check_david_barton(t, 12, &db).map_err(|e| e.to_string())?)?;
    if plan.points().len() < 27 || db.points().len() < 27 {
        return Err("radical identities sampled at fewer than 2n+3 points".into());
    }
    Ok(format!(
        "T_n = (1+x)R_n/2 for n <= 25; R_n and T_n through W_n at {rw_points} points; tangent forms at {} and David-Barton at {} points, irrational parts zero",
        plan.points().len(),
        db.points().len()
    ))
}

fn ac8(t: &Tables) -> Outcome {
    let budget = Duration::from_secs(2);
    let mut slowest = Duration::ZERO;
    let mut timed =
        |label: String, f: &dyn Fn() -> Result<CheckReport, String>| -> Result<(), String> {
            let start = Instant::now();
            passed(f()?)?;
            let elapsed = start.elapsed();
            slowest = slowest.max(elapsed);
            within(&label, elapsed, budget)
        };
    for x0 in [rat(0, 1), rat(1, 3), rat(1, 2)] {
        timed(format!("carlitz x0={x0}"), &|| {
            check_carlitz(t, &x0, 12).map_err(|e| e.to_string())
        })?;
    }
    for t0 in [rat(1, 3), rat(1, 2)] {
        timed(format!("stanley t0={t0}"), &|| {
            check_stanley_gf(t, &t0, 12).map_err(|e| e.to_string())
        })?;
    }
    for x0 in [rat(1, 3), rat(1, 2)] {
        timed(format!("final x0={x0}"), &|| {
            check_final_gf(t, &x0, 12).map_err(|e| e.to_string())
        })?;
    }
    Ok(format!(
        "Carlitz x3, Stanley x2, final GF x2 to order 12, slowest {slowest:?}"
    ))
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_runlab"))
        .args(args)
        .env_remove("RUNLAB_MAX_N")
        .output()
        .expect("run runlab");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn ac9() -> Outcome {
    let (code, out) = cli(&["verify", "all"]);
    if code != 0 {
        return Err(format!("verify all exited {code}:\n{out}"));
    }
    let faults = [
        ("runs:5:2", "tnx_rnx"),
        ("altsubseq:6:3", "grammar_alt"),
        ("peaks:7:1", "peaks_grammar"),
        ("leftpeaks:6:2", "peaks_grammar"),
        ("euler:5:2", "dumont"),
    ];
    for (fault, check) in faults {
        let (code, out) = cli(&["verify", "all", "--inject-fault", fault]);
        if code != 1
            || !out.contains(&format!("FAIL {check}"))
            || !out.contains("first failure at n=")
        {
            return Err(format!("fault {fault}: exit {code}, output:\n{out}"));
        }
    }
    // Every stored entry of rows up to 7, through the library harness.
    let opts = VerifyOptions {
        n_max: 7,
        oracle_n_max: 5,
        order: 7,
        ..VerifyOptions::default()
    };
    let base = Tables::generate(7).map_err(|e| e.to_string())?;
    let mut entries = 0;
    for kind in TriangleKind::ALL {
        for (n, row) in base.triangle(kind).rows() {
            for k in 0..row.len() {
                let fault = format!("{}:{n}:{k}", kind.cli_name());
                let reports = run_suite(
                    Suite::All,
                    &VerifyOptions {
                        fault: Some(
                            fault
                                .parse()
                                .map_err(|e: runlab::identities::IdentityError| e.to_string())?,
                        ),
                        ..opts.clone()
                    },
                )
                .map_err(|e| e.to_string())?;
                if reports.iter().all(|r| r.passed) {
                    return Err(format!("fault {fault} went undetected"));
                }
                entries += 1;
            }
        }
    }
    Ok(format!("verify all exits 0; 5 CLI faults exit 1 with counterexamples; all {entries} entries of rows <= 7 detected"))
}

#[test]
fn acceptance_criteria() {
    let t = tables();
    let results: Vec<(&str, &str, Outcome)> = vec![
        ("AC1", "seed polynomials", ac1()),
        ("AC2", "oracle equivalence", ac2(&t)),
        ("AC3", "grammar expansions", ac3(&t)),
        ("AC4", "Eulerian and peak grammars", ac4(&t)),
        ("AC5", "Leibniz rule", ac5()),
        ("AC6", "convolutions", ac6(&t)),
        ("AC7", "closed forms", ac7(&t)),
        ("AC8", "generating functions", ac8(&t)),
        ("AC9", "CLI contract", ac9()),
    ];
    let mut failures = 0;
    for (id, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("{id} PASS {name}: {detail}"),
            Err(why) => {
                failures += 1;
                println!("{id} FAIL {name}: {why}");
            }
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
