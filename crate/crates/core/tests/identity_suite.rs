use runlab::identities::{run_suite, CheckReport, Suite, VerifyOptions};

#[test]
fn every_suite_passes_with_defaults() {
    let reports = run_suite(Suite::All, &VerifyOptions::default()).unwrap();
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.to_string())
        .collect();
    assert!(failed.is_empty(), "{}", failed.join("\n"));
    let ids: Vec<&str> = reports.iter().map(|r| r.identity_id.as_str()).collect();
    for id in [
        "carlitz",
        "convolutions",
        "david_barton",
        "dumont",
        "final_gf",
        "grammar_alt",
        "grammar_runs",
        "leibniz",
        "oracle",
        "peaks_grammar",
        "recurrence_consistency",
        "rnx_wnx",
        "stanley_gf",
        "tangent_forms",
        "tnx_rnx",
    ] {
        assert!(ids.contains(&id), "missing {id}");
    }
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let opts = VerifyOptions {
        n_max: 6,
        oracle_n_max: 5,
        order: 6,
        ..VerifyOptions::default()
    };
    let a = serde_json::to_string(&run_suite(Suite::All, &opts).unwrap()).unwrap();
    let b = serde_json::to_string(&run_suite(Suite::All, &opts).unwrap()).unwrap();
    assert_eq!(a, b);
    let back: Vec<CheckReport> = serde_json::from_str(&a).unwrap();
    assert_eq!(serde_json::to_string(&back).unwrap(), a);
}

#[test]
fn a_fault_fails_dependent_checks_only() {
    let opts = VerifyOptions {
        n_max: 8,
        oracle_n_max: 6,
        order: 8,
        fault: Some("peaks:5:1".parse().unwrap()),
        ..VerifyOptions::default()
    };
    let reports = run_suite(Suite::All, &opts).unwrap();
    let failed: Vec<&str> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.identity_id.as_str())
        .collect();
    assert!(failed.contains(&"peaks_grammar"));
    assert!(failed.contains(&"rnx_wnx"));
    assert!(!failed.contains(&"grammar_runs"));
    assert!(!failed.contains(&"carlitz"));
}
