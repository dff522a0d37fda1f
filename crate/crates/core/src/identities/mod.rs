//! Executable checks for every identity tying the grammars, recurrences,
//! closed forms and generating functions together.
//!
//! Each check compares two independently computed sides exactly and returns
//! a [`CheckReport`]; a failing report carries the first counterexample with
//! both sides rendered in full. Checks read their triangles from a
//! [`Tables`] value, so a single corrupted entry (see [`Fault`]) surfaces in
//! every check that depends on it.

mod closed_forms;
mod grammar_checks;
mod plan;
mod series_checks;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::exactnum::{ExactError, RatPoly, Rational};
use crate::grammar::GrammarError;
use crate::permcore::PermError;
use crate::triangles::{poly_p, PolyFamily, Triangle, TriangleError, TriangleKind};

pub use closed_forms::{
    check_convolutions, check_david_barton, check_recurrence_consistency, check_rnx_wnx,
    check_tangent_forms, check_tnx_rnx,
};
pub use grammar_checks::{
    check_dumont, check_grammar_alt, check_grammar_runs, check_leibniz, check_oracle,
    check_peaks_grammar, leibniz_fixtures, LeibnizFixture,
};
pub use plan::{SamplePlan, SampleTarget};
pub use series_checks::{
    carlitz_coefficients, check_carlitz, check_final_gf, check_stanley_gf, final_gf_coefficients,
    stanley_coefficients,
};

pub const DEFAULT_N_MAX: usize = 12;
pub const DEFAULT_ORACLE_N_MAX: usize = 8;
pub const DEFAULT_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error(transparent)]
    Triangle(#[from] TriangleError),
    #[error(transparent)]
    Grammar(#[from] GrammarError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("{identity}: x = {point} is a singular point")]
    SingularPoint {
        identity: &'static str,
        point: String,
    },
    #[error("{identity}: x = {point} lies outside {domain}")]
    OutOfDomain {
        identity: &'static str,
        point: String,
        domain: &'static str,
    },
    #[error("{identity}: sample point {point} repeated")]
    DuplicatePoint {
        identity: &'static str,
        point: String,
    },
    #[error("{identity}: {have} sample points cannot certify degree bound needing {need}")]
    TooFewPoints {
        identity: &'static str,
        need: usize,
        have: usize,
    },
    #[error("tables hold {have} rows of {triangle}; check needs {need}")]
    TableTooSmall {
        triangle: TriangleKind,
        need: usize,
        have: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

/// Location and both sides of the first disagreement found by a check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub n: usize,
    pub point: String,
    pub lhs: String,
    pub rhs: String,
}

impl Failure {
    pub fn new(
        n: usize,
        point: impl Into<String>,
        lhs: impl fmt::Display,
        rhs: impl fmt::Display,
    ) -> Self {
        Failure {
            n,
            point: point.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

/// Compares two sides, producing a [`Failure`] on mismatch.
pub(crate) fn expect_eq<T: PartialEq + fmt::Display>(
    n: usize,
    point: impl Into<String>,
    lhs: &T,
    rhs: &T,
) -> Result<(), Failure> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Failure::new(n, point, lhs, rhs))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    #[serde(rename = "identity")]
    pub identity_id: String,
    pub params: BTreeMap<String, Value>,
    pub passed: bool,
    pub first_failure: Option<Failure>,
}

impl CheckReport {
    pub(crate) fn from_outcome(
        identity: &str,
        params: Params,
        outcome: Result<(), Failure>,
    ) -> Self {
        let first_failure = outcome.err();
        CheckReport {
            identity_id: identity.to_string(),
            params: params.0,
            passed: first_failure.is_none(),
            first_failure,
        }
    }

    fn sort_key(&self) -> (String, String) {
        (
            self.identity_id.clone(),
            serde_json::to_string(&self.params).expect("params serialize"),
        )
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect();
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} [{}]", self.identity_id, params.join(", "))?;
        if let Some(fail) = &self.first_failure {
            write!(
                f,
                "\n  first failure at n={} {}\n    lhs = {}\n    rhs = {}",
                fail.n, fail.point, fail.lhs, fail.rhs
            )?;
        }
        Ok(())
    }
}

/// Builder for a report's `params` map.
#[derive(Default)]
pub(crate) struct Params(BTreeMap<String, Value>);

impl Params {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn int(mut self, key: &str, v: usize) -> Self {
        self.0.insert(key.to_string(), Value::from(v));
        self
    }

    pub(crate) fn rational(mut self, key: &str, v: &Rational) -> Self {
        self.0.insert(key.to_string(), Value::from(v.to_string()));
        self
    }

    pub(crate) fn points(mut self, key: &str, pts: &[Rational]) -> Self {
        self.0.insert(
            key.to_string(),
            Value::from(
                pts.iter()
                    .map(|p| Value::from(p.to_string()))
                    .collect::<Vec<_>>(),
            ),
        );
        self
    }
}

/// A single corrupted triangle entry: `T(n,k) += delta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fault {
    pub triangle: TriangleKind,
    pub n: usize,
    pub k: usize,
    pub delta: BigInt,
}

impl FromStr for Fault {
    type Err = IdentityError;

    /// `name:n:k` or `name:n:k:delta` (delta defaults to 1).
    fn from_str(s: &str) -> Result<Self, IdentityError> {
        let bad =
            || IdentityError::InvalidParam(format!("fault spec {s:?}, expected name:n:k[:delta]"));
        let parts: Vec<&str> = s.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(bad());
        }
        Ok(Fault {
            triangle: parts[0].parse()?,
            n: parts[1].parse().map_err(|_| bad())?,
            k: parts[2].parse().map_err(|_| bad())?,
            delta: match parts.get(3) {
                Some(d) => d.parse().map_err(|_| bad())?,
                None => BigInt::from(1),
            },
        })
    }
}

/// The five triangles plus the tangent polynomials, generated once and shared
/// by all checks. Polynomial families used by the checks are read off the
/// triangle rows, so corrupting an entry propagates everywhere.
#[derive(Debug, Clone)]
pub struct Tables {
    runs: Triangle,
    alt: Triangle,
    peaks: Triangle,
    left_peaks: Triangle,
    euler: Triangle,
    tangent: PolyFamily,
}

impl Tables {
    /// Triangles with rows up to `n_max` (and `P_0..P_{n_max}`).
    pub fn generate(n_max: usize) -> Result<Self, IdentityError> {
        let n_max = n_max.max(1);
        Ok(Tables {
            runs: TriangleKind::R.generate(n_max)?,
            alt: TriangleKind::AAlt.generate(n_max)?,
            peaks: TriangleKind::W.generate(n_max)?,
            left_peaks: TriangleKind::Wtilde.generate(n_max)?,
            euler: TriangleKind::Euler.generate(n_max)?,
            tangent: poly_p(n_max)?,
        })
    }

    pub fn triangle(&self, kind: TriangleKind) -> &Triangle {
        match kind {
            TriangleKind::R => &self.runs,
            TriangleKind::AAlt => &self.alt,
            TriangleKind::W => &self.peaks,
            TriangleKind::Wtilde => &self.left_peaks,
            TriangleKind::Euler => &self.euler,
        }
    }

    fn triangle_mut(&mut self, kind: TriangleKind) -> &mut Triangle {
        match kind {
            TriangleKind::R => &mut self.runs,
            TriangleKind::AAlt => &mut self.alt,
            TriangleKind::W => &mut self.peaks,
            TriangleKind::Wtilde => &mut self.left_peaks,
            TriangleKind::Euler => &mut self.euler,
        }
    }

    pub fn inject(&mut self, fault: &Fault) -> Result<(), IdentityError> {
        let t = self.triangle_mut(fault.triangle);
        let value = t.get(fault.n, fault.k) + &fault.delta;
        if t.set(fault.n, fault.k, value) {
            Ok(())
        } else {
            Err(IdentityError::InvalidParam(format!(
                "fault position ({}, {}) is outside the stored {} triangle",
                fault.n, fault.k, fault.triangle
            )))
        }
    }

    pub(crate) fn require(&self, kind: TriangleKind, n: usize) -> Result<(), IdentityError> {
        let have = self.triangle(kind).n_max();
        if n > have {
            Err(IdentityError::TableTooSmall {
                triangle: kind,
                need: n,
                have,
            })
        } else {
            Ok(())
        }
    }

    fn row(&self, kind: TriangleKind, n: usize) -> RatPoly {
        self.triangle(kind)
            .row_poly(n)
            .unwrap_or_else(|| panic!("{kind} row {n} missing; callers check ranges first"))
    }

    /// `R_n(x)`.
    pub fn r(&self, n: usize) -> RatPoly {
        self.row(TriangleKind::R, n)
    }

    /// `T_n(x)`.
    pub fn t(&self, n: usize) -> RatPoly {
        self.row(TriangleKind::AAlt, n)
    }

    /// `W_n(x)`.
    pub fn w(&self, n: usize) -> RatPoly {
        self.row(TriangleKind::W, n)
    }

    /// `W̃_n(x)`.
    pub fn wtilde(&self, n: usize) -> RatPoly {
        self.row(TriangleKind::Wtilde, n)
    }

    /// `A_n(x) = x Σ_k ⟨n,k⟩ x^k`.
    pub fn eulerian(&self, n: usize) -> RatPoly {
        &RatPoly::x() * &self.row(TriangleKind::Euler, n)
    }

    /// `P_n(x)`.
    pub fn tangent(&self, n: usize) -> Result<&RatPoly, IdentityError> {
        self.tangent
            .get(n)
            .ok_or(IdentityError::InvalidParam(format!(
                "P_{n} not generated (up to {})",
                self.tangent.n_max()
            )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Grammar,
    Convolutions,
    ClosedForms,
    Gf,
    Oracle,
}

impl FromStr for Suite {
    type Err = IdentityError;
    fn from_str(s: &str) -> Result<Self, IdentityError> {
        Ok(match s {
            "all" => Suite::All,
            "grammar" => Suite::Grammar,
            "convolutions" => Suite::Convolutions,
            "closed-forms" => Suite::ClosedForms,
            "gf" => Suite::Gf,
            "oracle" => Suite::Oracle,
            _ => {
                return Err(IdentityError::InvalidParam(format!(
                    "unknown suite {s:?} (all, grammar, convolutions, closed-forms, gf, oracle)"
                )))
            }
        })
    }
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub n_max: usize,
    pub oracle_n_max: usize,
    pub order: usize,
    pub carlitz_points: Vec<Rational>,
    pub stanley_points: Vec<Rational>,
    pub final_gf_points: Vec<Rational>,
    /// User-supplied sample points for the radical identities; `None` means
    /// the per-identity default plan.
    pub points: Option<Vec<Rational>>,
    pub fault: Option<Fault>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        let r = |n, d| Rational::new(BigInt::from(n), BigInt::from(d));
        VerifyOptions {
            n_max: DEFAULT_N_MAX,
            oracle_n_max: DEFAULT_ORACLE_N_MAX,
            order: DEFAULT_ORDER,
            carlitz_points: vec![r(0, 1), r(1, 3), r(1, 2)],
            stanley_points: vec![r(1, 3), r(1, 2)],
            final_gf_points: vec![r(1, 3), r(1, 2)],
            points: None,
            fault: None,
        }
    }
}

type Job<'a> = Box<dyn Fn() -> Result<CheckReport, IdentityError> + Send + Sync + 'a>;

/// Runs every check of `suite`, in parallel on the current rayon pool.
/// Reports come back sorted by identity and parameters.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<Vec<CheckReport>, IdentityError> {
    if opts.n_max == 0 || opts.order == 0 {
        return Err(IdentityError::InvalidParam(
            "n-max and order must be positive".into(),
        ));
    }
    let rows = [opts.n_max + 2, opts.order + 1, opts.oracle_n_max]
        .into_iter()
        .max()
        .unwrap_or(1);
    let mut tables = Tables::generate(rows)?;
    if let Some(fault) = &opts.fault {
        tables.inject(fault)?;
    }
    let tables = &tables;
    let n = opts.n_max;
    let oracle_n = opts.oracle_n_max;

    let plan_for = |target: SampleTarget| -> Result<SamplePlan, IdentityError> {
        match &opts.points {
            Some(points) => SamplePlan::new(points.clone()),
            None => Ok(SamplePlan::default_for(target, n)),
        }
    };

    let mut jobs: Vec<Job> = Vec::new();
    if suite.includes(Suite::Grammar) {
        jobs.push(Box::new(move || check_grammar_runs(tables, n)));
        jobs.push(Box::new(move || check_grammar_alt(tables, n)));
        jobs.push(Box::new(move || check_dumont(tables, n, oracle_n.min(n))));
        jobs.push(Box::new(move || {
            check_peaks_grammar(tables, n, oracle_n.min(n))
        }));
        jobs.push(Box::new(move || check_leibniz(n.min(10))));
    }
    if suite.includes(Suite::Convolutions) {
        jobs.push(Box::new(move || check_convolutions(tables, n)));
        jobs.push(Box::new(move || check_recurrence_consistency(tables, n)));
    }
    if suite.includes(Suite::ClosedForms) {
        let tangent_plan = plan_for(SampleTarget::TangentForms)?;
        let db_plan = plan_for(SampleTarget::DavidBarton)?;
        jobs.push(Box::new(move || check_tnx_rnx(tables, n)));
        jobs.push(Box::new(move || check_rnx_wnx(tables, n)));
        jobs.push(Box::new(move || {
            check_tangent_forms(tables, n, &tangent_plan)
        }));
        jobs.push(Box::new(move || check_david_barton(tables, n, &db_plan)));
    }
    if suite.includes(Suite::Gf) {
        for x0 in &opts.carlitz_points {
            jobs.push(Box::new(move || check_carlitz(tables, x0, opts.order)));
        }
        for t0 in &opts.stanley_points {
            jobs.push(Box::new(move || check_stanley_gf(tables, t0, opts.order)));
        }
        for x0 in &opts.final_gf_points {
            jobs.push(Box::new(move || check_final_gf(tables, x0, opts.order)));
        }
    }
    if suite.includes(Suite::Oracle) {
        jobs.push(Box::new(move || check_oracle(tables, oracle_n)));
    }

    let mut reports = jobs
        .par_iter()
        .map(|job| job())
        .collect::<Result<Vec<_>, _>>()?;
    reports.sort_by_key(CheckReport::sort_key);
    Ok(reports)
}
