//! Recurrence-driven generation of the integer triangles and polynomial
//! families: alternating runs `R(n,k)`, longest alternating subsequences
//! `a_k(n)`, interior peaks `W(n,k)`, left peaks `W̃(n,k)`, Eulerian numbers,
//! and the tangent derivative polynomials `P_n`.
//!
//! Polynomial recurrences run over the rationals and every result is checked
//! for integrality, so a mistyped recurrence fails immediately instead of
//! producing fractional garbage.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{RatPoly, Rational};
use crate::grammar::{Grammar, MPoly, Monomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangleError {
    #[error("{family}: n_max = {n_max} is below the first row {min}")]
    InvalidRange {
        family: &'static str,
        n_max: usize,
        min: usize,
    },
    #[error("{family}_{n}: recurrence gives {got}, seed value is {expected}")]
    SeedMismatch {
        family: &'static str,
        n: usize,
        expected: String,
        got: String,
    },
    #[error("{family}_{n} = {poly} has a non-integer coefficient")]
    NonIntegral {
        family: &'static str,
        n: usize,
        poly: String,
    },
    #[error("unknown triangle {0:?} (expected runs, altsubseq, peaks, leftpeaks or euler)")]
    UnknownName(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TriangleKind {
    /// `R(n,k)`: permutations of `[n]` with `k` alternating runs.
    R,
    /// `a_k(n)`: longest alternating subsequence of length `k`.
    AAlt,
    /// `W(n,k)`: `k` interior peaks.
    W,
    /// `W̃(n,k)`: `k` left peaks.
    Wtilde,
    /// Eulerian numbers: `k` descents.
    Euler,
}

impl TriangleKind {
    pub const ALL: [TriangleKind; 5] = [
        TriangleKind::R,
        TriangleKind::AAlt,
        TriangleKind::W,
        TriangleKind::Wtilde,
        TriangleKind::Euler,
    ];

    pub fn cli_name(self) -> &'static str {
        match self {
            TriangleKind::R => "runs",
            TriangleKind::AAlt => "altsubseq",
            TriangleKind::W => "peaks",
            TriangleKind::Wtilde => "leftpeaks",
            TriangleKind::Euler => "euler",
        }
    }

    /// Index of the first row.
    pub fn first_row(self) -> usize {
        match self {
            TriangleKind::AAlt | TriangleKind::Wtilde => 0,
            _ => 1,
        }
    }

    /// First `k` that can be nonzero in row `n`.
    pub fn k_start(self, n: usize) -> usize {
        match self {
            TriangleKind::R if n >= 2 => 1,
            TriangleKind::AAlt if n >= 1 => 1,
            _ => 0,
        }
    }

    /// Number of stored entries (`k = 0..len`) in row `n`.
    fn row_len(self, n: usize) -> usize {
        match self {
            TriangleKind::R | TriangleKind::Euler => n,
            TriangleKind::AAlt => n + 1,
            TriangleKind::W => (n - 1) / 2 + 1,
            TriangleKind::Wtilde => n / 2 + 1,
        }
    }

    pub fn generate(self, n_max: usize) -> Result<Triangle, TriangleError> {
        match self {
            TriangleKind::R => triangle_r(n_max),
            TriangleKind::AAlt => triangle_a(n_max),
            TriangleKind::W => triangle_w(n_max),
            TriangleKind::Wtilde => triangle_wtilde(n_max),
            TriangleKind::Euler => triangle_euler(n_max),
        }
    }
}

impl FromStr for TriangleKind {
    type Err = TriangleError;
    fn from_str(s: &str) -> Result<Self, TriangleError> {
        TriangleKind::ALL
            .into_iter()
            .find(|k| k.cli_name() == s)
            .ok_or_else(|| TriangleError::UnknownName(s.to_string()))
    }
}

impl fmt::Display for TriangleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.cli_name())
    }
}

/// Rows `first_row..=n_max` stored densely from `k = 0`, with explicit zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangle {
    kind: TriangleKind,
    rows: Vec<Vec<BigInt>>,
}

impl Triangle {
    fn build(
        kind: TriangleKind,
        n_max: usize,
        mut entry: impl FnMut(&[BigInt], usize, usize) -> BigInt,
        seed: Vec<BigInt>,
    ) -> Result<Self, TriangleError> {
        check_range(kind.cli_name(), n_max, kind.first_row())?;
        let mut rows = vec![seed];
        for n in kind.first_row() + 1..=n_max {
            let prev = rows.last().expect("seed row");
            let row = (0..kind.row_len(n)).map(|k| entry(prev, n, k)).collect();
            rows.push(row);
        }
        Ok(Triangle { kind, rows })
    }

    fn from_family(kind: TriangleKind, family: &PolyFamily) -> Self {
        let rows = family
            .polys
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let n = family.first + i;
                let ints = p.integer_coeffs().expect("family is integral");
                (0..kind.row_len(n))
                    .map(|k| ints.get(k).cloned().unwrap_or_default())
                    .collect()
            })
            .collect();
        Triangle { kind, rows }
    }

    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    pub fn first_row(&self) -> usize {
        self.kind.first_row()
    }

    pub fn n_max(&self) -> usize {
        self.first_row() + self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> Option<&[BigInt]> {
        n.checked_sub(self.first_row())
            .and_then(|i| self.rows.get(i))
            .map(Vec::as_slice)
    }

    /// Entry `(n, k)`, zero outside the stored range.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        self.row(n)
            .and_then(|r| r.get(k))
            .cloned()
            .unwrap_or_default()
    }

    /// Overwrites one stored entry; used to inject faults into the harness.
    pub fn set(&mut self, n: usize, k: usize, value: BigInt) -> bool {
        let Some(i) = n.checked_sub(self.first_row()) else {
            return false;
        };
        match self.rows.get_mut(i).and_then(|r| r.get_mut(k)) {
            Some(slot) => {
                *slot = value;
                true
            }
            None => false,
        }
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &[BigInt])> {
        let first = self.first_row();
        self.rows
            .iter()
            .enumerate()
            .map(move |(i, r)| (first + i, r.as_slice()))
    }

    pub fn row_sum(&self, n: usize) -> BigInt {
        self.row(n).map(|r| r.iter().sum()).unwrap_or_default()
    }

    /// Row `n` as a polynomial `Σ_k T(n,k) x^k`.
    pub fn row_poly(&self, n: usize) -> Option<RatPoly> {
        self.row(n).map(|r| RatPoly::from_ints(r.iter().cloned()))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.rows.iter().flatten().all(|v| !v.is_negative())
    }
}

fn check_range(family: &'static str, n_max: usize, min: usize) -> Result<(), TriangleError> {
    if n_max < min {
        Err(TriangleError::InvalidRange { family, n_max, min })
    } else {
        Ok(())
    }
}

fn at(row: &[BigInt], k: isize) -> BigInt {
    usize::try_from(k)
        .ok()
        .and_then(|k| row.get(k))
        .cloned()
        .unwrap_or_default()
}

/// `R(n,k) = k R(n−1,k) + 2 R(n−1,k−1) + (n−k) R(n−1,k−2)`, `R(1,0) = 1`.
pub fn triangle_r(n_max: usize) -> Result<Triangle, TriangleError> {
    Triangle::build(
        TriangleKind::R,
        n_max,
        |prev, n, k| {
            let k = k as isize;
            let n = n as isize;
            k * at(prev, k) + 2 * at(prev, k - 1) + (n - k) * at(prev, k - 2)
        },
        vec![BigInt::from(1)],
    )
}

/// `a_k(n) = k a_k(n−1) + a_{k−1}(n−1) + (n−k+1) a_{k−2}(n−1)`, `a_0(0) = 1`.
pub fn triangle_a(n_max: usize) -> Result<Triangle, TriangleError> {
    Triangle::build(
        TriangleKind::AAlt,
        n_max,
        |prev, n, k| {
            let k = k as isize;
            let n = n as isize;
            k * at(prev, k) + at(prev, k - 1) + (n - k + 1) * at(prev, k - 2)
        },
        vec![BigInt::from(1)],
    )
}

pub fn triangle_w(n_max: usize) -> Result<Triangle, TriangleError> {
    Ok(Triangle::from_family(TriangleKind::W, &poly_w(n_max)?))
}

pub fn triangle_wtilde(n_max: usize) -> Result<Triangle, TriangleError> {
    Ok(Triangle::from_family(
        TriangleKind::Wtilde,
        &poly_wtilde(n_max)?,
    ))
}

/// Eulerian numbers read off `Dⁿ(x) = x Σ_k ⟨n,k⟩ x^k y^{n−k}` for the
/// grammar `{x → xy, y → xy}`.
pub fn triangle_euler(n_max: usize) -> Result<Triangle, TriangleError> {
    check_range("euler", n_max, 1)?;
    let seq = Grammar::dumont()
        .derive_sequence(&MPoly::letter('x'), n_max)
        .expect("x is in the alphabet");
    let rows = (1..=n_max)
        .map(|n| {
            (0..n)
                .map(|k| {
                    seq[n].coeff(&Monomial::from_exponents([
                        ('x', k as u32 + 1),
                        ('y', (n - k) as u32),
                    ]))
                })
                .collect()
        })
        .collect();
    Ok(Triangle {
        kind: TriangleKind::Euler,
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    Rn,
    Tn,
    Wn,
    Wtilden,
    An,
    Pn,
}

impl FamilyKind {
    fn label(self) -> &'static str {
        match self {
            FamilyKind::Rn => "R",
            FamilyKind::Tn => "T",
            FamilyKind::Wn => "W",
            FamilyKind::Wtilden => "Wtilde",
            FamilyKind::An => "A",
            FamilyKind::Pn => "P",
        }
    }
}

/// Polynomials `first..=n_max` of one family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFamily {
    pub kind: FamilyKind,
    first: usize,
    polys: Vec<RatPoly>,
}

impl PolyFamily {
    pub fn new(kind: FamilyKind, first: usize, polys: Vec<RatPoly>) -> Self {
        PolyFamily { kind, first, polys }
    }

    pub fn first(&self) -> usize {
        self.first
    }

    pub fn n_max(&self) -> usize {
        self.first + self.polys.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&RatPoly> {
        n.checked_sub(self.first).and_then(|i| self.polys.get(i))
    }

    /// Like [`get`](Self::get) but panics outside the generated range.
    pub fn at(&self, n: usize) -> &RatPoly {
        self.get(n).unwrap_or_else(|| {
            panic!(
                "{}_{n} not generated (range {}..={})",
                self.kind.label(),
                self.first,
                self.n_max()
            )
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &RatPoly)> {
        self.polys
            .iter()
            .enumerate()
            .map(move |(i, p)| (self.first + i, p))
    }
}

/// Runs `next = step(n, current)` from a seed, checking integrality and any
/// additional printed seed values along the way.
fn iterate_family(
    kind: FamilyKind,
    first: usize,
    seed: RatPoly,
    n_max: usize,
    printed: &BTreeMap<usize, RatPoly>,
    step: impl Fn(usize, &RatPoly) -> RatPoly,
) -> Result<PolyFamily, TriangleError> {
    check_range(kind.label(), n_max, first)?;
    let mut polys = vec![seed];
    for n in first..n_max {
        let next = step(n, polys.last().expect("seed"));
        if !next.is_integral() {
            return Err(TriangleError::NonIntegral {
                family: kind.label(),
                n: n + 1,
                poly: next.to_string(),
            });
        }
        if let Some(expected) = printed.get(&(n + 1)) {
            if *expected != next {
                return Err(TriangleError::SeedMismatch {
                    family: kind.label(),
                    n: n + 1,
                    expected: expected.to_string(),
                    got: next.to_string(),
                });
            }
        }
        polys.push(next);
    }
    Ok(PolyFamily { kind, first, polys })
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `a + b·x`.
fn linear(a: i64, b: i64) -> RatPoly {
    RatPoly::from_coeffs(vec![int(a), int(b)])
}

/// `W_{n+1} = (nx − x + 2) W_n + 2x(1 − x) W_n'`, from `W_1 = 1`; the
/// printed values `W_2 = 2` and `W_3 = 4 + 2x` are checked, not assumed.
pub fn poly_w(n_max: usize) -> Result<PolyFamily, TriangleError> {
    let printed = [
        (2, RatPoly::from_ints([2])),
        (3, RatPoly::from_ints([4, 2])),
    ]
    .into();
    let two_x_one_minus_x = RatPoly::from_ints([0, 2, -2]);
    iterate_family(
        FamilyKind::Wn,
        1,
        RatPoly::one(),
        n_max,
        &printed,
        |n, w| &(&linear(2, n as i64 - 1) * w) + &(&two_x_one_minus_x * &w.derivative()),
    )
}

/// `W̃_{n+1} = (nx + 1) W̃_n + 2x(1 − x) W̃_n'`, from `W̃_0 = 1`; checks the
/// printed `W̃_1 = 1`, `W̃_2 = 1 + x`, `W̃_3 = 1 + 5x`.
pub fn poly_wtilde(n_max: usize) -> Result<PolyFamily, TriangleError> {
    let printed = [
        (1, RatPoly::one()),
        (2, RatPoly::from_ints([1, 1])),
        (3, RatPoly::from_ints([1, 5])),
    ]
    .into();
    let two_x_one_minus_x = RatPoly::from_ints([0, 2, -2]);
    iterate_family(
        FamilyKind::Wtilden,
        0,
        RatPoly::one(),
        n_max,
        &printed,
        |n, w| &(&linear(1, n as i64) * w) + &(&two_x_one_minus_x * &w.derivative()),
    )
}

/// `R_{n+1} = x((n−1)x + 2) R_n + x(1 − x²) R_n'`, from `R_1 = 1`.
pub fn poly_r(n_max: usize) -> Result<PolyFamily, TriangleError> {
    let printed = [
        (2, RatPoly::from_ints([0, 2])),
        (3, RatPoly::from_ints([0, 2, 4])),
        (4, RatPoly::from_ints([0, 2, 12, 10])),
        (5, RatPoly::from_ints([0, 2, 28, 58, 32])),
    ]
    .into();
    let x_one_minus_x2 = RatPoly::from_ints([0, 1, 0, -1]);
    iterate_family(
        FamilyKind::Rn,
        1,
        RatPoly::one(),
        n_max,
        &printed,
        |n, r| {
            let factor = &RatPoly::x() * &linear(2, n as i64 - 1);
            &(&factor * r) + &(&x_one_minus_x2 * &r.derivative())
        },
    )
}

/// `T_{n+1} = x(nx + 1) T_n + x(1 − x²) T_n'`, from `T_0 = 1`; checks `T_1 = x`.
pub fn poly_t(n_max: usize) -> Result<PolyFamily, TriangleError> {
    let printed = [(1, RatPoly::x())].into();
    let x_one_minus_x2 = RatPoly::from_ints([0, 1, 0, -1]);
    iterate_family(
        FamilyKind::Tn,
        0,
        RatPoly::one(),
        n_max,
        &printed,
        |n, t| {
            let factor = &RatPoly::x() * &linear(1, n as i64);
            &(&factor * t) + &(&x_one_minus_x2 * &t.derivative())
        },
    )
}

/// Tangent derivative polynomials: `P_0 = x`, `P_{n+1} = (1 + x²) P_n'`.
pub fn poly_p(n_max: usize) -> Result<PolyFamily, TriangleError> {
    let one_plus_x2 = RatPoly::from_ints([1, 0, 1]);
    iterate_family(
        FamilyKind::Pn,
        0,
        RatPoly::x(),
        n_max,
        &BTreeMap::new(),
        |_, p| &one_plus_x2 * &p.derivative(),
    )
}

/// Eulerian polynomials `A_n(x) = x Σ_k ⟨n,k⟩ x^k`, obtained by collapsing
/// `Dⁿ(x)` of `{x → xy, y → xy}` under `x ↦ x, y ↦ 1`.
pub fn poly_a(n_max: usize) -> Result<PolyFamily, TriangleError> {
    check_range("A", n_max, 1)?;
    let seq = Grammar::dumont()
        .derive_sequence(&MPoly::letter('x'), n_max)
        .expect("x is in the alphabet");
    let asg = [('x', RatPoly::x()), ('y', RatPoly::one())].into();
    let polys = seq[1..]
        .iter()
        .map(|p| crate::grammar::collapse(p, &asg).expect("assignment covers x, y"))
        .collect();
    Ok(PolyFamily::new(FamilyKind::An, 1, polys))
}

/// The polynomials `Σ_k T(n,k) x^k` of a triangle's rows, as a family.
pub fn family_from_triangle(kind: FamilyKind, t: &Triangle) -> PolyFamily {
    let polys = t
        .rows()
        .map(|(n, _)| t.row_poly(n).expect("row exists"))
        .collect();
    PolyFamily::new(kind, t.first_row(), polys)
}

/// Degree each generated polynomial must have.
pub fn expected_degree(kind: FamilyKind, n: usize) -> Option<usize> {
    match kind {
        FamilyKind::Rn if n >= 2 => Some(n - 1),
        FamilyKind::Rn => Some(0),
        FamilyKind::Tn => Some(n),
        FamilyKind::Wn => Some((n - 1) / 2),
        FamilyKind::Wtilden => Some(n / 2),
        FamilyKind::An => Some(n),
        FamilyKind::Pn => Some(n + 1),
    }
}
