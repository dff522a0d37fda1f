//! Brute-force ground truth: enumeration of `S_n` and direct computation of
//! the permutation statistics (alternating runs, interior and left peaks,
//! longest alternating subsequence, descents).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest `n` the enumeration oracle accepts.
pub const MAX_ORACLE_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("n = {0} outside the oracle range 1..={MAX_ORACLE_N}")]
    OutOfRange(usize),
    #[error("not a permutation of 1..={n}: {values:?}")]
    NotBijective { n: usize, values: Vec<usize> },
    #[error("cannot parse permutation {0:?}")]
    Parse(String),
    #[error("unknown statistic {0:?}")]
    UnknownStat(String),
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self, PermError> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(PermError::NotBijective { n, values });
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `π(i) ↦ n + 1 − π(i)`.
    pub fn complement(&self) -> Self {
        let n = self.len();
        Permutation {
            values: self.values.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    pub fn reverse(&self) -> Self {
        Permutation {
            values: self.values.iter().rev().copied().collect(),
        }
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Accepts `21435` (single digits) or separated values such as `2 1 4 3 5`
    /// and `10,9,8`.
    fn from_str(s: &str) -> Result<Self, PermError> {
        let bad = || PermError::Parse(s.to_string());
        let s = s.trim();
        let values: Vec<usize> = if s.contains([' ', ',']) {
            s.split([' ', ','])
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_, _>>()?
        };
        Permutation::new(values)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.len() > 9 { " " } else { "" };
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(sep))
    }
}

/// Rearranges `a` into the next permutation in lexicographic order; returns
/// `false` (leaving `a` sorted ascending) after the last one.
fn next_permutation(a: &mut [usize]) -> bool {
    let Some(i) = a.windows(2).rposition(|w| w[0] < w[1]) else {
        a.reverse();
        return false;
    };
    let j = a
        .iter()
        .rposition(|&x| x > a[i])
        .expect("pivot has a successor");
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// Lexicographic iterator over the permutations of `1..=n`, optionally
/// restricted to those starting with a fixed value.
pub struct PermutationIter {
    current: Option<Vec<usize>>,
    first: Option<usize>,
}

impl Iterator for PermutationIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.as_mut()?;
        let out = Permutation {
            values: cur.clone(),
        };
        let more = next_permutation(cur);
        if !more || self.first.is_some_and(|f| cur[0] != f) {
            self.current = None;
        }
        Some(out)
    }
}

fn check_range(n: usize) -> Result<(), PermError> {
    if (1..=MAX_ORACLE_N).contains(&n) {
        Ok(())
    } else {
        Err(PermError::OutOfRange(n))
    }
}

/// All `n!` permutations of `1..=n` in lexicographic order.
pub fn enumerate_sn(n: usize) -> Result<PermutationIter, PermError> {
    check_range(n)?;
    Ok(PermutationIter {
        current: Some((1..=n).collect()),
        first: None,
    })
}

/// The `(n-1)!` permutations that start with `first`, in lexicographic order.
fn enumerate_with_first(n: usize, first: usize) -> PermutationIter {
    let mut start = vec![first];
    start.extend((1..=n).filter(|&v| v != first));
    PermutationIter {
        current: Some(start),
        first: Some(first),
    }
}

fn changes_direction(v: &[usize], i: usize) -> bool {
    (v[i - 1] < v[i] && v[i] > v[i + 1]) || (v[i - 1] > v[i] && v[i] < v[i + 1])
}

/// One more than the number of direction changes; `0` for `n = 1`.
pub fn alternating_runs(p: &Permutation) -> usize {
    let v = &p.values;
    if v.len() < 2 {
        return 0;
    }
    1 + (1..v.len() - 1)
        .filter(|&i| changes_direction(v, i))
        .count()
}

pub fn interior_peaks(p: &Permutation) -> usize {
    let v = &p.values;
    v.windows(3).filter(|w| w[0] < w[1] && w[1] > w[2]).count()
}

pub fn interior_valleys(p: &Permutation) -> usize {
    let v = &p.values;
    v.windows(3).filter(|w| w[0] > w[1] && w[1] < w[2]).count()
}

/// Peaks with the sentinel `π(0) = 0`, so position 1 counts when `π(1) > π(2)`.
pub fn left_peaks(p: &Permutation) -> usize {
    let v = &p.values;
    let first = usize::from(v.len() >= 2 && v[0] > v[1]);
    first + interior_peaks(p)
}

/// Length of the longest subsequence `π(i₁) > π(i₂) < π(i₃) > ⋯`.
///
/// Two-state DP over end positions: `want_down[j]` is the best length of a
/// valid subsequence ending at `j` whose next comparison must be a descent,
/// `want_up[j]` the same when the next step must rise. Every singleton starts
/// in the descent-wanted state.
pub fn longest_alt_subseq(p: &Permutation) -> usize {
    let v = &p.values;
    let n = v.len();
    let mut want_down = vec![1usize; n];
    let mut want_up = vec![0usize; n];
    for j in 0..n {
        for i in 0..j {
            if v[i] > v[j] && want_down[i] > 0 {
                want_up[j] = want_up[j].max(want_down[i] + 1);
            }
            if v[i] < v[j] && want_up[i] > 0 {
                want_down[j] = want_down[j].max(want_up[i] + 1);
            }
        }
    }
    want_down.into_iter().chain(want_up).max().unwrap_or(0)
}

pub fn descents(p: &Permutation) -> usize {
    p.values.windows(2).filter(|w| w[0] > w[1]).count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stat {
    Runs,
    InteriorPeaks,
    LeftPeaks,
    LongestAltSubseq,
    Descents,
}

impl Stat {
    pub const ALL: [Stat; 5] = [
        Stat::Runs,
        Stat::InteriorPeaks,
        Stat::LeftPeaks,
        Stat::LongestAltSubseq,
        Stat::Descents,
    ];

    pub fn eval(self, p: &Permutation) -> usize {
        match self {
            Stat::Runs => alternating_runs(p),
            Stat::InteriorPeaks => interior_peaks(p),
            Stat::LeftPeaks => left_peaks(p),
            Stat::LongestAltSubseq => longest_alt_subseq(p),
            Stat::Descents => descents(p),
        }
    }

    /// Short command-line name.
    pub fn cli_name(self) -> &'static str {
        match self {
            Stat::Runs => "runs",
            Stat::InteriorPeaks => "peaks",
            Stat::LeftPeaks => "leftpeaks",
            Stat::LongestAltSubseq => "altsubseq",
            Stat::Descents => "descents",
        }
    }
}

impl FromStr for Stat {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, PermError> {
        Ok(match s {
            "runs" => Stat::Runs,
            "peaks" | "interior_peaks" => Stat::InteriorPeaks,
            "leftpeaks" | "left_peaks" => Stat::LeftPeaks,
            "altsubseq" | "longest_alt_subseq" => Stat::LongestAltSubseq,
            "descents" | "euler" => Stat::Descents,
            _ => return Err(PermError::UnknownStat(s.to_string())),
        })
    }
}

/// Exact histogram of a statistic over `S_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatDistribution {
    pub n: usize,
    pub stat: Stat,
    pub counts: BTreeMap<usize, BigInt>,
}

impl StatDistribution {
    pub fn total(&self) -> BigInt {
        self.counts.values().sum()
    }

    pub fn get(&self, k: usize) -> BigInt {
        self.counts.get(&k).cloned().unwrap_or_else(BigInt::zero)
    }
}

impl fmt::Display for StatDistribution {
    /// `{1:2, 2:12, 3:10}`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .counts
            .iter()
            .map(|(k, c)| format!("{k}:{c}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Histogram of `stat` over `S_n`, partitioned across worker threads by the
/// first letter of the permutation.
pub fn distribution(stat: Stat, n: usize) -> Result<StatDistribution, PermError> {
    check_range(n)?;
    let counts = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut local: BTreeMap<usize, u64> = BTreeMap::new();
            for p in enumerate_with_first(n, first) {
                *local.entry(stat.eval(&p)).or_default() += 1;
            }
            local
        })
        .reduce(BTreeMap::new, |mut acc, part| {
            for (k, c) in part {
                *acc.entry(k).or_default() += c;
            }
            acc
        });
    Ok(StatDistribution {
        n,
        stat,
        counts: counts
            .into_iter()
            .map(|(k, c)| (k, BigInt::from(c)))
            .collect(),
    })
}

/// `n!` as a big integer.
pub fn count_sn(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}
