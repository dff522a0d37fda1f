//! Context-free grammars on single-letter alphabets and the formal derivative
//! they induce on polynomials.
//!
//! A grammar maps each letter of an alphabet to a polynomial over the same
//! alphabet. The derivative `D` is the unique linear operator obeying the
//! product rule with `D(ℓ) = rule(ℓ)` on letters, so on a monomial
//!
//! ```text
//! D(m) = Σ_ℓ e_ℓ(m) · (m / ℓ) · rule(ℓ)
//! ```

mod mpoly;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactnum::{binomial, RatPoly, Rational};

pub use mpoly::{MPoly, Monomial};
pub use parse::parse_mpoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown character {ch:?} at offset {pos}")]
    UnknownCharacter { pos: usize, ch: char },
    #[error("duplicate rule for letter {letter:?} at offset {pos}")]
    DuplicateRule { pos: usize, letter: char },
    #[error("letter {0:?} appears on a right-hand side but has no rule")]
    UndeclaredLetter(char),
    #[error("letter {0:?} is not in the grammar's alphabet")]
    UnknownLetter(char),
    #[error("no substitution given for letter {0:?}")]
    MissingAssignment(char),
    #[error("unknown builtin grammar {0:?} (expected main, dumont, peaks or schett)")]
    UnknownBuiltin(String),
}

/// Substitution rules `letter -> polynomial`, closed over their alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    rules: BTreeMap<char, MPoly>,
}

impl Grammar {
    pub fn new(rules: BTreeMap<char, MPoly>) -> Result<Self, GrammarError> {
        for rhs in rules.values() {
            for (m, _) in rhs.terms() {
                if let Some((l, _)) = m.exponents().find(|(l, _)| !rules.contains_key(l)) {
                    return Err(GrammarError::UndeclaredLetter(l));
                }
            }
        }
        Ok(Grammar { rules })
    }

    pub fn parse(spec: &str) -> Result<Self, GrammarError> {
        Self::new(parse::parse_rules(spec)?)
    }

    /// `{x → xy, y → yz, z → y²}`, the grammar for alternating runs.
    pub fn main() -> Self {
        Self::parse("x -> x*y; y -> y*z; z -> y^2").expect("builtin grammar")
    }

    /// `{x → xy, y → xy}`, generating the Eulerian polynomials.
    pub fn dumont() -> Self {
        Self::parse("x -> x*y; y -> x*y").expect("builtin grammar")
    }

    /// `{y → yz, z → y²}`, generating the peak polynomials.
    pub fn peaks() -> Self {
        Self::parse("y -> y*z; z -> y^2").expect("builtin grammar")
    }

    pub fn schett() -> Self {
        Self::parse("x -> y*z; y -> x*z; z -> x*y").expect("builtin grammar")
    }

    pub fn builtin(name: &str) -> Result<Self, GrammarError> {
        match name {
            "main" => Ok(Self::main()),
            "dumont" => Ok(Self::dumont()),
            "peaks" => Ok(Self::peaks()),
            "schett" => Ok(Self::schett()),
            _ => Err(GrammarError::UnknownBuiltin(name.to_string())),
        }
    }

    pub fn rule(&self, letter: char) -> Option<&MPoly> {
        self.rules.get(&letter)
    }

    pub fn alphabet(&self) -> impl Iterator<Item = char> + '_ {
        self.rules.keys().copied()
    }

    fn check_letters(&self, p: &MPoly) -> Result<(), GrammarError> {
        match p
            .letters()
            .into_iter()
            .find(|l| !self.rules.contains_key(l))
        {
            Some(l) => Err(GrammarError::UnknownLetter(l)),
            None => Ok(()),
        }
    }

    /// One application of `D`.
    pub fn derive(&self, p: &MPoly) -> Result<MPoly, GrammarError> {
        self.check_letters(p)?;
        Ok(self.derive_unchecked(p))
    }

    fn derive_unchecked(&self, p: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (mono, coeff) in p.terms() {
            for (letter, e) in mono.exponents() {
                let rest = mono.lower(letter).expect("letter present");
                let scaled = coeff * BigInt::from(e);
                for (rm, rc) in self.rules[&letter].terms() {
                    out.add_term(rest.mul(rm), &scaled * rc);
                }
            }
        }
        out
    }

    /// `Dⁿ(p)`.
    pub fn derive_n(&self, p: &MPoly, n: usize) -> Result<MPoly, GrammarError> {
        self.check_letters(p)?;
        Ok((0..n).fold(p.clone(), |acc, _| self.derive_unchecked(&acc)))
    }

    /// `[p, D(p), …, Dⁿ(p)]`.
    pub fn derive_sequence(&self, p: &MPoly, n: usize) -> Result<Vec<MPoly>, GrammarError> {
        self.check_letters(p)?;
        let mut seq = Vec::with_capacity(n + 1);
        seq.push(p.clone());
        for k in 0..n {
            let next = self.derive_unchecked(&seq[k]);
            seq.push(next);
        }
        Ok(seq)
    }
}

impl FromStr for Grammar {
    type Err = GrammarError;
    fn from_str(s: &str) -> Result<Self, GrammarError> {
        Self::parse(s)
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .rules
            .iter()
            .map(|(l, r)| format!("{l} -> {r}"))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

pub fn parse_grammar(spec: &str) -> Result<Grammar, GrammarError> {
    Grammar::parse(spec)
}

pub fn d_apply(g: &Grammar, p: &MPoly) -> Result<MPoly, GrammarError> {
    g.derive(p)
}

pub fn d_power(g: &Grammar, p: &MPoly, n: usize) -> Result<MPoly, GrammarError> {
    g.derive_n(p, n)
}

/// Substitutes a univariate polynomial for every letter and expands.
pub fn collapse(p: &MPoly, assignment: &BTreeMap<char, RatPoly>) -> Result<RatPoly, GrammarError> {
    let mut powers: BTreeMap<(char, u32), RatPoly> = BTreeMap::new();
    let mut total = RatPoly::zero();
    for (mono, coeff) in p.terms() {
        let mut term = RatPoly::constant(Rational::from_integer(coeff.clone()));
        for (letter, e) in mono.exponents() {
            let base = assignment
                .get(&letter)
                .ok_or(GrammarError::MissingAssignment(letter))?;
            let power = powers.entry((letter, e)).or_insert_with(|| base.pow(e));
            term = &term * power;
        }
        total = &total + &term;
    }
    Ok(total)
}

/// Evaluates both sides of `Dⁿ(uv) = Σ_k C(n,k) Dᵏ(u) D^{n−k}(v)`.
pub fn leibniz_sides(
    g: &Grammar,
    u: &MPoly,
    v: &MPoly,
    n: usize,
) -> Result<(MPoly, MPoly), GrammarError> {
    let lhs = g.derive_n(&(u * v), n)?;
    let du = g.derive_sequence(u, n)?;
    let dv = g.derive_sequence(v, n)?;
    let mut rhs = MPoly::zero();
    for k in 0..=n {
        let c = binomial(n as u32, k as u32);
        rhs = &rhs + &(&du[k] * &dv[n - k]).scale(&c);
    }
    Ok((lhs, rhs))
}

pub fn leibniz_check(g: &Grammar, u: &MPoly, v: &MPoly, n: usize) -> Result<bool, GrammarError> {
    let (lhs, rhs) = leibniz_sides(g, u, v, n)?;
    Ok(lhs == rhs)
}
