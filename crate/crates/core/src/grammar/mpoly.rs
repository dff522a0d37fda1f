use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A commutative monomial `∏ ℓ^{e_ℓ}`; zero exponents are never stored.
///
/// The derived ordering compares the sorted `(letter, exponent)` lists
/// lexicographically, which is also the canonical term order for output.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(BTreeMap<char, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn letter(c: char) -> Self {
        Self::power(c, 1)
    }

    pub fn power(c: char, e: u32) -> Self {
        let mut m = BTreeMap::new();
        if e > 0 {
            m.insert(c, e);
        }
        Monomial(m)
    }

    pub fn from_exponents<I: IntoIterator<Item = (char, u32)>>(exps: I) -> Self {
        let mut m = Monomial::one();
        for (c, e) in exps {
            m = m.mul(&Monomial::power(c, e));
        }
        m
    }

    pub fn exponent(&self, c: char) -> u32 {
        self.0.get(&c).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (char, u32)> + '_ {
        self.0.iter().map(|(&c, &e)| (c, e))
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (&c, &e) in &other.0 {
            *out.entry(c).or_insert(0) += e;
        }
        Monomial(out)
    }

    /// The monomial with the exponent of `c` lowered by one, if present.
    pub fn lower(&self, c: char) -> Option<Monomial> {
        let e = *self.0.get(&c)?;
        let mut out = self.0.clone();
        if e == 1 {
            out.remove(&c);
        } else {
            out.insert(c, e - 1);
        }
        Some(Monomial(out))
    }
}

impl fmt::Display for Monomial {
    /// `x^2*y*z`; the empty monomial prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents()
            .map(|(c, e)| {
                if e == 1 {
                    c.to_string()
                } else {
                    format!("{c}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse multivariate polynomial with big-integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        Self::term(BigInt::one(), Monomial::one())
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::term(c.into(), Monomial::one())
    }

    pub fn letter(c: char) -> Self {
        Self::term(BigInt::one(), Monomial::letter(c))
    }

    pub fn term(coeff: BigInt, mono: Monomial) -> Self {
        let mut p = MPoly::zero();
        p.add_term(mono, coeff);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut p = MPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff(&self, mono: &Monomial) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn letters(&self) -> std::collections::BTreeSet<char> {
        self.terms
            .keys()
            .flat_map(|m| m.exponents().map(|(c, _)| c))
            .collect()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// `self · (coeff · mono)`.
    pub fn mul_term(&self, mono: &Monomial, coeff: &BigInt) -> Self {
        if coeff.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c * coeff))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(MPoly::one(), |acc, _| &acc * self)
    }

    /// Sorted term list in the JSON shape `[{"coeff":"2","mono":{"x":2,"y":1}}]`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("MPoly serializes")
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for MPoly {
    /// `2*x^2*y*z + 4*x^2*y^2` in canonical term order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            match (mag.is_one(), m.is_one()) {
                (_, true) => write!(f, "{mag}")?,
                (true, false) => write!(f, "{m}")?,
                (false, false) => write!(f, "{mag}*{m}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    coeff: String,
    mono: BTreeMap<char, u32>,
}

impl Serialize for MPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|(m, c)| TermRecord {
                coeff: c.to_string(),
                mono: m.0.clone(),
            })
            .collect();
        records.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        let mut p = MPoly::zero();
        for r in records {
            let c: BigInt = r.coeff.parse().map_err(serde::de::Error::custom)?;
            p.add_term(Monomial::from_exponents(r.mono), c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_display_order() {
        let p = MPoly::from_terms([
            (
                Monomial::from_exponents([('x', 2), ('y', 2)]),
                BigInt::from(4),
            ),
            (
                Monomial::from_exponents([('x', 2), ('y', 1), ('z', 1)]),
                BigInt::from(2),
            ),
        ]);
        assert_eq!(p.to_string(), "2*x^2*y*z + 4*x^2*y^2");
        assert_eq!(MPoly::zero().to_string(), "0");
        assert_eq!(MPoly::constant(-3).to_string(), "-3");
        assert_eq!(
            (&MPoly::letter('x') - &MPoly::letter('y')).to_string(),
            "x - y"
        );
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = MPoly::letter('x');
        assert!((&x - &x).is_zero());
        assert_eq!((&x + &x).coeff(&Monomial::letter('x')), BigInt::from(2));
    }

    #[test]
    fn json_shape() {
        let p = MPoly::term(
            BigInt::from(2),
            Monomial::from_exponents([('x', 2), ('y', 1)]),
        );
        assert_eq!(
            p.to_json().to_string(),
            r#"[{"coeff":"2","mono":{"x":2,"y":1}}]"#
        );
        let back: MPoly = serde_json::from_value(p.to_json()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn lowering_exponents() {
        let m = Monomial::from_exponents([('x', 2), ('y', 1)]);
        assert_eq!(m.lower('y'), Some(Monomial::power('x', 2)));
        assert_eq!(
            m.lower('x'),
            Some(Monomial::from_exponents([('x', 1), ('y', 1)]))
        );
        assert_eq!(m.lower('z'), None);
    }
}
