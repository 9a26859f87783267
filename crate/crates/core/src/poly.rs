//! Sparse multivariate polynomials over [`Dyadic`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{Dyadic, Valuation};
use crate::text;

/// Exponent vector of a monomial `x1^j1 * ... * xn^jn`.
///
/// Ordered by total degree, then lexicographically descending, so a
/// `BTreeMap` iterates in graded-lex display order (`x1^2, x1*x2, x2^2, ...`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exps: Vec<u32>) -> Self {
        MultiIndex(exps)
    }

    pub fn zero(arity: usize) -> Self {
        MultiIndex(vec![0; arity])
    }

    /// `x_{i+1}^e` (0-based variable index).
    pub fn var_power(arity: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; arity];
        v[i] = e;
        MultiIndex(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn mul(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A polynomial in `arity` variables with exact 2-adic rational coefficients.
///
/// No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<MultiIndex, Dyadic>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Polynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Dyadic) -> Self {
        Polynomial::monomial(MultiIndex::zero(arity), c)
    }

    pub fn one(arity: usize) -> Self {
        Polynomial::constant(arity, Dyadic::one())
    }

    pub fn monomial(index: MultiIndex, c: Dyadic) -> Self {
        let mut p = Polynomial::zero(index.arity());
        p.add_term(index, c);
        p
    }

    /// `x_{i+1}` (0-based variable index).
    pub fn var(arity: usize, i: usize) -> Self {
        Polynomial::monomial(MultiIndex::var_power(arity, i, 1), Dyadic::one())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Dyadic)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<MultiIndex, Dyadic> {
        self.terms
    }

    pub fn coeff(&self, index: &MultiIndex) -> Dyadic {
        self.terms.get(index).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, index: MultiIndex, c: Dyadic) {
        assert_eq!(index.arity(), self.arity, "monomial arity");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(index) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (MultiIndex, Dyadic)>) -> Self {
        let mut p = Polynomial::zero(arity);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Highest total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(MultiIndex::degree)
    }

    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(MultiIndex::degree)
    }

    /// The common degree of all terms, `None` if zero or mixed.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        match (self.low_degree(), self.degree()) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        }
    }

    pub fn graded_part(&self, d: u32) -> Polynomial {
        Polynomial::from_terms(
            self.arity,
            self.terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Nonzero homogeneous components keyed by degree.
    pub fn graded_parts(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Polynomial::zero(self.arity))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Drop every term of degree above `n`.
    pub fn truncate(&self, n: u32) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Dyadic) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    fn check_arity(&self, other: &Polynomial) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        let mut out = Polynomial::zero(self.arity);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Product truncated to total degree `n`.
    pub fn mul_truncated(&self, other: &Polynomial, n: u32) -> Polynomial {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        let mut out = Polynomial::zero(self.arity);
        for (m1, c1) in &self.terms {
            let d1 = m1.degree();
            if d1 > n {
                break;
            }
            for (m2, c2) in &other.terms {
                if d1 + m2.degree() > n {
                    break;
                }
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.arity);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Smallest coefficient valuation; infinite for zero.
    pub fn min_valuation(&self) -> Valuation {
        self.terms
            .values()
            .map(Dyadic::valuation)
            .min()
            .unwrap_or(Valuation::Infinite)
    }

    /// The Gauss norm `max |a_J|_2`.
    pub fn gauss_norm(&self) -> Dyadic {
        self.min_valuation().abs()
    }

    /// All coefficients have odd denominator.
    pub fn in_z2(&self) -> bool {
        self.terms.values().all(Dyadic::in_z2)
    }

    /// Reduction mod 2 as the set of monomials with odd coefficient.
    pub fn mod2(&self) -> Result<BTreeSet<MultiIndex>> {
        let mut out = BTreeSet::new();
        for (m, c) in &self.terms {
            if c.mod2()? {
                out.insert(m.clone());
            }
        }
        Ok(out)
    }

    /// Variables occurring in some term.
    pub fn support(&self) -> BTreeSet<usize> {
        self.terms.keys().flat_map(|m| m.support()).collect()
    }

    /// Embed into a polynomial ring with at least as many variables.
    pub fn with_arity(&self, arity: usize) -> Result<Polynomial> {
        if arity < self.arity && self.support().iter().any(|&i| i >= arity) {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: arity,
            });
        }
        Ok(Polynomial::from_terms(
            arity,
            self.terms.iter().map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(arity, 0);
                (MultiIndex(e), c.clone())
            }),
        ))
    }

    /// Parse with a fixed number of variables; `x<i>` with `i > arity` is an error.
    pub fn parse(s: &str, arity: usize) -> Result<Polynomial> {
        let p: Polynomial = s.parse()?;
        if p.arity > arity {
            return Err(Error::Parse(format!(
                "`{s}` uses x{} but only {arity} variable(s) are declared",
                p.arity
            )));
        }
        p.with_arity(arity)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let body = if m.degree() == 0 { String::new() } else { format!("{m}") };
            text::push_term(&mut out, i == 0, c, &body);
        }
        f.write_str(&out)
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Infers the arity from the largest variable index used (at least 1).
    fn from_str(s: &str) -> Result<Polynomial> {
        let mut parsed: Vec<(Vec<(usize, u32)>, Dyadic)> = Vec::new();
        let mut arity = 1usize;
        for (neg, term) in text::split_terms(s)? {
            let mut coeff = Dyadic::one();
            let mut factors = Vec::new();
            for f in text::split_factors(&term)? {
                if let Some(q) = text::parse_number(f) {
                    coeff *= &q;
                    continue;
                }
                let (i, e) = parse_var_power(f)?;
                arity = arity.max(i + 1);
                factors.push((i, e));
            }
            if neg {
                coeff = -coeff;
            }
            parsed.push((factors, coeff));
        }
        let mut p = Polynomial::zero(arity);
        for (factors, c) in parsed {
            let mut e = vec![0u32; arity];
            for (i, k) in factors {
                e[i] += k;
            }
            p.add_term(MultiIndex(e), c);
        }
        Ok(p)
    }
}

fn parse_var_power(f: &str) -> Result<(usize, u32)> {
    let bad = || Error::Parse(format!("invalid monomial factor `{f}`"));
    let rest = f.strip_prefix('x').ok_or_else(bad)?;
    let (idx, exp) = match rest.split_once('^') {
        Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad())?),
        None => (rest, 1),
    };
    let i: usize = if idx.is_empty() {
        1
    } else {
        idx.parse().map_err(|_| bad())?
    };
    if i == 0 {
        return Err(bad());
    }
    Ok((i - 1, exp))
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("arity mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("arity mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("arity mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Dyadic::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(&p("x1 + x1^2") * &p("x1 - x1^2"), p("x1^2 - x1^4"));
        let a = Polynomial::parse("x1 + x1^2", 2).unwrap();
        let b = p("x2 + x2^2");
        assert_eq!(
            &a * &b,
            p("x1*x2 + x1^2*x2 + x1*x2^2 + x1^2*x2^2")
        );
        assert!((&a * &Polynomial::zero(2)).is_zero());
        assert!(p("x1").checked_mul(&b).is_err());
    }

    #[test]
    fn gauss_norms() {
        assert_eq!(p("2*x1 + x2^2").gauss_norm(), Dyadic::one());
        assert_eq!(p("4*x1*x2 + 6*x1^2").gauss_norm(), Dyadic::ratio(1, 2));
        assert_eq!(p("1/3*x1^4").gauss_norm(), Dyadic::one());
        assert_eq!(Polynomial::zero(1).gauss_norm(), Dyadic::zero());
    }

    #[test]
    fn graded_parts() {
        assert_eq!(p("1 + x1 + x1^2").graded_part(1), p("x1"));
        let f = p("x1^2 + 2*x1^3 + x1^4");
        assert_eq!(f.graded_part(3), p("2*x1^3"));
        assert!(f.graded_part(9).is_zero());
        let sum = f
            .graded_parts()
            .values()
            .fold(Polynomial::zero(1), |a, b| &a + b);
        assert_eq!(sum, f);
    }

    #[test]
    fn canonical_format() {
        let f = p("- 1/3*x2^4 + 3*x1^2*x2");
        assert_eq!(f.to_string(), "3*x1^2*x2 - 1/3*x2^4");
        assert_eq!(p("x1^2 + x2^2 + x1*x2 + 1").to_string(), "1 + x1^2 + x1*x2 + x2^2");
        assert_eq!(p("-x1 + x1").to_string(), "0");
        assert_eq!(p("2*3*x1*x1").to_string(), "6*x1^2");
        assert_eq!(p("-(1/2)*x3").arity(), 3);
    }

    #[test]
    fn parse_errors() {
        assert!("x0".parse::<Polynomial>().is_err());
        assert!("y1".parse::<Polynomial>().is_err());
        assert!("x1^".parse::<Polynomial>().is_err());
        assert!(Polynomial::parse("x3", 2).is_err());
    }
}
