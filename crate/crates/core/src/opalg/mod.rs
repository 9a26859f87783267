//! The free operator algebra on `Jq^1, Jq^2, ...` over `Q_2`.
//!
//! Words compose right to left: `Jq2.Jq1` applies `Jq^1` first.

mod classical;
mod eval;
mod hopf;
mod symbolic;

pub use classical::{
    admissible_form, classical_product, nilpotency_degree, phi_reduce, sq_total_f2,
    ClassicalElement, ClassicalWord,
};
pub use eval::{
    annihilates, coordinates, equal_by_evaluation, eval_element, signature, signature_matrix,
    word_coefficient, Coordinate, EvalBounds,
};
pub use hopf::{chi, coproduct, counit, tensor_apply_left, tensor_apply_right, ChiMethod, Tensor};
pub use symbolic::{evaluate_element_on_power, evaluate_on_power, SymbolicPoly};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Dyadic;
use crate::text;

/// A composite `Jq^{k_1} ... Jq^{k_s}`; the empty word is the identity `Jq^0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct OpWord(Vec<u32>);

impl OpWord {
    /// Zero factors are dropped since `Jq^0` is the identity.
    pub fn new(factors: Vec<u32>) -> Self {
        OpWord(factors.into_iter().filter(|&k| k > 0).collect())
    }

    pub fn identity() -> Self {
        OpWord(Vec::new())
    }

    pub fn generator(k: u32) -> Self {
        OpWord::new(vec![k])
    }

    pub fn factors(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &OpWord) -> OpWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        OpWord(v)
    }

    /// All `2^{d-1}` words of degree `d` (compositions of `d`), in word order.
    pub fn compositions(d: u32) -> Vec<OpWord> {
        let mut out = Vec::new();
        compositions_into(d, &mut |_| true, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Words of degree `d` with exactly `t` factors.
    pub fn compositions_of_length(d: u32, t: usize) -> Vec<OpWord> {
        let mut out: Vec<OpWord> = Self::compositions(d)
            .into_iter()
            .filter(|w| w.len() == t)
            .collect();
        out.sort();
        out
    }

    /// Words of degree `d` all of whose factors are powers of two.
    pub fn binary_compositions(d: u32) -> Vec<OpWord> {
        let mut out = Vec::new();
        compositions_into(d, &mut |k| k.is_power_of_two(), &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Words of degree `d` using only the factors 1 and 2.
    pub fn q12_compositions(d: u32) -> Vec<OpWord> {
        let mut out = Vec::new();
        compositions_into(d, &mut |k| k <= 2, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

fn compositions_into(
    d: u32,
    allow: &mut dyn FnMut(u32) -> bool,
    prefix: &mut Vec<u32>,
    out: &mut Vec<OpWord>,
) {
    if d == 0 {
        if !prefix.is_empty() {
            out.push(OpWord(prefix.clone()));
        } else {
            out.push(OpWord::identity());
        }
        return;
    }
    for k in 1..=d {
        if allow(k) {
            prefix.push(k);
            compositions_into(d - k, allow, prefix, out);
            prefix.pop();
        }
    }
}

/// Degree, then length, then factors lexicographically descending:
/// `Jq3 < Jq2.Jq1 < Jq1.Jq2 < Jq1.Jq1.Jq1`.
impl Ord for OpWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for OpWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for OpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("Jq0");
        }
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "Jq{k}")?;
        }
        Ok(())
    }
}

impl FromStr for OpWord {
    type Err = Error;

    /// `Jq2.Jq1`; `Jq1^3` abbreviates `Jq1.Jq1.Jq1`.
    fn from_str(s: &str) -> Result<OpWord> {
        let mut v = Vec::new();
        for part in s.trim().split('.') {
            let bad = || Error::Parse(format!("invalid operator factor `{part}`"));
            let rest = part.trim().strip_prefix("Jq").ok_or_else(bad)?;
            let (k, e) = match rest.split_once('^') {
                Some((k, e)) => (k, e.parse::<u32>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            if k.is_empty() || !k.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let k: u32 = k.parse().map_err(|_| bad())?;
            for _ in 0..e {
                v.push(k);
            }
        }
        Ok(OpWord::new(v))
    }
}

/// A finite `Q_2`-linear combination of words.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct OpElement {
    terms: BTreeMap<OpWord, Dyadic>,
}

impl OpElement {
    pub fn zero() -> Self {
        OpElement::default()
    }

    pub fn one() -> Self {
        OpElement::word(OpWord::identity())
    }

    pub fn scalar(c: Dyadic) -> Self {
        OpElement::term(OpWord::identity(), c)
    }

    pub fn word(w: OpWord) -> Self {
        OpElement::term(w, Dyadic::one())
    }

    pub fn generator(k: u32) -> Self {
        OpElement::word(OpWord::generator(k))
    }

    pub fn term(w: OpWord, c: Dyadic) -> Self {
        let mut e = OpElement::zero();
        e.add_term(w, c);
        e
    }

    /// Contract a coefficient vector against a word list.
    pub fn from_vector(words: &[OpWord], coeffs: &[Dyadic]) -> Self {
        let mut e = OpElement::zero();
        for (w, c) in words.iter().zip(coeffs) {
            e.add_term(w.clone(), c.clone());
        }
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (OpWord, Dyadic)>) -> Self {
        let mut e = OpElement::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn add_term(&mut self, w: OpWord, c: Dyadic) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&OpWord, &Dyadic)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &OpWord) -> Dyadic {
        self.terms.get(w).cloned().unwrap_or_default()
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

    /// Common degree of all words, `None` if zero or mixed.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(OpWord::degree);
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(OpWord::degree).max()
    }

    pub fn graded_part(&self, d: u32) -> OpElement {
        OpElement::from_terms(
            self.terms
                .iter()
                .filter(|(w, _)| w.degree() == d)
                .map(|(w, c)| (w.clone(), c.clone())),
        )
    }

    pub fn graded_parts(&self) -> BTreeMap<u32, OpElement> {
        let mut out: BTreeMap<u32, OpElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.degree())
                .or_default()
                .terms
                .insert(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Dyadic) -> OpElement {
        OpElement::from_terms(self.terms.iter().map(|(w, a)| (w.clone(), a * c)))
    }

    pub fn pow(&self, e: u32) -> OpElement {
        let mut acc = OpElement::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// All coefficients lie in `Z_2`.
    pub fn in_z2(&self) -> bool {
        self.terms.values().all(Dyadic::in_z2)
    }

    pub fn words(&self) -> impl Iterator<Item = &OpWord> {
        self.terms.keys()
    }
}

impl Add for &OpElement {
    type Output = OpElement;
    fn add(self, rhs: &OpElement) -> OpElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &OpElement {
    type Output = OpElement;
    fn sub(self, rhs: &OpElement) -> OpElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl Neg for &OpElement {
    type Output = OpElement;
    fn neg(self) -> OpElement {
        self.scale(&-Dyadic::one())
    }
}

/// Concatenation product, extended bilinearly.
impl Mul for &OpElement {
    type Output = OpElement;
    fn mul(self, rhs: &OpElement) -> OpElement {
        let mut out = OpElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for OpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            text::push_term(&mut out, i == 0, c, &format!("{w}"));
        }
        f.write_str(&out)
    }
}

impl FromStr for OpElement {
    type Err = Error;

    /// `3*Jq3 - 6*Jq2.Jq1 + Jq1.Jq1.Jq1`; a bare number is a multiple of `Jq0`.
    fn from_str(s: &str) -> Result<OpElement> {
        let mut e = OpElement::zero();
        for (neg, term) in text::split_terms(s)? {
            let mut coeff = Dyadic::one();
            let mut word = OpWord::identity();
            for f in text::split_factors(&term)? {
                if let Some(q) = text::parse_number(f) {
                    coeff *= &q;
                } else {
                    word = word.concat(&f.parse()?);
                }
            }
            if neg {
                coeff = -coeff;
            }
            e.add_term(word, coeff);
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn op(s: &str) -> OpElement {
        s.parse().unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(&op("Jq1") * &op("Jq2"), op("Jq1.Jq2"));
        assert_eq!(&op("Jq1 + Jq2") * &op("Jq1"), op("Jq1.Jq1 + Jq2.Jq1"));
        let a = op("3*Jq3 - Jq2.Jq1");
        assert_eq!(&op("Jq0") * &a, a);
    }

    #[test]
    fn word_order_and_format() {
        let words: Vec<String> = OpWord::compositions(3).iter().map(|w| format!("{w}")).collect();
        assert_eq!(words, ["Jq3", "Jq2.Jq1", "Jq1.Jq2", "Jq1.Jq1.Jq1"]);
        let s = "3*Jq3 - 6*Jq2.Jq1 + 3*Jq1.Jq2 + Jq1.Jq1.Jq1";
        assert_eq!(op(s).to_string(), s);
        assert_eq!(op("Jq1^3").to_string(), "Jq1.Jq1.Jq1");
        assert_eq!(op("2 + Jq0.Jq1").to_string(), "2*Jq0 + Jq1");
        assert_eq!(op("-1/3*Jq1*Jq2").to_string(), "-1/3*Jq1.Jq2");
    }

    #[test]
    fn composition_counts() {
        for d in 1..=10 {
            assert_eq!(OpWord::compositions(d).len(), 1 << (d - 1));
        }
        assert_eq!(OpWord::binary_compositions(3).len(), 3);
        assert_eq!(OpWord::q12_compositions(4).len(), 5);
        assert_eq!(OpWord::compositions_of_length(5, 2).len(), 4);
    }

    #[test]
    fn parse_errors() {
        assert!("Jq".parse::<OpElement>().is_err());
        assert!("Jx1".parse::<OpElement>().is_err());
        assert!("Jq1..Jq2".parse::<OpElement>().is_err());
    }
}
