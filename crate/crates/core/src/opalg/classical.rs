//! The mod-2 Steenrod algebra in the admissible basis, as the target of `phi`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::{OpElement, OpWord};
use crate::error::{Error, Result};
use crate::poly::MultiIndex;

/// `Sq^{a_1} ... Sq^{a_s}` with all `a_i > 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ClassicalWord(Vec<u32>);

impl ClassicalWord {
    pub fn new(v: Vec<u32>) -> Self {
        ClassicalWord(v.into_iter().filter(|&a| a > 0).collect())
    }

    pub fn factors(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `a_i >= 2 a_{i+1}` throughout.
    pub fn is_admissible(&self) -> bool {
        self.0.windows(2).all(|p| p[0] >= 2 * p[1])
    }
}

impl Ord for ClassicalWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.len().cmp(&other.0.len()))
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for ClassicalWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ClassicalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("Sq0");
        }
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "Sq{a}")?;
        }
        Ok(())
    }
}

/// An `F_2`-combination of admissible words, stored as a set.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ClassicalElement(BTreeSet<ClassicalWord>);

impl ClassicalElement {
    pub fn zero() -> Self {
        ClassicalElement::default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &ClassicalWord> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, w: &ClassicalWord) -> bool {
        self.0.contains(w)
    }

    /// Add one word in characteristic two: toggles membership.
    fn toggle(&mut self, w: ClassicalWord) {
        if !self.0.remove(&w) {
            self.0.insert(w);
        }
    }

    pub fn add(&self, other: &ClassicalElement) -> ClassicalElement {
        let mut out = self.clone();
        for w in &other.0 {
            out.toggle(w.clone());
        }
        out
    }
}

impl fmt::Display for ClassicalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

/// `C(n, k) mod 2` by Lucas' theorem.
fn binom_odd(n: i64, k: i64) -> bool {
    if n < 0 || k < 0 || k > n {
        return false;
    }
    (k & !n) == 0
}

type Memo = BTreeMap<Vec<u32>, BTreeSet<Vec<u32>>>;

fn normalize(word: &[u32], memo: &mut Memo) -> BTreeSet<Vec<u32>> {
    if let Some(r) = memo.get(word) {
        return r.clone();
    }
    let bad = word.windows(2).position(|p| p[0] < 2 * p[1]);
    let result = match bad {
        None => {
            let mut s = BTreeSet::new();
            s.insert(word.to_vec());
            s
        }
        Some(i) => {
            let (a, b) = (word[i] as i64, word[i + 1] as i64);
            let mut acc: BTreeSet<Vec<u32>> = BTreeSet::new();
            for j in 0..=a / 2 {
                if !binom_odd(b - 1 - j, a - 2 * j) {
                    continue;
                }
                let mut w = word[..i].to_vec();
                w.push((a + b - j) as u32);
                if j > 0 {
                    w.push(j as u32);
                }
                w.extend_from_slice(&word[i + 2..]);
                for r in normalize(&w, memo) {
                    if !acc.remove(&r) {
                        acc.insert(r);
                    }
                }
            }
            acc
        }
    };
    memo.insert(word.to_vec(), result.clone());
    result
}

/// Rewrite a word into admissible form with the classical Adem relations,
/// always resolving the leftmost inadmissible pair first.
pub fn admissible_form(word: &[u32]) -> ClassicalElement {
    let w: Vec<u32> = word.iter().copied().filter(|&a| a > 0).collect();
    let mut memo = Memo::new();
    ClassicalElement(
        normalize(&w, &mut memo)
            .into_iter()
            .map(ClassicalWord)
            .collect(),
    )
}

/// Product in the classical algebra, renormalized.
pub fn classical_product(a: &ClassicalElement, b: &ClassicalElement) -> ClassicalElement {
    let mut memo = Memo::new();
    let mut out = ClassicalElement::zero();
    for u in &a.0 {
        for v in &b.0 {
            let mut w = u.0.clone();
            w.extend_from_slice(&v.0);
            for r in normalize(&w, &mut memo) {
                out.toggle(ClassicalWord(r));
            }
        }
    }
    out
}

/// The reduction `phi: Jq^k -> Sq^k`, coefficientwise mod 2.
pub fn phi_reduce(e: &OpElement) -> Result<ClassicalElement> {
    let mut memo = Memo::new();
    let mut out = ClassicalElement::zero();
    for (w, c) in e.terms() {
        if c.mod2()? {
            for r in normalize(w.factors(), &mut memo) {
                out.toggle(ClassicalWord(r));
            }
        }
    }
    Ok(out)
}

/// Smallest `m <= max_pow` with `phi((Jq^k)^m) = 0`.
pub fn nilpotency_degree(k: u32, max_pow: u32) -> Result<u32> {
    for m in 1..=max_pow {
        let w = OpWord::new(vec![k; m as usize]);
        if admissible_form(w.factors()).is_zero() {
            return Ok(m);
        }
    }
    Err(Error::NotFound(format!(
        "(Sq^{k})^m is nonzero for every m <= {max_pow}"
    )))
}

/// Classical `Sq^k` on an `F_2` polynomial (set of monomials), computed from the
/// total square `x -> x + x^2` by multiplying out over `F_2`.
pub fn sq_total_f2(k: u32, f: &BTreeSet<MultiIndex>) -> BTreeSet<MultiIndex> {
    let mut out = BTreeSet::new();
    for m in f {
        let arity = m.arity();
        let mut prod: BTreeSet<MultiIndex> = BTreeSet::new();
        prod.insert(MultiIndex::zero(arity));
        for (i, &e) in m.exponents().iter().enumerate() {
            let factor: BTreeSet<MultiIndex> = [
                MultiIndex::var_power(arity, i, 1),
                MultiIndex::var_power(arity, i, 2),
            ]
            .into_iter()
            .collect();
            for _ in 0..e {
                let mut next = BTreeSet::new();
                for a in &prod {
                    for b in &factor {
                        let c = a.mul(b);
                        if !next.remove(&c) {
                            next.insert(c);
                        }
                    }
                }
                prod = next;
            }
        }
        let target = m.degree() + k;
        for t in prod.into_iter().filter(|t| t.degree() == target) {
            if !out.remove(&t) {
                out.insert(t);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn cw(v: &[u32]) -> ClassicalWord {
        ClassicalWord::new(v.to_vec())
    }

    #[test]
    fn small_relations() {
        assert!(admissible_form(&[1, 1]).is_zero());
        let sq2sq2 = admissible_form(&[2, 2]);
        assert_eq!(sq2sq2.len(), 1);
        assert!(sq2sq2.contains(&cw(&[3, 1])));
        // Sq^1 Sq^2 = Sq^3
        assert!(admissible_form(&[1, 2]).contains(&cw(&[3])));
        // Sq^2 Sq^3 = Sq^5 + Sq^4 Sq^1
        let e = admissible_form(&[2, 3]);
        assert_eq!(e.len(), 2);
        assert!(e.contains(&cw(&[5])) && e.contains(&cw(&[4, 1])));
    }

    #[test]
    fn phi_examples() {
        let p = |s: &str| phi_reduce(&s.parse().unwrap()).unwrap();
        assert!(p("Jq1.Jq1").is_zero());
        assert_eq!(p("Jq2.Jq2").to_string(), "Sq3.Sq1");
        assert!(p("2*Jq5").is_zero());
        assert!(phi_reduce(&"1/2*Jq1".parse().unwrap()).is_err());
    }

    #[test]
    fn nilpotency() {
        assert_eq!(nilpotency_degree(1, 8), Ok(2));
        assert_eq!(nilpotency_degree(2, 8), Ok(4));
        assert!(matches!(nilpotency_degree(2, 3), Err(Error::NotFound(_))));
    }

    #[test]
    fn sq_on_monomials() {
        let x = |e: u32| MultiIndex::new(vec![e]);
        let f: BTreeSet<_> = [x(3)].into_iter().collect();
        // Sq^1 x^3 = x^4, Sq^2 x^3 = x^5, Sq^3 x^3 = x^6
        for k in 1..=3 {
            let r = sq_total_f2(k, &f);
            assert_eq!(r.into_iter().collect::<Vec<_>>(), [x(3 + k)]);
        }
        assert!(sq_total_f2(1, &[x(2)].into_iter().collect()).is_empty());
    }
}
