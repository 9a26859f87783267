use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{OpElement, OpWord};
use crate::scalar::Dyadic;

/// A finite sum of `u (x) v` with `u, v` words.
pub type Tensor = BTreeMap<(OpWord, OpWord), Dyadic>;

fn tensor_add(t: &mut Tensor, key: (OpWord, OpWord), c: Dyadic) {
    if c.is_zero() {
        return;
    }
    let entry = t.entry(key).or_default();
    *entry += &c;
    if entry.is_zero() {
        t.retain(|_, v| !v.is_zero());
    }
}

/// The algebra map determined by `Jq^k -> sum_{i+j=k} Jq^i (x) Jq^j`.
pub fn coproduct(e: &OpElement) -> Tensor {
    let mut out = Tensor::new();
    for (w, c) in e.terms() {
        let mut partial: Vec<(Vec<u32>, Vec<u32>)> = alloc::vec![(Vec::new(), Vec::new())];
        for &k in w.factors() {
            let mut next = Vec::with_capacity(partial.len() * (k as usize + 1));
            for (l, r) in &partial {
                for i in 0..=k {
                    let mut l2 = l.clone();
                    let mut r2 = r.clone();
                    l2.push(i);
                    r2.push(k - i);
                    next.push((l2, r2));
                }
            }
            partial = next;
        }
        for (l, r) in partial {
            tensor_add(&mut out, (OpWord::new(l), OpWord::new(r)), c.clone());
        }
    }
    out
}

/// `1` on the identity word, `0` on every word of positive degree.
pub fn counit(e: &OpElement) -> Dyadic {
    e.coeff(&OpWord::identity())
}

/// `(psi (x) id)` applied to a tensor, as a triple-indexed sum.
pub fn tensor_apply_left(t: &Tensor) -> BTreeMap<(OpWord, OpWord, OpWord), Dyadic> {
    let mut out = BTreeMap::new();
    for ((u, v), c) in t {
        for ((a, b), d) in coproduct(&OpElement::word(u.clone())) {
            let entry: &mut Dyadic = out.entry((a, b, v.clone())).or_default();
            *entry += &(c * &d);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `(id (x) psi)` applied to a tensor.
pub fn tensor_apply_right(t: &Tensor) -> BTreeMap<(OpWord, OpWord, OpWord), Dyadic> {
    let mut out = BTreeMap::new();
    for ((u, v), c) in t {
        for ((a, b), d) in coproduct(&OpElement::word(v.clone())) {
            let entry: &mut Dyadic = out.entry((u.clone(), a, b)).or_default();
            *entry += &(c * &d);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChiMethod {
    /// `sum_{i+j=k} Jq^i chi(Jq^j) = 0`, solved for `chi(Jq^k)`.
    Recursion,
    /// Signed sum over all compositions of `k`.
    Partitions,
}

/// The conjugation `chi(Jq^k)`.
pub fn chi(k: u32, method: ChiMethod) -> OpElement {
    match method {
        ChiMethod::Recursion => {
            let mut table: Vec<OpElement> = alloc::vec![OpElement::one()];
            for n in 1..=k {
                let mut acc = OpElement::zero();
                for i in 1..=n {
                    acc = &acc + &(&OpElement::generator(i) * &table[(n - i) as usize]);
                }
                table.push(-&acc);
            }
            table.swap_remove(k as usize)
        }
        ChiMethod::Partitions => OpElement::from_terms(OpWord::compositions(k).into_iter().map(|w| {
            let sign = if w.len() % 2 == 0 { 1 } else { -1 };
            (w, Dyadic::from(sign))
        })),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(s: &str) -> OpElement {
        s.parse().unwrap()
    }

    fn pair(a: &str, b: &str) -> (OpWord, OpWord) {
        (a.parse().unwrap(), b.parse().unwrap())
    }

    #[test]
    fn generator_coproducts() {
        let t = coproduct(&op("Jq2"));
        let keys: Vec<_> = t.keys().cloned().collect();
        assert_eq!(t.len(), 3);
        assert!(keys.contains(&pair("Jq2", "Jq0")));
        assert!(keys.contains(&pair("Jq1", "Jq1")));
        assert!(keys.contains(&pair("Jq0", "Jq2")));
        assert_eq!(coproduct(&op("Jq1")).len(), 2);
        let t0 = coproduct(&op("Jq0"));
        assert_eq!(t0.get(&pair("Jq0", "Jq0")), Some(&Dyadic::one()));
    }

    #[test]
    fn chi_small() {
        assert_eq!(chi(1, ChiMethod::Recursion), op("-Jq1"));
        assert_eq!(chi(2, ChiMethod::Recursion), op("Jq1.Jq1 - Jq2"));
        assert_eq!(
            chi(3, ChiMethod::Partitions),
            op("-Jq3 + Jq1.Jq2 + Jq2.Jq1 - Jq1.Jq1.Jq1")
        );
        assert_eq!(chi(0, ChiMethod::Partitions), OpElement::one());
    }

    #[test]
    fn counit_law() {
        for k in 0..6 {
            let g = OpElement::generator(k);
            let mut left = OpElement::zero();
            for ((u, v), c) in coproduct(&g) {
                left = &left + &OpElement::term(v, counit(&OpElement::word(u)) * c);
            }
            assert_eq!(left, g);
        }
    }
}
