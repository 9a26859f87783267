//! Evaluation semantics: operators are equal when they agree on monomials.
//!
//! The coefficient of `x^{J + lambda}` in `w(x^J)` only involves the variables
//! where `lambda` is positive, and it is a polynomial of total degree
//! `deg w` in `J` that vanishes whenever some `J_i = 0`. So a coordinate is a
//! pair `(lambda, J)` with `lambda` a partition of the degree and `J >= 1` of
//! the same length, and the values with `|J| <= deg w` already determine the
//! whole polynomial. Scanning those coordinates is equivalent to scanning every
//! monomial within the bounds.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{OpElement, OpWord};
use crate::action::apply_word;
use crate::poly::{MultiIndex, Polynomial};
use crate::scalar::{binomial, Dyadic};

/// Which monomials count for operator equality: at most `n_vars` variables
/// and total degree at most `deg_bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalBounds {
    pub n_vars: usize,
    pub deg_bound: u32,
}

impl EvalBounds {
    pub fn new(n_vars: usize, deg_bound: u32) -> Self {
        EvalBounds { n_vars, deg_bound }
    }

    /// `n_vars = max(d, 2)`, `deg_bound = 2d + 4`.
    pub fn for_degree(d: u32) -> Self {
        EvalBounds {
            n_vars: (d as usize).max(2),
            deg_bound: 2 * d + 4,
        }
    }
}

/// One evaluation coordinate: the coefficient of `x^{J + lambda}` in `e(x^J)`
/// on the first `lambda.len()` variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coordinate {
    pub lambda: Vec<u32>,
    pub j: Vec<u32>,
}

impl Coordinate {
    pub fn source(&self) -> MultiIndex {
        MultiIndex::new(self.j.clone())
    }

    pub fn target(&self) -> MultiIndex {
        MultiIndex::new(self.j.iter().zip(&self.lambda).map(|(a, b)| a + b).collect())
    }
}

fn partitions(d: u32, max_part: u32, max_len: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if d == 0 {
        out.push(prefix.clone());
        return;
    }
    if prefix.len() == max_len {
        return;
    }
    for p in (1..=d.min(max_part)).rev() {
        prefix.push(p);
        partitions(d - p, p, max_len, prefix, out);
        prefix.pop();
    }
}

fn positive_vectors(len: usize, max_sum: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() == len {
        out.push(prefix.clone());
        return;
    }
    let used: u32 = prefix.iter().sum();
    let rest = (len - prefix.len() - 1) as u32;
    if used + rest >= max_sum {
        return;
    }
    for x in 1..=(max_sum - used - rest) {
        prefix.push(x);
        positive_vectors(len, max_sum, prefix, out);
        prefix.pop();
    }
}

/// Coordinates for degree `d`. With `exhaustive` every `|J| <= deg_bound` is
/// listed (needed for valuations); otherwise `|J|` stops at `min(deg_bound, d)`,
/// which decides vanishing.
pub fn coordinates(d: u32, bounds: &EvalBounds, exhaustive: bool) -> Vec<Coordinate> {
    if d == 0 {
        return vec![Coordinate {
            lambda: Vec::new(),
            j: Vec::new(),
        }];
    }
    let cap = if exhaustive {
        bounds.deg_bound
    } else {
        bounds.deg_bound.min(d)
    };
    let mut lambdas = Vec::new();
    partitions(d, d, bounds.n_vars, &mut Vec::new(), &mut lambdas);
    let mut out = Vec::new();
    for lambda in lambdas {
        let mut js = Vec::new();
        positive_vectors(lambda.len(), cap, &mut Vec::new(), &mut js);
        for j in js {
            out.push(Coordinate {
                lambda: lambda.clone(),
                j,
            });
        }
    }
    out
}

/// Coefficient of `x^{J + lambda}` in `w(x^J)`.
pub fn word_coefficient(w: &OpWord, c: &Coordinate) -> BigInt {
    if w.degree() != c.lambda.iter().sum::<u32>() {
        return BigInt::zero();
    }
    match word_coefficient_u128(w, c) {
        Some(v) => BigInt::from(v),
        None => word_coefficient_big(w, c),
    }
}

fn binom_u128(n: u32, k: u32) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i + 1) as u128;
    }
    Some(acc)
}

/// The same DP over a dense table of partial exponent shifts; `None` on overflow.
fn word_coefficient_u128(w: &OpWord, c: &Coordinate) -> Option<u128> {
    let n = c.lambda.len();
    let radix: Vec<usize> = c.lambda.iter().map(|&l| l as usize + 1).collect();
    let size: usize = radix.iter().product();
    let index = |delta: &[u32]| {
        delta
            .iter()
            .zip(&radix)
            .rev()
            .fold(0usize, |acc, (&d, &r)| acc * r + d as usize)
    };
    let mut states = vec![0u128; size];
    states[0] = 1;
    let mut delta = vec![0u32; n];
    let mut cur = vec![0u32; n];
    for &k in w.factors().iter().rev() {
        let mut next = vec![0u128; size];
        for (ix, &val) in states.iter().enumerate() {
            if val == 0 {
                continue;
            }
            let mut r = ix;
            for (d, &rad) in delta.iter_mut().zip(&radix) {
                *d = (r % rad) as u32;
                r /= rad;
            }
            // enumerate k_1 + ... + k_n = k with k_i <= lambda_i - delta_i
            cur.copy_from_slice(&delta);
            spread(k, 0, &delta, &mut cur, val, c, &mut next, &index)?;
        }
        states = next;
    }
    Some(states[index(&c.lambda)])
}

#[allow(clippy::too_many_arguments)]
fn spread(
    left: u32,
    i: usize,
    base: &[u32],
    cur: &mut [u32],
    acc: u128,
    c: &Coordinate,
    out: &mut [u128],
    index: &dyn Fn(&[u32]) -> usize,
) -> Option<()> {
    if i == base.len() {
        if left == 0 {
            let slot = &mut out[index(cur)];
            *slot = slot.checked_add(acc)?;
        }
        return Some(());
    }
    let room = c.lambda[i] - base[i];
    for ki in 0..=left.min(room) {
        let b = binom_u128(c.j[i] + base[i], ki)?;
        if b == 0 {
            break;
        }
        cur[i] = base[i] + ki;
        spread(left - ki, i + 1, base, cur, acc.checked_mul(b)?, c, out, index)?;
    }
    cur[i] = base[i];
    Some(())
}

fn word_coefficient_big(w: &OpWord, c: &Coordinate) -> BigInt {
    let n = c.lambda.len();
    let mut states: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
    states.insert(vec![0; n], BigInt::one());
    for &k in w.factors().iter().rev() {
        let mut next: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (delta, val) in &states {
            distribute(k, 0, delta, &mut delta.clone(), val.clone(), c, &mut next);
        }
        states = next;
        if states.is_empty() {
            return BigInt::zero();
        }
    }
    states.remove(&c.lambda).unwrap_or_default()
}

fn distribute(
    left: u32,
    i: usize,
    base: &[u32],
    cur: &mut Vec<u32>,
    acc: BigInt,
    c: &Coordinate,
    out: &mut BTreeMap<Vec<u32>, BigInt>,
) {
    if i == base.len() {
        if left == 0 {
            *out.entry(cur.clone()).or_default() += acc;
        }
        return;
    }
    let room = c.lambda[i] - base[i];
    for ki in 0..=left.min(room) {
        let b = binomial((c.j[i] + base[i]) as u64, ki as u64);
        if b.is_zero() {
            break;
        }
        cur[i] = base[i] + ki;
        distribute(left - ki, i + 1, base, cur, &acc * b, c, out);
    }
    cur[i] = base[i];
}

/// Values of an element at the given coordinates (words of other degrees contribute 0).
pub fn signature(e: &OpElement, coords: &[Coordinate]) -> Vec<Dyadic> {
    coords
        .iter()
        .map(|c| {
            let mut s = Dyadic::zero();
            for (w, a) in e.terms() {
                let v = word_coefficient(w, c);
                if !v.is_zero() {
                    s += &(a * &Dyadic::from(v));
                }
            }
            s
        })
        .collect()
}

/// Coordinate matrix: one row per coordinate, one column per word.
pub fn signature_matrix(words: &[OpWord], coords: &[Coordinate]) -> Vec<Vec<Dyadic>> {
    let cols: Vec<Vec<Dyadic>> = words
        .iter()
        .map(|w| coords.iter().map(|c| Dyadic::from(word_coefficient(w, c))).collect())
        .collect();
    (0..coords.len())
        .map(|r| cols.iter().map(|col| col[r].clone()).collect())
        .collect()
}

/// `e` applied to `f`.
pub fn eval_element(e: &OpElement, f: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(f.arity());
    for (w, c) in e.terms() {
        out = &out + &apply_word(w, f).scale(c);
    }
    out
}

/// `e` kills every monomial within the bounds (default: from the top degree of `e`).
pub fn annihilates(e: &OpElement, bounds: Option<EvalBounds>) -> bool {
    let Some(top) = e.max_degree() else {
        return true;
    };
    let b = bounds.unwrap_or_else(|| EvalBounds::for_degree(top));
    e.graded_parts().iter().all(|(&d, part)| {
        if d == 0 {
            return part.is_zero();
        }
        let coords = coordinates(d, &b, false);
        signature(part, &coords).iter().all(Dyadic::is_zero)
    })
}

/// `a` and `b` agree on every monomial within the bounds.
pub fn equal_by_evaluation(a: &OpElement, b: &OpElement, bounds: Option<EvalBounds>) -> bool {
    annihilates(&(a - b), bounds)
}
