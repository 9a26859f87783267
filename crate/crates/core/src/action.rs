//! The operations `Jq^k` acting on polynomials.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::opalg::OpWord;
use crate::poly::{MultiIndex, Polynomial};
use crate::scalar::{binomial, Dyadic};
use crate::series::TruncatedSeries;

/// `Jq^k` on one monomial: `sum over k_1 + ... + k_n = k` of
/// `prod C(j_i, k_i) x_i^{j_i + k_i}`.
fn jq_monomial(k: u32, m: &MultiIndex, c: &Dyadic, out: &mut Polynomial) {
    let exps = m.exponents();
    let mut cur: Vec<u32> = exps.to_vec();
    fn go(
        i: usize,
        left: u32,
        exps: &[u32],
        cur: &mut Vec<u32>,
        acc: Dyadic,
        out: &mut Polynomial,
    ) {
        if i == exps.len() {
            if left == 0 {
                out.add_term(MultiIndex::new(cur.clone()), acc);
            }
            return;
        }
        // remaining capacity check keeps the search tight
        let cap: u32 = exps[i..].iter().sum();
        if cap < left {
            return;
        }
        for ki in 0..=left.min(exps[i]) {
            let b = binomial(exps[i] as u64, ki as u64);
            cur[i] = exps[i] + ki;
            go(i + 1, left - ki, exps, cur, &acc * &Dyadic::from(b), out);
        }
        cur[i] = exps[i];
    }
    go(0, k, exps, &mut cur, c.clone(), out);
}

/// `Jq^k(f)`, linearly on every graded part.
pub fn apply_jq(k: u32, f: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero(f.arity());
    if k == 0 {
        return f.clone();
    }
    for (m, c) in f.terms() {
        jq_monomial(k, m, c, &mut out);
    }
    out
}

/// The total square `Jq = sum_k Jq^k`, the ring map with `x -> x + x^2`.
pub fn apply_total(f: &Polynomial) -> Polynomial {
    let top = f.degree().unwrap_or(0);
    let mut out = Polynomial::zero(f.arity());
    for k in 0..=top {
        out = &out + &apply_jq(k, f);
    }
    out
}

/// A word acts with its rightmost factor first.
pub fn apply_word(w: &OpWord, f: &Polynomial) -> Polynomial {
    w.factors()
        .iter()
        .rev()
        .fold(f.clone(), |acc, &k| apply_jq(k, &acc))
}

/// `psi_q = sum_k q^k Jq^k`.
pub fn apply_psi_q(q: &Dyadic, f: &Polynomial) -> Polynomial {
    let top = f.degree().unwrap_or(0);
    let mut out = f.clone();
    let mut qk = Dyadic::one();
    for k in 1..=top {
        qk = &qk * q;
        if qk.is_zero() {
            break;
        }
        out = &out + &apply_jq(k, f).scale(&qk);
    }
    out
}

/// The series `h = x - x^2 + 2x^3 - 5x^4 + ...` with `h + h^2 = x`, through degree `n`.
pub fn conj_variable_series(n: u32) -> Vec<Dyadic> {
    let mut h = alloc::vec![Dyadic::zero(); n as usize + 1];
    if n >= 1 {
        h[1] = Dyadic::one();
    }
    for d in 2..=n as usize {
        let mut s = Dyadic::zero();
        for i in 1..d {
            s += &(&h[i] * &h[d - i]);
        }
        h[d] = -s;
    }
    h
}

/// `Cq(f) = sum_k chi(Jq^k)(f)` through total degree `n`.
///
/// `Cq` inverts the total square, so it is the ring map substituting each
/// variable by the compositional inverse of `x + x^2`.
pub fn apply_conj_total(f: &Polynomial, n: u32) -> TruncatedSeries {
    let arity = f.arity();
    let h = conj_variable_series(n);
    let subs: Vec<Polynomial> = (0..arity)
        .map(|i| {
            Polynomial::from_terms(
                arity,
                h.iter()
                    .enumerate()
                    .map(|(d, c)| (MultiIndex::var_power(arity, i, d as u32), c.clone())),
            )
        })
        .collect();
    let mut out = Polynomial::zero(arity);
    for (m, c) in f.terms() {
        if m.degree() > n {
            continue;
        }
        let mut term = Polynomial::constant(arity, c.clone());
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                term = term.mul_truncated(&subs[i], n);
            }
        }
        out = &out + &term;
    }
    TruncatedSeries::from_polynomial(&out, n)
}

/// `Jq^k(1/x) = (-1)^k x^{k-1}`, returned as `(sign, exponent)`.
pub fn jq_on_inverse_monomial(k: u32) -> (i8, i64) {
    let sign = if k % 2 == 0 { 1 } else { -1 };
    (sign, k as i64 - 1)
}

/// Coefficient `1 / C(m-k, k)` of `x^{m-k}` in `Jq^{-k}(x^m)`, constants of
/// integration dropped.
pub fn apply_jq_neg(k: u32, m: u32) -> Result<Dyadic> {
    if m <= k {
        return Err(Error::Undefined(format!(
            "Jq^-{k}(x^{m}) needs m > k"
        )));
    }
    let b = binomial((m - k) as u64, k as u64);
    Dyadic::from(b)
        .inv()
        .ok_or_else(|| Error::Undefined(format!("C({}, {k}) = 0", m - k)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn binomial_action() {
        assert_eq!(apply_jq(1, &p("x1^3")), p("3*x1^4"));
        assert_eq!(apply_jq(3, &p("x1^3")), p("x1^6"));
        assert!(apply_jq(4, &p("x1^3")).is_zero());
        assert!(apply_jq(2, &p("7")).is_zero());
    }

    #[test]
    fn total_square() {
        assert_eq!(apply_total(&p("x1")), p("x1 + x1^2"));
        assert_eq!(
            apply_total(&p("x1*x2")),
            &p("x1 + x1^2").with_arity(2).unwrap() * &p("x2 + x2^2")
        );
        assert_eq!(apply_total(&p("7")), p("7"));
    }

    #[test]
    fn words() {
        let w = |v: &[u32]| OpWord::new(v.to_vec());
        assert_eq!(apply_word(&w(&[2, 1]), &p("x1^2")), p("6*x1^5"));
        assert_eq!(apply_word(&w(&[1, 1, 1]), &p("x1^2")), p("24*x1^5"));
        assert_eq!(apply_word(&w(&[]), &p("x1 + 3")), p("x1 + 3"));
        // affinoid example: Jq^1(2 x2 - x1^2) = 2 x2^2 - 2 x1^3
        assert_eq!(apply_word(&w(&[1]), &p("2*x2 - x1^2")), p("2*x2^2 - 2*x1^3"));
    }

    #[test]
    fn psi_q() {
        let q = Dyadic::ratio(1, 3);
        let x = p("x1");
        let img = apply_psi_q(&q, &x);
        assert_eq!(img, p("x1 + 1/3*x1^2"));
        assert_eq!(apply_psi_q(&q, &p("x1^2")), &img * &img);
        assert_eq!(apply_psi_q(&Dyadic::zero(), &p("x1^3 + 1")), p("x1^3 + 1"));
    }

    #[test]
    fn conj_total() {
        let s = apply_conj_total(&p("x1"), 3);
        assert_eq!(s.to_polynomial(), p("x1 - x1^2 + 2*x1^3"));
        assert_eq!(apply_conj_total(&p("1"), 5).to_polynomial(), p("1"));
        let h = apply_conj_total(&p("x1"), 4).to_polynomial();
        assert_eq!(
            apply_conj_total(&p("x1^2"), 4).to_polynomial(),
            h.mul_truncated(&h, 4)
        );
    }

    #[test]
    fn negative_rules() {
        assert_eq!(jq_on_inverse_monomial(0), (1, -1));
        assert_eq!(jq_on_inverse_monomial(1), (-1, 0));
        assert_eq!(jq_on_inverse_monomial(3), (-1, 2));
        assert_eq!(apply_jq_neg(1, 3), Ok(Dyadic::ratio(1, 2)));
        assert_eq!(apply_jq_neg(2, 6), Ok(Dyadic::ratio(1, 6)));
        assert!(matches!(apply_jq_neg(2, 3), Err(Error::Undefined(_))));
    }
}
