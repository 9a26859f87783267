use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{OpElement, OpWord};
use crate::scalar::Dyadic;
use crate::text;

/// A polynomial in a formal symbol `m`, coefficients ascending.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SymbolicPoly(Vec<Dyadic>);

impl SymbolicPoly {
    pub fn zero() -> Self {
        SymbolicPoly(Vec::new())
    }

    pub fn one() -> Self {
        SymbolicPoly(vec![Dyadic::one()])
    }

    pub fn from_coeffs(mut c: Vec<Dyadic>) -> Self {
        while c.last().is_some_and(Dyadic::is_zero) {
            c.pop();
        }
        SymbolicPoly(c)
    }

    pub fn coeffs(&self) -> &[Dyadic] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Coefficient of `m^i`.
    pub fn coeff(&self, i: usize) -> Dyadic {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn eval(&self, m: &Dyadic) -> Dyadic {
        self.0
            .iter()
            .rev()
            .fold(Dyadic::zero(), |acc, c| acc * m + c)
    }

    pub fn add(&self, other: &SymbolicPoly) -> SymbolicPoly {
        let n = self.0.len().max(other.0.len());
        SymbolicPoly::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &Dyadic) -> SymbolicPoly {
        SymbolicPoly::from_coeffs(self.0.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &SymbolicPoly) -> SymbolicPoly {
        if self.is_zero() || other.is_zero() {
            return SymbolicPoly::zero();
        }
        let mut out = vec![Dyadic::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        SymbolicPoly::from_coeffs(out)
    }

    /// `C(m + c, k)` as a polynomial in `m`.
    pub fn binomial(c: i64, k: u32) -> SymbolicPoly {
        let mut acc = SymbolicPoly::one();
        for i in 0..k as i64 {
            let lin = SymbolicPoly::from_coeffs(vec![Dyadic::from(c - i), Dyadic::one()]);
            acc = acc.mul(&lin).scale(&Dyadic::ratio(1, i + 1));
        }
        acc
    }
}

impl fmt::Display for SymbolicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let body = match i {
                0 => String::new(),
                1 => "m".into(),
                _ => alloc::format!("m^{i}"),
            };
            text::push_term(&mut out, first, c, &body);
            first = false;
        }
        f.write_str(&out)
    }
}

/// Coefficient of `xi^{m + deg w}` in `w(xi^m)` as a polynomial in `m`.
///
/// The last factor acts first: `(k_1, ..., k_s)` gives
/// `C(m, k_s) C(m + k_s, k_{s-1}) ...`.
pub fn evaluate_on_power(w: &OpWord) -> SymbolicPoly {
    let mut acc = SymbolicPoly::one();
    let mut shift = 0i64;
    for &k in w.factors().iter().rev() {
        acc = acc.mul(&SymbolicPoly::binomial(shift, k));
        shift += k as i64;
    }
    acc
}

/// Linear extension of [`evaluate_on_power`] over a homogeneous element.
pub fn evaluate_element_on_power(e: &OpElement) -> SymbolicPoly {
    e.terms().fold(SymbolicPoly::zero(), |acc, (w, c)| {
        acc.add(&evaluate_on_power(w).scale(c))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn w(v: &[u32]) -> OpWord {
        OpWord::new(v.to_vec())
    }

    #[test]
    fn examples() {
        // m(m+1)(m+2) = m^3 + 3m^2 + 2m
        assert_eq!(
            evaluate_on_power(&w(&[1, 1, 1])).coeffs(),
            [0, 2, 3, 1].map(Dyadic::from)
        );
        // m^2 (m+1) / 2
        let p = evaluate_on_power(&w(&[2, 1]));
        assert_eq!(p.to_string(), "1/2*m^3 + 1/2*m^2");
        assert_eq!(p.eval(&Dyadic::one()), Dyadic::one());
        assert_eq!(evaluate_on_power(&OpWord::identity()), SymbolicPoly::one());
    }

    #[test]
    fn a3_vanishes_symbolically() {
        let e: OpElement = "3*Jq3 - 6*Jq2.Jq1 + 3*Jq1.Jq2 + Jq1.Jq1.Jq1".parse().unwrap();
        assert!(evaluate_element_on_power(&e).is_zero());
    }
}
