//! Truncated power series, Tate membership checks and the constant-coefficient
//! equation solver.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::action::{apply_jq, apply_word};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::opalg::{OpElement, OpWord};
use crate::poly::{MultiIndex, Polynomial};
use crate::scalar::{binomial, Dyadic, Valuation};
use crate::text;

/// A power series known through total degree `order`.
///
/// With a center `x0` the series has one variable and its terms are the
/// coefficients of `(x - x0)^n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    arity: usize,
    order: u32,
    center: Option<Dyadic>,
    terms: BTreeMap<MultiIndex, Dyadic>,
}

impl TruncatedSeries {
    pub fn zero(arity: usize, order: u32) -> Self {
        TruncatedSeries {
            arity,
            order,
            center: None,
            terms: BTreeMap::new(),
        }
    }

    /// A one-variable series in powers of `x - center`.
    pub fn centered(center: Dyadic, order: u32, coeffs: &[Dyadic]) -> Self {
        let mut s = TruncatedSeries {
            arity: 1,
            order,
            center: Some(center),
            terms: BTreeMap::new(),
        };
        for (n, c) in coeffs.iter().enumerate().take(order as usize + 1) {
            if !c.is_zero() {
                s.terms.insert(MultiIndex::new(vec![n as u32]), c.clone());
            }
        }
        s
    }

    /// A one-variable uncentered series from its coefficient list.
    pub fn from_coeffs(order: u32, coeffs: &[Dyadic]) -> Self {
        let mut s = TruncatedSeries::centered(Dyadic::zero(), order, coeffs);
        s.center = None;
        s
    }

    pub fn from_polynomial(p: &Polynomial, order: u32) -> Self {
        TruncatedSeries {
            arity: p.arity(),
            order,
            center: None,
            terms: p.truncate(order).into_terms(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn center(&self) -> Option<&Dyadic> {
        self.center.as_ref()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Dyadic)> {
        self.terms.iter()
    }

    /// Coefficient of `t^n` for a one-variable series.
    pub fn coeff(&self, n: u32) -> Dyadic {
        self.terms
            .get(&MultiIndex::new(vec![n]))
            .cloned()
            .unwrap_or_default()
    }

    /// Coefficients `0..=order` of a one-variable series.
    pub fn coeffs(&self) -> Vec<Dyadic> {
        (0..=self.order).map(|n| self.coeff(n)).collect()
    }

    /// The stored terms as a polynomial (in `x - center` when centered).
    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_terms(
            self.arity,
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn truncate(&self, order: u32) -> TruncatedSeries {
        let mut s = self.clone();
        s.order = order.min(self.order);
        let o = s.order;
        s.terms.retain(|m, _| m.degree() <= o);
        s
    }

    /// Smallest coefficient valuation in each degree `0..=order`.
    pub fn valuation_profile(&self) -> Vec<(u32, Valuation)> {
        let mut prof = vec![Valuation::Infinite; self.order as usize + 1];
        for (m, c) in &self.terms {
            let d = m.degree() as usize;
            prof[d] = prof[d].min(c.valuation());
        }
        prof.into_iter()
            .enumerate()
            .map(|(d, v)| (d as u32, v))
            .collect()
    }
}

impl core::fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let var = match &self.center {
            Some(c) if c.is_negative() => format!("(x1 + {})", c.abs()),
            Some(c) if !c.is_zero() => format!("(x1 - {c})"),
            _ => String::new(),
        };
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let body = if m.degree() == 0 {
                String::new()
            } else if var.is_empty() {
                format!("{m}")
            } else if m.degree() == 1 {
                var.clone()
            } else {
                format!("{var}^{}", m.degree())
            };
            text::push_term(&mut out, i == 0, c, &body);
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out} + O({})", self.order + 1)
    }
}

/// Coefficients of `Jq^k(t^n)` in powers of `t = x - x0`:
/// `C(n, k) sum_p C(2k, p) x0^{2k-p} t^{n-k+p}`.
pub fn recursion_stencil(k: u32, n: u32, x0: &Dyadic) -> Vec<(u32, Dyadic)> {
    if k > n {
        return Vec::new();
    }
    let cnk = Dyadic::from(binomial(n as u64, k as u64));
    (0..=2 * k)
        .filter_map(|p| {
            let c = &cnk * &Dyadic::from(binomial(2 * k as u64, p as u64)) * x0.pow(2 * k - p);
            (!c.is_zero()).then(|| (n - k + p, c))
        })
        .collect()
}

/// `Jq^k` on a polynomial in `t = x - x0`, given by dense coefficients.
fn centered_jq(k: u32, x0: &Dyadic, coeffs: &[Dyadic]) -> Vec<Dyadic> {
    if k == 0 {
        return coeffs.to_vec();
    }
    let mut out = vec![Dyadic::zero(); coeffs.len() + k as usize + 1];
    for (n, a) in coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (m, c) in recursion_stencil(k, n as u32, x0) {
            out[m as usize] += &(a * &c);
        }
    }
    while out.last().is_some_and(Dyadic::is_zero) {
        out.pop();
    }
    out
}

fn centered_word(w: &OpWord, x0: &Dyadic, coeffs: &[Dyadic]) -> Vec<Dyadic> {
    w.factors()
        .iter()
        .rev()
        .fold(coeffs.to_vec(), |acc, &k| centered_jq(k, x0, &acc))
}

/// Exact image of a dense `t`-polynomial under an element, centered at `x0`.
fn centered_element(e: &OpElement, x0: &Dyadic, coeffs: &[Dyadic]) -> Vec<Dyadic> {
    let mut out: Vec<Dyadic> = Vec::new();
    for (w, c) in e.terms() {
        let img = centered_word(w, x0, coeffs);
        if out.len() < img.len() {
            out.resize(img.len(), Dyadic::zero());
        }
        for (o, v) in out.iter_mut().zip(&img) {
            *o += &(v * c);
        }
    }
    out
}

/// How many low degrees of the image are lost: a centered operator of degree
/// `g` lowers `t`-degrees by up to `g`.
fn order_loss(e: &OpElement, center: Option<&Dyadic>) -> u32 {
    match center {
        Some(c) if !c.is_zero() => e.max_degree().unwrap_or(0),
        _ => 0,
    }
}

/// Apply an operator term by term.
pub fn series_apply_op(e: &OpElement, s: &TruncatedSeries) -> Result<TruncatedSeries> {
    let loss = order_loss(e, s.center());
    if loss > s.order {
        return Err(Error::Domain(format!(
            "order {} is too small for an operator of degree {loss}",
            s.order
        )));
    }
    match &s.center {
        Some(x0) => {
            let order = s.order - loss;
            let img = centered_element(e, x0, &s.coeffs());
            let mut out = TruncatedSeries::centered(x0.clone(), order, &img);
            out.center = Some(x0.clone());
            Ok(out)
        }
        None => {
            let p = s.to_polynomial();
            let mut out = Polynomial::zero(s.arity);
            for (w, c) in e.terms() {
                out = &out + &apply_word(w, &p).truncate(s.order).scale(c);
            }
            Ok(TruncatedSeries::from_polynomial(&out, s.order))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TateVerdict {
    Pass,
    Fail,
    Inconclusive,
}

/// Outcome of [`tate_check`]; verdicts only speak about the truncation window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateReport {
    pub verdict: TateVerdict,
    pub profile: Vec<(u32, Valuation)>,
    /// Inclusive degree range inspected.
    pub window: (u32, u32),
}

/// Heuristic test for `|a_J|_2 -> 0` on the last third of the window.
///
/// Pass: the tail minimum of the valuation profile strictly increases from the
/// start to the middle to the end of the window (or the window is all zero).
/// Fail: at least half of the window degrees carry a coefficient of
/// valuation `<= 0`. Otherwise inconclusive.
pub fn tate_check(s: &TruncatedSeries) -> Result<TateReport> {
    if s.center.is_some() {
        return Err(Error::Domain("tate check needs an uncentered series".into()));
    }
    let profile = s.valuation_profile();
    let n = s.order;
    let start = n - n / 3;
    let mid = start + (n - start) / 2;
    let tail = |d: u32| {
        profile[d as usize..]
            .iter()
            .map(|(_, v)| *v)
            .min()
            .unwrap_or(Valuation::Infinite)
    };
    let window = &profile[start as usize..];
    let verdict = if window.iter().all(|(_, v)| v.is_infinite()) {
        TateVerdict::Pass
    } else if tail(start) < tail(mid) && tail(mid) < tail(n) {
        TateVerdict::Pass
    } else if 2 * window
        .iter()
        .filter(|(_, v)| matches!(v, Valuation::Finite(x) if *x <= 0))
        .count()
        >= window.len()
    {
        TateVerdict::Fail
    } else {
        TateVerdict::Inconclusive
    };
    Ok(TateReport {
        verdict,
        profile,
        window: (start, n),
    })
}

/// `sum_n (Jq^k)^n (f)` through degree `order`.
pub fn geometric_inverse(k: u32, f: &Polynomial, order: u32) -> Result<TruncatedSeries> {
    if k == 0 {
        return Err(Error::Domain("(1 - Jq^0) is not invertible".into()));
    }
    let mut acc = Polynomial::zero(f.arity());
    let mut g = f.truncate(order);
    while !g.is_zero() {
        acc = &acc + &g;
        g = apply_jq(k, &g).truncate(order);
    }
    Ok(TruncatedSeries::from_polynomial(&acc, order))
}

/// An equation `theta(zeta) = b` in one variable.
///
/// Polynomial coefficients in front of operator words are accepted by the
/// parser but only constant coefficients can be solved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sode {
    terms: Vec<(Polynomial, OpWord)>,
    rhs: Polynomial,
}

impl Sode {
    pub fn new(op: OpElement, rhs: Polynomial) -> Result<Self> {
        if op.is_zero() {
            return Err(Error::Domain("zero operator".into()));
        }
        let rhs = rhs.with_arity(1)?;
        let terms = op
            .terms()
            .map(|(w, c)| (Polynomial::constant(1, c.clone()), w.clone()))
            .collect();
        Ok(Sode { terms, rhs })
    }

    /// `op` may contain factors like `(1 + x1)*Jq1`.
    pub fn parse(op: &str, rhs: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (neg, term) in text::split_terms(op)? {
            let mut coeff = Polynomial::one(1);
            let mut word = OpWord::identity();
            for f in text::split_factors(&term)? {
                if let Some(q) = text::parse_number(f) {
                    coeff = coeff.scale(&q);
                } else if f.starts_with("Jq") {
                    word = word.concat(&f.parse()?);
                } else {
                    let inner = f
                        .strip_prefix('(')
                        .and_then(|x| x.strip_suffix(')'))
                        .unwrap_or(f);
                    coeff = &coeff * &Polynomial::parse(inner, 1)?;
                }
            }
            if neg {
                coeff = -&coeff;
            }
            terms.push((coeff, word));
        }
        let rhs = Polynomial::parse(rhs, 1)?;
        let s = Sode { terms, rhs };
        if s.terms.iter().all(|(c, _)| c.is_zero()) {
            return Err(Error::Domain("zero operator".into()));
        }
        Ok(s)
    }

    pub fn rhs(&self) -> &Polynomial {
        &self.rhs
    }

    /// The operator, if every coefficient is a constant.
    pub fn operator(&self) -> Result<OpElement> {
        let mut e = OpElement::zero();
        for (c, w) in &self.terms {
            match c.homogeneous_degree() {
                None if c.is_zero() => {}
                Some(0) => e.add_term(w.clone(), c.coeff(&MultiIndex::zero(1))),
                _ => {
                    return Err(Error::UnsupportedCoefficients(format!(
                        "coefficient {c} of {w} is not constant"
                    )))
                }
            }
        }
        Ok(e)
    }
}

/// Dense coefficients of `p(t + x0)` in `t`.
fn recenter(p: &Polynomial, x0: &Dyadic) -> Vec<Dyadic> {
    let deg = p.degree().unwrap_or(0) as usize;
    let mut out = vec![Dyadic::zero(); deg + 1];
    for (m, c) in p.terms() {
        let d = m.degree();
        for i in 0..=d {
            let b = Dyadic::from(binomial(d as u64, i as u64));
            out[i as usize] += &(c * &b * x0.pow(d - i));
        }
    }
    out
}

/// Power-series solution of `theta(zeta) = b` centered at `x0` with `zeta(x0) = a0`.
///
/// The coefficient equations come from applying `theta` to each `(x - x0)^n`
/// exactly; equations `0..=order - g` are imposed (`g` the order loss), and any
/// coefficient left free is set to zero.
pub fn sode_solve(eq: &Sode, x0: &Dyadic, a0: &Dyadic, order: u32) -> Result<TruncatedSeries> {
    let theta = eq.operator()?;
    let loss = order_loss(&theta, Some(x0));
    if loss > order {
        return Err(Error::Domain(format!(
            "order {order} is too small for an operator of degree {loss}"
        )));
    }
    let n_eq = (order - loss) as usize + 1;
    let n_unknowns = order as usize; // a_1 ..= a_order
    let b = recenter(&eq.rhs, x0);
    // column n: theta((x - x0)^n)
    let cols: Vec<Vec<Dyadic>> = (0..=order as usize)
        .map(|n| {
            let mut unit = vec![Dyadic::zero(); n + 1];
            unit[n] = Dyadic::one();
            centered_element(&theta, x0, &unit)
        })
        .collect();
    let at = |v: &Vec<Dyadic>, m: usize| v.get(m).cloned().unwrap_or_default();
    // augmented rows [a_1 .. a_order | rhs - a0 * theta(1)]
    let mut ech = Echelon::new(n_unknowns + 1);
    for m in 0..n_eq {
        let mut row: Vec<Dyadic> = (1..=order as usize).map(|n| at(&cols[n], m)).collect();
        row.push(at(&b, m) - a0 * &at(&cols[0], m));
        ech.insert(&row);
        if ech.pivots().contains(&n_unknowns) {
            return Err(Error::NoSolution(format!(
                "coefficient equation {m} (degree {m} in x - {x0}) is inconsistent"
            )));
        }
    }
    let mut coeffs = vec![a0.clone()];
    let mut sol = vec![Dyadic::zero(); n_unknowns];
    for r in ech.rows() {
        let p = r.iter().position(|x| !x.is_zero()).expect("pivot");
        sol[p] = r[n_unknowns].clone();
    }
    coeffs.extend(sol);
    let s = TruncatedSeries::centered(x0.clone(), order, &coeffs);
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SodeResidual {
    /// The residual vanishes in every degree `0..=through`.
    Verified { through: u32 },
    FirstFailure { degree: u32, coeff: Dyadic },
}

/// Residual of a candidate through degree `min(order, candidate order - loss)`.
pub fn sode_residual(eq: &Sode, candidate: &TruncatedSeries, order: u32) -> Result<SodeResidual> {
    let theta = eq.operator()?;
    if candidate.arity != 1 {
        return Err(Error::ArityMismatch {
            left: candidate.arity,
            right: 1,
        });
    }
    let x0 = candidate.center.clone().unwrap_or_default();
    let loss = order_loss(&theta, Some(&x0));
    let limit = order.min(candidate.order.saturating_sub(loss));
    let img = centered_element(&theta, &x0, &candidate.coeffs());
    let b = recenter(&eq.rhs, &x0);
    for m in 0..=limit as usize {
        let get = |v: &Vec<Dyadic>| v.get(m).cloned().unwrap_or_default();
        let r = get(&img) - get(&b);
        if !r.is_zero() {
            return Ok(SodeResidual::FirstFailure {
                degree: m as u32,
                coeff: r,
            });
        }
    }
    Ok(SodeResidual::Verified { through: limit })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Dyadic {
        Dyadic::ratio(n, d)
    }

    fn factorial(k: u32) -> Dyadic {
        (1..=k as i64).fold(Dyadic::one(), |a, i| a * Dyadic::from(i))
    }

    #[test]
    fn stencil_matches_direct_expansion() {
        for x0 in [q(1, 1), q(2, 1), q(1, 3)] {
            for k in 1..=3 {
                for n in 0..=8u32 {
                    // (x - x0)^n expanded in x, Jq^k applied, re-centered
                    let t = Polynomial::from_terms(
                        1,
                        [(MultiIndex::new(vec![1]), q(1, 1)), (MultiIndex::new(vec![0]), -&x0)],
                    );
                    let img = apply_jq(k, &t.pow(n));
                    let direct = recenter(&img, &x0);
                    let mut unit = vec![Dyadic::zero(); n as usize + 1];
                    unit[n as usize] = Dyadic::one();
                    let mut via = centered_jq(k, &x0, &unit);
                    via.resize(direct.len().max(via.len()), Dyadic::zero());
                    let mut d2 = direct.clone();
                    d2.resize(via.len(), Dyadic::zero());
                    assert_eq!(via, d2, "k={k} n={n} x0={x0}");
                }
            }
        }
    }

    #[test]
    fn apply_examples() {
        let s = TruncatedSeries::from_polynomial(&"x1^4".parse().unwrap(), 10);
        let r = series_apply_op(&"Jq2".parse().unwrap(), &s).unwrap();
        assert_eq!(r.to_polynomial(), "6*x1^6".parse().unwrap());
        assert_eq!(series_apply_op(&OpElement::one(), &s).unwrap(), s);
    }

    #[test]
    fn geometric() {
        let s = geometric_inverse(1, &"x1".parse().unwrap(), 12).unwrap();
        for k in 0..12 {
            assert_eq!(s.coeff(k + 1), factorial(k));
        }
        let s = geometric_inverse(2, &"x1".parse().unwrap(), 9).unwrap();
        assert_eq!(s.to_polynomial(), "x1".parse().unwrap());
        let s = geometric_inverse(2, &"x1^2".parse().unwrap(), 8).unwrap();
        assert_eq!(s.to_polynomial(), "x1^2 + x1^4 + 6*x1^6 + 90*x1^8".parse().unwrap());
    }

    #[test]
    fn sode_center_one() {
        let eq = Sode::parse("Jq1 - 1", "0").unwrap();
        let s = sode_solve(&eq, &q(1, 1), &q(1, 1), 10).unwrap();
        assert_eq!(s.coeff(1), q(1, 1));
        assert_eq!(s.coeff(2), q(-1, 2));
        assert_eq!(
            sode_residual(&eq, &s, 10).unwrap(),
            SodeResidual::Verified { through: 9 }
        );
        let err = sode_solve(&eq, &q(0, 1), &q(1, 1), 10).unwrap_err();
        assert!(matches!(err, Error::NoSolution(_)));
    }

    #[test]
    fn polynomial_coefficients_rejected() {
        let eq = Sode::parse("(1 + x1)*Jq1 - 1", "x1").unwrap();
        assert!(matches!(
            sode_solve(&eq, &q(1, 1), &q(1, 1), 5),
            Err(Error::UnsupportedCoefficients(_))
        ));
    }

    #[test]
    fn tate_examples() {
        let fact: Vec<Dyadic> = (0..=40).map(|k| if k == 0 { Dyadic::zero() } else { factorial(k - 1) }).collect();
        let s = TruncatedSeries::from_coeffs(40, &fact);
        assert_eq!(tate_check(&s).unwrap().verdict, TateVerdict::Pass);
        let ones = vec![Dyadic::one(); 41];
        assert_eq!(
            tate_check(&TruncatedSeries::from_coeffs(40, &ones)).unwrap().verdict,
            TateVerdict::Fail
        );
        let pow2: Vec<Dyadic> = (0..=40).map(|k| Dyadic::two_pow(k)).collect();
        assert_eq!(
            tate_check(&TruncatedSeries::from_coeffs(40, &pow2)).unwrap().verdict,
            TateVerdict::Pass
        );
    }
}
