//! The hit problem over the dyadic integers.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::action::{apply_jq, apply_word};
use crate::error::{Error, Result};
use crate::linalg::Lattice;
use crate::poly::{MultiIndex, Polynomial};
use crate::opalg::OpWord;
use crate::scalar::{binom_valuation, Dyadic};

/// `f = sum Jq^k(f_k)` with every `k >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HitCertificate {
    pub pairs: Vec<(u32, Polynomial)>,
}

impl HitCertificate {
    pub fn reconstruct(&self, arity: usize) -> Polynomial {
        self.pairs
            .iter()
            .fold(Polynomial::zero(arity), |acc, (k, g)| &acc + &apply_jq(*k, g))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HitDecision {
    pub hit: bool,
    pub certificate: Option<HitCertificate>,
}

/// Least `v2(C(d - i, i))` over `1 <= i < d` with a nonzero binomial; `None` for `d = 1`.
///
/// `a x^d` in one variable is hit iff `v2(a) >= m(d)`.
pub fn min_hit_valuation(d: u32) -> Option<u32> {
    (1..d)
        .filter_map(|i| binom_valuation((d - i) as u64, i as u64))
        .min()
}

/// The order of the cohit group `Q^d(1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CohitOrder {
    /// `2^m`.
    PowerOfTwo(u32),
    Infinite,
}

impl CohitOrder {
    pub fn size(self) -> Option<BigInt> {
        match self {
            CohitOrder::PowerOfTwo(m) => Some(BigInt::from(1) << m),
            CohitOrder::Infinite => None,
        }
    }
}

impl fmt::Display for CohitOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.size() {
            Some(n) => write!(f, "{n}"),
            None => f.write_str("inf"),
        }
    }
}

pub fn cohit_order(d: u32) -> Result<CohitOrder> {
    if d == 0 {
        return Err(Error::Domain("degree must be positive".into()));
    }
    Ok(match min_hit_valuation(d) {
        Some(m) => CohitOrder::PowerOfTwo(m),
        None => CohitOrder::Infinite,
    })
}

/// All monomials of degree `d` in `n` variables, ascending.
pub(crate) fn monomials(n: usize, d: u32) -> Vec<MultiIndex> {
    fn rec(n: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if cur.len() + 1 == n {
            cur.push(d);
            out.push(MultiIndex::new(cur.clone()));
            cur.pop();
            return;
        }
        for a in 0..=d {
            cur.push(a);
            rec(n, d - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, d, &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

fn check_graded(f: &Polynomial) -> Result<u32> {
    if !f.in_z2() {
        return Err(Error::NotInZ2(format!("{f}")));
    }
    match f.homogeneous_degree() {
        Some(0) => Err(Error::Domain("degree 0 elements are never hit".into())),
        Some(d) => Ok(d),
        None if f.is_zero() => Err(Error::Domain("zero has no degree".into())),
        None => Err(Error::NotHomogeneous),
    }
}

/// Coordinates of `p` on `basis`.
fn coords_of(p: &Polynomial, basis: &[MultiIndex]) -> Vec<Dyadic> {
    basis.iter().map(|m| p.coeff(m)).collect()
}

/// `f = lambda * col` with `lambda` in `Z_(2)`.
fn single_multiple(f: &Polynomial, col: &Polynomial) -> Option<Dyadic> {
    let (m, c) = col.terms().next()?;
    let lambda = &f.coeff(m) / c;
    if !lambda.in_z2() || lambda.is_zero() || col.len() != f.len() {
        return None;
    }
    col.terms()
        .all(|(m, c)| f.coeff(m) == &lambda * c)
        .then_some(lambda)
}

/// Decide whether a homogeneous `f` is hit, with a reconstructing certificate.
///
/// Tries single columns `Jq^i(mu)` first (an exact match, else the column of
/// least valuation, smallest `i` first), then Z_(2) elimination on all columns.
/// `precision_j` is accepted for interface symmetry; the decision is exact.
pub fn hit_decide_graded(f: &Polynomial, _precision_j: u32) -> Result<HitDecision> {
    let d = check_graded(f)?;
    let n = f.arity();
    let mut cols: Vec<(u32, MultiIndex, Polynomial)> = Vec::new();
    for i in 1..d {
        for mu in monomials(n, d - i) {
            let c = apply_jq(i, &Polynomial::monomial(mu.clone(), Dyadic::one()));
            if !c.is_zero() {
                cols.push((i, mu, c));
            }
        }
    }
    let verified = |cert: HitCertificate| -> Result<HitDecision> {
        if &cert.reconstruct(n) != f {
            return Err(Error::ResolutionFailed(format!(
                "certificate does not reconstruct {f}"
            )));
        }
        Ok(HitDecision {
            hit: true,
            certificate: Some(cert),
        })
    };
    let singles: Vec<(usize, Dyadic)> = cols
        .iter()
        .enumerate()
        .filter_map(|(ix, (_, _, c))| single_multiple(f, c).map(|l| (ix, l)))
        .collect();
    let pick = singles
        .iter()
        .find(|(_, l)| l.is_one())
        .or_else(|| singles.iter().min_by_key(|(ix, _)| cols[*ix].2.min_valuation()));
    if let Some((ix, lambda)) = pick {
        let (i, mu, _) = &cols[*ix];
        return verified(HitCertificate {
            pairs: alloc::vec![(*i, Polynomial::monomial(mu.clone(), lambda.clone()))],
        });
    }
    let basis = monomials(n, d);
    let gens: Vec<Vec<Dyadic>> = cols.iter().map(|(_, _, c)| coords_of(c, &basis)).collect();
    match Lattice::new(&gens, basis.len()).member(&coords_of(f, &basis)) {
        None => Ok(HitDecision {
            hit: false,
            certificate: None,
        }),
        Some(x) => {
            let mut by_k: BTreeMap<u32, Polynomial> = BTreeMap::new();
            for ((i, mu, _), c) in cols.iter().zip(x) {
                if !c.is_zero() {
                    by_k.entry(*i)
                        .or_insert_with(|| Polynomial::zero(n))
                        .add_term(mu.clone(), c);
                }
            }
            verified(HitCertificate {
                pairs: by_k.into_iter().filter(|(_, g)| !g.is_zero()).collect(),
            })
        }
    }
}

/// Hit decision for any polynomial, graded part by graded part.
pub fn hit_decide(f: &Polynomial, precision_j: u32) -> Result<HitDecision> {
    if !f.in_z2() {
        return Err(Error::NotInZ2(format!("{f}")));
    }
    let mut pairs: BTreeMap<u32, Polynomial> = BTreeMap::new();
    for (d, part) in f.graded_parts() {
        if d == 0 {
            return Ok(HitDecision {
                hit: false,
                certificate: None,
            });
        }
        let r = hit_decide_graded(&part, precision_j)?;
        let Some(cert) = r.certificate else {
            return Ok(r);
        };
        for (k, g) in cert.pairs {
            let e = pairs.entry(k).or_insert_with(|| Polynomial::zero(f.arity()));
            *e = &*e + &g;
        }
    }
    Ok(HitDecision {
        hit: true,
        certificate: Some(HitCertificate {
            pairs: pairs.into_iter().collect(),
        }),
    })
}

/// Largest `j <= max_j` with `f` in the `Z_(2)`-span of `w(mu)` over words `w`
/// of length at least `j`; `j >= 1` iff `f` is hit.
pub fn module_adem_filtration(f: &Polynomial, max_j: u32) -> Result<u32> {
    let d = check_graded(f)?;
    let n = f.arity();
    let basis = monomials(n, d);
    let target = coords_of(f, &basis);
    let mut best = 0;
    for j in 1..=max_j.min(d) {
        let mut gens = Vec::new();
        for i in j..d {
            let words: Vec<OpWord> = OpWord::compositions(i)
                .into_iter()
                .filter(|w| w.len() >= j as usize)
                .collect();
            for mu in monomials(n, d - i) {
                let m = Polynomial::monomial(mu, Dyadic::one());
                for w in &words {
                    let c = apply_word(w, &m);
                    if !c.is_zero() {
                        gens.push(coords_of(&c, &basis));
                    }
                }
            }
        }
        if Lattice::new(&gens, basis.len()).contains(&target) {
            best = j;
        } else {
            break;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s, 1).unwrap()
    }

    #[test]
    fn oracle_values() {
        assert_eq!(min_hit_valuation(1), None);
        assert_eq!(min_hit_valuation(2), Some(0));
        assert_eq!(min_hit_valuation(3), Some(1));
        assert_eq!(min_hit_valuation(4), Some(0));
        assert_eq!(cohit_order(1).unwrap(), CohitOrder::Infinite);
        assert_eq!(cohit_order(3).unwrap().to_string(), "2");
        assert_eq!(cohit_order(2).unwrap().to_string(), "1");
    }

    #[test]
    fn small_decisions() {
        let r = hit_decide_graded(&p("x1^2"), 4).unwrap();
        assert_eq!(r.certificate.unwrap().pairs, [(1, p("x1"))]);
        assert!(!hit_decide_graded(&p("x1^3"), 4).unwrap().hit);
        assert!(hit_decide_graded(&p("2*x1^3"), 4).unwrap().hit);
        let r = hit_decide_graded(&p("4*x1^7"), 4).unwrap();
        assert_eq!(r.certificate.unwrap().pairs, [(3, p("x1^4"))]);
        let r = hit_decide_graded(&p("2*x1^7"), 4).unwrap();
        assert_eq!(r.certificate.unwrap().pairs, [(1, p("1/3*x1^6"))]);
        assert!(hit_decide_graded(&p("x1 + x1^2"), 4).is_err());
    }

    #[test]
    fn two_variables() {
        assert!(!hit_decide_graded(&Polynomial::parse("x1*x2", 2).unwrap(), 4).unwrap().hit);
        let g = Polynomial::parse("x1*x2^2 + x1^2*x2", 2).unwrap();
        let r = hit_decide_graded(&g, 4).unwrap();
        assert!(r.hit);
        assert_eq!(r.certificate.unwrap().reconstruct(2), g);
        assert!(!hit_decide_graded(&Polynomial::parse("x1^3", 2).unwrap(), 4).unwrap().hit);
    }

    #[test]
    fn filtration() {
        assert_eq!(module_adem_filtration(&p("x1^3"), 6).unwrap(), 0);
        assert!(module_adem_filtration(&p("x1^4"), 6).unwrap() >= 1);
        assert_eq!(monomials(2, 2).len(), 3);
    }
}
