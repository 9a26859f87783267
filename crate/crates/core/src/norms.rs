//! The Adem valuation, the `ker(phi)`-adic valuation and the operator-norm estimator.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Lattice};
use crate::opalg::{
    admissible_form, coordinates, eval_element, phi_reduce, signature, ClassicalWord,
    Coordinate, EvalBounds, OpElement, OpWord,
};
use crate::poly::{MultiIndex, Polynomial};
use crate::scalar::{Dyadic, Valuation};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormMethod {
    AdemWordLength,
    KerAdicLattice,
    MonomialSup,
}

impl NormMethod {
    pub fn name(self) -> &'static str {
        match self {
            NormMethod::AdemWordLength => "ademWordLength",
            NormMethod::KerAdicLattice => "kerAdicLattice",
            NormMethod::MonomialSup => "monomialSup",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormBounds {
    pub n_vars: usize,
    pub deg_bound: u32,
    pub max_j: u32,
}

impl Default for NormBounds {
    fn default() -> Self {
        NormBounds {
            n_vars: 4,
            deg_bound: 16,
            max_j: 6,
        }
    }
}

impl NormBounds {
    fn eval(&self) -> EvalBounds {
        EvalBounds::new(self.n_vars, self.deg_bound)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// A rewriting of the input into long words.
    Element(OpElement),
    /// A monomial and the output polynomial attaining the bound.
    Monomial(MultiIndex, Polynomial),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationReport {
    pub value: Valuation,
    pub method: NormMethod,
    pub bounds: NormBounds,
    pub witness: Option<Witness>,
}

impl ValuationReport {
    /// `2^{-value}`.
    pub fn norm(&self) -> Dyadic {
        self.value.abs()
    }
}

fn homogeneous(e: &OpElement) -> Result<Option<u32>> {
    if e.is_zero() {
        return Ok(None);
    }
    e.homogeneous_degree().map(Some).ok_or(Error::NotHomogeneous)
}

/// Word signatures in one degree with nested echelon forms of the spans of
/// words of length at least `j`, for repeated Adem valuations.
#[derive(Clone, Debug)]
pub struct AdemTable {
    degree: u32,
    bounds: NormBounds,
    coords: Vec<Coordinate>,
    /// Longest words first.
    words: Vec<OpWord>,
    sigs: Vec<Vec<Dyadic>>,
    /// `(j, n, echelon of the first n signatures)`, `j` descending.
    levels: Vec<(usize, usize, Echelon)>,
}

impl AdemTable {
    pub fn new(d: u32, bounds: NormBounds) -> Self {
        let all = coordinates(d, &bounds.eval(), false);
        let mut words = OpWord::compositions(d);
        words.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let full: Vec<Vec<Dyadic>> = words
            .iter()
            .map(|w| signature(&OpElement::word(w.clone()), &all))
            .collect();
        // Every element's signature lies in the span of the word signatures,
        // so the pivot coordinates of that span already separate elements.
        let piv = linalg::echelon(&full, all.len()).pivots();
        let coords: Vec<Coordinate> = piv.iter().map(|&i| all[i].clone()).collect();
        let sigs: Vec<Vec<Dyadic>> = full
            .iter()
            .map(|s| piv.iter().map(|&i| s[i].clone()).collect())
            .collect();
        let mut levels = Vec::new();
        let mut ech = Echelon::new(coords.len());
        let mut i = 0;
        while i < words.len() {
            let len = words[i].len();
            while i < words.len() && words[i].len() == len {
                ech.insert(&sigs[i]);
                i += 1;
            }
            levels.push((len, i, ech.clone()));
        }
        AdemTable {
            degree: d,
            bounds,
            coords,
            words,
            sigs,
            levels,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Valuation of a nonzero element of this degree, with the rewriting.
    pub fn valuation(&self, e: &OpElement) -> Result<ValuationReport> {
        if e.homogeneous_degree() != Some(self.degree) {
            return Err(Error::Domain(format!("expected degree {}", self.degree)));
        }
        let target = signature(e, &self.coords);
        let mut report = ValuationReport {
            value: Valuation::Infinite,
            method: NormMethod::AdemWordLength,
            bounds: self.bounds,
            witness: None,
        };
        if target.iter().all(Dyadic::is_zero) {
            return Ok(report);
        }
        let (len, n, ech) = self
            .levels
            .iter()
            .find(|(_, _, ech)| ech.contains(&target))
            .expect("every homogeneous element is a combination of words");
        // pivot coordinates determine vectors in the span
        let piv = ech.pivots();
        let rows: Vec<Vec<Dyadic>> = piv
            .iter()
            .map(|&r| self.sigs[..*n].iter().map(|s| s[r].clone()).collect())
            .collect();
        let b: Vec<Dyadic> = piv.iter().map(|&r| target[r].clone()).collect();
        let x = linalg::solve(&rows, &b, *n).expect("consistent on pivot coordinates");
        report.value = Valuation::Finite(*len as i64);
        report.witness = Some(Witness::Element(OpElement::from_vector(&self.words[..*n], &x)));
        Ok(report)
    }
}

/// Largest `j` such that `e` equals, under evaluation, a rational combination
/// of words of length at least `j`.
pub fn adem_valuation(e: &OpElement, bounds: NormBounds) -> Result<ValuationReport> {
    match homogeneous(e)? {
        None => Ok(ValuationReport {
            value: Valuation::Infinite,
            method: NormMethod::AdemWordLength,
            bounds,
            witness: None,
        }),
        Some(0) => Ok(ValuationReport {
            value: Valuation::Finite(0),
            method: NormMethod::AdemWordLength,
            bounds,
            witness: None,
        }),
        Some(d) => AdemTable::new(d, bounds).valuation(e),
    }
}

/// `phi(e) = 0`.
pub fn ker_phi_membership(e: &OpElement) -> Result<bool> {
    Ok(phi_reduce(e)?.is_zero())
}

/// `F_2` kernel basis of `rows`, each vector paired with its free column.
fn f2_kernel(rows: &[Vec<bool>], ncols: usize) -> Vec<(usize, Vec<bool>)> {
    let mut m: Vec<Vec<bool>> = rows.to_vec();
    let mut pivots = Vec::new();
    for c in 0..ncols {
        let r = pivots.len();
        let Some(p) = (r..m.len()).find(|&i| m[i][c]) else {
            continue;
        };
        m.swap(r, p);
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] {
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x ^= *y;
                }
            }
        }
        pivots.push(c);
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![false; ncols];
            v[f] = true;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = m[i][f];
            }
            (f, v)
        })
        .collect()
}

/// A `Z_(2)`-basis of `ker(phi)` in degree `c >= 1`, as elements over words.
///
/// Lifts of an `F_2` kernel basis in echelon form, plus `2w` for each word
/// that is not a free column.
pub fn ker_phi_generators(c: u32) -> Vec<OpElement> {
    let words = OpWord::compositions(c);
    let images: Vec<_> = words.iter().map(|w| admissible_form(w.factors())).collect();
    let mut adm: Vec<ClassicalWord> = images.iter().flat_map(|e| e.words().cloned()).collect();
    adm.sort();
    adm.dedup();
    let rows: Vec<Vec<bool>> = adm
        .iter()
        .map(|a| images.iter().map(|e| e.contains(a)).collect())
        .collect();
    let ker = f2_kernel(&rows, words.len());
    let mut free = vec![false; words.len()];
    let mut out = Vec::new();
    for (f, v) in &ker {
        free[*f] = true;
        out.push(OpElement::from_terms(
            words
                .iter()
                .zip(v)
                .filter(|(_, &b)| b)
                .map(|(w, _)| (w.clone(), Dyadic::one())),
        ));
    }
    for (w, _) in words.iter().zip(&free).filter(|(_, &f)| !f) {
        out.push(OpElement::term(w.clone(), Dyadic::from(2)));
    }
    out
}

/// Largest `j <= max_j` with `e` in `ker(phi)^j`, by lattice membership in
/// evaluation coordinates.
///
/// `ker(phi)^j` in degree `d` is spanned by `2^{j-i}` times products of `i`
/// positive-degree kernel generators of total degree `d`.
pub fn ker_adic_valuation(
    e: &OpElement,
    bounds: NormBounds,
    degree_bound: u32,
) -> Result<ValuationReport> {
    let report = |value| ValuationReport {
        value,
        method: NormMethod::KerAdicLattice,
        bounds,
        witness: None,
    };
    if !e.in_z2() {
        return Err(Error::NotInZ2(format!("{e}")));
    }
    let Some(d) = homogeneous(e)? else {
        return Ok(report(Valuation::Infinite));
    };
    if d > degree_bound {
        return Err(Error::DegreeBound {
            degree: d,
            bound: degree_bound,
        });
    }
    if d == 0 {
        let v = e.coeff(&OpWord::identity()).valuation();
        return Ok(report(match v {
            Valuation::Finite(v) => Valuation::Finite(v.min(bounds.max_j as i64)),
            inf => inf,
        }));
    }
    if !ker_phi_membership(e)? {
        return Ok(report(Valuation::Finite(0)));
    }
    let coords = coordinates(d, &bounds.eval(), false);
    let target = signature(e, &coords);
    if target.iter().all(Dyadic::is_zero) {
        return Ok(report(Valuation::Infinite));
    }
    let gens: Vec<Vec<OpElement>> = (0..=d)
        .map(|c| if c == 0 { Vec::new() } else { ker_phi_generators(c) })
        .collect();
    let mut best = 1u32;
    for j in 2..=bounds.max_j {
        let mut lattice_gens = Vec::new();
        for i in 1..=j.min(d) {
            let scale = Dyadic::two_pow((j - i) as i64);
            for comp in OpWord::compositions_of_length(d, i as usize) {
                for p in products(&comp, &gens) {
                    lattice_gens.push(signature(&p.scale(&scale), &coords));
                }
            }
        }
        if Lattice::new(&lattice_gens, coords.len()).contains(&target) {
            best = j;
        } else {
            break;
        }
    }
    Ok(report(Valuation::Finite(best as i64)))
}

fn products(degrees: &OpWord, gens: &[Vec<OpElement>]) -> Vec<OpElement> {
    let mut acc = vec![OpElement::one()];
    for &c in degrees.factors() {
        acc = acc
            .iter()
            .flat_map(|a| gens[c as usize].iter().map(move |g| a * g))
            .collect();
    }
    acc
}

/// Monomials of degree at most `deg_bound` in `n_vars` variables with
/// nonincreasing exponents, by degree.
pub(crate) fn sorted_monomials(n_vars: usize, deg_bound: u32) -> Vec<MultiIndex> {
    fn rec(n: u32, parts: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        if parts == 0 {
            return;
        }
        for a in (1..=n.min(max)).rev() {
            cur.push(a);
            rec(n - a, parts - 1, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for d in 0..=deg_bound {
        let mut ps = Vec::new();
        rec(d, n_vars, d, &mut Vec::new(), &mut ps);
        for mut p in ps {
            p.resize(n_vars, 0);
            out.push(MultiIndex::new(p));
        }
    }
    out
}

/// `2^{-v}` with `v` the least coefficient valuation of `e(mu)` over monomials
/// `mu` in the bounds: a lower bound on the operator norm.
///
/// The action commutes with permuting variables, so only sorted exponent
/// vectors are scanned.
pub fn operator_norm_estimate(e: &OpElement, bounds: NormBounds) -> Result<ValuationReport> {
    if !e.in_z2() {
        return Err(Error::NotInZ2(format!("{e}")));
    }
    let mut best: Option<(Valuation, MultiIndex, Polynomial)> = None;
    for mu in sorted_monomials(bounds.n_vars, bounds.deg_bound) {
        let out = eval_element(e, &Polynomial::monomial(mu.clone(), Dyadic::one()));
        let v = out.min_valuation();
        if v.is_infinite() {
            continue;
        }
        if best.as_ref().is_none_or(|(b, _, _)| v < *b) {
            let done = v == Valuation::Finite(0);
            best = Some((v, mu, out));
            if done {
                break;
            }
        }
    }
    Ok(match best {
        Some((v, mu, out)) => ValuationReport {
            value: v,
            method: NormMethod::MonomialSup,
            bounds,
            witness: Some(Witness::Monomial(mu, out)),
        },
        None => ValuationReport {
            value: Valuation::Infinite,
            method: NormMethod::MonomialSup,
            bounds,
            witness: None,
        },
    })
}

/// `rho^{deg e}`.
pub fn degree_norm(e: &OpElement, rho: &Dyadic) -> Result<Dyadic> {
    if !(*rho > 0 && *rho < 1) {
        return Err(Error::Domain(format!("rho = {rho} is not in (0, 1)")));
    }
    match homogeneous(e)? {
        None => Ok(Dyadic::zero()),
        Some(d) => Ok(rho.pow(d)),
    }
}
