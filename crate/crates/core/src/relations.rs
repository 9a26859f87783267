//! Discovering relations among composites by exact linear algebra.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Lattice};
use crate::opalg::{
    coordinates, equal_by_evaluation, evaluate_on_power, signature, signature_matrix, EvalBounds,
    OpElement, OpWord,
};
use crate::scalar::{Dyadic, Valuation};

/// How operator columns were turned into numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semantics {
    /// Coefficients of the symbolic action on `x^m`, one variable.
    SymbolicPower,
    /// Evaluation coordinates within the given bounds.
    Evaluation(EvalBounds),
}

/// A nullspace basis over a word list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationBasis {
    pub degree: u32,
    pub words: Vec<OpWord>,
    /// Primitive integer vectors, first nonzero entry positive.
    pub basis: Vec<Vec<Dyadic>>,
    pub semantics: Semantics,
}

impl RelationBasis {
    pub fn elements(&self) -> Vec<OpElement> {
        self.basis
            .iter()
            .map(|v| OpElement::from_vector(&self.words, v))
            .collect()
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `v` (over `self.words`) lies in the rational span of the basis.
    pub fn contains(&self, v: &[Dyadic]) -> bool {
        let mut e = Echelon::new(self.words.len());
        for b in &self.basis {
            e.insert(b);
        }
        e.contains(v)
    }
}

/// Matrix with one column per word: rows are the `m^i` coefficients of the
/// symbolic action, or evaluation coordinates.
pub fn word_matrix(d: u32, words: &[OpWord], semantics: Semantics) -> Vec<alloc::vec::Vec<Dyadic>> {
    match semantics {
        Semantics::SymbolicPower => {
            let polys: Vec<_> = words.iter().map(evaluate_on_power).collect();
            (0..=d as usize)
                .map(|i| polys.iter().map(|p| p.coeff(i)).collect())
                .collect()
        }
        Semantics::Evaluation(b) => signature_matrix(words, &coordinates(d, &b, false)),
    }
}

/// Nullspace of the symbolic single-variable action over `words` (all of degree `k`).
pub fn adem_nullspace(k: u32, words: &[OpWord]) -> Result<RelationBasis> {
    adem_nullspace_with(k, words, Semantics::SymbolicPower)
}

pub fn adem_nullspace_with(k: u32, words: &[OpWord], semantics: Semantics) -> Result<RelationBasis> {
    if words.is_empty() {
        return Err(Error::Domain("empty word set".into()));
    }
    if let Some(w) = words.iter().find(|w| w.degree() != k) {
        return Err(Error::Domain(format!("word {w} does not have degree {k}")));
    }
    let m = word_matrix(k, words, semantics);
    let basis = linalg::nullspace(&m, words.len())
        .iter()
        .map(|v| Dyadic::primitive(v))
        .collect();
    Ok(RelationBasis {
        degree: k,
        words: words.to_vec(),
        basis,
        semantics,
    })
}

/// `Jq^k` followed by all words with exactly `t` factors.
pub fn partition_words(k: u32, t: usize) -> Vec<OpWord> {
    let mut v = alloc::vec![OpWord::generator(k)];
    if t > 1 {
        v.extend(OpWord::compositions_of_length(k, t));
    }
    v
}

/// `Jq^k` as a `Z_2`-combination of words whose factors are powers of two.
///
/// Searches the saturated `Z_(2)`-lattice of relations over
/// `{Jq^k} ∪ binary words` for a vector with unit `Jq^k` coefficient.
pub fn binary_decompose(k: u32, bounds: Option<EvalBounds>) -> Result<OpElement> {
    if k == 0 || k.is_power_of_two() {
        return Err(Error::Indecomposable(k));
    }
    let b = bounds.unwrap_or_else(|| EvalBounds::for_degree(k));
    let mut words = alloc::vec![OpWord::generator(k)];
    words.extend(OpWord::binary_compositions(k));
    let m = word_matrix(k, &words, Semantics::Evaluation(b));
    let ns = linalg::nullspace(&m, words.len());
    let sat = linalg::saturate(&ns);
    let best = sat.iter().min_by_key(|v| v[0].valuation());
    let describe = |v: Option<Valuation>| {
        format!(
            "k = {k}, n_vars = {}, deg_bound = {}, {} binary words, relation lattice rank {}, best Jq^{k} coefficient valuation {}",
            b.n_vars,
            b.deg_bound,
            words.len() - 1,
            sat.len(),
            v.map(|x| format!("{x}")).unwrap_or_else(|| String::from("inf"))
        )
    };
    match best {
        Some(v) if v[0].valuation() == Valuation::Finite(0) => {
            let lead = v[0].clone();
            let e = OpElement::from_terms(
                words
                    .iter()
                    .zip(v)
                    .skip(1)
                    .map(|(w, c)| (w.clone(), -(c / &lead))),
            );
            debug_assert!(e.in_z2());
            Ok(e)
        }
        other => Err(Error::ResolutionFailed(describe(
            other.map(|v| v[0].valuation()),
        ))),
    }
}

/// `Jq^k` as a rational combination of words in `Jq^1` and `Jq^2`.
///
/// Solved directly in evaluation coordinates; free coefficients are zero.
pub fn q12_decompose(k: u32, bounds: Option<EvalBounds>) -> Result<OpElement> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    if k <= 2 {
        return Ok(OpElement::generator(k));
    }
    let b = bounds.unwrap_or_else(|| EvalBounds::for_degree(k));
    let words = OpWord::q12_compositions(k);
    let coords = coordinates(k, &b, false);
    let m = signature_matrix(&words, &coords);
    let target = signature(&OpElement::generator(k), &coords);
    let x = linalg::solve(&m, &target, words.len()).ok_or_else(|| {
        Error::ResolutionFailed(format!(
            "Jq^{k} is not in the span of the {} words in Jq1, Jq2 (n_vars = {}, deg_bound = {})",
            words.len(),
            b.n_vars,
            b.deg_bound
        ))
    })?;
    Ok(OpElement::from_vector(&words, &x))
}

/// A solution of `theta x = eta y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrePair {
    pub x: OpElement,
    pub y: OpElement,
    /// Degrees of `x` and `y` where the solution was found.
    pub degrees: (u32, u32),
    /// One line per word-set attempt.
    pub log: Vec<String>,
}

/// Nonzero `x` in the span of `set_x`, `y` in the span of `set_y` with
/// `theta x = eta y` under evaluation.
pub fn ore_solve(
    theta: &OpElement,
    eta: &OpElement,
    set_x: &[OpWord],
    set_y: &[OpWord],
) -> Result<(OpElement, OpElement)> {
    let (Some(p), Some(q)) = (theta.homogeneous_degree(), eta.homogeneous_degree()) else {
        return Err(Error::NotHomogeneous);
    };
    let dx = set_x.first().map(OpWord::degree).unwrap_or(0);
    let dy = set_y.first().map(OpWord::degree).unwrap_or(0);
    if set_x.iter().any(|w| w.degree() != dx) || set_y.iter().any(|w| w.degree() != dy) {
        return Err(Error::Domain("word sets must be homogeneous".into()));
    }
    if p + dx != q + dy {
        return Err(Error::Domain(format!(
            "degree mismatch: {p} + {dx} != {q} + {dy}"
        )));
    }
    let d = p + dx;
    let bounds = EvalBounds::for_degree(d);
    let coords = coordinates(d, &bounds, false);
    let cols: Vec<Vec<Dyadic>> = set_x
        .iter()
        .map(|w| signature(&(theta * &OpElement::word(w.clone())), &coords))
        .chain(
            set_y
                .iter()
                .map(|w| signature(&(eta * &OpElement::word(w.clone())), &coords))
                .map(|v| v.into_iter().map(|c| -c).collect()),
        )
        .collect();
    let n = cols.len();
    let rows: Vec<Vec<Dyadic>> = (0..coords.len())
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let ns = linalg::nullspace(&rows, n);
    let nx = set_x.len();
    for v in &ns {
        let v = Dyadic::primitive(v);
        let x = OpElement::from_vector(set_x, &v[..nx]);
        let y = OpElement::from_vector(set_y, &v[nx..]);
        let tx = theta * &x;
        if signature(&tx, &coords).iter().all(Dyadic::is_zero) {
            continue;
        }
        if equal_by_evaluation(&tx, &(eta * &y), None) {
            return Ok((x, y));
        }
    }
    Err(Error::NotFound(format!(
        "no nonzero solution over {} x-words of degree {dx} and {} y-words of degree {dy}",
        set_x.len(),
        set_y.len()
    )))
}

fn default_set(d: u32, max_len: usize) -> Vec<OpWord> {
    if d == 0 {
        return alloc::vec![OpWord::identity()];
    }
    let mut v = alloc::vec![OpWord::generator(d)];
    for t in 2..=max_len.min(d as usize) {
        v.extend(OpWord::compositions_of_length(d, t));
    }
    v
}

/// [`ore_solve`] with the default word sets: starting at `deg x = p + q`,
/// `deg y = 2p`, the generator plus all words of length 2 and 3, then one more
/// length per retry up to the degree, then both degrees grown by one (at most
/// three times).
pub fn ore_solve_default(theta: &OpElement, eta: &OpElement) -> Result<OrePair> {
    let (Some(p), Some(q)) = (theta.homogeneous_degree(), eta.homogeneous_degree()) else {
        return Err(Error::NotHomogeneous);
    };
    let mut log = Vec::new();
    for grow in 0..=3u32 {
        let (dx, dy) = (p + q + grow, 2 * p + grow);
        let top = dx.max(dy).max(3) as usize;
        for max_len in 3..=top {
            let sx = default_set(dx, max_len);
            let sy = default_set(dy, max_len);
            match ore_solve(theta, eta, &sx, &sy) {
                Ok((x, y)) => {
                    log.push(format!(
                        "deg x = {dx}, deg y = {dy}, length <= {max_len}: found"
                    ));
                    return Ok(OrePair {
                        x,
                        y,
                        degrees: (dx, dy),
                        log,
                    });
                }
                Err(Error::NotFound(_)) => log.push(format!(
                    "deg x = {dx}, deg y = {dy}, length <= {max_len}: trivial"
                )),
                Err(e) => return Err(e),
            }
            if max_len >= dx.max(dy) as usize {
                break;
            }
        }
    }
    Err(Error::NotFound(log.join("; ")))
}

/// `a b^{-1} + c d^{-1} = (a d1 + c b1)(b d1)^{-1}` with `b d1 = d b1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionSum {
    pub numerator: OpElement,
    pub denominator: OpElement,
    pub d1: OpElement,
    pub b1: OpElement,
}

pub fn fraction_add(
    a: &OpElement,
    b: &OpElement,
    c: &OpElement,
    d: &OpElement,
) -> Result<FractionSum> {
    if b.is_zero() || d.is_zero() {
        return Err(Error::Domain("zero denominator".into()));
    }
    let (d1, b1) = if b == d {
        (OpElement::one(), OpElement::one())
    } else {
        let pair = ore_solve_default(b, d)?;
        (pair.x, pair.y)
    };
    if !equal_by_evaluation(&(b * &d1), &(d * &b1), None) {
        return Err(Error::ResolutionFailed(format!(
            "common multiple check failed for {b} and {d}"
        )));
    }
    Ok(FractionSum {
        numerator: &(a * &d1) + &(c * &b1),
        denominator: b * &d1,
        d1,
        b1,
    })
}

/// Rank of all `2^{d-1}` words of degree `d` under evaluation within `bounds`.
pub fn rank_estimate(d: u32, bounds: &EvalBounds) -> usize {
    if d == 0 {
        return 1;
    }
    let words = OpWord::compositions(d);
    let m = signature_matrix(&words, &coordinates(d, bounds, false));
    linalg::rank(&m, words.len())
}

/// A `Z_(2)`-lattice helper: whether `Jq^k` lies in the `Z_(2)`-span of `words`
/// under evaluation.
pub fn in_z2_span(target: &OpElement, words: &[OpWord], bounds: &EvalBounds) -> Option<OpElement> {
    let d = target.homogeneous_degree()?;
    let coords = coordinates(d, bounds, false);
    let gens: Vec<Vec<Dyadic>> = words
        .iter()
        .map(|w| signature(&OpElement::word(w.clone()), &coords))
        .collect();
    let lat = Lattice::new(&gens, coords.len());
    lat.member(&signature(target, &coords))
        .map(|c| OpElement::from_vector(words, &c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opalg::annihilates;

    fn v(x: &[i64]) -> Vec<Dyadic> {
        x.iter().map(|&a| Dyadic::from(a)).collect()
    }

    #[test]
    fn a3_is_the_whole_nullspace() {
        let nb = adem_nullspace(3, &OpWord::compositions(3)).unwrap();
        assert_eq!(nb.basis, [v(&[3, -6, 3, 1])]);
    }

    #[test]
    fn a4_single_variable() {
        let nb = adem_nullspace(4, &partition_words(4, 2)).unwrap();
        assert!(nb.contains(&v(&[2, -3, 1, 1])));
    }

    #[test]
    fn errors() {
        assert!(adem_nullspace(3, &[]).is_err());
        assert!(adem_nullspace(3, &[OpWord::generator(2)]).is_err());
        assert_eq!(binary_decompose(4, None), Err(Error::Indecomposable(4)));
    }

    #[test]
    fn q12_three() {
        let e = q12_decompose(3, None).unwrap();
        let expect: OpElement = "2*Jq2.Jq1 - Jq1.Jq2 - 1/3*Jq1.Jq1.Jq1".parse().unwrap();
        assert_eq!(e, expect);
    }

    #[test]
    fn binary_three() {
        let e = binary_decompose(3, None).unwrap();
        assert!(e.in_z2());
        assert!(equal_by_evaluation(&e, &OpElement::generator(3), None));
    }

    #[test]
    fn ore_trivial_and_small() {
        let t = OpElement::generator(2);
        let (x, y) = ore_solve(&t, &t, &[OpWord::identity()], &[OpWord::identity()]).unwrap();
        assert_eq!((x.clone(), y.clone()), (OpElement::one(), OpElement::one()));
        let pair = ore_solve_default(&OpElement::generator(1), &OpElement::generator(2)).unwrap();
        let lhs = &OpElement::generator(1) * &pair.x;
        let rhs = &OpElement::generator(2) * &pair.y;
        assert!(annihilates(&(&lhs - &rhs), None));
    }

    #[test]
    fn small_ranks() {
        for d in 1..=3 {
            assert_eq!(rank_estimate(d, &EvalBounds::for_degree(d)), d as usize);
        }
    }
}
