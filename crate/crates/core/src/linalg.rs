//! Exact linear algebra over `Q` and over the local ring `Z_(2)`.
//!
//! `Z_(2)` (rationals with odd denominator) is the rational part of `Z_2`, so
//! lattice questions over `Z_2` about rational vectors are decided here with
//! row operations whose multipliers have non-negative valuation.

use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::{Dyadic, Valuation};

/// Incremental reduced row echelon form of a row space.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    ncols: usize,
    /// `(pivot column, row)`, each row scaled to 1 at its pivot and zero at
    /// every other pivot column.
    rows: Vec<(usize, Vec<Dyadic>)>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduce `v` against the current rows.
    pub fn reduce(&self, v: &[Dyadic]) -> Vec<Dyadic> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
        v
    }

    /// Insert a row; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Dyadic]) -> bool {
        assert_eq!(v.len(), self.ncols, "row length");
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= &(&f * r);
                }
            }
        }
        let pos = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(pos, (p, v));
        true
    }

    pub fn contains(&self, v: &[Dyadic]) -> bool {
        self.reduce(v).iter().all(Dyadic::is_zero)
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &Vec<Dyadic>> {
        self.rows.iter().map(|(_, r)| r)
    }

    /// Basis of `{x : R x = 0}` for the stored rows `R`, one vector per free
    /// column in increasing order, with a 1 at that column.
    pub fn nullspace(&self) -> Vec<Vec<Dyadic>> {
        let pivots = self.pivots();
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if pivots.contains(&f) {
                continue;
            }
            let mut v = vec![Dyadic::zero(); self.ncols];
            v[f] = Dyadic::one();
            for (p, row) in &self.rows {
                v[*p] = -&row[f];
            }
            out.push(v);
        }
        out
    }
}

/// Row echelon of a matrix given by rows.
pub fn echelon(rows: &[Vec<Dyadic>], ncols: usize) -> Echelon {
    let mut e = Echelon::new(ncols);
    for r in rows {
        if e.rank() == ncols {
            break;
        }
        e.insert(r);
    }
    e
}

pub fn rank(rows: &[Vec<Dyadic>], ncols: usize) -> usize {
    echelon(rows, ncols).rank()
}

/// Right nullspace `{x : A x = 0}` of the matrix with the given rows.
pub fn nullspace(rows: &[Vec<Dyadic>], ncols: usize) -> Vec<Vec<Dyadic>> {
    echelon(rows, ncols).nullspace()
}

/// One solution of `A x = b`, free variables set to zero.
pub fn solve(rows: &[Vec<Dyadic>], b: &[Dyadic], ncols: usize) -> Option<Vec<Dyadic>> {
    let aug: Vec<Vec<Dyadic>> = rows
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let e = echelon(&aug, ncols + 1);
    if e.pivots().contains(&ncols) {
        return None;
    }
    let mut x = vec![Dyadic::zero(); ncols];
    for (p, row) in &e.rows {
        x[*p] = row[ncols].clone();
    }
    Some(x)
}

pub fn mat_vec(rows: &[Vec<Dyadic>], x: &[Dyadic]) -> Vec<Dyadic> {
    rows.iter()
        .map(|r| {
            r.iter()
                .zip(x)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Dyadic::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

fn min_valuation(v: &[Dyadic]) -> Valuation {
    v.iter().map(Dyadic::valuation).min().unwrap_or(Valuation::Infinite)
}

/// Scale `v` by a power of two so its smallest entry valuation is 0.
pub fn two_primitive(v: &[Dyadic]) -> Vec<Dyadic> {
    match min_valuation(v) {
        Valuation::Finite(m) => {
            let s = Dyadic::two_pow(-m);
            v.iter().map(|x| x * &s).collect()
        }
        Valuation::Infinite => v.to_vec(),
    }
}

/// A `Z_(2)`-lattice given by generators, echelonized by minimal-valuation pivoting.
#[derive(Clone, Debug)]
pub struct Lattice {
    ncols: usize,
    ngens: usize,
    /// `(pivot column, row, combination of the generators giving the row)`.
    rows: Vec<(usize, Vec<Dyadic>, Vec<Dyadic>)>,
}

impl Lattice {
    pub fn new(gens: &[Vec<Dyadic>], ncols: usize) -> Self {
        let ngens = gens.len();
        let mut work: Vec<(Vec<Dyadic>, Vec<Dyadic>)> = gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let mut combo = vec![Dyadic::zero(); ngens];
                combo[i] = Dyadic::one();
                (g.clone(), combo)
            })
            .collect();
        let mut rows = Vec::new();
        for col in 0..ncols {
            let best = work
                .iter()
                .enumerate()
                .filter(|(_, (r, _))| !r[col].is_zero())
                .min_by_key(|(_, (r, _))| r[col].valuation())
                .map(|(i, _)| i);
            let Some(b) = best else { continue };
            let (prow, pcombo) = work.swap_remove(b);
            for (r, c) in work.iter_mut() {
                if r[col].is_zero() {
                    continue;
                }
                let f = &r[col] / &prow[col];
                for (x, y) in r.iter_mut().zip(&prow) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
                for (x, y) in c.iter_mut().zip(&pcombo) {
                    if !y.is_zero() {
                        *x -= &(&f * y);
                    }
                }
            }
            work.retain(|(r, _)| r.iter().any(|x| !x.is_zero()));
            rows.push((col, prow, pcombo));
            if work.is_empty() {
                break;
            }
        }
        Lattice { ncols, ngens, rows }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Echelon basis rows.
    pub fn basis(&self) -> impl Iterator<Item = &Vec<Dyadic>> {
        self.rows.iter().map(|(_, r, _)| r)
    }

    /// Coefficients in `Z_(2)` over the generators expressing `t`, if `t` lies
    /// in the lattice.
    pub fn member(&self, t: &[Dyadic]) -> Option<Vec<Dyadic>> {
        let mut t = t.to_vec();
        let mut coeffs = vec![Dyadic::zero(); self.ngens];
        let mut next = 0usize;
        for col in 0..self.ncols {
            let pivot = self.rows.get(next).filter(|(p, _, _)| *p == col);
            match pivot {
                Some((_, row, combo)) => {
                    next += 1;
                    if t[col].is_zero() {
                        continue;
                    }
                    let f = &t[col] / &row[col];
                    if !f.in_z2() {
                        return None;
                    }
                    for (x, y) in t.iter_mut().zip(row) {
                        if !y.is_zero() {
                            *x -= &(&f * y);
                        }
                    }
                    for (x, y) in coeffs.iter_mut().zip(combo) {
                        if !y.is_zero() {
                            *x += &(&f * y);
                        }
                    }
                }
                None => {
                    if !t[col].is_zero() {
                        return None;
                    }
                }
            }
        }
        Some(coeffs)
    }

    pub fn contains(&self, t: &[Dyadic]) -> bool {
        self.member(t).is_some()
    }
}

/// A `Z_(2)`-basis of `span_Q(basis) ∩ Z_(2)^n`.
///
/// Starts from 2-primitive vectors and, while their reductions mod 2 are
/// dependent, replaces one vector of the dependency by half the sum.
pub fn saturate(basis: &[Vec<Dyadic>]) -> Vec<Vec<Dyadic>> {
    let mut b: Vec<Vec<Dyadic>> = basis
        .iter()
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .map(|v| two_primitive(v))
        .collect();
    while let Some(dep) = mod2_dependency(&b) {
        let i = dep[0];
        let mut sum = vec![Dyadic::zero(); b[i].len()];
        for &s in &dep {
            for (x, y) in sum.iter_mut().zip(&b[s]) {
                *x += y;
            }
        }
        let half = Dyadic::ratio(1, 2);
        b[i] = two_primitive(&sum.iter().map(|x| x * &half).collect::<Vec<_>>());
    }
    b
}

/// Indices of a nonempty subset whose sum vanishes mod 2, if any.
fn mod2_dependency(b: &[Vec<Dyadic>]) -> Option<Vec<usize>> {
    let n = b.len();
    // (pivot, bits, which original rows were combined)
    let mut basis: Vec<(usize, Vec<bool>, Vec<bool>)> = Vec::new();
    for (i, v) in b.iter().enumerate() {
        let mut bits: Vec<bool> = v.iter().map(|x| x.mod2().expect("in Z_(2)")).collect();
        let mut used = vec![false; n];
        used[i] = true;
        for (p, row, u) in &basis {
            if bits[*p] {
                for (x, y) in bits.iter_mut().zip(row) {
                    *x ^= *y;
                }
                for (x, y) in used.iter_mut().zip(u) {
                    *x ^= *y;
                }
            }
        }
        match bits.iter().position(|&x| x) {
            Some(p) => basis.push((p, bits, used)),
            None => {
                // the newest vector goes first so it is the one replaced
                let mut d = vec![i];
                d.extend((0..i).filter(|&j| used[j]));
                return Some(d);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> Vec<Dyadic> {
        v.iter().map(|&x| Dyadic::from(x)).collect()
    }

    #[test]
    fn nullspace_and_rank() {
        let a = [row(&[1, 2, 3]), row(&[2, 4, 6]), row(&[1, 0, 1])];
        assert_eq!(rank(&a, 3), 2);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        assert!(mat_vec(&a, &ns[0]).iter().all(Dyadic::is_zero));
        assert_eq!(Dyadic::primitive(&ns[0]), row(&[1, 1, -1]));
    }

    #[test]
    fn solving() {
        let a = [row(&[1, 1]), row(&[1, -1])];
        let x = solve(&a, &row(&[3, 1]), 2).unwrap();
        assert_eq!(x, row(&[2, 1]));
        let singular = [row(&[1, 1]), row(&[2, 2])];
        assert!(solve(&singular, &row(&[1, 3]), 2).is_none());
    }

    #[test]
    fn lattice_membership() {
        // span of (2, 0) and (1, 3) over Z_(2)
        let l = Lattice::new(&[row(&[2, 0]), row(&[1, 3])], 2);
        assert!(l.contains(&row(&[1, 3])));
        assert!(l.contains(&row(&[0, 6])));
        assert!(!l.contains(&row(&[1, 0])));
        assert!(!l.contains(&row(&[0, 3])));
        let l2 = Lattice::new(&[row(&[2, 0]), row(&[0, 4])], 2);
        assert!(!l2.contains(&row(&[1, 0])));
        let c = l2.member(&row(&[6, 4])).unwrap();
        assert_eq!(c, row(&[3, 1]));
    }

    #[test]
    fn saturation() {
        // (1,1) and (1,-1) span a lattice of index 2 in its saturation
        let s = saturate(&[row(&[1, 1]), row(&[1, -1])]);
        let l = Lattice::new(&s, 2);
        assert!(l.contains(&row(&[1, 0])));
        assert!(l.contains(&row(&[0, 1])));
    }
}
