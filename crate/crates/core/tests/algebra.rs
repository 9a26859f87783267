use std::collections::BTreeSet;

use jqforge_core::action::apply_jq;
use jqforge_core::linalg::Lattice;
use jqforge_core::hit::{hit_decide_graded, min_hit_valuation};
use jqforge_core::norms::{
    ker_adic_valuation, ker_phi_membership, operator_norm_estimate, NormBounds,
};
use jqforge_core::opalg::{
    admissible_form, chi, coproduct, counit, equal_by_evaluation, eval_element, phi_reduce,
    sq_total_f2, tensor_apply_left, tensor_apply_right, ChiMethod,
};
use jqforge_core::relations::{binary_decompose, ore_solve_default, q12_decompose};
use jqforge_core::series::{
    geometric_inverse, series_apply_op, sode_residual, sode_solve, Sode, SodeResidual,
    TruncatedSeries,
};
use jqforge_core::{Dyadic, MultiIndex, OpElement, OpWord, Polynomial, Valuation};

fn op(s: &str) -> OpElement {
    s.parse().unwrap()
}

#[test]
fn coproduct_is_coassociative_and_counital() {
    for k in 0..=8 {
        let g = OpElement::generator(k);
        let t = coproduct(&g);
        assert_eq!(tensor_apply_left(&t), tensor_apply_right(&t), "k = {k}");
        let mut back = OpElement::zero();
        for ((u, v), c) in &t {
            let eps = counit(&OpElement::word(u.clone()));
            back.add_term(v.clone(), &eps * c);
        }
        assert_eq!(back, g);
    }
}

#[test]
fn antipode_axiom() {
    for k in 1..=8 {
        let mut s = OpElement::zero();
        for i in 0..=k {
            s = &s + &(&OpElement::generator(i) * &chi(k - i, ChiMethod::Partitions));
        }
        assert!(equal_by_evaluation(&s, &OpElement::zero(), None), "k = {k}");
    }
}

#[test]
fn decompositions_verify() {
    for k in [3, 5, 6, 7] {
        let e = binary_decompose(k, None).unwrap();
        assert!(e.in_z2());
        assert!(e.words().all(|w| w.factors().iter().all(|a| a.is_power_of_two())));
        assert!(equal_by_evaluation(&e, &OpElement::generator(k), None));
        assert_eq!(phi_reduce(&e).unwrap(), admissible_form(&[k]), "k = {k}");
    }
    for k in 3..=6 {
        let e = q12_decompose(k, None).unwrap();
        assert!(e.words().all(|w| w.factors().iter().all(|&a| a <= 2)));
        assert!(equal_by_evaluation(&e, &OpElement::generator(k), None));
    }
}

#[test]
fn ore_pairs_verify() {
    for (t, e) in [("Jq1", "Jq2"), ("Jq2", "Jq1"), ("Jq1", "Jq1.Jq1"), ("Jq3", "Jq1")] {
        let (t, e) = (op(t), op(e));
        let p = ore_solve_default(&t, &e).unwrap();
        assert!(!p.x.is_zero() && !p.y.is_zero());
        assert!(equal_by_evaluation(&(&t * &p.x), &(&e * &p.y), None));
    }
}

#[test]
fn kernel_membership_matches_estimator() {
    let b = NormBounds {
        n_vars: 3,
        deg_bound: 12,
        max_j: 6,
    };
    let half = Dyadic::ratio(1, 2);
    for d in 1..=6 {
        for w in OpWord::compositions(d) {
            let e = OpElement::word(w.clone());
            let est = operator_norm_estimate(&e, b).unwrap().norm();
            assert_eq!(ker_phi_membership(&e).unwrap(), est <= half, "{w}");
        }
        assert!(!ker_phi_membership(&(&OpElement::one() - &OpElement::generator(d))).unwrap());
    }
}

#[test]
fn estimator_bounded_by_ker_adic() {
    let b = NormBounds {
        n_vars: 3,
        deg_bound: 12,
        max_j: 4,
    };
    for s in ["Jq1.Jq1", "Jq1^4", "Jq2.Jq2", "Jq1.Jq2 - Jq3", "2*Jq3", "4*Jq1.Jq1", "Jq1^3"] {
        let e = op(s);
        let est = operator_norm_estimate(&e, b).unwrap().norm();
        let ker = ker_adic_valuation(&e, b, 6).unwrap().norm();
        assert!(est <= ker, "{s}: {est} > {ker}");
    }
}

#[test]
fn hit_oracle_agreement() {
    for d in 2..=20u32 {
        let m = min_hit_valuation(d).unwrap();
        for a in [1i64, 2, 3, 4, 1 << m] {
            let f = Polynomial::parse(&format!("{a}*x1^{d}"), 1).unwrap();
            let hit = hit_decide_graded(&f, 4).unwrap().hit;
            let v = Dyadic::from(a).valuation();
            assert_eq!(hit, v >= Valuation::Finite(m as i64), "{a} x^{d}");
        }
    }
    for d in 1..=63u32 {
        let positive = min_hit_valuation(d).is_none_or(|m| m > 0);
        assert_eq!(positive, (d + 1).is_power_of_two(), "d = {d}");
    }
}

fn monomials(n: usize, d: u32) -> Vec<MultiIndex> {
    if n == 1 {
        return vec![MultiIndex::new(vec![d])];
    }
    (0..=d)
        .flat_map(|a| {
            monomials(n - 1, d - a).into_iter().map(move |m| {
                let mut e = vec![a];
                e.extend_from_slice(m.exponents());
                MultiIndex::new(e)
            })
        })
        .collect()
}

/// Classical hit decision by `F_2` elimination over the columns `Sq^i(mu)`.
fn classically_hit(f: &BTreeSet<MultiIndex>, n: usize, d: u32) -> bool {
    let basis = monomials(n, d);
    let vec_of = |s: &BTreeSet<MultiIndex>| basis.iter().map(|m| s.contains(m)).collect::<Vec<_>>();
    let mut rows: Vec<Vec<bool>> = Vec::new();
    let reduce = |rows: &Vec<Vec<bool>>, mut v: Vec<bool>| {
        for r in rows {
            let p = r.iter().position(|&b| b).unwrap();
            if v[p] {
                for (x, y) in v.iter_mut().zip(r) {
                    *x ^= *y;
                }
            }
        }
        v
    };
    for i in 1..d {
        for mu in monomials(n, d - i) {
            let col = sq_total_f2(i, &[mu].into_iter().collect());
            let v = reduce(&rows, vec_of(&col));
            if v.iter().any(|&b| b) {
                rows.push(v);
            }
        }
    }
    reduce(&rows, vec_of(f)).iter().all(|&b| !b)
}

/// `f` lies in the dyadic hit lattice plus `2 Z_(2)[x]` in its degree.
fn hit_mod_two(f: &Polynomial, n: usize, d: u32) -> bool {
    let basis = monomials(n, d);
    let coords = |p: &Polynomial| basis.iter().map(|m| p.coeff(m)).collect::<Vec<_>>();
    let mut gens = Vec::new();
    for i in 1..d {
        for mu in monomials(n, d - i) {
            gens.push(coords(&apply_jq(i, &Polynomial::monomial(mu, Dyadic::one()))));
        }
    }
    for m in &basis {
        gens.push(coords(&Polynomial::monomial(m.clone(), Dyadic::from(2))));
    }
    Lattice::new(&gens, basis.len()).contains(&coords(f))
}

#[test]
fn classical_and_dyadic_hit_deciders_agree_mod_two() {
    let mut seed = 0x2545f4914f6cdd1du64;
    let mut next = || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        seed
    };
    let mut hits = 0;
    for _ in 0..80 {
        let n = 1 + (next() % 2) as usize;
        let d = 2 + (next() % 7) as u32;
        let mut terms = Vec::new();
        for m in &monomials(n, d) {
            if next() % 2 == 0 {
                terms.push((m.clone(), Dyadic::from((next() % 7) as i64 * 2 + 1)));
            }
        }
        let f = Polynomial::from_terms(n, terms);
        if f.is_zero() {
            continue;
        }
        let classical = classically_hit(&f.mod2().unwrap(), n, d);
        hits += classical as u32;
        assert_eq!(classical, hit_mod_two(&f, n, d), "{f}");
    }
    assert!(hits > 5);
}

#[test]
fn doubling_a_classical_hit_need_not_be_hit() {
    let f = Polynomial::parse("9*x1^2*x2 + 7*x1*x2^2", 2).unwrap();
    assert!(classically_hit(&f.mod2().unwrap(), 2, 3));
    assert!(!hit_decide_graded(&f.scale(&Dyadic::from(2)), 4).unwrap().hit);
}

#[test]
fn geometric_inverse_postcondition() {
    for k in 1..=4 {
        for e in 1..=3 {
            let f = Polynomial::parse(&format!("x1^{e}"), 1).unwrap();
            for n in [e + k, 10, 16] {
                let s = geometric_inverse(k, &f, n).unwrap();
                let img = &s.to_polynomial() - &apply_jq(k, &s.to_polynomial());
                assert_eq!(img.truncate(n - k), f.truncate(n - k), "k={k} f={f} N={n}");
            }
        }
    }
}

#[test]
fn series_action_matches_polynomial_action() {
    let f = Polynomial::parse("3*x1^2 - 1/3*x1^5 + x1", 1).unwrap();
    for s in ["Jq1", "Jq2.Jq1 - 2*Jq3", "1 + Jq1^3"] {
        let e = op(s);
        let out = series_apply_op(&e, &TruncatedSeries::from_polynomial(&f, 20)).unwrap();
        assert_eq!(out.to_polynomial(), eval_element(&e, &f), "{s}");
    }
}

#[test]
fn sode_solutions_pass_residual() {
    for (o, rhs, x0) in [("Jq1", "0", 1), ("Jq1 - 1", "0", 2), ("Jq2 + Jq1", "x1", 1)] {
        let eq = Sode::parse(o, rhs).unwrap();
        let s = sode_solve(&eq, &Dyadic::from(x0), &Dyadic::one(), 12).unwrap();
        match sode_residual(&eq, &s, 12).unwrap() {
            SodeResidual::Verified { .. } => {}
            other => panic!("{o} = {rhs}: {other:?}"),
        }
    }
}
