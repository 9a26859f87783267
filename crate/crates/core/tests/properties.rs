use std::collections::BTreeSet;

use jqforge_core::action::{apply_jq, apply_psi_q, apply_word};
use jqforge_core::hit::hit_decide_graded;
use jqforge_core::opalg::{
    admissible_form, classical_product, evaluate_element_on_power, evaluate_on_power, phi_reduce,
    sq_total_f2,
};
use jqforge_core::relations::adem_nullspace;
use jqforge_core::{Dyadic, MultiIndex, OpElement, OpWord, Polynomial, Valuation};
use proptest::prelude::*;

fn dyadic() -> impl Strategy<Value = Dyadic> {
    (-40i64..=40, prop_oneof![Just(1i64), Just(2), Just(3), Just(4), Just(5), Just(12)])
        .prop_map(|(n, d)| Dyadic::ratio(n, d))
}

fn z2() -> impl Strategy<Value = Dyadic> {
    (-40i64..=40, prop_oneof![Just(1i64), Just(3), Just(5), Just(7)])
        .prop_map(|(n, d)| Dyadic::ratio(n, d))
}

fn poly_with(arity: usize, coeff: BoxedStrategy<Dyadic>) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..=3, arity), coeff), 1..=4).prop_map(
        move |ts| Polynomial::from_terms(arity, ts.into_iter().map(|(e, c)| (MultiIndex::new(e), c))),
    )
}

fn poly_pair() -> impl Strategy<Value = (Polynomial, Polynomial)> {
    (1usize..=3).prop_flat_map(|n| (poly_with(n, z2().boxed()), poly_with(n, z2().boxed())))
}

fn word() -> impl Strategy<Value = OpWord> {
    prop::collection::vec(1u32..=3, 1..=3).prop_map(OpWord::new)
}

fn classical_word_action(w: &[u32], f: &BTreeSet<MultiIndex>) -> BTreeSet<MultiIndex> {
    w.iter().rev().fold(f.clone(), |acc, &k| sq_total_f2(k, &acc))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn valuation_is_ultrametric_and_additive(a in dyadic(), b in dyadic()) {
        prop_assert_eq!((&a * &b).valuation(), a.valuation() + b.valuation());
        let s = (&a + &b).valuation();
        prop_assert!(s >= a.valuation().min(b.valuation()));
        if a.valuation() != b.valuation() {
            prop_assert_eq!(s, a.valuation().min(b.valuation()));
        }
        if a.in_z2() && b.in_z2() {
            let (x, y) = (a.mod2().unwrap(), b.mod2().unwrap());
            prop_assert_eq!((&a + &b).mod2().unwrap(), x ^ y);
            prop_assert_eq!((&a * &b).mod2().unwrap(), x & y);
        }
    }

    #[test]
    fn gauss_norm_multiplicative((f, g) in poly_pair()) {
        prop_assert_eq!((&f * &g).gauss_norm(), &f.gauss_norm() * &g.gauss_norm());
        let m = f.gauss_norm().max(g.gauss_norm());
        prop_assert!((&f + &g).gauss_norm() <= m);
    }

    #[test]
    fn cartan_formula(k in 0u32..=6, (f, g) in poly_pair()) {
        let lhs = apply_jq(k, &(&f * &g));
        let rhs = (0..=k).fold(Polynomial::zero(f.arity()), |acc, i| {
            &acc + &(&apply_jq(i, &f) * &apply_jq(k - i, &g))
        });
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_reduces_to_classical_squares(w in word(), (f, _) in poly_pair()) {
        let fbar = f.mod2().unwrap();
        let direct = apply_word(&w, &f).mod2().unwrap();
        prop_assert_eq!(&direct, &classical_word_action(w.factors(), &fbar));
        let mut via_admissible = BTreeSet::new();
        for a in admissible_form(w.factors()).words() {
            for m in classical_word_action(a.factors(), &fbar) {
                if !via_admissible.remove(&m) {
                    via_admissible.insert(m);
                }
            }
        }
        prop_assert_eq!(direct, via_admissible);
    }

    #[test]
    fn action_contracts_and_keeps_variables(k in 1u32..=6, (f, _) in poly_pair()) {
        let out = apply_jq(k, &f);
        prop_assert!(out.gauss_norm() <= f.gauss_norm());
        for (m, _) in f.terms() {
            let single = apply_jq(k, &Polynomial::monomial(m.clone(), Dyadic::one()));
            for (t, _) in single.terms() {
                prop_assert_eq!(t.support(), m.support());
            }
        }
    }

    #[test]
    fn psi_q_is_multiplicative(q in z2(), (f, g) in poly_pair()) {
        prop_assert_eq!(
            apply_psi_q(&q, &(&f * &g)),
            &apply_psi_q(&q, &f) * &apply_psi_q(&q, &g)
        );
    }

    #[test]
    fn phi_is_multiplicative(a in word(), b in word(), c in -3i64..=3) {
        let x = &OpElement::word(a.clone()) + &OpElement::term(b.clone(), Dyadic::from(c));
        let y = OpElement::word(b);
        prop_assert_eq!(
            phi_reduce(&(&x * &y)).unwrap(),
            classical_product(&phi_reduce(&x).unwrap(), &phi_reduce(&y).unwrap())
        );
    }

    #[test]
    fn symbolic_power_matches_action(w in prop::collection::vec(1u32..=4, 1..=3), m in 0u32..=12) {
        let w = OpWord::new(w);
        let out = apply_word(&w, &Polynomial::parse(&format!("x1^{m}"), 1).unwrap());
        let c = out.coeff(&MultiIndex::new(vec![m + w.degree()]));
        prop_assert_eq!(c, evaluate_on_power(&w).eval(&Dyadic::from(m as i64)));
    }

    #[test]
    fn relations_vanish_on_powers(k in 2u32..=6, mask in 1u64..) {
        let all = OpWord::compositions(k);
        let words: Vec<OpWord> = all
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> (i % 64) & 1 == 1)
            .map(|(_, w)| w.clone())
            .collect();
        prop_assume!(!words.is_empty());
        for e in adem_nullspace(k, &words).unwrap().elements() {
            prop_assert!(evaluate_element_on_power(&e).is_zero());
        }
    }

    #[test]
    fn hit_certificates_reconstruct(
        exps in prop::collection::vec(0u32..=5, 1..=4),
        coeffs in prop::collection::vec(z2(), 4),
        d in 2u32..=6,
    ) {
        let f = Polynomial::from_terms(2, exps.iter().zip(&coeffs).map(|(&a, c)| {
            let a = a.min(d);
            (MultiIndex::new(vec![a, d - a]), c.clone())
        }));
        prop_assume!(!f.is_zero());
        let r = hit_decide_graded(&f, 4).unwrap();
        if let Some(cert) = r.certificate {
            prop_assert!(cert.pairs.iter().all(|(k, _)| *k >= 1));
            prop_assert_eq!(cert.reconstruct(2), f);
        }
    }

    #[test]
    fn canonical_strings_round_trip((f, g) in poly_pair(), a in word(), b in word(), c in z2()) {
        let p = &f - &g;
        prop_assert_eq!(Polynomial::parse(&p.to_string(), p.arity()).unwrap(), p);
        let e = &OpElement::word(a) - &OpElement::term(b, c);
        prop_assert_eq!(e.to_string().parse::<OpElement>().unwrap(), e);
    }
}

#[test]
fn valuation_of_zero_is_infinite() {
    assert_eq!(Dyadic::zero().valuation(), Valuation::Infinite);
}
