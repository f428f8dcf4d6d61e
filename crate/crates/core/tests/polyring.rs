use std::sync::Arc;

use locmod::config::Budgets;
use locmod::polyring::{
    parse_polynomial, Field, Ideal, Monomial, MonomialOrder, PolyRing, Polynomial, PrimeField, QuotientDimension,
    Rationals,
};
use locmod::Error;
use proptest::prelude::*;

const P: u64 = 7;

fn ring3() -> Arc<PolyRing<PrimeField>> {
    PolyRing::new(PrimeField::new(P).unwrap(), vec!["x".into(), "y".into(), "z".into()], MonomialOrder::GrevLex)
}

/// Terms as (coefficient, exponents) with total degree ≤ 3.
fn terms() -> impl Strategy<Value = Vec<(u64, [u32; 3])>> {
    prop::collection::vec((1..P, [0u32..3, 0u32..3, 0u32..2]), 1..4)
}

fn poly(ring: &Arc<PolyRing<PrimeField>>, t: &[(u64, [u32; 3])]) -> Polynomial<PrimeField> {
    ring.from_terms(t.iter().map(|(c, e)| (Monomial::from_exps(e.to_vec()), *c)))
}

/// Univariate polynomials over 𝔽ₚ as coefficient vectors, lowest degree first.
fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64) -> u64 {
    (1..P).find(|b| a * b % P == 1).unwrap()
}

fn rem(mut a: Vec<u64>, b: &[u64]) -> Vec<u64> {
    let lb = inv_mod(*b.last().unwrap());
    while a.len() >= b.len() {
        let c = a.last().unwrap() * lb % P;
        let shift = a.len() - b.len();
        for (i, &bi) in b.iter().enumerate() {
            a[shift + i] = (a[shift + i] + P * P - c * bi % P) % P;
        }
        a = trim(a);
    }
    a
}

fn gcd_degree(a: Vec<u64>, b: Vec<u64>) -> usize {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = rem(a, &b);
        a = b;
        b = r;
    }
    a.len() - 1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent_and_congruent(g1 in terms(), g2 in terms(), f in terms()) {
        let r = ring3();
        let ideal = Ideal::new(&r, [poly(&r, &g1), poly(&r, &g2)]).unwrap();
        let f = poly(&r, &f);
        let nf = ideal.normal_form(&f).unwrap();
        prop_assert_eq!(ideal.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(ideal.contains_element(&(&f - &nf)).unwrap());
    }

    #[test]
    fn grevlex_and_lex_bases_generate_the_same_ideal(g1 in terms(), g2 in terms()) {
        let r = ring3();
        let ideal = Ideal::new(&r, [poly(&r, &g1), poly(&r, &g2)]).unwrap();
        let lex = ideal.groebner_basis_in(MonomialOrder::Lex).unwrap();
        let again = Ideal::new(&r, lex.iter().map(|g| g.reorder(&r).unwrap())).unwrap();
        prop_assert!(again.equals(&ideal).unwrap());
    }

    #[test]
    fn print_parse_round_trip(t in terms()) {
        let r = ring3();
        let f = poly(&r, &t);
        prop_assert_eq!(parse_polynomial(&r, &f.to_string()).unwrap(), f);
    }

    #[test]
    fn univariate_quotient_is_gcd_degree(a in prop::collection::vec(0..P, 1..7), b in prop::collection::vec(0..P, 1..7)) {
        prop_assume!(!trim(a.clone()).is_empty() && !trim(b.clone()).is_empty());
        let r = PolyRing::new(PrimeField::new(P).unwrap(), vec!["t".into()], MonomialOrder::GrevLex);
        let lift = |v: &[u64]| r.from_terms(v.iter().enumerate().map(|(k, &c)| (Monomial::from_exps(vec![k as u32]), c)));
        let ideal = Ideal::new(&r, [lift(&a), lift(&b)]).unwrap();
        let expected = gcd_degree(a.clone(), b.clone()) as u64;
        prop_assert_eq!(ideal.quotient_dimension().unwrap(), QuotientDimension::Finite(expected));
    }

    #[test]
    fn monomial_box_quotient(a in 1u32..5, b in 1u32..5, c in 1u32..4) {
        let r = ring3();
        let ideal = Ideal::new(&r, [
            r.term(1, Monomial::var(3, 0, a)),
            r.term(1, Monomial::var(3, 1, b)),
            r.term(1, Monomial::var(3, 2, c)),
        ]).unwrap();
        prop_assert_eq!(ideal.quotient_dimension().unwrap(), QuotientDimension::Finite(u64::from(a * b * c)));
    }
}

#[test]
fn rational_examples() {
    let r = PolyRing::new(Rationals, vec!["x".into(), "y".into()], MonomialOrder::GrevLex);
    let f = parse_polynomial(&r, "x^2 - 2*y").unwrap();
    let g = parse_polynomial(&r, "x*y - 1/3").unwrap();
    let i = Ideal::new(&r, [f, g]).unwrap();
    // x^3 = 2/3 after eliminating y: three points over the algebraic closure
    assert_eq!(i.quotient_dimension().unwrap(), QuotientDimension::Finite(3));
    let line = Ideal::new(&r, [parse_polynomial(&r, "x - y").unwrap()]).unwrap();
    assert_eq!(line.quotient_dimension().unwrap(), QuotientDimension::Infinite);
    let unit = Ideal::new(&r, [parse_polynomial(&r, "x").unwrap(), parse_polynomial(&r, "x + 1").unwrap()]).unwrap();
    assert!(unit.contains_element(&r.one()).unwrap());
    assert_eq!(unit.quotient_dimension().unwrap(), QuotientDimension::Finite(0));
}

#[test]
fn json_round_trip() {
    let r = ring3();
    let i = Ideal::new(&r, [parse_polynomial(&r, "x^2 + 3*y*z").unwrap(), parse_polynomial(&r, "z - 1").unwrap()]).unwrap();
    let json = serde_json::to_string(&i.to_json()).unwrap();
    let back: locmod::polyring::IdealJson = serde_json::from_str(&json).unwrap();
    let j = back.to_ideal(*r.field(), MonomialOrder::GrevLex).unwrap();
    assert!(i.equals(&j).unwrap());
    assert_eq!(back.to_ideal(Rationals, MonomialOrder::GrevLex).unwrap_err(), Error::ContextMismatch);
}

#[test]
fn spair_budget_is_enforced() {
    let r = ring3();
    let gens = ["x^2 + y*z", "x*y + z^2", "y^2 + x*z"].map(|g| parse_polynomial(&r, g).unwrap());
    let tight = Budgets { max_spairs: 1, ..Budgets::default() };
    let err = Ideal::new(&r, gens).unwrap().with_budgets(tight).groebner_basis().unwrap_err();
    assert!(err.is_budget());
}

#[test]
fn rejects_large_moduli() {
    assert!(PrimeField::new(1 << 31).is_err());
    assert!(PrimeField::new(9).is_err());
    assert_eq!(PrimeField::new(503).unwrap().from_i64(-1), 502);
}
