use std::collections::BTreeMap;
use std::time::Instant;

use locmod::matrix_schemes::{
    char_poly_coeffs, dcp_special_ideal, diagonal_restriction, e2_ideal, naive_special_ideal, wedge_power, GenericMatrix,
    PolyMatrix, S_operator,
};
use locmod::partitions::{bounded_partitions, coinvariant_dim_formula, Partition};
use locmod::polyring::{Field, Ideal, MonomialOrder, PolyRing, PrimeField, QuotientDimension, Rationals};
use proptest::prelude::*;

fn lemma_ideals<F: Field>(field: F, r: usize) -> (Ideal<F>, Ideal<F>) {
    let g = GenericMatrix::new(field, r);
    let a = g.matrix();
    let mut s_gens = Vec::new();
    for t in 1..=r {
        s_gens.extend(S_operator(a, t, r + 1 - t).unwrap().matrix().entries().iter().cloned());
    }
    (Ideal::new(g.ring(), s_gens).unwrap(), Ideal::new(g.ring(), char_poly_coeffs(a).unwrap()).unwrap())
}

#[test]
fn s_operators_of_weight_r_plus_one_generate_the_char_poly_ideal() {
    for r in 2..=3 {
        let start = Instant::now();
        let (s, sigma) = lemma_ideals(Rationals, r);
        assert!(s.equals(&sigma).unwrap(), "r={r}");
        assert!(start.elapsed().as_secs() < 30);
    }
}

#[test]
fn cayley_hamilton_at_the_ideal_level() {
    for r in 1..=3 {
        for e in r..=r + 1 {
            let g = GenericMatrix::new(Rationals, r);
            let sigma = Ideal::new(g.ring(), char_poly_coeffs(g.matrix()).unwrap()).unwrap();
            for entry in g.matrix().pow(e as u32).entries() {
                assert!(sigma.contains_element(entry).unwrap(), "r={r} e={e}");
            }
        }
    }
}

#[test]
fn dcp_special_ideal_contains_char_poly() {
    for r in 1..=3 {
        for rvec in bounded_partitions(r as u32, r, r as u32) {
            let i = dcp_special_ideal(r, &rvec, Rationals).unwrap();
            let ring = i.ideal.ring().clone();
            let a = PolyMatrix::from_fn(&ring, r, r, |x, y| ring.var(x * r + y));
            for s in char_poly_coeffs(&a).unwrap() {
                assert!(i.ideal.contains_element(&s).unwrap(), "r={r} rvec={rvec}");
            }
        }
    }
}

#[test]
fn naive_ideal_restricts_to_coinvariant_algebra() {
    for r in 1..=4usize {
        for e in 1..=3u32 {
            let naive = naive_special_ideal(r, e, Rationals).unwrap();
            let diag = diagonal_restriction(&naive.ideal).unwrap();
            let expected = coinvariant_dim_formula(r as u32, e);
            let expected = u64::try_from(expected).unwrap();
            assert_eq!(diag.quotient_dimension().unwrap(), QuotientDimension::Finite(expected), "r={r} e={e}");
        }
    }
}

#[test]
fn restricted_ideal_has_elementary_and_power_generators() {
    let naive = naive_special_ideal(2, 2, Rationals).unwrap();
    let diag = diagonal_restriction(&naive.ideal).unwrap();
    let gens: Vec<String> = diag.generators().iter().map(ToString::to_string).collect();
    assert_eq!(gens, vec!["X1^2", "X2^2", "X1 + X2", "X1*X2"]);
}

fn all_matrices_f2(r: usize) -> impl Iterator<Item = Vec<u8>> {
    (0u32..1 << (r * r)).map(move |bits| (0..r * r).map(|k| ((bits >> k) & 1) as u8).collect())
}

fn square_f2(m: &[u8], r: usize) -> Vec<u8> {
    (0..r * r)
        .map(|k| (0..r).fold(0, |acc, l| acc ^ (m[(k / r) * r + l] & m[l * r + k % r])))
        .collect()
}

fn rank_f2(m: &[u8], r: usize) -> usize {
    let mut rows: Vec<u32> = (0..r).map(|i| (0..r).fold(0, |acc, j| acc | (u32::from(m[i * r + j]) << j))).collect();
    let mut rank = 0;
    for bit in 0..r {
        if let Some(p) = (rank..r).find(|&i| rows[i] >> bit & 1 == 1) {
            rows.swap(rank, p);
            for i in 0..r {
                if i != rank && rows[i] >> bit & 1 == 1 {
                    rows[i] ^= rows[rank];
                }
            }
            rank += 1;
        }
    }
    rank
}

#[test]
fn e2_points_over_f2_are_square_zero_of_rank_at_most_one() {
    let f2 = PrimeField::new(2).unwrap();
    let i = e2_ideal(2, 1, f2).unwrap();
    let point_ring = PolyRing::new(f2, vec![], MonomialOrder::GrevLex);
    let mut solutions = 0;
    for m in all_matrices_f2(3) {
        let point: BTreeMap<usize, _> =
            (0..9).map(|k| (k, if m[k] == 1 { point_ring.one() } else { point_ring.zero() })).collect();
        let on = i.ideal.generators().iter().all(|g| g.substitute(&point_ring, &point).unwrap().is_zero());
        if on {
            solutions += 1;
            assert!(square_f2(&m, 3).iter().all(|&x| x == 0));
            assert!(rank_f2(&m, 3) <= 1);
        }
    }
    let expected = all_matrices_f2(3).filter(|m| square_f2(m, 3).iter().all(|&x| x == 0) && rank_f2(m, 3) <= 1).count();
    assert_eq!(solutions, expected);
}

fn constant_matrix(ring: &std::sync::Arc<PolyRing<PrimeField>>, r: usize, vals: &[i64]) -> PolyMatrix<PrimeField> {
    PolyMatrix::from_fn(ring, r, r, |i, j| ring.from_i64(vals[i * r + j]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_power_is_functorial_over_f5(
        r in 1usize..=4,
        t_seed in 0usize..4,
        a in proptest::collection::vec(0i64..5, 16),
        b in proptest::collection::vec(0i64..5, 16),
    ) {
        let ring = PolyRing::new(PrimeField::new(5).unwrap(), vec![], MonomialOrder::GrevLex);
        let t = 1 + t_seed % r;
        let (ma, mb) = (constant_matrix(&ring, r, &a), constant_matrix(&ring, r, &b));
        let lhs = wedge_power(&ma.mul(&mb), t).unwrap();
        let rhs = wedge_power(&ma, t).unwrap().compose(&wedge_power(&mb, t).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn dcp_special_rejects_wrong_size() {
    assert!(dcp_special_ideal(4, &Partition::new(vec![2, 1]).unwrap(), Rationals).is_err());
}

#[test]
fn lower_degree_s_operators_give_a_larger_ideal() {
    use locmod::matrix_schemes::{char_poly_coeffs, GenericMatrix, S_operator};
    use locmod::polyring::{Ideal, Rationals};
    let g = GenericMatrix::new(Rationals, 3);
    let a = g.matrix();
    let mut gens = Vec::new();
    for t in 1..=3 {
        gens.extend(S_operator(a, t, 3 - t).unwrap().matrix().entries().iter().cloned());
    }
    let s = Ideal::new(g.ring(), gens).unwrap();
    let sigma = Ideal::new(g.ring(), char_poly_coeffs(a).unwrap()).unwrap();
    assert!(!s.equals(&sigma).unwrap());
    assert!(s.contains(&sigma).unwrap());
}
