use locmod::multiplicities::{
    character_multiplicity, gl_dimension, nearby_cycle_multiplicity, tensor_minuscule_decompose,
    verify_tensor_vs_kostka,
};
use locmod::partitions::{bounded_partitions, kostka_number, partitions_of, Partition};
use num_bigint::BigUint;
use proptest::prelude::*;

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * u64::from(n - i) / u64::from(i + 1))
}

#[test]
fn nearby_cycles_match_characters() {
    for r in 1..=6 {
        for s in partitions_of(r) {
            for rvec in partitions_of(r) {
                let k = nearby_cycle_multiplicity(&s, &rvec).unwrap().multiplicity;
                assert_eq!(k, character_multiplicity(&s, &rvec).unwrap(), "s={s} rvec={rvec}");
            }
        }
    }
}

#[test]
fn tensor_tables_pass_their_checks() {
    for d in 1..=4 {
        for total in 1..=12 {
            for rvec in bounded_partitions(total, 3, d) {
                let report = verify_tensor_vs_kostka(d, &rvec).unwrap();
                assert!(report.passed, "d={d} rvec={rvec}");
            }
        }
    }
}

#[test]
fn small_tables() {
    let t = tensor_minuscule_decompose(2, &p(&[1, 1])).unwrap();
    assert_eq!(t.get(&p(&[2])), 1);
    assert_eq!(t.get(&p(&[1, 1])), 1);
    assert_eq!(tensor_minuscule_decompose(3, &p(&[1, 1, 1])).unwrap().get(&p(&[2, 1])), 2);
    assert!(tensor_minuscule_decompose(2, &p(&[3])).is_err());
    let outside = nearby_cycle_multiplicity(&p(&[3]), &p(&[2, 1])).unwrap();
    assert_eq!(outside.multiplicity, 0);
    assert!(!outside.in_closure);
}

proptest! {
    #[test]
    fn dimensions_multiply(d in 1u32..=5, parts in prop::collection::vec(1u32..=5, 1..=3)) {
        let rvec = Partition::from_unsorted(parts);
        prop_assume!(rvec.part(0) <= d);
        let table = tensor_minuscule_decompose(d, &rvec).unwrap();
        let total: BigUint = table.entries.iter().map(|(l, &m)| gl_dimension(l, d) * BigUint::from(m)).sum();
        let product: u64 = rvec.parts().iter().map(|&k| binomial(d, k)).product();
        prop_assert_eq!(total, BigUint::from(product));
        for (lambda, &m) in &table.entries {
            prop_assert_eq!(m, kostka_number(&lambda.dual(), &rvec).unwrap());
        }
    }
}
