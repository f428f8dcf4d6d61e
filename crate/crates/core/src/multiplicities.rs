//! Multiplicity spaces of the nearby-cycle decomposition: Kostka numbers,
//! tensor products of exterior powers of `k^d`, and symmetric-group
//! characters.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::config::Budgets;
use crate::error::{Error, Result};
use crate::partitions::{bounded_partitions, dominance_leq, kostka_number, partitions_of, Partition};
use crate::report::{Case, Provenance, VerificationReport};

/// Largest `r` for which [`character_multiplicity`] sums over `S_r`.
pub const CHARACTER_MAX_R: u32 = 8;

/// Multiplicities of `V(λ)` in `∧^{r_1} k^d ⊗ … ⊗ ∧^{r_e} k^d`; every key
/// is a partition of `r = Σ r_i` with at most `d` parts, every value
/// positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightMultiplicityTable {
    pub d: u32,
    pub rvec: Partition,
    pub entries: BTreeMap<Partition, u64>,
}

impl WeightMultiplicityTable {
    pub fn get(&self, lambda: &Partition) -> u64 {
        self.entries.get(lambda).copied().unwrap_or(0)
    }

    /// Entries in lexicographically descending order, a linear extension of
    /// dominance from the top.
    pub fn descending(&self) -> Vec<(&Partition, u64)> {
        self.entries.iter().rev().map(|(k, v)| (k, *v)).collect()
    }
}

/// Shapes obtained from `lambda` by adding a vertical strip of `k` boxes
/// (at most one per row) within the first `d` rows.
fn add_vertical_strip(lambda: &Partition, k: u32, d: u32) -> Vec<Partition> {
    let rows = lambda.padded(d as usize);
    let mut out = Vec::new();
    let mut cur = rows.clone();
    fn go(i: usize, left: u32, rows: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition::new(cur.clone()).expect("strip keeps rows nonincreasing"));
            return;
        }
        if i == rows.len() || ((rows.len() - i) as u32) < left {
            return;
        }
        // a box in row i needs row i-1 (after its own addition) to be longer
        if i == 0 || cur[i - 1] > rows[i] {
            cur[i] += 1;
            go(i + 1, left - 1, rows, cur, out);
            cur[i] -= 1;
        }
        go(i + 1, left, rows, cur, out);
    }
    go(0, k, &rows, &mut cur, &mut out);
    out
}

/// Iterated Pieri rule for exterior powers: each factor `∧^{r_i}` adds a
/// vertical strip of size `r_i`, shapes limited to `d` rows.
pub fn tensor_minuscule_decompose(d: u32, rvec: &Partition) -> Result<WeightMultiplicityTable> {
    if rvec.parts().iter().any(|&r| r > d) {
        return Err(Error::Range(format!("every part of {rvec} must be at most d = {d}")));
    }
    let mut table: BTreeMap<Partition, u64> = BTreeMap::from([(Partition::empty(), 1)]);
    for &k in rvec.parts() {
        let mut next = BTreeMap::new();
        for (lambda, m) in &table {
            for mu in add_vertical_strip(lambda, k, d) {
                *next.entry(mu).or_insert(0) += m;
            }
        }
        table = next;
    }
    Ok(WeightMultiplicityTable { d, rvec: rvec.clone(), entries: table })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearbyCycle {
    pub multiplicity: u64,
    /// Whether `s ≤ dual(rvec)`; outside the closure the multiplicity is 0.
    pub in_closure: bool,
}

/// `m_s = K_{dual(s), rvec}`.
pub fn nearby_cycle_multiplicity(s: &Partition, rvec: &Partition) -> Result<NearbyCycle> {
    if s.size() != rvec.size() {
        return Err(Error::SizeMismatch { left: u64::from(s.size()), right: u64::from(rvec.size()) });
    }
    let in_closure = dominance_leq(s, &rvec.dual())?;
    let multiplicity = if in_closure { kostka_number(&s.dual(), rvec)? } else { 0 };
    Ok(NearbyCycle { multiplicity, in_closure })
}

/// `χ^λ(μ)` by the Murnaghan–Nakayama rule on beta-numbers: removing a
/// rim hook of length `k` moves a bead from `β` to `β − k`, with sign
/// `(−1)^{beads strictly between}`.
pub fn character_value(lambda: &Partition, mu: &[u32]) -> i64 {
    let n = lambda.len();
    let beta: Vec<u32> = (0..n).map(|i| lambda.part(i) + (n - 1 - i) as u32).collect();
    mn(&beta, mu)
}

fn mn(beta: &[u32], mu: &[u32]) -> i64 {
    let Some((&k, rest)) = mu.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - k && x < b).count();
        let mut next = beta.to_vec();
        next[i] = b - k;
        let v = mn(&next, rest);
        total += if between % 2 == 0 { v } else { -v };
    }
    total
}

/// `z_ρ = ∏ i^{m_i} m_i!`, the centralizer order of cycle type `ρ`.
fn centralizer_order(rho: &Partition) -> BigInt {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &p in rho.parts() {
        *counts.entry(p).or_insert(0) += 1;
    }
    counts.iter().fold(BigInt::one(), |acc, (&i, &m)| {
        let fact: BigInt = (1..=m).map(BigInt::from).product();
        acc * BigInt::from(i).pow(m) * fact
    })
}

/// `⟨χ^s, Ind_{S_{r_1} × … × S_{r_e}}^{S_r} sgn⟩`, computed as
/// `Σ ∏_i z_{ρ_i}^{-1} · sgn(ρ) · χ^s(ρ_1 ∪ … ∪ ρ_e)` over cycle types
/// `ρ_i ⊢ r_i`.
pub fn character_multiplicity(s: &Partition, rvec: &Partition) -> Result<u64> {
    if s.size() != rvec.size() {
        return Err(Error::SizeMismatch { left: u64::from(s.size()), right: u64::from(rvec.size()) });
    }
    let r = s.size();
    if r > CHARACTER_MAX_R {
        let order = |n: u32| (1..=u128::from(n)).product::<u128>();
        return Err(Error::BudgetExceeded { estimated: order(r), budget: order(CHARACTER_MAX_R) });
    }
    let mut total = BigRational::zero();
    let choices: Vec<Vec<Partition>> = rvec.parts().iter().map(|&ri| partitions_of(ri)).collect();
    let mut idx = vec![0usize; choices.len()];
    loop {
        let mut cycle: Vec<u32> = Vec::new();
        let mut weight = BigRational::one();
        for (c, &i) in choices.iter().zip(&idx) {
            cycle.extend_from_slice(c[i].parts());
            weight /= BigRational::from_integer(centralizer_order(&c[i]));
        }
        cycle.sort_unstable_by(|a, b| b.cmp(a));
        // a k-cycle has sign (−1)^{k−1}
        let odd = cycle.iter().map(|&k| k - 1).sum::<u32>() % 2 == 1;
        let chi = BigRational::from_integer(BigInt::from(character_value(s, &cycle)));
        total += if odd { -(weight * chi) } else { weight * chi };
        // odometer over the tuple of cycle types
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                assert!(total.is_integer(), "inner product of characters is an integer");
                return total.to_integer().to_u64().ok_or_else(|| Error::Range("negative multiplicity".into()));
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// `dim V(λ)` for `GL_d` by the hook-content formula
/// `∏_{cells} (d + content) / hook`.
pub fn gl_dimension(lambda: &Partition, d: u32) -> BigUint {
    if lambda.len() > d as usize {
        return BigUint::zero();
    }
    let dual = lambda.dual();
    let (mut num, mut den) = (BigUint::one(), BigUint::one());
    for i in 0..lambda.len() {
        for j in 0..lambda.part(i) as usize {
            let content = d as i64 + j as i64 - i as i64;
            let hook = (lambda.part(i) as usize - j) + (dual.part(j) as usize - i) - 1;
            num *= BigUint::from(content as u64);
            den *= BigUint::from(hook as u64);
        }
    }
    num / den
}

fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i) / BigUint::from(i + 1))
}

/// Checks the Pieri table against Kostka numbers (`mult(λ) = K_{dual(λ), rvec}`
/// for every `λ ⊢ r` with at most `d` parts), the dimension count
/// `Σ mult(λ)·dim V(λ) = ∏ C(d, r_i)`, and `mult(dual(rvec)) = 1`.
pub fn verify_tensor_vs_kostka(d: u32, rvec: &Partition) -> Result<VerificationReport> {
    let table = tensor_minuscule_decompose(d, rvec)?;
    let params = |extra: Vec<(&'static str, String)>| {
        let mut p = vec![("d", d.to_string()), ("rvec", rvec.to_string())];
        p.extend(extra);
        p
    };
    let mut cases = Vec::new();
    let r = rvec.size();
    for lambda in bounded_partitions(r, d as usize, r) {
        let expected = kostka_number(&lambda.dual(), rvec)?;
        cases.push(Case::compare(
            format!("mult{lambda}"),
            &params(vec![("lambda", lambda.to_string())]),
            expected,
            Provenance::Derived,
            table.get(&lambda),
        ));
    }
    let dims: BigUint = table.entries.iter().map(|(l, m)| gl_dimension(l, d) * BigUint::from(*m)).sum();
    let product: BigUint = rvec.parts().iter().map(|&ri| binomial(d, ri)).product();
    cases.push(Case::compare("dimension", &params(vec![]), product, Provenance::Derived, dims));
    cases.push(Case::compare("open_stratum", &params(vec![]), 1, Provenance::Derived, table.get(&rvec.dual())));
    Ok(VerificationReport::new(format!("tensor-kostka d={d} rvec={rvec}"), &Budgets::default(), cases))
}
