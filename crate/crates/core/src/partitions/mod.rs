//! Partitions, the dominance order, strata of the special fiber and the
//! closed-form dimension and count formulas attached to them.
//!
//! A [`Partition`] is stored in canonical form: weakly decreasing, with
//! trailing zeros removed. Operations that need a fixed length (dominance,
//! pairing with `2ρ`) pad with zeros internally.
//!
//! Throughout, `r = c·e + f` with `0 ≤ f < e` and `r = u·d + j` with
//! `0 ≤ j < d`.

mod tableaux;

pub use tableaux::{
    charge, kostka_foulkes, kostka_nonzero, kostka_number, reading_word, semistandard_tableaux, standard_tableaux_count,
    IntPoly, Tableau,
};

use std::fmt;

use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of nonnegative integers without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Validates weak decrease and trims trailing zeros.
    pub fn new(parts: impl Into<Vec<u32>>) -> Result<Self> {
        let mut parts = parts.into();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Range(format!("parts {parts:?} are not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary nonnegative parts into a partition.
    pub fn from_unsorted(parts: impl Into<Vec<u32>>) -> Self {
        let mut parts = parts.into();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn padded(&self, len: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        if v.len() < len {
            v.resize(len, 0);
        }
        v
    }

    /// Transpose of the Young diagram: `t_k = #{i : p_i ≥ k}`.
    pub fn dual(&self) -> Partition {
        let width = self.part(0) as usize;
        let parts = (1..=width as u32)
            .map(|k| self.0.iter().take_while(|&&p| p >= k).count() as u32)
            .collect();
        Partition(parts)
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.0.clone()
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(deserializer)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `2,1`, `[2,1]` or `(2,1)`; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
        let parts = inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad part {t:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

/// Dominance order: every prefix sum of `a` is at most the matching prefix
/// sum of `b`.
pub fn dominance_leq(a: &Partition, b: &Partition) -> Result<bool> {
    if a.size() != b.size() {
        return Err(Error::SizeMismatch { left: a.size() as u64, right: b.size() as u64 });
    }
    let n = a.len().max(b.len());
    let (pa, pb) = (a.padded(n), b.padded(n));
    let (mut sa, mut sb) = (0u64, 0u64);
    for i in 0..n {
        sa += pa[i] as u64;
        sb += pb[i] as u64;
        if sa > sb {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Partitions of `n` into at most `max_len` parts, each at most `max_part`,
/// in descending lexicographic order.
pub fn bounded_partitions(n: u32, max_len: usize, max_part: u32) -> Vec<Partition> {
    fn go(n: u32, max_len: usize, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if max_len == 0 {
            return;
        }
        // remaining room must fit n
        if (max_len as u64) * (max_part as u64) < n as u64 {
            return;
        }
        for p in (1..=max_part.min(n)).rev() {
            cur.push(p);
            go(n - p, max_len - 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max_len, max_part, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `n`, descending lexicographically.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    bounded_partitions(n, n as usize, n)
}

/// The strata `S⁰(r, e, d)`: partitions of `r` into at most `d` parts
/// bounded by `e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumSet {
    pub r: u32,
    pub e: u32,
    pub d: u32,
    /// Descending lexicographic order, a linear extension of dominance.
    pub members: Vec<Partition>,
}

impl StratumSet {
    pub fn contains(&self, s: &Partition) -> bool {
        self.members.binary_search_by(|m| s.cmp(m)).is_ok()
    }

    /// First member in the order, which dominates every other member.
    pub fn maximum(&self) -> &Partition {
        &self.members[0]
    }

    pub fn minimum(&self) -> &Partition {
        self.members.last().expect("stratum sets are never empty")
    }
}

pub fn enumerate_strata(r: u32, e: u32, d: u32) -> Result<StratumSet> {
    if e == 0 || d == 0 {
        return Err(Error::Range(format!("e = {e} and d = {d} must be positive")));
    }
    if r as u64 > e as u64 * d as u64 {
        return Err(Error::Range(format!("r = {r} exceeds e·d = {}", e as u64 * d as u64)));
    }
    Ok(StratumSet { r, e, d, members: bounded_partitions(r, d as usize, e) })
}

/// `(e^c, f)`, the dominance-maximal stratum.
pub fn s_max(r: u32, e: u32) -> Partition {
    assert!(e >= 1, "e must be positive");
    let (c, f) = (r / e, r % e);
    let mut parts = vec![e; c as usize];
    if f > 0 {
        parts.push(f);
    }
    Partition(parts)
}

/// `((c+1)^f, c^(e−f))`, the dual of [`s_max`].
pub fn r_min(r: u32, e: u32) -> Partition {
    s_max(r, e).dual()
}

/// `((u+1)^j, u^(d−j))`, the dominance-minimal stratum.
pub fn s_min(r: u32, d: u32) -> Partition {
    assert!(d >= 1, "d must be positive");
    let (u, j) = (r / d, r % d);
    let mut parts = vec![u + 1; j as usize];
    parts.extend(std::iter::repeat_n(u, (d - j) as usize));
    Partition::new(parts).expect("weakly decreasing by construction")
}

/// `⟨s, 2ρ⟩` with `2ρ = (d−1, d−3, …, 1−d)`.
pub fn affine_orbit_dim(s: &Partition, d: u32) -> Result<i64> {
    if s.len() > d as usize {
        return Err(Error::Range(format!("{s} has more than d = {d} parts")));
    }
    Ok(s.parts()
        .iter()
        .enumerate()
        .map(|(i, &si)| si as i64 * (d as i64 + 1 - 2 * (i as i64 + 1)))
        .sum())
}

/// `d·r − e·c² − (2c+1)·f`.
pub fn special_fiber_dim(r: u32, e: u32, d: u32) -> Result<i64> {
    if e == 0 || d == 0 || r as u64 > e as u64 * d as u64 {
        return Err(Error::Range(format!("need 0 ≤ r ≤ e·d with e, d ≥ 1, got r={r} e={e} d={d}")));
    }
    let (c, f) = ((r / e) as i64, (r % e) as i64);
    Ok(d as i64 * r as i64 - e as i64 * c * c - (2 * c + 1) * f)
}

/// `Σ_φ r_φ (d − r_φ)`, the dimension of a product of Grassmannians.
pub fn generic_fiber_dim(rvec: &Partition, d: u32) -> Result<i64> {
    if rvec.part(0) > d {
        return Err(Error::Range(format!("{rvec} has a part exceeding d = {d}")));
    }
    Ok(rvec.parts().iter().map(|&x| x as i64 * (d as i64 - x as i64)).sum())
}

/// `|s|² − Σ (s∨)_i²`, the dimension of the nilpotent orbit of Jordan type `s`.
pub fn nilpotent_orbit_dim(s: &Partition) -> i64 {
    let r = s.size() as i64;
    r * r - s.dual().parts().iter().map(|&x| (x as i64).pow(2)).sum::<i64>()
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `r! / ((c+1)!)^f / (c!)^(e−f)`, the expected length of the diagonal
/// restriction of the nilpotent variety.
pub fn coinvariant_dim_formula(r: u32, e: u32) -> BigUint {
    assert!(e >= 1, "e must be positive");
    let (c, f) = (r / e, r % e);
    factorial(r) / (factorial(c + 1).pow(f) * factorial(c).pow(e - f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(p(&[2, 1, 0, 0]), p(&[2, 1]));
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(p(&[0, 0]), Partition::empty());
    }

    #[test]
    fn dual_examples() {
        assert_eq!(p(&[2, 1]).dual(), p(&[2, 1]));
        assert_eq!(p(&[3, 1]).dual(), p(&[2, 1, 1]));
        // (e^c, f) dualizes to ((c+1)^f, c^(e-f))
        for e in 1..6u32 {
            for c in 0..4u32 {
                for f in 0..e {
                    let r = c * e + f;
                    let expected = Partition::new(
                        std::iter::repeat_n(c + 1, f as usize)
                            .chain(std::iter::repeat_n(c, (e - f) as usize))
                            .collect::<Vec<_>>(),
                    )
                    .unwrap();
                    assert_eq!(s_max(r, e).dual(), expected);
                }
            }
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&p(&[2, 1, 1]), &p(&[2, 2])).unwrap());
        assert!(!dominance_leq(&p(&[3]), &p(&[2, 1])).unwrap());
        assert!(dominance_leq(&p(&[1, 1, 1]), &p(&[3])).unwrap());
        assert_eq!(
            dominance_leq(&p(&[2]), &p(&[2, 1])),
            Err(Error::SizeMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn strata_examples() {
        assert_eq!(enumerate_strata(2, 2, 2).unwrap().members, vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(enumerate_strata(0, 3, 2).unwrap().members, vec![Partition::empty()]);
        assert_eq!(enumerate_strata(4, 2, 2).unwrap().members, vec![p(&[2, 2])]);
        assert!(matches!(enumerate_strata(5, 2, 2), Err(Error::Range(_))));
    }

    #[test]
    fn strata_match_brute_force() {
        // every composition of r into d parts in 0..=e, sorted and deduplicated
        fn brute(r: u32, e: u32, d: u32) -> Vec<Partition> {
            let mut out = std::collections::BTreeSet::new();
            let total = (e + 1).pow(d);
            for code in 0..total {
                let mut x = code;
                let mut parts = Vec::new();
                for _ in 0..d {
                    parts.push(x % (e + 1));
                    x /= e + 1;
                }
                if parts.iter().sum::<u32>() == r {
                    out.insert(Partition::from_unsorted(parts));
                }
            }
            out.into_iter().rev().collect()
        }
        for e in 1..=4 {
            for d in 1..=4 {
                for r in 0..=e * d {
                    assert_eq!(enumerate_strata(r, e, d).unwrap().members, brute(r, e, d), "{r} {e} {d}");
                }
            }
        }
    }

    #[test]
    fn extremal_strata() {
        assert_eq!(s_max(5, 2), p(&[2, 2, 1]));
        assert_eq!(r_min(5, 2), p(&[3, 2]));
        assert_eq!(s_min(3, 2), p(&[2, 1]));
        assert_eq!(s_max(4, 2), p(&[2, 2]));
    }

    #[test]
    fn extremal_strata_are_unique_extrema() {
        for r in 0..=10 {
            for e in 1..=4 {
                for d in 1..=5 {
                    if r > e * d {
                        continue;
                    }
                    let set = enumerate_strata(r, e, d).unwrap();
                    let smax = s_max(r, e);
                    if smax.len() <= d as usize {
                        for m in &set.members {
                            assert!(dominance_leq(m, &smax).unwrap());
                        }
                        assert_eq!(set.maximum(), &smax);
                    }
                    let smin = s_min(r, d);
                    assert!(set.contains(&smin));
                    for m in &set.members {
                        assert!(dominance_leq(&smin, m).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(affine_orbit_dim(&p(&[1]), 2).unwrap(), 1);
        assert_eq!(affine_orbit_dim(&p(&[2, 1]), 3).unwrap(), 4);
        assert!(affine_orbit_dim(&p(&[1, 1, 1]), 2).is_err());
        assert_eq!(special_fiber_dim(3, 2, 3).unwrap(), 4);
        assert_eq!(special_fiber_dim(0, 3, 2).unwrap(), 0);
        assert_eq!(generic_fiber_dim(&p(&[1, 1]), 2).unwrap(), 2);
        assert_eq!(generic_fiber_dim(&p(&[4]), 4).unwrap(), 0);
        assert!(generic_fiber_dim(&p(&[3]), 2).is_err());
        assert_eq!(nilpotent_orbit_dim(&p(&[1, 1, 1, 1])), 0);
        assert_eq!(nilpotent_orbit_dim(&p(&[2, 1])), 4);
        for r in 1..8 {
            assert_eq!(nilpotent_orbit_dim(&p(&[r])), (r * r - r) as i64);
        }
    }

    #[test]
    fn special_fiber_is_open_stratum_dimension() {
        for r in 0..=12u32 {
            for e in 1..=4 {
                for d in 1..=6 {
                    if r > e * d {
                        continue;
                    }
                    let smax = s_max(r, e);
                    assert_eq!(affine_orbit_dim(&smax, d).unwrap(), special_fiber_dim(r, e, d).unwrap());
                    if r_min(r, e).part(0) <= d {
                        assert_eq!(generic_fiber_dim(&r_min(r, e), d).unwrap(), special_fiber_dim(r, e, d).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn coinvariant_formula() {
        assert_eq!(coinvariant_dim_formula(2, 2), 2u32.into());
        assert_eq!(coinvariant_dim_formula(4, 2), 6u32.into());
        for r in 0..8 {
            assert_eq!(coinvariant_dim_formula(r, r.max(1) + 2), factorial(r));
        }
    }

    #[test]
    fn coinvariant_formula_is_multinomial() {
        for r in 0..=20 {
            for e in 1..=6 {
                let denom = r_min(r, e).parts().iter().fold(BigUint::one(), |acc, &x| acc * factorial(x));
                assert_eq!(coinvariant_dim_formula(r, e), factorial(r) / denom);
            }
        }
    }
}
