//! Nilpotent orbits of concrete matrices: Jordan types from ranks of
//! powers, the closure order, and brute-force counts of the partial flags
//! `0 = F_e ⊂ … ⊂ F_0 = 𝔽ₚ^r` with `A·F_{k−1} ⊆ F_k`.

use crate::error::{Error, Result};
use crate::linalg::{for_each_subspace, gaussian_multinomial};
use crate::partitions::{dominance_leq, Partition};
use crate::polyring::{Field, PrimeField};

pub use crate::linalg::FqMatrix;

/// Block-diagonal nilpotent matrix with Jordan blocks of sizes `s_1, s_2, …`
/// in that order; each block has ones on its superdiagonal.
pub fn jordan_matrix<F: Field>(s: &Partition, field: &F) -> FqMatrix<F> {
    let r = s.size() as usize;
    let mut m = FqMatrix::zeros(field, r, r);
    let mut start = 0;
    for &b in s.parts() {
        for i in start..start + b as usize - 1 {
            m.set(i, i + 1, field.one());
        }
        start += b as usize;
    }
    m
}

/// Ranks of `A^0, A^1, …, A^r`.
fn power_ranks<F: Field>(a: &FqMatrix<F>) -> Vec<usize> {
    let r = a.rows();
    let mut ranks = Vec::with_capacity(r + 1);
    let mut p = FqMatrix::identity(a.field(), r);
    ranks.push(r);
    for _ in 0..r {
        p = p.mul(a);
        ranks.push(p.rank());
    }
    ranks
}

fn check_square<F: Field>(a: &FqMatrix<F>) -> Result<usize> {
    if a.rows() != a.cols() {
        return Err(Error::SizeMismatch { left: a.rows() as u64, right: a.cols() as u64 });
    }
    Ok(a.rows())
}

/// The Jordan type `s` of a nilpotent `A`:
/// `#{i : s_i ≥ k} = rank(A^{k−1}) − rank(A^k)`.
pub fn jordan_type_of<F: Field>(a: &FqMatrix<F>) -> Result<Partition> {
    let r = check_square(a)?;
    let ranks = power_ranks(a);
    if ranks[r] != 0 {
        return Err(Error::NotNilpotent);
    }
    // column lengths of the dual partition
    let dual: Vec<u32> = ranks.windows(2).map(|w| (w[0] - w[1]) as u32).filter(|&c| c > 0).collect();
    Ok(Partition::new(dual)?.dual())
}

/// `O_{s1} ⊆ closure(O_{s2})`, i.e. `s1 ≤ s2` in dominance order.
pub fn closure_leq(s1: &Partition, s2: &Partition) -> Result<bool> {
    dominance_leq(s1, s2)
}

/// Whether `A` lies in the closure of the orbit of type `t`. Decided both by
/// dominance of Jordan types and by `rank(A^k) ≤ rank(J_t^k)` for all `k`;
/// the two must agree.
pub fn in_orbit_closure<F: Field>(a: &FqMatrix<F>, t: &Partition) -> Result<bool> {
    let r = check_square(a)?;
    if t.size() as usize != r {
        return Err(Error::SizeMismatch { left: r as u64, right: u64::from(t.size()) });
    }
    let by_type = dominance_leq(&jordan_type_of(a)?, t)?;
    let by_rank = power_ranks(a).iter().zip(power_ranks(&jordan_matrix(t, a.field()))).all(|(x, y)| *x <= y);
    assert_eq!(by_type, by_rank, "dominance and rank criteria disagree");
    Ok(by_type)
}

/// Shape of a partial flag: `F_k` has codimension `n_k = r_1 + … + r_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFlagSpec {
    rvec: Partition,
}

impl PartialFlagSpec {
    pub fn new(rvec: Partition) -> Self {
        PartialFlagSpec { rvec }
    }

    pub fn rvec(&self) -> &Partition {
        &self.rvec
    }

    pub fn r(&self) -> usize {
        self.rvec.size() as usize
    }

    /// `n_1, …, n_e`.
    pub fn coranks(&self) -> Vec<usize> {
        self.rvec
            .parts()
            .iter()
            .scan(0usize, |acc, &x| {
                *acc += x as usize;
                Some(*acc)
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpringerCount {
    /// Number of admissible flags.
    pub count: u128,
    /// Number of candidate subspaces examined at all levels.
    pub flags_enumerated: u64,
}

/// Counts flags `0 = F_e ⊂ … ⊂ F_1 ⊂ F_0 = 𝔽ₚ^r` with `codim F_k = n_k`
/// and `A·F_{k−1} ⊆ F_k`. Fails with [`Error::BudgetExceeded`] when the
/// total number of flags of this shape exceeds `budget`.
///
/// Since `A·F_{k−1} ⊆ F_{k−1}`, each `F_k` is `U + W` with
/// `U = A·F_{k−1}` and `W` running over the subspaces of a complement of
/// `U` in `F_{k−1}`, so each admissible flag is visited exactly once.
pub fn springer_fiber_count(a: &FqMatrix<PrimeField>, spec: &PartialFlagSpec, budget: u64) -> Result<SpringerCount> {
    let r = check_square(a)?;
    if spec.r() != r {
        return Err(Error::SizeMismatch { left: r as u64, right: spec.r() as u64 });
    }
    if power_ranks(a)[r] != 0 {
        return Err(Error::NotNilpotent);
    }
    let parts: Vec<usize> = spec.rvec.parts().iter().map(|&x| x as usize).collect();
    let estimated = gaussian_multinomial(&parts, a.field().modulus());
    if estimated > u128::from(budget) {
        return Err(Error::BudgetExceeded { estimated, budget: u128::from(budget) });
    }
    let dims: Vec<usize> = spec.coranks().iter().map(|n| r - n).collect();
    let mut out = SpringerCount { count: 0, flags_enumerated: 0 };
    let top = FqMatrix::identity(a.field(), r);
    extend_flag(a, &top, &dims, &mut out);
    Ok(out)
}

/// `prev` is a row basis of `F_{k−1}`; `dims` the dimensions still to place.
fn extend_flag(a: &FqMatrix<PrimeField>, prev: &FqMatrix<PrimeField>, dims: &[usize], out: &mut SpringerCount) {
    let Some((&dim, rest)) = dims.split_first() else {
        out.count += 1;
        return;
    };
    let field = a.field();
    // rows of prev·Aᵀ are the images A·v of the basis vectors v
    let image = prev.mul(&a.transpose()).row_space();
    let u = image.rows();
    if dim < u {
        return;
    }
    // complement of U inside F_{k−1}: basis rows of prev not in the span so far
    let mut span = image.clone();
    let mut complement = FqMatrix::zeros(field, 0, a.cols());
    for i in 0..prev.rows() {
        let row = FqMatrix::from_fn(field, 1, a.cols(), |_, j| *prev.get(i, j));
        let grown = span.stack(&row);
        if grown.rank() > span.rows() {
            span = grown.row_space();
            complement = complement.stack(&row);
        }
    }
    for_each_subspace(field, complement.rows(), dim - u, |w| {
        out.flags_enumerated += 1;
        let next = image.stack(&w.mul(&complement)).row_space();
        extend_flag(a, &next, rest, out);
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::gaussian_multinomial;
    use crate::polyring::Rationals;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn jordan_matrix_examples() {
        let q = Rationals;
        assert!(jordan_matrix(&p(&[1, 1, 1]), &q).is_zero());
        assert_eq!(jordan_matrix(&p(&[2]), &q), FqMatrix::from_rows(&q, &[vec![0, 1], vec![0, 0]]));
        assert_eq!(
            jordan_matrix(&p(&[2, 1]), &q),
            FqMatrix::from_rows(&q, &[vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]])
        );
    }

    #[test]
    fn jordan_type_examples() {
        let q = Rationals;
        assert_eq!(jordan_type_of(&FqMatrix::zeros(&q, 3, 3)).unwrap(), p(&[1, 1, 1]));
        assert_eq!(jordan_type_of(&jordan_matrix(&p(&[3, 1]), &q)).unwrap(), p(&[3, 1]));
        assert_eq!(jordan_type_of(&FqMatrix::identity(&q, 2)).unwrap_err(), Error::NotNilpotent);
        let rect = FqMatrix::zeros(&q, 2, 3);
        assert!(matches!(jordan_type_of(&rect), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn closure_examples() {
        assert!(closure_leq(&p(&[1, 1]), &p(&[2])).unwrap());
        assert!(closure_leq(&p(&[2, 2]), &p(&[3, 1])).unwrap());
        assert!(closure_leq(&p(&[2, 1]), &p(&[2, 1])).unwrap());
        let q = Rationals;
        assert!(in_orbit_closure(&FqMatrix::zeros(&q, 3, 3), &p(&[3])).unwrap());
        assert!(!in_orbit_closure(&jordan_matrix(&p(&[3]), &q), &p(&[2, 1])).unwrap());
    }

    #[test]
    fn springer_examples() {
        let f2 = PrimeField::new(2).unwrap();
        let zero = FqMatrix::zeros(&f2, 3, 3);
        let spec = PartialFlagSpec::new(p(&[2, 1]));
        let all = springer_fiber_count(&zero, &spec, 1_000).unwrap();
        assert_eq!(all.count, gaussian_multinomial(&[2, 1], 2));
        let regular = jordan_matrix(&p(&[3]), &f2);
        assert_eq!(springer_fiber_count(&regular, &spec, 1_000).unwrap().count, 0);
        let open = jordan_matrix(&p(&[2, 1]), &f2);
        assert!(springer_fiber_count(&open, &spec, 1_000).unwrap().count >= 1);
        let err = springer_fiber_count(&zero, &PartialFlagSpec::new(p(&[1, 1, 1])), 5).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { estimated: 21, budget: 5 });
    }

    #[test]
    fn full_flags_for_regular_nilpotent_are_unique() {
        let f3 = PrimeField::new(3).unwrap();
        let a = jordan_matrix(&p(&[4]), &f3);
        let spec = PartialFlagSpec::new(p(&[1, 1, 1, 1]));
        assert_eq!(springer_fiber_count(&a, &spec, 1_000_000).unwrap().count, 1);
    }
}
