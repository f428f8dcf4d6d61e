//! `Π`-stable subspaces of `W = ⊕ k[Π]/Π^{e_i}` over `𝔽ₚ` and their strata.
//!
//! `W` has basis `v_{i,0}, …, v_{i,e_i−1}` per summand with
//! `Π v_{i,j} = v_{i,j+1}` and `Π v_{i,e_i−1} = 0`, in that order. A point
//! is an `r`-dimensional subspace `F` with `Π F ⊆ F`, stored as its
//! `r × D` reduced row echelon basis (the transpose of a column-reduced
//! echelon `D × r` basis).

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::linalg::{for_each_subspace, for_each_vector, gaussian_binomial, FqMatrix};
use crate::orbits::jordan_type_of;
use crate::partitions::Partition;
use crate::polyring::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiModule {
    field: PrimeField,
    exponents: Vec<u32>,
}

impl PiModule {
    pub fn new(field: PrimeField, exponents: Vec<u32>) -> Result<Self> {
        if exponents.is_empty() || exponents.contains(&0) {
            return Err(Error::Range("summand exponents must be positive".into()));
        }
        Ok(PiModule { field, exponents })
    }

    /// `(k[Π]/Π^e)^d`.
    pub fn homogeneous(field: PrimeField, e: u32, d: usize) -> Result<Self> {
        Self::new(field, vec![e; d])
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// `D = Σ e_i`.
    pub fn dim(&self) -> usize {
        self.exponents.iter().map(|&e| e as usize).sum()
    }

    /// `Π` acting on column vectors.
    pub fn pi_matrix(&self) -> FqMatrix<PrimeField> {
        let mut m = FqMatrix::zeros(&self.field, self.dim(), self.dim());
        let mut start = 0;
        for &e in &self.exponents {
            for j in start..start + e as usize - 1 {
                m.set(j + 1, j, 1);
            }
            start += e as usize;
        }
        m
    }

    fn apply(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0; v.len()];
        let mut start = 0;
        for &e in &self.exponents {
            let e = e as usize;
            out[start + 1..start + e].copy_from_slice(&v[start..start + e - 1]);
            start += e;
        }
        out
    }

    fn apply_rows(&self, m: &FqMatrix<PrimeField>) -> FqMatrix<PrimeField> {
        let rows: Vec<Vec<u64>> = (0..m.rows()).map(|i| self.apply(m.row(i))).collect();
        FqMatrix::from_fn(&self.field, m.rows(), m.cols(), |i, j| rows[i][j])
    }

    fn is_stable(&self, basis: &FqMatrix<PrimeField>) -> bool {
        let image = self.apply_rows(basis);
        basis.stack(&image).rank() == basis.rows()
    }

    fn check_budget(&self, r: usize, budget: u64) -> Result<()> {
        let estimated = gaussian_binomial(self.dim(), r, self.field.modulus());
        if estimated > u128::from(budget) {
            return Err(Error::BudgetExceeded { estimated, budget: u128::from(budget) });
        }
        Ok(())
    }
}

/// A `Π`-stable subspace in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePoint {
    basis: FqMatrix<PrimeField>,
    pivots: Vec<usize>,
}

impl LatticePoint {
    fn from_rref(basis: FqMatrix<PrimeField>) -> Self {
        let (_, pivots) = basis.rref();
        LatticePoint { basis, pivots }
    }

    /// Canonical point spanned by the rows of `m`, if `Π`-stable.
    pub fn from_span(module: &PiModule, m: &FqMatrix<PrimeField>) -> Option<Self> {
        let basis = m.row_space();
        module.is_stable(&basis).then(|| Self::from_rref(basis))
    }

    /// Reduced row echelon basis, one row per basis vector.
    pub fn basis(&self) -> &FqMatrix<PrimeField> {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Matrix of `Π|F` acting on coordinate columns in the echelon basis.
    /// Coordinates of a vector of `F` are its entries at the pivot columns.
    pub fn restriction(&self, module: &PiModule) -> FqMatrix<PrimeField> {
        let image = module.apply_rows(&self.basis);
        // row i of `rowwise` holds the coordinates of Π b_i
        let rowwise = FqMatrix::from_fn(module.field(), self.rank(), self.rank(), |i, j| *image.get(i, self.pivots[j]));
        rowwise.transpose()
    }

    fn key(&self) -> Vec<u64> {
        (0..self.basis.rows()).flat_map(|i| self.basis.row(i).to_vec()).collect()
    }
}

impl PartialOrd for LatticePoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LatticePoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.rank(), self.key()).cmp(&(other.rank(), other.key()))
    }
}

/// All `Π`-stable `r`-dimensional subspaces of `W`, sorted, by growing
/// stable subspaces one dimension at a time: every stable `F` of dimension
/// `m + 1` contains a stable hyperplane `G ⊇ ΠF`, and `G + ⟨v⟩` is stable
/// exactly when `Πv ∈ G`.
pub fn enumerate_points(w: &PiModule, r: usize, budget: u64) -> Result<Vec<LatticePoint>> {
    if r > w.dim() {
        return Err(Error::Range(format!("rank {r} exceeds dim {}", w.dim())));
    }
    w.check_budget(r, budget)?;
    let field = w.field();
    let d = w.dim();
    let pi_t = w.pi_matrix().transpose();
    let mut level: BTreeSet<LatticePoint> = BTreeSet::from([LatticePoint::from_rref(FqMatrix::zeros(field, 0, d))]);
    for _ in 0..r {
        let mut next = BTreeSet::new();
        for g in &level {
            let pre = preimage(&g.basis, &pi_t);
            for_each_vector(&pre, |v| {
                let row = FqMatrix::from_fn(field, 1, d, |_, j| v[j]);
                let grown = g.basis.stack(&row).row_space();
                if grown.rows() == g.rank() + 1 {
                    next.insert(LatticePoint::from_rref(grown));
                }
            });
        }
        level = next;
    }
    Ok(level.into_iter().collect())
}

/// Row basis of `{v : vΠᵀ ∈ rowspace(g)}`, i.e. the vectors whose image
/// under `Π` lies in `G`.
fn preimage(g: &FqMatrix<PrimeField>, pi_t: &FqMatrix<PrimeField>) -> FqMatrix<PrimeField> {
    // v·Πᵀ ∈ G  ⟺  v·Πᵀ·Nᵀ = 0 for a basis N of the annihilator of G
    let ann = g.right_kernel();
    pi_t.mul(&ann.transpose()).transpose().right_kernel()
}

/// The same points by filtering every `r`-subspace of `𝔽ₚ^D`.
pub fn enumerate_points_by_filter(w: &PiModule, r: usize, budget: u64) -> Result<Vec<LatticePoint>> {
    if r > w.dim() {
        return Err(Error::Range(format!("rank {r} exceeds dim {}", w.dim())));
    }
    w.check_budget(r, budget)?;
    let mut out = BTreeSet::new();
    for_each_subspace(w.field(), w.dim(), r, |m| {
        if w.is_stable(m) {
            out.insert(LatticePoint::from_rref(m.clone()));
        }
    });
    Ok(out.into_iter().collect())
}

/// Jordan type of `Π|F`.
pub fn stratum_of(w: &PiModule, f: &LatticePoint) -> Partition {
    let a = f.restriction(w);
    debug_assert!(a.pow(a.rows() as u32).is_zero(), "char poly of Π|F is T^r");
    jordan_type_of(&a).expect("restriction of a nilpotent operator")
}

/// The matrix `A = Π|F` produced by `φ` and its Jordan type, computed from
/// the ranks of `Π^k` on the basis of `F` directly.
pub fn phi_image_type(w: &PiModule, f: &LatticePoint) -> (Partition, FqMatrix<PrimeField>) {
    let a = f.restriction(w);
    // rank of Π^k on F = dim Π^k F
    let mut ranks = vec![f.rank()];
    let mut cur = f.basis.clone();
    while *ranks.last().unwrap() > 0 {
        cur = w.apply_rows(&cur).row_space();
        ranks.push(cur.rows());
    }
    let dual: Vec<u32> = ranks.windows(2).map(|x| (x[0] - x[1]) as u32).collect();
    let s = Partition::new(dual).expect("nonincreasing rank drops").dual();
    (s, a)
}

/// Number of points in each stratum.
pub fn stratify(w: &PiModule, r: usize, budget: u64) -> Result<BTreeMap<Partition, u64>> {
    let mut out = BTreeMap::new();
    for f in enumerate_points(w, r, budget)? {
        *out.entry(stratum_of(w, &f)).or_insert(0) += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn trivial_pi_gives_all_subspaces() {
        for p in [2, 3] {
            let w = PiModule::homogeneous(f(p), 1, 3).unwrap();
            for r in 0..=3 {
                let pts = enumerate_points(&w, r, 1_000_000).unwrap();
                assert_eq!(pts.len() as u128, gaussian_binomial(3, r, p));
                for x in &pts {
                    assert_eq!(stratum_of(&w, x), Partition::new(vec![1; r]).unwrap());
                }
            }
        }
    }

    #[test]
    fn single_block_has_one_line() {
        let w = PiModule::new(f(3), vec![2]).unwrap();
        let pts = enumerate_points(&w, 1, 1_000).unwrap();
        assert_eq!(pts.len(), 1);
        // the image of Π is the span of the second basis vector
        assert_eq!(pts[0].basis(), &FqMatrix::from_rows(&f(3), &[vec![0, 1]]));
    }

    #[test]
    fn both_enumerations_agree() {
        for p in [2, 3] {
            for exps in [vec![2, 2], vec![3, 1], vec![2, 1, 1], vec![3, 2]] {
                let w = PiModule::new(f(p), exps.clone()).unwrap();
                for r in 0..=w.dim() {
                    let a = enumerate_points(&w, r, 1_000_000).unwrap();
                    let b = enumerate_points_by_filter(&w, r, 1_000_000).unwrap();
                    assert_eq!(a, b, "p={p} exps={exps:?} r={r}");
                }
            }
        }
    }

    #[test]
    fn remark_counterexample() {
        for e in [3, 4] {
            for p in [2, 3] {
                let w = PiModule::new(f(p), vec![e, 1]).unwrap();
                let strata = stratify(&w, e as usize, 1_000_000).unwrap();
                let expected = BTreeMap::from([(part(&[e]), p), (part(&[e - 1, 1]), 1)]);
                assert_eq!(strata, expected, "e={e} p={p}");
            }
        }
    }

    #[test]
    fn phi_agrees_with_stratum() {
        let w = PiModule::homogeneous(f(2), 2, 2).unwrap();
        for r in 0..=4 {
            for x in enumerate_points(&w, r, 1_000).unwrap() {
                let (s, a) = phi_image_type(&w, &x);
                assert_eq!(s, stratum_of(&w, &x));
                assert_eq!(a, x.restriction(&w));
            }
        }
    }

    #[test]
    fn homogeneous_small_case() {
        let w = PiModule::homogeneous(f(2), 2, 2).unwrap();
        let strata = stratify(&w, 2, 1_000).unwrap();
        assert_eq!(strata.keys().cloned().collect::<Vec<_>>(), vec![part(&[1, 1]), part(&[2])]);
        assert!(matches!(enumerate_points(&w, 2, 3), Err(Error::BudgetExceeded { .. })));
    }
}
