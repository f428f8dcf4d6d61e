//! Dense matrices over a [`Field`] and enumeration of subspaces of `𝔽ₚⁿ`.
//!
//! Subspaces are represented by their basis rows in reduced row echelon
//! form, which is unique per subspace.

use std::fmt;

use crate::polyring::{Field, PrimeField};

#[derive(Clone, PartialEq, Eq)]
pub struct FqMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for FqMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entry = |i: usize, j: usize| {
            let (x, abs) = (self.get(i, j), self.field.format_abs(self.get(i, j)));
            if self.field.is_negative(x) {
                format!("-{abs}")
            } else {
                abs
            }
        };
        let rows: Vec<Vec<String>> = (0..self.rows).map(|i| (0..self.cols).map(|j| entry(i, j)).collect()).collect();
        f.debug_list().entries(rows).finish()
    }
}

impl<F: Field> FqMatrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        FqMatrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: &F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        FqMatrix { field: field.clone(), rows, cols, data }
    }

    /// Integer rows mapped into the field. Panics on ragged input.
    pub fn from_rows(field: &F, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(field, rows.len(), cols, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        assert_eq!(self.rows, self.cols, "square matrix required");
        (0..k).fold(Self::identity(&self.field, self.rows), |acc, _| acc.mul(self))
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        for col in 0..m.cols {
            let row = pivots.len();
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !f.is_zero(m.get(i, col))) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = f.inv(m.get(row, col));
            for j in col..m.cols {
                let v = f.mul(m.get(row, j), &inv);
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row || f.is_zero(m.get(i, col)) {
                    continue;
                }
                let c = m.get(i, col).clone();
                for j in col..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&c, m.get(row, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        let aug = Self::from_fn(&self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(&self.field, n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// Row basis of `{x : self·xᵀ = 0}`.
    pub fn right_kernel(&self) -> Self {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|j| !pivots.contains(j)).collect();
        Self::from_fn(f, free.len(), self.cols, |k, j| {
            if j == free[k] {
                f.one()
            } else if let Some(i) = pivots.iter().position(|&p| p == j) {
                f.neg(r.get(i, free[k]))
            } else {
                f.zero()
            }
        })
    }

    /// Rows of `self` stacked over rows of `other`.
    pub fn stack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "dimension mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FqMatrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// The nonzero rows of the reduced row echelon form.
    pub fn row_space(&self) -> Self {
        let (m, pivots) = self.rref();
        let k = pivots.len();
        FqMatrix { field: self.field.clone(), rows: k, cols: self.cols, data: m.data[..k * self.cols].to_vec() }
    }

    /// Whether the row vector `v` lies in the span of the rows.
    pub fn spans(&self, v: &[F::Elem]) -> bool {
        let single = FqMatrix { field: self.field.clone(), rows: 1, cols: self.cols, data: v.to_vec() };
        self.stack(&single).rank() == self.rank()
    }
}

/// `[n choose k]_q`, saturating at `u128::MAX`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    // product of (q^{n-i} - 1)/(q^{i+1} - 1) is exact at each step
    let q = u128::from(q);
    let mut acc: u128 = 1;
    for i in 0..k {
        let num = q.checked_pow((n - i) as u32).map(|x| x - 1);
        let den = q.pow((i + 1) as u32) - 1;
        match num.and_then(|num| acc.checked_mul(num)) {
            Some(v) => acc = v / den,
            None => return u128::MAX,
        }
    }
    acc
}

/// Number of flags of subspaces with successive quotient dimensions
/// `parts` in `𝔽_q^{Σ parts}`, saturating at `u128::MAX`.
pub fn gaussian_multinomial(parts: &[usize], q: u64) -> u128 {
    let mut n: usize = parts.iter().sum();
    let mut acc: u128 = 1;
    for &k in parts {
        acc = acc.saturating_mul(gaussian_binomial(n, k, q));
        n -= k;
    }
    acc
}

/// Calls `visit` with every `k`-dimensional subspace of `𝔽ₚⁿ`, given as its
/// `k × n` reduced row echelon basis, ordered by pivot set and then by the
/// free entries.
pub fn for_each_subspace(field: &PrimeField, n: usize, k: usize, mut visit: impl FnMut(&FqMatrix<PrimeField>)) {
    if k > n {
        return;
    }
    let p = field.modulus();
    for pivots in crate::matrix_schemes::subsets(n, k) {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let pivots = &pivots;
                (pivots[i] + 1..n).filter(move |j| !pivots.contains(j)).map(move |j| (i, j))
            })
            .collect();
        let mut m = FqMatrix::zeros(field, k, n);
        for (i, &c) in pivots.iter().enumerate() {
            m.set(i, c, 1);
        }
        let mut digits = vec![0u64; free.len()];
        loop {
            visit(&m);
            // odometer over the free entries
            let mut pos = 0;
            loop {
                if pos == digits.len() {
                    break;
                }
                digits[pos] += 1;
                if digits[pos] < p {
                    let (i, j) = free[pos];
                    m.set(i, j, digits[pos]);
                    break;
                }
                digits[pos] = 0;
                let (i, j) = free[pos];
                m.set(i, j, 0);
                pos += 1;
            }
            if pos == digits.len() {
                break;
            }
        }
    }
}

/// Every vector in the row space of `basis`, as `Σ c_i · row_i` with the
/// coefficient vector running over `𝔽ₚ^k` in odometer order.
pub fn for_each_vector(basis: &FqMatrix<PrimeField>, mut visit: impl FnMut(&[u64])) {
    let f = basis.field();
    let p = f.modulus();
    let (k, n) = (basis.rows(), basis.cols());
    let mut coeffs = vec![0u64; k];
    let mut v = vec![0u64; n];
    loop {
        visit(&v);
        let mut pos = 0;
        loop {
            if pos == k {
                return;
            }
            coeffs[pos] += 1;
            // p additions of a row cancel, so wrapping needs no correction
            for (x, b) in v.iter_mut().zip(basis.row(pos)) {
                *x = f.add(x, b);
            }
            if coeffs[pos] < p {
                break;
            }
            coeffs[pos] = 0;
            pos += 1;
        }
    }
}
