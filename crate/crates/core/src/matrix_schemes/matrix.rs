use std::sync::Arc;

use crate::polyring::{Field, PolyRing, Polynomial};

/// Dense matrix with polynomial entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix<F: Field> {
    ring: Arc<PolyRing<F>>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn from_fn(ring: &Arc<PolyRing<F>>, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Polynomial<F>) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { ring: ring.clone(), rows, cols, entries }
    }

    pub fn zeros(ring: &Arc<PolyRing<F>>, rows: usize, cols: usize) -> Self {
        Self::from_fn(ring, rows, cols, |_, _| ring.zero())
    }

    pub fn identity(ring: &Arc<PolyRing<F>>, n: usize) -> Self {
        Self::from_fn(ring, n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Polynomial<F>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn mul(&self, other: &PolyMatrix<F>) -> PolyMatrix<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        PolyMatrix::from_fn(&self.ring, self.rows, other.cols, |i, j| {
            (0..self.cols).fold(self.ring.zero(), |acc, k| {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    &acc + &(a * b)
                }
            })
        })
    }

    pub fn add(&self, other: &PolyMatrix<F>) -> PolyMatrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        PolyMatrix::from_fn(&self.ring, self.rows, self.cols, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &PolyMatrix<F>) -> PolyMatrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "dimension mismatch");
        PolyMatrix::from_fn(&self.ring, self.rows, self.cols, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn scale(&self, p: &Polynomial<F>) -> PolyMatrix<F> {
        PolyMatrix::from_fn(&self.ring, self.rows, self.cols, |i, j| self.get(i, j) * p)
    }

    pub fn pow(&self, k: u32) -> PolyMatrix<F> {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let mut acc = PolyMatrix::identity(&self.ring, self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Determinant of the submatrix on `rows × cols` (both in the given order).
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Polynomial<F> {
        assert_eq!(rows.len(), cols.len(), "minor must be square");
        det_rec(&self.ring, &|i, j| self.get(rows[i], cols[j]).clone(), rows.len())
    }

    pub fn det(&self) -> Polynomial<F> {
        let idx: Vec<usize> = (0..self.rows).collect();
        self.minor(&idx, &idx)
    }
}

/// Laplace expansion along the first row; sizes here stay tiny.
pub(crate) fn det_rec<F: Field>(
    ring: &Arc<PolyRing<F>>,
    entry: &dyn Fn(usize, usize) -> Polynomial<F>,
    n: usize,
) -> Polynomial<F> {
    match n {
        0 => ring.one(),
        1 => entry(0, 0),
        2 => &(&entry(0, 0) * &entry(1, 1)) - &(&entry(0, 1) * &entry(1, 0)),
        _ => {
            let mut acc = ring.zero();
            for j in 0..n {
                let a = entry(0, j);
                if a.is_zero() {
                    continue;
                }
                let sub = |i: usize, k: usize| entry(i + 1, if k < j { k } else { k + 1 });
                let m = &a * &det_rec(ring, &sub, n - 1);
                acc = if j % 2 == 0 { &acc + &m } else { &acc - &m };
            }
            acc
        }
    }
}

/// `t`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, t: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < t - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if t <= n {
        go(0, n, t, &mut Vec::new(), &mut out);
    }
    out
}
