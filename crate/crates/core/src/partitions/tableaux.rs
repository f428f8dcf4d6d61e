//! Semistandard tableaux, Kostka numbers and Kostka–Foulkes polynomials.
//!
//! Charge convention (Lascoux–Schützenberger). The reading word of a tableau
//! concatenates its rows from the bottom row to the top row, each read left
//! to right. For a word whose content is a partition, standard subwords are
//! extracted repeatedly: start at the right end, move leftwards to the first
//! unused `1`, then keep moving leftwards (cycling back to the right end when
//! the left end is passed) to the first unused `2`, and so on up to the
//! largest letter still present. Inside a subword the letter `1` has index 0
//! and `k+1` has the index of `k`, plus one if the search for `k+1` had to
//! cycle. The charge of the word is the total of all indices. With this
//! convention `K_{λμ}(q) = Σ_T q^{charge(T)}`, so `K_{λλ}(q) = 1` and
//! `K_{(n),(1^n)}(q) = q^{n(n−1)/2}`.

use std::fmt;

use serde::Serialize;

use super::{dominance_leq, Partition};
use crate::error::{Error, Result};

/// Rows of a Young tableau, top row first.
pub type Tableau = Vec<Vec<u32>>;

/// Polynomial in one variable `q` with integer coefficients, `coeffs[i]` on `q^i`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, q: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * q + c)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (deg, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "q")?,
                (1, _) => write!(f, "{a}*q")?,
                (_, 1) => write!(f, "q^{deg}")?,
                _ => write!(f, "{a}*q^{deg}")?,
            }
        }
        Ok(())
    }
}

fn check_sizes(lambda: &Partition, mu: &Partition) -> Result<()> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch { left: lambda.size() as u64, right: mu.size() as u64 });
    }
    Ok(())
}

/// Calls `visit` with every shape `ν ⊆ λ` obtained from `cur` by adding a
/// horizontal strip of `k` cells.
fn horizontal_strips(cur: &[u32], lambda: &[u32], k: u32, visit: &mut dyn FnMut(&[u32])) {
    fn go(i: usize, cur: &[u32], lambda: &[u32], left: u32, next: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        if i == lambda.len() {
            if left == 0 {
                visit(next);
            }
            return;
        }
        // a horizontal strip never puts two cells in one column
        let cap = if i == 0 { lambda[0] } else { lambda[i].min(cur[i - 1]) };
        for add in 0..=left.min(cap.saturating_sub(cur[i])) {
            next[i] = cur[i] + add;
            go(i + 1, cur, lambda, left - add, next, visit);
        }
        next[i] = cur[i];
    }
    let mut next = cur.to_vec();
    go(0, cur, lambda, k, &mut next, visit);
}

/// Number of semistandard tableaux of shape `lambda` and content `mu`.
pub fn kostka_number(lambda: &Partition, mu: &Partition) -> Result<u64> {
    check_sizes(lambda, mu)?;
    fn count(step: usize, cur: &[u32], lambda: &[u32], content: &[u32]) -> u64 {
        if step == content.len() {
            return 1;
        }
        let mut total = 0;
        horizontal_strips(cur, lambda, content[step], &mut |next| {
            total += count(step + 1, next, lambda, content);
        });
        total
    }
    let shape = lambda.parts();
    Ok(count(0, &vec![0; shape.len()], shape, mu.parts()))
}

/// All semistandard tableaux of shape `lambda` and content `mu`.
pub fn semistandard_tableaux(lambda: &Partition, mu: &Partition) -> Result<Vec<Tableau>> {
    check_sizes(lambda, mu)?;
    fn go(step: usize, cur: &[u32], lambda: &[u32], content: &[u32], tab: &mut Tableau, out: &mut Vec<Tableau>) {
        if step == content.len() {
            out.push(tab.clone());
            return;
        }
        horizontal_strips(cur, lambda, content[step], &mut |next| {
            for (row, (&a, &b)) in cur.iter().zip(next).enumerate() {
                tab[row].extend(std::iter::repeat_n(step as u32 + 1, (b - a) as usize));
            }
            go(step + 1, next, lambda, content, tab, out);
            for (row, (&a, &b)) in cur.iter().zip(next).enumerate() {
                let len = tab[row].len() - (b - a) as usize;
                tab[row].truncate(len);
            }
        });
    }
    let shape = lambda.parts();
    let mut out = Vec::new();
    let mut tab = vec![Vec::new(); shape.len()];
    go(0, &vec![0; shape.len()], shape, mu.parts(), &mut tab, &mut out);
    Ok(out)
}

pub fn reading_word(t: &Tableau) -> Vec<u32> {
    t.iter().rev().flatten().copied().collect()
}

/// Charge of a word whose content is a partition (see module docs).
pub fn charge(word: &[u32]) -> u64 {
    let n = word.len();
    let mut used = vec![false; n];
    let mut remaining = n;
    let mut total = 0u64;
    while remaining > 0 {
        let top = word.iter().zip(&used).filter(|(_, &u)| !u).map(|(&w, _)| w).max().unwrap_or(0);
        let mut pos = n; // one past the right end: the first search starts there
        let mut index = 0u64;
        for letter in 1..=top {
            let mut wrapped = false;
            let mut p = pos;
            let mut found = None;
            for _ in 0..n {
                if p == 0 {
                    p = n;
                    wrapped = true;
                }
                p -= 1;
                if !used[p] && word[p] == letter {
                    found = Some(p);
                    break;
                }
            }
            let Some(p) = found else {
                panic!("content of {word:?} is not a partition");
            };
            // the letter 1 starts the subword and never counts as a wrap
            if wrapped && letter > 1 {
                index += 1;
            }
            total += index;
            used[p] = true;
            remaining -= 1;
            pos = p;
        }
    }
    total
}

/// Kostka–Foulkes polynomial `K_{λμ}(q)` as the charge generating function
/// over semistandard tableaux of shape `lambda` and content `mu`.
pub fn kostka_foulkes(lambda: &Partition, mu: &Partition) -> Result<IntPoly> {
    let mut coeffs = Vec::new();
    for t in semistandard_tableaux(lambda, mu)? {
        let c = charge(&reading_word(&t)) as usize;
        if coeffs.len() <= c {
            coeffs.resize(c + 1, 0);
        }
        coeffs[c] += 1;
    }
    Ok(IntPoly::from_coeffs(coeffs))
}

/// `f^λ` by the hook length formula.
pub fn standard_tableaux_count(lambda: &Partition) -> u64 {
    let n = lambda.size() as u64;
    let dual = lambda.dual();
    let mut num: u128 = (1..=n as u128).product();
    let mut den: u128 = 1;
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row as usize {
            let arm = row as u128 - j as u128 - 1;
            let leg = dual.part(j) as u128 - i as u128 - 1;
            den *= arm + leg + 1;
        }
    }
    let g = num_integer::gcd(num, den);
    num /= g;
    den /= g;
    debug_assert_eq!(den, 1);
    num as u64
}

/// `true` iff `K_{λμ} ≠ 0`, through the dominance criterion.
pub fn kostka_nonzero(lambda: &Partition, mu: &Partition) -> Result<bool> {
    dominance_leq(mu, lambda)
}
