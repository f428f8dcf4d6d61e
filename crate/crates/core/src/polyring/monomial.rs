use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// Exponent vector over the variables of a ring, with its total degree cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars], deg: 0 }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        let deg = exps.iter().sum();
        Monomial { exps, deg }
    }

    pub fn var(nvars: usize, i: usize, k: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = k;
        Monomial { exps, deg: k }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { exps, deg: self.deg + other.deg }
    }

    /// `self | other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        Some(Monomial { exps, deg: other.deg - self.deg })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::from_exps(self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Index of the only variable occurring, when this is a pure power.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut support = self.exps.iter().enumerate().filter(|(_, &e)| e > 0);
        match (support.next(), support.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }
}

/// Monomial orders; variable 0 is the largest variable in both.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::GrevLex => a.deg.cmp(&b.deg).then_with(|| {
                // smaller exponent in the last differing variable wins
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

pub(crate) fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    a.exps.cmp(&b.exps)
}
