use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact coefficient arithmetic. Elements are plain values; all operations
/// go through the field object so that `𝔽ₚ` can carry its modulus.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn kind(&self) -> FieldKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// `num / den`; fails when `den` vanishes in the field.
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// Whether the printed form should carry a minus sign.
    fn is_negative(&self, _a: &Self::Elem) -> bool {
        false
    }
    /// Decimal form of `a`, or of `-a` when [`Field::is_negative`] holds.
    fn format_abs(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// Runtime description of a coefficient field, used in file formats and on
/// the command line. Serialized as `"Q"` or `"GF(p)"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldKind {
    type Err = Error;

    /// Accepts `Q`, `QQ`, a bare prime `p`, `GF(p)` or `F_p`, in either case.
    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        if matches!(upper.as_str(), "Q" | "QQ") {
            return Ok(FieldKind::Rationals);
        }
        let digits = upper
            .strip_prefix("GF(")
            .and_then(|x| x.strip_suffix(')'))
            .or_else(|| upper.strip_prefix("F_"))
            .unwrap_or(&upper);
        let p: u64 = digits.parse().map_err(|_| Error::Parse(format!("unknown field {s:?}")))?;
        PrimeField::new(p)?;
        Ok(FieldKind::Prime(p))
    }
}

impl Serialize for FieldKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldKind {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// ℚ with arbitrary precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn kind(&self) -> FieldKind {
        FieldKind::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "division by zero");
        a.recip()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn is_negative(&self, a: &BigRational) -> bool {
        a.is_negative()
    }
    fn format_abs(&self, a: &BigRational) -> String {
        let a = a.abs();
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
}

/// `𝔽ₚ` for a prime `p < 2³¹`, elements stored as `0 ≤ a < p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 31).contains(&p) || !is_prime(p) {
            return Err(Error::Range(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    fn reduce_big(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        n.mod_floor(&p).to_u64().expect("residue fits")
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        acc
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn kind(&self) -> FieldKind {
        FieldKind::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<u64> {
        let d = self.reduce_big(den);
        if d == 0 {
            return Err(Error::Parse(format!("denominator {den} vanishes mod {}", self.p)));
        }
        Ok(self.mul(&self.reduce_big(num), &self.inv(&d)))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "division by zero");
        self.pow(*a, self.p - 2)
    }
    fn format_abs(&self, a: &u64) -> String {
        a.to_string()
    }
}
