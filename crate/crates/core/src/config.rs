//! Resource budgets and their single environment override.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable read by [`Budgets::from_env`]. Same syntax as the
/// command line `--budget` flag, e.g. `spairs=20000,enumeration=1000000`.
pub const BUDGET_ENV: &str = "LOCMOD_BUDGET";

/// Limits that make long computations fail deterministically instead of
/// running away.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Budgets {
    /// S-pairs a single Groebner basis computation may process.
    pub max_spairs: u64,
    /// Terms any intermediate polynomial may hold during reduction.
    pub max_terms: u64,
    /// Subspaces or flags an enumeration may visit.
    pub max_enumeration: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets { max_spairs: 1_000_000, max_terms: 1_000_000, max_enumeration: 10_000_000 }
    }
}

impl Budgets {
    /// Defaults, overridden by [`BUDGET_ENV`] when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(s) if !s.trim().is_empty() => Budgets::default().overridden_by(&s),
            _ => Ok(Budgets::default()),
        }
    }

    /// Applies `key=value` pairs separated by commas.
    pub fn overridden_by(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) =
                item.split_once('=').ok_or_else(|| Error::Parse(format!("budget item {item:?} lacks '='")))?;
            let value: u64 = value
                .trim()
                .replace('_', "")
                .parse()
                .map_err(|_| Error::Parse(format!("budget value {value:?} is not an integer")))?;
            match key.trim() {
                "spairs" => self.max_spairs = value,
                "terms" => self.max_terms = value,
                "enumeration" => self.max_enumeration = value,
                other => return Err(Error::Parse(format!("unknown budget {other:?}"))),
            }
        }
        Ok(self)
    }
}

impl FromStr for Budgets {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Budgets::default().overridden_by(s)
    }
}

impl fmt::Display for Budgets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "spairs={},terms={},enumeration={}", self.max_spairs, self.max_terms, self.max_enumeration)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let b: Budgets = "spairs=10, enumeration=1_000".parse().unwrap();
        assert_eq!(b.max_spairs, 10);
        assert_eq!(b.max_enumeration, 1000);
        assert_eq!(b.max_terms, Budgets::default().max_terms);
        assert_eq!(b.to_string().parse::<Budgets>().unwrap(), b);
        assert!("bogus=1".parse::<Budgets>().is_err());
        assert!("spairs".parse::<Budgets>().is_err());
    }
}
