use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use super::field::{Field, FieldKind};
use super::groebner::{groebner_basis, reduce_by_basis};
use super::monomial::{Monomial, MonomialOrder};
use super::parse::parse_polynomial;
use super::poly::{same_ring, PolyRing, Polynomial};
use crate::config::Budgets;
use crate::error::{Error, Result};

/// Vector-space dimension of `k[x]/I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuotientDimension {
    Finite(u64),
    Infinite,
}

/// An ideal given by generators, with its reduced Groebner basis for the
/// ring's monomial order computed on first use and cached.
#[derive(Clone)]
pub struct Ideal<F: Field> {
    ring: Arc<PolyRing<F>>,
    gens: Vec<Polynomial<F>>,
    budgets: Budgets,
    basis: OnceLock<Vec<Polynomial<F>>>,
}

impl<F: Field> std::fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.gens).finish()
    }
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<PolyRing<F>>, gens: impl IntoIterator<Item = Polynomial<F>>) -> Result<Self> {
        let gens: Vec<_> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::ContextMismatch);
        }
        Ok(Ideal { ring: ring.clone(), gens, budgets: Budgets::default(), basis: OnceLock::new() })
    }

    pub fn with_budgets(mut self, budgets: Budgets) -> Self {
        self.budgets = budgets;
        self
    }

    pub fn budgets(&self) -> &Budgets {
        &self.budgets
    }

    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    /// Reduced Groebner basis in the ring's order.
    pub fn groebner_basis(&self) -> Result<&[Polynomial<F>]> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let b = groebner_basis(&self.gens, &self.budgets)?;
        // a concurrent caller may have won; both results are identical
        let _ = self.basis.set(b);
        Ok(self.basis.get().expect("just set"))
    }

    /// Reduced Groebner basis for another monomial order; not cached.
    pub fn groebner_basis_in(&self, order: MonomialOrder) -> Result<Vec<Polynomial<F>>> {
        if order == self.ring.order() {
            return self.groebner_basis().map(<[_]>::to_vec);
        }
        let target = self.ring.with_order(order);
        let gens = self.gens.iter().map(|g| g.reorder(&target)).collect::<Result<Vec<_>>>()?;
        groebner_basis(&gens, &self.budgets)
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::ContextMismatch);
        }
        reduce_by_basis(f, self.groebner_basis()?, &self.budgets)
    }

    pub fn contains_element(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal<F>) -> Result<bool> {
        for g in &other.gens {
            if !self.contains_element(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal<F>) -> Result<bool> {
        Ok(self.contains(other)? && other.contains(self)?)
    }

    /// Monomials outside the leading-term ideal, or `None` when there are
    /// infinitely many.
    pub fn standard_monomials(&self) -> Result<Option<Vec<Monomial>>> {
        let basis = self.groebner_basis()?;
        let n = self.ring.nvars();
        let leads: Vec<&Monomial> = basis.iter().map(|g| g.leading_monomial().expect("nonzero")).collect();
        let mut bound = vec![None; n];
        for m in &leads {
            if m.is_one() {
                return Ok(Some(Vec::new()));
            }
            if let Some(i) = m.pure_power_var() {
                let e = m.exps()[i];
                bound[i] = Some(bound[i].map_or(e, |b: u32| b.min(e)));
            }
        }
        if bound.iter().any(Option::is_none) {
            return Ok(None);
        }
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        staircase(0, &mut exps, &leads, &mut out);
        Ok(Some(out))
    }

    pub fn quotient_dimension(&self) -> Result<QuotientDimension> {
        Ok(match self.standard_monomials()? {
            Some(s) => QuotientDimension::Finite(s.len() as u64),
            None => QuotientDimension::Infinite,
        })
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            field: self.ring.field().kind(),
            variables: self.ring.vars().to_vec(),
            generators: self.gens.iter().map(ToString::to_string).collect(),
            annotations: None,
        }
    }
}

/// Depth-first walk of the order ideal of standard monomials. Standard
/// monomials are closed under division, so once raising variable `i` hits
/// the leading-term ideal every larger exponent does too.
fn staircase(i: usize, exps: &mut Vec<u32>, leads: &[&Monomial], out: &mut Vec<Monomial>) {
    if i == exps.len() {
        out.push(Monomial::from_exps(exps.clone()));
        return;
    }
    loop {
        let m = Monomial::from_exps(exps.clone());
        if leads.iter().any(|l| l.divides(&m)) {
            break;
        }
        staircase(i + 1, exps, leads, out);
        exps[i] += 1;
    }
    exps[i] = 0;
}

/// Ideal file format: `{"field": "Q", "variables": [...], "generators": [...]}`
/// with generators in the textual polynomial format. `annotations`, when
/// present, runs parallel to `generators`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub field: FieldKind,
    pub variables: Vec<String>,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotations: Option<Vec<String>>,
}

impl IdealJson {
    /// Parses the generators over `field`, whose kind must match.
    pub fn to_ideal<F: Field>(&self, field: F, order: MonomialOrder) -> Result<Ideal<F>> {
        if field.kind() != self.field {
            return Err(Error::ContextMismatch);
        }
        let ring = PolyRing::new(field, self.variables.clone(), order);
        let gens = self.generators.iter().map(|g| parse_polynomial(&ring, g)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&ring, gens)
    }
}
