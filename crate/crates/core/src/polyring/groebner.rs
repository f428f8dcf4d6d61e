//! Buchberger's algorithm with the Gebauer–Möller pair criteria.
//!
//! Pairs are selected by the normal strategy: smallest lcm degree first,
//! ties broken by the lcm in lexicographic order and then by the indices of
//! the pair, so a given generator list always produces the same run.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use super::field::Field;
use super::monomial::{lex, Monomial};
use super::poly::{same_ring, Polynomial};
use crate::config::Budgets;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    pub spairs: u64,
    pub zero_reductions: u64,
    pub max_basis_len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct PairKey {
    lcm: Monomial,
    i: usize,
    j: usize,
}

impl Ord for PairKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lcm
            .degree()
            .cmp(&other.lcm.degree())
            .then_with(|| lex(&self.lcm, &other.lcm))
            .then_with(|| (self.i, self.j).cmp(&(other.i, other.j)))
    }
}

impl PartialOrd for PairKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn support_mask(m: &Monomial) -> u64 {
    m.exps().iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |acc, (i, _)| acc | 1 << (i % 64))
}

/// A monic basis element with its leading monomial unpacked for fast
/// divisibility tests.
struct Reducer<F: Field> {
    poly: Polynomial<F>,
    lm: Monomial,
    mask: u64,
}

impl<F: Field> Reducer<F> {
    fn new(poly: Polynomial<F>) -> Self {
        let lm = poly.leading_monomial().expect("nonzero").clone();
        let mask = support_mask(&lm);
        Reducer { poly, lm, mask }
    }
}

fn find_reducer<'a, F: Field>(m: &Monomial, reducers: impl Iterator<Item = &'a Reducer<F>>) -> Option<&'a Reducer<F>> {
    let mask = support_mask(m);
    reducers.into_iter().find(|r| r.mask & !mask == 0 && r.lm.divides(m))
}

/// Full reduction of `f` by monic `reducers`; the result has no term
/// divisible by any reducer's leading monomial.
fn reduce<F: Field>(
    f: &Polynomial<F>,
    reducers: &[&Reducer<F>],
    budgets: &Budgets,
) -> Result<Polynomial<F>> {
    let ring = f.ring().clone();
    let field = ring.field();
    let mut rest = f.clone();
    let mut done: Vec<(Monomial, F::Elem)> = Vec::new();
    while let Some((m, c)) = rest.leading_term() {
        match find_reducer(m, reducers.iter().copied()) {
            Some(r) => {
                let q = r.lm.quotient_of(m).expect("divides");
                let c = c.clone();
                rest = rest.sub_mul_term(&c, &q, &r.poly);
                if rest.len() as u64 > budgets.max_terms {
                    return Err(Error::ResourceLimit { what: "polynomial terms", limit: budgets.max_terms });
                }
            }
            None => {
                done.push((m.clone(), c.clone()));
                // drop the leading term
                let tail: Vec<_> = rest.terms()[1..].to_vec();
                rest = ring.from_sorted_terms(tail);
            }
        }
    }
    debug_assert!(done.iter().all(|(_, c)| !field.is_zero(c)));
    Ok(ring.from_sorted_terms(done))
}

fn s_polynomial<F: Field>(f: &Reducer<F>, g: &Reducer<F>) -> Polynomial<F> {
    let lcm = f.lm.lcm(&g.lm);
    let one = f.poly.ring().field().one();
    let uf = f.lm.quotient_of(&lcm).expect("divides");
    let ug = g.lm.quotient_of(&lcm).expect("divides");
    f.poly.mul_term(&one, &uf).sub_mul_term(&one, &ug, &g.poly)
}

struct Buchberger<'b, F: Field> {
    basis: Vec<Reducer<F>>,
    active: Vec<bool>,
    pairs: BTreeSet<PairKey>,
    budgets: &'b Budgets,
    stats: GbStats,
}

impl<F: Field> Buchberger<'_, F> {
    fn active_reducers(&self) -> Vec<&Reducer<F>> {
        self.basis.iter().zip(&self.active).filter(|(_, &a)| a).map(|(r, _)| r).collect()
    }

    /// Adds a nonzero polynomial reduced against the active basis, updating
    /// the pair set with the Gebauer–Möller criteria.
    fn insert(&mut self, h: Polynomial<F>) {
        let h = Reducer::new(h.monic());
        let hi = self.basis.len();
        let candidates: Vec<(usize, Monomial, bool)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| (g, h.lm.lcm(&self.basis[g].lm), h.lm.is_coprime(&self.basis[g].lm)))
            .collect();

        let mut kept = vec![false; candidates.len()];
        for a in 0..candidates.len() {
            let (_, lcm_a, coprime_a) = &candidates[a];
            let dominated = candidates.iter().enumerate().any(|(b, (_, lcm_b, _))| {
                b != a && (b > a || kept[b]) && lcm_b.divides(lcm_a)
            });
            kept[a] = *coprime_a || !dominated;
        }

        let h_lm = h.lm.clone();
        let basis = &self.basis;
        self.pairs.retain(|p| {
            !(h_lm.divides(&p.lcm)
                && basis[p.i].lm.lcm(&h_lm) != p.lcm
                && basis[p.j].lm.lcm(&h_lm) != p.lcm)
        });
        for (a, (g, lcm, coprime)) in candidates.into_iter().enumerate() {
            if kept[a] && !coprime {
                self.pairs.insert(PairKey { lcm, i: g, j: hi });
            }
        }
        for g in 0..hi {
            if self.active[g] && h_lm.divides(&self.basis[g].lm) {
                self.active[g] = false;
            }
        }
        self.basis.push(h);
        self.active.push(true);
        let live = self.active.iter().filter(|&&a| a).count();
        self.stats.max_basis_len = self.stats.max_basis_len.max(live);
    }

    fn run(&mut self) -> Result<()> {
        while let Some(pair) = self.pairs.pop_first() {
            self.stats.spairs += 1;
            if self.stats.spairs > self.budgets.max_spairs {
                return Err(Error::ResourceLimit { what: "S-pairs", limit: self.budgets.max_spairs });
            }
            let s = s_polynomial(&self.basis[pair.i], &self.basis[pair.j]);
            let h = reduce(&s, &self.active_reducers(), self.budgets)?;
            if h.is_zero() {
                self.stats.zero_reductions += 1;
            } else {
                self.insert(h);
            }
        }
        Ok(())
    }
}

/// Reduced Groebner basis of the ideal generated by `gens` in the order of
/// their common ring: monic, sorted by ascending leading monomial. Zero
/// generators are ignored; the zero ideal has the empty basis.
pub fn groebner_basis<F: Field>(gens: &[Polynomial<F>], budgets: &Budgets) -> Result<Vec<Polynomial<F>>> {
    groebner_basis_with_stats(gens, budgets).map(|(basis, _)| basis)
}

pub fn groebner_basis_with_stats<F: Field>(
    gens: &[Polynomial<F>],
    budgets: &Budgets,
) -> Result<(Vec<Polynomial<F>>, GbStats)> {
    let Some(first) = gens.first() else {
        return Ok((Vec::new(), GbStats::default()));
    };
    let ring = first.ring().clone();
    if gens.iter().any(|g| !same_ring(g.ring(), &ring)) {
        return Err(Error::ContextMismatch);
    }
    let mut run = Buchberger { basis: Vec::new(), active: Vec::new(), pairs: BTreeSet::new(), budgets, stats: GbStats::default() };
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let h = reduce(g, &run.active_reducers(), budgets)?;
        if !h.is_zero() {
            run.insert(h);
        }
    }
    run.run()?;
    let stats = run.stats;

    // The active set has pairwise non-dividing leading monomials; reduce tails.
    let mut minimal: Vec<Reducer<F>> = run
        .basis
        .into_iter()
        .zip(run.active)
        .filter(|(_, a)| *a)
        .map(|(r, _)| r)
        .collect();
    minimal.sort_by(|a, b| ring.cmp(&a.lm, &b.lm));
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Reducer<F>> = minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, r)| r).collect();
        let p = &minimal[k].poly;
        let (lm, lc) = p.leading_term().expect("nonzero");
        let head = ring.term(lc.clone(), lm.clone());
        let tail = p - &head;
        let tail = reduce(&tail, &others, budgets)?;
        reduced.push((&head + &tail).monic());
    }
    Ok((reduced, stats))
}

/// Remainder of `f` modulo a reduced Groebner basis.
pub fn reduce_by_basis<F: Field>(f: &Polynomial<F>, basis: &[Polynomial<F>], budgets: &Budgets) -> Result<Polynomial<F>> {
    if basis.iter().any(|g| !same_ring(g.ring(), f.ring())) {
        return Err(Error::ContextMismatch);
    }
    let reducers: Vec<Reducer<F>> = basis.iter().filter(|g| !g.is_zero()).map(|g| Reducer::new(g.monic())).collect();
    let refs: Vec<&Reducer<F>> = reducers.iter().collect();
    reduce(f, &refs, budgets)
}
