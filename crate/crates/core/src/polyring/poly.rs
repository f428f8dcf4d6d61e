use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::Field;
use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// Variables, coefficient field and monomial order shared by polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing<F: Field> {
    field: F,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, vars: Vec<String>, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing { field, vars, order })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing { field: self.field.clone(), vars: self.vars.clone(), order })
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial<F> {
        Polynomial { ring: self.clone(), terms: Vec::new() }
    }

    pub fn one(self: &Arc<Self>) -> Polynomial<F> {
        self.constant(self.field.one())
    }

    pub fn constant(self: &Arc<Self>, c: F::Elem) -> Polynomial<F> {
        self.term(c, Monomial::one(self.nvars()))
    }

    pub fn from_i64(self: &Arc<Self>, n: i64) -> Polynomial<F> {
        self.constant(self.field.from_i64(n))
    }

    pub fn term(self: &Arc<Self>, c: F::Elem, m: Monomial) -> Polynomial<F> {
        assert_eq!(m.nvars(), self.nvars(), "monomial has the wrong number of variables");
        let terms = if self.field.is_zero(&c) { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: self.clone(), terms }
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Polynomial<F> {
        self.term(self.field.one(), Monomial::var(self.nvars(), i, 1))
    }

    /// Trusts that `terms` is strictly descending with nonzero coefficients.
    pub(crate) fn from_sorted_terms(self: &Arc<Self>, terms: Vec<(Monomial, F::Elem)>) -> Polynomial<F> {
        debug_assert!(terms.windows(2).all(|w| self.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial { ring: self.clone(), terms }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(self: &Arc<Self>, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Polynomial<F> {
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), self.nvars(), "monomial has the wrong number of variables");
            match acc.get_mut(&m) {
                Some(x) => *x = self.field.add(x, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !self.field.is_zero(c)).collect();
        terms.sort_by(|a, b| self.cmp(&b.0, &a.0));
        Polynomial { ring: self.clone(), terms }
    }
}

pub(crate) fn same_ring<F: Field>(a: &Arc<PolyRing<F>>, b: &Arc<PolyRing<F>>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A polynomial: nonzero terms sorted strictly descending in the ring order.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Arc<PolyRing<F>>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> Polynomial<F> {
    pub fn ring(&self) -> &Arc<PolyRing<F>> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// Coefficient of `m`, zero when absent.
    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        let field = self.ring.field();
        self.terms
            .binary_search_by(|(x, _)| self.ring.cmp(m, x))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| field.zero())
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Polynomial<F> {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&self.ring.field().inv(c)),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Polynomial<F> {
        let field = self.ring.field();
        if field.is_zero(c) {
            return self.ring.zero();
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), field.mul(x, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// `c · m · self`.
    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Polynomial<F> {
        let field = self.ring.field();
        if field.is_zero(c) {
            return self.ring.zero();
        }
        let terms = self.terms.iter().map(|(x, y)| (x.mul(m), field.mul(y, c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// `self − c · m · g`, by a single merge pass.
    pub fn sub_mul_term(&self, c: &F::Elem, m: &Monomial, g: &Polynomial<F>) -> Polynomial<F> {
        debug_assert!(same_ring(&self.ring, &g.ring));
        let field = self.ring.field();
        let neg_c = field.neg(c);
        let shifted = g.terms.iter().map(|(x, y)| (x.mul(m), field.mul(y, &neg_c)));
        Polynomial { ring: self.ring.clone(), terms: merge(&self.ring, self.terms.iter().cloned(), shifted) }
    }

    pub fn pow(&self, k: u32) -> Polynomial<F> {
        let mut acc = self.ring.one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Re-sorts the terms for a ring with the same variables and field but
    /// possibly another monomial order.
    pub fn reorder(&self, target: &Arc<PolyRing<F>>) -> Result<Polynomial<F>> {
        if target.vars() != self.ring.vars() || target.field() != self.ring.field() {
            return Err(Error::ContextMismatch);
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| target.cmp(&b.0, &a.0));
        Ok(Polynomial { ring: target.clone(), terms })
    }

    /// Simultaneous substitution of the variables listed in `assignment`
    /// (keyed by variable index) by polynomials of `target`. Variables that
    /// are not assigned map to the variable of the same name in `target`.
    pub fn substitute(
        &self,
        target: &Arc<PolyRing<F>>,
        assignment: &BTreeMap<usize, Polynomial<F>>,
    ) -> Result<Polynomial<F>> {
        if target.field() != self.ring.field() {
            return Err(Error::ContextMismatch);
        }
        let mut images = Vec::with_capacity(self.ring.nvars());
        for (i, name) in self.ring.vars().iter().enumerate() {
            match assignment.get(&i) {
                Some(p) if same_ring(p.ring(), target) => images.push(p.clone()),
                Some(_) => return Err(Error::ContextMismatch),
                None => match target.var_index(name) {
                    Some(j) => images.push(target.var(j)),
                    None => return Err(Error::ContextMismatch),
                },
            }
        }
        // powers[i][k] = images[i]^k, filled lazily
        let mut powers: Vec<Vec<Polynomial<F>>> = images.into_iter().map(|p| vec![target.one(), p]).collect();
        let mut result = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &powers[i][1];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
                if t.is_zero() {
                    break;
                }
            }
            result = &result + &t;
        }
        Ok(result)
    }
}

/// Merges two descending term streams, dropping cancellations.
fn merge<F: Field>(
    ring: &PolyRing<F>,
    a: impl Iterator<Item = (Monomial, F::Elem)>,
    b: impl Iterator<Item = (Monomial, F::Elem)>,
) -> Vec<(Monomial, F::Elem)> {
    let field = ring.field();
    let mut a = a.peekable();
    let mut b = b.peekable();
    let mut out = Vec::with_capacity(a.size_hint().0 + b.size_hint().0);
    loop {
        let ord = match (a.peek(), b.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some(x), Some(y)) => ring.cmp(&x.0, &y.0),
        };
        match ord {
            Ordering::Greater => out.push(a.next().unwrap()),
            Ordering::Less => out.push(b.next().unwrap()),
            Ordering::Equal => {
                let (m, x) = a.next().unwrap();
                let (_, y) = b.next().unwrap();
                let s = field.add(&x, &y);
                if !field.is_zero(&s) {
                    out.push((m, s));
                }
            }
        }
    }
    out
}

fn check_ring<F: Field>(a: &Polynomial<F>, b: &Polynomial<F>) {
    assert!(same_ring(&a.ring, &b.ring), "polynomials from different rings");
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn add(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        check_ring(self, rhs);
        let terms = merge(&self.ring, self.terms.iter().cloned(), rhs.terms.iter().cloned());
        Polynomial { ring: self.ring.clone(), terms }
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn sub(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        check_ring(self, rhs);
        let field = self.ring.field();
        let neg = rhs.terms.iter().map(|(m, c)| (m.clone(), field.neg(c)));
        let terms = merge(&self.ring, self.terms.iter().cloned(), neg);
        Polynomial { ring: self.ring.clone(), terms }
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn neg(self) -> Polynomial<F> {
        let field = self.ring.field();
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn mul(self, rhs: &Polynomial<F>) -> Polynomial<F> {
        check_ring(self, rhs);
        if self.is_zero() || rhs.is_zero() {
            return self.ring.zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return rhs.mul_term(c, m);
        }
        if rhs.terms.len() == 1 {
            let (m, c) = &rhs.terms[0];
            return self.mul_term(c, m);
        }
        let field = self.ring.field();
        self.ring.from_terms(
            self.terms
                .iter()
                .flat_map(|(m1, c1)| rhs.terms.iter().map(move |(m2, c2)| (m1.mul(m2), field.mul(c1, c2)))),
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<F: Field> $tr for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: Polynomial<F>) -> Polynomial<F> {
                (&self).$method(&rhs)
            }
        }
        impl<F: Field> $tr<&Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $method(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: Field> Neg for Polynomial<F> {
    type Output = Polynomial<F>;

    fn neg(self) -> Polynomial<F> {
        -&self
    }
}

pub(crate) fn format_monomial(vars: &[String], m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{e}", vars[i])),
        }
    }
    parts.join("*")
}

/// Prints in the textual format read by [`super::parse_polynomial`], e.g.
/// `3*a11^2*a12 - 1/2*a21`.
impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.ring.field();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = field.is_negative(c);
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = field.format_abs(c);
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs == "1" {
                write!(f, "{}", format_monomial(self.ring.vars(), m))?;
            } else {
                write!(f, "{abs}*{}", format_monomial(self.ring.vars(), m))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
