//! Sparse multivariate polynomials over F_p.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::field::PrimeField;
use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// The ambient ring F_p[x_1..x_n] together with the order that fixes the
/// canonical term sequence of its polynomials.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    names: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(p: u64, names: Vec<String>, order: MonomialOrder) -> Result<Arc<Self>> {
        let field = PrimeField::new(p)?;
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateName(n.clone()));
            }
        }
        Ok(Arc::new(PolyRing { field, names, order }))
    }

    pub(crate) fn from_parts(field: PrimeField, names: Vec<String>, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing { field, names, order })
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing {
            field: self.field,
            names: self.names.clone(),
            order,
        })
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    #[inline]
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(self: &Arc<Self>) -> Polynomial {
        Polynomial {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(self: &Arc<Self>) -> Polynomial {
        self.constant(1)
    }

    pub fn constant(self: &Arc<Self>, c: u32) -> Polynomial {
        let c = self.field.from_u64(c as u64);
        let terms = if c == 0 {
            Vec::new()
        } else {
            vec![(Monomial::one(self.nvars()), c)]
        };
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }

    pub fn var(self: &Arc<Self>, index: usize) -> Polynomial {
        Polynomial {
            ring: self.clone(),
            terms: vec![(Monomial::variable(self.nvars(), index), 1)],
        }
    }

    pub fn monomial(self: &Arc<Self>, m: Monomial, c: u32) -> Polynomial {
        Polynomial::from_terms(self, vec![(m, c)])
    }

    pub fn vars(self: &Arc<Self>) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub(crate) fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }
}

pub type Term = (Monomial, u32);

/// Terms are kept strictly descending in the ring's order with no zero
/// coefficients, so structural equality is ideal-independent equality.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<Term>) -> Self {
        let f = ring.field();
        terms.iter_mut().for_each(|t| t.1 = f.from_u64(t.1 as u64));
        terms.sort_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Caller guarantees canonical (sorted, merged, nonzero) terms.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.cmp_monomials(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1 == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    #[inline]
    pub fn leading_coeff(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.1)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    /// Degree in variable `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exponents()[i]).max().unwrap_or(0)
    }

    /// Variables that occur in some term.
    pub fn variables(&self) -> Vec<usize> {
        let n = self.ring.nvars();
        (0..n)
            .filter(|&i| self.terms.iter().any(|t| t.0.exponents()[i] > 0))
            .collect()
    }

    pub fn uses_only(&self, allowed: &[bool]) -> bool {
        self.terms
            .iter()
            .all(|t| t.0.exponents().iter().zip(allowed).all(|(&e, &ok)| e == 0 || ok))
    }

    pub fn coeff_of(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|t| self.ring.cmp_monomials(m, &t.0))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{:?} vs {:?}",
                self.ring.names, other.ring.names
            )))
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add(other))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.sub(other))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul(other))
    }

    /// Panics on ring mismatch; use `try_add` at API boundaries.
    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, 1)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let m1 = self.ring.field().neg(1);
        self.merge(other, m1)
    }

    /// `self + scale * other`, merged in one pass.
    fn merge(&self, other: &Polynomial, scale: u32) -> Polynomial {
        debug_assert!(self.check_ring(other).is_ok(), "ring mismatch");
        let f = *self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match self.ring.cmp_monomials(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), f.mul(b[j].1, scale)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(a[i].1, f.mul(b[j].1, scale));
                    if c != 0 {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|t| (t.0.clone(), f.mul(t.1, scale))));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    /// `self - c * m * g`; the reduction step of every division.
    pub fn sub_scaled(&self, c: u32, m: &Monomial, g: &Polynomial) -> Polynomial {
        let f = self.ring.field();
        self.merge(&g.mul_term(m, f.neg(c)), 1)
    }

    pub fn neg(&self) -> Polynomial {
        let f = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(*c))).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field();
        let c = f.from_u64(c as u64);
        if c == 0 {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect(),
        }
    }

    /// Multiplication by a monomial preserves term order.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let f = self.ring.field();
        if c == 0 {
            return self.ring.zero();
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(a, b)| (a.mul(m), f.mul(*b, c))).collect(),
        }
    }

    /// Each term of the shorter factor scales the longer one into an
    /// already-sorted row; rows are combined by a balanced merge tree.
    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert!(self.check_ring(other).is_ok(), "ring mismatch");
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        let (short, long) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut rows: Vec<Polynomial> = short.terms.iter().map(|(m, c)| long.mul_term(m, *c)).collect();
        while rows.len() > 1 {
            let mut next = Vec::with_capacity(rows.len().div_ceil(2));
            let mut it = rows.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(a.add(&b)),
                    None => next.push(a),
                }
            }
            rows = next;
        }
        rows.pop().unwrap()
    }

    pub fn pow(&self, mut n: u64) -> Polynomial {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn monic(&self) -> Polynomial {
        if self.is_zero() || self.leading_coeff() == 1 {
            return self.clone();
        }
        let inv = self.ring.field().inv(self.leading_coeff());
        self.scale(inv)
    }

    /// `f^(p^e)`, computed termwise: over F_p Frobenius is additive and
    /// fixes every coefficient.
    pub fn frobenius_power(&self, e: u32) -> Result<Polynomial> {
        let q = (self.ring.characteristic() as u64)
            .checked_pow(e)
            .ok_or(Error::ExponentOverflow)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.scale_exponents(q)?, *c));
        }
        // scaling all exponents by q preserves any monomial order
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Image under the endomorphism x_i -> images[i].
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        let n = self.ring.nvars();
        if images.len() != n {
            return Err(Error::VariableCount {
                expected: n,
                got: images.len(),
            });
        }
        let target = match images.first() {
            Some(g) => g.ring.clone(),
            None => self.ring.clone(),
        };
        for g in images {
            if !(Arc::ptr_eq(&g.ring, &target) || *g.ring == *target) {
                return Err(Error::RingMismatch("substitution images in different rings".into()));
            }
        }
        let mut powers: Vec<Vec<Polynomial>> = vec![vec![target.one()]; n];
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.constant(*c);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][e as usize]);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Re-express in `target`, sending variable `i` to `var_map[i]`.
    /// Variables of `self` that do not occur may map anywhere.
    pub fn map_into(&self, target: &Arc<PolyRing>, var_map: &[usize]) -> Polynomial {
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut out = Monomial::one(n);
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e > 0 {
                        out.exponents_mut()[var_map[i]] += e;
                    }
                }
                (out, *c)
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Same variables, different order.
    pub fn reorder(&self, target: &Arc<PolyRing>) -> Polynomial {
        debug_assert_eq!(target.nvars(), self.ring.nvars());
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| target.cmp_monomials(&b.0, &a.0));
        Polynomial {
            ring: target.clone(),
            terms,
        }
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let f = self.ring.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponents()[var] > 0)
            .map(|(m, c)| {
                let e = m.exponents()[var];
                let mut m2 = m.clone();
                m2.exponents_mut()[var] = e - 1;
                (m2, f.mul(*c, f.from_u64(e as u64)))
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Evaluate at a point of F_p^n.
    pub fn evaluate(&self, point: &[u32]) -> u32 {
        let f = self.ring.field();
        self.terms.iter().fold(0, |acc, (m, c)| {
            let v = m
                .exponents()
                .iter()
                .zip(point)
                .fold(*c, |a, (&e, &x)| f.mul(a, f.pow(x, e as u64)));
            f.add(acc, v)
        })
    }

    /// Canonical ordering for sorting generator lists: descending by term
    /// sequence under the ring order.
    pub fn canonical_cmp(&self, other: &Polynomial) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            match self.ring.cmp_monomials(&a.0, &b.0) {
                Ordering::Equal => match a.1.cmp(&b.1) {
                    Ordering::Equal => continue,
                    o => return o,
                },
                o => return o,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

/// Result-returning arithmetic entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(op: ArithOp, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    match op {
        ArithOp::Add => f.try_add(g),
        ArithOp::Sub => f.try_sub(g),
        ArithOp::Mul => f.try_mul(g),
    }
}

pub(crate) fn write_monomial(out: &mut impl fmt::Write, m: &Monomial, names: &[String]) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.write_char('*')?;
        }
        first = false;
        out.write_str(&names[i])?;
        if e > 1 {
            write!(out, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else {
                if *c != 1 {
                    write!(f, "{c}*")?;
                }
                write_monomial(f, m, &self.ring.names)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
