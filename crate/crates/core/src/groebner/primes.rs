//! Minimal primes, within a deliberately narrow scope: monomial ideals,
//! ideals that become one of those after eliminating variables that occur
//! linearly, zero-dimensional ideals whose points are rational (or that
//! live in a single variable), and user-certified decompositions.

use std::sync::Arc;

use super::ops::{eliminate, radical_member};
use super::univariate::{self, Dense};
use super::Ideal;
use crate::algebra::{Monomial, PolyRing, Polynomial};
use crate::error::{Error, Result};

/// Point enumeration cap for zero-dimensional ideals.
const MAX_POINTS: usize = 4096;

/// Decompositions supplied by the user: each entry claims the minimal
/// primes of one ideal.
#[derive(Clone, Default, Debug)]
pub struct PrimeHints {
    claims: Vec<(Ideal, Vec<Ideal>)>,
}

impl PrimeHints {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn claim_decomposition(&mut self, ideal: Ideal, primes: Vec<Ideal>) {
        self.claims.push((ideal, primes));
    }

    /// Claim that `p` is prime.
    pub fn claim_prime(&mut self, p: Ideal) {
        self.claims.push((p.clone(), vec![p]));
    }

    pub fn is_empty(&self) -> bool {
        self.claims.is_empty()
    }

    fn lookup(&self, i: &Ideal) -> Option<&[Ideal]> {
        self.claims
            .iter()
            .find(|(j, _)| j.ring().names() == i.ring().names() && j.equals(i))
            .map(|(_, ps)| ps.as_slice())
    }

    /// Claimed primes, for callers that need to know what was asserted.
    pub fn claimed_primes(&self) -> impl Iterator<Item = &Ideal> {
        self.claims.iter().flat_map(|(_, ps)| ps.iter())
    }
}

/// Checks a claimed decomposition: every claimed prime contains `I`, their
/// product lies in the radical of `I`, and no two are comparable.
pub fn verify_decomposition(i: &Ideal, primes: &[Ideal]) -> Result<()> {
    if primes.is_empty() {
        return Err(Error::InvalidDecomposition("empty decomposition".into()));
    }
    for p in primes {
        if p.is_unit() {
            return Err(Error::InvalidDecomposition("unit ideal is not prime".into()));
        }
        if !p.contains_ideal(i) {
            return Err(Error::InvalidDecomposition(format!("{p} does not contain the ideal")));
        }
    }
    let mut product = Ideal::unit(i.ring());
    for p in primes {
        product = product.product(p);
    }
    for g in product.generators() {
        if !radical_member(g, i) {
            return Err(Error::InvalidDecomposition(
                "product of the claimed primes is not in the radical".into(),
            ));
        }
    }
    for (a, p) in primes.iter().enumerate() {
        for (b, q) in primes.iter().enumerate() {
            if a != b && q.contains_ideal(p) {
                return Err(Error::InvalidDecomposition(format!("{p} and {q} are comparable")));
            }
        }
    }
    Ok(())
}

pub fn minimal_primes(i: &Ideal, hints: &PrimeHints) -> Result<Vec<Ideal>> {
    if i.is_unit() {
        return Ok(Vec::new());
    }
    if let Some(claimed) = hints.lookup(i) {
        verify_decomposition(i, claimed)?;
        return Ok(sorted(claimed.to_vec()));
    }
    scoped(i).map(sorted)
}

fn sorted(mut v: Vec<Ideal>) -> Vec<Ideal> {
    v.sort_by_key(|p| p.canonical_strings());
    v
}

fn scoped(i: &Ideal) -> Result<Vec<Ideal>> {
    let ring = i.ring().clone();
    if i.is_unit() {
        return Ok(Vec::new());
    }
    let basis = i.reduced().to_vec();
    if basis.iter().all(|g| g.is_monomial()) {
        return Ok(monomial_primes(&ring, &basis));
    }
    if let Some((k, v)) = linear_variable(&basis) {
        let g = &basis[k];
        let field = ring.field();
        let c = g.terms().iter().find(|(m, _)| m.exponents()[v] == 1).unwrap().1;
        let x = ring.var(v);
        // x_v = x_v - g / c
        let s = x.sub(&g.scale(field.inv(c)));
        let mut images = ring.vars();
        images[v] = s;
        let rest: Vec<Polynomial> = basis
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, h)| h.substitute(&images))
            .collect::<Result<_>>()?;
        let sub = scoped(&Ideal::new(&ring, rest))?;
        return Ok(sub.into_iter().map(|q| q.with([g.clone()])).collect());
    }
    let effective: Vec<usize> = (0..ring.nvars())
        .filter(|&v| basis.iter().any(|g| g.degree_in(v) > 0))
        .collect();
    let dim = i.dimension().unwrap_or(0);
    let relative_dim = dim - (ring.nvars() - effective.len());
    if relative_dim == 0 {
        return zero_dimensional(i, &ring, &effective);
    }
    Err(Error::OutOfScope(format!(
        "minimal primes of a non-monomial ideal of dimension {relative_dim} in {} variables",
        effective.len()
    )))
}

/// A basis element with a term `c·x_v` such that `x_v` occurs nowhere else
/// in it.
pub(crate) fn linear_variable(basis: &[Polynomial]) -> Option<(usize, usize)> {
    for (k, g) in basis.iter().enumerate() {
        for v in 0..g.ring().nvars() {
            let hits: Vec<&Monomial> = g
                .terms()
                .iter()
                .filter(|(m, _)| m.exponents()[v] > 0)
                .map(|(m, _)| m)
                .collect();
            if hits.len() == 1 && hits[0].exponents()[v] == 1 && hits[0].degree() == 1 {
                return Some((k, v));
            }
        }
    }
    None
}

/// Minimal vertex covers of the supports give the minimal primes.
fn monomial_primes(ring: &Arc<PolyRing>, basis: &[Polynomial]) -> Vec<Ideal> {
    let supports: Vec<Vec<usize>> = basis
        .iter()
        .map(|g| g.leading_monomial().unwrap().support().collect())
        .collect();
    let mut covers: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
    while let Some(cover) = stack.pop() {
        match supports.iter().find(|s| !s.iter().any(|v| cover.contains(v))) {
            None => {
                let mut c = cover;
                c.sort_unstable();
                c.dedup();
                if !covers.contains(&c) {
                    covers.push(c);
                }
            }
            Some(s) => {
                for &v in s {
                    let mut next = cover.clone();
                    next.push(v);
                    stack.push(next);
                }
            }
        }
    }
    let minimal: Vec<&Vec<usize>> = covers
        .iter()
        .filter(|c| {
            !covers
                .iter()
                .any(|d| d.len() < c.len() && d.iter().all(|v| c.contains(v)))
        })
        .collect();
    minimal
        .into_iter()
        .map(|c| Ideal::new(ring, c.iter().map(|&v| ring.var(v)).collect()))
        .collect()
}

fn to_dense(g: &Polynomial, v: usize) -> Dense {
    let deg = g.degree_in(v) as usize;
    let mut d = vec![0u32; deg + 1];
    for (m, c) in g.terms() {
        d[m.exponents()[v] as usize] = *c;
    }
    d
}

fn from_dense(ring: &Arc<PolyRing>, d: &Dense, v: usize) -> Polynomial {
    let terms = d
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(e, &c)| {
            let mut m = Monomial::one(ring.nvars());
            m.exponents_mut()[v] = e as u32;
            (m, c)
        })
        .collect();
    Polynomial::from_terms(ring, terms)
}

fn eliminant(i: &Ideal, v: usize) -> Result<Polynomial> {
    let n = i.ring().nvars();
    let keep: Vec<bool> = (0..n).map(|u| u == v).collect();
    let e = eliminate(i, &keep)?;
    e.reduced()
        .first()
        .cloned()
        .ok_or_else(|| Error::OutOfScope("ideal is not zero-dimensional".into()))
}

fn zero_dimensional(i: &Ideal, ring: &Arc<PolyRing>, effective: &[usize]) -> Result<Vec<Ideal>> {
    let field = *ring.field();
    if effective.len() == 1 {
        let v = effective[0];
        let g = eliminant(i, v)?;
        return Ok(univariate::factor(&field, &to_dense(&g, v))
            .into_iter()
            .map(|(q, _)| Ideal::new(ring, vec![from_dense(ring, &q, v)]))
            .collect());
    }
    let mut root_sets: Vec<Vec<u32>> = Vec::new();
    for &v in effective {
        let g = eliminant(i, v)?;
        let factors = univariate::factor(&field, &to_dense(&g, v));
        if factors.iter().any(|(q, _)| q.len() > 2) {
            return Err(Error::OutOfScope(
                "zero-dimensional ideal with non-rational points".into(),
            ));
        }
        root_sets.push(factors.iter().map(|(q, _)| field.neg(q[0])).collect());
    }
    let total: usize = root_sets.iter().map(|r| r.len()).product();
    if total > MAX_POINTS {
        return Err(Error::OutOfScope("too many candidate points".into()));
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; effective.len()];
    let n = ring.nvars();
    'points: loop {
        let mut point = vec![0u32; n];
        for (k, &v) in effective.iter().enumerate() {
            point[v] = root_sets[k][idx[k]];
        }
        if i.reduced().iter().all(|g| g.evaluate(&point) == 0) {
            let gens = effective
                .iter()
                .map(|&v| ring.var(v).sub(&ring.constant(point[v])))
                .collect();
            out.push(Ideal::new(ring, gens));
        }
        for k in 0..idx.len() {
            idx[k] += 1;
            if idx[k] < root_sets[k].len() {
                continue 'points;
            }
            idx[k] = 0;
        }
        break;
    }
    Ok(out)
}

/// Exact when the minimal primes are in scope: `I` is radical iff it equals
/// the intersection of its minimal primes.
pub fn is_radical(i: &Ideal, hints: &PrimeHints) -> Result<bool> {
    if i.is_unit() {
        return Ok(true);
    }
    let primes = minimal_primes(i, hints)?;
    let mut meet = Ideal::unit(i.ring());
    for p in &primes {
        meet = super::ops::ideal_intersect(&meet, p)?;
    }
    Ok(meet.equals(i))
}
