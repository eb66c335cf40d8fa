//! Exponent vectors and monomial orders.

use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest exponent accepted from user input or bracket powers. Products
/// of two admissible monomials still fit comfortably in `u32`.
pub const MAX_EXPONENT: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[index] = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// Panics on `u32` overflow; inputs are bounded by `MAX_EXPONENT` so this
    /// only fires on runaway computations, never silently wraps.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            let s = *a as u64 + *b as u64;
            if s > MAX_EXPONENT {
                return Err(Error::ExponentOverflow);
            }
            out.push(s as u32);
        }
        Ok(Monomial(out))
    }

    /// `self / other`; caller guarantees divisibility.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn scale_exponents(&self, factor: u64) -> Result<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for &e in self.0.iter() {
            let s = e as u64 * factor;
            if s > MAX_EXPONENT {
                return Err(Error::ExponentOverflow);
            }
            out.push(s as u32);
        }
        Ok(Monomial(out))
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }
}

/// A multiplicative well-order on monomials.
///
/// `Block(splits)` cuts the variables at the given indices into consecutive
/// blocks, compares block by block, and uses grevlex inside each block. The
/// two-block case is the usual elimination order for the leading block.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    Block(Vec<usize>),
}

impl MonomialOrder {
    pub fn elimination(split: usize) -> Self {
        MonomialOrder::Block(vec![split])
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (a, b) = (a.exponents(), b.exponents());
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Block(splits) => {
                let mut start = 0;
                for &end in splits.iter().chain(std::iter::once(&a.len())) {
                    let end = end.min(a.len());
                    if end > start {
                        let o = grevlex(&a[start..end], &b[start..end]);
                        if o != Ordering::Equal {
                            return o;
                        }
                    }
                    start = end;
                }
                Ordering::Equal
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Block(_) => "block",
        }
    }
}

#[inline]
fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}
