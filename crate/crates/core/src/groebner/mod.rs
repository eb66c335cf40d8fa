//! Gröbner bases over F_p and everything decided through them: membership,
//! equality, intersection, colon, elimination, preimages, syzygies and a
//! deliberately scoped minimal-prime computation.

pub mod buchberger;
pub mod module;
pub mod ops;
pub mod primes;
pub mod univariate;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::{MonomialOrder, PolyRing, Polynomial};
use crate::error::{Error, Result};

pub use module::{kernel_mod_ideal, syzygy_basis, ModuleMatrix};
pub use ops::{
    eliminate, ideal_colon, ideal_intersect, ideal_quotient_by, preimage_under_substitution, radical_member, saturate,
};
pub use primes::{minimal_primes, PrimeHints};

/// A reduced Gröbner basis: monic, inter-reduced, sorted by descending
/// leading monomial. Two ideals are equal iff their reduced bases under the
/// same order coincide.
#[derive(Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !(Arc::ptr_eq(f.ring(), &self.ring) || **f.ring() == *self.ring) {
            return Err(Error::RingMismatch(
                "normal form under a different ring or order".into(),
            ));
        }
        Ok(self.reduce(f))
    }

    /// Normal form without the ring check.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        buchberger::reduce(f, &self.elements)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn is_monomial(&self) -> bool {
        self.elements.iter().all(|g| g.is_monomial())
    }
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.elements.iter().map(|g| g.to_string()))
            .finish()
    }
}

pub fn groebner_basis(ideal: &Ideal, order: &MonomialOrder) -> GroebnerBasis {
    if order == ideal.ring.order() {
        return ideal.basis().clone();
    }
    let ring = ideal.ring.with_order(order.clone());
    let gens: Vec<Polynomial> = ideal.gens.iter().map(|g| g.reorder(&ring)).collect();
    GroebnerBasis {
        elements: buchberger::groebner(&ring, &gens, None),
        ring,
    }
}

pub fn normal_form(f: &Polynomial, basis: &GroebnerBasis) -> Result<Polynomial> {
    basis.normal_form(f)
}

/// An ideal of a polynomial ring, given by generators. The reduced basis
/// under the ring's order is computed on first use and cached.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    basis: OnceLock<GroebnerBasis>,
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring: ring.clone(),
            gens,
            basis: OnceLock::new(),
        }
    }

    pub fn try_new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if !(Arc::ptr_eq(g.ring(), ring) || **g.ring() == **ring) {
                return Err(Error::RingMismatch("generator outside the ideal's ring".into()));
            }
        }
        Ok(Self::new(ring, gens))
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, vec![ring.one()])
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// Generators as given (zeros dropped; the zero ideal has none).
    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn basis(&self) -> &GroebnerBasis {
        self.basis.get_or_init(|| GroebnerBasis {
            ring: self.ring.clone(),
            elements: buchberger::groebner(&self.ring, &self.gens, None),
        })
    }

    /// Reduced-basis elements; the canonical generating set.
    pub fn reduced(&self) -> &[Polynomial] {
        self.basis().elements()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.basis().contains(f)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn equals(&self, other: &Ideal) -> bool {
        self.basis().elements == other.basis().elements
    }

    pub fn is_unit(&self) -> bool {
        self.basis().is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.basis().is_monomial()
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn with(&self, extra: impl IntoIterator<Item = Polynomial>) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn scale(&self, f: &Polynomial) -> Ideal {
        Ideal::new(&self.ring, self.gens.iter().map(|g| g.mul(f)).collect())
    }

    /// Canonical text form of the reduced basis, e.g. `["x", "y"]`;
    /// the zero ideal prints as `["0"]`.
    pub fn canonical_strings(&self) -> Vec<String> {
        let r = self.reduced();
        if r.is_empty() {
            vec!["0".to_string()]
        } else {
            r.iter().map(|g| g.to_string()).collect()
        }
    }

    /// Generators in canonical order (descending), duplicates removed.
    pub fn sorted_generators(&self) -> Vec<Polynomial> {
        let mut g = self.gens.clone();
        g.sort_by(|a, b| b.canonical_cmp(a));
        g.dedup();
        g
    }

    /// Krull dimension of S/I, read off the leading-monomial ideal.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_unit() {
            return None;
        }
        let n = self.ring.nvars();
        let supports: Vec<u64> = self
            .reduced()
            .iter()
            .map(|g| {
                g.leading_monomial()
                    .unwrap()
                    .support()
                    .fold(0u64, |acc, i| acc | (1 << i))
            })
            .collect();
        // largest variable subset containing no leading-monomial support
        let mut best = 0;
        let mut stack = vec![(0usize, 0u64, 0usize)];
        while let Some((i, set, size)) = stack.pop() {
            if size + (n - i) <= best {
                continue;
            }
            if i == n {
                best = best.max(size);
                continue;
            }
            let with = set | (1 << i);
            if !supports.iter().any(|&s| s & !with == 0) {
                stack.push((i + 1, with, size + 1));
            }
            stack.push((i + 1, set, size));
        }
        Some(best)
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.canonical_strings().join(", "))
    }
}
