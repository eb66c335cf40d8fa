use std::sync::Arc;

use crate::algebra::{PolyRing, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{minimal_primes, Ideal, PrimeHints};

/// How a domain flag was justified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainCertificate {
    /// The scoped minimal-prime computation returned the defining ideal itself.
    Checked,
    /// Asserted by the user; recorded as a prime hint and never re-derived.
    Claimed,
}

/// `S/I₀` with `S = F_p[x₁..xₙ]`, localized in spirit at `m = (x₁..xₙ)`.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    ring: Arc<PolyRing>,
    defining: Ideal,
    domain: Option<DomainCertificate>,
    hints: PrimeHints,
}

impl QuotientRing {
    pub fn new(ring: &Arc<PolyRing>, defining: Ideal) -> Result<Self> {
        if !(Arc::ptr_eq(defining.ring(), ring) || **defining.ring() == **ring) {
            return Err(Error::RingMismatch("defining ideal lives in another ring".into()));
        }
        let m = Ideal::new(ring, ring.vars());
        if defining.is_unit() || !m.contains_ideal(&defining) {
            return Err(Error::BadDefiningIdeal);
        }
        Ok(QuotientRing {
            ring: ring.clone(),
            defining,
            domain: None,
            hints: PrimeHints::new(),
        })
    }

    pub fn polynomial_ring(ring: &Arc<PolyRing>) -> Self {
        Self::new(ring, Ideal::zero(ring)).expect("zero ideal is proper")
    }

    /// Flag `R` as a domain. The scoped check runs first; when it is out of
    /// scope the flag is accepted as a user claim.
    pub fn mark_domain(mut self) -> Result<Self> {
        match minimal_primes(&self.defining, &self.hints) {
            Ok(primes) => {
                if primes.len() == 1 && primes[0].equals(&self.defining) {
                    self.domain = Some(DomainCertificate::Checked);
                } else {
                    return Err(Error::InvalidDecomposition(format!("{} is not prime", self.defining)));
                }
            }
            Err(Error::OutOfScope(_)) => {
                self.hints.claim_prime(self.defining.clone());
                self.domain = Some(DomainCertificate::Claimed);
            }
            Err(e) => return Err(e),
        }
        Ok(self)
    }

    pub fn with_hints(mut self, hints: PrimeHints) -> Self {
        let claimed_domain = matches!(self.domain, Some(DomainCertificate::Claimed));
        self.hints = hints;
        if claimed_domain {
            self.hints.claim_prime(self.defining.clone());
        }
        self
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn defining_ideal(&self) -> &Ideal {
        &self.defining
    }

    pub fn characteristic(&self) -> u32 {
        self.ring.characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn is_domain(&self) -> bool {
        self.domain.is_some()
    }

    pub fn domain_certificate(&self) -> Option<DomainCertificate> {
        self.domain
    }

    pub fn hints(&self) -> &PrimeHints {
        &self.hints
    }

    pub fn maximal_ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.ring.vars())
    }

    pub fn is_regular_presentation(&self) -> bool {
        self.defining.is_zero()
    }

    /// `J + I₀`: the ideal of `S` representing `J` in `R`.
    pub fn lift(&self, j: &Ideal) -> Ideal {
        j.sum(&self.defining)
    }

    pub fn ideal(&self, gens: Vec<Polynomial>) -> Ideal {
        Ideal::new(&self.ring, gens)
    }
}
