//! Fedder's criterion in coordinates: `S/I₀` is F-pure at `m` iff
//! `(I₀^[p] : I₀) ⊄ m^[p]`, and any `u` in the colon outside `m^[p]` defines
//! a splitting `φ_u`. An ideal `J ⊇ I₀` is `φ_u`-compatible iff
//! `u·J ⊆ J^[p]`, i.e. iff the Frobenius root of `u·J` lies in `J`.

use serde::Serialize;

use super::bracket::{frobenius_power_ideal, frobenius_root, in_bracket_maximal};
use super::ring::QuotientRing;
use crate::algebra::{Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{ideal_colon, Ideal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    FedderAuto,
    User,
}

/// An element `u` of `S` with `u ∈ (I₀^[p] : I₀)` and `u ∉ m^[p]`.
#[derive(Clone, Debug)]
pub struct SplittingWitness {
    ring: QuotientRing,
    u: Polynomial,
    provenance: Provenance,
}

impl SplittingWitness {
    /// A user-supplied witness, checked against both Fedder conditions.
    pub fn new(ring: &QuotientRing, u: Polynomial) -> Result<Self> {
        if **u.ring() != **ring.ring() {
            return Err(Error::RingMismatch("witness outside the ring".into()));
        }
        if in_bracket_maximal(&u, 1) {
            return Err(Error::InvalidWitness(format!("{u} lies in m^[p]")));
        }
        let i0 = ring.defining_ideal();
        let root = frobenius_root(&i0.scale(&u), 1);
        if !i0.contains_ideal(&root) {
            return Err(Error::InvalidWitness(format!("{u} is not in (I^[p] : I)")));
        }
        Ok(SplittingWitness {
            ring: ring.clone(),
            u,
            provenance: Provenance::User,
        })
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn u(&self) -> &Polynomial {
        &self.u
    }

    pub fn level(&self) -> u32 {
        1
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }
}

#[derive(Clone, Debug)]
pub struct FedderResult {
    pub fpure: bool,
    pub witness: Option<SplittingWitness>,
    /// Reduced generators of `(I₀^[p] : I₀)`.
    pub colon: Vec<Polynomial>,
}

/// `(I₀^[p] : I₀)`. Principal `I₀ = (f)` gives `(f^(p-1))` directly.
pub fn fedder_colon(r: &QuotientRing) -> Result<Ideal> {
    let s = r.ring();
    let i0 = r.defining_ideal();
    let p = r.characteristic() as u64;
    if i0.is_zero() {
        return Ok(Ideal::unit(s));
    }
    let basis = i0.reduced();
    if basis.len() == 1 {
        return Ok(Ideal::new(s, vec![basis[0].pow(p - 1)]));
    }
    let bracket = frobenius_power_ideal(&Ideal::new(s, basis.to_vec()), 1)?;
    ideal_colon(&bracket, i0)
}

pub fn fedder_fpure(r: &QuotientRing) -> Result<FedderResult> {
    let s = r.ring();
    let p = r.characteristic();
    if r.defining_ideal().is_zero() {
        let exps = vec![p - 1; s.nvars()];
        let u = s.monomial(Monomial::from_exponents(&exps), 1);
        return Ok(FedderResult {
            fpure: true,
            witness: Some(SplittingWitness {
                ring: r.clone(),
                u: u.clone(),
                provenance: Provenance::FedderAuto,
            }),
            colon: vec![s.one()],
        });
    }
    let colon = fedder_colon(r)?;
    let reduced = colon.reduced().to_vec();
    let witness = reduced
        .iter()
        .find(|g| !in_bracket_maximal(g, 1))
        .map(|u| SplittingWitness {
            ring: r.clone(),
            u: u.clone(),
            provenance: Provenance::FedderAuto,
        });
    Ok(FedderResult {
        fpure: witness.is_some(),
        witness,
        colon: reduced,
    })
}

fn check_contains_base(w: &SplittingWitness, j: &Ideal) -> Result<()> {
    if !j.contains_ideal(w.ring.defining_ideal()) {
        return Err(Error::NotContainingBase);
    }
    Ok(())
}

/// `u·J ⊆ J^[p]`.
pub fn compatible_test(w: &SplittingWitness, j: &Ideal) -> Result<bool> {
    check_contains_base(w, j)?;
    if j.is_unit() {
        return Ok(true);
    }
    let gens = Ideal::new(j.ring(), j.reduced().to_vec());
    Ok(j.contains_ideal(&frobenius_root(&gens.scale(&w.u), 1)))
}

/// The same test by literal membership in `J^[p]`; slower, kept as a
/// cross-check.
pub fn compatible_test_by_membership(w: &SplittingWitness, j: &Ideal) -> Result<bool> {
    check_contains_base(w, j)?;
    let bracket = frobenius_power_ideal(j, 1)?;
    Ok(j.generators().iter().all(|g| bracket.contains(&w.u.mul(g))))
}

/// The smallest `φ_u`-compatible ideal containing `J + I₀`.
pub fn star_closure(w: &SplittingWitness, j: &Ideal) -> Ideal {
    let mut k = w.ring.lift(j);
    loop {
        if k.is_unit() {
            return k;
        }
        let current = Ideal::new(k.ring(), k.reduced().to_vec());
        let root = frobenius_root(&current.scale(&w.u), 1);
        if current.contains_ideal(&root) {
            return current;
        }
        k = current.sum(&root);
    }
}
