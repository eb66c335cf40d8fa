use std::collections::BTreeMap;

use crate::algebra::{Monomial, Polynomial};
use crate::error::Result;
use crate::groebner::Ideal;

fn q_of(p: u32, e: u32) -> u64 {
    (p as u64).pow(e)
}

/// `I^[p^e]`, generated by the `p^e`-th powers of the generators.
pub fn frobenius_power_ideal(i: &Ideal, e: u32) -> Result<Ideal> {
    let gens = i
        .generators()
        .iter()
        .map(|g| g.frobenius_power(e))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(i.ring(), gens))
}

/// The `p^e`-th root cofactors of one polynomial: writing
/// `f = Σ_a x^a · h_a^(p^e)` with `a ∈ [0, p^e)^n`, returns the nonzero `h_a`.
pub fn root_components(f: &Polynomial, e: u32) -> Vec<Polynomial> {
    let ring = f.ring();
    let q = q_of(ring.characteristic(), e);
    let mut parts: BTreeMap<Vec<u32>, Vec<(Monomial, u32)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        let rem: Vec<u32> = m.exponents().iter().map(|&x| (x as u64 % q) as u32).collect();
        let quo: Vec<u32> = m.exponents().iter().map(|&x| (x as u64 / q) as u32).collect();
        // c^(p^e) = c in F_p, so the coefficient passes through unchanged
        parts.entry(rem).or_default().push((Monomial::from_exponents(&quo), *c));
    }
    parts
        .into_values()
        .map(|terms| Polynomial::from_terms(ring, terms))
        .collect()
}

/// The smallest ideal `K` with `J ⊆ K^[p^e]`.
pub fn frobenius_root(j: &Ideal, e: u32) -> Ideal {
    let gens = j.generators().iter().flat_map(|g| root_components(g, e)).collect();
    Ideal::new(j.ring(), gens)
}

/// `f ∈ m^[p^e]` for `m` the ideal of all variables: every term must have
/// some exponent at least `p^e`.
pub fn in_bracket_maximal(f: &Polynomial, e: u32) -> bool {
    let q = q_of(f.ring().characteristic(), e);
    f.terms()
        .iter()
        .all(|(m, _)| m.exponents().iter().any(|&x| x as u64 >= q))
}
