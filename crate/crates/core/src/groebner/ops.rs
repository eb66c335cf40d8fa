//! Ideal arithmetic built on elimination.

use std::sync::Arc;

use super::{buchberger, Ideal};
use crate::algebra::{MonomialOrder, PolyRing, Polynomial};
use crate::error::{Error, Result};

/// `leading` fresh variables followed by the variables of `base`.
pub(crate) fn prefixed_ring(base: &PolyRing, leading: usize, order: MonomialOrder) -> Arc<PolyRing> {
    let mut names: Vec<String> = (0..leading).map(|i| format!("%{i}")).collect();
    names.extend(base.names().iter().cloned());
    PolyRing::from_parts(*base.field(), names, order)
}

fn shift_map(n: usize, by: usize) -> Vec<usize> {
    (0..n).map(|i| i + by).collect()
}

fn unshift_map(n: usize, by: usize) -> Vec<usize> {
    (0..n).map(|i| i.saturating_sub(by)).collect()
}

fn check_same_ring(i: &Ideal, j: &Ideal) -> Result<()> {
    if Arc::ptr_eq(i.ring(), j.ring()) || **i.ring() == **j.ring() {
        Ok(())
    } else {
        Err(Error::RingMismatch("ideals in different rings".into()))
    }
}

/// `I ∩ J` from `t·I + (1 - t)·J` with `t` eliminated.
pub fn ideal_intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    check_same_ring(i, j)?;
    let ring = i.ring();
    if i.is_zero() || j.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    if j.is_unit() {
        return Ok(i.clone());
    }
    if i.is_unit() {
        return Ok(j.clone());
    }
    let n = ring.nvars();
    let aux = prefixed_ring(ring, 1, MonomialOrder::elimination(1));
    let up = shift_map(n, 1);
    let t = aux.var(0);
    let one_minus_t = aux.one().sub(&t);
    let mut gens = Vec::new();
    for g in i.generators() {
        gens.push(g.map_into(&aux, &up).mul(&t));
    }
    for g in j.generators() {
        gens.push(g.map_into(&aux, &up).mul(&one_minus_t));
    }
    let basis = buchberger::groebner(&aux, &gens, None);
    let down = unshift_map(n + 1, 1);
    let kept = basis
        .iter()
        .filter(|g| g.degree_in(0) == 0)
        .map(|g| g.map_into(ring, &down))
        .collect();
    Ok(Ideal::new(ring, kept))
}

/// Exact division `h / g`; `None` if `g` does not divide `h`.
pub fn exact_quotient(h: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
    let ring = h.ring();
    let field = *ring.field();
    let glm = g.leading_monomial()?;
    let ginv = field.inv(g.leading_coeff());
    let mut rem = h.clone();
    let mut q = Vec::new();
    while !rem.is_zero() {
        let (lm, lc) = {
            let t = &rem.terms()[0];
            (t.0.clone(), t.1)
        };
        if !glm.divides(&lm) {
            return None;
        }
        let m = lm.div(glm);
        let c = field.mul(lc, ginv);
        rem = rem.sub_scaled(c, &m, g);
        q.push((m, c));
    }
    Some(Polynomial::from_terms(ring, q))
}

/// `(I : g)` via `(I ∩ (g)) / g`.
pub fn ideal_quotient_by(i: &Ideal, g: &Polynomial) -> Result<Ideal> {
    let ring = i.ring();
    if g.is_zero() {
        return Ok(Ideal::unit(ring));
    }
    if i.contains(g) {
        return Ok(Ideal::unit(ring));
    }
    let meet = ideal_intersect(i, &Ideal::new(ring, vec![g.clone()]))?;
    let gens = meet
        .reduced()
        .iter()
        .map(|h| exact_quotient(h, g).expect("intersection with (g) is divisible by g"))
        .collect();
    Ok(Ideal::new(ring, gens))
}

/// `(I : J) = { a : aJ ⊆ I }`.
pub fn ideal_colon(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    check_same_ring(i, j)?;
    let ring = i.ring();
    let mut acc = Ideal::unit(ring);
    for g in j.generators() {
        let q = ideal_quotient_by(i, g)?;
        acc = ideal_intersect(&acc, &q)?;
    }
    Ok(acc)
}

/// `(I : J^∞)` by iterated colon until the chain stabilizes.
pub fn saturate(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    let mut cur = i.clone();
    loop {
        let next = ideal_colon(&cur, j)?;
        if next.equals(&cur) {
            return Ok(cur);
        }
        cur = next;
    }
}

/// `I ∩ F_p[keep]`, returned as an ideal of the same ring whose generators
/// only involve the kept variables.
pub fn eliminate(i: &Ideal, keep: &[bool]) -> Result<Ideal> {
    let ring = i.ring();
    let n = ring.nvars();
    if keep.len() != n {
        return Err(Error::VariableCount {
            expected: n,
            got: keep.len(),
        });
    }
    let drop: Vec<usize> = (0..n).filter(|&v| !keep[v]).collect();
    if drop.is_empty() {
        return Ok(i.clone());
    }
    let kept: Vec<usize> = (0..n).filter(|&v| keep[v]).collect();
    let mut perm = vec![0; n];
    let mut names = Vec::with_capacity(n);
    for (pos, &v) in drop.iter().chain(kept.iter()).enumerate() {
        perm[v] = pos;
        names.push(ring.names()[v].clone());
    }
    let aux = PolyRing::from_parts(*ring.field(), names, MonomialOrder::elimination(drop.len()));
    let gens: Vec<Polynomial> = i.generators().iter().map(|g| g.map_into(&aux, &perm)).collect();
    let basis = buchberger::groebner(&aux, &gens, None);
    let mut inverse = vec![0; n];
    for (v, &pos) in perm.iter().enumerate() {
        inverse[pos] = v;
    }
    let keep_aux: Vec<bool> = (0..n).map(|pos| pos >= drop.len()).collect();
    let out = basis
        .iter()
        .filter(|g| g.uses_only(&keep_aux))
        .map(|g| g.map_into(ring, &inverse))
        .collect();
    Ok(Ideal::new(ring, out))
}

/// `σ^{-1}(I)` for the endomorphism `x_i ↦ images[i]`: adjoin mirror
/// variables `y`, form `I(x) + (y_i - σ(x_i))`, eliminate `x`, rename.
pub fn preimage_under_substitution(i: &Ideal, images: &[Polynomial]) -> Result<Ideal> {
    let ring = i.ring();
    let n = ring.nvars();
    if images.len() != n {
        return Err(Error::VariableCount {
            expected: n,
            got: images.len(),
        });
    }
    if i.is_unit() {
        return Ok(Ideal::unit(ring));
    }
    // source copy of x occupies the leading (eliminated) block
    let aux = prefixed_ring(ring, n, MonomialOrder::elimination(n));
    let to_source: Vec<usize> = (0..n).collect();
    let mut gens: Vec<Polynomial> = i.generators().iter().map(|g| g.map_into(&aux, &to_source)).collect();
    for (k, img) in images.iter().enumerate() {
        gens.push(aux.var(n + k).sub(&img.map_into(&aux, &to_source)));
    }
    let basis = buchberger::groebner(&aux, &gens, None);
    let keep: Vec<bool> = (0..2 * n).map(|v| v >= n).collect();
    let back = unshift_map(2 * n, n);
    let out = basis
        .iter()
        .filter(|g| g.uses_only(&keep))
        .map(|g| g.map_into(ring, &back))
        .collect();
    Ok(Ideal::new(ring, out))
}

/// Rabinowitsch: `f ∈ √I` iff `1 ∈ I + (1 - z f)`.
pub fn radical_member(f: &Polynomial, i: &Ideal) -> bool {
    if f.is_zero() || i.is_unit() {
        return true;
    }
    let ring = i.ring();
    let n = ring.nvars();
    let aux = prefixed_ring(ring, 1, MonomialOrder::Grevlex);
    let up = shift_map(n, 1);
    let mut gens: Vec<Polynomial> = i.generators().iter().map(|g| g.map_into(&aux, &up)).collect();
    gens.push(aux.one().sub(&aux.var(0).mul(&f.map_into(&aux, &up))));
    let basis = buchberger::groebner(&aux, &gens, None);
    basis.len() == 1 && basis[0].is_one()
}
