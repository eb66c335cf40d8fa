//! Buchberger's algorithm with the Gebauer–Möller installation of the
//! product and chain criteria, and sugar-degree pair selection.
//!
//! A tag mask switches to module mode: tagged variables stand for the
//! basis vectors of a free module, every input is linear in them, and only
//! pairs whose leading terms carry the same tag are formed. Leading tags
//! sort first, which yields position-over-term module bases.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::algebra::{Monomial, PolyRing, Polynomial};

struct Element {
    poly: Polynomial,
    lm: Monomial,
    sugar: u64,
    tag: Option<usize>,
    active: bool,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

fn tag_of(m: &Monomial, tags: Option<&[bool]>) -> Option<usize> {
    let tags = tags?;
    m.exponents().iter().zip(tags).position(|(&e, &t)| t && e > 0)
}

/// Fully reduce `f` by `basis` (every term, not just the leading one).
pub fn reduce(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let lms: Vec<&Monomial> = basis.iter().filter_map(|g| g.leading_monomial()).collect();
    let gs: Vec<&Polynomial> = basis.iter().filter(|g| !g.is_zero()).collect();
    reduce_with(&ring, f.clone(), &gs, &lms)
}

fn reduce_with(ring: &Arc<PolyRing>, mut p: Polynomial, gs: &[&Polynomial], lms: &[&Monomial]) -> Polynomial {
    let field = *ring.field();
    let mut rest: Vec<(Monomial, u32)> = Vec::new();
    while !p.is_zero() {
        let (lt, lc) = {
            let t = &p.terms()[0];
            (t.0.clone(), t.1)
        };
        match lms.iter().position(|m| m.divides(&lt)) {
            Some(k) => {
                let g = gs[k];
                let c = field.mul(lc, field.inv(g.leading_coeff()));
                p = p.sub_scaled(c, &lt.div(lms[k]), g);
            }
            None => {
                rest.push((lt, lc));
                p = Polynomial::from_sorted_terms(ring, p.terms()[1..].to_vec());
            }
        }
    }
    Polynomial::from_sorted_terms(ring, rest)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Polynomial {
    let field = *f.ring().field();
    let a = f.mul_term(&lcm.div(f.leading_monomial().unwrap()), field.inv(f.leading_coeff()));
    let b = g.mul_term(&lcm.div(g.leading_monomial().unwrap()), field.inv(g.leading_coeff()));
    a.sub(&b)
}

struct Engine<'a> {
    ring: Arc<PolyRing>,
    tags: Option<&'a [bool]>,
    elems: Vec<Element>,
    pairs: Vec<Pair>,
}

impl Engine<'_> {
    fn sugar_of_pair(&self, i: usize, j: usize, lcm: &Monomial) -> u64 {
        let (a, b) = (&self.elems[i], &self.elems[j]);
        let sa = a.sugar + lcm.degree() - a.lm.degree();
        let sb = b.sugar + lcm.degree() - b.lm.degree();
        sa.max(sb)
    }

    fn insert(&mut self, poly: Polynomial, sugar: u64) {
        let lm = poly.leading_monomial().unwrap().clone();
        let tag = tag_of(&lm, self.tags);
        let h = self.elems.len();
        self.elems.push(Element {
            poly,
            lm: lm.clone(),
            sugar,
            tag,
            active: true,
        });

        // candidate pairs (h, g)
        let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
        for (g, e) in self.elems[..h].iter().enumerate() {
            if e.active && e.tag == tag {
                cands.push((g, lm.lcm(&e.lm), lm.is_coprime(&e.lm)));
            }
        }
        // chain criterion among the new pairs
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        let mut pending = cands;
        while let Some((g1, l1, coprime)) = pending.pop() {
            let dominated = !coprime && pending.iter().chain(kept.iter()).any(|(_, l2, _)| l2.divides(&l1));
            if !dominated {
                kept.push((g1, l1, coprime));
            }
        }
        // prune old pairs whose lcm is strictly covered via h
        let elems = &self.elems;
        self.pairs.retain(|pr| {
            if tag != elems[pr.i].tag || !lm.divides(&pr.lcm) {
                return true;
            }
            let l1 = elems[pr.i].lm.lcm(&lm);
            let l2 = elems[pr.j].lm.lcm(&lm);
            l1 == pr.lcm || l2 == pr.lcm
        });
        // product criterion drops coprime survivors
        for (g, l, coprime) in kept {
            if !coprime {
                let sugar = self.sugar_of_pair(g, h, &l);
                self.pairs.push(Pair {
                    i: g,
                    j: h,
                    lcm: l,
                    sugar,
                });
            }
        }
        for k in 0..h {
            if self.elems[k].active && lm.divides(&self.elems[k].lm) {
                self.elems[k].active = false;
            }
        }
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ring = &self.ring;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let better = match a.sugar.cmp(&b.sugar) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => ring.order().cmp(&a.lcm, &b.lcm) == Ordering::Less,
            };
            if better {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn active_basis(&self) -> (Vec<&Polynomial>, Vec<&Monomial>) {
        self.elems.iter().filter(|e| e.active).map(|e| (&e.poly, &e.lm)).unzip()
    }
}

/// Reduced Gröbner basis of the ideal (or tagged module) generated by
/// `gens` under the order of their common ring. Elements are monic and
/// sorted by descending leading monomial; the unit ideal gives `[1]`, the
/// zero ideal gives `[]`.
pub fn groebner(ring: &Arc<PolyRing>, gens: &[Polynomial], tags: Option<&[bool]>) -> Vec<Polynomial> {
    let mut engine = Engine {
        ring: ring.clone(),
        tags,
        elems: Vec::new(),
        pairs: Vec::new(),
    };
    let mut inputs: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    if inputs.iter().any(|g| g.is_constant()) {
        return vec![ring.one()];
    }
    inputs.sort_by(|a, b| {
        ring.order()
            .cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    inputs.dedup();
    for g in inputs {
        let (gs, lms) = engine.active_basis();
        let r = reduce_with(ring, g.clone(), &gs, &lms);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return vec![ring.one()];
        }
        let sugar = g.total_degree();
        engine.insert(r.monic(), sugar);
    }
    while let Some(pair) = engine.pop_pair() {
        let s = s_polynomial(&engine.elems[pair.i].poly, &engine.elems[pair.j].poly, &pair.lcm);
        let (gs, lms) = engine.active_basis();
        let r = reduce_with(ring, s, &gs, &lms);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return vec![ring.one()];
        }
        engine.insert(r.monic(), pair.sugar);
    }
    interreduce(
        ring,
        engine.elems.into_iter().filter(|e| e.active).map(|e| e.poly).collect(),
    )
}

fn interreduce(ring: &Arc<PolyRing>, mut basis: Vec<Polynomial>) -> Vec<Polynomial> {
    // minimal basis first
    let mut minimal: Vec<Polynomial> = Vec::new();
    basis.sort_by(|a, b| {
        ring.order()
            .cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if !minimal.iter().any(|h| h.leading_monomial().unwrap().divides(lm)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, g)| g.clone())
            .collect();
        out.push(reduce(&minimal[k], &others).monic());
    }
    out.sort_by(|a, b| {
        ring.order()
            .cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
    });
    out
}
