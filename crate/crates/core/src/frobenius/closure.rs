//! Frobenius closure `I^F = { r : r^q ∈ I^[q] for some q = p^e }` in `R = S/I₀`.
//!
//! Level by level, `C_e = σ_e^{-1}(I^[q] + I₀)` with `σ_e : x ↦ x^q`; since
//! coefficients lie in F_p this is exactly `{ r : r^q ∈ I^[q] + I₀ }`. When
//! `I + I₀` has finite colength the preimage reduces to linear algebra: write
//! `r = Σ c_b b` over the standard monomials `b` of `S/(I + I₀)`; then
//! `r^q = Σ c_b b^q`, and `C_e` is `I + I₀` plus the kernel of
//! `c ↦ NF(Σ c_b b^q)`. Otherwise the preimage is computed by elimination.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::bracket::frobenius_power_ideal;
use super::ring::QuotientRing;
use crate::algebra::{Monomial, Polynomial, PrimeField};
use crate::error::Result;
use crate::groebner::{preimage_under_substitution, Ideal};

pub const DEFAULT_EMAX: u32 = 4;
const MAX_STANDARD_MONOMIALS: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureRoute {
    LinearAlgebra,
    Preimage,
}

#[derive(Clone, Debug)]
pub struct FrobeniusClosure {
    pub closure: Ideal,
    /// First `e` with `C_{e+1} = C_e`, if reached within `e_max`.
    pub stabilized_at: Option<u32>,
    /// `C_1, C_2, …` as computed.
    pub levels: Vec<Ideal>,
    pub route: ClosureRoute,
}

/// Monomials outside the leading-monomial ideal; `None` when there are more
/// than `cap` of them (in particular when the quotient is infinite).
pub fn standard_monomials(i: &Ideal, cap: usize) -> Option<Vec<Monomial>> {
    let n = i.ring().nvars();
    let leads: Vec<Monomial> = i
        .reduced()
        .iter()
        .map(|g| g.leading_monomial().unwrap().clone())
        .collect();
    if leads.iter().any(|m| m.is_one()) {
        return Some(Vec::new());
    }
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut queue = VecDeque::from([Monomial::one(n)]);
    let mut out = Vec::new();
    while let Some(m) = queue.pop_front() {
        if !seen.insert(m.clone()) || leads.iter().any(|l| l.divides(&m)) {
            continue;
        }
        out.push(m.clone());
        if out.len() > cap {
            return None;
        }
        for v in 0..n {
            queue.push_back(m.mul(&Monomial::variable(n, v)));
        }
    }
    Some(out)
}

/// Basis of `{ c ∈ F_p^k : Σ c_j cols[j] = 0 }`.
fn nullspace(field: &PrimeField, cols: &[Polynomial]) -> Vec<Vec<u32>> {
    let k = cols.len();
    let mut index: HashMap<Monomial, usize> = HashMap::new();
    for c in cols {
        for (m, _) in c.terms() {
            let next = index.len();
            index.entry(m.clone()).or_insert(next);
        }
    }
    let mut rows = vec![vec![0u32; k]; index.len()];
    for (j, c) in cols.iter().enumerate() {
        for (m, a) in c.terms() {
            rows[index[m]][j] = *a;
        }
    }
    // reduced row echelon form
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv(rows[r][col]);
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let f = rows[i][col];
                for j in 0..k {
                    rows[i][j] = field.sub(rows[i][j], field.mul(f, rows[r][j]));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..k).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; k];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(rows[row][free]);
        }
        basis.push(v);
    }
    basis
}

fn level_linear(r: &QuotientRing, base: &Ideal, bracket: &Ideal, standard: &[Monomial], e: u32) -> Result<Ideal> {
    let ring = r.ring();
    let images = standard
        .iter()
        .map(|b| {
            Ok(bracket
                .basis()
                .reduce(&ring.monomial(b.scale_exponents((ring.characteristic() as u64).pow(e))?, 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    let extra = nullspace(ring.field(), &images).into_iter().map(|v| {
        let terms = standard.iter().cloned().zip(v).filter(|(_, c)| *c != 0).collect();
        Polynomial::from_terms(ring, terms)
    });
    Ok(base.with(extra))
}

fn level_preimage(r: &QuotientRing, bracket: &Ideal, e: u32) -> Result<Ideal> {
    let ring = r.ring();
    let q = (ring.characteristic() as u64).pow(e);
    let images = (0..ring.nvars()).map(|v| ring.var(v).pow(q)).collect::<Vec<_>>();
    preimage_under_substitution(bracket, &images)
}

fn closure_impl(r: &QuotientRing, i: &Ideal, e_max: u32, force_preimage: bool) -> Result<FrobeniusClosure> {
    let base = r.lift(i);
    let standard = if force_preimage {
        None
    } else {
        standard_monomials(&base, MAX_STANDARD_MONOMIALS)
    };
    let route = if standard.is_some() {
        ClosureRoute::LinearAlgebra
    } else {
        ClosureRoute::Preimage
    };
    let mut levels: Vec<Ideal> = Vec::new();
    let mut stabilized_at = None;
    for e in 1..=e_max.max(1) + 1 {
        let bracket = r.lift(&frobenius_power_ideal(i, e)?);
        let c = match &standard {
            Some(std) => level_linear(r, &base, &bracket, std, e)?,
            None => level_preimage(r, &bracket, e)?.sum(&base),
        };
        let c = Ideal::new(r.ring(), c.reduced().to_vec());
        if let Some(prev) = levels.last() {
            if prev.equals(&c) {
                stabilized_at = Some(e - 1);
                break;
            }
        }
        if e > e_max.max(1) {
            break;
        }
        levels.push(c);
    }
    Ok(FrobeniusClosure {
        closure: levels.last().cloned().expect("at least one level"),
        stabilized_at,
        levels,
        route,
    })
}

/// Frobenius closure of `I` (generators in `S`) in `R`, following levels
/// `e = 1..=e_max` and stopping at the first repeat.
pub fn frobenius_closure(r: &QuotientRing, i: &Ideal, e_max: u32) -> Result<FrobeniusClosure> {
    closure_impl(r, i, e_max, false)
}

/// Same computation forced through the elimination route.
pub fn frobenius_closure_by_preimage(r: &QuotientRing, i: &Ideal, e_max: u32) -> Result<FrobeniusClosure> {
    closure_impl(r, i, e_max, true)
}
