//! Exact arithmetic: prime fields, monomials and orders, sparse polynomials.

pub mod field;
pub mod monomial;
pub mod parse;
pub mod poly;

pub use field::PrimeField;
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_polynomial, parse_polynomial_at};
pub use poly::{poly_arith, ArithOp, PolyRing, Polynomial};

use crate::error::Result;

/// `f^(p^e)` for e >= 1.
pub fn frobenius_power_poly(f: &Polynomial, e: u32) -> Result<Polynomial> {
    f.frobenius_power(e)
}

pub fn substitute(f: &Polynomial, assignment: &[Polynomial]) -> Result<Polynomial> {
    f.substitute(assignment)
}

/// Determinant by cofactor expansion along the first row; meant for the
/// small Jacobian minors used here.
pub fn determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let ring = m[0][0].ring();
    let mut acc = ring.zero();
    for (c, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != c)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = entry.mul(&determinant(&minor));
        acc = if c % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}
