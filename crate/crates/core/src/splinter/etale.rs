//! Generic étaleness by the Jacobian criterion: some maximal minor of the
//! Jacobian of the relations with respect to the adjoined variables must be
//! a nonzerodivisor on `B`.

use crate::algebra::{determinant, Polynomial};
use crate::error::{Error, Result};
use crate::groebner::{ideal_quotient_by, radical_member};

use super::extension::FiniteExtension;

#[derive(Clone, Debug)]
pub struct EtaleCertificate {
    pub verdict: bool,
    /// The minor used, with the relations (by index) and adjoined variables it
    /// was taken from. `None` when no minor qualifies.
    pub determinant: Option<Polynomial>,
    pub relation_rows: Vec<usize>,
    /// `∂r/∂t` for every relation `r` and adjoined variable `t`.
    pub jacobian: Vec<Vec<Polynomial>>,
}

fn row_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in row_subsets(n - first - 1, k - 1) {
            let mut v = vec![first];
            v.extend(rest.into_iter().map(|r| r + first + 1));
            out.push(v);
        }
    }
    out
}

pub fn verify_generically_etale(b: &FiniteExtension) -> Result<EtaleCertificate> {
    if !b.base().is_domain() {
        return Err(Error::DomainRequired);
    }
    let n = b.nbase();
    let k = b.nadjoined();
    let rels = b.relations();
    let jacobian: Vec<Vec<Polynomial>> = rels
        .iter()
        .map(|r| (0..k).map(|i| r.derivative(n + i)).collect())
        .collect();
    let j = b.defining_ideal();
    if k == 0 {
        return Ok(EtaleCertificate {
            verdict: true,
            determinant: Some(b.ambient().one()),
            relation_rows: Vec::new(),
            jacobian,
        });
    }
    for rows in row_subsets(rels.len(), k) {
        let sub: Vec<Vec<Polynomial>> = rows.iter().map(|&r| jacobian[r].clone()).collect();
        let d = determinant(&sub);
        if d.is_zero() || radical_member(&d, j) {
            continue;
        }
        if ideal_quotient_by(j, &d)?.equals(j) {
            return Ok(EtaleCertificate {
                verdict: true,
                determinant: Some(d),
                relation_rows: rows,
                jacobian,
            });
        }
    }
    Ok(EtaleCertificate {
        verdict: false,
        determinant: None,
        relation_rows: Vec::new(),
        jacobian,
    })
}
