//! The trace `τ_{B/A}` is the image of evaluation at 1 on `Hom_A(B, A)`.
//! With `B` presented as `A^N / (relations)` on module generators `g_1 = 1,
//! g_2, …`, a homomorphism is a vector `y ∈ A^N` killing every relation, and
//! its value at 1 is `y_1`.

use crate::algebra::Polynomial;
use crate::error::{Error, Result};
use crate::groebner::{ideal_colon, ideal_intersect, kernel_mod_ideal, radical_member, Ideal, ModuleMatrix};

use super::extension::FiniteExtension;

pub fn trace_ideal(b: &FiniteExtension) -> Result<Ideal> {
    let n = b.certificate()?.module_generators.len();
    let a = b.base();
    let rels = b.module_relations()?;
    let rows = rels.len();
    let m = ModuleMatrix::new(a.ring(), rows, n, rels.into_iter().flatten().collect())?;
    let hom = kernel_mod_ideal(&m, a.defining_ideal())?;
    let firsts: Vec<Polynomial> = (0..hom.cols()).map(|c| hom.get(0, c).clone()).collect();
    let tau = a.lift(&Ideal::new(a.ring(), firsts));
    Ok(Ideal::new(a.ring(), tau.reduced().to_vec()))
}

/// `A → B` splits iff `τ_{B/A} = (1)`.
pub fn split_check(b: &FiniteExtension) -> Result<bool> {
    Ok(trace_ideal(b)?.is_unit())
}

/// `m, m², …, m^depth` in the base ring.
pub fn default_family(b: &FiniteExtension, depth: u32) -> Vec<Ideal> {
    let a = b.base();
    let m = a.maximal_ideal();
    let mut out = Vec::new();
    let mut cur = m.clone();
    for _ in 0..depth {
        out.push(cur.clone());
        cur = cur.product(&m);
    }
    out
}

#[derive(Clone, Debug)]
pub struct IdealTraceSample {
    pub ideal: Ideal,
    /// Family members (by position) whose extension to `A` is not
    /// `m`-primary; the bound stays valid but is coarser.
    pub non_primary: Vec<usize>,
}

/// `⋂ (I : IB ∩ A)` over the family, an upper bound for the ideal trace.
pub fn ideal_trace_sample(b: &FiniteExtension, family: &[Ideal]) -> Result<IdealTraceSample> {
    if family.is_empty() {
        return Err(Error::InvalidArgument("ideal trace needs a nonempty family".into()));
    }
    let a = b.base();
    let mut acc = Ideal::unit(a.ring());
    let mut non_primary = Vec::new();
    for (k, i) in family.iter().enumerate() {
        let lifted = a.lift(i);
        if !lifted.is_unit() && !a.ring().vars().iter().all(|x| radical_member(x, &lifted)) {
            non_primary.push(k);
        }
        let contracted = b.contract_ideal(i)?;
        acc = ideal_intersect(&acc, &ideal_colon(&lifted, &contracted)?)?;
    }
    Ok(IdealTraceSample {
        ideal: Ideal::new(a.ring(), acc.reduced().to_vec()),
        non_primary,
    })
}
