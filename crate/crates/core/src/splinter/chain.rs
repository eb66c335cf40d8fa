//! Traces along a chain `A ⊆ B₁ ⊆ B₂ ⊆ …` and the resulting obstruction.
//!
//! Traces can only shrink along a chain, and a trace `τ ⊊ (1)` certifies that
//! `A_𝔭` is not a splinter for every `𝔭 ⊇ τ`, since traces localize. All
//! traces equal to `(1)` proves nothing: the extension that would detect a
//! failure may simply be missing from the chain.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::frobenius::{compatible_test, fedder_fpure, QuotientRing, SplittingWitness};
use crate::groebner::{eliminate, primes::is_radical, Ideal};

use super::extension::FiniteExtension;
use super::trace::{default_family, ideal_trace_sample, trace_ideal};

#[derive(Clone, Debug)]
pub struct ChainReport {
    pub traces: Vec<Ideal>,
    pub split: Vec<bool>,
    pub descending: bool,
    /// 1-based `i` with `τ_i = τ_{i+1}`, the first such.
    pub stabilized_at: Option<usize>,
    pub obstruction: Ideal,
}

fn same_base(a: &QuotientRing, b: &QuotientRing) -> bool {
    a.ring().names() == b.ring().names()
        && a.characteristic() == b.characteristic()
        && a.defining_ideal().equals(b.defining_ideal())
}

/// `B_i ⊆ B_{i+1}`: every variable of `B_i` is a variable of `B_{i+1}`, the
/// relations of `B_i` hold in `B_{i+1}`, and nothing else does.
pub fn check_inclusion(small: &FiniteExtension, big: &FiniteExtension) -> Result<()> {
    let uncertified = |why: String| {
        Err(Error::InclusionUncertified(format!(
            "{} ⊆ {}: {why}",
            small.name(),
            big.name()
        )))
    };
    if !same_base(small.base(), big.base()) {
        return uncertified("different base rings".into());
    }
    let mut map = Vec::with_capacity(small.ambient().nvars());
    for name in small.ambient().names() {
        match big.ambient().index_of(name) {
            Some(i) => map.push(i),
            None => return uncertified(format!("`{name}` is not a variable of {}", big.name())),
        }
    }
    let image: Vec<_> = small
        .relations()
        .iter()
        .map(|r| r.map_into(big.ambient(), &map))
        .collect();
    if let Some(r) = image.iter().find(|r| !big.defining_ideal().contains(r)) {
        return uncertified(format!("relation {r} does not hold"));
    }
    let keep: Vec<bool> = (0..big.ambient().nvars()).map(|v| map.contains(&v)).collect();
    let contracted = eliminate(big.defining_ideal(), &keep)?;
    let expected = Ideal::new(big.ambient(), image).sum(&Ideal::new(
        big.ambient(),
        small
            .base()
            .defining_ideal()
            .generators()
            .iter()
            .map(|g| g.map_into(big.ambient(), &map))
            .collect(),
    ));
    if !contracted.equals(&expected) {
        return uncertified("the map is not injective".into());
    }
    Ok(())
}

pub fn trace_chain(a: &QuotientRing, chain: &[FiniteExtension]) -> Result<ChainReport> {
    trace_chain_with(a, chain, Exec::default())
}

pub fn trace_chain_with(a: &QuotientRing, chain: &[FiniteExtension], exec: Exec) -> Result<ChainReport> {
    if let Some(b) = chain.iter().find(|b| !same_base(b.base(), a)) {
        return Err(Error::RingMismatch(format!(
            "extension `{}` is over a different ring",
            b.name()
        )));
    }
    for pair in chain.windows(2) {
        check_inclusion(&pair[0], &pair[1])?;
    }
    let traces = exec
        .map(chain, trace_ideal)
        .into_iter()
        .collect::<Result<Vec<Ideal>>>()?;
    let descending = traces.windows(2).all(|w| w[0].contains_ideal(&w[1]));
    let stabilized_at = traces.windows(2).position(|w| w[0].equals(&w[1])).map(|i| i + 1);
    // the empty chain: A splits over itself
    let obstruction = traces.last().cloned().unwrap_or_else(|| Ideal::unit(a.ring()));
    Ok(ChainReport {
        split: traces.iter().map(|t| t.is_unit()).collect(),
        traces,
        descending,
        stabilized_at,
        obstruction,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Splinters are F-pure; Fedder's criterion fails at `m`.
    NotFPure,
    /// `A_𝔭` is not a splinter for every prime `𝔭 ⊇` the obstruction.
    CertifiedNonSplinter,
    /// Every trace in the chain is the unit ideal; inconclusive.
    NoObstructionFound,
}

#[derive(Clone, Debug)]
pub struct ExtensionSummary {
    pub name: String,
    pub trace: Ideal,
    pub split: bool,
    pub radical: Option<bool>,
    /// One flag per witness, in the order of `SplinterReport::witnesses`.
    pub compatible: Vec<bool>,
    pub sample: Ideal,
    pub trace_in_sample: bool,
    pub polynomial_ring: bool,
}

#[derive(Clone, Debug)]
pub struct SplinterReport {
    pub verdict: Verdict,
    pub fpure: bool,
    /// The ideal whose zero locus is certified non-splinter (`m` when not
    /// F-pure); `None` when no obstruction was found.
    pub locus: Option<Ideal>,
    pub chain: ChainReport,
    pub extensions: Vec<ExtensionSummary>,
    pub witnesses: Vec<SplittingWitness>,
    pub obstruction_radical: Option<bool>,
    pub obstruction_compatible: Vec<bool>,
    pub obstruction_in_samples: bool,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
}

/// `B` is a polynomial ring when solving for variables that occur linearly
/// eliminates every relation.
fn is_polynomial_presentation(b: &FiniteExtension) -> bool {
    let ring = b.ambient();
    let mut ideal = b.defining_ideal().clone();
    loop {
        let basis = ideal.reduced().to_vec();
        if basis.is_empty() {
            return true;
        }
        if basis.iter().any(|g| g.is_constant()) {
            return false;
        }
        let Some((k, v)) = crate::groebner::primes::linear_variable(&basis) else {
            return false;
        };
        let g = &basis[k];
        let c = g.terms().iter().find(|(m, _)| m.exponents()[v] == 1).unwrap().1;
        let s = ring.var(v).sub(&g.scale(ring.field().inv(c)));
        let mut images = ring.vars();
        images[v] = s;
        let rest: Vec<_> = basis
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .filter_map(|(_, h)| h.substitute(&images).ok())
            .collect();
        ideal = Ideal::new(ring, rest);
    }
}

pub fn splinter_report(
    a: &QuotientRing,
    chain: &[FiniteExtension],
    witnesses: &[SplittingWitness],
) -> Result<SplinterReport> {
    splinter_report_with(a, chain, witnesses, Exec::default())
}

pub fn splinter_report_with(
    a: &QuotientRing,
    chain: &[FiniteExtension],
    witnesses: &[SplittingWitness],
    exec: Exec,
) -> Result<SplinterReport> {
    let mut warnings = Vec::new();
    let mut notes = Vec::new();
    let fedder = fedder_fpure(a)?;
    let mut all_witnesses: Vec<SplittingWitness> = witnesses.to_vec();
    if let Some(w) = &fedder.witness {
        if !all_witnesses.iter().any(|x| x.u() == w.u()) {
            all_witnesses.insert(0, w.clone());
        }
    }
    let report = trace_chain_with(a, chain, exec)?;
    if !report.descending {
        warnings.push("traces are not weakly descending along the chain".to_string());
    }
    let indices: Vec<usize> = (0..chain.len()).collect();
    let summaries = exec
        .map(&indices, |&idx| -> Result<ExtensionSummary> {
            let b = &chain[idx];
            let trace = report.traces[idx].clone();
            let sample = ideal_trace_sample(b, &default_family(b, 3))?.ideal;
            let compatible = all_witnesses
                .iter()
                .map(|w| compatible_test(w, &trace))
                .collect::<Result<Vec<_>>>()?;
            Ok(ExtensionSummary {
                name: b.name().to_string(),
                split: trace.is_unit(),
                radical: radical_flag(&trace, a)?,
                compatible,
                trace_in_sample: sample.contains_ideal(&trace),
                sample,
                polynomial_ring: is_polynomial_presentation(b),
                trace,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let obstruction = report.obstruction.clone();
    let obstruction_radical = radical_flag(&obstruction, a)?;
    let obstruction_compatible = all_witnesses
        .iter()
        .map(|w| compatible_test(w, &obstruction))
        .collect::<Result<Vec<_>>>()?;
    let obstruction_in_samples = summaries.iter().all(|s| s.sample.contains_ideal(&obstruction));
    if fedder.fpure && obstruction_radical == Some(false) {
        warnings.push("obstruction ideal is not radical although the ring is F-pure".to_string());
    }
    if obstruction_compatible.iter().any(|c| !c) {
        warnings.push("obstruction ideal is not compatible with every witness".to_string());
    }
    if !obstruction_in_samples {
        warnings.push("obstruction ideal escapes an ideal-trace sample".to_string());
    }

    let (verdict, locus) = if !fedder.fpure {
        notes.push("Fedder's criterion fails at m; splinters are F-pure, so A is not a splinter at m".to_string());
        (Verdict::NotFPure, Some(a.maximal_ideal()))
    } else if !obstruction.is_unit() {
        notes.push(format!(
            "A_p is not a splinter for every prime p containing {obstruction}: the trace localizes"
        ));
        (Verdict::CertifiedNonSplinter, Some(obstruction.clone()))
    } else {
        notes.push("every trace in the chain is (1); this is not a proof that A is a splinter".to_string());
        if let Some(s) = summaries.iter().find(|s| s.split && s.polynomial_ring) {
            notes.push(format!(
                "A is a direct summand of the polynomial ring {}; a direct summand of a regular ring is a splinter",
                s.name
            ));
        }
        (Verdict::NoObstructionFound, None)
    };
    Ok(SplinterReport {
        verdict,
        fpure: fedder.fpure,
        locus,
        chain: report,
        extensions: summaries,
        witnesses: all_witnesses,
        obstruction_radical,
        obstruction_compatible,
        obstruction_in_samples,
        notes,
        warnings,
    })
}

fn radical_flag(i: &Ideal, a: &QuotientRing) -> Result<Option<bool>> {
    match is_radical(i, a.hints()) {
        Ok(b) => Ok(Some(b)),
        Err(Error::OutOfScope(_)) => Ok(None),
        Err(e) => Err(e),
    }
}
