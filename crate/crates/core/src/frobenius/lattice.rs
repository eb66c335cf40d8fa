//! The finite lattice of `φ_u`-compatible ideals and its smallest nonzero
//! member in a domain.
//!
//! The smallest nonzero compatible ideal `τ` of a domain `S/P` is contained
//! in `star(P + (h))` for every `h ∉ P`, so any finite intersection of such
//! stars is an upper bound. We intersect over the seed generators and the
//! variables, then test fresh pseudo-random probes: a probe whose star does
//! not contain the candidate shrinks it, and a full round without shrinking
//! marks the result verified. Nothing here proves minimality outright.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fedder::{compatible_test, star_closure, SplittingWitness};
use super::ring::QuotientRing;
use crate::algebra::{determinant, Monomial, Polynomial};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::groebner::{ideal_intersect, minimal_primes, primes::is_radical, Ideal};

pub const PROBES_PER_ROUND: usize = 8;
pub const MAX_ROUNDS: usize = 3;
pub const MAX_MEMBERS: usize = 256;
const MAX_MINORS: usize = 128;

#[derive(Clone, Debug)]
pub struct SmallestCompatible {
    pub ideal: Ideal,
    pub verified: bool,
    /// Verification rounds run (the last one passed when `verified`).
    pub rounds: usize,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `P` plus the `c × c` minors of its Jacobian, `c` the height of `P`.
pub fn jacobian_seed(p: &Ideal) -> Ideal {
    let ring = p.ring();
    let n = ring.nvars();
    let c = n - p.dimension().unwrap_or(n);
    if c == 0 {
        return Ideal::unit(ring);
    }
    let gens = p.reduced();
    let jac: Vec<Vec<Polynomial>> = gens.iter().map(|g| (0..n).map(|v| g.derivative(v)).collect()).collect();
    let mut minors = Vec::new();
    'outer: for rows in combinations(gens.len(), c) {
        for cols in combinations(n, c) {
            let sub: Vec<Vec<Polynomial>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&k| jac[r][k].clone()).collect())
                .collect();
            let d = determinant(&sub);
            if !d.is_zero() && !p.contains(&d) {
                minors.push(d);
                if minors.len() >= MAX_MINORS {
                    break 'outer;
                }
            }
        }
    }
    p.with(minors)
}

fn random_probe(p: &Ideal, rng: &mut ChaCha8Rng) -> Polynomial {
    let ring = p.ring();
    let n = ring.nvars();
    let q = ring.characteristic();
    loop {
        let nterms = rng.gen_range(1..=3);
        let terms: Vec<(Monomial, u32)> = (0..nterms)
            .map(|_| {
                let mut e = vec![0u32; n];
                for _ in 0..rng.gen_range(1..=2) {
                    e[rng.gen_range(0..n)] += 1;
                }
                (Monomial::from_exponents(&e), rng.gen_range(1..q))
            })
            .collect();
        let h = Polynomial::from_terms(ring, terms);
        if !h.is_zero() && !p.contains(&h) {
            return h;
        }
    }
}

/// Smallest nonzero compatible ideal of the domain `S/P` for a prime
/// `P ⊇ I₀` compatible with `w`, as an ideal of `S` containing `P`.
pub(crate) fn smallest_over(
    w: &SplittingWitness,
    p: &Ideal,
    seed: Option<&Ideal>,
    exec: Exec,
) -> Result<SmallestCompatible> {
    let ring = p.ring();
    if is_maximal(p) {
        return Ok(SmallestCompatible {
            ideal: Ideal::unit(ring),
            verified: true,
            rounds: 0,
        });
    }
    let seed = match seed {
        Some(s) => s.sum(p),
        None => jacobian_seed(p),
    };
    if p.contains_ideal(&seed) {
        return Err(Error::ZeroSeed);
    }
    let mut probes: Vec<Polynomial> = seed.generators().iter().filter(|g| !p.contains(g)).cloned().collect();
    probes.extend(ring.vars().into_iter().filter(|x| !p.contains(x)));
    let stars = exec.map(&probes, |h| star_closure(w, &p.with([h.clone()])));
    let mut candidate = Ideal::unit(ring);
    for s in &stars {
        candidate = ideal_intersect(&candidate, s)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut verified = false;
    let mut rounds = 0;
    while rounds < MAX_ROUNDS {
        rounds += 1;
        let fresh: Vec<Polynomial> = (0..PROBES_PER_ROUND).map(|_| random_probe(p, &mut rng)).collect();
        let stars = exec.map(&fresh, |h| star_closure(w, &p.with([h.clone()])));
        let mut shrunk = false;
        for s in &stars {
            if !s.contains_ideal(&candidate) {
                candidate = ideal_intersect(&candidate, s)?;
                shrunk = true;
            }
        }
        if !shrunk {
            verified = true;
            break;
        }
    }
    Ok(SmallestCompatible {
        ideal: Ideal::new(ring, candidate.reduced().to_vec()),
        verified,
        rounds,
    })
}

/// `S/P` is a field when `P` is maximal; its only nonzero ideal is (1).
fn is_maximal(p: &Ideal) -> bool {
    p.dimension() == Some(0)
}

pub fn smallest_nonzero_compatible(
    w: &SplittingWitness,
    r: &QuotientRing,
    seed: Option<&Ideal>,
) -> Result<SmallestCompatible> {
    if !r.is_domain() {
        return Err(Error::DomainRequired);
    }
    if !w.ring().defining_ideal().equals(r.defining_ideal()) {
        return Err(Error::RingMismatch("witness belongs to a different ring".into()));
    }
    smallest_over(w, r.defining_ideal(), seed, Exec::default())
}

#[derive(Clone, Debug)]
pub struct LatticeMember {
    pub ideal: Ideal,
    pub compatible: bool,
    /// `None` when the prime test was out of scope.
    pub prime: Option<bool>,
    /// `dim S/P` for prime members.
    pub coheight: Option<usize>,
    pub radical: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct CompatibleLattice {
    /// Sorted by decreasing dimension, the unit ideal last.
    pub members: Vec<LatticeMember>,
    /// `(i, j)` whenever `members[i] ⊊ members[j]`.
    pub edges: Vec<(usize, usize)>,
    pub complete: bool,
    pub truncated: bool,
    pub unverified_minimality: bool,
    /// Number of prime members inside `m`, by coheight.
    pub prime_counts: BTreeMap<usize, usize>,
    pub prime_count_bound_ok: bool,
}

impl CompatibleLattice {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn find(&self, j: &Ideal) -> Option<usize> {
        self.members.iter().position(|m| m.ideal.equals(j))
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

struct Worklist {
    members: Vec<Ideal>,
    keys: HashMap<Vec<String>, usize>,
    truncated: bool,
}

impl Worklist {
    fn add(&mut self, j: Ideal) {
        let key = j.canonical_strings();
        if self.keys.contains_key(&key) {
            return;
        }
        if self.members.len() >= MAX_MEMBERS {
            self.truncated = true;
            return;
        }
        self.keys.insert(key, self.members.len());
        self.members.push(Ideal::new(j.ring(), j.reduced().to_vec()));
    }
}

pub fn enumerate_compatible(w: &SplittingWitness, r: &QuotientRing) -> Result<CompatibleLattice> {
    enumerate_compatible_with(w, r, Exec::default())
}

pub fn enumerate_compatible_with(w: &SplittingWitness, r: &QuotientRing, exec: Exec) -> Result<CompatibleLattice> {
    if !w.ring().defining_ideal().equals(r.defining_ideal()) {
        return Err(Error::RingMismatch("witness belongs to a different ring".into()));
    }
    let ring = r.ring();
    let hints = r.hints();
    let mut wl = Worklist {
        members: Vec::new(),
        keys: HashMap::new(),
        truncated: false,
    };
    wl.add(star_closure(w, r.defining_ideal()));
    wl.add(Ideal::unit(ring));
    let mut unverified = false;
    let mut primality: HashMap<Vec<String>, bool> = HashMap::new();
    let mut k = 0;
    while k < wl.members.len() && !wl.truncated {
        let j = wl.members[k].clone();
        k += 1;
        if j.is_unit() {
            continue;
        }
        let primes = minimal_primes(&j, hints)?;
        let is_prime = primes.len() == 1 && primes[0].equals(&j);
        primality.insert(j.canonical_strings(), is_prime);
        for p in primes {
            if compatible_test(w, &p)? {
                wl.add(p);
            }
        }
        let others: Vec<Ideal> = wl.members.clone();
        let meets = exec.map(&others, |m| ideal_intersect(&j, m));
        for m in meets {
            wl.add(m?);
        }
        let joins = exec.map(&others, |m| star_closure(w, &j.sum(m)));
        for m in joins {
            wl.add(m);
        }
        if is_prime {
            let tau = smallest_over(w, &j, None, exec)?;
            unverified |= !tau.verified;
            wl.add(tau.ideal);
        }
    }

    let mut members: Vec<LatticeMember> = Vec::with_capacity(wl.members.len());
    for j in &wl.members {
        let compatible = compatible_test(w, j)?;
        let prime = if j.is_unit() {
            Some(false)
        } else if let Some(&p) = primality.get(&j.canonical_strings()) {
            Some(p)
        } else {
            match minimal_primes(j, hints) {
                Ok(ps) => Some(ps.len() == 1 && ps[0].equals(j)),
                Err(Error::OutOfScope(_)) => None,
                Err(e) => return Err(e),
            }
        };
        let radical = match is_radical(j, hints) {
            Ok(b) => Some(b),
            Err(Error::OutOfScope(_)) => None,
            Err(e) => return Err(e),
        };
        members.push(LatticeMember {
            ideal: j.clone(),
            compatible,
            coheight: if prime == Some(true) { j.dimension() } else { None },
            prime,
            radical,
        });
    }
    // larger dimension first, then members below more of the others
    let above: Vec<usize> = members
        .iter()
        .map(|a| members.iter().filter(|b| b.ideal.contains_ideal(&a.ideal)).count())
        .collect();
    let mut keyed: Vec<(i64, usize, Vec<String>, LatticeMember)> = members
        .into_iter()
        .zip(above)
        .map(|(m, n)| {
            (
                m.ideal.dimension().map_or(-1, |d| d as i64),
                n,
                m.ideal.canonical_strings(),
                m,
            )
        })
        .collect();
    keyed.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)).then_with(|| a.2.cmp(&b.2)));
    let members: Vec<LatticeMember> = keyed.into_iter().map(|k| k.3).collect();
    let mut edges = Vec::new();
    for (i, a) in members.iter().enumerate() {
        for (j, b) in members.iter().enumerate() {
            if i != j && b.ideal.contains_ideal(&a.ideal) && !a.ideal.contains_ideal(&b.ideal) {
                edges.push((i, j));
            }
        }
    }
    let m = r.maximal_ideal();
    let mut prime_counts = BTreeMap::new();
    for member in &members {
        if let (Some(true), Some(d)) = (member.prime, member.coheight) {
            if m.contains_ideal(&member.ideal) {
                *prime_counts.entry(d).or_insert(0) += 1;
            }
        }
    }
    let v = r.nvars();
    let prime_count_bound_ok = prime_counts.iter().all(|(&d, &c)| c as u128 <= binomial(v, d));
    Ok(CompatibleLattice {
        members,
        edges,
        complete: !wl.truncated && !unverified,
        truncated: wl.truncated,
        unverified_minimality: unverified,
        prime_counts,
        prime_count_bound_ok,
    })
}
