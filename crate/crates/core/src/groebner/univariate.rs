//! Dense univariate polynomials over F_p and their factorization:
//! square-free decomposition, distinct-degree splitting, Cantor–Zassenhaus.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::PrimeField;

/// Coefficients from the constant term upward, no trailing zeros.
pub type Dense = Vec<u32>;

fn trim(mut a: Dense) -> Dense {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn degree(a: &Dense) -> isize {
    a.len() as isize - 1
}

fn is_one(a: &Dense) -> bool {
    a.len() == 1 && a[0] == 1
}

fn sub(f: &PrimeField, a: &Dense, b: &Dense) -> Dense {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect(),
    )
}

fn add(f: &PrimeField, a: &Dense, b: &Dense) -> Dense {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect(),
    )
}

fn mul(f: &PrimeField, a: &Dense, b: &Dense) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` nonzero.
fn divrem(f: &PrimeField, a: &Dense, b: &Dense) -> (Dense, Dense) {
    let mut r = a.clone();
    if degree(a) < degree(b) {
        return (Vec::new(), r);
    }
    let inv = f.inv(*b.last().unwrap());
    let mut q = vec![0u32; a.len() - b.len() + 1];
    while !r.is_empty() && r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = f.mul(*r.last().unwrap(), inv);
        q[shift] = c;
        for (j, &y) in b.iter().enumerate() {
            r[shift + j] = f.sub(r[shift + j], f.mul(c, y));
        }
        r = trim(r);
    }
    (trim(q), r)
}

fn rem(f: &PrimeField, a: &Dense, b: &Dense) -> Dense {
    divrem(f, a, b).1
}

fn monic(f: &PrimeField, a: Dense) -> Dense {
    match a.last() {
        None | Some(1) => a,
        Some(&lc) => {
            let inv = f.inv(lc);
            a.into_iter().map(|c| f.mul(c, inv)).collect()
        }
    }
}

pub fn gcd(f: &PrimeField, a: &Dense, b: &Dense) -> Dense {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, a)
}

fn derivative(f: &PrimeField, a: &Dense) -> Dense {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_u64(i as u64)))
            .collect(),
    )
}

fn powmod(f: &PrimeField, base: &Dense, mut e: u64, m: &Dense) -> Dense {
    let mut acc = vec![1u32];
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), m);
        }
        e >>= 1;
        if e > 0 {
            b = rem(f, &mul(f, &b, &b), m);
        }
    }
    rem(f, &acc, m)
}

/// `a` must only have exponents divisible by p.
fn pth_root(f: &PrimeField, a: &Dense) -> Dense {
    let p = f.characteristic() as usize;
    a.iter().step_by(p).copied().collect()
}

/// Square-free decomposition: pairs (square-free factor, multiplicity).
pub fn squarefree(f: &PrimeField, a: &Dense) -> Vec<(Dense, u32)> {
    let a = monic(f, trim(a.clone()));
    if degree(&a) <= 0 {
        return Vec::new();
    }
    let p = f.characteristic();
    let d = derivative(f, &a);
    if d.is_empty() {
        return squarefree(f, &pth_root(f, &a))
            .into_iter()
            .map(|(g, m)| (g, m * p))
            .collect();
    }
    let mut out = Vec::new();
    let mut c = gcd(f, &a, &d);
    let mut w = divrem(f, &a, &c).0;
    let mut i = 1;
    while !is_one(&w) {
        let y = gcd(f, &w, &c);
        let z = divrem(f, &w, &y).0;
        if degree(&z) > 0 {
            out.push((monic(f, z), i));
        }
        i += 1;
        w = y;
        c = divrem(f, &c, &w).0;
    }
    if degree(&c) > 0 {
        out.extend(squarefree(f, &pth_root(f, &c)).into_iter().map(|(g, m)| (g, m * p)));
    }
    out
}

/// Splits a monic square-free polynomial into products of irreducibles of
/// equal degree: pairs (product, degree).
fn distinct_degree(f: &PrimeField, a: &Dense) -> Vec<(Dense, usize)> {
    let p = f.characteristic() as u64;
    let x = vec![0, 1];
    let mut out = Vec::new();
    let mut rest = a.clone();
    let mut h = x.clone();
    let mut d = 1;
    while degree(&rest) >= 2 * d as isize {
        h = powmod(f, &h, p, &rest);
        let g = gcd(f, &rest, &sub(f, &h, &x));
        if !is_one(&g) {
            rest = divrem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
            out.push((g, d));
        }
        d += 1;
    }
    if degree(&rest) > 0 {
        let dd = degree(&rest) as usize;
        out.push((monic(f, rest), dd));
    }
    out
}

fn equal_degree(f: &PrimeField, a: &Dense, d: usize, rng: &mut ChaCha8Rng) -> Vec<Dense> {
    let n = degree(a) as usize;
    if n == d {
        return vec![a.clone()];
    }
    let p = f.characteristic();
    loop {
        let r: Dense = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if degree(&r) < 1 {
            continue;
        }
        let probe = if p == 2 {
            // trace to F_2: r + r^2 + ... + r^(2^(d-1))
            let mut t = r.clone();
            let mut acc = r.clone();
            for _ in 1..d {
                t = powmod(f, &t, 2, a);
                acc = add(f, &acc, &t);
            }
            acc
        } else {
            // r^((p^d - 1)/2) = (r^(1 + p + ... + p^(d-1)))^((p - 1)/2)
            let mut t = r.clone();
            let mut norm = r.clone();
            for _ in 1..d {
                t = powmod(f, &t, p as u64, a);
                norm = rem(f, &mul(f, &norm, &t), a);
            }
            sub(f, &powmod(f, &norm, (p as u64 - 1) / 2, a), &vec![1])
        };
        let g = gcd(f, a, &probe);
        if degree(&g) > 0 && degree(&g) < n as isize {
            let h = divrem(f, a, &g).0;
            let mut out = equal_degree(f, &g, d, rng);
            out.extend(equal_degree(f, &monic(f, h), d, rng));
            return out;
        }
    }
}

/// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
pub fn factor(f: &PrimeField, a: &Dense) -> Vec<(Dense, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    for (sf, mult) in squarefree(f, a) {
        for (block, d) in distinct_degree(f, &sf) {
            for g in equal_degree(f, &block, d, &mut rng) {
                out.push((g, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    out
}

/// Distinct roots in F_p.
pub fn roots(f: &PrimeField, a: &Dense) -> Vec<u32> {
    let mut r: Vec<u32> = factor(f, a)
        .into_iter()
        .filter(|(g, _)| g.len() == 2)
        .map(|(g, _)| f.neg(g[0]))
        .collect();
    r.sort_unstable();
    r
}
