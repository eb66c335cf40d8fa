//! Independent oracles: plain linear algebra over F_p on degree-truncated
//! coefficient spaces, and direct definitions checked term by term.
#![allow(dead_code)]

pub mod checks;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use splincal::algebra::{parse_polynomial, Monomial, MonomialOrder, PolyRing, Polynomial};
use splincal::frobenius::frobenius_power_ideal;
use splincal::groebner::Ideal;

pub fn ring(p: u64, vars: &[&str]) -> Arc<PolyRing> {
    PolyRing::new(p, vars.iter().map(|s| s.to_string()).collect(), MonomialOrder::Grevlex).unwrap()
}

pub fn poly(r: &Arc<PolyRing>, s: &str) -> Polynomial {
    parse_polynomial(r, s).unwrap()
}

pub fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|s| poly(r, s)).collect())
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".ses"))
        .collect();
    names.sort();
    names
}

pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() == n - 1 {
            cur.push(d);
            out.push(Monomial::from_exponents(cur));
            cur.pop();
            return;
        }
        for k in (0..=d).rev() {
            cur.push(k);
            rec(n, d - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

pub fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    (0..=d).flat_map(|k| monomials_of_degree(n, k)).collect()
}

fn inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Basis of `{ x : A x = 0 }`, where `A` is given as sparse columns
/// (`columns[j]` lists `(row, value)`).
pub fn nullspace(columns: &[Vec<(usize, u64)>], p: u64) -> Vec<Vec<u64>> {
    let ncols = columns.len();
    let nrows = columns
        .iter()
        .flat_map(|c| c.iter().map(|(r, _)| r + 1))
        .max()
        .unwrap_or(0);
    let mut a = vec![vec![0u64; ncols]; nrows];
    for (j, col) in columns.iter().enumerate() {
        for &(i, v) in col {
            a[i][j] = (a[i][j] + v) % p;
        }
    }
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pr) = (row..nrows).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, pr);
        let iv = inv(a[row][col], p);
        for x in a[row].iter_mut() {
            *x = *x * iv % p;
        }
        for r in 0..nrows {
            if r != row && a[r][col] != 0 {
                let f = a[r][col];
                for c in 0..ncols {
                    a[r][c] = (a[r][c] + p - f * a[row][c] % p) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == nrows {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[r][f]) % p;
            }
            v
        })
        .collect()
}

fn key(m: &Monomial) -> Vec<u32> {
    m.exponents().to_vec()
}

/// Columns for a family of polynomials: one column per polynomial, rows
/// indexed by `(block, monomial)`.
struct Equations {
    rows: BTreeMap<(usize, Vec<u32>), usize>,
    columns: Vec<Vec<(usize, u64)>>,
}

impl Equations {
    fn new() -> Self {
        Equations {
            rows: BTreeMap::new(),
            columns: Vec::new(),
        }
    }

    /// Add an unknown whose contribution to block `b` is `f` (for each
    /// `(b, f)` in `parts`).
    fn unknown(&mut self, parts: &[(usize, Polynomial)]) {
        let mut col = Vec::new();
        for (b, f) in parts {
            for (m, c) in f.terms() {
                let n = self.rows.len();
                let r = *self.rows.entry((*b, key(m))).or_insert(n);
                col.push((r, *c as u64));
            }
        }
        self.columns.push(col);
    }
}

/// Is the homogeneous `f` in the ideal generated by the homogeneous `gens`?
/// Decided by spanning `{ m·g : deg m = deg f − deg g }`.
pub fn homogeneous_member(f: &Polynomial, gens: &[Polynomial]) -> bool {
    let r = f.ring();
    let p = r.characteristic() as u64;
    if f.is_zero() {
        return true;
    }
    let d = f.total_degree();
    let mut eq = Equations::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let dg = g.total_degree();
        if dg > d {
            continue;
        }
        for m in monomials_of_degree(r.nvars(), (d - dg) as u32) {
            eq.unknown(&[(0, g.mul_term(&m, 1))]);
        }
    }
    let rank_without = eq.columns.len() - nullspace(&eq.columns, p).len();
    eq.unknown(&[(0, f.clone())]);
    let rank_with = eq.columns.len() - nullspace(&eq.columns, p).len();
    rank_with == rank_without
}

/// `τ_{B/A}` by brute force: `A = S/(f)`, `B` generated as an `A`-module by
/// `ngens` elements with the given relation rows (`Σ_j r_ij g_j = 0`).
/// Solves `Σ_j r_ij y_j = q_i f` with `deg y_j ≤ d` and returns the ideal
/// generated by all resulting `y_1`, together with `f`.
pub fn hom_trace_oracle(f: &Polynomial, relations: &[Vec<Polynomial>], ngens: usize, d: u32) -> Ideal {
    let r = f.ring().clone();
    let n = r.nvars();
    let p = r.characteristic() as u64;
    let ys = monomials_up_to(n, d);
    let mut eq = Equations::new();
    let mut y1_columns = Vec::new();
    for j in 0..ngens {
        for m in &ys {
            let parts: Vec<(usize, Polynomial)> = relations
                .iter()
                .enumerate()
                .map(|(i, row)| (i, row[j].mul_term(m, 1)))
                .collect();
            if j == 0 {
                y1_columns.push((eq.columns.len(), m.clone()));
            }
            eq.unknown(&parts);
        }
    }
    let df = f.total_degree() as u32;
    for (i, row) in relations.iter().enumerate() {
        let dr = row.iter().map(|g| g.total_degree() as u32).max().unwrap_or(0);
        if d + dr < df {
            continue;
        }
        for m in monomials_up_to(n, d + dr - df) {
            eq.unknown(&[(i, f.mul_term(&m, 1).neg())]);
        }
    }
    let mut found = vec![f.clone()];
    for v in nullspace(&eq.columns, p) {
        let terms: Vec<(Monomial, u32)> = y1_columns
            .iter()
            .filter(|(c, _)| v[*c] != 0)
            .map(|(c, m)| (m.clone(), v[*c] as u32))
            .collect();
        let y1 = Polynomial::from_terms(&r, terms);
        if !y1.is_zero() {
            found.push(y1);
        }
    }
    Ideal::new(&r, found)
}

/// `u·J ⊆ J^[p]`, checked generator by generator.
pub fn compatible_by_definition(u: &Polynomial, j: &Ideal) -> bool {
    let bracket = frobenius_power_ideal(j, 1).unwrap();
    j.generators().iter().all(|g| bracket.contains(&u.mul(g)))
}

pub fn random_poly(rng: &mut ChaCha8Rng, r: &Arc<PolyRing>, max_terms: usize, max_deg: u32) -> Polynomial {
    let p = r.characteristic();
    let n = r.nvars();
    let k = rng.gen_range(1..=max_terms);
    let terms = (0..k)
        .map(|_| {
            let d = rng.gen_range(0..=max_deg);
            let mut e = vec![0u32; n];
            for _ in 0..d {
                e[rng.gen_range(0..n)] += 1;
            }
            (Monomial::from_exponents(&e), rng.gen_range(1..p))
        })
        .collect();
    Polynomial::from_terms(r, terms)
}

pub fn random_homogeneous(rng: &mut ChaCha8Rng, r: &Arc<PolyRing>, max_terms: usize, deg: u32) -> Polynomial {
    let p = r.characteristic();
    let mons = monomials_of_degree(r.nvars(), deg);
    let k = rng.gen_range(1..=max_terms);
    let terms = (0..k)
        .map(|_| (mons[rng.gen_range(0..mons.len())].clone(), rng.gen_range(1..p)))
        .collect();
    Polynomial::from_terms(r, terms)
}

/// Every monomial ideal generated by monomials with exponents `≤ max_exp`,
/// each one summed with `base`, deduplicated.
pub fn monomial_ideals_over(base: &Ideal, max_exp: u32) -> Vec<Ideal> {
    let r = base.ring().clone();
    let n = r.nvars();
    let mons: Vec<Monomial> = (0..(max_exp + 1).pow(n as u32))
        .map(|mut code| {
            let e: Vec<u32> = (0..n)
                .map(|_| {
                    let x = code % (max_exp + 1);
                    code /= max_exp + 1;
                    x
                })
                .collect();
            Monomial::from_exponents(&e)
        })
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = vec![];
    for mask in 0u32..(1 << mons.len()) {
        let chosen: Vec<&Monomial> = (0..mons.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| &mons[i])
            .collect();
        let antichain = chosen
            .iter()
            .all(|a| chosen.iter().all(|b| std::ptr::eq(*a, *b) || !a.divides(b)));
        if !antichain {
            continue;
        }
        let j = base.with(chosen.into_iter().map(|m| r.monomial(m.clone(), 1)));
        if seen.insert(j.canonical_strings()) {
            out.push(j);
        }
    }
    out
}

/// Malformed sessions (or invocations) with the error code and exit status
/// they must produce. `args` follow the command name.
pub struct BadCase {
    pub text: &'static str,
    pub command: &'static str,
    pub args: &'static [&'static str],
    pub code: &'static str,
    pub exit: i32,
}

macro_rules! bad {
    ($text:expr, $cmd:expr, [$($a:expr),*], $code:expr, $exit:expr) => {
        BadCase { text: $text, command: $cmd, args: &[$($a),*], code: $code, exit: $exit }
    };
}

pub fn malformed_corpus() -> Vec<BadCase> {
    vec![
        bad!("", "fpure", [], "INVALID_ARGUMENT", 2),
        bad!("ring", "fpure", [], "SYNTAX_ERROR", 2),
        bad!("ring R", "fpure", [], "SYNTAX_ERROR", 2),
        bad!("ring R =", "fpure", [], "SYNTAX_ERROR", 2),
        bad!("ring R = poly", "fpure", [], "SYNTAX_ERROR", 2),
        bad!("ring R = poly(", "fpure", [], "SYNTAX_ERROR", 2),
        bad!("ring R = poly(p=5)", "fpure", [], "SYNTAX_ERROR", 2),
        bad!("ring R = poly(vars=x)", "fpure", [], "SYNTAX_ERROR", 2),
        bad!("ring R = poly(p=5; vars=x", "fpure", [], "SYNTAX_ERROR", 2),
        bad!("ring R = poly(p=five; vars=x)", "fpure", [], "SYNTAX_ERROR", 2),
        bad!("ring R = poly(p=6; vars=x)", "fpure", [], "NON_PRIME_CHARACTERISTIC", 2),
        bad!("ring R = poly(p=1; vars=x)", "fpure", [], "NON_PRIME_CHARACTERISTIC", 2),
        bad!("ring R = poly(p=0; vars=x)", "fpure", [], "NON_PRIME_CHARACTERISTIC", 2),
        bad!(
            "ring R = poly(p=5; vars=x; order=deglex)",
            "fpure",
            [],
            "SYNTAX_ERROR",
            2
        ),
        bad!("ring R = poly(p=5; vars=x; colour=red)", "fpure", [], "SYNTAX_ERROR", 2),
        bad!("ring R = poly(p=5; p=7; vars=x)", "fpure", [], "SYNTAX_ERROR", 2),
        bad!("ring R = poly(p=5; vars=x,1y)", "fpure", [], "SYNTAX_ERROR", 2),
        bad!("ring R = poly(p=5; vars=x,x)", "fpure", [], "DUPLICATE_NAME", 2),
        bad!("ring R = poly(p=5; vars=)", "fpure", [], "SYNTAX_ERROR", 2),
        bad!(
            "ring R = poly(p=5; vars=x) / ideal(x +* 1)",
            "fpure",
            [],
            "SYNTAX_ERROR",
            2
        ),
        bad!("ring R = poly(p=5; vars=x) / ideal(x^)", "fpure", [], "SYNTAX_ERROR", 2),
        bad!(
            "ring R = poly(p=5; vars=x) / ideal(y)",
            "fpure",
            [],
            "UNKNOWN_IDENTIFIER",
            2
        ),
        bad!(
            "ring R = poly(p=5; vars=x) / ideal(x,, x)",
            "fpure",
            [],
            "SYNTAX_ERROR",
            2
        ),
        bad!("ring R = poly(p=5; vars=x) / ideal((x)", "fpure", [], "SYNTAX_ERROR", 2),
        bad!(
            "ring R = poly(p=5; vars=x) / ideal(x^99999999999)",
            "fpure",
            [],
            "SYNTAX_ERROR",
            2
        ),
        bad!(
            "ring R = poly(p=5; vars=x) / ideal(x) extra",
            "fpure",
            [],
            "SYNTAX_ERROR",
            2
        ),
        bad!(
            "ring R = poly(p=5; vars=x)\nring S = poly(p=5; vars=y)",
            "fpure",
            [],
            "SYNTAX_ERROR",
            2
        ),
        bad!("ideal J in R = (x)", "fpure", [], "UNKNOWN_IDENTIFIER", 2),
        bad!(
            "ring R = poly(p=5; vars=x)\nideal J in S = (x)",
            "fpure",
            [],
            "UNKNOWN_IDENTIFIER",
            2
        ),
        bad!(
            "ring R = poly(p=5; vars=x)\nideal R in R = (x)",
            "fpure",
            [],
            "DUPLICATE_NAME",
            2
        ),
        bad!(
            "ring R = poly(p=5; vars=x)\nideal J in R = x",
            "fpure",
            [],
            "SYNTAX_ERROR",
            2
        ),
        bad!(
            "ring R = poly(p=5; vars=x)\nideal J in R = (x) maximal",
            "fpure",
            [],
            "SYNTAX_ERROR",
            2
        ),
        bad!(
            "ring R = poly(p=5; vars=x)\nextension B over R = adjoin(t)",
            "fpure",
            [],
            "SYNTAX_ERROR",
            2
        ),
        bad!(
            "ring R = poly(p=5; vars=x)\nextension B over R = adjoin(t) / relations(s^2)",
            "fpure",
            [],
            "UNKNOWN_IDENTIFIER",
            2
        ),
        bad!(
            "ring R = poly(p=5; vars=x)\nwitness u in R = maybe",
            "fpure",
            [],
            "SYNTAX_ERROR",
            2
        ),
        bad!(
            "ring R = poly(p=5; vars=x)\nchain C over R = (B)",
            "fpure",
            [],
            "UNKNOWN_IDENTIFIER",
            2
        ),
        bad!(
            "ring R = poly(p=5; vars=x)\nfrobnicate R",
            "fpure",
            [],
            "SYNTAX_ERROR",
            2
        ),
        bad!("ring R = poly(p=5; vars=x)", "frobnicate", [], "INVALID_ARGUMENT", 2),
        bad!("ring R = poly(p=5; vars=x)", "star", [], "INVALID_ARGUMENT", 2),
        bad!(
            "ring R = poly(p=5; vars=x)",
            "star",
            ["--target", "J"],
            "UNKNOWN_IDENTIFIER",
            2
        ),
        bad!("ring R = poly(p=5; vars=x)", "trace", [], "INVALID_ARGUMENT", 2),
        bad!("ring R = poly(p=5; vars=x)", "chain", [], "INVALID_ARGUMENT", 2),
        bad!(
            "ring R = poly(p=5; vars=x) / ideal(x - 1)",
            "fpure",
            [],
            "BAD_DEFINING_IDEAL",
            3
        ),
        bad!(
            "ring R = poly(p=5; vars=x,y) / ideal(x*y) domain",
            "fpure",
            [],
            "INVALID_DECOMPOSITION",
            3
        ),
        bad!(
            "ring R = poly(p=3; vars=x)\nextension B over R = adjoin(t) / relations(x*t - 1)",
            "trace",
            [],
            "NOT_MODULE_FINITE",
            3
        ),
        bad!(
            "ring R = poly(p=3; vars=x)\nextension B over R = adjoin(t) / relations(t, x)",
            "trace",
            [],
            "NOT_INJECTIVE",
            3
        ),
        bad!(
            "ring R = poly(p=3; vars=x)\nextension B over R = adjoin(t) / relations(t^2 - x)",
            "etale",
            [],
            "DOMAIN_REQUIRED",
            3
        ),
        bad!(
            "ring R = poly(p=5; vars=x,y) / ideal(x*y)\nwitness u in R = poly(x^5)",
            "compatible",
            [],
            "INVALID_WITNESS",
            3
        ),
        bad!(
            "ring R = poly(p=3; vars=x) domain\nideal Z in R = ()",
            "smallest",
            ["--target", "Z"],
            "ZERO_SEED",
            3
        ),
        bad!(
            "ring A = poly(p=3; vars=x) domain\nextension B1 over A = adjoin(s) / relations(s^2 - x)\n\
             extension B2 over A = adjoin(s, t) / relations(s^2 - x, t^2 - s)\nchain C over A = (B2, B1)",
            "chain",
            [],
            "INCLUSION_UNCERTIFIED",
            3
        ),
        bad!(
            "ring R = poly(p=5; vars=x,y,z,w) / ideal(x*y - z*w)",
            "compatible",
            [],
            "OUT_OF_SCOPE",
            4
        ),
    ]
}
