//! One function per acceptance criterion; each returns the first mismatch.

use std::process::Command;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use splincal::frobenius::{
    compatible_test, enumerate_compatible, fedder_fpure, frobenius_closure, frobenius_power_ideal, frobenius_root,
    QuotientRing, SplittingWitness,
};
use splincal::groebner::{syzygy_basis, Ideal, ModuleMatrix};
use splincal::session::{parse_session, print_session, Workspace};
use splincal::splinter::{
    default_family, ideal_trace_sample, splinter_report, split_check, trace_chain, trace_ideal, FiniteExtension,
    Verdict,
};

use super::*;

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn quotient(p: u64, vars: &[&str], rels: &[&str]) -> QuotientRing {
    let r = ring(p, vars);
    QuotientRing::new(&r, ideal(&r, rels)).unwrap()
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// A term of `f` with every exponent below `p` means `f ∉ m^[p]`.
fn escapes_bracket(f: &Polynomial) -> bool {
    let p = f.ring().characteristic();
    f.terms().iter().any(|(m, _)| m.exponents().iter().all(|&e| e < p))
}

pub fn fedder_fermat() -> Check {
    for (p, expected) in [(7u64, true), (2, false)] {
        let r = quotient(p, &["x", "y", "z"], &["x^3 + y^3 + z^3"]);
        let res = fedder_fpure(&r).map_err(|e| e.to_string())?;
        ensure!(res.fpure == expected, "p = {p}: fpure = {}", res.fpure);
        // principal defining ideal: F-pure iff f^(p-1) escapes m^[p]
        let f = poly(r.ring(), "x^3 + y^3 + z^3").pow(p - 1);
        ensure!(escapes_bracket(&f) == expected, "p = {p}: oracle disagrees");
        if let Some(w) = &res.witness {
            ensure!(escapes_bracket(w.u()), "witness {} lies in m^[p]", w.u());
        }
    }
    Ok(())
}

pub fn node_lattice() -> Check {
    let r = quotient(5, &["x", "y"], &["x*y"]);
    let u = poly(r.ring(), "x^4*y^4");
    let w = SplittingWitness::new(&r, u.clone()).map_err(|e| e.to_string())?;
    let lat = enumerate_compatible(&w, &r).map_err(|e| e.to_string())?;
    ensure!(lat.len() == 5, "lattice has {} members", lat.len());
    let mut got: Vec<Vec<String>> = lat.members.iter().map(|m| m.ideal.canonical_strings()).collect();
    got.sort();
    let candidates = monomial_ideals_over(r.defining_ideal(), 3);
    ensure!(candidates.len() > 10, "only {} candidate ideals", candidates.len());
    let mut oracle: Vec<Vec<String>> = candidates
        .into_iter()
        .filter(|j| compatible_by_definition(&u, j))
        .map(|j| j.canonical_strings())
        .collect();
    oracle.sort();
    ensure!(got == oracle, "lattice {got:?} vs brute force {oracle:?}");
    for m in &lat.members {
        ensure!(m.compatible, "{} flagged incompatible", m.ideal);
        ensure!(
            compatible_test(&w, &m.ideal) == Ok(true),
            "{} fails compatible_test",
            m.ideal
        );
        ensure!(m.radical == Some(true), "{} not certified radical", m.ideal);
    }
    for (&d, &count) in &lat.prime_counts {
        ensure!(count <= binom(2, d), "{count} primes of coheight {d}");
    }
    ensure!(lat.prime_count_bound_ok, "prime count bound flag");

    // F_p[x] with u = x^(p-1): (0), (x), (1) and nothing else among (x^k)
    for p in [3u64, 5] {
        let line = QuotientRing::polynomial_ring(&ring(p, &["x"]));
        let u = line.ring().var(0).pow(p - 1);
        let w = SplittingWitness::new(&line, u.clone()).map_err(|e| e.to_string())?;
        let lat = enumerate_compatible(&w, &line).map_err(|e| e.to_string())?;
        let got: Vec<String> = lat.members.iter().map(|m| m.ideal.to_string()).collect();
        ensure!(got == ["(0)", "(x)", "(1)"], "F_{p}[x] lattice {got:?}");
        for k in 0..6u64 {
            let j = Ideal::new(line.ring(), vec![line.ring().var(0).pow(k)]);
            ensure!(compatible_by_definition(&u, &j) == (k <= 1), "(x^{k}) oracle");
            ensure!(lat.find(&j).is_some() == (k <= 1), "(x^{k}) membership");
        }
    }
    Ok(())
}

fn cusp(p: u64) -> FiniteExtension {
    let a = quotient(p, &["u", "v"], &["v^2 - u^3"]).mark_domain().unwrap();
    FiniteExtension::parse("N", &a, &["t"], &["t^2 - u", "t*u - v", "t*v - u^2"]).unwrap()
}

pub fn cusp_obstruction() -> Check {
    for p in [5u64, 7] {
        let b = cusp(p);
        let a = b.base();
        let m = ideal(a.ring(), &["u", "v"]);
        let e = |x: splincal::error::Error| x.to_string();
        ensure!(trace_ideal(&b).map_err(e)?.reduced() == m.reduced(), "p = {p}: trace");
        ensure!(!split_check(&b).map_err(e)?, "p = {p}: split");
        let u = ideal(a.ring(), &["u"]);
        ensure!(
            b.contract_ideal(&u).map_err(e)?.reduced() == m.reduced(),
            "p = {p}: contraction of (u)"
        );
        let s = ideal_trace_sample(&b, &[u]).map_err(e)?;
        ensure!(s.ideal.reduced() == m.reduced(), "p = {p}: ideal trace sample");
        let rep = splinter_report(a, std::slice::from_ref(&b), &[]).map_err(e)?;
        ensure!(rep.verdict != Verdict::NoObstructionFound, "p = {p}: no obstruction");
        ensure!(
            rep.locus.as_ref().is_some_and(|l| l.equals(&m)),
            "p = {p}: locus {:?}",
            rep.locus
        );
        ensure!(rep.chain.obstruction.equals(&m), "p = {p}: chain obstruction");
    }
    Ok(())
}

fn probe_family(a: &QuotientRing, seed: u64) -> Vec<Ideal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..10)
        .map(|k| {
            let n = 1 + k % 3;
            let gens = (0..n).map(|_| random_poly(&mut rng, a.ring(), 3, 3)).collect();
            a.lift(&Ideal::new(a.ring(), gens))
        })
        .collect()
}

pub fn split_fixtures() -> Check {
    let e = |x: splincal::error::Error| x.to_string();
    for p in [3u64, 5, 7] {
        let a = quotient(p, &["a", "b", "c"], &["b^2 - a*c"]).mark_domain().map_err(e)?;
        let v = FiniteExtension::parse("V", &a, &["x", "y"], &["x^2 - a", "x*y - b", "y^2 - c"]).map_err(e)?;
        ensure!(trace_ideal(&v).map_err(e)?.is_unit(), "Veronese p = {p}: trace");
        let chain = trace_chain(&a, &[v.clone(), v.clone()]).map_err(e)?;
        ensure!(
            chain.stabilized_at == Some(1),
            "Veronese p = {p}: stabilized {:?}",
            chain.stabilized_at
        );
        ensure!(chain.obstruction.is_unit(), "Veronese p = {p}: obstruction");
        for (k, i) in probe_family(&a, 11 + p).iter().enumerate() {
            ensure!(
                v.contract_ideal(i).map_err(e)?.equals(i),
                "Veronese p = {p}: probe {k} = {i}"
            );
        }

        let x = QuotientRing::polynomial_ring(&ring(p, &["x"]))
            .mark_domain()
            .map_err(e)?;
        let b1 = FiniteExtension::parse("B1", &x, &["s"], &["s^2 - x"]).map_err(e)?;
        let b2 = FiniteExtension::parse("B2", &x, &["s", "t"], &["s^2 - x", "t^2 - s"]).map_err(e)?;
        let chain = trace_chain(&x, &[b1, b2.clone()]).map_err(e)?;
        ensure!(
            chain.traces.iter().all(|t| t.is_unit()),
            "quadratic chain p = {p}: traces"
        );
        ensure!(chain.stabilized_at == Some(1), "quadratic chain p = {p}: stabilized");
        for (k, i) in probe_family(&x, 23 + p).iter().enumerate() {
            ensure!(
                b2.contract_ideal(i).map_err(e)?.equals(i),
                "quadratic chain p = {p}: probe {k} = {i}"
            );
        }
    }
    Ok(())
}

pub fn frobenius_closures() -> Check {
    let e = |x: splincal::error::Error| x.to_string();
    let r = quotient(2, &["x", "y", "z"], &["z^2 + x^3 + y^3"]);
    let c = frobenius_closure(&r, &r.lift(&ideal(r.ring(), &["x", "y"])), 3).map_err(e)?;
    ensure!(
        c.closure.equals(&ideal(r.ring(), &["x", "y", "z"])),
        "F_2 cusp closure {}",
        c.closure
    );
    ensure!(c.stabilized_at == Some(1), "stabilized at {:?}", c.stabilized_at);

    let r = quotient(7, &["x", "y", "z"], &["x^3 + y^3 + z^3"]);
    let m3 = r
        .maximal_ideal()
        .product(&r.maximal_ideal())
        .product(&r.maximal_ideal());
    let mut rng = ChaCha8Rng::seed_from_u64(0xf7);
    for k in 0..10 {
        let extra: Vec<Polynomial> = (0..1 + k % 3)
            .map(|_| random_poly(&mut rng, r.ring(), 3, 2))
            .filter(|g| !g.terms().iter().any(|(m, _)| m.is_one()))
            .collect();
        let i = r.lift(&m3.with(extra));
        let c = frobenius_closure(&r, &i, 2).map_err(e)?;
        ensure!(c.closure.equals(&i), "Fermat-7 probe {k}: {} grew to {}", i, c.closure);
    }
    Ok(())
}

const LAW_FIXTURES: [&str; 4] = [
    "veronese.ses",
    "quadratic_chain.ses",
    "node_normalization.ses",
    "line.ses",
];

pub fn trace_law() -> Check {
    let e = |x: splincal::error::Error| x.to_string();
    for name in LAW_FIXTURES {
        let text = std::fs::read_to_string(fixture(name)).map_err(|x| x.to_string())?;
        let mut ws = Workspace::new(parse_session(&text).map_err(e)?).map_err(e)?;
        let Some(w) = fedder_fpure(ws.ring()).map_err(e)?.witness else {
            return Err(format!("{name}: expected a Fedder witness"));
        };
        let names: Vec<String> = ws.session().extensions().map(|x| x.name.clone()).collect();
        let declared: Vec<String> = ws.session().ideals().map(|i| i.name.clone()).collect();
        for ext in names {
            let b = ws.extension(&ext).map_err(e)?.clone();
            let tau = trace_ideal(&b).map_err(e)?;
            ensure!(
                compatible_test(&w, &tau) == Ok(true),
                "{name}/{ext}: τ = {tau} not compatible"
            );
            ensure!(
                compatible_by_definition(w.u(), &tau),
                "{name}/{ext}: oracle rejects τ = {tau}"
            );
            let mut families = vec![default_family(&b, 3)];
            if !declared.is_empty() {
                let r = ws.ring();
                let lifted = ws
                    .session()
                    .ideals()
                    .map(|i| r.lift(&Ideal::new(r.ring(), i.gens.clone())))
                    .collect();
                families.push(lifted);
            }
            for fam in families {
                let s = ideal_trace_sample(&b, &fam).map_err(e)?;
                ensure!(
                    s.ideal.contains_ideal(&tau),
                    "{name}/{ext}: τ escapes sample {}",
                    s.ideal
                );
            }
        }
    }
    Ok(())
}

pub fn kernel_substrate() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ab5);
    let rings = [
        ring(2, &["x", "y"]),
        ring(3, &["x", "y", "z"]),
        ring(5, &["x", "y"]),
        ring(7, &["a", "b", "c"]),
    ];
    for k in 0..200 {
        let r = &rings[k % rings.len()];
        let n = 1 + k % 3;
        let i = Ideal::new(r, (0..n).map(|_| random_poly(&mut rng, r, 3, 3)).collect());
        let back = frobenius_root(&frobenius_power_ideal(&i, 1).map_err(|x| x.to_string())?, 1);
        ensure!(back.equals(&i), "root(power({i})) = {back}");
    }
    let mut outcomes = [0usize; 2];
    for k in 0..200 {
        let r = &rings[k % rings.len()];
        let gens: Vec<Polynomial> = (0..1 + k % 3)
            .map(|j| random_homogeneous(&mut rng, r, 3, 1 + (j as u32 + k as u32) % 3))
            .collect();
        let f = if k % 2 == 0 {
            // a known member, then perturbed half the time
            let mut f = r.zero();
            for g in &gens {
                let d = 3u32.saturating_sub(g.total_degree() as u32);
                f = f.add(&g.mul(&random_homogeneous(&mut rng, r, 2, d)));
            }
            f
        } else {
            random_homogeneous(&mut rng, r, 3, 3)
        };
        let i = Ideal::new(r, gens.clone());
        let member = homogeneous_member(&f, &gens);
        ensure!(i.contains(&f) == member, "membership of {f} in {i}");
        outcomes[member as usize] += 1;
    }
    ensure!(outcomes[0] > 20 && outcomes[1] > 20, "membership outcomes {outcomes:?}");
    for k in 0..50 {
        let r = &rings[k % rings.len()];
        let rows = 1 + k % 2;
        let cols = 2 + k % 3;
        let entries = (0..rows * cols).map(|_| random_poly(&mut rng, r, 2, 2)).collect();
        let m = ModuleMatrix::new(r, rows, cols, entries).map_err(|x| x.to_string())?;
        let syz = syzygy_basis(&m).map_err(|x| x.to_string())?;
        for c in 0..syz.cols() {
            ensure!(
                m.apply(&syz.column(c)).iter().all(|x| x.is_zero()),
                "syzygy {c} of {m:?}"
            );
        }
    }
    Ok(())
}

pub fn hom_oracle() -> Check {
    let e = |x: splincal::error::Error| x.to_string();
    for p in [5u64, 7] {
        let b = cusp(p);
        let r = b.base().ring();
        let rels = vec![vec![poly(r, "v"), poly(r, "-u")], vec![poly(r, "u^2"), poly(r, "-v")]];
        let oracle = hom_trace_oracle(&poly(r, "v^2 - u^3"), &rels, 2, 6);
        let tau = trace_ideal(&b).map_err(e)?;
        ensure!(
            oracle.canonical_strings() == tau.canonical_strings(),
            "cusp p = {p}: {oracle} vs {tau}"
        );
    }
    for p in [3u64, 5] {
        let a = quotient(p, &["a", "b", "c"], &["b^2 - a*c"]);
        let v = FiniteExtension::parse("V", &a, &["x", "y"], &["x^2 - a", "x*y - b", "y^2 - c"]).map_err(e)?;
        let r = a.ring();
        let z = r.zero();
        let rels = vec![
            vec![z.clone(), poly(r, "b"), poly(r, "-a")],
            vec![z.clone(), poly(r, "c"), poly(r, "-b")],
        ];
        let oracle = hom_trace_oracle(&poly(r, "b^2 - a*c"), &rels, 3, 6);
        let tau = trace_ideal(&v).map_err(e)?;
        ensure!(
            oracle.canonical_strings() == tau.canonical_strings(),
            "Veronese p = {p}: {oracle} vs {tau}"
        );
    }
    Ok(())
}

fn run_bin(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_splincal"))
        .args(args)
        .env("SPLINCAL_THREADS", "1")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        serde_json::from_slice(&out.stdout).unwrap_or(Value::Null),
    )
}

pub fn cli_contract() -> Check {
    let e = |x: splincal::error::Error| x.to_string();
    for name in fixture_names() {
        let text = std::fs::read_to_string(fixture(&name)).map_err(|x| x.to_string())?;
        let s = parse_session(&text).map_err(e)?;
        let printed = print_session(&s);
        ensure!(parse_session(&printed).map_err(e)? == s, "{name}: parse(print(s)) != s");
        for cmd in ["print", "fpure", "splinter"] {
            let path = fixture(&name);
            let args = [cmd, "--session", path.to_str().unwrap()];
            let (c1, mut a) = run_bin(&args);
            let (c2, mut b) = run_bin(&args);
            ensure!(c1 == 0 && c2 == 0, "{name} {cmd}: exit {c1}/{c2}");
            a.as_object_mut().map(|o| o.remove("wall_time_ms"));
            b.as_object_mut().map(|o| o.remove("wall_time_ms"));
            ensure!(a == b, "{name} {cmd}: reports differ");
        }
    }
    let dir = std::env::temp_dir().join(format!("splincal-acc-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|x| x.to_string())?;
    let corpus = malformed_corpus();
    ensure!(corpus.len() >= 50, "corpus has {} cases", corpus.len());
    for (k, case) in corpus.iter().enumerate() {
        let path = dir.join(format!("{k}.ses"));
        std::fs::write(&path, case.text).map_err(|x| x.to_string())?;
        let mut args = vec![case.command, "--session", path.to_str().unwrap()];
        args.extend_from_slice(case.args);
        let (code, r) = run_bin(&args);
        ensure!(
            code == case.exit && r["error"]["code"] == case.code,
            "case {k}: exit {code}, {r}"
        );
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(())
}
