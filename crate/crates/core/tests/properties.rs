mod common;

use std::sync::Arc;

use proptest::prelude::*;

use splincal::algebra::{parse_polynomial, Monomial, PolyRing, Polynomial};
use splincal::frobenius::{
    compatible_test, frobenius_power_ideal, frobenius_root, star_closure, QuotientRing, SplittingWitness,
};
use splincal::groebner::{syzygy_basis, Ideal, ModuleMatrix};
use splincal::session::{parse_session, print_session};
use splincal::splinter::{ideal_trace_sample, trace_ideal, FiniteExtension};

const PRIMES: [u64; 4] = [2, 3, 5, 7];

fn ring_for(p_idx: usize, n: usize) -> Arc<PolyRing> {
    let names = ["x", "y", "z"];
    common::ring(PRIMES[p_idx], &names[..n])
}

/// Raw terms: exponent vectors (padded to three variables) and coefficients.
fn raw_poly(max_terms: usize, max_exp: u32) -> impl Strategy<Value = Vec<([u32; 3], u32)>> {
    prop::collection::vec((prop::array::uniform3(0..=max_exp), 1u32..1000), 1..=max_terms)
}

fn build(r: &Arc<PolyRing>, raw: &[([u32; 3], u32)]) -> Polynomial {
    let n = r.nvars();
    let p = r.characteristic();
    Polynomial::from_terms(
        r,
        raw.iter()
            .map(|(e, c)| (Monomial::from_exponents(&e[..n]), c % p))
            .filter(|(_, c)| *c != 0)
            .collect(),
    )
}

fn homogeneous(r: &Arc<PolyRing>, raw: &[([u32; 3], u32)], deg: u32) -> Polynomial {
    let mons = common::monomials_of_degree(r.nvars(), deg);
    let p = r.characteristic();
    let terms = raw
        .iter()
        .map(|(e, c)| {
            let k = (e[0] as usize * 7 + e[1] as usize * 3 + e[2] as usize) % mons.len();
            (mons[k].clone(), c % p)
        })
        .filter(|(_, c)| *c != 0)
        .collect();
    Polynomial::from_terms(r, terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn root_undoes_bracket_power(p in 0usize..4, n in 1usize..=3, gens in prop::collection::vec(raw_poly(3, 3), 1..=3)) {
        let r = ring_for(p, n);
        let i = Ideal::new(&r, gens.iter().map(|g| build(&r, g)).collect());
        let back = frobenius_root(&frobenius_power_ideal(&i, 1).unwrap(), 1);
        prop_assert!(back.equals(&i), "{} -> {}", i, back);
    }

    #[test]
    fn membership_agrees_with_linear_algebra(
        p in 0usize..4,
        n in 2usize..=3,
        gens in prop::collection::vec((raw_poly(3, 3), 1u32..=2), 1..=3),
        mults in prop::collection::vec(raw_poly(2, 3), 3),
        noise in raw_poly(2, 3),
        perturb in any::<bool>(),
    ) {
        let r = ring_for(p, n);
        let gens: Vec<Polynomial> = gens.iter().map(|(g, d)| homogeneous(&r, g, *d)).collect();
        let mut f = r.zero();
        for (g, m) in gens.iter().zip(&mults) {
            if !g.is_zero() {
                f = f.add(&g.mul(&homogeneous(&r, m, 3 - g.total_degree() as u32)));
            }
        }
        if perturb {
            f = f.add(&homogeneous(&r, &noise, 3));
        }
        let i = Ideal::new(&r, gens.clone());
        prop_assert_eq!(i.contains(&f), common::homogeneous_member(&f, &gens));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn syzygies_annihilate(p in 0usize..4, n in 1usize..=3, rows in 1usize..=2, cols in 1usize..=3,
                           entries in prop::collection::vec(raw_poly(2, 2), 6)) {
        let r = ring_for(p, n);
        let entries: Vec<Polynomial> = entries.iter().take(rows * cols).map(|e| build(&r, e)).collect();
        let m = ModuleMatrix::new(&r, rows, cols, entries).unwrap();
        let syz = syzygy_basis(&m).unwrap();
        for c in 0..syz.cols() {
            prop_assert!(m.apply(&syz.column(c)).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn printing_round_trips(p in 0usize..4, n in 1usize..=3, raw in raw_poly(5, 4)) {
        let r = ring_for(p, n);
        let f = build(&r, &raw);
        let again = parse_polynomial(&r, &f.to_string()).unwrap();
        prop_assert_eq!(again, f);
    }

    #[test]
    fn ring_axioms(p in 0usize..4, n in 1usize..=3, a in raw_poly(4, 3), b in raw_poly(4, 3), c in raw_poly(4, 3)) {
        let r = ring_for(p, n);
        let (f, g, h) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn frobenius_is_additive(p in 0usize..4, n in 1usize..=3, a in raw_poly(3, 2), b in raw_poly(3, 2)) {
        let r = ring_for(p, n);
        let (f, g) = (build(&r, &a), build(&r, &b));
        let q = r.characteristic() as u64;
        prop_assert_eq!(f.add(&g).pow(q), f.pow(q).add(&g.pow(q)));
        prop_assert_eq!(f.frobenius_power(1).unwrap(), f.pow(q));
    }

    #[test]
    fn star_closure_is_compatible(raw in prop::collection::vec(raw_poly(2, 2), 1..=2), node in any::<bool>()) {
        let (r, u) = if node {
            let r = common::ring(5, &["x", "y"]);
            let q = QuotientRing::new(&r, common::ideal(&r, &["x*y"])).unwrap();
            let u = common::poly(&r, "x^4*y^4");
            (q, u)
        } else {
            let r = common::ring(3, &["x", "y"]);
            (QuotientRing::polynomial_ring(&r), common::poly(&r, "x^2*y^2"))
        };
        let w = SplittingWitness::new(&r, u.clone()).unwrap();
        let j = r.lift(&Ideal::new(r.ring(), raw.iter().map(|g| build(r.ring(), g)).collect()));
        let star = star_closure(&w, &j);
        prop_assert!(star.contains_ideal(&j));
        prop_assert_eq!(compatible_test(&w, &star), Ok(true));
        prop_assert!(common::compatible_by_definition(&u, &star));
    }

    #[test]
    fn cusp_trace_lies_in_every_sample(raw in prop::collection::vec(prop::collection::vec(raw_poly(2, 2), 1..=2), 1..=2)) {
        let r = common::ring(5, &["u", "v"]);
        let a = QuotientRing::new(&r, common::ideal(&r, &["v^2 - u^3"])).unwrap();
        let b = FiniteExtension::parse("N", &a, &["t"], &["t^2 - u", "t*u - v", "t*v - u^2"]).unwrap();
        let m3 = a.maximal_ideal().product(&a.maximal_ideal()).product(&a.maximal_ideal());
        let family: Vec<Ideal> = raw
            .iter()
            .map(|gens| a.lift(&m3.with(gens.iter().map(|g| build(&r, g)))))
            .collect();
        let tau = trace_ideal(&b).unwrap();
        let sample = ideal_trace_sample(&b, &family).unwrap();
        prop_assert!(sample.ideal.contains_ideal(&tau));
    }

    #[test]
    fn sessions_round_trip(p in 0usize..4, n in 1usize..=3, gens in prop::collection::vec(raw_poly(3, 3), 0..=3)) {
        let r = ring_for(p, n);
        let list: Vec<String> = gens.iter().map(|g| build(&r, g).to_string()).collect();
        let text = format!(
            "ring R = poly(p={}; vars={}; order=grevlex)\nideal J in R = ({})\n",
            r.characteristic(),
            r.names().join(","),
            list.join(", ")
        );
        let s = parse_session(&text).unwrap();
        let printed = print_session(&s);
        prop_assert_eq!(parse_session(&printed).unwrap(), s);
    }
}
