//! Normal forms, traces and convergence checks on the worked examples and on
//! random systems.

use std::collections::BTreeSet;

use diamond_core::ambiguity::{
    all_ambiguities, check_convergence, complete, find_inclusions, find_overlaps, mc_residual,
    obstruction, AmbiguityKind, Mode, Verdict,
};
use diamond_core::dgmodel::{ie_degree2_census, CensusKind};
use diamond_core::order::certify;
use diamond_core::rewrite::{confluence_oracle, is_irreducible};
use diamond_core::sample::{random_system, SampleParams};
use diamond_core::{Certificate, DeglexOrder, Field, MeasureCertificate, Poly, Rewriter, System, Word};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn xyz() -> Rewriter {
    let s = System::parse(&["x", "y", "z"], Field::Rational, &[("x*y*z", "x^3 + y^3 + z^3")]).unwrap();
    let a = s.alphabet();
    let phi = MeasureCertificate::new(vec![(a.word("x*y*z").unwrap(), 3), (a.word("y").unwrap(), 1)])
        .unwrap();
    Rewriter::new(s, Certificate::Measure(phi)).unwrap()
}

fn cube() -> Rewriter {
    let s = System::parse(&["x", "y", "z"], Field::Rational, &[("x^3", "x*y*z - y^3 - z^3")]).unwrap();
    let o = DeglexOrder::unit(3).with_order(&[2, 1, 0]).unwrap();
    Rewriter::new(s, Certificate::Deglex(o)).unwrap()
}

fn random_rewriters(seed: u64, n: usize) -> Vec<Rewriter> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let (s, o) = random_system(&mut rng, SampleParams::default());
            Rewriter::new(s, Certificate::Deglex(o)).unwrap()
        })
        .collect()
}

fn random_poly(rng: &mut StdRng, s: &System, max_len: usize, terms: usize) -> Poly {
    let f = s.field();
    let n = s.alphabet().len() as u32;
    let mut p = Poly::zero(f);
    for _ in 0..terms {
        let len = rng.gen_range(0..=max_len);
        let w = Word::new((0..len).map(|_| rng.gen_range(0..n)).collect());
        p.add_term(w, f.from_i64(rng.gen_range(-3..=3)));
    }
    p
}

#[test]
fn xyz_example() {
    let rw = xyz();
    assert!(certify(rw.system(), rw.certificate()).unwrap().is_certified());
    let report = check_convergence(&rw, Mode::Diamond).unwrap();
    assert_eq!(report.verdict, Verdict::Convergent);
    assert!(report.ambiguities.is_empty());
    let s = rw.system();
    let u = s.alphabet().parse_poly("x*y*z", Field::Rational).unwrap();
    assert_eq!(s.show(&rw.reduce(&u).unwrap()), "x^3 + y^3 + z^3");
    // a word with two non-overlapping occurrences
    let u = s.alphabet().parse_poly("x*y*z*x*y*z", Field::Rational).unwrap();
    let (nf, trace) = rw.normal_form(&u).unwrap();
    assert!(is_irreducible(s, &nf));
    assert!(trace.witness_holds(s));
}

#[test]
fn cube_example() {
    let rw = cube();
    let s = rw.system();
    let ov = find_overlaps(s);
    let census: Vec<(String, bool)> = ov.iter().map(|a| (s.show_word(&a.grade), a.minimal)).collect();
    assert_eq!(census, [("x^4".to_string(), true), ("x^5".to_string(), false)]);

    let tri = check_convergence(&rw, Mode::Triangle).unwrap();
    assert_eq!(tri.verdict, Verdict::NotConvergent);
    assert_eq!(tri.ambiguities.len(), 1);
    assert_eq!(s.show_word(&tri.ambiguities[0].ambiguity.grade), "x^4");
    let r = &tri.ambiguities[0].residue;
    assert!(!r.is_zero() && is_irreducible(s, r));

    let dia = check_convergence(&rw, Mode::Diamond).unwrap();
    assert_eq!(dia.verdict, Verdict::NotConvergent);
    assert_eq!(dia.ambiguities[0].residue, *r);
}

#[test]
fn cube_completion_snapshot() {
    let rw = cube();
    let order = rw.certificate().as_deglex().unwrap().clone();
    let c = complete(rw.system(), &order, 3).unwrap();
    let s = &c.system;
    let rules: Vec<String> = s
        .rules()
        .iter()
        .map(|r| format!("{} -> {}", s.show_word(&r.lhs), s.show(&r.rhs)))
        .collect();
    assert_eq!(
        rules,
        [
            "x^3 -> x*y*z - y^3 - z^3",
            "x^2*y*z -> x*y^3 + x*y*z*x + x*z^3 - y^3*x - z^3*x",
            "x^2*y^3 -> -x^2*z^3 - x*y*z*x^2 + x*y*z*y*z + y^3*x^2 - y^4*z + z^3*x^2 - z^3*y*z",
        ]
    );
    assert_eq!(c.rounds, 1);
    assert!(c.report.is_convergent());
    assert_eq!(c.report.ambiguities.len(), 6);
    // independent confirmation on short words
    assert!(confluence_oracle(s, 7, 1_000_000).unwrap().witness.is_none());
    // the first added rule comes from the x^4 obstruction
    let first = &c.added[0];
    let x4 = &check_convergence(&rw, Mode::Triangle).unwrap().ambiguities[0].residue;
    assert_eq!(first.relation().scale(&x4.coeff(&first.lhs).unwrap().clone()), *x4);
}

#[test]
fn normal_forms_on_random_systems() {
    let mut rng = StdRng::seed_from_u64(99);
    for rw in random_rewriters(1, 120) {
        let s = rw.system();
        let convergent = check_convergence(&rw, Mode::Diamond).unwrap().is_convergent();
        for _ in 0..5 {
            let g = random_poly(&mut rng, s, 7, 5);
            let h = random_poly(&mut rng, s, 7, 5);
            let (nf, trace) = rw.normal_form(&g).unwrap();
            assert!(is_irreducible(s, &nf));
            assert_eq!(rw.reduce(&nf).unwrap(), nf);
            assert!(trace.witness_holds(s));
            assert!(trace.replay(s).unwrap());
            for step in &trace.steps {
                let host = &step.occurrence.host;
                let rhs = &s.rule(step.rule).rhs;
                for m in rhs.support() {
                    let to = m.sandwich(&step.occurrence.prefix, &step.occurrence.suffix);
                    assert!(rw.certificate().decreases(host, &to));
                }
            }
            if convergent {
                let lhs = rw.reduce(&g.add(&h)).unwrap();
                assert_eq!(lhs, nf.add(&rw.reduce(&h).unwrap()));
            }
        }
    }
}

#[test]
fn linearity_over_q_for_the_convergent_example() {
    let rw = xyz();
    let s = rw.system();
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..50 {
        let g = random_poly(&mut rng, s, 7, 4);
        let h = random_poly(&mut rng, s, 7, 4);
        let c = Field::Rational.fraction(&rng.gen_range(-5..=5).into(), &rng.gen_range(1..=5).into()).unwrap();
        let lhs = rw.reduce(&g.scale(&c).add(&h)).unwrap();
        let rhs = rw.reduce(&g).unwrap().scale(&c).add(&rw.reduce(&h).unwrap());
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn obstruction_identity() {
    let mut all = random_rewriters(2, 150);
    all.push(cube());
    for rw in &all {
        let s = rw.system();
        let f = s.field();
        for amb in all_ambiguities(s) {
            let sc = obstruction(s, &amb);
            let rel = |i: usize| s.rule(i).relation();
            let expect = match amb.kind {
                AmbiguityKind::Overlap => {
                    let left = rel(amb.outer).sandwich(&Word::empty(), &amb.a);
                    let right = rel(amb.inner).sandwich(&amb.b, &Word::empty());
                    let grade = Poly::word(f, amb.b.concat(&s.rule(amb.inner).lhs))
                        .sub(&Poly::word(f, s.rule(amb.outer).lhs.concat(&amb.a)));
                    assert!(grade.is_zero());
                    left.sub(&right).add(&grade)
                }
                AmbiguityKind::Inclusion => {
                    // f(u) - a f(u') b = a (u' - f(u')) b - (u - f(u))
                    rel(amb.inner).sandwich(&amb.a, &amb.b).sub(&rel(amb.outer))
                }
            };
            assert_eq!(sc, expect);
        }
    }
}

#[test]
fn reports_are_well_formed() {
    for rw in random_rewriters(3, 150) {
        let s = rw.system();
        let report = check_convergence(&rw, Mode::Diamond).unwrap();
        assert_eq!(report.is_convergent(), report.failures().next().is_none());
        let keys: Vec<_> = report
            .ambiguities
            .iter()
            .map(|c| (c.ambiguity.grade.clone(), c.ambiguity.kind))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        for c in &report.ambiguities {
            assert!(is_irreducible(s, &c.residue));
            assert!(c.trace.witness_holds(s));
        }
    }
}

#[test]
fn triangle_and_diamond_agree_on_minimal_systems() {
    let mut minimal = 0;
    for rw in random_rewriters(0x5eed, 200) {
        let s = rw.system();
        let dia = check_convergence(&rw, Mode::Diamond).unwrap();
        if !s.is_minimal() {
            assert!(check_convergence(&rw, Mode::Triangle).is_err());
            continue;
        }
        minimal += 1;
        let tri = check_convergence(&rw, Mode::Triangle).unwrap();
        assert_eq!(tri.verdict, dia.verdict);
        let d: BTreeSet<_> = dia.ambiguities.iter().map(|c| c.ambiguity.clone()).map(key).collect();
        for c in &tri.ambiguities {
            assert!(d.contains(&key(c.ambiguity.clone())));
        }
    }
    assert!(minimal > 50, "{minimal}");
}

fn key(a: diamond_core::ambiguity::Ambiguity) -> (Word, AmbiguityKind, usize, usize, usize) {
    (a.grade, a.kind, a.outer, a.inner, a.a.len())
}

#[test]
fn maurer_cartan_residual_on_every_ambiguity() {
    let mut all = random_rewriters(4, 150);
    all.push(cube());
    all.push(xyz());
    for rw in &all {
        let report = check_convergence(rw, Mode::Diamond).unwrap();
        let mut all_hold = true;
        for amb in all_ambiguities(rw.system()) {
            let mc = mc_residual(rw, &amb).unwrap();
            assert!(mc.residual.is_zero());
            assert!(mc.consistent());
            assert_eq!(mc.holds(), mc.residue.is_zero());
            all_hold &= mc.holds();
        }
        assert_eq!(all_hold, report.is_convergent());
    }
}

#[test]
fn census_matches_ambiguities() {
    let mut rng = StdRng::seed_from_u64(6);
    let mut systems: Vec<System> = (0..60)
        .map(|_| random_system(&mut rng, SampleParams::default()).0)
        .collect();
    systems.push(cube().system().clone());
    systems.push(System::parse(&["x"], Field::Rational, &[("x^3", "0"), ("x^5", "0")]).unwrap());
    systems.push(System::parse(&["x", "y"], Field::Rational, &[("x*y", "0"), ("x*x*y*x", "0")]).unwrap());
    for s in &systems {
        let len = 2 * s.max_lhs_len();
        let census: BTreeSet<_> = ie_degree2_census(s, len)
            .unwrap()
            .into_iter()
            .map(|(g, k, p)| {
                let k = match k {
                    CensusKind::Inclusion => AmbiguityKind::Inclusion,
                    CensusKind::Overlap => AmbiguityKind::Overlap,
                };
                (g, k, p)
            })
            .collect();
        let mut amb: Vec<_> = find_overlaps(s);
        amb.extend(find_inclusions(s));
        let amb: BTreeSet<_> = amb
            .into_iter()
            .map(|a| {
                let d = a.divisors(s);
                (a.grade, a.kind, d)
            })
            .collect();
        assert_eq!(census, amb, "{s:?}");
    }
}
