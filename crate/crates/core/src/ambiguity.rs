//! Ambiguities, their obstructions, and the convergence criteria built on them.
//!
//! An overlap `u = u'·a = b·u''` and an inclusion `u = a·u'·b` each index a
//! degree-two generator `c` of a resolution of the monomial algebra, with
//! `d(c) = b·e(u'') - e(u')·a` or `d(c) = e(u) - a·e(u')·b`. Its obstruction
//! replaces every `e(w)` by `f(w)`. A terminating system is convergent iff
//! every obstruction reduces to zero; the diamond mode tests all ambiguities,
//! the triangle mode only the minimal overlaps of a minimal system.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::freealg::{Poly, Scalar, Word};
use crate::order::{Certificate, DeglexOrder};
use crate::rewrite::{ReductionTrace, Rewriter, Rule, System};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AmbiguityKind {
    // Inclusion sorts first: at a given grade it involves the whole word.
    Inclusion,
    Overlap,
}

impl fmt::Display for AmbiguityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmbiguityKind::Inclusion => write!(f, "inclusion"),
            AmbiguityKind::Overlap => write!(f, "overlap"),
        }
    }
}

/// An overlap or inclusion ambiguity.
///
/// For an overlap, `outer` is the left rule `u'` and `inner` the right rule
/// `u''`, with `grade = u'·a = b·u''`. For an inclusion, `outer` is `u`
/// itself and `inner` is `u'`, with `grade = a·u'·b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ambiguity {
    pub kind: AmbiguityKind,
    pub grade: Word,
    pub outer: usize,
    pub inner: usize,
    pub a: Word,
    pub b: Word,
    /// Overlaps only: the grade has exactly two lhs occurrences.
    pub minimal: bool,
}

impl Ambiguity {
    /// The two lhs occurrences as `(start, length)`, sorted.
    pub fn divisors(&self, system: &System) -> [(usize, usize); 2] {
        let lo = system.rule(self.outer).lhs.len();
        let li = system.rule(self.inner).lhs.len();
        let mut d = match self.kind {
            AmbiguityKind::Overlap => [(0, lo), (self.b.len(), li)],
            AmbiguityKind::Inclusion => [(0, lo), (self.a.len(), li)],
        };
        d.sort();
        d
    }

    /// `d(c)` as a combination of `a·e(w)·b`.
    pub fn boundary(&self, system: &System) -> ShaDegreeOne {
        let one = system.field().one();
        let minus = one.neg();
        let e = Word::empty();
        let terms = match self.kind {
            AmbiguityKind::Overlap => vec![
                (one, self.b.clone(), self.inner, e.clone()),
                (minus, e, self.outer, self.a.clone()),
            ],
            AmbiguityKind::Inclusion => vec![
                (one, e.clone(), self.outer, e),
                (minus, self.a.clone(), self.inner, self.b.clone()),
            ],
        };
        ShaDegreeOne { terms }
    }

    fn sort_key(&self) -> (&Word, AmbiguityKind, usize, usize, usize, usize) {
        (&self.grade, self.kind, self.outer, self.inner, self.a.len(), self.b.len())
    }

    pub fn describe(&self, system: &System) -> String {
        let s = |w: &Word| system.show_word(w);
        let lo = &system.rule(self.outer).lhs;
        let li = &system.rule(self.inner).lhs;
        match self.kind {
            AmbiguityKind::Overlap => format!(
                "overlap {} = ({})·{} = {}·({})",
                s(&self.grade),
                s(lo),
                s(&self.a),
                s(&self.b),
                s(li)
            ),
            AmbiguityKind::Inclusion => format!(
                "inclusion {} = {}·({})·{}",
                s(&self.grade),
                s(&self.a),
                s(li),
                s(&self.b)
            ),
        }
    }
}

fn sort_ambiguities(v: &mut [Ambiguity]) {
    v.sort_by(|x, y| x.sort_key().cmp(&y.sort_key()));
}

/// Every overlap `u'·s⁻¹·u''` where `s` is a proper nonempty suffix of `u'`
/// and a proper prefix of `u''` (self-overlaps included).
pub fn find_overlaps(system: &System) -> Vec<Ambiguity> {
    let mut out = Vec::new();
    for (i, left) in system.rules().iter().enumerate() {
        for (j, right) in system.rules().iter().enumerate() {
            let (l, r) = (&left.lhs, &right.lhs);
            for k in 1..l.len().min(r.len()) {
                if l.letters()[l.len() - k..] != r.letters()[..k] {
                    continue;
                }
                let a = r.suffix_from(k);
                let b = l.prefix(l.len() - k);
                let grade = l.concat(&a);
                let minimal = system.count_divisors(&grade) == 2;
                out.push(Ambiguity {
                    kind: AmbiguityKind::Overlap,
                    grade,
                    outer: i,
                    inner: j,
                    a,
                    b,
                    minimal,
                });
            }
        }
    }
    sort_ambiguities(&mut out);
    out.dedup();
    out
}

/// One inclusion per occurrence of a lhs inside a different, longer lhs.
pub fn find_inclusions(system: &System) -> Vec<Ambiguity> {
    let mut out = Vec::new();
    for (i, outer) in system.rules().iter().enumerate() {
        for (j, inner) in system.rules().iter().enumerate() {
            if i == j {
                continue;
            }
            for start in outer.lhs.positions_of(&inner.lhs) {
                out.push(Ambiguity {
                    kind: AmbiguityKind::Inclusion,
                    grade: outer.lhs.clone(),
                    outer: i,
                    inner: j,
                    a: outer.lhs.prefix(start),
                    b: outer.lhs.suffix_from(start + inner.lhs.len()),
                    minimal: false,
                });
            }
        }
    }
    sort_ambiguities(&mut out);
    out
}

pub fn all_ambiguities(system: &System) -> Vec<Ambiguity> {
    let mut v = find_overlaps(system);
    v.extend(find_inclusions(system));
    sort_ambiguities(&mut v);
    v
}

/// `S_c`: overlap `b·f(u'') - f(u')·a`, inclusion `f(u) - a·f(u')·b`.
pub fn obstruction(system: &System, amb: &Ambiguity) -> Poly {
    amb.boundary(system).apply_f(system).neg()
}

/// A homological-degree-one element `Σ c · a·e(w)·b` of the Shafarevich complex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ShaDegreeOne {
    pub terms: Vec<(Scalar, Word, usize, Word)>,
}

impl ShaDegreeOne {
    /// The monomial differential `e(w) ↦ w`.
    pub fn apply_d(&self, system: &System) -> Poly {
        let mut out = Poly::zero(system.field());
        for (c, a, r, b) in &self.terms {
            out.add_term(system.rule(*r).lhs.sandwich(a, b), c.clone());
        }
        out
    }

    /// The perturbation `e(w) ↦ -f(w)`.
    pub fn apply_f(&self, system: &System) -> Poly {
        let mut out = Poly::zero(system.field());
        for (c, a, r, b) in &self.terms {
            out.add_sandwich(&c.neg(), a, &system.rule(*r).rhs, b);
        }
        out
    }

    /// Grades `a·w·b` of the terms.
    pub fn grades<'a>(&'a self, system: &'a System) -> impl Iterator<Item = Word> + 'a {
        self.terms
            .iter()
            .map(|(_, a, r, b)| system.rule(*r).lhs.sandwich(a, b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Diamond,
    Triangle,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Diamond => write!(f, "diamond"),
            Mode::Triangle => write!(f, "triangle"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Convergent,
    NotConvergent,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Convergent => write!(f, "Convergent"),
            Verdict::NotConvergent => write!(f, "NotConvergent"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckedAmbiguity {
    pub ambiguity: Ambiguity,
    pub obstruction: Poly,
    pub residue: Poly,
    pub trace: ReductionTrace,
}

#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub mode: Mode,
    pub verdict: Verdict,
    /// Sorted by grade, then kind.
    pub ambiguities: Vec<CheckedAmbiguity>,
}

impl ConvergenceReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckedAmbiguity> {
        self.ambiguities.iter().filter(|a| !a.residue.is_zero())
    }

    pub fn is_convergent(&self) -> bool {
        self.verdict == Verdict::Convergent
    }
}

/// The ambiguities a mode examines.
pub fn ambiguities_for(system: &System, mode: Mode) -> Result<Vec<Ambiguity>> {
    match mode {
        Mode::Diamond => Ok(all_ambiguities(system)),
        Mode::Triangle => {
            if !system.is_minimal() {
                return Err(Error::NotMinimal(
                    "the triangle criterion needs a minimal system".into(),
                ));
            }
            Ok(find_overlaps(system).into_iter().filter(|a| a.minimal).collect())
        }
    }
}

/// Reduces the obstruction of every ambiguity the mode examines.
pub fn check_convergence(rw: &Rewriter, mode: Mode) -> Result<ConvergenceReport> {
    let system = rw.system();
    let ambiguities = ambiguities_for(system, mode)?
        .into_iter()
        .map(|amb| {
            let obstruction = obstruction(system, &amb);
            let (residue, trace) = rw.normal_form(&obstruction)?;
            Ok(CheckedAmbiguity {
                ambiguity: amb,
                obstruction,
                residue,
                trace,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let verdict = if ambiguities.iter().all(|a| a.residue.is_zero()) {
        Verdict::Convergent
    } else {
        Verdict::NotConvergent
    };
    Ok(ConvergenceReport {
        mode,
        verdict,
        ambiguities,
    })
}

/// The square-zero condition `(d + F)² = 0` evaluated on the degree-two
/// generator of an ambiguity, with `F(e(w)) = -f(w)` and `F(c)` read off the
/// reduction trace of the obstruction.
#[derive(Debug, Clone)]
pub struct McResidual {
    pub ambiguity: Ambiguity,
    pub obstruction: Poly,
    pub residue: Poly,
    pub trace: ReductionTrace,
    /// `Σ coeff · a'·(w' - f(w'))·b'` over the trace.
    pub combination: Poly,
    /// `S_c - combination - residue`; zero whenever the trace is sound.
    pub residual: Poly,
    /// `d(d(c))`
    pub dd: Poly,
    /// `F(d(c)) = -S_c`
    pub f_dc: Poly,
    /// `F(c) = Σ coeff · a'·e(w')·b'`
    pub lift: ShaDegreeOne,
    /// `(d + F)(F(c))`
    pub d_plus_f_lift: Poly,
    /// `dd + f_dc + d_plus_f_lift`; equals `-residue`.
    pub mc_value: Poly,
    /// Every term of `F(c)` lies strictly below the grade under the certificate.
    pub filtered: bool,
}

impl McResidual {
    /// The square-zero condition holds on this generator.
    pub fn holds(&self) -> bool {
        self.mc_value.is_zero()
    }

    /// All internal identities check out exactly.
    pub fn consistent(&self) -> bool {
        self.residual.is_zero()
            && self.dd.is_zero()
            && self.mc_value == self.residue.neg()
            && self.filtered
    }
}

pub fn mc_residual(rw: &Rewriter, amb: &Ambiguity) -> Result<McResidual> {
    let system = rw.system();
    let dc = amb.boundary(system);
    let obstruction = obstruction(system, amb);
    let (residue, trace) = rw.normal_form(&obstruction)?;
    let combination = trace.combination(system);
    let residual = obstruction.sub(&combination).sub(&residue);

    let dd = dc.apply_d(system);
    let f_dc = dc.apply_f(system);
    let lift = ShaDegreeOne {
        terms: trace
            .steps
            .iter()
            .map(|s| {
                (
                    s.coeff.clone(),
                    s.occurrence.prefix.clone(),
                    s.rule,
                    s.occurrence.suffix.clone(),
                )
            })
            .collect(),
    };
    let d_plus_f_lift = lift.apply_d(system).add(&lift.apply_f(system));
    let mc_value = dd.add(&f_dc).add(&d_plus_f_lift);
    let filtered = lift
        .grades(system)
        .all(|g| rw.certificate().decreases(&amb.grade, &g));
    Ok(McResidual {
        ambiguity: amb.clone(),
        obstruction,
        residue,
        trace,
        combination,
        residual,
        dd,
        f_dc,
        lift,
        d_plus_f_lift,
        mc_value,
        filtered,
    })
}

#[derive(Debug, Clone)]
pub struct Completion {
    pub system: System,
    pub report: ConvergenceReport,
    /// Rounds that added at least one rule.
    pub rounds: usize,
    pub added: Vec<Rule>,
    pub notes: Vec<String>,
}

/// Knuth–Bendix style completion under a deglex order: every nonzero residue
/// `r` becomes a rule `lead(r) ↦ lead(r) - r / lc(r)`.
pub fn complete(system: &System, order: &DeglexOrder, max_rounds: usize) -> Result<Completion> {
    let cert = Certificate::Deglex(order.clone());
    let mut rw = Rewriter::new(system.clone(), cert.clone())?;
    let mut added = Vec::new();
    let mut notes = Vec::new();
    let mut rounds = 0;
    loop {
        let report = check_convergence(&rw, Mode::Diamond)?;
        if report.is_convergent() || rounds >= max_rounds {
            return Ok(Completion {
                system: rw.system().clone(),
                report,
                rounds,
                added,
                notes,
            });
        }
        rounds += 1;
        let residues: BTreeSet<Poly> = report.failures().map(|f| f.residue.clone()).collect();
        for r in residues {
            let r = rw.reduce(&r)?;
            if r.is_zero() {
                continue;
            }
            let (lead, lc) = r
                .terms()
                .max_by(|x, y| order.compare(x.0, y.0))
                .map(|(w, c)| (w.clone(), c.clone()))
                .expect("nonzero");
            if lead.is_empty() {
                notes.push("a nonzero constant lies in the ideal; the quotient is zero".into());
                return Ok(Completion {
                    system: rw.system().clone(),
                    report,
                    rounds,
                    added,
                    notes,
                });
            }
            if lead.len() == 1 {
                notes.push(format!(
                    "round {rounds}: generator {} becomes expressible by the others",
                    rw.system().show_word(&lead)
                ));
            }
            let monic = r.scale(&lc.inv());
            let rhs = Poly::word(system.field(), lead.clone()).sub(&monic);
            let rule = Rule::new(lead, rhs);
            let next = rw.system().with_rule(rule.clone())?;
            rw = Rewriter::new(next, cert.clone())?.with_fuse(rw.fuse());
            added.push(rule);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::Field;
    use crate::order::MeasureCertificate;

    fn xyz() -> Rewriter {
        let sys =
            System::parse(&["x", "y", "z"], Field::Rational, &[("x*y*z", "x^3 + y^3 + z^3")])
                .unwrap();
        let a = sys.alphabet();
        let phi = MeasureCertificate::new(vec![
            (a.word("x*y*z").unwrap(), 3),
            (a.word("y").unwrap(), 1),
        ])
        .unwrap();
        Rewriter::new(sys, Certificate::Measure(phi)).unwrap()
    }

    fn cube() -> Rewriter {
        let sys = System::parse(&["x", "y", "z"], Field::Rational, &[("x^3", "x*y*z - y^3 - z^3")])
            .unwrap();
        let order = DeglexOrder::unit(3).with_order(&[2, 1, 0]).unwrap();
        Rewriter::new(sys, Certificate::Deglex(order)).unwrap()
    }

    fn grades(sys: &System, v: &[Ambiguity]) -> Vec<String> {
        v.iter().map(|a| sys.show_word(&a.grade)).collect()
    }

    #[test]
    fn overlap_examples() {
        let rw = xyz();
        assert!(find_overlaps(rw.system()).is_empty());

        let rw = cube();
        let sys = rw.system();
        let ov = find_overlaps(sys);
        assert_eq!(grades(sys, &ov), ["x^4", "x^5"]);
        assert!(ov[0].minimal && !ov[1].minimal);
        assert_eq!((sys.show_word(&ov[0].a), sys.show_word(&ov[0].b)), ("x".into(), "x".into()));
        assert_eq!((sys.show_word(&ov[1].a), sys.show_word(&ov[1].b)), ("x^2".into(), "x^2".into()));

        let swap = System::parse(&["x", "y"], Field::Rational, &[("x*y", "0"), ("y*x", "0")]).unwrap();
        let ov = find_overlaps(&swap);
        assert_eq!(grades(&swap, &ov), ["x*y*x", "y*x*y"]);
        assert!(ov.iter().all(|a| a.minimal));
    }

    #[test]
    fn inclusion_examples() {
        let f = Field::Rational;
        let s = System::parse(&["x"], f, &[("x^3", "0"), ("x^5", "0")]).unwrap();
        assert_eq!(find_inclusions(&s).len(), 3);
        assert!(find_inclusions(cube().system()).is_empty());
        let s = System::parse(&["x", "y"], f, &[("x*y", "0"), ("x*x*y*x", "0")]).unwrap();
        let inc = find_inclusions(&s);
        assert_eq!(inc.len(), 1);
        assert_eq!((s.show_word(&inc[0].a), s.show_word(&inc[0].b)), ("x".into(), "x".into()));
    }

    #[test]
    fn cube_obstruction() {
        let rw = cube();
        let sys = rw.system();
        let ov = find_overlaps(sys);
        let s = obstruction(sys, &ov[0]);
        let want = sys
            .alphabet()
            .parse_poly(
                "x*x*y*z - x*y^3 - x*z^3 - x*y*z*x + y^3*x + z^3*x",
                Field::Rational,
            )
            .unwrap();
        assert_eq!(s, want);
    }

    #[test]
    fn monomial_obstructions_vanish() {
        let s = System::parse(&["x", "y"], Field::Rational, &[("x*y*x", "0"), ("x*y", "0")]).unwrap();
        for amb in all_ambiguities(&s) {
            assert!(obstruction(&s, &amb).is_zero());
        }
    }

    #[test]
    fn inclusion_consistent_rhs_has_zero_obstruction() {
        // f(xyx) = x·f(y)·x... here f(y) = z, f(xyx) = xzx
        let s = System::parse(&["x", "y", "z"], Field::Rational, &[("x*y*x", "x*z*x"), ("y", "z")])
            .unwrap();
        let inc = find_inclusions(&s);
        assert_eq!(inc.len(), 1);
        assert!(obstruction(&s, &inc[0]).is_zero());
    }

    #[test]
    fn convergence_examples() {
        let report = check_convergence(&xyz(), Mode::Diamond).unwrap();
        assert!(report.is_convergent());
        assert!(report.ambiguities.is_empty());

        let rw = cube();
        let tri = check_convergence(&rw, Mode::Triangle).unwrap();
        assert_eq!(tri.verdict, Verdict::NotConvergent);
        assert_eq!(tri.ambiguities.len(), 1);
        let r = &tri.ambiguities[0].residue;
        assert!(!r.is_zero());
        assert!(crate::rewrite::is_irreducible(rw.system(), r));
        let dia = check_convergence(&rw, Mode::Diamond).unwrap();
        assert_eq!(dia.verdict, Verdict::NotConvergent);
        assert_eq!(dia.ambiguities.len(), 2);

        let empty = System::parse(&["x"], Field::Rational, &[]).unwrap();
        let rw = Rewriter::new(empty, Certificate::Deglex(DeglexOrder::unit(1))).unwrap();
        assert!(check_convergence(&rw, Mode::Diamond).unwrap().is_convergent());
    }

    #[test]
    fn triangle_refuses_non_minimal() {
        let s = System::parse(&["x"], Field::Rational, &[("x^3", "0"), ("x^5", "0")]).unwrap();
        let rw = Rewriter::new(s, Certificate::Deglex(DeglexOrder::unit(1))).unwrap();
        assert!(matches!(
            check_convergence(&rw, Mode::Triangle),
            Err(Error::NotMinimal(_))
        ));
    }

    #[test]
    fn mc_residual_examples() {
        let rw = cube();
        let ov = find_overlaps(rw.system());
        let mc = mc_residual(&rw, &ov[0]).unwrap();
        assert!(mc.consistent());
        assert!(mc.residual.is_zero());
        assert!(!mc.residue.is_zero());
        assert!(!mc.holds());

        let s = System::parse(&["x"], Field::Rational, &[("x^3", "0")]).unwrap();
        let rw = Rewriter::new(s, Certificate::Deglex(DeglexOrder::unit(1))).unwrap();
        for amb in all_ambiguities(rw.system()) {
            let mc = mc_residual(&rw, &amb).unwrap();
            assert!(mc.obstruction.is_zero() && mc.trace.is_empty());
            assert!(mc.holds() && mc.consistent());
        }
    }

    #[test]
    fn completion_of_convergent_system_is_identity() {
        let s = System::parse(&["x", "y"], Field::Rational, &[("y*x", "x*y")]).unwrap();
        let c = complete(&s, &DeglexOrder::unit(2), 3).unwrap();
        assert_eq!(c.rounds, 0);
        assert!(c.report.is_convergent());
        assert_eq!(c.system, s);

        let m = System::parse(&["x"], Field::Rational, &[("x^3", "0")]).unwrap();
        let c = complete(&m, &DeglexOrder::unit(1), 3).unwrap();
        assert_eq!(c.rounds, 0);
        assert_eq!(c.system, m);
    }
}
