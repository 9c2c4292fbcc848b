//! Rewriting systems `w ↦ f(w)`, basic reductions and normal forms.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::freealg::{Alphabet, Field, Occurrence, Poly, Scalar, Word};
use crate::order::{certify, CertVerdict, Certificate};

/// Default bound on basic reductions per normal form computation.
pub const DEFAULT_FUSE: usize = 1_000_000;

/// A rule `lhs ↦ rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Poly,
}

impl Rule {
    pub fn new(lhs: Word, rhs: Poly) -> Rule {
        Rule { lhs, rhs }
    }

    /// The relation `lhs - rhs`.
    pub fn relation(&self) -> Poly {
        Poly::word(self.rhs.field(), self.lhs.clone()).sub(&self.rhs)
    }
}

/// The triple (X, W, f): generators, rule left-hand sides and their images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct System {
    alphabet: Alphabet,
    field: Field,
    rules: Vec<Rule>,
    minimal: bool,
    lhs_index: HashMap<Vec<u32>, usize>,
    lhs_lengths: Vec<usize>,
}

impl System {
    pub fn new(alphabet: Alphabet, field: Field, rules: Vec<Rule>) -> Result<System> {
        let n = alphabet.len() as u32;
        let mut lhs_index = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            let bad = |msg: &str| Error::InvalidRule {
                rule: i,
                msg: msg.to_string(),
            };
            if r.lhs.is_empty() {
                return Err(bad("empty left-hand side"));
            }
            if r.rhs.field() != field {
                return Err(Error::FieldMismatch(field, r.rhs.field()));
            }
            let out_of_range = |w: &Word| w.max_letter().is_some_and(|m| m >= n);
            if out_of_range(&r.lhs) || r.rhs.support().any(out_of_range) {
                return Err(bad("letter outside the alphabet"));
            }
            if r.rhs.coeff(&r.lhs).is_some() {
                return Err(bad("left-hand side occurs in its own right-hand side"));
            }
            if lhs_index.insert(r.lhs.letters().to_vec(), i).is_some() {
                return Err(bad("duplicate left-hand side"));
            }
        }
        let lhs_lengths: BTreeSet<usize> = rules.iter().map(|r| r.lhs.len()).collect();
        let minimal = rules.iter().all(|r| r.lhs.len() > 1)
            && rules.iter().enumerate().all(|(i, r)| {
                rules
                    .iter()
                    .enumerate()
                    .all(|(j, s)| i == j || !r.lhs.contains(&s.lhs))
            });
        Ok(System {
            alphabet,
            field,
            rules,
            minimal,
            lhs_index,
            lhs_lengths: lhs_lengths.into_iter().collect(),
        })
    }

    /// Parses `(lhs, rhs)` pairs of expressions over the alphabet.
    pub fn parse(generators: &[&str], field: Field, rules: &[(&str, &str)]) -> Result<System> {
        let alphabet = Alphabet::new(generators)?;
        let rules = rules
            .iter()
            .map(|(l, r)| {
                Ok(Rule::new(
                    alphabet.word(l)?,
                    alphabet.parse_poly(r, field)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        System::new(alphabet, field, rules)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, i: usize) -> &Rule {
        &self.rules[i]
    }

    /// No lhs of length one and no lhs divides another.
    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn is_monomial(&self) -> bool {
        self.rules.iter().all(|r| r.rhs.is_zero())
    }

    pub fn max_lhs_len(&self) -> usize {
        self.lhs_lengths.last().copied().unwrap_or(0)
    }

    /// The same left-hand sides with every `f(w) = 0`.
    pub fn monomial_part(&self) -> System {
        let rules = self
            .rules
            .iter()
            .map(|r| Rule::new(r.lhs.clone(), Poly::zero(self.field)))
            .collect();
        System::new(self.alphabet.clone(), self.field, rules).expect("valid by construction")
    }

    pub fn with_rule(&self, rule: Rule) -> Result<System> {
        let mut rules = self.rules.clone();
        rules.push(rule);
        System::new(self.alphabet.clone(), self.field, rules)
    }

    pub fn rule_index(&self, lhs: &[u32]) -> Option<usize> {
        self.lhs_index.get(lhs).copied()
    }

    /// Every `(rule, start)` with the rule's lhs occurring in `m` at `start`,
    /// sorted by rule index then position.
    pub fn matches(&self, m: &Word) -> Vec<(usize, usize)> {
        let letters = m.letters();
        let mut out = Vec::new();
        for &len in &self.lhs_lengths {
            if len > letters.len() {
                break;
            }
            for start in 0..=letters.len() - len {
                if let Some(&i) = self.lhs_index.get(&letters[start..start + len]) {
                    out.push((i, start));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Leftmost occurrence of the lowest-index rule that occurs in `m`.
    pub fn first_match(&self, m: &Word) -> Option<(usize, usize)> {
        let letters = m.letters();
        let mut best: Option<(usize, usize)> = None;
        for &len in &self.lhs_lengths {
            if len > letters.len() {
                break;
            }
            for start in 0..=letters.len() - len {
                if let Some(&i) = self.lhs_index.get(&letters[start..start + len]) {
                    if best.is_none_or(|b| (i, start) < b) {
                        best = Some((i, start));
                    }
                }
            }
        }
        best
    }

    pub fn is_reducible_word(&self, m: &Word) -> bool {
        let letters = m.letters();
        self.lhs_lengths.iter().any(|&len| {
            len <= letters.len() && letters.windows(len).any(|w| self.lhs_index.contains_key(w))
        })
    }

    /// Number of occurrences of left-hand sides in `m`, counted with position.
    pub fn count_divisors(&self, m: &Word) -> usize {
        self.matches(m).len()
    }

    pub fn show_word(&self, w: &Word) -> String {
        self.alphabet.show(w)
    }

    pub fn show(&self, p: &Poly) -> String {
        p.display(&self.alphabet).to_string()
    }
}

/// Applies the basic reduction for `occ` to `g`: the term on `occ.host` becomes
/// `a · f(w) · b`, every other term is left alone.
pub fn basic_reduction(g: &Poly, rule: &Rule, occ: &Occurrence) -> Result<Poly> {
    if occ.pattern != rule.lhs || occ.host != occ.pattern.sandwich(&occ.prefix, &occ.suffix) {
        return Err(Error::OccurrenceMismatch);
    }
    let Some(c) = g.coeff(&occ.host) else {
        return Ok(g.clone());
    };
    let c = c.clone();
    let mut out = g.clone();
    out.add_term(occ.host.clone(), c.neg());
    out.add_sandwich(&c, &occ.prefix, &rule.rhs, &occ.suffix);
    Ok(out)
}

/// True iff no word in the support contains a left-hand side.
pub fn is_irreducible(system: &System, g: &Poly) -> bool {
    g.support().all(|m| !system.is_reducible_word(m))
}

/// Words of length at most `max_length` avoiding every lhs, in deglex order.
pub fn irreducible_words(system: &System, max_length: usize) -> Vec<Word> {
    let n = system.alphabet().len() as u32;
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_length {
        let mut next = Vec::new();
        for w in &layer {
            for x in 0..n {
                let v = w.concat(&Word::letter(x));
                let bad = system.lhs_lengths.iter().any(|&len| {
                    len <= v.len() && system.lhs_index.contains_key(&v.letters()[v.len() - len..])
                });
                if !bad {
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// One basic reduction applied to a term with coefficient `coeff`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub rule: usize,
    pub occurrence: Occurrence,
    pub coeff: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub input: Poly,
    pub output: Poly,
    pub steps: Vec<Step>,
}

impl ReductionTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `Σ coeff · a · (w - f(w)) · b` over the steps.
    pub fn combination(&self, system: &System) -> Poly {
        let mut out = Poly::zero(self.input.field());
        for s in &self.steps {
            let rel = system.rule(s.rule).relation();
            out.add_sandwich(&s.coeff, &s.occurrence.prefix, &rel, &s.occurrence.suffix);
        }
        out
    }

    /// Checks `input - output = combination` by expansion.
    pub fn witness_holds(&self, system: &System) -> bool {
        self.input.sub(&self.output) == self.combination(system)
    }

    /// Re-applies the steps to `input` and compares with `output`.
    pub fn replay(&self, system: &System) -> Result<bool> {
        let mut g = self.input.clone();
        for s in &self.steps {
            if g.coeff(&s.occurrence.host) != Some(&s.coeff) {
                return Ok(false);
            }
            g = basic_reduction(&g, system.rule(s.rule), &s.occurrence)?;
        }
        Ok(g == self.output)
    }
}

/// A system together with a verified termination certificate.
#[derive(Debug, Clone)]
pub struct Rewriter {
    system: System,
    certificate: Certificate,
    fuse: usize,
}

impl Rewriter {
    /// Fails with [`Error::NotCertified`] unless the certificate checks.
    pub fn new(system: System, certificate: Certificate) -> Result<Rewriter> {
        let res = certify(&system, &certificate)?;
        if res.verdict != CertVerdict::Certified {
            let first = res
                .witnesses
                .first()
                .map(|w| w.describe(&system))
                .unwrap_or_default();
            return Err(Error::NotCertified(first));
        }
        Ok(Rewriter {
            system,
            certificate,
            fuse: DEFAULT_FUSE,
        })
    }

    pub fn with_fuse(mut self, fuse: usize) -> Rewriter {
        self.fuse = fuse;
        self
    }

    pub fn system(&self) -> &System {
        &self.system
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn fuse(&self) -> usize {
        self.fuse
    }

    /// Deterministic normal form: repeatedly rewrite the certificate-largest
    /// reducible term at the leftmost occurrence of its lowest-index rule.
    pub fn normal_form(&self, g: &Poly) -> Result<(Poly, ReductionTrace)> {
        let mut cur = g.clone();
        let mut steps = Vec::new();
        loop {
            let target = cur
                .terms()
                .filter(|(m, _)| self.system.is_reducible_word(m))
                .max_by(|(a, _), (b, _)| self.certificate.strategy_cmp(a, b));
            let Some((m, c)) = target else { break };
            if steps.len() >= self.fuse {
                return Err(Error::FuseExceeded(steps.len()));
            }
            let (m, c) = (m.clone(), c.clone());
            let (rule, start) = self.system.first_match(&m).expect("reducible");
            let occ = Occurrence::at(&self.system.rule(rule).lhs, &m, start);
            cur.add_term(m, c.neg());
            cur.add_sandwich(&c, &occ.prefix, &self.system.rule(rule).rhs, &occ.suffix);
            steps.push(Step {
                rule,
                occurrence: occ,
                coeff: c,
            });
        }
        let trace = ReductionTrace {
            input: g.clone(),
            output: cur.clone(),
            steps,
        };
        Ok((cur, trace))
    }

    pub fn reduce(&self, g: &Poly) -> Result<Poly> {
        self.normal_form(g).map(|(p, _)| p)
    }
}

/// Every irreducible result reachable from `u` by some sequence of basic
/// reductions, found by exhaustive breadth-first search.
///
/// `state_fuse` bounds the number of distinct intermediate polynomials.
pub fn reduction_graph_oracle(
    system: &System,
    u: &Word,
    state_fuse: usize,
) -> Result<BTreeSet<Poly>> {
    oracle_from(system, &Poly::word(system.field(), u.clone()), state_fuse, usize::MAX)
}

/// As [`reduction_graph_oracle`] from an arbitrary polynomial, stopping early
/// once `stop_after` distinct normal forms have been seen.
pub fn oracle_from(
    system: &System,
    start: &Poly,
    state_fuse: usize,
    stop_after: usize,
) -> Result<BTreeSet<Poly>> {
    let mut seen: HashSet<Poly> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut results = BTreeSet::new();
    seen.insert(start.clone());
    queue.push_back(start.clone());
    while let Some(g) = queue.pop_front() {
        let mut irreducible = true;
        for (m, c) in g.terms() {
            for (rule, start) in system.matches(m) {
                irreducible = false;
                let r = system.rule(rule);
                let mut next = g.clone();
                next.add_term(m.clone(), c.neg());
                next.add_sandwich(c, &m.prefix(start), &r.rhs, &m.suffix_from(start + r.lhs.len()));
                if seen.insert(next.clone()) {
                    if seen.len() > state_fuse {
                        return Err(Error::FuseExceeded(seen.len()));
                    }
                    queue.push_back(next);
                }
            }
        }
        if irreducible {
            results.insert(g);
            if results.len() >= stop_after {
                break;
            }
        }
    }
    Ok(results)
}

/// Two different normal forms of one word, each reached from a different
/// first step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleWitness {
    pub word: Word,
    /// `(rule, start)` of the two first steps.
    pub steps: [(usize, usize); 2],
    /// The one-step reducts.
    pub reducts: [Poly; 2],
    /// Their (unique) normal forms, which differ.
    pub forms: [Poly; 2],
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    /// Words shown to have a unique normal form.
    pub unique: usize,
    pub witness: Option<OracleWitness>,
}

/// Decides whether every word of length at most `max_length` has a unique
/// normal form, without looking at ambiguities.
///
/// Works by well-founded induction on the termination order: once every word
/// below `u` has a unique normal form, so does every combination of them, and
/// the normal forms reachable from `u` are exactly those of its one-step
/// reducts. So `u` has a unique normal form iff all its one-step reducts
/// agree. The search stops at the first word where they do not; both forms in
/// the witness are then genuinely reachable from it.
pub fn confluence_oracle(system: &System, max_length: usize, fuse: usize) -> Result<OracleReport> {
    let mut memo: HashMap<Word, Poly> = HashMap::new();
    let field = system.field();
    let combine = |memo: &HashMap<Word, Poly>, p: &Poly| {
        let mut out = Poly::zero(field);
        for (w, c) in p.terms() {
            out.add_sandwich(c, &Word::empty(), &memo[w], &Word::empty());
        }
        out
    };
    let mut unique = 0;
    for u in system.alphabet().all_words(max_length) {
        let mut stack = vec![u.clone()];
        while let Some(v) = stack.last().cloned() {
            if memo.contains_key(&v) {
                stack.pop();
                continue;
            }
            let matches = system.matches(&v);
            if matches.is_empty() {
                memo.insert(v.clone(), Poly::word(field, v));
                stack.pop();
                continue;
            }
            let reducts: Vec<Poly> = matches
                .iter()
                .map(|&(r, start)| {
                    let rule = system.rule(r);
                    rule.rhs
                        .sandwich(&v.prefix(start), &v.suffix_from(start + rule.lhs.len()))
                })
                .collect();
            let missing: BTreeSet<&Word> = reducts
                .iter()
                .flat_map(|p| p.support())
                .filter(|w| !memo.contains_key(*w))
                .collect();
            if !missing.is_empty() {
                if stack.len() + missing.len() > fuse {
                    return Err(Error::FuseExceeded(stack.len()));
                }
                stack.extend(missing.into_iter().cloned());
                continue;
            }
            let forms: Vec<Poly> = reducts.iter().map(|p| combine(&memo, p)).collect();
            if let Some(j) = forms.iter().position(|f| *f != forms[0]) {
                return Ok(OracleReport {
                    unique,
                    witness: Some(OracleWitness {
                        word: v,
                        steps: [matches[0], matches[j]],
                        reducts: [reducts[0].clone(), reducts[j].clone()],
                        forms: [forms[0].clone(), forms[j].clone()],
                    }),
                });
            }
            memo.insert(v, forms[0].clone());
            stack.pop();
        }
        unique += 1;
    }
    Ok(OracleReport {
        unique,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{DeglexOrder, MeasureCertificate};

    fn xyz_system() -> System {
        System::parse(&["x", "y", "z"], Field::Rational, &[("x*y*z", "x^3 + y^3 + z^3")]).unwrap()
    }

    fn cube_system() -> System {
        System::parse(&["x", "y", "z"], Field::Rational, &[("x^3", "x*y*z - y^3 - z^3")]).unwrap()
    }

    fn phi(sys: &System) -> Certificate {
        let a = sys.alphabet();
        Certificate::Measure(
            MeasureCertificate::new(vec![(a.word("x*y*z").unwrap(), 3), (a.word("y").unwrap(), 1)])
                .unwrap(),
        )
    }

    fn zyx(sys: &System) -> Certificate {
        assert_eq!(sys.alphabet().len(), 3);
        Certificate::Deglex(DeglexOrder::unit(3).with_order(&[2, 1, 0]).unwrap())
    }

    #[test]
    fn construction_validates() {
        let f = Field::Rational;
        assert!(System::parse(&["x"], f, &[("x", "x")]).is_err());
        assert!(System::parse(&["x"], f, &[("x^2", "x"), ("x^2", "0")]).is_err());
        assert!(System::parse(&["x"], f, &[("1", "x")]).is_err());
        let mixed = Rule::new(Word::letter(0), Poly::zero(Field::Prime(2)));
        assert!(System::new(Alphabet::new(&["x"]).unwrap(), f, vec![mixed]).is_err());
        let out = Rule::new(Word::letter(3), Poly::zero(f));
        assert!(System::new(Alphabet::new(&["x"]).unwrap(), f, vec![out]).is_err());
    }

    #[test]
    fn minimal_flag() {
        let f = Field::Rational;
        assert!(System::parse(&["x", "y"], f, &[("x*y", "0"), ("y*x", "0")]).unwrap().is_minimal());
        assert!(!System::parse(&["x", "y"], f, &[("x", "0")]).unwrap().is_minimal());
        assert!(!System::parse(&["x", "y"], f, &[("x*y", "0"), ("x*x*y*x", "0")])
            .unwrap()
            .is_minimal());
    }

    #[test]
    fn basic_reduction_examples() {
        let sys = xyz_system();
        let a = sys.alphabet();
        let g = a.parse_poly("x*y*z", Field::Rational).unwrap();
        let occ = Occurrence::at(&sys.rule(0).lhs, &sys.rule(0).lhs, 0);
        let got = basic_reduction(&g, sys.rule(0), &occ).unwrap();
        assert_eq!(sys.show(&got), "x^3 + y^3 + z^3");

        let g = a.parse_poly("y*z*x", Field::Rational).unwrap();
        assert_eq!(basic_reduction(&g, sys.rule(0), &occ).unwrap(), g);

        let cube = cube_system();
        let x4 = a.word("x^4").unwrap();
        let g = a.parse_poly("2*x^4", Field::Rational).unwrap();
        let occ = Occurrence::at(&cube.rule(0).lhs, &x4, 1);
        let got = basic_reduction(&g, cube.rule(0), &occ).unwrap();
        let want = a
            .parse_poly("2*x*x*y*z - 2*x*y^3 - 2*x*z^3", Field::Rational)
            .unwrap();
        assert_eq!(got, want);

        let wrong = Occurrence::at(&x4, &x4, 0);
        assert!(basic_reduction(&g, cube.rule(0), &wrong).is_err());
    }

    #[test]
    fn normal_form_examples() {
        let sys = xyz_system();
        let rw = Rewriter::new(sys.clone(), phi(&sys)).unwrap();
        let a = sys.alphabet();
        let (nf, trace) = rw
            .normal_form(&a.parse_poly("x*y*z", Field::Rational).unwrap())
            .unwrap();
        assert_eq!(sys.show(&nf), "x^3 + y^3 + z^3");
        assert_eq!(trace.len(), 1);
        assert!(trace.witness_holds(&sys));

        let g = a.parse_poly("y^3 + z^3", Field::Rational).unwrap();
        let (nf, trace) = rw.normal_form(&g).unwrap();
        assert_eq!(nf, g);
        assert!(trace.is_empty());

        let cube = cube_system();
        let rw = Rewriter::new(cube.clone(), zyx(&cube)).unwrap();
        let (nf, trace) = rw
            .normal_form(&a.parse_poly("x^4", Field::Rational).unwrap())
            .unwrap();
        // leftmost occurrence: x^4 = (x^3)·x
        assert_eq!(trace.steps[0].occurrence.position(), 0);
        let want = a
            .parse_poly("x*y*z*x - y^3*x - z^3*x", Field::Rational)
            .unwrap();
        assert_eq!(nf, want);
        assert!(is_irreducible(&cube, &nf));
        assert!(trace.witness_holds(&cube));
        assert!(trace.replay(&cube).unwrap());
    }

    #[test]
    fn fuse_trips() {
        let sys = xyz_system();
        let rw = Rewriter::new(sys.clone(), phi(&sys)).unwrap().with_fuse(0);
        let g = sys.alphabet().parse_poly("x*y*z", Field::Rational).unwrap();
        assert!(matches!(rw.normal_form(&g), Err(Error::FuseExceeded(0))));
    }

    #[test]
    fn uncertified_is_refused() {
        let sys = xyz_system();
        let deglex = Certificate::Deglex(DeglexOrder::unit(3));
        assert!(matches!(Rewriter::new(sys, deglex), Err(Error::NotCertified(_))));
    }

    #[test]
    fn irreducibility() {
        let sys = xyz_system();
        let a = sys.alphabet();
        assert!(!is_irreducible(&sys, &a.parse_poly("x*y*z", Field::Rational).unwrap()));
        assert!(is_irreducible(&sys, &a.parse_poly("y^3 + z^3", Field::Rational).unwrap()));
        assert!(is_irreducible(&sys, &Poly::zero(Field::Rational)));
    }

    #[test]
    fn irreducible_word_enumeration() {
        let f = Field::Rational;
        let one = System::parse(&["x"], f, &[("x^3", "0")]).unwrap();
        let a = one.alphabet();
        assert_eq!(
            irreducible_words(&one, 5),
            vec![Word::empty(), a.word("x").unwrap(), a.word("x^2").unwrap()]
        );
        let free = System::parse(&["x", "y"], f, &[]).unwrap();
        assert_eq!(irreducible_words(&free, 2).len(), 7);
        let ws = irreducible_words(&xyz_system(), 3);
        assert_eq!(ws.len(), 39);
        assert!(ws.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn oracle_examples() {
        let sys = xyz_system();
        let a = sys.alphabet();
        let res = reduction_graph_oracle(&sys, &a.word("x*y*z").unwrap(), 1000).unwrap();
        assert_eq!(res.len(), 1);
        assert_eq!(sys.show(res.iter().next().unwrap()), "x^3 + y^3 + z^3");

        let u = a.word("y*z*x").unwrap();
        let res = reduction_graph_oracle(&sys, &u, 1000).unwrap();
        assert_eq!(res.into_iter().collect::<Vec<_>>(), vec![Poly::word(Field::Rational, u)]);

        let cube = cube_system();
        let res = reduction_graph_oracle(&cube, &a.word("x^4").unwrap(), 1000).unwrap();
        assert_eq!(res.len(), 2);
    }

    #[test]
    fn oracle_fuse() {
        let cube = cube_system();
        let u = cube.alphabet().word("x^4").unwrap();
        assert!(matches!(
            reduction_graph_oracle(&cube, &u, 1),
            Err(Error::FuseExceeded(_))
        ));
    }

    #[test]
    fn confluence_oracle_examples() {
        let rep = confluence_oracle(&xyz_system(), 6, 100_000).unwrap();
        assert!(rep.witness.is_none());
        assert_eq!(rep.unique, 1093);

        let cube = cube_system();
        let rep = confluence_oracle(&cube, 5, 100_000).unwrap();
        let w = rep.witness.unwrap();
        assert_eq!(cube.show_word(&w.word), "x^4");
        assert_eq!(w.steps, [(0, 0), (0, 1)]);
        assert_ne!(w.forms[0], w.forms[1]);
        let both = reduction_graph_oracle(&cube, &w.word, 1000).unwrap();
        assert!(both.contains(&w.forms[0]) && both.contains(&w.forms[1]));
    }
}
