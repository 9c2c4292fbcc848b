//! Termination certificates.
//!
//! Two families are supported: weighted degree-lexicographic orders, which
//! are total multiplicative well-orders, and occurrence-count measures
//! `Φ(m) = Σ_p c_p · #occurrences(p, m)`.
//!
//! For a measure, the change `Φ(a·w·b) - Φ(a·m·b)` only depends on the last
//! `L - 1` letters of `a` and the first `L - 1` letters of `b`, where `L` is
//! the longest pattern: an occurrence that crosses into `a·w` or `w·b`
//! touches at most `L - 1` letters of each context, and occurrences lying
//! entirely inside a context cancel. Checking every context of length at
//! most `L - 1` on both sides is therefore exact.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::freealg::{print_order, Word};
use crate::rewrite::System;

/// Weighted deglex: compare total weight, then lexicographically with
/// respect to a chosen ranking of the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeglexOrder {
    weights: Vec<u64>,
    // rank[x] = position of generator x in the tie-break order (0 = smallest)
    rank: Vec<u32>,
}

impl DeglexOrder {
    /// Unit weights, generators ordered by index.
    pub fn unit(n: usize) -> DeglexOrder {
        DeglexOrder {
            weights: vec![1; n],
            rank: (0..n as u32).collect(),
        }
    }

    pub fn new(weights: Vec<u64>, order: &[u32]) -> Result<DeglexOrder> {
        DeglexOrder::unit(weights.len())
            .with_weights(weights)?
            .with_order(order)
    }

    pub fn with_weights(mut self, weights: Vec<u64>) -> Result<DeglexOrder> {
        if weights.len() != self.rank.len() {
            return Err(Error::InvalidCertificate(format!(
                "expected {} weights, got {}",
                self.rank.len(),
                weights.len()
            )));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidCertificate("weights must be positive".into()));
        }
        self.weights = weights;
        Ok(self)
    }

    /// `order` lists generator indices from smallest to largest.
    pub fn with_order(mut self, order: &[u32]) -> Result<DeglexOrder> {
        let n = self.weights.len();
        let mut rank = vec![u32::MAX; n];
        for (pos, &x) in order.iter().enumerate() {
            if x as usize >= n || rank[x as usize] != u32::MAX {
                return Err(Error::InvalidCertificate(
                    "tie-break order must be a permutation of the generators".into(),
                ));
            }
            rank[x as usize] = pos as u32;
        }
        if order.len() != n {
            return Err(Error::InvalidCertificate(
                "tie-break order must be a permutation of the generators".into(),
            ));
        }
        self.rank = rank;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Generator indices from smallest to largest.
    pub fn order(&self) -> Vec<u32> {
        let mut v: Vec<u32> = (0..self.rank.len() as u32).collect();
        v.sort_by_key(|&x| self.rank[x as usize]);
        v
    }

    pub fn weight(&self, w: &Word) -> u64 {
        w.letters().iter().map(|&x| self.weights[x as usize]).sum()
    }

    pub fn compare(&self, u: &Word, v: &Word) -> Ordering {
        self.weight(u).cmp(&self.weight(v)).then_with(|| {
            let ru = u.letters().iter().map(|&x| self.rank[x as usize]);
            let rv = v.letters().iter().map(|&x| self.rank[x as usize]);
            ru.cmp(rv)
        })
    }
}

/// `Φ(m) = Σ coeff(p) · #occurrences(p, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasureCertificate {
    patterns: Vec<(Word, u64)>,
}

impl MeasureCertificate {
    pub fn new(patterns: Vec<(Word, u64)>) -> Result<MeasureCertificate> {
        if patterns.iter().any(|(p, _)| p.is_empty()) {
            return Err(Error::EmptyPattern);
        }
        Ok(MeasureCertificate { patterns })
    }

    pub fn patterns(&self) -> &[(Word, u64)] {
        &self.patterns
    }

    pub fn value(&self, m: &Word) -> u64 {
        self.patterns
            .iter()
            .map(|(p, c)| c * m.positions_of(p).len() as u64)
            .sum()
    }

    /// Length of the longest pattern.
    pub fn max_pattern_len(&self) -> usize {
        self.patterns.iter().map(|(p, _)| p.len()).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Deglex(DeglexOrder),
    Measure(MeasureCertificate),
}

impl Certificate {
    /// Does a step from `from` to `to` strictly decrease the certified quantity?
    pub fn decreases(&self, from: &Word, to: &Word) -> bool {
        match self {
            Certificate::Deglex(o) => o.compare(to, from) == Ordering::Less,
            Certificate::Measure(m) => m.value(to) < m.value(from),
        }
    }

    /// Ranking used to choose which term to rewrite next: `Greater` means `a`
    /// goes first. Measure ties fall back to printing order.
    pub fn strategy_cmp(&self, a: &Word, b: &Word) -> Ordering {
        match self {
            Certificate::Deglex(o) => o.compare(a, b),
            Certificate::Measure(m) => m
                .value(a)
                .cmp(&m.value(b))
                .then_with(|| print_order(b, a)),
        }
    }

    pub fn as_deglex(&self) -> Option<&DeglexOrder> {
        match self {
            Certificate::Deglex(o) => Some(o),
            Certificate::Measure(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertVerdict {
    Certified,
    Failed,
}

/// A rule and a right-hand-side word that fails to decrease, with the
/// context `(a, b)` for measure certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertWitness {
    pub rule: usize,
    pub word: Word,
    pub context: Option<(Word, Word)>,
}

impl CertWitness {
    pub fn describe(&self, system: &System) -> String {
        let lhs = system.show_word(&system.rule(self.rule).lhs);
        let w = system.show_word(&self.word);
        match &self.context {
            None => format!("rule {lhs}: {w} is not below {lhs}"),
            Some((a, b)) => format!(
                "rule {lhs}: context ({}, {}) does not decrease on {w}",
                system.show_word(a),
                system.show_word(b)
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertResult {
    pub verdict: CertVerdict,
    pub witnesses: Vec<CertWitness>,
}

impl CertResult {
    fn from_witnesses(witnesses: Vec<CertWitness>) -> CertResult {
        let verdict = if witnesses.is_empty() {
            CertVerdict::Certified
        } else {
            CertVerdict::Failed
        };
        CertResult { verdict, witnesses }
    }

    pub fn is_certified(&self) -> bool {
        self.verdict == CertVerdict::Certified
    }
}

pub fn certify(system: &System, cert: &Certificate) -> Result<CertResult> {
    match cert {
        Certificate::Deglex(o) => certify_deglex(system, o),
        Certificate::Measure(m) => certify_measure(system, m),
    }
}

/// Certified iff every word of every right-hand side is deglex-below its lhs.
pub fn certify_deglex(system: &System, order: &DeglexOrder) -> Result<CertResult> {
    if order.len() != system.alphabet().len() {
        return Err(Error::InvalidCertificate(format!(
            "order covers {} generators, alphabet has {}",
            order.len(),
            system.alphabet().len()
        )));
    }
    let mut witnesses = Vec::new();
    for (i, r) in system.rules().iter().enumerate() {
        for w in r.rhs.support() {
            if order.compare(w, &r.lhs) != Ordering::Less {
                witnesses.push(CertWitness {
                    rule: i,
                    word: w.clone(),
                    context: None,
                });
            }
        }
    }
    Ok(CertResult::from_witnesses(witnesses))
}

/// Certified iff `Φ(a·m·b) < Φ(a·w·b)` for every rule `w ↦ f(w)`, every `m`
/// in the support of `f(w)` and every context with `|a|, |b| < L`.
pub fn certify_measure(system: &System, cert: &MeasureCertificate) -> Result<CertResult> {
    if cert.patterns.iter().any(|(p, _)| p.is_empty()) {
        return Err(Error::EmptyPattern);
    }
    let n = system.alphabet().len() as u32;
    if let Some(bad) = cert
        .patterns
        .iter()
        .find(|(p, _)| p.max_letter().is_some_and(|m| m >= n))
    {
        return Err(Error::InvalidCertificate(format!(
            "pattern {:?} uses a letter outside the alphabet",
            bad.0.letters()
        )));
    }
    let reach = cert.max_pattern_len().saturating_sub(1);
    let contexts = system.alphabet().all_words(reach);
    let mut witnesses = Vec::new();
    for (i, r) in system.rules().iter().enumerate() {
        for m in r.rhs.support() {
            for a in &contexts {
                for b in &contexts {
                    let before = cert.value(&r.lhs.sandwich(a, b));
                    let after = cert.value(&m.sandwich(a, b));
                    if after >= before {
                        witnesses.push(CertWitness {
                            rule: i,
                            word: m.clone(),
                            context: Some((a.clone(), b.clone())),
                        });
                    }
                }
            }
        }
    }
    Ok(CertResult::from_witnesses(witnesses))
}
