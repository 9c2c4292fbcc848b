//! Anick chains of a minimal set of monomials and the differential of the
//! quasi-free algebra they generate.
//!
//! Chains are built left to right. The generators are the 0-chains, each its
//! own tail. An n-chain is `c = c'·t` with `c'` an (n-1)-chain of tail `t'`,
//! such that `t'·t` ends in an element of W which starts inside `t'`, and no
//! proper prefix of `c` already has this form. Every word has at most one
//! chain structure; along a word the chain prefixes form a single sequence,
//! which [`chain_prefixes`] computes directly.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::freealg::{Alphabet, Field, Scalar, Word};
use crate::rewrite::System;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub word: Word,
    pub degree: usize,
    pub tail: Word,
    /// The (n-1)-chain prefix; none in degree 0.
    pub parent: Option<Word>,
}

/// Lengths of the chain prefixes of `u`: entry `n` is the length of the
/// n-chain prefix. Empty for the empty word.
pub fn chain_prefixes(system: &System, u: &Word) -> Vec<usize> {
    if u.is_empty() {
        return Vec::new();
    }
    let letters = u.letters();
    let mut out = vec![1];
    let mut tail_start = 0;
    loop {
        let end = *out.last().expect("nonempty");
        let mut next: Option<usize> = None;
        for rule in system.rules() {
            let w = rule.lhs.letters();
            for q in tail_start..end {
                let stop = q + w.len();
                if stop > end && stop <= letters.len() && &letters[q..stop] == w {
                    next = Some(next.map_or(stop, |n: usize| n.min(stop)));
                }
            }
        }
        match next {
            Some(stop) => {
                out.push(stop);
                tail_start = end;
            }
            None => return out,
        }
    }
}

/// The unique `(degree, tail)` making `u` a chain, if any.
pub fn chain_structure(system: &System, u: &Word) -> Option<(usize, Word)> {
    let prefixes = chain_prefixes(system, u);
    let n = prefixes.iter().position(|&l| l == u.len())?;
    let start = if n == 0 { 0 } else { prefixes[n - 1] };
    Some((n, u.suffix_from(start)))
}

fn require_minimal(system: &System) -> Result<()> {
    if system.is_minimal() {
        Ok(())
    } else {
        Err(Error::NotMinimal("chains need a minimal system".into()))
    }
}

/// All chains of degree at most `max_degree` and length at most `max_length`,
/// sorted by degree, then word.
pub fn anick_chains(system: &System, max_degree: usize, max_length: usize) -> Result<Vec<Chain>> {
    require_minimal(system)?;
    let mut out = Vec::new();
    if max_length == 0 {
        return Ok(out);
    }
    let mut level: Vec<Chain> = (0..system.alphabet().len() as u32)
        .map(|x| Chain {
            word: Word::letter(x),
            degree: 0,
            tail: Word::letter(x),
            parent: None,
        })
        .collect();
    for n in 1..=max_degree {
        let mut next = BTreeSet::new();
        for c in &level {
            let t = c.tail.letters();
            for rule in system.rules() {
                let w = rule.lhs.letters();
                for j in 1..=t.len().min(w.len() - 1) {
                    if t[t.len() - j..] != w[..j] {
                        continue;
                    }
                    let ext = Word::new(w[j..].to_vec());
                    let word = c.word.concat(&ext);
                    if word.len() > max_length {
                        continue;
                    }
                    if chain_structure(system, &word).as_ref() == Some(&(n, ext.clone())) {
                        next.insert(Chain {
                            word,
                            degree: n,
                            tail: ext,
                            parent: Some(c.word.clone()),
                        });
                    }
                }
            }
        }
        out.append(&mut level);
        level = next.into_iter().collect();
        if level.is_empty() {
            break;
        }
    }
    out.append(&mut level);
    Ok(out)
}

/// A linear combination of tensor words in chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainPoly {
    field: Field,
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl ChainPoly {
    pub fn zero(field: Field) -> ChainPoly {
        ChainPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, tensor: &[Word]) -> Option<&Scalar> {
        self.terms.get(tensor)
    }

    pub fn add_term(&mut self, tensor: Vec<Word>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(tensor) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> ChainPolyDisplay<'a> {
        ChainPolyDisplay { poly: self, alphabet }
    }
}

pub struct ChainPolyDisplay<'a> {
    poly: &'a ChainPoly,
    alphabet: &'a Alphabet,
}

impl fmt::Display for ChainPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.poly.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            let parts: Vec<_> = t.iter().map(|w| self.alphabet.show(w)).collect();
            write!(f, "{}", parts.join("⊗"))?;
        }
        Ok(())
    }
}

/// Sign of the factorization term `c1⊗…⊗ck` in `d(c)` for an n-chain `c`
/// whose first factor has degree `n1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SignConvention {
    /// `(-1)^n1`. Squares to zero.
    #[default]
    FirstFactorParity,
    /// `-(-1)^(n(n+1)/2 + n1)`. Agrees with the default up to degree 2 and
    /// breaks `d² = 0` from degree 3 on; kept for comparison.
    Binomial,
}

impl SignConvention {
    pub fn sign(self, n: usize, n1: usize) -> i64 {
        let e = match self {
            SignConvention::FirstFactorParity => n1,
            SignConvention::Binomial => n * (n + 1) / 2 + n1 + 1,
        };
        if e % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// The differential on the free algebra generated by chains, with caches.
pub struct ChainDifferential<'a> {
    system: &'a System,
    convention: SignConvention,
    structures: HashMap<Word, Option<(usize, Word)>>,
    differentials: HashMap<Word, ChainPoly>,
}

impl<'a> ChainDifferential<'a> {
    pub fn new(system: &'a System, convention: SignConvention) -> Result<Self> {
        require_minimal(system)?;
        Ok(ChainDifferential {
            system,
            convention,
            structures: HashMap::new(),
            differentials: HashMap::new(),
        })
    }

    pub fn structure(&mut self, u: &Word) -> Option<(usize, Word)> {
        if let Some(s) = self.structures.get(u) {
            return s.clone();
        }
        let s = chain_structure(self.system, u);
        self.structures.insert(u.clone(), s.clone());
        s
    }

    fn degree(&mut self, u: &Word) -> usize {
        self.structure(u).expect("tensor factor is a chain").0
    }

    /// Every way of writing `u` as a product of chains of total degree `total`.
    pub fn factorizations(&mut self, u: &Word, total: usize) -> Vec<Vec<Word>> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.factor_from(u, 0, total, &mut stack, &mut out);
        out
    }

    fn factor_from(
        &mut self,
        u: &Word,
        start: usize,
        left: usize,
        stack: &mut Vec<Word>,
        out: &mut Vec<Vec<Word>>,
    ) {
        if start == u.len() {
            if left == 0 {
                out.push(stack.clone());
            }
            return;
        }
        for end in start + 1..=u.len() {
            let piece = u.slice(start, end);
            if let Some((d, _)) = self.structure(&piece) {
                if d <= left {
                    stack.push(piece);
                    self.factor_from(u, end, left - d, stack, out);
                    stack.pop();
                }
            }
        }
    }

    /// `d(c)` for a chain word `c`; zero in degree 0.
    pub fn of_chain(&mut self, c: &Word) -> ChainPoly {
        if let Some(d) = self.differentials.get(c) {
            return d.clone();
        }
        let field = self.system.field();
        let n = self.degree(c);
        let mut out = ChainPoly::zero(field);
        if n > 0 {
            for f in self.factorizations(c, n - 1) {
                let n1 = self.degree(&f[0]);
                out.add_term(f, field.from_i64(self.convention.sign(n, n1)));
            }
        }
        self.differentials.insert(c.clone(), out.clone());
        out
    }

    /// Extends `d` to tensor words as a derivation:
    /// `d(ab) = d(a)·b + (-1)^|a|·a·d(b)`.
    pub fn of_poly(&mut self, p: &ChainPoly) -> ChainPoly {
        let field = self.system.field();
        let mut out = ChainPoly::zero(field);
        for (tensor, c) in p.terms() {
            let mut before = 0;
            for (i, factor) in tensor.iter().enumerate() {
                let sign = if before % 2 == 0 { c.clone() } else { c.neg() };
                for (inner, k) in self.of_chain(factor).terms() {
                    let mut t = tensor[..i].to_vec();
                    t.extend(inner.iter().cloned());
                    t.extend(tensor[i + 1..].iter().cloned());
                    out.add_term(t, sign.mul(k));
                }
                before += self.degree(factor);
            }
        }
        out
    }
}

pub fn chain_differential(system: &System, c: &Chain) -> Result<ChainPoly> {
    Ok(ChainDifferential::new(system, SignConvention::default())?.of_chain(&c.word))
}

#[derive(Debug, Clone)]
pub struct DSquaredReport {
    pub checked: usize,
    /// Chains with `d(d(c)) ≠ 0`, with `d(c)` and `d(d(c))`.
    pub violations: Vec<(Chain, ChainPoly, ChainPoly)>,
}

impl DSquaredReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_d_squared(
    system: &System,
    max_degree: usize,
    max_length: usize,
    convention: SignConvention,
) -> Result<DSquaredReport> {
    let chains = anick_chains(system, max_degree, max_length)?;
    let mut d = ChainDifferential::new(system, convention)?;
    let mut violations = Vec::new();
    for c in &chains {
        let dc = d.of_chain(&c.word);
        let ddc = d.of_poly(&dc);
        if !ddc.is_zero() {
            violations.push((c.clone(), dc, ddc));
        }
    }
    Ok(DSquaredReport {
        checked: chains.len(),
        violations,
    })
}

/// `Σ (-1)^(n+1)` over the splittings `u = c·v` with `c` an n-chain (the empty
/// word counting as the (-1)-chain) and `v` irreducible. This is the Euler
/// characteristic of the grade-`u` part of the chain resolution of the ground
/// field, so it vanishes for every nonempty `u`.
pub fn euler_sum(system: &System, u: &Word) -> i64 {
    let irreducible = |v: Word| !system.is_reducible_word(&v);
    let mut sum = if irreducible(u.clone()) { 1 } else { 0 };
    for (n, &l) in chain_prefixes(system, u).iter().enumerate() {
        if irreducible(u.suffix_from(l)) {
            sum += if n % 2 == 0 { -1 } else { 1 };
        }
    }
    sum
}
