//! Truncated Shafarevich complexes and the Grassmann components of the
//! inclusion–exclusion model, as explicit chain complexes with exact ranks.
//!
//! A Shafarevich basis element is a tensor word in letters (degree 0) and
//! symbols `e(w)`, `w ∈ W` (degree 1). The differential is the derivation with
//! `d(x) = 0` and `d(e(w)) = w`, or `w - f(w)` in the full mode. The monomial
//! complex splits by word grade. The full complex is split by length instead,
//! which needs every rule to be length-homogeneous.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::freealg::{Field, Scalar, Word};
use crate::linalg::{rank, SparseMatrix, SparseRow};
use crate::rewrite::System;

pub const DEFAULT_BASIS_BUDGET: usize = 2_000_000;
pub const DEFAULT_DIVISOR_BUDGET: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Token {
    Letter(u32),
    Rel(usize),
}

pub type Tensor = Vec<Token>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Grade {
    Word(Word),
    Length(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Differential {
    /// `d(e(w)) = w`
    Monomial,
    /// `d(e(w)) = w - f(w)`
    Full,
}

/// The grade-`g`, degree-`n` piece: basis and the matrix of `d` into degree `n - 1`.
#[derive(Debug, Clone)]
pub struct Block {
    pub basis: Vec<Tensor>,
    /// Rows indexed by `basis`, columns by the degree `n - 1` basis. Absent in degree 0.
    pub matrix: Option<SparseMatrix>,
}

#[derive(Debug, Clone)]
pub struct TruncatedComplex {
    pub differential: Differential,
    pub max_length: usize,
    pub max_degree: usize,
    pub blocks: BTreeMap<(Grade, usize), Block>,
    /// Basis elements `t` with `d(d(t)) ≠ 0`; empty for a correct build.
    pub d_squared_violations: Vec<(Grade, usize, Tensor)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomologyRanks {
    pub dimension: usize,
    pub kernel: usize,
    pub image: usize,
    pub homology: usize,
    /// The incoming differential lies beyond the truncation, so `homology`
    /// is only an upper bound.
    pub truncated: bool,
}

fn token_word(system: &System, t: &Token) -> Word {
    match t {
        Token::Letter(x) => Word::letter(*x),
        Token::Rel(r) => system.rule(*r).lhs.clone(),
    }
}

pub fn tensor_grade(system: &System, t: &[Token]) -> Word {
    Word::new(t.iter().flat_map(|k| token_word(system, k).letters().to_vec()).collect())
}

pub fn tensor_degree(t: &[Token]) -> usize {
    t.iter().filter(|k| matches!(k, Token::Rel(_))).count()
}

pub fn show_tensor(system: &System, t: &[Token]) -> String {
    if t.is_empty() {
        return "1".into();
    }
    let parts: Vec<String> = t
        .iter()
        .map(|k| match k {
            Token::Letter(x) => system.alphabet().name(*x).to_string(),
            Token::Rel(r) => format!("e[{}]", system.show_word(&system.rule(*r).lhs)),
        })
        .collect();
    parts.join("·")
}

/// Tensors of grade `u` by degree, each list sorted.
fn word_tensors(system: &System, u: &Word, max_degree: usize) -> Vec<Vec<Tensor>> {
    fn go(
        system: &System,
        u: &[u32],
        max_degree: usize,
        stack: &mut Tensor,
        deg: usize,
        out: &mut Vec<Vec<Tensor>>,
    ) {
        if u.is_empty() {
            out[deg].push(stack.clone());
            return;
        }
        stack.push(Token::Letter(u[0]));
        go(system, &u[1..], max_degree, stack, deg, out);
        stack.pop();
        if deg < max_degree {
            for (r, rule) in system.rules().iter().enumerate() {
                let w = rule.lhs.letters();
                if u.starts_with(w) {
                    stack.push(Token::Rel(r));
                    go(system, &u[w.len()..], max_degree, stack, deg + 1, out);
                    stack.pop();
                }
            }
        }
    }
    let mut out = vec![Vec::new(); max_degree + 1];
    go(system, u.letters(), max_degree, &mut Vec::new(), 0, &mut out);
    for v in &mut out {
        v.sort();
    }
    out
}

/// Tensors of total length `len` by degree, each list sorted.
fn length_tensors(system: &System, len: usize, max_degree: usize, budget: usize) -> Result<Vec<Vec<Tensor>>> {
    // tensors[l][n]: all of length l and degree n
    let mut tensors: Vec<Vec<Vec<Tensor>>> = vec![vec![Vec::new(); max_degree + 1]; len + 1];
    tensors[0][0].push(Vec::new());
    let mut size = 1;
    for l in 1..=len {
        for x in 0..system.alphabet().len() as u32 {
            for n in 0..=max_degree {
                let prev = tensors[l - 1][n].clone();
                for mut t in prev {
                    t.push(Token::Letter(x));
                    tensors[l][n].push(t);
                }
            }
        }
        for (r, rule) in system.rules().iter().enumerate() {
            let k = rule.lhs.len();
            if k > l {
                continue;
            }
            for n in 1..=max_degree {
                let prev = tensors[l - k][n - 1].clone();
                for mut t in prev {
                    t.push(Token::Rel(r));
                    tensors[l][n].push(t);
                }
            }
        }
        size += tensors[l].iter().map(Vec::len).sum::<usize>();
        if size > budget {
            return Err(Error::BudgetExceeded {
                what: "Shafarevich basis",
                size,
                budget,
            });
        }
    }
    let mut out = tensors.swap_remove(len);
    for v in &mut out {
        v.sort();
    }
    Ok(out)
}

/// `d(t)` as a sparse combination of tensors.
pub fn apply_d(system: &System, mode: Differential, t: &[Token]) -> BTreeMap<Tensor, Scalar> {
    let field = system.field();
    let mut out: BTreeMap<Tensor, Scalar> = BTreeMap::new();
    let mut add = |k: Tensor, c: Scalar| {
        let e = out.entry(k).or_insert_with(|| field.zero());
        *e = e.add(&c);
    };
    let mut before = 0;
    for (i, tok) in t.iter().enumerate() {
        let Token::Rel(r) = tok else { continue };
        let sign = if before % 2 == 0 { field.one() } else { field.one().neg() };
        let splice = |w: &Word| {
            let mut k = t[..i].to_vec();
            k.extend(w.letters().iter().map(|&x| Token::Letter(x)));
            k.extend_from_slice(&t[i + 1..]);
            k
        };
        let rule = system.rule(*r);
        add(splice(&rule.lhs), sign.clone());
        if mode == Differential::Full {
            for (m, c) in rule.rhs.terms() {
                add(splice(m), sign.mul(c).neg());
            }
        }
        before += 1;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn apply_d_poly(
    system: &System,
    mode: Differential,
    p: &BTreeMap<Tensor, Scalar>,
) -> BTreeMap<Tensor, Scalar> {
    let field = system.field();
    let mut out: BTreeMap<Tensor, Scalar> = BTreeMap::new();
    for (t, c) in p {
        for (k, v) in apply_d(system, mode, t) {
            let e = out.entry(k).or_insert_with(|| field.zero());
            *e = e.add(&c.mul(&v));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Builds all blocks of the truncated complex and checks `d² = 0` on every
/// basis element. Word grades of length `0..=max_length` in monomial mode;
/// lengths `0..=max_length` in full mode.
pub fn build_shafarevich(
    system: &System,
    max_length: usize,
    max_degree: usize,
    differential: Differential,
) -> Result<TruncatedComplex> {
    build_shafarevich_with_budget(system, max_length, max_degree, differential, DEFAULT_BASIS_BUDGET)
}

pub fn build_shafarevich_with_budget(
    system: &System,
    max_length: usize,
    max_degree: usize,
    differential: Differential,
    budget: usize,
) -> Result<TruncatedComplex> {
    let mut pieces: Vec<(Grade, Vec<Vec<Tensor>>)> = Vec::new();
    match differential {
        Differential::Monomial => {
            let mut size = 0;
            for u in system.alphabet().all_words(max_length) {
                let t = word_tensors(system, &u, max_degree);
                size += t.iter().map(Vec::len).sum::<usize>();
                if size > budget {
                    return Err(Error::BudgetExceeded {
                        what: "Shafarevich basis",
                        size,
                        budget,
                    });
                }
                pieces.push((Grade::Word(u), t));
            }
        }
        Differential::Full => {
            for (i, rule) in system.rules().iter().enumerate() {
                if !rule.rhs.support().all(|m| m.len() == rule.lhs.len()) {
                    return Err(Error::NotLengthHomogeneous(i));
                }
            }
            for l in 0..=max_length {
                pieces.push((Grade::Length(l), length_tensors(system, l, max_degree, budget)?));
            }
        }
    }
    let mut blocks = BTreeMap::new();
    let mut violations = Vec::new();
    for (grade, by_degree) in pieces {
        let index: Vec<HashMap<&Tensor, usize>> = by_degree
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, t)| (t, i)).collect())
            .collect();
        for (n, basis) in by_degree.iter().enumerate() {
            let matrix = (n > 0).then(|| {
                let mut m = SparseMatrix::new(system.field(), by_degree[n - 1].len());
                for t in basis {
                    let row: SparseRow = apply_d(system, differential, t)
                        .into_iter()
                        .map(|(k, c)| (index[n - 1][&k], c))
                        .collect();
                    m.push(row);
                }
                m
            });
            if n >= 2 {
                for t in basis {
                    let dt = apply_d(system, differential, t);
                    if !apply_d_poly(system, differential, &dt).is_empty() {
                        violations.push((grade.clone(), n, t.clone()));
                    }
                }
            }
            blocks.insert(
                (grade.clone(), n),
                Block {
                    basis: basis.clone(),
                    matrix,
                },
            );
        }
    }
    Ok(TruncatedComplex {
        differential,
        max_length,
        max_degree,
        blocks,
        d_squared_violations: violations,
    })
}

impl TruncatedComplex {
    pub fn dimension(&self, grade: &Grade, degree: usize) -> usize {
        self.blocks
            .get(&(grade.clone(), degree))
            .map_or(0, |b| b.basis.len())
    }

    fn rank_of(&self, grade: &Grade, degree: usize) -> usize {
        self.blocks
            .get(&(grade.clone(), degree))
            .and_then(|b| b.matrix.as_ref())
            .map_or(0, SparseMatrix::rank)
    }

    /// Exact `(dim, ker, im, H)` at a grade and degree.
    pub fn homology_ranks(&self, grade: &Grade, degree: usize) -> HomologyRanks {
        let dimension = self.dimension(grade, degree);
        let kernel = dimension - self.rank_of(grade, degree);
        let truncated = degree + 1 > self.max_degree;
        let image = if truncated { 0 } else { self.rank_of(grade, degree + 1) };
        HomologyRanks {
            dimension,
            kernel,
            image,
            homology: kernel - image,
            truncated,
        }
    }

    pub fn grades(&self) -> Vec<Grade> {
        let mut g: Vec<Grade> = self.blocks.keys().map(|(g, _)| g.clone()).collect();
        g.dedup();
        g
    }
}

/// The Grassmann complex on the lhs occurrences of one grade, over the
/// field of the system.
#[derive(Debug, Clone)]
pub struct GrassmannComponent {
    pub grade: Word,
    /// `(rule, start)`, sorted by start then length.
    pub divisors: Vec<(usize, usize)>,
    lengths: Vec<usize>,
    field: Field,
}

impl GrassmannComponent {
    pub fn m(&self) -> usize {
        self.divisors.len()
    }

    /// Wedge monomials of degree `k`, as sorted bitmasks.
    pub fn basis(&self, k: usize) -> Vec<u64> {
        let mut v: Vec<u64> = (0..1u64 << self.m())
            .filter(|s| s.count_ones() as usize == k)
            .collect();
        v.sort();
        v
    }

    /// `d(D_{i1}∧…∧D_{ik}) = Σ_j (-1)^j D_{i1}∧…(omit i_j)…∧D_{ik}`.
    pub fn differential(&self, mask: u64) -> Vec<(u64, i64)> {
        let mut out = Vec::new();
        let mut j = 0;
        for i in 0..self.m() {
            if mask & (1 << i) != 0 {
                out.push((mask & !(1 << i), if j % 2 == 0 { 1 } else { -1 }));
                j += 1;
            }
        }
        out
    }

    /// Homology dimension in degree `k`.
    pub fn homology(&self, k: usize) -> usize {
        let dim = self.basis(k).len();
        dim - self.rank(k) - self.rank(k + 1)
    }

    fn rank(&self, k: usize) -> usize {
        if k == 0 || k > self.m() {
            return 0;
        }
        let field = self.field;
        let targets: HashMap<u64, usize> = self
            .basis(k - 1)
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let rows: Vec<SparseRow> = self
            .basis(k)
            .into_iter()
            .map(|s| {
                self.differential(s)
                    .into_iter()
                    .map(|(t, c)| (targets[&t], field.from_i64(c)))
                    .collect()
            })
            .collect();
        rank(field, &rows)
    }

    fn span(&self, i: usize) -> (usize, usize) {
        let start = self.divisors[i].1;
        (start, start + self.lengths[i])
    }

    /// No cut `u = u1·u2` leaves every chosen divisor inside `u1` or `u2`.
    pub fn is_indecomposable(&self, mask: u64) -> bool {
        (1..self.grade.len()).all(|p| {
            (0..self.m())
                .filter(|&i| mask & (1 << i) != 0)
                .any(|i| {
                    let (s, e) = self.span(i);
                    s < p && p < e
                })
        })
    }

    pub fn indecomposables(&self, k: usize) -> Vec<u64> {
        self.basis(k)
            .into_iter()
            .filter(|&s| self.is_indecomposable(s))
            .collect()
    }
}

pub fn build_ie_component(system: &System, grade: &Word) -> Result<GrassmannComponent> {
    build_ie_component_with_budget(system, grade, DEFAULT_DIVISOR_BUDGET)
}

pub fn build_ie_component_with_budget(
    system: &System,
    grade: &Word,
    budget: usize,
) -> Result<GrassmannComponent> {
    let mut divisors: Vec<(usize, usize)> = system.matches(grade);
    divisors.sort_by_key(|&(r, s)| (s, system.rule(r).lhs.len()));
    if divisors.len() > budget.min(63) {
        return Err(Error::BudgetExceeded {
            what: "Grassmann divisors",
            size: divisors.len(),
            budget,
        });
    }
    let lengths = divisors.iter().map(|&(r, _)| system.rule(r).lhs.len()).collect();
    Ok(GrassmannComponent {
        grade: grade.clone(),
        divisors,
        lengths,
        field: system.field(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CensusKind {
    Inclusion,
    Overlap,
}

impl fmt::Display for CensusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CensusKind::Inclusion => write!(f, "inclusion"),
            CensusKind::Overlap => write!(f, "overlap"),
        }
    }
}

/// An indecomposable degree-two wedge: its grade, kind and the two divisors
/// as sorted `(start, length)`.
pub type CensusEntry = (Word, CensusKind, [(usize, usize); 2]);

pub fn ie_degree2_census(system: &System, max_length: usize) -> Result<Vec<CensusEntry>> {
    let mut out = Vec::new();
    for u in system.alphabet().all_words(max_length) {
        let comp = build_ie_component(system, &u)?;
        for mask in comp.indecomposables(2) {
            let mut pos: Vec<(usize, usize)> = (0..comp.m())
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| (comp.divisors[i].1, comp.lengths[i]))
                .collect();
            pos.sort();
            let kind = if pos.iter().any(|&(s, l)| s == 0 && l == u.len()) {
                CensusKind::Inclusion
            } else {
                CensusKind::Overlap
            };
            out.push((u.clone(), kind, [pos[0], pos[1]]));
        }
    }
    out.sort();
    Ok(out)
}
