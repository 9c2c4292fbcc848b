use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::fmt;

use super::scalar::{Field, Scalar};
use super::word::{Alphabet, Word};
use crate::error::{Error, Result};

/// A noncommutative polynomial: a finite map from words to nonzero scalars.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    field: Field,
    terms: BTreeMap<Word, Scalar>,
}

impl Poly {
    pub fn zero(field: Field) -> Poly {
        Poly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(word: Word, coeff: Scalar) -> Poly {
        let mut p = Poly::zero(coeff.field());
        p.add_term(word, coeff);
        p
    }

    pub fn word(field: Field, word: Word) -> Poly {
        Poly::monomial(word, field.one())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    /// Terms in ascending degree-lexicographic order of the raw indices.
    pub fn terms(&self) -> btree_map::Iter<'_, Word, Scalar> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> + '_ {
        self.terms.keys()
    }

    /// Adds `coeff · word` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, word: Word, coeff: Scalar) {
        assert_eq!(coeff.field(), self.field, "field mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&coeff);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Adds `c · a · other · b` in place.
    pub fn add_sandwich(&mut self, c: &Scalar, a: &Word, other: &Poly, b: &Word) {
        for (w, k) in &other.terms {
            self.add_term(w.sandwich(a, b), c.mul(k));
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(self.add(other))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        assert_eq!(c.field(), self.field, "field mismatch");
        if c.is_zero() {
            return Poly::zero(self.field);
        }
        Poly {
            field: self.field,
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k.mul(c))).collect(),
        }
    }

    pub fn try_scale(&self, c: &Scalar) -> Result<Poly> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch(self.field, c.field()));
        }
        Ok(self.scale(c))
    }

    /// `a · self · b`
    pub fn sandwich(&self, a: &Word, b: &Word) -> Poly {
        Poly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(w, k)| (w.sandwich(a, b), k.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.field);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a.mul(b));
            }
        }
        out
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(self.mul(other))
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    /// True when every term has the same length.
    pub fn is_length_homogeneous(&self) -> bool {
        let mut lens = self.terms.keys().map(Word::len);
        match lens.next() {
            None => true,
            Some(l) => lens.all(|m| m == l),
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, alphabet }
    }
}

/// Printing order: longer words first, equal lengths lexicographic by index.
pub fn print_order(a: &Word, b: &Word) -> std::cmp::Ordering {
    b.len().cmp(&a.len()).then_with(|| a.letters().cmp(b.letters()))
}

/// Prints terms in [`print_order`], e.g. `x^3 - 2*x*y + 1`.
pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    alphabet: &'a Alphabet,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.poly.terms.iter().collect();
        terms.sort_by(|a, b| print_order(a.0, b.0));
        for (i, (w, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", self.alphabet.show(w))?;
            }
        }
        Ok(())
    }
}
