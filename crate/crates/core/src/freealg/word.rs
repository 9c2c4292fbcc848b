use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// An element of the free monoid: a sequence of generator indices.
///
/// `Ord` is degree-lexicographic on the raw indices (shorter words first,
/// then lexicographic). Polynomials use it to keep their terms sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<u32>) -> Word {
        Word(letters)
    }

    pub fn letter(x: u32) -> Word {
        Word(vec![x])
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `a · self · b`
    pub fn sandwich(&self, a: &Word, b: &Word) -> Word {
        let mut v = Vec::with_capacity(a.len() + self.len() + b.len());
        v.extend_from_slice(&a.0);
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&b.0);
        Word(v)
    }

    /// The subword on the half-open letter range.
    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.slice(0, len)
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        self.slice(start, self.len())
    }

    pub fn starts_with(&self, other: &Word) -> bool {
        self.0.starts_with(&other.0)
    }

    pub fn ends_with(&self, other: &Word) -> bool {
        self.0.ends_with(&other.0)
    }

    /// Start positions of `pattern` in `self`, ascending. Overlapping hits are all reported.
    pub fn positions_of(&self, pattern: &Word) -> Vec<usize> {
        if pattern.is_empty() || pattern.len() > self.len() {
            return Vec::new();
        }
        self.0
            .windows(pattern.len())
            .enumerate()
            .filter(|(_, w)| *w == pattern.letters())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn contains(&self, pattern: &Word) -> bool {
        pattern.is_empty() || self.0.windows(pattern.len()).any(|w| w == pattern.letters())
    }

    pub fn max_letter(&self) -> Option<u32> {
        self.0.iter().copied().max()
    }
}

impl From<Vec<u32>> for Word {
    fn from(v: Vec<u32>) -> Self {
        Word(v)
    }
}

impl From<&[u32]> for Word {
    fn from(v: &[u32]) -> Self {
        Word(v.to_vec())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An occurrence `host = prefix · pattern · suffix`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occurrence {
    pub prefix: Word,
    pub pattern: Word,
    pub suffix: Word,
    pub host: Word,
}

impl Occurrence {
    pub fn at(pattern: &Word, host: &Word, start: usize) -> Occurrence {
        Occurrence {
            prefix: host.prefix(start),
            pattern: pattern.clone(),
            suffix: host.suffix_from(start + pattern.len()),
            host: host.clone(),
        }
    }

    pub fn position(&self) -> usize {
        self.prefix.len()
    }
}

/// All factorisations `host = a · pattern · b`, ordered by `|a|`.
pub fn occurrences(pattern: &Word, host: &Word) -> Result<Vec<Occurrence>> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    Ok(host
        .positions_of(pattern)
        .into_iter()
        .map(|i| Occurrence::at(pattern, host, i))
        .collect())
}

/// Generator names, used only when parsing and printing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, u32>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Alphabet> {
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref();
            if !is_valid_name(n) {
                return Err(Error::InvalidGeneratorName(n.to_string()));
            }
            if index.insert(n.to_string(), i as u32).is_some() {
                return Err(Error::DuplicateGenerator(n.to_string()));
            }
        }
        Ok(Alphabet {
            names: names.iter().map(|n| n.as_ref().to_string()).collect(),
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: u32) -> &str {
        &self.names[i as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    /// Parses a product like `x*y^2*z`; `1` is the empty word.
    pub fn word(&self, text: &str) -> Result<Word> {
        crate::freealg::parse::parse_word(text, self)
    }

    /// Renders a word as `x^2*y`, with `1` for the empty word.
    pub fn show(&self, w: &Word) -> String {
        WordDisplay { word: w, alphabet: self }.to_string()
    }

    /// Every word of length at most `max_len`, in degree-lexicographic order.
    pub fn all_words(&self, max_len: usize) -> Vec<Word> {
        let n = self.len() as u32;
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            let next: Vec<Word> = layer
                .iter()
                .flat_map(|w| (0..n).map(move |x| w.concat(&Word::letter(x))))
                .collect();
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

pub(crate) fn is_valid_name(n: &str) -> bool {
    let mut chars = n.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        if letters.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for run in letters.chunk_by(|a, b| a == b) {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.alphabet.name(run[0]))?;
            if run.len() > 1 {
                write!(f, "^{}", run.len())?;
            }
        }
        Ok(())
    }
}
