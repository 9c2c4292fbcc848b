//! Random rewriting systems for property tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::freealg::{Alphabet, Field, Poly, Word};
use crate::order::DeglexOrder;
use crate::rewrite::{Rule, System};

const NAMES: [&str; 3] = ["x", "y", "z"];

#[derive(Debug, Clone, Copy)]
pub struct SampleParams {
    pub max_letters: usize,
    pub max_rules: usize,
    pub max_lhs_len: usize,
    pub max_rhs_terms: usize,
}

impl Default for SampleParams {
    fn default() -> Self {
        SampleParams {
            max_letters: 3,
            max_rules: 3,
            max_lhs_len: 4,
            max_rhs_terms: 2,
        }
    }
}

fn random_word(rng: &mut impl Rng, letters: usize, len: usize) -> Word {
    Word::new((0..len).map(|_| rng.gen_range(0..letters as u32)).collect())
}

fn lhs_len(rng: &mut impl Rng, max: usize) -> usize {
    // length one rules just eliminate a letter; keep them rare
    if max == 1 || rng.gen_ratio(1, 8) {
        1
    } else {
        rng.gen_range(2..=max)
    }
}

/// A system over F_2 whose right-hand sides are sums of words of the lhs
/// length that are smaller in the unit deglex order, which certifies it.
pub fn random_system(rng: &mut impl Rng, params: SampleParams) -> (System, DeglexOrder) {
    let field = Field::Prime(2);
    let n = rng.gen_range(1..=params.max_letters.min(NAMES.len()));
    let alphabet = Alphabet::new(&NAMES[..n]).expect("valid names");
    let order = DeglexOrder::unit(n);
    let all = alphabet.all_words(params.max_lhs_len);
    let count = rng.gen_range(1..=params.max_rules);
    let mut rules: Vec<Rule> = Vec::new();
    for _ in 0..count {
        let len = lhs_len(rng, params.max_lhs_len);
        let lhs = random_word(rng, n, len);
        if rules.iter().any(|r| r.lhs == lhs) {
            continue;
        }
        let below: Vec<&Word> = all
            .iter()
            .filter(|w| w.len() == lhs.len() && order.compare(w, &lhs).is_lt())
            .collect();
        let k = rng.gen_range(0..=params.max_rhs_terms.min(below.len()));
        let mut rhs = Poly::zero(field);
        for w in below.choose_multiple(rng, k) {
            rhs.add_term((*w).clone(), field.one());
        }
        rules.push(Rule::new(lhs, rhs));
    }
    let system = System::new(alphabet, field, rules).expect("valid by construction");
    (system, order)
}

/// A minimal monomial system: random words of length at least two, with
/// every word containing another one dropped.
pub fn random_minimal_monomial(rng: &mut impl Rng, params: SampleParams) -> System {
    let field = Field::Prime(2);
    let n = rng.gen_range(1..=params.max_letters.min(NAMES.len()));
    let alphabet = Alphabet::new(&NAMES[..n]).expect("valid names");
    let count = rng.gen_range(1..=params.max_rules);
    let mut words: Vec<Word> = (0..count)
        .map(|_| {
            let len = rng.gen_range(2..=params.max_lhs_len.max(2));
            random_word(rng, n, len)
        })
        .collect();
    words.sort();
    words.dedup();
    let keep: Vec<Word> = words
        .iter()
        .filter(|w| !words.iter().any(|v| v != *w && w.contains(v)))
        .cloned()
        .collect();
    let rules = keep
        .into_iter()
        .map(|w| Rule::new(w, Poly::zero(field)))
        .collect();
    System::new(alphabet, field, rules).expect("valid by construction")
}
