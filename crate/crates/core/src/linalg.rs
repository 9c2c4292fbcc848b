//! Exact rank of sparse matrices.
//!
//! Over Q rows are scaled to primitive integer vectors and eliminated
//! fraction-free, dividing out the content after every update. Over F_p it is
//! ordinary elimination.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::freealg::{Field, Scalar};

/// A sparse row: column index to nonzero entry.
pub type SparseRow = BTreeMap<usize, Scalar>;

#[derive(Debug, Clone)]
pub struct SparseMatrix {
    pub field: Field,
    pub cols: usize,
    pub rows: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn new(field: Field, cols: usize) -> SparseMatrix {
        SparseMatrix {
            field,
            cols,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: SparseRow) {
        debug_assert!(row.keys().all(|&c| c < self.cols));
        debug_assert!(row.values().all(|v| !v.is_zero()));
        self.rows.push(row);
    }

    pub fn rank(&self) -> usize {
        rank(self.field, &self.rows)
    }

    /// `other · self`, composing `self: A → B` (rows indexed by A) after
    /// `other: C → A`.
    pub fn compose_after(&self, other: &SparseMatrix) -> Vec<SparseRow> {
        other
            .rows
            .iter()
            .map(|row| {
                let mut out = SparseRow::new();
                for (&mid, c) in row {
                    for (&col, d) in &self.rows[mid] {
                        let v = c.mul(d);
                        let e = out.entry(col).or_insert_with(|| self.field.zero());
                        *e = e.add(&v);
                    }
                }
                out.retain(|_, v| !v.is_zero());
                out
            })
            .collect()
    }
}

pub fn rank(field: Field, rows: &[SparseRow]) -> usize {
    match field {
        Field::Rational => rank_rational(rows),
        Field::Prime(p) => rank_prime(p, rows),
    }
}

fn primitive(row: &SparseRow) -> BTreeMap<usize, BigInt> {
    let mut den = BigInt::one();
    for v in row.values() {
        den = den.lcm(v.as_rational().expect("rational entry").denom());
    }
    let mut out: BTreeMap<usize, BigInt> = row
        .iter()
        .map(|(&c, v)| {
            let q = v.as_rational().expect("rational entry");
            (c, q.numer() * (&den / q.denom()))
        })
        .collect();
    normalize(&mut out);
    out
}

fn normalize(row: &mut BTreeMap<usize, BigInt>) {
    let g = row.values().fold(BigInt::zero(), |g, v| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v /= &g;
        }
    }
}

fn rank_rational(rows: &[SparseRow]) -> usize {
    let mut pivots: HashMap<usize, BTreeMap<usize, BigInt>> = HashMap::new();
    for row in rows {
        let mut r = primitive(row);
        while let Some((&col, _)) = r.iter().next() {
            let Some(p) = pivots.get(&col) else {
                pivots.insert(col, r);
                break;
            };
            // r ← p[col]·r − r[col]·p, which clears `col`
            let a = p[&col].clone();
            let b = r[&col].clone();
            for v in r.values_mut() {
                *v *= &a;
            }
            for (&c, v) in p {
                let e = r.entry(c).or_insert_with(BigInt::zero);
                *e -= &b * v;
            }
            r.retain(|_, v| !v.is_zero());
            normalize(&mut r);
        }
    }
    pivots.len()
}

fn rank_prime(p: u64, rows: &[SparseRow]) -> usize {
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let inv = |a: u64| {
        let (mut base, mut e, mut acc) = (a, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            e >>= 1;
        }
        acc
    };
    let mut pivots: HashMap<usize, BTreeMap<usize, u64>> = HashMap::new();
    for row in rows {
        let mut r: BTreeMap<usize, u64> = row
            .iter()
            .map(|(&c, v)| match v {
                Scalar::Prime { value, .. } => (c, *value),
                _ => panic!("field mismatch"),
            })
            .collect();
        while let Some((&col, &lead)) = r.iter().next() {
            let Some(piv) = pivots.get(&col) else {
                let s = inv(lead);
                for v in r.values_mut() {
                    *v = mulmod(*v, s);
                }
                pivots.insert(col, r);
                break;
            };
            // pivot rows are monic
            for (&c, &v) in piv {
                let e = r.entry(c).or_insert(0);
                *e = (*e + p - mulmod(lead, v)) % p;
            }
            r.retain(|_, v| *v != 0);
        }
    }
    pivots.len()
}
