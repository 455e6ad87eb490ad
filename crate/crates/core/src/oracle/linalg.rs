//! Rank of sparse integer matrices by row echelon reduction.
//!
//! Ranks are computed modulo two 61-bit primes. If they disagree the
//! matrix is reduced again over the rationals, which is authoritative
//! (a prime-field rank can only drop below the rational one).

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A sparse row: `(column, coefficient)` pairs with distinct columns.
pub type SparseRow = Vec<(usize, i64)>;

pub const PRIMES: [u64; 2] = [(1 << 61) - 1, 2_305_843_009_213_693_921];

/// The field an exact rank was finally read off in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldUsed {
    Prime(u64),
    Rational,
}

pub(crate) trait RankField {
    type Elem: Clone;
    fn embed(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// `a - b * c`
    fn sub_mul(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
}

pub(crate) struct PrimeField(pub u64);

impl PrimeField {
    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    fn powmod(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulmod(acc, a);
            }
            a = self.mulmod(a, a);
            e >>= 1;
        }
        acc
    }
}

impl RankField for PrimeField {
    type Elem = u64;

    fn embed(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.0 as i128) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn sub_mul(&self, a: &u64, b: &u64, c: &u64) -> u64 {
        let bc = self.mulmod(*b, *c);
        if *a >= bc {
            a - bc
        } else {
            self.0 - (bc - a)
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mulmod(*a, *b)
    }

    fn inv(&self, a: &u64) -> u64 {
        self.powmod(*a, self.0 - 2)
    }
}

pub(crate) struct Rationals;

impl RankField for Rationals {
    type Elem = BigRational;

    fn embed(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn sub_mul(&self, a: &BigRational, b: &BigRational, c: &BigRational) -> BigRational {
        a - b * c
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        BigRational::one() / a
    }
}

/// Echelon form keyed by the largest column of each reduced row. Pivot
/// rows are stored monic, so every other entry sits left of the pivot.
pub(crate) fn echelon_rank<F: RankField>(field: &F, rows: &[SparseRow]) -> usize {
    let mut pivots: BTreeMap<usize, Vec<(usize, F::Elem)>> = BTreeMap::new();
    let mut work: BTreeMap<usize, F::Elem> = BTreeMap::new();
    for row in rows {
        work.clear();
        for &(col, v) in row {
            let e = field.embed(v);
            if !field.is_zero(&e) {
                work.insert(col, e);
            }
        }
        while let Some((&lead, lead_val)) = work.last_key_value() {
            let lead_val = lead_val.clone();
            match pivots.get(&lead) {
                Some(prow) => {
                    for (col, pv) in prow {
                        let cur = work.get(col).cloned().unwrap_or_else(|| field.embed(0));
                        let next = field.sub_mul(&cur, &lead_val, pv);
                        if field.is_zero(&next) {
                            work.remove(col);
                        } else {
                            work.insert(*col, next);
                        }
                    }
                }
                None => {
                    let inv = field.inv(&lead_val);
                    let prow = work.iter().map(|(&c, v)| (c, field.mul(v, &inv))).collect();
                    pivots.insert(lead, prow);
                    break;
                }
            }
        }
    }
    pivots.len()
}

pub fn rank_mod_p(rows: &[SparseRow], p: u64) -> usize {
    echelon_rank(&PrimeField(p), rows)
}

pub fn rank_rational(rows: &[SparseRow]) -> usize {
    echelon_rank(&Rationals, rows)
}

/// Exact rank: two primes, escalating to the rationals if they disagree.
pub fn exact_rank(rows: &[SparseRow]) -> (usize, FieldUsed) {
    let first = rank_mod_p(rows, PRIMES[0]);
    let second = rank_mod_p(rows, PRIMES[1]);
    if first == second {
        (first, FieldUsed::Prime(PRIMES[0]))
    } else {
        (rank_rational(rows), FieldUsed::Rational)
    }
}
