//! Brute-force dimensions of `A = T(V)/I`.
//!
//! `V` has basis `x_1..x_k` in degree 1 and `y_1..y_k` in degree 2, and `I`
//! is the two-sided ideal generated by `r = sum_i (x_i y_i - y_i x_i)`. In
//! degree `n`, `I_n` is spanned by the words `u r v` with
//! `deg u + deg v = n - 3`, so `dim I_n` is the rank of their expansions in
//! the word basis. Nothing here uses the closed-form series except the final
//! comparison in [`OracleReport::series_match`].

pub mod linalg;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::series::{quotient_series, GradedDims};
use linalg::{exact_rank, FieldUsed, SparseRow};

/// Largest number of columns (words of the top degree) the oracle builds by default.
pub const DEFAULT_COLUMN_BUDGET: u64 = 50_000;

/// Generators ordered `x_1 < ... < x_k < y_1 < ... < y_k`. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X(u32),
    Y(u32),
}

impl Letter {
    pub fn degree(self) -> usize {
        match self {
            Letter::X(_) => 1,
            Letter::Y(_) => 2,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::X(i) => write!(f, "x{i}"),
            Letter::Y(i) => write!(f, "y{i}"),
        }
    }
}

/// A monomial in `T(V)`. The derived order is left-lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn degree(&self) -> usize {
        self.letters.iter().map(|l| l.degree()).sum()
    }

    fn concat3(a: &[Letter], b: &[Letter], c: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(a.len() + b.len() + c.len());
        out.extend_from_slice(a);
        out.extend_from_slice(b);
        out.extend_from_slice(c);
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Number of words of each degree `0..=n` over `k` letters of degree 1 and
/// `k` of degree 2 (saturating at `u64::MAX`).
pub fn word_counts(k: u64, n: usize) -> Vec<u64> {
    let mut c: Vec<u64> = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let v = match d {
            0 => 1,
            1 => k,
            _ => k
                .saturating_mul(c[d - 1])
                .saturating_add(k.saturating_mul(c[d - 2])),
        };
        c.push(v);
    }
    c
}

/// All words of degree `n`, in increasing order.
pub fn enumerate_words(k: u64, n: usize) -> Vec<Word> {
    fn extend(k: u32, remaining: usize, prefix: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if remaining == 0 {
            out.push(Word::new(prefix.clone()));
            return;
        }
        for i in 1..=k {
            prefix.push(Letter::X(i));
            extend(k, remaining - 1, prefix, out);
            prefix.pop();
        }
        if remaining >= 2 {
            for i in 1..=k {
                prefix.push(Letter::Y(i));
                extend(k, remaining - 2, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(k as u32, n, &mut Vec::new(), &mut out);
    out
}

/// Position of a word among the words of its degree (see [`enumerate_words`]).
fn word_index(k: u64, word: &[Letter], counts: &[u64]) -> usize {
    let mut rem: usize = word.iter().map(|l| l.degree()).sum();
    let mut idx = 0u64;
    for &l in word {
        let smaller_x = match l {
            Letter::X(i) => u64::from(i) - 1,
            Letter::Y(_) => k,
        };
        idx += smaller_x * counts[rem - 1];
        if let Letter::Y(i) = l {
            idx += (u64::from(i) - 1) * counts[rem - 2];
        }
        rem -= l.degree();
    }
    idx as usize
}

/// A homogeneous integer combination of words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationElement {
    terms: Vec<(i64, Word)>,
}

impl RelationElement {
    /// `[x., y.] = sum_{i=1}^k (x_i y_i - y_i x_i)`.
    pub fn commutator_sum(k: u64) -> Self {
        let mut terms = Vec::with_capacity(2 * k as usize);
        for i in 1..=k as u32 {
            terms.push((1, Word::new(alloc::vec![Letter::X(i), Letter::Y(i)])));
            terms.push((-1, Word::new(alloc::vec![Letter::Y(i), Letter::X(i)])));
        }
        RelationElement { terms }
    }

    pub fn terms(&self) -> &[(i64, Word)] {
        &self.terms
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.iter().map(|(_, w)| w.degree());
        match degrees.next() {
            Some(d) => degrees.all(|e| e == d),
            None => true,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.first().map(|(_, w)| w.degree())
    }
}

/// `dim I_n` together with the field its rank was read off in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeRank {
    pub degree: usize,
    pub rank: u64,
    pub field: FieldUsed,
}

/// Word counts up to degree `n`, or `ResourceLimit` if degree `n` exceeds `budget` columns.
pub fn check_budget(k: u64, n: usize, budget: u64) -> Result<Vec<u64>> {
    let counts = word_counts(k, n);
    if counts[n] > budget {
        return Err(Error::ResourceLimit {
            degree: n,
            columns: counts[n],
            budget,
        });
    }
    Ok(counts)
}

/// Spanning rows `u r v` of `I_n`, expanded in the degree-`n` word basis.
pub fn ideal_spanning_rows(k: u64, n: usize, budget: u64) -> Result<Vec<SparseRow>> {
    let counts = check_budget(k, n, budget)?;
    if n < 3 {
        return Ok(Vec::new());
    }
    let relation = RelationElement::commutator_sum(k);
    let outer = n - 3;
    let mut rows = Vec::new();
    for left_deg in 0..=outer {
        let lefts = enumerate_words(k, left_deg);
        let rights = enumerate_words(k, outer - left_deg);
        for u in &lefts {
            for v in &rights {
                let row: SparseRow = relation
                    .terms()
                    .iter()
                    .map(|(c, w)| {
                        let word = Word::concat3(u.letters(), w.letters(), v.letters());
                        (word_index(k, &word, &counts), *c)
                    })
                    .collect();
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

/// `dim I_n` with the field used.
pub fn ideal_degree_rank(k: u64, n: usize, budget: u64) -> Result<DegreeRank> {
    if k < 1 {
        return Err(crate::error::domain("oracle needs k >= 1"));
    }
    let rows = ideal_spanning_rows(k, n, budget)?;
    let (rank, field) = exact_rank(&rows);
    Ok(DegreeRank {
        degree: n,
        rank: rank as u64,
        field,
    })
}

/// `dim I_n`.
pub fn ideal_degree_dim(k: u64, n: usize, budget: u64) -> Result<u64> {
    ideal_degree_rank(k, n, budget).map(|r| r.rank)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub betti_param: u64,
    pub max_degree: usize,
    pub tensor_dims: GradedDims,
    pub ideal_dims: GradedDims,
    pub quotient_dims: GradedDims,
    pub series_match: Vec<bool>,
    pub euler_ok: Vec<bool>,
    /// `Rational` if any degree needed the rational fallback.
    pub field_used: FieldUsed,
}

impl OracleReport {
    /// Assembles a report from per-degree ideal ranks for degrees `0..=max_degree`
    /// (in any order).
    pub fn assemble(k: u64, max_degree: usize, mut ranks: Vec<DegreeRank>) -> Result<Self> {
        ranks.sort_by_key(|r| r.degree);
        if ranks.len() != max_degree + 1 || ranks.iter().enumerate().any(|(i, r)| r.degree != i) {
            return Err(Error::InternalInconsistency(format!(
                "expected ideal ranks for degrees 0..={max_degree}"
            )));
        }
        let counts = word_counts(k, max_degree);
        let tensor: Vec<u64> = counts.clone();
        let ideal: Vec<u64> = ranks.iter().map(|r| r.rank).collect();
        let quotient: Vec<u64> = tensor
            .iter()
            .zip(&ideal)
            .map(|(t, i)| {
                t.checked_sub(*i).ok_or_else(|| {
                    Error::InternalInconsistency(String::from("ideal larger than tensor algebra"))
                })
            })
            .collect::<Result<_>>()?;

        let series = quotient_series(k, max_degree)?;
        let series_match = quotient
            .iter()
            .enumerate()
            .map(|(n, q)| {
                series.coeff(n) == num_rational::BigRational::from_integer(BigInt::from(*q))
            })
            .collect();

        let field_used = if ranks.iter().any(|r| r.field == FieldUsed::Rational) {
            FieldUsed::Rational
        } else {
            ranks
                .first()
                .map(|r| r.field)
                .unwrap_or(FieldUsed::Prime(linalg::PRIMES[0]))
        };

        let mut report = OracleReport {
            betti_param: k,
            max_degree,
            tensor_dims: GradedDims::from_counts(&tensor),
            ideal_dims: GradedDims::from_counts(&ideal),
            quotient_dims: GradedDims::from_counts(&quotient),
            series_match,
            euler_ok: Vec::new(),
            field_used,
        };
        report.euler_ok = euler_identity_check(&report);
        Ok(report)
    }

    pub fn all_series_match(&self) -> bool {
        self.series_match.iter().all(|&b| b)
    }

    pub fn all_euler_ok(&self) -> bool {
        self.euler_ok.iter().all(|&b| b)
    }

    /// Quotient dimensions as plain integers.
    pub fn quotient_counts(&self) -> Vec<u64> {
        self.quotient_dims
            .as_slice()
            .iter()
            .map(|d| d.to_u64().unwrap_or(u64::MAX))
            .collect()
    }
}

/// Dimensions of `T(V)/I` in degrees `0..=max_degree`, one degree at a time.
pub fn quotient_dims_oracle(k: u64, max_degree: usize, budget: u64) -> Result<OracleReport> {
    if k < 1 {
        return Err(crate::error::domain("oracle needs k >= 1"));
    }
    check_budget(k, max_degree, budget)?;
    let ranks = (0..=max_degree)
        .map(|n| ideal_degree_rank(k, n, budget))
        .collect::<Result<Vec<_>>>()?;
    OracleReport::assemble(k, max_degree, ranks)
}

/// `dim A_n - k dim A_{n-1} - k dim A_{n-2} + dim A_{n-3} = [n = 0]`, from the
/// oracle's quotient dimensions alone.
pub fn euler_identity_check(report: &OracleReport) -> Vec<bool> {
    let k = BigInt::from(report.betti_param);
    let a = |n: isize| -> BigInt {
        if n < 0 {
            BigInt::zero()
        } else {
            BigInt::from(report.quotient_dims.get(n as usize))
        }
    };
    (0..=report.max_degree as isize)
        .map(|n| {
            let lhs = a(n) - &k * a(n - 1) - &k * a(n - 2) + a(n - 3);
            let rhs = if n == 0 {
                BigInt::from(1)
            } else {
                BigInt::zero()
            };
            lhs == rhs
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulCheck {
    pub holds: bool,
    pub leading: Word,
}

/// The relation has a single leading monomial and it is `y_k x_k`.
pub fn koszul_leading_monomial_check(k: u64) -> KoszulCheck {
    let relation = RelationElement::commutator_sum(k);
    let mut words: Vec<&Word> = relation.terms().iter().map(|(_, w)| w).collect();
    words.sort();
    let leading = words.last().map(|w| (*w).clone()).unwrap_or_default();
    let unique = words.len() < 2 || words[words.len() - 2] != words[words.len() - 1];
    let expected = Word::new(alloc::vec![Letter::Y(k as u32), Letter::X(k as u32)]);
    KoszulCheck {
        holds: k >= 1 && unique && leading == expected,
        leading,
    }
}
