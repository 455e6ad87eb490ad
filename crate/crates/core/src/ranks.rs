//! Ranks `m_n(k)` of `pi_{n+1}(M) ⊗ Q` for a simply connected closed
//! 4-manifold `M` with second Betti number `k`.
//!
//! The ranks are the unique exponents with
//! `prod_{i odd} (1+t^i)^{m_i} / prod_{i even} (1-t^i)^{m_i} = 1 / (1 - kt + t^2)`.
//! Taking logarithms and applying Möbius inversion gives
//! `m_n = -sum_{d | n} (-1)^{n + n/d} mu(d) lambda_{n/d} / d`, where
//! `lambda_n` is the coefficient of `t^n` in `log(1 - kt + t^2)`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::series::{pbw_series, quotient_series, GradedDims, TruncatedSeries};

/// Ranks `m_1..=m_N` where `m_n = rank pi_{n+1} ⊗ Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankTable {
    betti: u64,
    ranks: Vec<BigUint>,
}

impl RankTable {
    /// A table from explicit ranks `m_1, m_2, ...`; no consistency checks.
    pub fn from_ranks(betti: u64, ranks: &[u64]) -> Self {
        RankTable {
            betti,
            ranks: ranks.iter().map(|&r| BigUint::from(r)).collect(),
        }
    }

    pub fn from_big_ranks(betti: u64, ranks: Vec<BigUint>) -> Self {
        RankTable { betti, ranks }
    }

    pub fn betti(&self) -> u64 {
        self.betti
    }

    pub fn max_degree(&self) -> usize {
        self.ranks.len()
    }

    /// `m_n` for `1 <= n <= max_degree`.
    pub fn rank(&self, n: usize) -> Option<&BigUint> {
        n.checked_sub(1).and_then(|i| self.ranks.get(i))
    }

    /// `m_1..=m_N`.
    pub fn ranks(&self) -> &[BigUint] {
        &self.ranks
    }

    /// The ranks as a graded space with nothing in degree 0.
    pub fn graded_dims(&self) -> GradedDims {
        let mut dims = Vec::with_capacity(self.ranks.len() + 1);
        dims.push(BigUint::zero());
        dims.extend(self.ranks.iter().cloned());
        GradedDims::new(dims)
    }
}

/// Möbius function.
pub fn moebius(d: u64) -> Result<i8> {
    if d < 1 {
        return Err(domain("moebius needs d >= 1"));
    }
    let mut n = d;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

fn binomial(n: u64, r: u64) -> BigUint {
    let mut c = BigUint::one();
    for i in 0..r {
        c = c * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    c
}

/// Coefficient of `t^n` in `log(1 - kt + t^2)`:
/// `-sum_{a+2b=n} (-1)^b C(a+b, b) k^a / (a+b)`.
pub fn lambda_coeff(k: u64, n: usize) -> BigRational {
    let n = n as u64;
    let kk = BigInt::from(k);
    let mut acc = BigRational::zero();
    for b in 0..=n / 2 {
        let a = n - 2 * b;
        if a + b == 0 {
            continue;
        }
        let mut term = BigInt::from(binomial(a + b, b)) * num_traits::pow(kk.clone(), a as usize);
        if b % 2 == 1 {
            term = -term;
        }
        acc += BigRational::new(term, BigInt::from(a + b));
    }
    -acc
}

fn divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..=n).filter(move |d| n.is_multiple_of(*d))
}

fn minus_one_pow(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The closed forms are stated in `k = b2 - 1`.
/// Every public function takes `b2`; this is the one place it is shifted.
pub fn closed_form_parameter(b2: u64) -> Result<u64> {
    b2.checked_sub(1)
        .ok_or_else(|| domain("second Betti number must be >= 1"))
}

/// The elliptic table of `b2 = 1` (the `CP^2` type): ranks 1 in `pi_2` and `pi_5`.
fn elliptic_b2_one(max_degree: usize) -> RankTable {
    let ranks = (1..=max_degree)
        .map(|n| {
            if n == 1 || n == 4 {
                BigUint::one()
            } else {
                BigUint::zero()
            }
        })
        .collect();
    RankTable { betti: 1, ranks }
}

/// Rational homotopy ranks `m_1..=m_N` for second Betti number `b2`.
///
/// For `b2 = 1` the inversion formula does not apply (it produces
/// `m_3 = -1`) and the known elliptic table is returned instead.
pub fn homotopy_ranks(b2: u64, max_degree: usize) -> Result<RankTable> {
    if b2 < 1 {
        return Err(domain("second Betti number must be >= 1"));
    }
    if max_degree < 1 {
        return Err(domain("max degree must be >= 1"));
    }
    if b2 == 1 {
        return Ok(elliptic_b2_one(max_degree));
    }

    let lambdas: Vec<BigRational> = core::iter::once(BigRational::zero())
        .chain((1..=max_degree).map(|n| lambda_coeff(b2, n)))
        .collect();
    let mut ranks = Vec::with_capacity(max_degree);
    for n in 1..=max_degree {
        let mut acc = BigRational::zero();
        for d in divisors(n) {
            let mu = moebius(d as u64)?;
            if mu == 0 {
                continue;
            }
            let sign = minus_one_pow(n + n / d) * i64::from(mu);
            acc += &lambdas[n / d] * BigRational::new(BigInt::from(sign), BigInt::from(d));
        }
        let m = -acc;
        if !m.is_integer() || m.is_negative() {
            return Err(Error::InternalInconsistency(format!(
                "rank m_{n}({b2}) evaluated to {m}, not a nonnegative integer"
            )));
        }
        ranks.push(m.to_integer().to_biguint().unwrap_or_default());
    }

    let table = RankTable { betti: b2, ranks };
    check_anchors(&table)?;
    Ok(table)
}

/// `m_1 = k` (Hurewicz) and `m_2 = (k-1)(k+2)/2`.
fn check_anchors(table: &RankTable) -> Result<()> {
    let k = BigUint::from(table.betti);
    if table.rank(1) != Some(&k) {
        return Err(Error::InternalInconsistency(String::from(
            "m_1 differs from b2",
        )));
    }
    if let Some(m2) = table.rank(2) {
        let expected = (&k - 1u32) * (&k + 2u32) / 2u32;
        if *m2 != expected {
            return Err(Error::InternalInconsistency(format!(
                "m_2 = {m2}, expected {expected}"
            )));
        }
    }
    Ok(())
}

/// Closed forms for `rank pi_{j+1}`, `j = 2..=6`, in the parameter
/// `k = b2 - 1`. Requires `b2 >= 3`.
pub fn rank_polynomial_eval(j: usize, b2: u64) -> Result<BigUint> {
    if !(2..=6).contains(&j) {
        return Err(domain(format!(
            "closed forms exist for degrees 2..=6, not {j}"
        )));
    }
    if b2 < 3 {
        return Err(domain("closed forms need b2 >= 3"));
    }
    let k = BigInt::from(closed_form_parameter(b2)?);
    let one = BigInt::one();
    let (num, den): (BigInt, u32) = match j {
        2 => (&k * (&k + 3), 2),
        3 => ((&k - &one) * (&k + &one) * (&k + 3), 3),
        4 => (&k * (&k - &one) * (&k + 2) * (&k + 3), 4),
        5 => (&k * (&k - &one) * (&k + &one) * (&k + 2) * (&k + 3), 5),
        _ => (
            &k * (&k - &one) * (&k + &one) * (&k + 3) * (&k * &k + 3 * &k + &one),
            6,
        ),
    };
    let den = BigInt::from(den);
    if !(&num % &den).is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "closed form for degree {j} is not integral"
        )));
    }
    Ok((num / den).to_biguint().unwrap_or_default())
}

/// Which side of the PBW comparison failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PbwIdentity {
    /// `pbw(m(k)) = 1 / (1 - kt + t^2)`.
    Product,
    /// `pbw(l) = 1 / (1 - (k-1)t - (k-1)t^2 + t^3)` with `l_1 = k - 1`, `l_n = m_n(k)`.
    LoopAlgebra,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PbwCheck {
    Holds,
    Fails {
        degree: usize,
        identity: PbwIdentity,
    },
    NotApplicable,
}

impl PbwCheck {
    pub fn passed(&self) -> bool {
        !matches!(self, PbwCheck::Fails { .. })
    }
}

fn first_mismatch(a: &TruncatedSeries, b: &TruncatedSeries) -> Option<usize> {
    let n = a.truncation_order().max(b.truncation_order());
    (0..=n).find(|&i| a.coeff(i) != b.coeff(i))
}

/// Checks the computed ranks against both generating-series identities up to `order`.
pub fn pbw_identity_check(b2: u64, order: usize) -> Result<PbwCheck> {
    if b2 < 2 {
        return Ok(PbwCheck::NotApplicable);
    }
    let table = homotopy_ranks(b2, order.max(1))?;

    let lhs = pbw_series(&table, order)?;
    let rhs = TruncatedSeries::from_ints(&[1, -(b2 as i64), 1], order).reciprocal()?;
    if let Some(degree) = first_mismatch(&lhs, &rhs) {
        return Ok(PbwCheck::Fails {
            degree,
            identity: PbwIdentity::Product,
        });
    }

    let mut loop_ranks = table.ranks().to_vec();
    loop_ranks[0] = BigUint::from(b2 - 1);
    let loop_table = RankTable::from_big_ranks(b2 - 1, loop_ranks);
    let lhs = pbw_series(&loop_table, order)?;
    let rhs = quotient_series(b2 - 1, order)?;
    if let Some(degree) = first_mismatch(&lhs, &rhs) {
        return Ok(PbwCheck::Fails {
            degree,
            identity: PbwIdentity::LoopAlgebra,
        });
    }
    Ok(PbwCheck::Holds)
}

/// For `n = 1..=n_max`: `sum_{j=1}^{2n} m_j(b2) >= (b2-1)^{2n} / (2n)`, compared exactly.
pub fn cumulative_bound_check(b2: u64, n_max: usize) -> Result<Vec<bool>> {
    if b2 < 3 {
        return Err(domain("cumulative bound needs b2 >= 3"));
    }
    if n_max == 0 {
        return Ok(Vec::new());
    }
    let table = homotopy_ranks(b2, 2 * n_max)?;
    let base = BigUint::from(b2 - 1);
    let mut partial = BigUint::zero();
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        partial += &table.ranks[2 * n - 2];
        partial += &table.ranks[2 * n - 1];
        let lhs = &partial * BigUint::from(2 * n);
        let rhs = num_traits::pow(base.clone(), 2 * n);
        out.push(lhs >= rhs);
    }
    Ok(out)
}

/// One of the divisibility statements about `rank pi_n` for `b2 = k + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityClaim {
    pub statement: String,
    pub divisor: u64,
    /// The claim covers homotopy degrees strictly above this.
    pub above_degree: usize,
    /// Homotopy degrees `n` (of `pi_n`) where the divisor does not divide the rank.
    pub failures: Vec<usize>,
}

impl DivisibilityClaim {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates the three divisibility statements empirically on `pi_2..=pi_{N+1}`.
pub fn divisibility_report(b2: u64, max_degree: usize) -> Result<Vec<DivisibilityClaim>> {
    if b2 < 3 {
        return Err(domain("divisibility statements need b2 >= 3"));
    }
    let table = homotopy_ranks(b2, max_degree)?;
    let k = closed_form_parameter(b2)?;
    let claims = [("k-1", k - 1, 3usize), ("k+1", k + 1, 5), ("k", k, 4)];
    Ok(claims
        .iter()
        .map(|&(name, divisor, above)| {
            let failures = (above + 1..=max_degree + 1)
                .filter(|&deg| {
                    let r = &table.ranks[deg - 2];
                    !(r % BigUint::from(divisor)).is_zero()
                })
                .collect();
            DivisibilityClaim {
                statement: format!("{name} divides rank pi_n for n > {above}"),
                divisor,
                above_degree: above,
                failures,
            }
        })
        .collect())
}

/// `m_n` as `u64` where it fits; convenient in tests and small tables.
pub fn ranks_u64(table: &RankTable) -> Option<Vec<u64>> {
    table.ranks().iter().map(|r| r.to_u64()).collect()
}
