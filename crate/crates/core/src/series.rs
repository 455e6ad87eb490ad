//! Truncated formal power series over the rationals, and the generating
//! series of the graded algebras that appear in the rank computation.
//!
//! A series of truncation order `N` stores the coefficients of `t^0..=t^N`.
//! Binary operations work to the smaller of the two orders and nothing ever
//! extends an order.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Error, Result};
use crate::ranks::RankTable;

/// A power series `sum_{i=0}^{N} c_i t^i` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat_big(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

impl TruncatedSeries {
    /// Builds a series from coefficients `c_0..=c_N`. An empty vector is
    /// read as the zero series of order 0.
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Integer coefficients, zero-padded or cut to `order`.
    pub fn from_ints(coeffs: &[i64], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (slot, &c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = rat(c);
        }
        s
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `t^i`; zero past the truncation order.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Drops the terms above `order`. Orders above the current one are clamped.
    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.truncation_order());
        TruncatedSeries {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// The coefficients as integers, if every denominator is 1.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// The coefficients as nonnegative integers, if this is a dimension series.
    pub fn to_dims(&self) -> Option<Vec<BigUint>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_integer() && !c.is_negative() {
                    c.to_integer().to_biguint()
                } else {
                    None
                }
            })
            .collect()
    }

    /// `"p/q"` strings, or plain integers when the denominator is 1.
    pub fn coefficient_strings(&self) -> Vec<String> {
        use alloc::string::ToString;
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    fn order_with(&self, other: &Self) -> usize {
        self.truncation_order().min(other.truncation_order())
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NonInvertibleSeries);
        }
        let inv0 = a0.recip();
        let n = self.truncation_order();
        let mut r: Vec<BigRational> = Vec::with_capacity(n + 1);
        r.push(inv0.clone());
        for i in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=i {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &r[i - j];
                }
            }
            r.push(-acc * &inv0);
        }
        Ok(TruncatedSeries { coeffs: r })
    }

    /// Formal logarithm of a series with constant term 1, via `log(a)' = a'/a`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::LogDomain);
        }
        let n = self.truncation_order();
        let mut b = vec![BigRational::zero(); n + 1];
        for i in 1..=n {
            let mut acc = rat(i as i64) * &self.coeffs[i];
            for (j, bj) in b.iter().enumerate().take(i).skip(1) {
                if !bj.is_zero() && !self.coeffs[i - j].is_zero() {
                    acc -= rat(j as i64) * bj * &self.coeffs[i - j];
                }
            }
            b[i] = acc / rat(i as i64);
        }
        Ok(TruncatedSeries { coeffs: b })
    }

    /// Formal exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(domain("exp requires constant term 0"));
        }
        let n = self.truncation_order();
        let mut e = vec![BigRational::zero(); n + 1];
        e[0] = BigRational::one();
        for i in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=i {
                if !self.coeffs[j].is_zero() {
                    acc += rat(j as i64) * &self.coeffs[j] * &e[i - j];
                }
            }
            e[i] = acc / rat(i as i64);
        }
        Ok(TruncatedSeries { coeffs: e })
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order_with(rhs);
        let coeffs = (0..=n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect();
        TruncatedSeries { coeffs }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order_with(rhs);
        let coeffs = (0..=n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect();
        TruncatedSeries { coeffs }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    /// Cauchy product, cut at the smaller order.
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.order_with(rhs);
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $m(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// Degreewise dimensions `dims[i] = dim V_i` of a graded vector space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GradedDims {
    dims: Vec<BigUint>,
}

impl GradedDims {
    pub fn new(dims: Vec<BigUint>) -> Self {
        GradedDims { dims }
    }

    pub fn from_counts(counts: &[u64]) -> Self {
        GradedDims {
            dims: counts.iter().map(|&c| BigUint::from(c)).collect(),
        }
    }

    /// Dimensions given as `(degree, dim)` pairs, zero elsewhere, up to `max_degree`.
    pub fn from_sparse(entries: &[(usize, u64)], max_degree: usize) -> Self {
        let mut dims = vec![BigUint::zero(); max_degree + 1];
        for &(deg, d) in entries {
            if deg <= max_degree {
                dims[deg] += BigUint::from(d);
            }
        }
        GradedDims { dims }
    }

    /// The alphabet of the tensor oracle: `k` generators in degree 1 and
    /// `k` in degree 2.
    pub fn xy_generators(k: u64, max_degree: usize) -> Self {
        Self::from_sparse(&[(1, k), (2, k)], max_degree)
    }

    /// `dim V_i`, zero past the stored range.
    pub fn get(&self, i: usize) -> BigUint {
        self.dims.get(i).cloned().unwrap_or_default()
    }

    pub fn as_slice(&self) -> &[BigUint] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    fn check_positive_grading(&self) -> Result<()> {
        if self.get(0).is_zero() {
            Ok(())
        } else {
            Err(Error::UngradedGenerator)
        }
    }
}

/// `(1 + t^step)^exp` truncated at `order`.
fn binomial_power(step: usize, exp: &BigUint, order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(order);
    let e = BigInt::from(exp.clone());
    let mut c = BigInt::one();
    let mut j = 0usize;
    while j * step <= order {
        if c.is_zero() {
            break;
        }
        s.coeffs[j * step] = BigRational::from_integer(c.clone());
        j += 1;
        c = c * (&e - BigInt::from(j - 1)) / BigInt::from(j);
    }
    s
}

/// `(1 - t^step)^(-exp)` truncated at `order`.
fn inverse_binomial_power(step: usize, exp: &BigUint, order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(order);
    let e = BigInt::from(exp.clone());
    let mut c = BigInt::one();
    let mut j = 0usize;
    while j * step <= order {
        s.coeffs[j * step] = BigRational::from_integer(c.clone());
        j += 1;
        c = c * (&e + BigInt::from(j - 1)) / BigInt::from(j);
    }
    s
}

/// Generating series of the free graded commutative algebra on `dims`:
/// exterior on odd generators, polynomial on even ones.
pub fn free_comm_series(dims: &GradedDims, order: usize) -> Result<TruncatedSeries> {
    dims.check_positive_grading()?;
    let mut acc = TruncatedSeries::one(order);
    for i in 1..=order.min(dims.len().saturating_sub(1)) {
        let d = &dims.dims[i];
        if d.is_zero() {
            continue;
        }
        let factor = if i % 2 == 1 {
            binomial_power(i, d, order)
        } else {
            inverse_binomial_power(i, d, order)
        };
        acc = &acc * &factor;
    }
    Ok(acc)
}

/// Generating series of the tensor algebra `T(V)`: `1 / (1 - sum dims[i] t^i)`.
pub fn tensor_series(dims: &GradedDims, order: usize) -> Result<TruncatedSeries> {
    dims.check_positive_grading()?;
    let mut denom = TruncatedSeries::one(order);
    for i in 1..=order.min(dims.len().saturating_sub(1)) {
        denom.coeffs[i] = -rat_big(&dims.dims[i]);
    }
    denom.reciprocal()
}

/// Generating series of `T(V)/I` for `k` summands, `1 / (1 - kt - kt^2 + t^3)`,
/// computed by its linear recurrence.
pub fn quotient_series(k: u64, order: usize) -> Result<TruncatedSeries> {
    if k < 1 {
        return Err(domain("quotient series needs k >= 1"));
    }
    let kk = BigInt::from(k);
    let mut a: Vec<BigInt> = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let term = match n {
            0 => BigInt::one(),
            1 => kk.clone(),
            2 => &kk * &kk + &kk,
            _ => &kk * &a[n - 1] + &kk * &a[n - 2] - &a[n - 3],
        };
        a.push(term);
    }
    let s = TruncatedSeries {
        coeffs: a.into_iter().map(BigRational::from_integer).collect(),
    };
    debug_assert_eq!(
        Some(&s),
        TruncatedSeries::from_ints(&[1, -(k as i64), -(k as i64), 1], order)
            .reciprocal()
            .ok()
            .as_ref()
    );
    Ok(s)
}

/// Generating series of the universal enveloping algebra of a graded Lie
/// algebra with the given ranks (PBW: same as the free graded commutative
/// algebra on them).
pub fn pbw_series(ranks: &RankTable, order: usize) -> Result<TruncatedSeries> {
    if ranks.max_degree() < order {
        return Err(domain("rank table does not reach the requested order"));
    }
    free_comm_series(&ranks.graded_dims(), order)
}
