//! Fixed-point decimals over big integers, for the few real numbers the
//! crate reports (growth bases and residuals).
//!
//! A value is `mantissa / 10^scale`. Multiplication, division and roots
//! truncate toward zero at the working scale.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Decimal {
    mantissa: BigInt,
    scale: u32,
}

fn ten_pow(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10u32), e as usize)
}

impl Decimal {
    pub fn from_int(n: impl Into<BigInt>, scale: u32) -> Self {
        Decimal {
            mantissa: n.into() * ten_pow(scale),
            scale,
        }
    }

    pub fn from_biguint(n: &BigUint, scale: u32) -> Self {
        Self::from_int(BigInt::from(n.clone()), scale)
    }

    /// `num / den`, truncated. Panics on a zero denominator.
    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>, scale: u32) -> Self {
        Decimal {
            mantissa: num.into() * ten_pow(scale) / den.into(),
            scale,
        }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    fn rescaled(&self, scale: u32) -> BigInt {
        match scale.cmp(&self.scale) {
            Ordering::Equal => self.mantissa.clone(),
            Ordering::Greater => &self.mantissa * ten_pow(scale - self.scale),
            Ordering::Less => &self.mantissa / ten_pow(self.scale - scale),
        }
    }

    fn common_scale(&self, other: &Self) -> u32 {
        self.scale.max(other.scale)
    }

    pub fn add(&self, other: &Self) -> Self {
        let s = self.common_scale(other);
        Decimal {
            mantissa: self.rescaled(s) + other.rescaled(s),
            scale: s,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let s = self.common_scale(other);
        Decimal {
            mantissa: self.rescaled(s) - other.rescaled(s),
            scale: s,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let s = self.common_scale(other);
        let m = self.rescaled(s) * other.rescaled(s) / ten_pow(s);
        Decimal {
            mantissa: m,
            scale: s,
        }
    }

    /// `None` when dividing by zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        let s = self.common_scale(other);
        let d = other.rescaled(s);
        if d.is_zero() {
            return None;
        }
        Some(Decimal {
            mantissa: self.rescaled(s) * ten_pow(s) / d,
            scale: s,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Decimal::from_int(1, self.scale);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Square root of a nonnegative value; `None` for negative input.
    pub fn sqrt(&self) -> Option<Self> {
        self.nth_root(2)
    }

    /// Principal `n`-th root of a nonnegative value.
    pub fn nth_root(&self, n: u32) -> Option<Self> {
        if self.mantissa.is_negative() || n == 0 {
            return None;
        }
        // root(m / 10^s) = root(m * 10^{s(n-1)}) / 10^s
        let widened = &self.mantissa * ten_pow(self.scale * (n - 1));
        Some(Decimal {
            mantissa: widened.nth_root(n),
            scale: self.scale,
        })
    }

    pub fn abs(&self) -> Self {
        Decimal {
            mantissa: self.mantissa.abs(),
            scale: self.scale,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.sign() == Sign::Minus
    }

    /// Decimal expansion with exactly `digits` fractional digits (truncated).
    pub fn to_string_digits(&self, digits: u32) -> String {
        use core::fmt::Write;
        let m = self.rescaled(digits);
        let mut out = String::new();
        if m.is_negative() {
            out.push('-');
        }
        let m = m.abs();
        let unit = ten_pow(digits);
        let int_part = &m / &unit;
        let frac = &m % &unit;
        let _ = write!(out, "{int_part}");
        if digits > 0 {
            let _ = write!(
                out,
                ".{:0>width$}",
                frac.to_string(),
                width = digits as usize
            );
        }
        out
    }
}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Decimal {
    fn cmp(&self, other: &Self) -> Ordering {
        let s = self.common_scale(other);
        self.rescaled(s).cmp(&other.rescaled(s))
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_digits(self.scale))
    }
}
